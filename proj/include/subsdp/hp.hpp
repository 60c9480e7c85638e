#pragma once

// Thin RAII wrapper around MPFR with a thread-local default precision, plus
// the small dense matrix helpers used by the irrep and solver code.

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <vector>

#include "subsdp/qcalc.hpp"

namespace subsdp {

mpfr_prec_t default_prec();
void set_default_prec(mpfr_prec_t prec);

// Scoped precision change.
struct PrecGuard {
  mpfr_prec_t saved;
  explicit PrecGuard(mpfr_prec_t prec) : saved(default_prec()) {
    set_default_prec(prec);
  }
  ~PrecGuard() { set_default_prec(saved); }
};

class Real {
 public:
  Real() { mpfr_init2(v_, default_prec()); mpfr_set_zero(v_, 1); }
  Real(long x) : Real() { mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(int x) : Real(static_cast<long>(x)) {}
  Real(double x) : Real() { mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(const Int& x) : Real() { mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
  Real(const Rat& x) : Real() { mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
  explicit Real(const std::string& s) : Real() {
    mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN);
  }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, default_prec()); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  Real operator-() const { Real r; mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string str(int digits = 45) const;

 private:
  mpfr_t v_;
};

Real sqrt(const Real& a);
Real abs(const Real& a);
Real floor(const Real& a);
Real pow_si(const Real& a, long e);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
// 2^k as a Real.
Real two_pow(long k);

// Dense column-major square/rectangular matrix of Reals.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), d_(static_cast<size_t>(rows) * cols) {}
  int rows() const { return r_; }
  int cols() const { return c_; }
  Real& operator()(int i, int j) { return d_[static_cast<size_t>(j) * r_ + i]; }
  const Real& operator()(int i, int j) const { return d_[static_cast<size_t>(j) * r_ + i]; }

  static Mat identity(int n);
  static Mat zero(int n, int m) { return Mat(n, m); }

 private:
  int r_ = 0, c_ = 0;
  std::vector<Real> d_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(const Real& s, const Mat& a);
Mat transpose(const Mat& a);
Real frobenius_norm(const Mat& a);
Real max_abs(const Mat& a);
Real trace_product(const Mat& a, const Mat& b);  // tr(a^T b)

// Cholesky factorization of a symmetric matrix; returns false if a pivot is
// not strictly positive. On success L is lower triangular with a = L L^T.
bool cholesky(const Mat& a, Mat& L);
// Solve L y = b, L^T x = y given the Cholesky factor.
std::vector<Real> cholesky_solve(const Mat& L, const std::vector<Real>& b);
Mat cholesky_inverse(const Mat& L);  // (L L^T)^{-1}

// Cyclic Jacobi eigenvalue iteration for symmetric matrices. Eigenvalues are
// returned in descending order with matching orthonormal columns in V.
void jacobi_eigensystem(const Mat& a, std::vector<Real>& eigenvalues, Mat& V);

// Smallest eigenvalue estimate via Jacobi (exact for symmetric input).
Real min_eigenvalue(const Mat& a);

}  // namespace subsdp
