#include "subsdp/hp.hpp"

#include <stdexcept>

namespace subsdp {

namespace {
thread_local mpfr_prec_t g_prec = 256;
}

mpfr_prec_t default_prec() { return g_prec; }
void set_default_prec(mpfr_prec_t prec) {
  if (prec < 64) throw std::domain_error("default precision must be >= 64");
  g_prec = prec;
}

std::string Real::str(int digits) const {
  char fmt[32];
  std::snprintf(fmt, sizeof(fmt), "%%.%dRe", digits);
  char* out = nullptr;
  mpfr_asprintf(&out, fmt, v_);
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

Real sqrt(const Real& a) {
  Real r;
  mpfr_sqrt(r.get(), a.get(), MPFR_RNDN);
  return r;
}

Real abs(const Real& a) {
  Real r;
  mpfr_abs(r.get(), a.get(), MPFR_RNDN);
  return r;
}

Real floor(const Real& a) {
  Real r;
  mpfr_floor(r.get(), a.get());
  return r;
}

Real pow_si(const Real& a, long e) {
  Real r;
  mpfr_pow_si(r.get(), a.get(), e, MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return a < b ? a : b; }

Real two_pow(long k) {
  Real r(1);
  mpfr_mul_2si(r.get(), r.get(), k, MPFR_RNDN);
  return r;
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Real(1);
  return m;
}

Mat operator+(const Mat& a, const Mat& b) {
  Mat r(a.rows(), a.cols());
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) r(i, j) = a(i, j) + b(i, j);
  return r;
}

Mat operator-(const Mat& a, const Mat& b) {
  Mat r(a.rows(), a.cols());
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) r(i, j) = a(i, j) - b(i, j);
  return r;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw std::logic_error("Mat: dimension mismatch");
  Mat r(a.rows(), b.cols());
  for (int j = 0; j < b.cols(); ++j)
    for (int k = 0; k < a.cols(); ++k) {
      const Real& bkj = b(k, j);
      if (bkj.is_zero()) continue;
      for (int i = 0; i < a.rows(); ++i) r(i, j) += a(i, k) * bkj;
    }
  return r;
}

Mat operator*(const Real& s, const Mat& a) {
  Mat r(a.rows(), a.cols());
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) r(i, j) = s * a(i, j);
  return r;
}

Mat transpose(const Mat& a) {
  Mat r(a.cols(), a.rows());
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) r(j, i) = a(i, j);
  return r;
}

Real frobenius_norm(const Mat& a) {
  Real s(0);
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) s += a(i, j) * a(i, j);
  return sqrt(s);
}

Real max_abs(const Mat& a) {
  Real s(0);
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) s = max(s, abs(a(i, j)));
  return s;
}

Real trace_product(const Mat& a, const Mat& b) {
  Real s(0);
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) s += a(i, j) * b(i, j);
  return s;
}

bool cholesky(const Mat& a, Mat& L) {
  const int n = a.rows();
  L = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    Real d = a(j, j);
    for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    if (d.sign() <= 0) return false;
    L(j, j) = sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      Real s = a(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / L(j, j);
    }
  }
  return true;
}

std::vector<Real> cholesky_solve(const Mat& L, const std::vector<Real>& b) {
  const int n = L.rows();
  std::vector<Real> y(n), x(n);
  for (int i = 0; i < n; ++i) {
    Real s = b[i];
    for (int k = 0; k < i; ++k) s -= L(i, k) * y[k];
    y[i] = s / L(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    Real s = y[i];
    for (int k = i + 1; k < n; ++k) s -= L(k, i) * x[k];
    x[i] = s / L(i, i);
  }
  return x;
}

Mat cholesky_inverse(const Mat& L) {
  const int n = L.rows();
  Mat inv(n, n);
  std::vector<Real> e(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) e[i] = Real(i == j ? 1 : 0);
    auto col = cholesky_solve(L, e);
    for (int i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  // symmetrize against rounding drift
  for (int j = 0; j < n; ++j)
    for (int i = j + 1; i < n; ++i) {
      Real m = (inv(i, j) + inv(j, i)) / Real(2);
      inv(i, j) = m;
      inv(j, i) = m;
    }
  return inv;
}

void jacobi_eigensystem(const Mat& a, std::vector<Real>& eigenvalues, Mat& V) {
  const int n = a.rows();
  Mat A = a;
  V = Mat::identity(n);
  if (n == 0) { eigenvalues.clear(); return; }

  const Real tol = two_pow(-(static_cast<long>(default_prec()) - 8));
  Real scale(0);
  for (int i = 0; i < n; ++i) scale = max(scale, abs(A(i, i)));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) scale = max(scale, abs(A(i, j)));
  if (scale.is_zero()) scale = Real(1);

  for (int sweep = 0; sweep < 200; ++sweep) {
    Real off(0);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < j; ++i) off = max(off, abs(A(i, j)));
    if (off <= tol * scale) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (abs(A(p, q)) <= tol * scale * two_pow(-16)) continue;
        Real theta = (A(q, q) - A(p, p)) / (Real(2) * A(p, q));
        Real t = Real(1) / (abs(theta) + sqrt(theta * theta + Real(1)));
        if (theta.sign() < 0) t = -t;
        Real c = Real(1) / sqrt(t * t + Real(1));
        Real s = t * c;
        // rotate rows/cols p,q of A
        for (int k = 0; k < n; ++k) {
          Real akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          Real apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          Real vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
  }

  eigenvalues.resize(n);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (A(order[j], order[j]) > A(order[i], order[i]))
        std::swap(order[i], order[j]);
  Mat Vs(n, n);
  for (int j = 0; j < n; ++j) {
    eigenvalues[j] = A(order[j], order[j]);
    for (int i = 0; i < n; ++i) Vs(i, j) = V(i, order[j]);
  }
  V = Vs;
}

Real min_eigenvalue(const Mat& a) {
  std::vector<Real> ev;
  Mat V;
  jacobi_eigensystem(a, ev, V);
  return ev.empty() ? Real(0) : ev.back();
}

}  // namespace subsdp
