#pragma once

// Exact q-analog arithmetic and closed-form subspace-counting formulas.
// All values are arbitrary-precision rationals (GMP); counting results are
// nonnegative integers after simplification.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>

namespace subsdp {

using Int = mpz_class;
using Rat = mpq_class;

// Field order parameter. Formulas are polynomial identities in q and are
// evaluated for any integer q >= 2; prime-power validation is opt-in.
struct QParams {
  long q = 2;
  bool prime_power_checked = false;

  explicit QParams(long q_, bool check_prime_power = false);
};

bool is_prime_power(long q);

// Constants phi = q^2 + 1 and psi = q^2 - q + 1 (so phi - psi = q).
struct NotationConstants {
  Int phi;
  Int psi_const;
  explicit NotationConstants(const QParams& qp)
      : phi(Int(qp.q) * qp.q + 1), psi_const(Int(qp.q) * qp.q - qp.q + 1) {}
};

// q-number [n] = (q^n - 1)/(q - 1); [0] = 0.
Int gauss_number(long n, const QParams& qp);

// q-binomial [n k]; 0 for k < 0 or k > n, 1 for k = 0.
Int gauss_binomial(long n, long k, const QParams& qp);

// q-factorial [n]! = prod_{i=1..n} [i].
Int q_factorial(long n, const QParams& qp);

// Number of d-spaces with trivial intersection with a fixed a-space A and
// b-space B, dim(A cap B) = c, inside the ambient space <A,B> of dimension
// a+b-c. Zero as soon as a numerator factor vanishes (no room left).
Int psi_count(long a, long b, long c, long d, const QParams& qp);

// Number of d-spaces in <A,B> meeting A in an alpha-space, B in a beta-space
// and A cap B in a gamma-space. Infeasible parameters yield 0.
Int varphi_count(long a, long b, long c, long d, long alpha, long beta,
                 long gamma, const QParams& qp);

// Same count in an ambient n-space (sum over the dimension of D cap <A,B>).
Int chi_count(long a, long b, long c, long d, long n, long alpha, long beta,
              long gamma, const QParams& qp);

// Number of d-spaces meeting an a-space A in codimension i and a b-space B in
// codimension j, where A and B meet in codimension k in F_q^n. This is the
// intersection number p^{(a,b,k)}_{(a,d,i),(d,b,j)}.
Int triple_count(long a, long b, long k, long d, long n, long i, long j,
                 const QParams& qp);

// Number of b-spaces meeting a fixed a-space in dimension exactly t:
// q^{(a-t)(b-t)} [a t] [n-a b-t].
Int count_meeting(long a, long t, long b, long n, const QParams& qp);

// q^e as an Int, e >= 0.
Int q_pow(long q, long e);

}  // namespace subsdp
