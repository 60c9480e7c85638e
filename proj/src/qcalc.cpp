#include "subsdp/qcalc.hpp"

namespace subsdp {

QParams::QParams(long q_, bool check_prime_power) : q(q_) {
  if (q < 2) throw std::domain_error("QParams: q must be >= 2");
  if (check_prime_power) {
    if (!is_prime_power(q))
      throw std::domain_error("QParams: q is not a prime power");
    prime_power_checked = true;
  }
}

bool is_prime_power(long q) {
  if (q < 2) return false;
  for (long p = 2; p * p <= q; ++p) {
    if (q % p == 0) {
      while (q % p == 0) q /= p;
      return q == 1;
    }
  }
  return true;  // q itself is prime
}

Int q_pow(long q, long e) {
  if (e < 0) throw std::domain_error("q_pow: negative exponent");
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q),
                static_cast<unsigned long>(e));
  return r;
}

Int gauss_number(long n, const QParams& qp) {
  if (n < 0) throw std::domain_error("gauss_number: n < 0");
  return (q_pow(qp.q, n) - 1) / (qp.q - 1);
}

Int gauss_binomial(long n, long k, const QParams& qp) {
  if (k < 0 || k > n) return 0;
  Rat r(1);
  for (long i = 1; i <= k; ++i)
    r *= Rat(q_pow(qp.q, n - k + i) - 1) / Rat(q_pow(qp.q, i) - 1);
  r.canonicalize();
  if (r.get_den() != 1)
    throw std::logic_error("gauss_binomial: non-integral result");
  return r.get_num();
}

Int q_factorial(long n, const QParams& qp) {
  if (n < 0) throw std::domain_error("q_factorial: n < 0");
  Int r(1);
  for (long i = 1; i <= n; ++i) r *= gauss_number(i, qp);
  return r;
}

Int psi_count(long a, long b, long c, long d, const QParams& qp) {
  if (c > a || c > b || c < 0) throw std::domain_error("psi_count: c out of range");
  if (d < 0) return 0;
  Rat r(1);
  for (long j = 0; j < d; ++j) {
    // A numerator factor <= 0 means there is no room for another basis vector.
    if (a - c - j <= 0 || b - c - j <= 0) return 0;
    r *= Rat(q_pow(qp.q, j + c) * (q_pow(qp.q, a - c - j) - 1) *
             (q_pow(qp.q, b - c - j) - 1)) /
         Rat(q_pow(qp.q, d - j) - 1);
  }
  r.canonicalize();
  if (r.get_den() != 1) throw std::logic_error("psi_count: non-integral result");
  return r.get_num();
}

Int varphi_count(long a, long b, long c, long d, long alpha, long beta,
                 long gamma, const QParams& qp) {
  if (gamma < 0 || alpha < gamma || beta < gamma) return 0;
  if (d - alpha - beta + gamma < 0) return 0;
  Int g1 = gauss_binomial(c, gamma, qp);
  Int g2 = gauss_binomial(a - c, alpha - gamma, qp);
  Int g3 = gauss_binomial(b - c, beta - gamma, qp);
  if (g1 == 0 || g2 == 0 || g3 == 0) return 0;
  long e = (alpha + beta - 2 * gamma) * (c - gamma);
  return g1 * q_pow(qp.q, e) * g2 * g3 *
         psi_count(a - alpha, b - beta, c - gamma, d - alpha - beta + gamma, qp);
}

Int chi_count(long a, long b, long c, long d, long n, long alpha, long beta,
              long gamma, const QParams& qp) {
  if (a + b - c > n) return 0;  // <A,B> does not fit into the ambient space
  Int total(0);
  long lo = alpha + beta - gamma;
  if (lo < 0) lo = 0;
  long hi = std::min(d, a + b - c);
  for (long x = lo; x <= hi; ++x) {
    Int g = gauss_binomial(n - a - b + c, d - x, qp);
    if (g == 0) continue;
    total += q_pow(qp.q, (d - x) * (a + b - c - x)) * g *
             varphi_count(a, b, c, x, alpha, beta, gamma, qp);
  }
  return total;
}

Int triple_count(long a, long b, long k, long d, long n, long i, long j,
                 const QParams& qp) {
  long m = std::min(a, b);
  if (k < 0 || m - k < 0) return 0;
  Int total(0);
  for (long l = 0; l <= m - k; ++l)
    total += chi_count(a, b, m - k, d, n, std::min(a, d) - i,
                       std::min(b, d) - j, m - k - l, qp);
  return total;
}

Int count_meeting(long a, long t, long b, long n, const QParams& qp) {
  if (t < 0 || t > a || t > b) return 0;
  return q_pow(qp.q, (a - t) * (b - t)) * gauss_binomial(a, t, qp) *
         gauss_binomial(n - a, b - t, qp);
}

}  // namespace subsdp
