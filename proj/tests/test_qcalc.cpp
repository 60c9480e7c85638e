#include <map>

#include "doctest.h"
#include "subsdp/oracle.hpp"
#include "subsdp/qcalc.hpp"

using namespace subsdp;

TEST_CASE("gauss numbers") {
  QParams q2(2), q3(3);
  CHECK(gauss_number(0, q2) == 0);
  CHECK(gauss_number(7, q2) == 127);
  CHECK(gauss_number(6, q2) == 63);
  CHECK(gauss_number(3, q3) == 13);
  CHECK_THROWS_AS(gauss_number(-1, q2), std::domain_error);
}

TEST_CASE("gauss binomials") {
  QParams q2(2);
  CHECK(gauss_binomial(7, 2, q2) == 2667);
  CHECK(gauss_binomial(3, 2, q2) == 7);
  CHECK(gauss_binomial(5, 0, q2) == 1);
  CHECK(gauss_binomial(7, 3, q2) == 11811);
  CHECK(gauss_binomial(4, -1, q2) == 0);
  CHECK(gauss_binomial(4, 5, q2) == 0);
  SUBCASE("duality") {
    for (long q : {2L, 3L, 5L})
      for (long n = 0; n <= 9; ++n)
        for (long k = 0; k <= n; ++k)
          CHECK(gauss_binomial(n, k, QParams(q)) ==
                gauss_binomial(n, n - k, QParams(q)));
  }
}

TEST_CASE("q factorial") {
  QParams q2(2);
  CHECK(q_factorial(0, q2) == 1);
  CHECK(q_factorial(2, q2) == 3);
  CHECK(q_factorial(3, q2) == 21);
  SUBCASE("binomial identity") {
    for (long n = 0; n <= 8; ++n)
      for (long k = 0; k <= n; ++k)
        CHECK(gauss_binomial(n, k, q2) * q_factorial(k, q2) *
                  q_factorial(n - k, q2) ==
              q_factorial(n, q2));
  }
}

TEST_CASE("psi count") {
  QParams q2(2);
  CHECK(psi_count(3, 2, 1, 0, q2) == 1);
  CHECK(psi_count(1, 1, 0, 1, q2) == 1);
  // 7 points in <A,B> of dim 3, minus the 5 in A union B
  CHECK(psi_count(2, 2, 1, 1, q2) == 2);
  CHECK_THROWS_AS(psi_count(1, 1, 2, 0, q2), std::domain_error);
}

TEST_CASE("varphi count") {
  QParams q2(2);
  CHECK(varphi_count(3, 2, 1, 0, 0, 0, 0, q2) == 1);
  CHECK(varphi_count(2, 2, 1, 1, 1, 1, 1, q2) == 1);
  CHECK(varphi_count(2, 2, 1, 1, 1, 0, 0, q2) == 2);
  CHECK(varphi_count(2, 2, 1, 1, 0, 0, 1, q2) == 0);  // gamma > alpha
}

TEST_CASE("chi count total law") {
  QParams q2(2);
  CHECK(chi_count(2, 2, 1, 0, 4, 0, 0, 0, q2) == 1);
  CHECK(chi_count(1, 1, 0, 1, 3, 0, 0, 0, q2) == 5);
  SUBCASE("sums to gauss binomial") {
    for (long q : {2L, 3L}) {
      QParams qp(q);
      for (long n = 2; n <= 5; ++n)
        for (long a = 0; a <= n; ++a)
          for (long b = 0; b <= n; ++b)
            for (long c = std::max(0L, a + b - n); c <= std::min(a, b); ++c)
              for (long d = 0; d <= n; ++d) {
                Int total(0);
                for (long alpha = 0; alpha <= a; ++alpha)
                  for (long beta = 0; beta <= b; ++beta)
                    for (long gamma = 0; gamma <= c; ++gamma)
                      total += chi_count(a, b, c, d, n, alpha, beta, gamma, qp);
                CHECK(total == gauss_binomial(n, d, qp));
              }
    }
  }
}

TEST_CASE("count_meeting") {
  QParams q2(2);
  CHECK(count_meeting(1, 0, 2, 7, q2) == 2604);
  CHECK(count_meeting(3, 3, 3, 7, q2) == 1);
  CHECK(count_meeting(2, 1, 2, 4, q2) == 18);
  SUBCASE("sums over t to gauss binomial") {
    for (long q : {2L, 3L}) {
      QParams qp(q);
      for (long n = 1; n <= 7; ++n)
        for (long a = 0; a <= n; ++a)
          for (long b = 0; b <= n; ++b) {
            Int total(0);
            for (long t = 0; t <= std::min(a, b); ++t)
              total += count_meeting(a, t, b, n, qp);
            CHECK(total == gauss_binomial(n, b, qp));
          }
    }
  }
}

TEST_CASE("triple_count basics") {
  QParams q2(2);
  CHECK(triple_count(1, 1, 1, 1, 2, 1, 1, q2) == 1);
  // D = A forced when d = a, i = 0
  CHECK(triple_count(2, 3, 0, 2, 7, 0, 2 - 2 + 0, q2) >= 0);
  CHECK(triple_count(3, 3, 0, 3, 7, 0, 0, q2) == 1);
}

TEST_CASE("prime power detection") {
  CHECK(is_prime_power(2));
  CHECK(is_prime_power(9));
  CHECK(is_prime_power(8));
  CHECK(is_prime_power(101));
  CHECK(!is_prime_power(6));
  CHECK(!is_prime_power(12));
  CHECK_THROWS_AS(QParams(6, true), std::domain_error);
  CHECK_NOTHROW(QParams(9, true));
  CHECK_THROWS_AS(QParams(1), std::domain_error);
}

TEST_CASE("oracle agreement on small parameters") {
  // exhaustive formula-vs-oracle comparison for n <= 3 here (the full n <= 4
  // comparison is the first acceptance criterion)
  for (int p : {2, 3}) {
    QParams qp(p);
    for (int n = 1; n <= 3; ++n) {
      AmbientSpace space(n, p);
      std::map<int, std::vector<SubspaceRep>> subs;
      for (int k = 0; k <= n; ++k) subs[k] = enumerate_subspaces(space, k);
      for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b)
          for (int d = 0; d <= n; ++d)
            for (const auto& A : subs[a]) {
              for (const auto& B : subs[b]) {
                int k = std::min(a, b) - dim_intersection(A, B);
                for (int i = 0; i <= std::min(a, d); ++i)
                  for (int j = 0; j <= std::min(b, d); ++j) {
                    long oracle = oracle_triple_count(space, A, B, d, i, j);
                    CHECK(triple_count(a, b, k, d, n, i, j, qp) == oracle);
                  }
                break;  // one B per intersection pattern is plenty here
              }
            }
    }
  }
}
