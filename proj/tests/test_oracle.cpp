#include "doctest.h"
#include "subsdp/oracle.hpp"

using namespace subsdp;

TEST_CASE("canonicalize produces stable RREF") {
  // span{(1,1,0),(0,1,1)} over F_2 equals span{(1,0,1),(0,1,1)}
  auto A = canonicalize(3, 2, {{1, 1, 0}, {0, 1, 1}});
  auto B = canonicalize(3, 2, {{1, 0, 1}, {0, 1, 1}});
  CHECK(A == B);
  CHECK(A.dim() == 2);
  auto C = canonicalize(3, 2, {{1, 1, 0}, {1, 1, 0}, {0, 0, 0}});
  CHECK(C.dim() == 1);
}

TEST_CASE("enumeration counts match gauss binomials") {
  for (int p : {2, 3, 5}) {
    QParams qp(p);
    int nmax = (p == 2) ? 6 : (p == 3 ? 4 : 3);
    for (int n = 1; n <= nmax; ++n) {
      AmbientSpace space(n, p);
      for (int k = 0; k <= n; ++k) {
        auto subs = enumerate_subspaces(space, k);
        CHECK(Int(static_cast<long>(subs.size())) ==
              gauss_binomial(n, k, qp));
        // canonical forms are pairwise distinct
        for (size_t i = 0; i + 1 < subs.size(); ++i)
          CHECK(!(subs[i] == subs[i + 1]));
      }
    }
  }
}

TEST_CASE("distance and lattice dimensions") {
  AmbientSpace space(4, 2);
  auto U = canonicalize(4, 2, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  auto W = canonicalize(4, 2, {{0, 1, 0, 0}, {0, 0, 1, 0}});
  CHECK(dim_intersection(U, W) == 1);
  CHECK(dim_sum(U, W) == 3);
  CHECK(subspace_distance(U, W) == 2);
  CHECK(subspace_distance(U, U) == 0);
}

TEST_CASE("orthogonal complement") {
  for (int p : {2, 3}) {
    AmbientSpace space(4, p);
    for (int k = 0; k <= 4; ++k)
      for (const auto& U : enumerate_subspaces(space, k)) {
        auto Uc = orthogonal_complement(U);
        CHECK(Uc.dim() == 4 - k);
        // every row of Uc is orthogonal to every row of U
        for (const auto& r : U.rows)
          for (const auto& s : Uc.rows) {
            int dot = 0;
            for (int t = 0; t < 4; ++t) dot += r[t] * s[t];
            CHECK(dot % p == 0);
          }
      }
  }
}

TEST_CASE("complement reverses inclusion and preserves distance") {
  AmbientSpace space(5, 2);
  auto U = canonicalize(5, 2, {{1, 0, 0, 0, 0}});
  auto W = canonicalize(5, 2, {{1, 0, 0, 0, 0}, {0, 1, 1, 0, 0}});
  CHECK(dim_intersection(U, W) == 1);  // U <= W
  auto Uc = orthogonal_complement(U);
  auto Wc = orthogonal_complement(W);
  CHECK(dim_intersection(Wc, Uc) == Wc.dim());  // Wc <= Uc
  CHECK(subspace_distance(Uc, Wc) == subspace_distance(U, W));
}

TEST_CASE("oracle triple count spot values") {
  AmbientSpace space(3, 2);
  auto A = canonicalize(3, 2, {{1, 0, 0}});
  auto B = canonicalize(3, 2, {{0, 1, 0}});
  // 1-spaces through neither A nor B: 7 points, minus A, minus B; a 1-space
  // meets a 1-space in codim 0 iff equal
  CHECK(oracle_triple_count(space, A, B, 1, 1, 1) == 5);
  CHECK(oracle_triple_count(space, A, B, 1, 0, 1) == 1);
  CHECK(oracle_triple_count(space, A, B, 1, 0, 0) == 0);
}
