#include "doctest.h"
#include "subsdp/fano.hpp"

using namespace subsdp;

static const PlaneConfig& config() {
  static PlaneConfig cfg = build_plane_configuration();
  return cfg;
}

TEST_CASE("plane census") {
  const PlaneConfig& cfg = config();
  CHECK(cfg.num_planes() == 11811);
  REQUIRE(cfg.fiber_sizes().size() == 4);
  CHECK(cfg.fiber_sizes()[0] == 1);
  CHECK(cfg.fiber_sizes()[1] == 210);
  CHECK(cfg.fiber_sizes()[2] == 3920);
  CHECK(cfg.fiber_sizes()[3] == 7680);
  CHECK(cfg.nrel() == 56);

  // the m's partition the ordered pairs
  Int total(0);
  for (const auto& r : cfg.relations()) total += cfg.m(r);
  CHECK(total == Int(11811) * Int(11811));

  // transpose closure with matching sizes
  for (const auto& r : cfg.relations()) {
    REQUIRE(cfg.has(r.transposed()));
    CHECK(cfg.m(r) == cfg.m(r.transposed()));
  }

  CHECK(cfg.m({0, 2, 2, 2, 0}) == 3920);
  CHECK(cfg.m({2, 2, 0, 2, 2}) == 3920);
  CHECK(cfg.m({2, 2, 2, 2, 2}) == 1003520);
  CHECK(cfg.m({2, 3, 3, 3, 1}) == 18063360);
  CHECK(cfg.m({3, 3, 3, 3, 0}) == 1290240);
  CHECK(cfg.m({3, 3, 3, 3, 1}) == 36126720);

  CHECK(!cfg.has({1, 2, 1, 2, 0}));  // empty class
  CHECK_THROWS_AS(cfg.index({1, 2, 1, 2, 0}), std::out_of_range);
  CHECK(PlaneRelation{2, 3, 2, 3, 1}.str() == "23231");
}

TEST_CASE("intersection number identities") {
  const PlaneConfig& cfg = config();
  // sum_j p^k_{ij} counts the z with (x, z) in i, so it equals the valency
  // m_i / |fiber of x| whenever i starts in the fiber of x, else 0
  for (int k = 0; k < cfg.nrel(); ++k) {
    for (int i = 0; i < cfg.nrel(); ++i) {
      long s = 0;
      for (int j = 0; j < cfg.nrel(); ++j) s += cfg.p(i, j, k);
      const auto& ri = cfg.relations()[i];
      const auto& rk = cfg.relations()[k];
      Int expect(0);
      if (ri.a == rk.a) expect = cfg.m(ri) / cfg.fiber_sizes()[ri.a];
      CHECK(Int(s) == expect);
    }
  }
  CHECK(cfg.p(PlaneRelation{2, 2, 2, 2, 2}, PlaneRelation{2, 2, 2, 2, 2},
              PlaneRelation{2, 2, 2, 2, 2}) == 96);
}

TEST_CASE("regular matrix detects positive semidefiniteness") {
  const PlaneConfig& cfg = config();
  const Real tol = two_pow(-60);

  // all-ones matrix on the planes
  std::vector<Rat> counts;
  for (const auto& r : cfg.relations()) counts.push_back(Rat(cfg.m(r)));
  CHECK(min_eigenvalue(regular_matrix(cfg, counts)) >= -tol);

  // rank-one matrix supported on the base plane
  std::vector<Rat> point(cfg.nrel(), Rat(0));
  point[cfg.index({0, 0, 0, 0, 0})] = 1;
  CHECK(min_eigenvalue(regular_matrix(cfg, point)) >= -tol);

  // a symmetric off-diagonal class pair with no diagonal is never PSD
  std::vector<Rat> off(cfg.nrel(), Rat(0));
  off[cfg.index({0, 1, 1, 1, 0})] = Rat(210);
  off[cfg.index({1, 0, 1, 1, 0})] = Rat(210);
  CHECK(min_eigenvalue(regular_matrix(cfg, off)) < -Real(1) / Real(1000));
}

TEST_CASE("block diagonalization of the regular representation") {
  const PlaneConfig& cfg = config();
  PlaneBlocks pb = block_diagonalize(cfg);
  long total = 0;
  for (int d : pb.dims) {
    CHECK(d >= 1);
    total += d;
  }
  CHECK(total == 56);
  CHECK(pb.dims.size() > 1);
  CHECK(pb.residual < two_pow(-60));

  // the change of basis is orthogonal
  Mat g = transpose(pb.basis) * pb.basis;
  Real worst(0);
  for (int i = 0; i < 56; ++i)
    for (int j = 0; j < 56; ++j) {
      Real e = abs(g(i, j) - (i == j ? Real(1) : Real(0)));
      if (e > worst) worst = e;
    }
  CHECK(worst < two_pow(-60));
}

TEST_CASE("pair count brackets for a code of size 381") {
  const PlaneConfig& cfg = config();
  // generic within-fiber-2 class
  CHECK(plane_pair_bound(cfg, {2, 2, 2, 2, 2}, true) == 2240);
  CHECK(plane_pair_bound(cfg, {2, 2, 2, 2, 2}, false) == 1400);
  // generic within-fiber-3 class
  CHECK(plane_pair_bound(cfg, {3, 3, 3, 3, 1}, true) == 34440);
  CHECK(plane_pair_bound(cfg, {3, 3, 3, 3, 1}, false) == 33600);

  CHECK_THROWS_AS(plane_pair_bound(cfg, {0, 2, 2, 2, 0}, true),
                  std::invalid_argument);
}

TEST_CASE("table emitters") {
  std::vector<PairBoundRow> rows = {{{2, 2, 2, 2, 2}, Int(1400), Int(2240)}};
  std::string md = pair_bound_markdown(rows);
  CHECK(md.find("| relation | lower | upper |") != std::string::npos);
  CHECK(md.find("| 22222 | 1400 | 2240 |") != std::string::npos);
  std::string csv = pair_bound_csv(rows);
  CHECK(csv.find("relation,lower,upper") != std::string::npos);
  CHECK(csv.find("22222,1400,2240") != std::string::npos);
}
