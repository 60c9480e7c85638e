#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "subsdp/irreps.hpp"
#include "subsdp/sdp_model.hpp"

using namespace subsdp;

namespace {

Real entry_value(const Rat& sq) {
  Real v = sqrt(abs(Real(sq)));
  return sgn(sq) < 0 ? -v : v;
}

// constant part of a block (the matrix at y = 0)
Mat constant_matrix(const SdpBlock& b) {
  Mat m = Mat::zero(b.size, b.size);
  for (const auto& e : b.entries) {
    if (e.var != -1) continue;
    Real v = entry_value(e.coef_sq);
    m(e.r, e.c) += v;
    if (e.r != e.c) m(e.c, e.r) += v;
  }
  return m;
}

}  // namespace

TEST_CASE("dimension bounds match the reference values") {
  QParams q2(2);
  CHECK(dimension_bound(q2, 7, 4, 2) == 41);
  CHECK(dimension_bound(q2, 7, 4, 3) == 381);
  CHECK(dimension_bound(q2, 9, 4, 2) == 169);
  // degenerate dimensions
  CHECK(dimension_bound(q2, 7, 4, 0) == 1);
  CHECK(dimension_bound(q2, 7, 4, 7) == 1);
  CHECK(dimension_bound(q2, 9, 8, 3) == 1);  // 2k < d
  CHECK_THROWS_AS(dimension_bound(q2, 7, 3, 2), std::domain_error);
  CHECK_THROWS_AS(dimension_bound(q2, 7, 4, 8), std::domain_error);
}

TEST_CASE("dimension bound is symmetric under orthogonal complement") {
  for (long q : {2L, 3L}) {
    QParams qp(q);
    for (int n = 2; n <= 10; ++n)
      for (int d = 2; d <= 2 * n; d += 2)
        for (int k = 0; k <= n; ++k)
          CHECK(dimension_bound(qp, n, d, k) ==
                dimension_bound(qp, n, d, n - k));
  }
}

TEST_CASE("user table entries tighten the bound and respect symmetry") {
  QParams q2(2);
  DimensionBoundTable t;
  t.set(2, 7, 4, 3, Int(300), "test");
  CHECK(dimension_bound(q2, 7, 4, 3, &t) == 300);
  // entry stored at k also serves n-k
  CHECK(dimension_bound(q2, 7, 4, 4, &t) == 300);
  // looser entries never raise the bound
  DimensionBoundTable loose;
  loose.set(2, 7, 4, 3, Int(100000), "test");
  CHECK(dimension_bound(q2, 7, 4, 3, &loose) == 381);
}

TEST_CASE("bound table json round trip") {
  DimensionBoundTable t;
  t.set(2, 10, 8, 4, Int(65), "spread");
  t.set(3, 8, 6, 4, Int("123456789012345678901234567890"), "big");
  const std::string path = "round_trip_bounds.json";
  {
    std::ofstream out(path);
    out << t.dump_json();
  }
  DimensionBoundTable u = DimensionBoundTable::load_json(path);
  std::remove(path.c_str());
  REQUIRE(u.lookup(2, 10, 8, 4).has_value());
  CHECK(*u.lookup(2, 10, 8, 4) == 65);
  REQUIRE(u.lookup(3, 8, 6, 4).has_value());
  CHECK(*u.lookup(3, 8, 6, 4) == Int("123456789012345678901234567890"));
  CHECK(!u.lookup(2, 7, 4, 3).has_value());
}

TEST_CASE("bundled bound table loads") {
  DimensionBoundTable t = DimensionBoundTable::load_json(
      std::string(SUBSDP_DATA_DIR) + "/cdc_bounds.json");
  REQUIRE(t.lookup(2, 10, 8, 4).has_value());
  CHECK(*t.lookup(2, 10, 8, 4) == 65);
  REQUIRE(t.lookup(2, 9, 6, 4).has_value());
  CHECK(*t.lookup(2, 9, 6, 4) == 1156);
}

TEST_CASE("distance zeroing rule matches the half-integer form") {
  // l < min(i,j) + (d-i-j)/2 over the rationals, applied when i != j or
  // l >= 1, is the same predicate as |i-j| + 2l < d
  for (int n = 1; n <= 16; ++n)
    for (int i = 0; i <= n; ++i)
      for (int j = i; j <= n; ++j)
        for (int l = 0; l <= i; ++l)
          for (int d = 1; d <= 2 * n + 2; ++d) {
            bool guard = (i != j) || (l >= 1);
            bool half = guard && 2 * l < 2 * i + (d - i - j);  // min(i,j) = i
            CHECK(distance_zeroed(i, j, l, d) == half);
          }
}

TEST_CASE("problem structure for the n=7 family") {
  CoherentConfig cfg = build_config(7, QParams(2));
  IrrepTable tab = compute_irreps(cfg);
  std::vector<int> K{1, 2, 3, 4, 5, 6};
  SdpProblem p = build_sdp(cfg, tab, 4, K, nullptr);
  CHECK(p.q == 2);
  CHECK(p.n == 7);
  CHECK(p.d == 4);

  std::set<std::string> names;
  for (const auto& b : p.blocks) names.insert(b.name);
  CHECK(names.count("rep_0") == 1);
  CHECK(names.count("moment") == 1);
  CHECK(names.count("cap") == 1);
  CHECK(names.count("box") == 1);
  for (int i : K) CHECK(names.count("fiber_" + std::to_string(i)) == 1);
  CHECK(names.count("pair_2_4") == 1);

  // no variable survives the zeroing rule
  for (const auto& [key, idx] : p.var_index) {
    auto [i, j, l] = key;
    CHECK(!distance_zeroed(i, j, l, 4));
    CHECK(p.vars[idx].i == i);
  }
  // diagonal l=0 variables carry the objective, box bound 41/381 pattern
  CHECK(p.vars[p.var_index.at({2, 2, 0})].ub == 41);
  CHECK(p.vars[p.var_index.at({3, 3, 0})].ub == 381);
  CHECK(p.vars[p.var_index.at({3, 3, 0})].obj == 381);
  CHECK(p.vars[p.var_index.at({2, 4, 2})].obj == 0);
}

TEST_CASE("unattainable distance leaves only the singleton variables") {
  CoherentConfig cfg = build_config(4, QParams(2));
  IrrepTable tab = compute_irreps(cfg);
  std::vector<int> K{0, 1, 2, 3, 4};
  SdpProblem p = build_sdp(cfg, tab, 12, K, nullptr);
  CHECK(p.num_vars() == static_cast<int>(K.size()));
  for (const auto& v : p.vars) {
    CHECK(v.i == v.j);
    CHECK(v.l == 0);
  }
}

TEST_CASE("zero assignment is feasible") {
  PrecGuard guard(256);
  for (auto [n, q, d] : {std::tuple<int, long, int>{7, 2, 4}, {6, 3, 4},
                         {8, 2, 5}}) {
    CoherentConfig cfg = build_config(n, QParams(q));
    IrrepTable tab = compute_irreps(cfg);
    std::vector<int> K;
    for (int i = 0; i <= n; ++i) K.push_back(i);
    SdpProblem p = build_sdp(cfg, tab, d, K, nullptr);
    for (const auto& b : p.blocks) {
      if (b.diag) {
        std::vector<Real> diag(b.size);
        for (const auto& e : b.entries)
          if (e.var == -1) diag[e.r] += entry_value(e.coef_sq);
        for (const auto& v : diag) CHECK(v.sign() >= 0);
      } else {
        Real lo = min_eigenvalue(constant_matrix(b));
        CHECK(lo >= -two_pow(-200));
      }
    }
  }
}

TEST_CASE("variable pinning substitutes and accumulates the objective") {
  CoherentConfig cfg = build_config(7, QParams(2));
  IrrepTable tab = compute_irreps(cfg);
  SdpProblem p = build_sdp(cfg, tab, 4, {2, 3, 4}, nullptr);
  const int before = p.num_vars();

  std::map<std::tuple<int, int, int>, Rat> pin;
  pin[{3, 3, 0}] = Rat(100);
  SdpProblem f = fix_variables(p, pin);
  CHECK(f.num_vars() == before - 1);
  CHECK(f.obj_offset == 100);
  CHECK(f.var_index.find({3, 3, 0}) == f.var_index.end());
  for (const auto& [key, idx] : f.var_index)
    CHECK(f.vars[idx].ub == p.vars[p.var_index.at(key)].ub);

  pin[{3, 3, 0}] = Rat(382);  // above the box bound 381
  CHECK_THROWS_AS(fix_variables(p, pin), std::domain_error);
  pin.erase({3, 3, 0});
  pin[{1, 1, 0}] = Rat(1);  // fiber 1 is not in K
  CHECK_THROWS_AS(fix_variables(p, pin), std::domain_error);
}

TEST_CASE("sdpa export is well formed") {
  CoherentConfig cfg = build_config(7, QParams(2));
  IrrepTable tab = compute_irreps(cfg);
  SdpProblem p = build_sdp(cfg, tab, 4, {2, 3}, nullptr);
  const std::string path = "export_check.dat-s";
  export_sdpa(p, path);

  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  while (std::getline(in, line) && !line.empty() && line[0] == '*') {
  }
  CHECK(std::stoi(line) == p.num_vars());
  std::getline(in, line);
  const int nblocks = std::stoi(line);
  CHECK(nblocks == static_cast<int>(p.blocks.size()));
  std::getline(in, line);
  {
    std::istringstream sizes(line);
    int sz, count = 0;
    while (sizes >> sz) {
      const SdpBlock& b = p.blocks[count++];
      CHECK(sz == (b.diag ? -b.size : b.size));
    }
    CHECK(count == nblocks);
  }
  std::getline(in, line);
  {
    std::istringstream obj(line);
    std::string tok;
    int count = 0;
    while (obj >> tok) ++count;
    CHECK(count == p.num_vars());
  }
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ent(line);
    int var, blk, r, c;
    std::string val;
    REQUIRE((ent >> var >> blk >> r >> c >> val));
    CHECK(var >= 0);
    CHECK(var <= p.num_vars());
    CHECK(blk >= 1);
    CHECK(blk <= nblocks);
    CHECK(r >= 1);
    CHECK(r <= c);
    CHECK(c <= p.blocks[blk - 1].size);
    ++rows;
  }
  CHECK(rows > 0);
  std::remove(path.c_str());
}

TEST_CASE("external log parsing") {
  const std::string path = "sample_solver.log";
  {
    std::ofstream out(path);
    out << "some banner\n"
        << "phase.value  = pdOPT\n"
        << "objValPrimal = -3.8800000123456789012345e+02\n"
        << "objValDual   = -3.8800000123456789012399e+02\n";
  }
  ExternalLog log = read_solver_log(path);
  std::remove(path.c_str());
  CHECK(log.status == "pdOPT");
  CHECK(log.primal_text == "-3.8800000123456789012345e+02");
  CHECK(log.digits == 23);

  {
    std::ofstream out(path);
    out << "phase.value = pdOPT\nobjValPrimal = -1.0e0\n";
  }
  CHECK_THROWS_AS(read_solver_log(path), std::runtime_error);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_solver_log("no_such_file.log"), std::runtime_error);
}
