#include <fstream>

#include "doctest.h"
#include "subsdp/irreps.hpp"
#include "subsdp/solver.hpp"

using namespace subsdp;

namespace {

// max 5y over y in [0,1] in original units: optimum 5
SdpProblem toy_problem() {
  SdpProblem p;
  p.vars.push_back({0, 0, 0, Rat(5), Rat(5)});
  p.var_index[{0, 0, 0}] = 0;
  SdpBlock box;
  box.name = "box";
  box.size = 2;
  box.diag = true;
  box.entries = {{0, 0, 0, Rat(1)}, {-1, 1, 1, Rat(1)}, {0, 1, 1, Rat(-1)}};
  p.blocks.push_back(box);
  return p;
}

SdpProblem family_problem(long q, int n, int d, std::vector<int> K) {
  CoherentConfig cfg = build_config(n, QParams(q));
  IrrepTable tab = compute_irreps(cfg);
  return build_sdp(cfg, tab, d, K, nullptr);
}

}  // namespace

TEST_CASE("box toy solves to its exact optimum") {
  SolverSettings st;
  SdpProblem p = toy_problem();
  Solution s = solve(p, st);
  CHECK(s.status == SolveStatus::kOptimal);
  CHECK(abs(s.primal_obj - Real(5)) < two_pow(-60));
  CHECK(s.certified_upper >= s.primal_obj);
  CHECK(s.certified_upper - Real(5) < two_pow(-60));

  BoundResult fast = extract_bound(s, p, BoundMode::kFast);
  BoundResult cert = extract_bound(s, p, BoundMode::kCertified);
  CHECK(fast.bound == 5);
  CHECK(cert.bound == 5);
  CHECK(cert.near_integer);
}

TEST_CASE("weak duality holds on every return") {
  SolverSettings st;
  for (auto& p : {toy_problem(), family_problem(2, 6, 4, {1, 2, 3, 4, 5})}) {
    Solution s = solve(p, st);
    CHECK(s.primal_obj <= s.certified_upper);
    CHECK(s.gap < two_pow(st.gap_tol_log2 + 10));
  }
}

TEST_CASE("the solver is deterministic") {
  SolverSettings st;
  SdpProblem p = family_problem(2, 6, 4, {1, 2, 3, 4, 5});
  Solution a = solve(p, st);
  Solution b = solve(p, st);
  CHECK(a.iterations == b.iterations);
  CHECK(a.primal_obj.str(40) == b.primal_obj.str(40));
  CHECK(a.certified_upper.str(40) == b.certified_upper.str(40));
  for (size_t k = 0; k < a.y.size(); ++k)
    CHECK(a.y[k].str(40) == b.y[k].str(40));
}

TEST_CASE("headline bound certifies to 388") {
  SolverSettings st;
  SdpProblem p = family_problem(2, 7, 4, {1, 2, 3, 4, 5, 6});
  Solution s = solve(p, st);
  REQUIRE(s.status == SolveStatus::kOptimal);
  BoundResult b = extract_bound(s, p, BoundMode::kCertified);
  REQUIRE(b.has_bound);
  CHECK(b.bound == 388);
}

TEST_CASE("restricting the dimension set never raises the optimum") {
  SolverSettings st;
  SdpProblem sub = family_problem(2, 7, 4, {3});
  SdpProblem full = family_problem(2, 7, 4, {1, 2, 3, 4, 5, 6});
  Solution ssub = solve(sub, st);
  Solution sfull = solve(full, st);
  CHECK(ssub.certified_upper <= sfull.certified_upper);
  // single-dimension problem stays below its counting bound
  CHECK(extract_bound(ssub, sub, BoundMode::kCertified).bound <= 381);
}

TEST_CASE("precision does not change the certified integer") {
  SdpProblem p = family_problem(2, 6, 4, {1, 2, 3, 4, 5});
  SolverSettings lo, hi;
  hi.precision = 384;
  hi.gap_tol_log2 = -120;
  Solution a = solve(p, lo);
  Solution b = solve(p, hi);
  CHECK(extract_bound(a, p, BoundMode::kCertified).bound ==
        extract_bound(b, p, BoundMode::kCertified).bound);
  CHECK(abs(a.primal_obj - b.primal_obj) < two_pow(-60));
}

TEST_CASE("feasibility margins bracket and decide") {
  SolverSettings st;
  // feasible: the toy box admits interior points
  FeasibilityResult ok = check_feasibility(toy_problem(), st);
  REQUIRE(ok.decided);
  CHECK(ok.feasible);
  CHECK(ok.margin_lower <= ok.margin_upper + two_pow(-60));
  CHECK(ok.margin_lower.sign() > 0);

  // infeasible: y - 2 >= 0 contradicts y <= 1
  SdpProblem bad = toy_problem();
  SdpBlock row;
  row.name = "conflict";
  row.size = 1;
  row.diag = true;
  row.entries = {{0, 0, 0, Rat(1)}, {-1, 0, 0, Rat(-4)}};
  bad.blocks.push_back(row);
  FeasibilityResult no = check_feasibility(bad, st);
  REQUIRE(no.decided);
  CHECK(!no.feasible);
  CHECK(no.margin_upper.sign() < 0);
}

TEST_CASE("imported log becomes a bracketing solution") {
  ExternalLog log;
  log.status = "pdOPT";
  log.primal_text = "-3.8801e+02";
  log.dual_text = "-3.8802e+02";
  log.digits = 6;
  Solution s = solution_from_log(log);
  CHECK(s.status == SolveStatus::kOptimal);
  CHECK(s.primal_obj <= s.dual_obj);
  CHECK(abs(s.primal_obj - Real("388.01")) < two_pow(-40));
  CHECK(abs(s.certified_upper - Real("388.02")) < two_pow(-40));
  CHECK(s.note.find("log") != std::string::npos);

  log.status = "pdINF";
  CHECK(solution_from_log(log).status == SolveStatus::kInfeasible);
}
