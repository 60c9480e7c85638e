#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "subsdp/analytic.hpp"

using namespace subsdp;

TEST_CASE("interval arithmetic is outward and exact on integers") {
  IntervalReal a(3L), b(Int(7));
  CHECK((a + b).certified_floor().value() == 10);
  CHECK((a * b).certified_floor().value() == 21);
  CHECK((b - a).is_positive());
  CHECK((a - b).is_negative());
  CHECK((a - a).contains_zero());

  IntervalReal third(Rat(1, 3));
  CHECK(third.lo() < third.hi());  // 1/3 is not representable in binary
  CHECK((third * IntervalReal(3L)).certified_floor() == std::nullopt);

  IntervalReal r2 = interval_sqrt(IntervalReal(2L));
  CHECK((r2 * r2).lo() <= Real(2));
  CHECK((r2 * r2).hi() >= Real(2));
  CHECK(r2.certified_floor().value() == 1);
  CHECK_THROWS_AS(IntervalReal(1L) / (a - a), UndecidedInterval);
  CHECK_THROWS_AS(interval_sqrt(-a), std::domain_error);
  CHECK((-a).hi().sign() < 0);
}

TEST_CASE("closed form of the family bound") {
  CHECK(family_formula(2) == 388);
  CHECK(family_formula(3) == 7696);
  CHECK(family_formula(4) == 71157);
  CHECK(family_formula(5) == 410585);
}

TEST_CASE("x3-x4 pair bound") {
  CHECK(pair34_bound(2, Int(0)) == 381);
  CHECK(pair34_bound(2, Int(381)) == 0);
  // floored version at the anchor point
  CHECK(binary_f(87) == 226);
  Rat anchor(294 * (381 - 87), 294 + 87);
  anchor.canonicalize();
  CHECK(pair34_bound(2, Int(87)) == anchor);
  CHECK_THROWS_AS(pair34_bound(2, Int(-1)), std::domain_error);
}

TEST_CASE("x2-x3 pair bound") {
  auto at0 = pair23_bound(2, Int(0));
  CHECK(at0.lo() <= Real(381));
  CHECK(at0.hi() >= Real(381));
  CHECK(at0.width() < two_pow(-200));
  CHECK(binary_g(0) == 381);
  CHECK(binary_g(41) == 322);
  // monotone decreasing over the admissible range
  IntervalReal prev = pair23_bound(2, Int(0));
  for (long a = 1; a <= 41; ++a) {
    IntervalReal cur = pair23_bound(2, Int(a));
    CHECK(cur.certainly_le(prev));
    prev = cur;
  }
}

TEST_CASE("x2+x4 scan agrees with the closed form, except q = 4") {
  for (long q : {2L, 3L, 5L}) {
    ScanResult s = pair24_scan(q);
    CHECK(s.value == family_formula(q));
    CHECK(s.argmax > 0);
  }
  // the certified scan lands one below the piecewise closed form at q = 4;
  // the full SDP value is 71156 as well
  ScanResult s4 = pair24_scan(4);
  CHECK(s4.value == 71156);
  CHECK(s4.value == family_formula(4) - 1);
}

TEST_CASE("x1+x3+x4 refinement stays below the counting bound") {
  CHECK(triple134_bound(2) == 381);
  CHECK(triple134_bound(3) == 7651);
}

TEST_CASE("extreme fiber case analysis") {
  // both trivial fibers occupied: at most the two trivial codewords
  CHECK(!extreme_fiber_check(2, {1, 0, 0, 0, 0, 0, 0, 1}, Int(384)));
  CHECK(extreme_fiber_check(2, {1, 0, 0, 0, 0, 0, 0, 1}, Int(2)));
  // one trivial fiber occupied
  CHECK(!extreme_fiber_check(2, {0, 1, 0, 0, 0, 0, 0, 1}, Int(384)));
  CHECK(extreme_fiber_check(2, {0, 1, 0, 0, 0, 0, 0, 1}, Int(383)));
  CHECK(!extreme_fiber_check(2, {0, 0, 0, 0, 0, 0, 0, 1}, Int(383)));
  CHECK(extreme_fiber_check(2, {1, 0, 0, 0, 0, 0, 1, 0}, Int(383)));
  // both 1-codimension-step fibers occupied
  CHECK(!extreme_fiber_check(2, {0, 1, 0, 0, 0, 0, 1, 0}, Int(384)));
  CHECK(extreme_fiber_check(2, {0, 1, 0, 0, 0, 0, 1, 0}, Int(383)));
  // large sizes force empty extreme fibers
  CHECK(extreme_fiber_check(2, {0, 1, 0, 0, 0, 0, 0, 0}, Int(388)));
  CHECK(extreme_fiber_check(2, {0, 0, 0, 0, 0, 0, 0, 0}, Int(388)));
  // more than one codeword in an extreme fiber violates the distance
  CHECK(!extreme_fiber_check(2, {0, 2, 0, 0, 0, 0, 0, 0}, Int(3)));
  CHECK_THROWS_AS(extreme_fiber_check(2, {0, 0, 0}, Int(1)),
                  std::invalid_argument);
}

TEST_CASE("pair route closed form") {
  CHECK(combined_74_bound(2) == 463);
  CHECK(combined_74_bound(3) == 8193);
  for (long q : {2L, 3L, 4L, 5L, 7L, 8L, 9L, 11L, 13L})
    CHECK(combined_74_bound(q) >= family_formula(q));
}

TEST_CASE("combination coefficients are positive") {
  for (long q : {2L, 3L, 4L, 5L, 9L, 32L, 101L}) CHECK(verify_t_positivity(q));
}

TEST_CASE("layered maximization") {
  CHECK(four_fiber_strategy(binary_f, binary_g, binary_h) == 432);
  auto zero = [](long) { return 0L; };
  CHECK(four_fiber_strategy(zero, zero, zero) == 82);
  // binary_f is nonincreasing and crosses the identity before 152
  for (long x = 1; x <= 151; ++x) CHECK(binary_f(x) <= binary_f(x - 1));
  CHECK(binary_f(151) >= 151);
  CHECK(binary_f(152) < 152);
}

TEST_CASE("bound functions load from json tables") {
  const std::string path = "table_fn.json";
  {
    std::ofstream out(path);
    out << "[[0, 381], [1, 290], [2, 100]]";
  }
  BoundFn t = table_function(path);
  std::remove(path.c_str());
  CHECK(t(0) == 381);
  CHECK(t(2) == 100);
  CHECK_THROWS_AS(t(3), std::out_of_range);
  BoundFn m = min_function(t, [](long) { return 200L; });
  CHECK(m(0) == 200);
  CHECK(m(2) == 100);
  CHECK_THROWS_AS(table_function("no_such_table.json"), std::runtime_error);
}

TEST_CASE("report emitters cover the requested q values") {
  std::string js = analytic_report_json({2, 3});
  auto j = nlohmann::json::parse(js);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["q"] == 2);
  CHECK(j[0]["closed_form"] == "388");
  CHECK(j[0]["scan_matches_closed_form"] == true);
  CHECK(j[1]["pair24_scan"] == "7696");
  CHECK(j[1]["t_coefficients_positive"] == true);

  std::string md = analytic_report_markdown({2});
  CHECK(md.find("| 2 | 388 | 388 |") != std::string::npos);
}
