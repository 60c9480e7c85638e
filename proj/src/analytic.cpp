#include "subsdp/analytic.hpp"

#include <fstream>
#include <map>
#include <memory>
#include <stdexcept>

#include "json.hpp"
#include "subsdp/coherent.hpp"
#include "subsdp/irreps.hpp"

namespace subsdp {

namespace {

// Run f at the current precision (at least 256 bits), doubling up to twice
// if an interval decision stays open.
template <class F>
auto escalate(F&& f) {
  const mpfr_prec_t start = default_prec() < 256 ? 256 : default_prec();
  for (int round = 0;; ++round) {
    PrecGuard guard(start << round);
    try {
      return f();
    } catch (const UndecidedInterval&) {
      if (round == 2) throw;
    }
  }
}

Int base_count(long q) {
  QParams qp(q);
  return NotationConstants(qp).psi_const * gauss_number(7, qp);
}

IntervalReal isqrt_int(const Int& v) { return interval_sqrt(IntervalReal(v)); }

void require_positive(const IntervalReal& v, const char* what) {
  if (v.is_positive()) return;
  if (v.hi().sign() < 0)
    throw std::runtime_error(std::string(what) + " is negative");
  throw UndecidedInterval(std::string(what) + ": sign undecided");
}

}  // namespace

IntervalReal::IntervalReal() = default;

IntervalReal::IntervalReal(long v) : lo_(v), hi_(v) {}

IntervalReal::IntervalReal(const Int& v) {
  mpfr_set_z(lo_.get(), v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_.get(), v.get_mpz_t(), MPFR_RNDU);
}

IntervalReal::IntervalReal(const Rat& v) {
  mpfr_set_q(lo_.get(), v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_.get(), v.get_mpq_t(), MPFR_RNDU);
}

IntervalReal::IntervalReal(const Real& lo, const Real& hi) : lo_(lo), hi_(hi) {
  if (lo_ > hi_) throw std::invalid_argument("interval endpoints reversed");
}

IntervalReal operator+(const IntervalReal& a, const IntervalReal& b) {
  IntervalReal r;
  mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

IntervalReal operator-(const IntervalReal& a, const IntervalReal& b) {
  IntervalReal r;
  mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return r;
}

IntervalReal operator*(const IntervalReal& a, const IntervalReal& b) {
  IntervalReal r;
  mpfr_t t;
  mpfr_init2(t, default_prec());
  mpfr_srcptr as[2] = {a.lo_.get(), a.hi_.get()};
  mpfr_srcptr bs[2] = {b.lo_.get(), b.hi_.get()};
  bool first = true;
  for (mpfr_srcptr x : as)
    for (mpfr_srcptr y : bs) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

IntervalReal operator/(const IntervalReal& a, const IntervalReal& b) {
  if (b.contains_zero())
    throw UndecidedInterval("division by an interval containing zero");
  IntervalReal r;
  mpfr_t t;
  mpfr_init2(t, default_prec());
  mpfr_srcptr as[2] = {a.lo_.get(), a.hi_.get()};
  mpfr_srcptr bs[2] = {b.lo_.get(), b.hi_.get()};
  bool first = true;
  for (mpfr_srcptr x : as)
    for (mpfr_srcptr y : bs) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

IntervalReal IntervalReal::operator-() const {
  IntervalReal r;
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

std::optional<Int> IntervalReal::certified_floor() const {
  if (!mpfr_number_p(lo_.get()) || !mpfr_number_p(hi_.get()))
    return std::nullopt;
  Int fl, fh;
  mpfr_get_z(fl.get_mpz_t(), lo_.get(), MPFR_RNDD);
  mpfr_get_z(fh.get_mpz_t(), hi_.get(), MPFR_RNDD);
  if (fl != fh) return std::nullopt;
  return fl;
}

IntervalReal interval_sqrt(const IntervalReal& a) {
  if (a.lo().sign() < 0)
    throw std::domain_error("interval_sqrt of a possibly negative interval");
  Real lo, hi;
  mpfr_sqrt(lo.get(), a.lo().get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), a.hi().get(), MPFR_RNDU);
  return IntervalReal(lo, hi);
}

Int family_formula(long q) {
  Int qi(q);
  return base_count(q) + qi * qi * qi * qi - 2 * qi * qi * qi + 3 * qi * qi -
         4 * qi + (q <= 3 ? 3 : 4);
}

Rat pair34_bound(long q, const Int& c) {
  if (c < 0) throw std::domain_error("pair34_bound: negative argument");
  QParams qp(q);
  Int g3 = gauss_number(3, qp);
  Int denom_scale = q * NotationConstants(qp).psi_const * g3 * g3;
  Rat num(Int(base_count(q) - c) * denom_scale);
  return num / Rat(Int(denom_scale + c));
}

IntervalReal pair23_bound(long q, const Int& a) {
  if (a < 0) throw std::domain_error("pair23_bound: negative argument");
  QParams qp(q);
  Int qi(q);
  Int g2 = gauss_number(2, qp), g3 = gauss_number(3, qp);
  Int g5 = gauss_number(5, qp);
  Int phi = NotationConstants(qp).phi;
  Int poly = qi * qi * qi * qi + 3 * qi * qi * qi + 3 * qi * qi + 3 * qi + 1;
  IntervalReal C = IntervalReal(poly) -
                   IntervalReal(Int(2 * g2)) * isqrt_int(qi * g3 * phi);
  Rat scale(a * g2 * g2, qi * g5 * g5 * g5);
  scale.canonicalize();
  IntervalReal den = IntervalReal(1L) + IntervalReal(scale) * C;
  return IntervalReal(Int(base_count(q) - a)) / den;
}

namespace {

// delta^s_{ijl} / m_{ijl} as an outward-rounded interval; the signed square
// of delta is exact, so only the square root widens.
IntervalReal rep_coef(const CoherentConfig& cfg, const IrrepTable& tab, int s,
                      int i, int j, int l) {
  RelationId r{i, j, l};
  const Rat& sq = tab.dsq(s, r);
  int sg = sgn(sq);
  if (sg == 0) return IntervalReal(0L);
  IntervalReal v =
      interval_sqrt(IntervalReal(Rat(abs(sq)))) / IntervalReal(cfg.m(r));
  return sg < 0 ? -v : v;
}

ScanResult pair24_scan_impl(long q) {
  CoherentConfig cfg = build_config(7, QParams(q));
  IrrepTable tab = compute_irreps(cfg);
  auto co = [&](int s, int i, int j, int l) {
    return rep_coef(cfg, tab, s, i, j, l);
  };

  // Positive combination N_1 + t_1 N_2 + t_2 (N_1)_22 of the two nontrivial
  // blocks on the fiber pair {2,4}: t_1 removes the unknown cross count from
  // the off-diagonal, t_2 the unknown within-4 count from the (2,2) entry.
  IntervalReal k1 = co(1, 2, 4, 1) - co(1, 2, 4, 2);
  IntervalReal k2 = co(2, 2, 4, 1) - co(2, 2, 4, 2);
  IntervalReal t1 = -(k1 / k2);
  IntervalReal g1 = co(1, 4, 4, 2) - co(1, 4, 4, 3);
  IntervalReal g2 = co(2, 4, 4, 2) - co(2, 4, 4, 3);
  IntervalReal t2 = -((g1 + t1 * g2) / g1);
  require_positive(t1, "pair24 t1");
  require_positive(t2, "pair24 t2");

  IntervalReal p0 = co(1, 2, 2, 0) + t1 * co(2, 2, 2, 0);
  IntervalReal p2 = co(1, 2, 2, 2) + t1 * co(2, 2, 2, 2);
  IntervalReal w = co(1, 2, 4, 2) + t1 * co(2, 2, 4, 2);
  IntervalReal one(1L);
  IntervalReal u = (one + t2) * co(1, 4, 4, 0) + t1 * co(2, 4, 4, 0);
  IntervalReal v = (one + t2) * co(1, 4, 4, 3) + t1 * co(2, 4, 4, 3);
  IntervalReal ww = w * w;
  IntervalReal uv = u - v;

  const Int cap = q_pow(q, 5) + q_pow(q, 3) + 1;
  // a = 0 leaves c unconstrained by the determinant; only the counting bound
  // applies there and it never exceeds the interior maximum.
  ScanResult best{base_count(q), 0};
  for (Int a = 1; a <= cap; ++a) {
    IntervalReal A(a);
    IntervalReal d11 = p0 * A + p2 * IntervalReal(Int(a * (a - 1)));
    IntervalReal den = A * A * ww - d11 * v;
    require_positive(den, "pair24 determinant denominator");
    IntervalReal val = A + d11 * uv / den;
    if (val.hi() < Real(Int(best.value + 1))) continue;  // cannot improve
    auto fl = val.certified_floor();
    if (!fl) throw UndecidedInterval("pair24_scan: floor undecided");
    if (*fl > best.value) {
      best.value = *fl;
      best.argmax = a.get_si();
    }
  }
  return best;
}

Int triple134_impl(long q) {
  CoherentConfig cfg = build_config(7, QParams(q));
  IrrepTable tab = compute_irreps(cfg);
  auto co = [&](int s, int i, int j, int l) {
    return rep_coef(cfg, tab, s, i, j, l);
  };

  // 3x3 block on the fibers {1,3,4} (the second nontrivial block only lives
  // on {3,4}). t_1 removes the unknown cross count from the (2,3) entry and
  // T = t_1 + t_2 the unknown within-fiber counts from the diagonal.
  IntervalReal d1 = co(1, 3, 4, 2) - co(1, 3, 4, 3);
  IntervalReal d2 = co(2, 3, 4, 2) - co(2, 3, 4, 3);
  IntervalReal t1 = -(d1 / d2);
  IntervalReal b1 = co(1, 3, 3, 2) - co(1, 3, 3, 3);
  IntervalReal b2 = co(2, 3, 3, 2) - co(2, 3, 3, 3);
  IntervalReal T = -(b1 / b2);
  require_positive(t1, "triple134 t1");
  require_positive(T - t1, "triple134 t2");
  // the same combination must also cancel the within-4 count
  IntervalReal h = (co(1, 4, 4, 2) - co(1, 4, 4, 3)) +
                   T * (co(2, 4, 4, 2) - co(2, 4, 4, 3));
  if (!h.contains_zero())
    throw std::runtime_error("triple134_bound: cancellation check failed");

  IntervalReal e11 = co(1, 1, 1, 0);
  IntervalReal w12 = co(1, 1, 3, 1);
  IntervalReal w13 = co(1, 1, 4, 1);
  IntervalReal u22 = co(1, 3, 3, 0) + T * co(2, 3, 3, 0);
  IntervalReal v22 = co(1, 3, 3, 3) + T * co(2, 3, 3, 3);
  IntervalReal w23 = co(1, 3, 4, 3) + t1 * co(2, 3, 4, 3);
  IntervalReal u33 = co(1, 4, 4, 0) + T * co(2, 4, 4, 0);
  IntervalReal v33 = co(1, 4, 4, 3) + T * co(2, 4, 4, 3);

  const Int base = base_count(q);
  const IntervalReal ibase(base);

  // x_4 = 0: the leading 2x2 minor bounds x_3
  IntervalReal den0 = w12 * w12 - e11 * v22;
  require_positive(den0, "triple134 minor denominator");
  IntervalReal val0 = IntervalReal(1L) + e11 * (u22 - v22) / den0;
  if (!val0.certainly_le(ibase)) {
    if (ibase.certainly_le(val0))
      throw std::runtime_error("triple134_bound: bound exceeded at x4 = 0");
    throw UndecidedInterval("triple134_bound: comparison undecided");
  }

  // det(N_t)/b = A(c) + B(c) b; with B < 0 the root -A/B bounds x_3
  for (Int c = 1; c <= base; ++c) {
    IntervalReal C(c);
    IntervalReal cc = C * C;
    IntervalReal e33 = u33 * C + v33 * IntervalReal(Int(c * (c - 1)));
    IntervalReal e13 = w13 * C;
    IntervalReal m = e11 * e33 - e13 * e13;
    IntervalReal A = m * (u22 - v22);
    IntervalReal B = m * v22 - e11 * (w23 * w23) * cc - (w12 * w12) * e33 +
                     IntervalReal(2L) * w12 * w23 * w13 * cc;
    require_positive(-B, "triple134 root coefficient");
    IntervalReal val = IntervalReal(Int(1 + c)) + A / (-B);
    if (val.certainly_le(ibase)) continue;
    if (ibase.certainly_le(val))
      throw std::runtime_error("triple134_bound: bound exceeded at x4 = " +
                               c.get_str());
    throw UndecidedInterval("triple134_bound: comparison undecided");
  }
  return base;
}

bool t_positivity_impl(long q) {
  QParams qp(q);
  Int qi(q);
  Int g2 = gauss_number(2, qp), g3 = gauss_number(3, qp);
  Int g5 = gauss_number(5, qp), g6 = gauss_number(6, qp);
  Int g7 = gauss_number(7, qp);
  Int phi = NotationConstants(qp).phi;
  Int psi = NotationConstants(qp).psi_const;

  std::vector<IntervalReal> ts;
  // pair {3,4}
  ts.push_back(isqrt_int(q_pow(q, 5)) * IntervalReal(g7) /
               IntervalReal(Int(g2 * g6)));
  ts.push_back(IntervalReal(Int(qi * qi * g5 * g7)) /
               (IntervalReal(Int(g2 * g2 * g6)) *
                (IntervalReal(Int(qi * qi + qi + 1)) + IntervalReal(Int(qi + 1)) * isqrt_int(qi))));
  // pair {2,3}: the rational coefficient and the irrational constant of the
  // denominator of the bound
  ts.push_back(IntervalReal(Rat(qi * qi * g7, g2 * g2 * psi)));
  ts.push_back(IntervalReal(Int(qi * qi * qi * qi + 3 * qi * qi * qi +
                                3 * qi * qi + 3 * qi + 1)) -
               IntervalReal(Int(2 * g2)) * isqrt_int(qi * g3 * phi));
  // pair {2,4}
  ts.push_back(IntervalReal(Int(qi * qi)) * isqrt_int(phi) * IntervalReal(g7) /
               (IntervalReal(g6) * isqrt_int(g3)));
  ts.push_back(IntervalReal(Int(g2 * g2)) * isqrt_int(phi) /
                   isqrt_int(g3 * g3 * g3) -
               IntervalReal(1L));
  // triple {1,3,4} refinement factor
  ts.push_back(IntervalReal(g3) - isqrt_int(qi) * IntervalReal(g2));

  for (const auto& t : ts) {
    if (t.hi().sign() < 0) return false;
    if (!t.is_positive())
      throw UndecidedInterval("t positivity undecided at q = " +
                              std::to_string(q));
  }
  return true;
}

}  // namespace

ScanResult pair24_scan(long q) {
  return escalate([&] { return pair24_scan_impl(q); });
}

Int triple134_bound(long q) {
  return escalate([&] { return triple134_impl(q); });
}

bool verify_t_positivity(long q) {
  return escalate([&] { return t_positivity_impl(q); });
}

bool extreme_fiber_check(long q, const std::vector<long>& profile,
                         const Int& size) {
  if (profile.size() != 8)
    throw std::invalid_argument("extreme_fiber_check: profile must have 8 entries");
  long x0 = profile[0], x1 = profile[1], x6 = profile[6], x7 = profile[7];
  for (long v : {x0, x1, x6, x7})
    if (v < 0 || v > 1) return false;  // minimum distance caps these at 1
  const Int base = base_count(q);
  if (x0 == 1 && x7 == 1) return size <= 2;
  if (x0 + x7 == 1) {
    // orthogonality: reduce to the x7 = 1 case
    long x1s = (x7 == 1) ? x1 : x6;
    return size <= base + (x1s == 1 ? 2 : 1);
  }
  if (x1 == 1 && x6 == 1) return size <= base + 2;
  return true;
}

Int combined_74_bound(long q) {
  return base_count(q) + 2 * (q_pow(q, 5) + q_pow(q, 3) + 1);
}

long binary_f(long x) {
  Rat r = pair34_bound(2, Int(x));
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return fl.get_si();
}

long binary_g(long x) {
  if (x == 0) return base_count(2).get_si();  // exact endpoint
  return escalate([&] {
    auto fl = pair23_bound(2, Int(x)).certified_floor();
    if (!fl) throw UndecidedInterval("binary_g: floor undecided");
    return fl->get_si();
  });
}

long binary_h(long x) {
  // (A sqrt(35) + B) / (C + D sqrt(35)); rational exactly when AC = BD
  Int A = Int(13209651) - Int(28575) * x;
  Int B = Int(73499853) - Int(192913) * x;
  Int C = Int(192913) - Int(98) * x;
  Int D = 34671;
  if (A * C == B * D) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), A.get_mpz_t(), D.get_mpz_t());
    return fl.get_si();
  }
  return escalate([&] {
    IntervalReal s35 = isqrt_int(Int(35));
    IntervalReal num = IntervalReal(A) * s35 + IntervalReal(B);
    IntervalReal den = IntervalReal(C) + IntervalReal(D) * s35;
    auto fl = (num / den).certified_floor();
    if (!fl) throw UndecidedInterval("binary_h: floor undecided");
    return fl->get_si();
  });
}

long four_fiber_strategy(const BoundFn& f, const BoundFn& g,
                         const BoundFn& h) {
  std::vector<long> fv(152), gv(42), hv(42);
  for (long x = 0; x <= 151; ++x) fv[x] = f(x);
  for (long x = 0; x <= 41; ++x) {
    gv[x] = g(x);
    hv[x] = h(x);
  }
  long best = 0;
  for (long x2 = 0; x2 <= 41; ++x2)
    for (long x5 = 0; x5 <= 41; ++x5) {
      long u3 = std::min(gv[x2], hv[x5]);
      long u4 = std::min(gv[x5], hv[x2]);
      long cap = std::min({u3, u4, 151L});
      if (cap < 0) continue;
      long inner = 0;
      for (long x4 = 0; x4 <= cap; ++x4)
        inner = std::max(inner, std::min(u3, fv[x4]) + x4);
      best = std::max(best, x2 + inner + x5);
    }
  return best;
}

BoundFn table_function(const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in.good())
    throw std::runtime_error("cannot open bound table: " + json_path);
  nlohmann::json j;
  in >> j;
  if (!j.is_array())
    throw std::runtime_error("bound table must be a JSON array of pairs");
  auto table = std::make_shared<std::map<long, long>>();
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2)
      throw std::runtime_error("bound table entries must be [x, value]");
    (*table)[e[0].get<long>()] = e[1].get<long>();
  }
  return [table, json_path](long x) {
    auto it = table->find(x);
    if (it == table->end())
      throw std::out_of_range("no table entry for x = " + std::to_string(x) +
                              " in " + json_path);
    return it->second;
  };
}

BoundFn min_function(BoundFn a, BoundFn b) {
  return [a = std::move(a), b = std::move(b)](long x) {
    return std::min(a(x), b(x));
  };
}

namespace {

struct QReport {
  long q;
  Int closed_form;
  ScanResult scan;
  bool matches;
  bool t_positive;
  Int pair_sum_74;
};

QReport report_row(long q) {
  QReport r;
  r.q = q;
  r.closed_form = family_formula(q);
  r.scan = pair24_scan(q);
  r.matches = (r.scan.value == r.closed_form);
  r.t_positive = verify_t_positivity(q);
  r.pair_sum_74 = combined_74_bound(q);
  return r;
}

}  // namespace

std::string analytic_report_json(const std::vector<long>& qs) {
  nlohmann::json out = nlohmann::json::array();
  for (long q : qs) {
    QReport r = report_row(q);
    nlohmann::json row;
    row["q"] = r.q;
    row["closed_form"] = r.closed_form.get_str();
    row["pair24_scan"] = r.scan.value.get_str();
    row["pair24_argmax"] = r.scan.argmax;
    row["scan_matches_closed_form"] = r.matches;
    row["t_coefficients_positive"] = r.t_positive;
    row["pair_sum_74_bound"] = r.pair_sum_74.get_str();
    out.push_back(row);
  }
  return out.dump(2);
}

std::string analytic_report_markdown(const std::vector<long>& qs) {
  std::string out =
      "| q | closed form | pair 2+4 scan | argmax | match | t > 0 | "
      "pair 3+4 route |\n|---|---|---|---|---|---|---|\n";
  for (long q : qs) {
    QReport r = report_row(q);
    out += "| " + std::to_string(r.q) + " | " + r.closed_form.get_str() +
           " | " + r.scan.value.get_str() + " | " +
           std::to_string(r.scan.argmax) + " | " +
           (r.matches ? "yes" : "no") + " | " + (r.t_positive ? "yes" : "no") +
           " | " + r.pair_sum_74.get_str() + " |\n";
  }
  return out;
}

}  // namespace subsdp
