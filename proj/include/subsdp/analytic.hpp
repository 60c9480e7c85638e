#pragma once

// Closed-form and interval-certified companions of the n = 7 SDP: pairwise
// fiber-sum bounds (x3 vs x4, x3 vs x2, x2 + x4), the refinement with a
// 1-dimensional element present, the piecewise closed form for the best
// known A_q(7,4) bound, and the layered integer maximization that combines
// the per-pair bound functions. Irrational coefficients are handled with
// outward-rounded interval arithmetic; every floor decision is certified
// (no decision is taken while an integer lies inside the enclosure).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "subsdp/hp.hpp"

namespace subsdp {

// Closed interval [lo, hi] with outward-rounded MPFR endpoints at the
// current default precision.
class IntervalReal {
 public:
  IntervalReal();                     // [0, 0]
  IntervalReal(long v);               // exact
  IntervalReal(const Int& v);         // exact
  explicit IntervalReal(const Rat& v);
  IntervalReal(const Real& lo, const Real& hi);

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  Real width() const { return hi_ - lo_; }

  friend IntervalReal operator+(const IntervalReal& a, const IntervalReal& b);
  friend IntervalReal operator-(const IntervalReal& a, const IntervalReal& b);
  friend IntervalReal operator*(const IntervalReal& a, const IntervalReal& b);
  friend IntervalReal operator/(const IntervalReal& a, const IntervalReal& b);
  IntervalReal operator-() const;

  bool is_positive() const { return lo_.sign() > 0; }
  bool is_negative() const { return hi_.sign() < 0; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  // certainly <=: hi(a) <= lo(b)
  bool certainly_le(const IntervalReal& b) const { return hi_ <= b.lo(); }

  // floor, defined only when both endpoints floor to the same integer
  std::optional<Int> certified_floor() const;

 private:
  Real lo_, hi_;
};

IntervalReal interval_sqrt(const IntervalReal& a);

// thrown when an enclosure stays too wide to decide a floor or a sign even
// after precision escalation
struct UndecidedInterval : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Piecewise closed form of the best known A_q(7,4) bound:
// (q^2-q+1)[7] + q^4-2q^3+3q^2-4q+3 for q in {2,3}, +4 instead of +3 for
// q >= 4. Gives 388, 7696, 71157, 410585 at q = 2,3,4,5.
Int family_formula(long q);

// Upper bound on x_3 given x_4 = c (exact rational):
// ((q^2-q+1)[7] - c) / (1 + c/(q psi [3]^2)). At c = 0 this is the line
// counting bound (q^2-q+1)[7].
Rat pair34_bound(long q, const Int& c);

// Upper bound on x_3 given x_2 = a (irrational coefficients):
// ((q^2-q+1)[7] - a) / (1 + a [2]^2 C / (q [5]^3)) with
// C = (q^4+3q^3+3q^2+3q+1) - 2 [2] sqrt(q [3] phi) > 0.
IntervalReal pair23_bound(long q, const Int& a);

struct ScanResult {
  Int value;        // max over the integer grid of the certified floor
  long argmax = -1;  // smallest grid point attaining the maximal floor
};

// Bound on x_2 + x_4: for each integer a in [0, q^5+q^3+1], the largest c
// with det(N_t) >= 0 is computed from the two nontrivial representation
// blocks of the fiber-pair {2,4} sub-configuration, after eliminating the
// unknown pair counts by a positive combination N_1 + t_1 N_2 + t_2 (N_1)_22;
// returns max floor(a + c(a)). Matches family_formula except at q = 4,
// where the scan gives 71156 (the piecewise formula is off by one there;
// the full SDP agrees with the scan).
ScanResult pair24_scan(long q);

// Verifies max over the x_4 grid of 1 + u(q,x_4) + x_4 <= (q^2-q+1)[7],
// where u bounds x_3 when a 1-dimensional element is present, and returns
// (q^2-q+1)[7]. Throws if the maximization certifiably exceeds the bound.
Int triple134_bound(long q);

// Case analysis for the extreme fibers: given the profile x_0..x_7 (only
// entries 0,1,6,7 are inspected) and a claimed code size, returns whether
// the profile is admissible. Sizes >= (q^2-q+1)[7] + 3 force
// x_0 = x_7 = 0 and x_1 + x_6 <= 1.
bool extreme_fiber_check(long q, const std::vector<long>& profile,
                         const Int& size);

// (q^2-q+1)[7] + 2(q^5+q^3+1), valid for all prime powers q >= 2.
Int combined_74_bound(long q);

// Interval-certifies positivity of every combination coefficient used by
// the pair/triple bounds at this q (the two t's of the 3-4 argument, the t
// of the 2-3 argument and its constant C, the two t's of the 2-4 argument,
// and the [3] - sqrt(q)[2] factor of the triple refinement).
bool verify_t_positivity(long q);

// Bound functions on an integer grid; must return a nonnegative value.
using BoundFn = std::function<long(long)>;

// Binary closed-form bound functions (q = 2): x_3 <= binary_f(x_4),
// x_3 <= binary_g(x_2), x_3 <= binary_h(x_5).
long binary_f(long x);
long binary_g(long x);
long binary_h(long x);

// Layered integer maximization bounding x_2+x_3+x_4+x_5 at q = 2:
//   max over x_2, x_5 in [0,41] of
//     x_2 + inner(min{g(x_2),h(x_5)}, min{g(x_5),h(x_2)}) + x_5,
//   inner(u3,u4) = max over x_4 in [0, min{u3,u4,151}] of
//     min{u3, f(x_4)} + x_4.
// With (binary_f, binary_g, binary_h) the value is 432.
long four_fiber_strategy(const BoundFn& f, const BoundFn& g, const BoundFn& h);

// Loads a bound function from a JSON array of [x, value] pairs; lookups
// outside the table throw.
BoundFn table_function(const std::string& json_path);

// Pointwise minimum of two bound functions.
BoundFn min_function(BoundFn a, BoundFn b);

// Report of all analytic checks for a list of q values (JSON / Markdown).
std::string analytic_report_json(const std::vector<long>& qs);
std::string analytic_report_markdown(const std::vector<long>& qs);

}  // namespace subsdp
