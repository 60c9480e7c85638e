#pragma once

// Irreducible blocks of the subspace coherent configuration. Every block
// coefficient delta^s_{ijl} turns out to be a signed square root of a
// rational number, so the table is computed exactly; square roots are taken
// only when a floating value is requested.

#include <map>
#include <string>
#include <vector>

#include "subsdp/coherent.hpp"
#include "subsdp/hp.hpp"

namespace subsdp {

class IrrepTable {
 public:
  int n = 0;
  long q = 2;
  std::vector<int> fibers;
  std::vector<Int> multiplicity;  // f_s for s = 0..num_reps()-1

  // Signed squares: delta = sgn(x) * sqrt(|x|). Keyed by relation with
  // i <= j; the table is symmetric in the fiber pair.
  std::vector<std::map<RelationId, Rat>> delta_sq;

  int num_reps() const { return static_cast<int>(multiplicity.size()); }
  // Largest s present in fiber a.
  int fiber_rep_count(int a) const { return std::min(a, n - a) + 1; }
  bool has(int s, int i, int j) const;
  // Signed square of delta^s_{ijl}; symmetric lookup.
  const Rat& dsq(int s, RelationId r) const;
  // delta^s_{ijl} at the current default precision.
  Real delta(int s, RelationId r) const;

  std::string dump_json() const;
};

// Exact computation: per-fiber eigenvalue sequences from the three-term
// recurrence of the intersection matrices, cross-fiber coefficients from the
// entry functionals of E^s_{ii} A_{ijk}. Throws if an internal exact
// consistency check fails.
IrrepTable compute_irreps(const CoherentConfig& cfg);

struct IrrepCheck {
  Real max_product_residual;        // E^s_{ij} E^t_{jl} = [s=t] E^s_{il}
  Real max_orthogonality_residual;  // sum_s f_s d^s_k d^s_m = [k=m] m_k
};

// Numerical verification at the current default precision.
IrrepCheck verify_irrep_identities(const CoherentConfig& cfg,
                                   const IrrepTable& t);

struct ReferenceCheck {
  bool exact_match = false;  // signed squares agree as rationals
  Real max_residual;         // floating residual, relative
  std::vector<std::string> mismatches;
};

// Compare the computed table for n = 7 against the closed-form reference
// expressions (valencies, multiplicities and all block coefficients).
ReferenceCheck compare_reference_n7(long q);

}  // namespace subsdp
