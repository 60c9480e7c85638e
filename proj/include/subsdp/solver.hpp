#pragma once

// Primal-dual interior-point solver in arbitrary precision for the block
// problems produced by the model builder:
//   maximize g^T y  subject to  B(y) = C + sum_k y_k B_k >= 0 (PSD blocks).
// Deterministic: fixed starting point, fixed step policy, no randomness.

#include <string>
#include <vector>

#include "subsdp/hp.hpp"
#include "subsdp/sdp_model.hpp"

namespace subsdp {

struct SolverSettings {
  long precision = 256;    // bits
  long gap_tol_log2 = -83;  // ~1e-25 relative duality gap
  long feas_tol_log2 = -83;
  int max_iters = 200;
  bool verbose = false;
};

enum class SolveStatus { kOptimal, kNearOptimal, kInfeasible, kStalled };

std::string to_string(SolveStatus s);

struct Solution {
  SolveStatus status = SolveStatus::kStalled;
  Real primal_obj;       // g^T y of the returned feasible-side iterate
  Real dual_obj;         // <C,X>, an upper bound side by weak duality
  Real certified_upper;  // dual_obj inflated by residual and PSD slack terms
  Real gap;              // |dual - primal| relative
  Real primal_res, dual_res;
  int iterations = 0;
  std::vector<Real> y;  // scaled variables
  std::string note;
  std::string to_json() const;
};

Solution solve(const SdpProblem& p, const SolverSettings& s);

// Margin maximization: maximize t such that B(y) - t I >= 0 over the box.
// feasible is decided only when certified; margin bounds bracket the optimal
// margin t*.
struct FeasibilityResult {
  bool decided = false;
  bool feasible = false;
  Real margin_lower;  // achieved margin of a concrete y
  Real margin_upper;  // certified upper bound on the best margin
  Solution detail;
};

FeasibilityResult check_feasibility(const SdpProblem& p,
                                    const SolverSettings& s);

enum class BoundMode { kFast, kCertified };

struct BoundResult {
  bool has_bound = false;
  Int bound;
  Real primal, upper;
  bool near_integer = false;  // optimum within 1e-6 of an integer
  std::string status;
};

// Integer bound from a solved maximization problem. Fast mode floors
// primal + gap; certified mode floors the inflated upper bound and never
// rounds below an integer the enclosure still contains.
BoundResult extract_bound(const Solution& sol, const SdpProblem& p,
                          BoundMode mode);

// Parse an external solver log into a Solution (provenance in note).
// In certified mode the caller should reject logs with < 30 digits.
Solution solution_from_log(const ExternalLog& log);

}  // namespace subsdp
