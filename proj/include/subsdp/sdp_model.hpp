#pragma once

// Assembly of the semidefinite program bounding the size of subspace codes:
// one PSD block per irreducible representation, 2x2 Schur blocks per fiber
// and fiber pair, a moment block [[1,x^T],[x,Y]] with Y_ij = sum_l b_{ijl},
// pair cap rows sum_l b_{ijl} <= U_j b_{ii0}, and box bounds from a
// constant-dimension-code bound table.
// All coefficients are of the form +-sqrt(rational) and are stored exactly as
// signed squares; floating values are materialized at solve or export time.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "subsdp/coherent.hpp"
#include "subsdp/hp.hpp"
#include "subsdp/irreps.hpp"

namespace subsdp {

// Upper bounds on A_q(n,d;k). User entries are loaded from a JSON array of
// records {"q":..,"n":..,"d":..,"k":..,"bound":..,"source-note":".."}; the d
// key is always even.
class DimensionBoundTable {
 public:
  void set(long q, int n, int d, int k, Int bound, std::string note);
  std::optional<Int> lookup(long q, int n, int d, int k) const;
  static DimensionBoundTable load_json(const std::string& path);
  std::string dump_json() const;

 private:
  std::map<std::tuple<long, int, int, int>, std::pair<Int, std::string>> tab_;
};

// Best known upper bound on A_q(n,d;k) for even d: minimum of a user entry,
// the packing bound (q^n-q)/(q^k-1)-q+1 when d=2k and k | n-1, the counting
// bound floor([n t]/[k t]) with t = k-d/2+1, and the trivial [n k]. Uses
// bound(k) = bound(n-k) by orthogonality.
Int dimension_bound(const QParams& q, int n, int d, int k,
                    const DimensionBoundTable* user = nullptr);

struct SdpVar {
  int i, j, l;  // i <= j
  Rat ub;       // box upper bound on b_{ijl}; variables are scaled to [0,1]
  Rat obj;      // objective coefficient on the scaled variable
};

// One coefficient of a block: value = sgn(coef_sq)*sqrt(|coef_sq|) at matrix
// position (r,c), r <= c, multiplied by y_var; var = -1 marks a constant
// contribution. Entries with equal keys accumulate.
struct SdpEntry {
  int var;
  int r, c;
  Rat coef_sq;
};

struct SdpBlock {
  std::string name;
  int size = 0;
  bool diag = false;
  std::vector<SdpEntry> entries;  // constraint: sum of entries >= 0 (PSD)
};

struct SdpProblem {
  long q = 2;
  int n = 0, d = 0;
  std::vector<int> K;
  std::vector<SdpVar> vars;
  std::vector<SdpBlock> blocks;
  Rat obj_offset;  // objective contribution of pinned variables
  std::map<std::tuple<int, int, int>, int> var_index;

  int num_vars() const { return static_cast<int>(vars.size()); }
  // Objective value in original units given scaled variables.
  Real objective(const std::vector<Real>& y) const;
};

// True iff b_{ijl} is forced to zero by the minimum distance d; the defining
// condition l < min{i,j} + (d-i-j)/2 for (i != j or l >= 1) is equivalent to
// |i-j| + 2l < d because the subspace distance of such a pair is |i-j| + 2l.
bool distance_zeroed(int i, int j, int l, int d);

SdpProblem build_sdp(const CoherentConfig& cfg, const IrrepTable& tab, int d,
                     const std::vector<int>& K,
                     const DimensionBoundTable* user_bounds = nullptr);

// Equality-pin variables to values in original b units; pinned variables are
// substituted out. Throws if an assignment violates its box bound.
SdpProblem fix_variables(
    const SdpProblem& p,
    const std::map<std::tuple<int, int, int>, Rat>& assignments);

// SDPA sparse ".dat-s" export: header with variable count, block count,
// block sizes (negative = diagonal), objective row, then one line
// "var block row col value" per nonzero with 1-based indices and row <= col.
// The file encodes min -obj, so the printed SDPA optimum is the negative of
// the bound.
void export_sdpa(const SdpProblem& p, const std::string& path);

struct ExternalLog {
  std::string status;       // e.g. pdOPT, pdFEAS, pdINF
  std::string primal_text;  // objective strings as printed
  std::string dual_text;
  int digits = 0;  // significant digits detected
};

// Reads an external solver log (objValPrimal / objValDual / phase.value
// lines). Throws on malformed input.
ExternalLog read_solver_log(const std::string& path);

}  // namespace subsdp
