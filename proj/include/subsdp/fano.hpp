#pragma once

// Coherent configuration of the planes of F_2^7 relative to a fixed plane pi:
// fibers by codim(pi cap tau), relations by the five intersection
// codimensions, intersection numbers by brute-force counting over the 11811
// planes. On top of it, a small SDP brackets the per-relation pair counts of
// a putative (7, 381, 4; 3)_2 code containing pi.

#include <string>
#include <vector>

#include "subsdp/sdp_model.hpp"
#include "subsdp/solver.hpp"

namespace subsdp {

struct PlaneRelation {
  int a, b;                 // codim(x cap pi), codim(y cap pi)
  int alpha, beta, gamma;   // codims of x cap y, x cap y cap pi, <x,y> cap pi
  auto operator<=>(const PlaneRelation&) const = default;
  PlaneRelation transposed() const { return {b, a, alpha, beta, gamma}; }
  std::string str() const;  // five digits "ab(alpha)(beta)(gamma)"
};

class PlaneConfig {
 public:
  int num_planes() const { return static_cast<int>(fiber_.size()); }
  const std::vector<Int>& fiber_sizes() const { return fiber_sizes_; }
  const std::vector<PlaneRelation>& relations() const { return relations_; }
  bool has(const PlaneRelation& r) const;
  int index(const PlaneRelation& r) const;  // throws if absent
  const Int& m(const PlaneRelation& r) const { return m_[index(r)]; }
  // p^k_{ij}: number of z with (x,z) in i and (z,y) in j, (x,y) in k
  long p(const PlaneRelation& i, const PlaneRelation& j,
         const PlaneRelation& k) const;
  long p(int i, int j, int k) const { return p_[(k * nrel() + i) * nrel() + j]; }
  int nrel() const { return static_cast<int>(relations_.size()); }

 private:
  friend PlaneConfig build_plane_configuration(int);
  std::vector<int> fiber_;
  std::vector<Int> fiber_sizes_;
  std::vector<PlaneRelation> relations_;
  std::vector<Int> m_;
  std::vector<long> p_;
};

// Enumerates the planes, classifies every ordered pair, and counts the
// intersection numbers by brute force, verifying constancy over up to
// `samples` base pairs per relation. Throws on any structural failure
// (nonconstant triple count, census mismatch with the counting formulas).
PlaneConfig build_plane_configuration(int samples = 3);

// sum_r (counts_r / m_r) A_r in the left-regular representation over the
// orthonormal basis A_r / sqrt(m_r); positive semidefiniteness of this
// nrel x nrel matrix is equivalent to that of the full matrix on planes.
// counts is indexed like relations().
Mat regular_matrix(const PlaneConfig& cfg, const std::vector<Rat>& counts);

struct PlaneBlocks {
  std::vector<int> dims;                 // one entry per diagonal block
  Mat basis;                             // orthogonal, columns block-grouped
  std::vector<std::vector<Mat>> blocks;  // blocks[b][r], relation order
  Real residual;                         // off-block mass over all relations
};

// Decomposes the regular representation into irreducible blocks using the
// eigenspaces of a random self-adjoint element of its commutant (the right
// multiplications). Deterministic; escalates precision if eigenvalue
// clusters stay ambiguous.
PlaneBlocks block_diagonalize(const PlaneConfig& cfg);

// Whether the per-family pair totals are imposed exactly (their values are
// forced for a code of this size) or only as upper caps.
enum class TotalsMode { kEquality, kCap };

struct PairBoundRow {
  PlaneRelation rel;
  Int lower, upper;
};

// Solver settings for the plane pair bounds. The optima are integers in the
// thousands, so a duality gap of 2^-48 decides every floor with a huge
// margin; pushing further only stalls against the numerical plateau.
inline SolverSettings plane_solver_settings() {
  SolverSettings st;
  st.gap_tol_log2 = -48;
  st.feas_tol_log2 = -48;
  return st;
}

// Certified bracket side for the number of ordered codeword pairs in the
// given relation over all (7,381,4;3)_2 codes containing pi, subject to:
// regular-representation PSD, fixed counts (self pairs and pairs with pi),
// per-family totals, nonnegativity and relation-size caps.
Int plane_pair_bound(const PlaneConfig& cfg, const PlaneRelation& rel,
                     bool maximize, TotalsMode mode = TotalsMode::kEquality,
                     const SolverSettings& st = plane_solver_settings());

// Brackets for every relation that can carry pairs of distinct non-pi
// codewords, in relation order.
std::vector<PairBoundRow> pair_bound_table(
    const PlaneConfig& cfg, TotalsMode mode = TotalsMode::kEquality,
    const SolverSettings& st = plane_solver_settings());

std::string pair_bound_markdown(const std::vector<PairBoundRow>& rows);
std::string pair_bound_csv(const std::vector<PairBoundRow>& rows);

}  // namespace subsdp
