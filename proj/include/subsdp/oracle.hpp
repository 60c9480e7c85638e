#pragma once

// Brute-force enumeration of subspaces of F_p^n for small prime p.
// Serves as the independent ground truth for every counting formula.

#include <cstdint>
#include <vector>

#include "subsdp/qcalc.hpp"

namespace subsdp {

// Basis in reduced row echelon form, packed row-major. Canonical: equal
// subspaces have identical representations.
struct SubspaceRep {
  int n = 0;
  int p = 2;
  std::vector<std::vector<uint8_t>> rows;  // RREF basis, rows.size() == dim

  int dim() const { return static_cast<int>(rows.size()); }
  bool operator==(const SubspaceRep& o) const {
    return n == o.n && p == o.p && rows == o.rows;
  }
};

struct AmbientSpace {
  int n;
  int p;                                // prime in {2,3,5}
  long enumeration_cap = 2'000'000;     // max number of subspaces per call

  AmbientSpace(int n_, int p_);
};

// Reduce a spanning set to canonical RREF form.
SubspaceRep canonicalize(int n, int p, std::vector<std::vector<uint8_t>> rows);

// Rank of a matrix over F_p (destructive gaussian elimination on a copy).
int rank_mod_p(int p, std::vector<std::vector<uint8_t>> rows);

// All k-subspaces of F_p^n in canonical form. Throws if the count exceeds the
// ambient cap.
std::vector<SubspaceRep> enumerate_subspaces(const AmbientSpace& space, int k);

int dim_intersection(const SubspaceRep& U, const SubspaceRep& W);
int dim_sum(const SubspaceRep& U, const SubspaceRep& W);
int subspace_distance(const SubspaceRep& U, const SubspaceRep& W);

// Orthogonal complement with respect to the standard bilinear form.
SubspaceRep orthogonal_complement(const SubspaceRep& U);

// Number of d-subspaces meeting A in codimension i and B in codimension j,
// counted by scanning the full list of d-subspaces of the ambient space.
long oracle_triple_count(const AmbientSpace& space, const SubspaceRep& A,
                         const SubspaceRep& B, int d, int i, int j);

}  // namespace subsdp
