#include "subsdp/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace subsdp {

namespace {

int inv_mod(int a, int p) {
  for (int x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  throw std::logic_error("inv_mod: not invertible");
}

// In-place RREF; returns rank. Rows are length-n vectors over F_p.
int rref(int n, int p, std::vector<std::vector<uint8_t>>& rows) {
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][col] != 0) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    int inv = inv_mod(rows[rank][col], p);
    for (int c = col; c < n; ++c) rows[rank][c] = rows[rank][c] * inv % p;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      int f = rows[r][col];
      for (int c = col; c < n; ++c)
        rows[r][c] = (rows[r][c] + (p - f) * rows[rank][c]) % p;
    }
    ++rank;
  }
  rows.resize(rank);
  return rank;
}

}  // namespace

AmbientSpace::AmbientSpace(int n_, int p_) : n(n_), p(p_) {
  if (n < 0 || n > 7) throw std::domain_error("AmbientSpace: n out of range");
  if (p != 2 && p != 3 && p != 5)
    throw std::domain_error("AmbientSpace: oracle supports prime p in {2,3,5}");
}

SubspaceRep canonicalize(int n, int p, std::vector<std::vector<uint8_t>> rows) {
  rref(n, p, rows);
  return SubspaceRep{n, p, std::move(rows)};
}

int rank_mod_p(int p, std::vector<std::vector<uint8_t>> rows) {
  if (rows.empty()) return 0;
  return rref(static_cast<int>(rows[0].size()), p, rows);
}

std::vector<SubspaceRep> enumerate_subspaces(const AmbientSpace& space, int k) {
  const int n = space.n, p = space.p;
  if (k < 0 || k > n) throw std::domain_error("enumerate_subspaces: bad k");
  Int expected = gauss_binomial(n, k, QParams(std::max(space.p, 2)));
  if (expected > space.enumeration_cap)
    throw std::runtime_error("enumerate_subspaces: cap exceeded");

  std::vector<SubspaceRep> out;
  out.reserve(expected.get_ui());
  if (k == 0) {
    out.push_back(SubspaceRep{n, p, {}});
    return out;
  }

  // Pivot columns in increasing order; every non-pivot entry to the right of
  // its row's pivot is free. This enumerates each RREF matrix exactly once.
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    std::vector<std::pair<int, int>> free_pos;  // (row, col)
    for (int r = 0; r < k; ++r)
      for (int c = piv[r] + 1; c < n; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end())
          free_pos.emplace_back(r, c);

    std::vector<uint8_t> vals(free_pos.size(), 0);
    while (true) {
      std::vector<std::vector<uint8_t>> rows(k, std::vector<uint8_t>(n, 0));
      for (int r = 0; r < k; ++r) rows[r][piv[r]] = 1;
      for (size_t i = 0; i < free_pos.size(); ++i)
        rows[free_pos[i].first][free_pos[i].second] = vals[i];
      out.push_back(SubspaceRep{n, p, std::move(rows)});
      // odometer
      size_t i = 0;
      for (; i < vals.size(); ++i) {
        if (++vals[i] < p) break;
        vals[i] = 0;
      }
      if (i == vals.size()) break;
    }

    // next pivot combination
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  if (Int(static_cast<long>(out.size())) != expected)
    throw std::logic_error("enumerate_subspaces: count mismatch");
  return out;
}

int dim_sum(const SubspaceRep& U, const SubspaceRep& W) {
  if (U.n != W.n || U.p != W.p)
    throw std::domain_error("dim_sum: mismatched ambient spaces");
  std::vector<std::vector<uint8_t>> rows = U.rows;
  rows.insert(rows.end(), W.rows.begin(), W.rows.end());
  return rank_mod_p(U.p, std::move(rows));
}

int dim_intersection(const SubspaceRep& U, const SubspaceRep& W) {
  return U.dim() + W.dim() - dim_sum(U, W);
}

int subspace_distance(const SubspaceRep& U, const SubspaceRep& W) {
  return U.dim() + W.dim() - 2 * dim_intersection(U, W);
}

SubspaceRep orthogonal_complement(const SubspaceRep& U) {
  const int n = U.n, p = U.p, k = U.dim();
  // Kernel of the k x n basis matrix: standard RREF-based nullspace basis.
  std::vector<std::vector<uint8_t>> m = U.rows;
  rref(n, p, m);
  std::vector<int> piv;
  for (const auto& row : m)
    for (int c = 0; c < n; ++c)
      if (row[c] != 0) {
        piv.push_back(c);
        break;
      }
  (void)k;
  std::vector<std::vector<uint8_t>> basis;
  for (int c = 0; c < n; ++c) {
    if (std::find(piv.begin(), piv.end(), c) != piv.end()) continue;
    std::vector<uint8_t> v(n, 0);
    v[c] = 1;
    for (size_t r = 0; r < piv.size(); ++r)
      v[piv[r]] = static_cast<uint8_t>((p - m[r][c] % p) % p);
    basis.push_back(std::move(v));
  }
  return canonicalize(n, p, std::move(basis));
}

long oracle_triple_count(const AmbientSpace& space, const SubspaceRep& A,
                         const SubspaceRep& B, int d, int i, int j) {
  long count = 0;
  for (const auto& D : enumerate_subspaces(space, d)) {
    int ci = std::min(A.dim(), d) - dim_intersection(A, D);
    int cj = std::min(B.dim(), d) - dim_intersection(B, D);
    if (ci == i && cj == j) ++count;
  }
  return count;
}

}  // namespace subsdp
