#include "subsdp/fano.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "subsdp/qcalc.hpp"

namespace subsdp {

namespace {

using U128 = unsigned __int128;

int popcount128(U128 v) {
  return std::popcount(static_cast<uint64_t>(v)) +
         std::popcount(static_cast<uint64_t>(v >> 64));
}

// dimension of a binary subspace from its nonzero point count 2^d - 1
int dim_from_points(int pts) {
  return std::bit_width(static_cast<unsigned>(pts) + 1u) - 1;
}

struct Plane {
  U128 mask = 0;                      // bit v set iff vector v in the plane
  std::array<int, 3> basis{};
  std::array<int, 7> joinpiv{};       // pivots of <plane, pi> by leading bit
  int fiber = 0;                      // codim(plane cap pi)
};

U128 span_mask(int v1, int v2, int v3) {
  U128 m = 0;
  for (int s = 1; s < 8; ++s) {
    int v = ((s & 1) ? v1 : 0) ^ ((s & 2) ? v2 : 0) ^ ((s & 4) ? v3 : 0);
    m |= static_cast<U128>(1) << v;
  }
  return m;
}

void insert_pivot(std::array<int, 7>& piv, int v, int& rank) {
  while (v) {
    int b = std::bit_width(static_cast<unsigned>(v)) - 1;
    if (piv[b]) {
      v ^= piv[b];
    } else {
      piv[b] = v;
      ++rank;
      return;
    }
  }
}

constexpr int kPiBasis[3] = {1, 2, 4};

int rel_key(int a, int b, int alpha, int beta, int gamma) {
  return (((a * 4 + b) * 4 + alpha) * 4 + beta) * 4 + gamma;
}

// relation key of the ordered pair (x, y)
int classify(const Plane& x, const Plane& y, U128 pimask) {
  int alpha = 3 - dim_from_points(popcount128(x.mask & y.mask));
  int beta = 3 - dim_from_points(popcount128(x.mask & y.mask & pimask));
  std::array<int, 7> piv = x.joinpiv;
  int r = 3 + x.fiber;  // dim <x, pi>
  for (int v : y.basis) insert_pivot(piv, v, r);
  int gamma = r - 3 - alpha;  // r = dim<x,y,pi>, dim<x,y> = 3 + alpha
  return rel_key(x.fiber, y.fiber, alpha, beta, gamma);
}

std::vector<Plane> enumerate_planes(U128 pimask) {
  std::set<U128> masks;
  for (int v1 = 1; v1 < 128; ++v1)
    for (int v2 = v1 + 1; v2 < 128; ++v2)
      for (int v3 = v2 + 1; v3 < 128; ++v3) {
        if (v3 == (v1 ^ v2)) continue;
        masks.insert(span_mask(v1, v2, v3));
      }
  std::vector<Plane> planes;
  planes.reserve(masks.size());
  for (U128 m : masks) {
    Plane pl;
    pl.mask = m;
    int points[7], np = 0;
    for (int v = 1; v < 128; ++v)
      if ((m >> v) & 1) points[np++] = v;
    pl.basis = {points[0], points[1], 0};
    for (int t = 2; t < 7; ++t)
      if (points[t] != (points[0] ^ points[1])) {
        pl.basis[2] = points[t];
        break;
      }
    pl.fiber = 3 - dim_from_points(popcount128(m & pimask));
    int rank = 0;
    for (int v : kPiBasis) insert_pivot(pl.joinpiv, v, rank);
    for (int v : pl.basis) insert_pivot(pl.joinpiv, v, rank);
    if (rank != 3 + pl.fiber) throw std::logic_error("plane rank mismatch");
    planes.push_back(pl);
  }
  return planes;
}

}  // namespace

std::string PlaneRelation::str() const {
  std::string s;
  for (int v : {a, b, alpha, beta, gamma}) s += static_cast<char>('0' + v);
  return s;
}

bool PlaneConfig::has(const PlaneRelation& r) const {
  return std::binary_search(relations_.begin(), relations_.end(), r);
}

int PlaneConfig::index(const PlaneRelation& r) const {
  auto it = std::lower_bound(relations_.begin(), relations_.end(), r);
  if (it == relations_.end() || *it != r)
    throw std::out_of_range("no such plane relation: " + r.str());
  return static_cast<int>(it - relations_.begin());
}

long PlaneConfig::p(const PlaneRelation& i, const PlaneRelation& j,
                    const PlaneRelation& k) const {
  return p(index(i), index(j), index(k));
}

PlaneConfig build_plane_configuration(int samples) {
  const U128 pimask = span_mask(1, 2, 4);
  std::vector<Plane> planes = enumerate_planes(pimask);
  const int N = static_cast<int>(planes.size());
  QParams q2(2);
  if (N != gauss_binomial(7, 3, q2))
    throw std::runtime_error("plane enumeration size mismatch");

  PlaneConfig cfg;
  cfg.fiber_.resize(N);
  cfg.fiber_sizes_.assign(4, 0);
  for (int i = 0; i < N; ++i) {
    cfg.fiber_[i] = planes[i].fiber;
    cfg.fiber_sizes_[planes[i].fiber] += 1;
  }
  for (int a = 0; a <= 3; ++a)
    if (cfg.fiber_sizes_[a] != count_meeting(3, 3 - a, 3, 7, q2))
      throw std::runtime_error("fiber size disagrees with counting formula");

  // relation census and sample base pairs from a streamed pair scan
  std::vector<long> mc(1024, 0);
  std::vector<std::vector<std::pair<int, int>>> smp(1024);
  auto note = [&](int key, int i, int j) {
    ++mc[key];
    if (static_cast<int>(smp[key].size()) < samples) smp[key].push_back({i, j});
  };
  for (int i = 0; i < N; ++i) {
    int f = planes[i].fiber;
    note(rel_key(f, f, 0, f, f), i, i);
    for (int j = i + 1; j < N; ++j) {
      int key = classify(planes[i], planes[j], pimask);
      note(key, i, j);
      int a = (key >> 8) & 3, b = (key >> 6) & 3;
      note(key - (a << 8) - (b << 6) + (b << 8) + (a << 6), j, i);
    }
  }
  long total = 0;
  for (int key = 0; key < 1024; ++key) {
    if (mc[key] == 0) continue;
    total += mc[key];
    cfg.relations_.push_back({(key >> 8) & 3, (key >> 6) & 3, (key >> 4) & 3,
                              (key >> 2) & 3, key & 3});
    cfg.m_.push_back(mc[key]);
  }
  if (total != static_cast<long>(N) * N)
    throw std::runtime_error("pair census does not cover all pairs");
  for (const PlaneRelation& r : cfg.relations_)
    if (!cfg.has(r.transposed()))
      throw std::runtime_error("relation census not transpose-closed");

  // brute-force intersection numbers, constant over base pairs
  const int R = cfg.nrel();
  cfg.p_.assign(static_cast<size_t>(R) * R * R, 0);
  std::vector<int> keyidx(1024, -1);
  for (int r = 0; r < R; ++r) {
    const PlaneRelation& rel = cfg.relations_[r];
    keyidx[rel_key(rel.a, rel.b, rel.alpha, rel.beta, rel.gamma)] = r;
  }
  std::vector<long> counts(static_cast<size_t>(R) * R);
  for (int k = 0; k < R; ++k) {
    const PlaneRelation& rel = cfg.relations_[k];
    int key = rel_key(rel.a, rel.b, rel.alpha, rel.beta, rel.gamma);
    bool first = true;
    for (auto [x, y] : smp[key]) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int z = 0; z < N; ++z) {
        int ri = keyidx[classify(planes[x], planes[z], pimask)];
        int rj = keyidx[classify(planes[z], planes[y], pimask)];
        ++counts[static_cast<size_t>(ri) * R + rj];
      }
      if (first) {
        std::copy(counts.begin(), counts.end(),
                  cfg.p_.begin() + static_cast<size_t>(k) * R * R);
        first = false;
      } else if (!std::equal(counts.begin(), counts.end(),
                             cfg.p_.begin() + static_cast<size_t>(k) * R * R)) {
        throw std::runtime_error(
            "intersection numbers not constant over relation " + rel.str());
      }
    }
  }
  return cfg;
}

Mat regular_matrix(const PlaneConfig& cfg, const std::vector<Rat>& counts) {
  const int n = cfg.nrel();
  if (static_cast<int>(counts.size()) != n)
    throw std::invalid_argument("counts must match the relation list");
  std::vector<Real> rt(n);
  for (int k = 0; k < n; ++k) rt[k] = sqrt(Real(cfg.m(cfg.relations()[k])));
  Mat M = Mat::zero(n, n);
  for (int r = 0; r < n; ++r) {
    if (counts[r] == 0) continue;
    Real c = Real(counts[r]) / Real(cfg.m(cfg.relations()[r]));
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        long pv = cfg.p(r, j, k);
        if (pv) M(k, j) += c * Real(pv) * rt[k] / rt[j];
      }
  }
  return M;
}

PlaneBlocks block_diagonalize(const PlaneConfig& cfg) {
  const int n = cfg.nrel();
  for (long prec : {256L, 512L, 1024L}) {
    PrecGuard guard(prec);
    std::vector<Real> rt(n);
    for (int k = 0; k < n; ++k) rt[k] = sqrt(Real(cfg.m(cfg.relations()[k])));

    std::vector<Mat> L(n, Mat::zero(n, n));
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
          long pv = cfg.p(r, j, k);
          if (pv) L[r](k, j) = Real(pv) * rt[k] / (rt[r] * rt[j]);
        }

    // random self-adjoint element of the commutant: right multiplications
    // commute with the left-regular representation
    std::mt19937 rng(20240717u);
    Mat S = Mat::zero(n, n);
    for (int r = 0; r < n; ++r) {
      Real c = Real(static_cast<long>(rng() % 1000003)) / Real(1000003);
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
          long pv = cfg.p(j, r, k);
          if (!pv) continue;
          Real v = c * Real(pv) * rt[k] / (rt[j] * rt[r]);
          S(k, j) += v;
          S(j, k) += v;
        }
    }
    std::vector<Real> ev;
    Mat V;
    jacobi_eigensystem(S, ev, V);

    PlaneBlocks out;
    Real tol = two_pow(-static_cast<long>(prec) / 2) * (Real(1) + abs(ev[0]));
    int start = 0;
    for (int i = 1; i <= n; ++i)
      if (i == n || abs(ev[i] - ev[i - 1]) > tol) {
        out.dims.push_back(i - start);
        start = i;
      }
    out.basis = V;
    out.residual = Real(0);
    Mat Vt = transpose(V);
    out.blocks.assign(out.dims.size(), {});
    bool ok = true;
    for (int r = 0; r < n && ok; ++r) {
      Mat B = Vt * (L[r] * V);
      int off = 0;
      for (size_t s = 0; s < out.dims.size(); ++s) {
        int d = out.dims[s];
        Mat blk(d, d);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) blk(i, j) = B(off + i, off + j);
        out.blocks[s].push_back(std::move(blk));
        off += d;
      }
      // off-block mass
      off = 0;
      for (size_t s = 0; s < out.dims.size(); ++s) {
        for (int i = 0; i < out.dims[s]; ++i)
          for (int j = 0; j < n; ++j) {
            if (j >= off && j < off + out.dims[s]) continue;
            out.residual = max(out.residual, abs(B(off + i, j)));
          }
        off += out.dims[s];
      }
      if (out.residual > two_pow(-static_cast<long>(prec) / 4)) ok = false;
    }
    if (ok) return out;
  }
  throw std::runtime_error(
      "block decomposition residual stayed large after escalation");
}

namespace {

Rat signed_square(const Rat& v) { return v < 0 ? Rat(-(v * v)) : Rat(v * v); }

struct AffineModel {
  std::vector<PlaneRelation> rels;     // relations carrying free codeword pairs
  std::vector<Rat> n0;                 // n_rel = n0 + coef * theta
  std::vector<std::vector<Rat>> coef;
  std::vector<Rat> var_ub;
  // extra rows c0 + c . theta >= 0 (pivot bounds, cap-mode family caps)
  std::vector<std::pair<Rat, std::vector<Rat>>> rows;
};

const std::vector<std::vector<PlaneRelation>> kFamilies = {
    {{2, 2, 2, 2, 0}, {2, 2, 2, 2, 1}, {2, 2, 2, 2, 2}, {2, 2, 2, 3, 0},
     {2, 2, 2, 3, 1}},                    // within fiber 2, alpha = 2
    {{2, 2, 3, 3, 0}, {2, 2, 3, 3, 1}},   // within fiber 2, alpha = 3
    {{2, 3, 2, 3, 1}, {2, 3, 2, 3, 2}},   // fiber 2 to 3, alpha = 2
    {{2, 3, 3, 3, 0}, {2, 3, 3, 3, 1}},   // fiber 2 to 3, alpha = 3
    {{3, 3, 2, 3, 1}, {3, 3, 2, 3, 2}},   // within fiber 3, alpha = 2
    {{3, 3, 3, 3, 0}, {3, 3, 3, 3, 1}},   // within fiber 3, alpha = 3
};
const long kFamilyTotal[6] = {7700, 11760, 11760, 21840, 21840, 35520};
// ordered pair totals per fiber pair: 140*139, 140*240, 240*239
const long kFiberPairTotal[3] = {19460, 33600, 57360};

// pairs fixed by the code hypothesis: pi with itself, codewords with pi,
// codewords with themselves
const std::vector<std::pair<PlaneRelation, long>> kFixed = {
    {{0, 0, 0, 0, 0}, 1},   {{0, 2, 2, 2, 0}, 140}, {{2, 0, 2, 2, 0}, 140},
    {{0, 3, 3, 3, 0}, 240}, {{3, 0, 3, 3, 0}, 240}, {{2, 2, 0, 2, 2}, 140},
    {{3, 3, 0, 3, 3}, 240},
};

AffineModel make_model(const PlaneConfig& cfg, TotalsMode mode) {
  AffineModel md;
  for (const auto& fam : kFamilies)
    for (const auto& r : fam) md.rels.push_back(r);
  const int nr = static_cast<int>(md.rels.size());
  auto rel_pos = [&](const PlaneRelation& r) {
    for (int i = 0; i < nr; ++i)
      if (md.rels[i] == r) return i;
    throw std::logic_error("relation not in model");
  };

  // equality groups: one pivot variable is eliminated per group
  std::vector<std::pair<std::vector<PlaneRelation>, long>> groups;
  if (mode == TotalsMode::kEquality) {
    for (int f = 0; f < 6; ++f) groups.push_back({kFamilies[f], kFamilyTotal[f]});
  } else {
    for (int fp = 0; fp < 3; ++fp) {
      std::vector<PlaneRelation> g = kFamilies[2 * fp];
      g.insert(g.end(), kFamilies[2 * fp + 1].begin(),
               kFamilies[2 * fp + 1].end());
      groups.push_back({g, kFiberPairTotal[fp]});
    }
  }

  md.n0.assign(nr, Rat(0));
  md.coef.assign(nr, {});
  int nv = 0;
  for (const auto& [members, T] : groups) nv += static_cast<int>(members.size()) - 1;
  for (auto& c : md.coef) c.assign(nv, Rat(0));
  int t = 0;
  for (const auto& [members, T] : groups) {
    int pivot = rel_pos(members.back());
    md.n0[pivot] = T;
    for (size_t i = 0; i + 1 < members.size(); ++i) {
      int pos = rel_pos(members[i]);
      md.coef[pos][t] = 1;
      md.coef[pivot][t] = -1;
      Rat ub(std::min(cfg.m(members[i]).get_si(), T));
      md.var_ub.push_back(ub);
      ++t;
    }
    // pivot stays within [0, min(m, T)]
    std::vector<Rat> cneg(nv, Rat(0)), cpos(nv, Rat(0));
    for (int v = 0; v < nv; ++v) {
      cneg[v] = md.coef[pivot][v];
      cpos[v] = -md.coef[pivot][v];
    }
    Rat cap(std::min(cfg.m(members.back()).get_si(), T));
    md.rows.push_back({Rat(T), cneg});         // n_pivot >= 0
    md.rows.push_back({cap - T, cpos});        // n_pivot <= cap
  }
  if (mode == TotalsMode::kCap) {
    // family sums stay below their known totals
    for (int f = 0; f < 6; ++f) {
      Rat c0(kFamilyTotal[f]);
      std::vector<Rat> cs(nv, Rat(0));
      for (const auto& r : kFamilies[f]) {
        int pos = rel_pos(r);
        c0 -= md.n0[pos];
        for (int v = 0; v < nv; ++v) cs[v] -= md.coef[pos][v];
      }
      md.rows.push_back({c0, cs});
    }
  }
  return md;
}

SdpProblem assemble_pair_sdp(const PlaneConfig& cfg, const AffineModel& md,
                             const PlaneRelation& target, bool maximize) {
  const int nv = static_cast<int>(md.var_ub.size());
  const int nr = static_cast<int>(md.rels.size());
  const int n = cfg.nrel();

  SdpProblem p;
  p.q = 2;
  p.n = 7;
  p.d = 4;
  p.K = {3};
  for (int t = 0; t < nv; ++t) {
    p.vars.push_back({t, t, 0, md.var_ub[t], Rat(0)});
    p.var_index[{t, t, 0}] = t;
  }
  int tpos = -1;
  for (int i = 0; i < nr; ++i)
    if (md.rels[i] == target) tpos = i;
  if (tpos < 0) throw std::invalid_argument("relation carries no free pairs: " +
                                            target.str());
  Rat sgn = maximize ? 1 : -1;
  p.obj_offset = sgn * md.n0[tpos];
  for (int t = 0; t < nv; ++t)
    p.vars[t].obj = sgn * md.coef[tpos][t] * md.var_ub[t];

  // rational parts of the regular-representation matrix: constant and one
  // table per variable; full entry = table[k][j] * sqrt(m_k / m_j)
  std::vector<std::vector<Rat>> tabs(nv + 1,
                                     std::vector<Rat>(static_cast<size_t>(n) * n, Rat(0)));
  auto add_rel = [&](const PlaneRelation& rel, int which, const Rat& amount) {
    if (amount == 0) return;
    int r = cfg.index(rel);
    Rat c = amount / Rat(cfg.m(rel));
    auto& tab = tabs[which];
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        long pv = cfg.p(r, j, k);
        if (pv) tab[static_cast<size_t>(k) * n + j] += c * pv;
      }
  };
  for (const auto& [rel, cnt] : kFixed) add_rel(rel, 0, Rat(cnt));
  for (int i = 0; i < nr; ++i) {
    const PlaneRelation rel = md.rels[i];
    const PlaneRelation rt = rel.transposed();
    add_rel(rel, 0, md.n0[i]);
    if (rt != rel) add_rel(rt, 0, md.n0[i]);
    for (int t = 0; t < nv; ++t) {
      add_rel(rel, t + 1, md.coef[i][t]);
      if (rt != rel) add_rel(rt, t + 1, md.coef[i][t]);
    }
  }
  // symmetry of the represented element (exact rational identity)
  for (const auto& tab : tabs)
    for (int k = 0; k < n; ++k)
      for (int j = k + 1; j < n; ++j)
        if (tab[static_cast<size_t>(k) * n + j] * cfg.m(cfg.relations()[k]) !=
            tab[static_cast<size_t>(j) * n + k] * cfg.m(cfg.relations()[j]))
          throw std::logic_error("regular representation not self-adjoint");

  SdpBlock reg;
  reg.name = "reg";
  reg.size = n;
  for (int k = 0; k < n; ++k)
    for (int j = k; j < n; ++j) {
      Rat mk_over_mj(cfg.m(cfg.relations()[k]), cfg.m(cfg.relations()[j]));
      mk_over_mj.canonicalize();
      const Rat& c0 = tabs[0][static_cast<size_t>(k) * n + j];
      if (c0 != 0) reg.entries.push_back({-1, k, j, signed_square(c0) * mk_over_mj});
      for (int t = 0; t < nv; ++t) {
        Rat c = tabs[t + 1][static_cast<size_t>(k) * n + j] * md.var_ub[t];
        if (c != 0) reg.entries.push_back({t, k, j, signed_square(c) * mk_over_mj});
      }
    }
  p.blocks.push_back(std::move(reg));

  if (!md.rows.empty()) {
    SdpBlock cap;
    cap.name = "cap";
    cap.size = static_cast<int>(md.rows.size());
    cap.diag = true;
    for (int i = 0; i < cap.size; ++i) {
      const auto& [c0, cs] = md.rows[i];
      if (c0 != 0) cap.entries.push_back({-1, i, i, signed_square(c0)});
      for (int t = 0; t < nv; ++t)
        if (cs[t] != 0)
          cap.entries.push_back({t, i, i, signed_square(cs[t] * md.var_ub[t])});
    }
    p.blocks.push_back(std::move(cap));
  }

  SdpBlock box;
  box.name = "box";
  box.size = 2 * nv;
  box.diag = true;
  for (int t = 0; t < nv; ++t) {
    box.entries.push_back({t, 2 * t, 2 * t, Rat(1)});
    box.entries.push_back({-1, 2 * t + 1, 2 * t + 1, Rat(1)});
    box.entries.push_back({t, 2 * t + 1, 2 * t + 1, Rat(-1)});
  }
  p.blocks.push_back(std::move(box));
  return p;
}

}  // namespace

Int plane_pair_bound(const PlaneConfig& cfg, const PlaneRelation& rel,
                     bool maximize, TotalsMode mode,
                     const SolverSettings& st) {
  AffineModel md = make_model(cfg, mode);
  SdpProblem p = assemble_pair_sdp(cfg, md, rel, maximize);
  Solution s = solve(p, st);
  if (s.status == SolveStatus::kInfeasible)
    throw std::runtime_error("pair-count model infeasible for " + rel.str());
  BoundResult b = extract_bound(s, p, BoundMode::kCertified);
  if (!b.has_bound)
    throw std::runtime_error("no certified bound for " + rel.str());
  return maximize ? b.bound : Int(-b.bound);
}

std::vector<PairBoundRow> pair_bound_table(const PlaneConfig& cfg,
                                           TotalsMode mode,
                                           const SolverSettings& st) {
  std::vector<PairBoundRow> rows;
  for (const auto& fam : kFamilies)
    for (const auto& rel : fam)
      rows.push_back({rel, plane_pair_bound(cfg, rel, false, mode, st),
                      plane_pair_bound(cfg, rel, true, mode, st)});
  return rows;
}

std::string pair_bound_markdown(const std::vector<PairBoundRow>& rows) {
  std::string out = "| relation | lower | upper |\n|---|---|---|\n";
  for (const auto& r : rows)
    out += "| " + r.rel.str() + " | " + r.lower.get_str() + " | " +
           r.upper.get_str() + " |\n";
  return out;
}

std::string pair_bound_csv(const std::vector<PairBoundRow>& rows) {
  std::string out = "relation,lower,upper\n";
  for (const auto& r : rows)
    out += r.rel.str() + "," + r.lower.get_str() + "," + r.upper.get_str() +
           "\n";
  return out;
}

}  // namespace subsdp
