#include "subsdp/irreps.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace subsdp {

namespace {

// Eigendata of one fiber: the schemes are metric with respect to the
// codimension class, so the eigenvalue sequences P_s(l) follow a three-term
// recurrence with integer eigenvalues theta_s and are exact rationals.
struct FiberEigen {
  std::vector<Int> valency;       // k_l
  std::vector<std::vector<Rat>> P;  // P[s][l], P[s][0] = 1
};

FiberEigen fiber_eigensystem(const CoherentConfig& cfg, int a) {
  const int n = cfg.n();
  const long q = cfg.q().q;
  const int C = std::min(a, n - a);
  FiberEigen fe;
  for (int l = 0; l <= C; ++l) fe.valency.push_back(cfg.valency(a, l));
  if (C == 0) {
    fe.P = {{Rat(1)}};
    return fe;
  }
  const int ap = C;  // scheme parameter, symmetric in a <-> n-a
  // p1(k, j) = p^k_{1j}; the eigenvalue sequences satisfy
  //   sum_k p^k_{1j} P_s(k) = theta_s P_s(j)
  auto p1 = [&](int k, int j) {
    return cfg.p(RelationId{a, a, 1}, RelationId{a, a, j}, RelationId{a, a, k});
  };
  for (int s = 0; s <= C; ++s) {
    Int theta = q_pow(q, s + 1) * gauss_number(ap - s, cfg.q()) *
                    gauss_number(n - ap - s, cfg.q()) -
                gauss_number(s, cfg.q());
    std::vector<Rat> P(C + 1);
    P[0] = 1;
    P[1] = Rat(theta);
    for (int j = 1; j < C; ++j) {
      Rat acc = Rat(theta) * P[j] - Rat(p1(j, j)) * P[j] -
                Rat(p1(j - 1, j)) * P[j - 1];
      Int up = p1(j + 1, j);
      if (up == 0) throw std::logic_error("fiber scheme is not metric");
      P[j + 1] = acc / Rat(up);
    }
    // closing row of the recurrence certifies theta as an eigenvalue
    Rat close = Rat(p1(C - 1, C)) * P[C - 1] + Rat(p1(C, C)) * P[C];
    if (close != Rat(theta) * P[C])
      throw std::logic_error("eigenvalue sequence failed the closing row");
    fe.P.push_back(std::move(P));
  }
  return fe;
}

Rat signed_square(const Rat& x) {
  Rat s = x * x;
  return sgn(x) < 0 ? Rat(-s) : s;
}

}  // namespace

bool IrrepTable::has(int s, int i, int j) const {
  if (s < 0 || s >= num_reps()) return false;
  RelationId r{std::min(i, j), std::max(i, j), 0};
  return delta_sq[s].count(r) > 0;
}

const Rat& IrrepTable::dsq(int s, RelationId r) const {
  if (r.a > r.b) std::swap(r.a, r.b);
  return delta_sq.at(s).at(r);
}

Real IrrepTable::delta(int s, RelationId r) const {
  const Rat& x = dsq(s, r);
  Rat ax = ::abs(x);
  Real v = sqrt(Real(ax));
  return sgn(x) < 0 ? -v : v;
}

std::string IrrepTable::dump_json() const {
  std::ostringstream os;
  os << "{\n  \"n\": " << n << ",\n  \"q\": " << q
     << ",\n  \"multiplicities\": [";
  for (int s = 0; s < num_reps(); ++s)
    os << (s ? ", " : "") << multiplicity[s].get_str();
  os << "],\n  \"blocks\": [\n";
  bool first = true;
  for (int s = 0; s < num_reps(); ++s)
    for (const auto& [r, x] : delta_sq[s]) {
      if (!first) os << ",\n";
      first = false;
      os << "    {\"s\": " << s << ", \"i\": " << r.a << ", \"j\": " << r.b
         << ", \"l\": " << r.c << ", \"delta\": \""
         << delta(s, r).str(40) << "\", \"delta_signed_square\": \""
         << x.get_str() << "\"}";
    }
  os << "\n  ]\n}\n";
  return os.str();
}

IrrepTable compute_irreps(const CoherentConfig& cfg) {
  IrrepTable t;
  t.n = cfg.n();
  t.q = cfg.q().q;
  t.fibers = cfg.fibers();

  int num_reps = 0;
  for (int a : t.fibers)
    num_reps = std::max(num_reps, std::min(a, t.n - a) + 1);
  for (int s = 0; s < num_reps; ++s) {
    Int f = gauss_binomial(t.n, s, cfg.q());
    if (s > 0) f -= gauss_binomial(t.n, s - 1, cfg.q());
    t.multiplicity.push_back(f);
  }
  t.delta_sq.resize(num_reps);

  std::map<int, FiberEigen> eigen;
  for (int a : t.fibers) eigen[a] = fiber_eigensystem(cfg, a);

  // diagonal fiber blocks: the coefficients are the scheme eigenvalues, and
  // the multiplicity identity f_s = |X_a| / sum_l P_s(l)^2 / k_l is exact
  for (int a : t.fibers) {
    const auto& fe = eigen.at(a);
    const int C = std::min(a, t.n - a);
    for (int s = 0; s <= C; ++s) {
      Rat norm(0);
      for (int l = 0; l <= C; ++l)
        norm += fe.P[s][l] * fe.P[s][l] / Rat(fe.valency[l]);
      if (Rat(cfg.fiber_size(a)) != Rat(t.multiplicity[s]) * norm)
        throw std::logic_error("multiplicity identity failed");
      for (int l = 0; l <= C; ++l)
        t.delta_sq[s][RelationId{a, a, l}] = signed_square(fe.P[s][l]);
    }
  }

  // cross blocks from the entry functionals of E^s_{ii} A_{ijk}:
  //   D[k][m] := m_{ijm}/f_s * sum_l p^{(j,i,m)}_{(j,i,k),(i,i,l)} e_s(l)
  // satisfies D[k][m] = delta_k delta_m with e_s(l) the entry of E^s_{ii}
  // on the class-l relation
  for (size_t ii = 0; ii < t.fibers.size(); ++ii)
    for (size_t jj = ii + 1; jj < t.fibers.size(); ++jj) {
      const int i = t.fibers[ii], j = t.fibers[jj];
      const int smax =
          std::min(std::min(i, t.n - i), std::min(j, t.n - j));
      const auto K = cfg.classes(i, j);
      const auto Li = cfg.classes(i, i);
      const auto& fe = eigen.at(i);
      for (int s = 0; s <= smax; ++s) {
        const Rat fs{t.multiplicity[s]};
        std::vector<Rat> e(Li.size());
        for (size_t li = 0; li < Li.size(); ++li)
          e[li] = fs * fe.P[s][Li[li]] /
                  (Rat(fe.valency[Li[li]]) * Rat(cfg.fiber_size(i)));
        std::vector<std::vector<Rat>> D(K.size(),
                                        std::vector<Rat>(K.size()));
        for (size_t ki = 0; ki < K.size(); ++ki)
          for (size_t mi = 0; mi < K.size(); ++mi) {
            Rat v(0);
            for (size_t li = 0; li < Li.size(); ++li) {
              Int pv = cfg.p(RelationId{j, i, K[ki]},
                             RelationId{i, i, Li[li]},
                             RelationId{j, i, K[mi]});
              if (pv != 0) v += Rat(pv) * e[li];
            }
            D[ki][mi] = v * Rat(cfg.m(RelationId{i, j, K[mi]})) / fs;
          }
        size_t anchor = 0;
        for (size_t ki = 1; ki < K.size(); ++ki)
          if (D[ki][ki] > D[anchor][anchor]) anchor = ki;
        if (sgn(D[anchor][anchor]) <= 0)
          throw std::logic_error("representation block vanished");
        std::vector<Rat> dsq(K.size());
        for (size_t ki = 0; ki < K.size(); ++ki) {
          Rat sq = D[anchor][ki] * D[anchor][ki] / D[anchor][anchor];
          dsq[ki] = sgn(D[anchor][ki]) < 0 ? Rat(-sq) : sq;
        }
        // exact rank-one consistency of the full D matrix: the signed
        // squares multiply because D[k][m] = delta_k delta_m
        for (size_t ki = 0; ki < K.size(); ++ki)
          for (size_t mi = 0; mi < K.size(); ++mi)
            if (signed_square(D[ki][mi]) != dsq[ki] * dsq[mi])
              throw std::logic_error("cross block is not rank one");
        // convention: the coefficient on the containment class is positive
        for (size_t ki = 0; ki < K.size(); ++ki) {
          if (dsq[ki] == 0) continue;
          if (sgn(dsq[ki]) < 0)
            for (auto& x : dsq) x = -x;
          break;
        }
        for (size_t ki = 0; ki < K.size(); ++ki)
          t.delta_sq[s][RelationId{i, j, K[ki]}] = dsq[ki];
      }
    }
  return t;
}

IrrepCheck verify_irrep_identities(const CoherentConfig& cfg,
                                   const IrrepTable& t) {
  IrrepCheck out;
  out.max_product_residual = Real(0);
  out.max_orthogonality_residual = Real(0);
  const Real one(1);

  // cache of floating coefficients and entry values eps = delta * f_s / m
  std::map<std::tuple<int, int, int, int>, Real> dval, eps;
  for (int s = 0; s < t.num_reps(); ++s)
    for (const auto& [r, x] : t.delta_sq[s]) {
      Real d = t.delta(s, r);
      dval[{s, r.a, r.b, r.c}] = d;
      dval[{s, r.b, r.a, r.c}] = d;
      Real ev = d * Real(t.multiplicity[s]) / Real(cfg.m(r));
      eps[{s, r.a, r.b, r.c}] = ev;
      eps[{s, r.b, r.a, r.c}] = ev;
    }

  for (int i : t.fibers)
    for (int j : t.fibers)
      for (int l : t.fibers) {
        const auto U = cfg.classes(i, j), V = cfg.classes(j, l),
                   M = cfg.classes(i, l);
        for (int s = 0; s < t.num_reps(); ++s) {
          if (!t.has(s, i, j)) continue;
          for (int tt = 0; tt < t.num_reps(); ++tt) {
            if (!t.has(tt, j, l)) continue;
            for (int m : M) {
              Real lhs(0);
              for (int u : U)
                for (int v : V) {
                  Int pv = cfg.p(RelationId{i, j, u}, RelationId{j, l, v},
                                 RelationId{i, l, m});
                  if (pv != 0)
                    lhs += eps.at({s, i, j, u}) * eps.at({tt, j, l, v}) *
                           Real(pv);
                }
              lhs *= Real(cfg.m(RelationId{i, l, m})) /
                     Real(t.multiplicity[s]);
              Real target =
                  (s == tt && t.has(s, i, l)) ? dval.at({s, i, l, m})
                                              : Real(0);
              Real res = abs(lhs - target) / max(one, abs(target));
              out.max_product_residual = max(out.max_product_residual, res);
            }
          }
        }
      }

  // dual-basis orthogonality: sum_s f_s delta_k delta_m = [k=m] m_k
  for (size_t ii = 0; ii < t.fibers.size(); ++ii)
    for (size_t jj = ii; jj < t.fibers.size(); ++jj) {
      const int i = t.fibers[ii], j = t.fibers[jj];
      const auto K = cfg.classes(i, j);
      for (int k : K)
        for (int m : K) {
          Real acc(0);
          for (int s = 0; s < t.num_reps(); ++s)
            if (t.has(s, i, j))
              acc += Real(t.multiplicity[s]) * dval.at({s, i, j, k}) *
                     dval.at({s, i, j, m});
          Real target =
              (k == m) ? Real(cfg.m(RelationId{i, j, k})) : Real(0);
          Real scale = sqrt(Real(cfg.m(RelationId{i, j, k})) *
                            Real(cfg.m(RelationId{i, j, m})));
          Real res = abs(acc - target) / scale;
          out.max_orthogonality_residual =
              max(out.max_orthogonality_residual, res);
        }
    }
  return out;
}

namespace {

struct RefEntry {
  Int coeff;
  Int radicand;  // delta = coeff * sqrt(radicand)
};

struct RefRow {
  int a, b, c;
  Int val;  // m_{abc} / |X_a|
  std::vector<RefEntry> d;
};

}  // namespace

ReferenceCheck compare_reference_n7(long q) {
  QParams qp(q);
  auto cfg = build_config(7, qp);
  auto t = compute_irreps(cfg);

  ReferenceCheck out;
  out.max_residual = Real(0);

  const Int Q(q);
  auto g = [&](long k) { return gauss_number(k, qp); };
  auto qe = [&](long e) { return q_pow(q, e); };
  const Int phi = Q * Q + 1, psi = Q * Q - Q + 1;

  std::vector<RefRow> rows = {
      {1, 1, 0, Int(1), {{Int(1), Int(1)}, {Int(1), Int(1)}}},
      {1, 1, 1, Q * g(6), {{Q * g(6), Int(1)}, {Int(-1), Int(1)}}},
      {1, 2, 0, g(6), {{g(2), psi * g(3)}, {Int(1), Q * g(5)}}},
      {1, 2, 1, qe(2) * psi * g(3) * g(5),
       {{qe(2) * g(5), psi * g(3)}, {Int(-1), Q * g(5)}}},
      {1, 3, 0, gauss_binomial(6, 2, qp),
       {{g(3), psi * g(5)}, {Q, phi * g(5)}}},
      {1, 3, 1, qe(3) * (qe(3) + 1) * gauss_binomial(5, 2, qp),
       {{qe(3) * g(4), psi * g(5)}, {-Q, phi * g(5)}}},
      {1, 4, 0, gauss_binomial(6, 3, qp),
       {{g(4), psi * g(5)}, {Q, Q * phi * g(5)}}},
      {1, 4, 1, qe(4) * psi * g(3) * g(5),
       {{qe(4) * g(3), psi * g(5)}, {-Q, Q * phi * g(5)}}},
      {1, 5, 0, gauss_binomial(6, 4, qp),
       {{g(5), psi * g(3)}, {qe(2), g(5)}}},
      {1, 5, 1, qe(5) * g(6),
       {{qe(5) * g(2), psi * g(3)}, {-qe(2), g(5)}}},
      {1, 6, 0, gauss_binomial(6, 5, qp), {{g(6), Int(1)}, {qe(2), Q}}},
      {1, 6, 1, qe(6), {{qe(6), Int(1)}, {-qe(2), Q}}},
      {2, 2, 0, Int(1),
       {{Int(1), Int(1)}, {Int(1), Int(1)}, {Int(1), Int(1)}}},
      {2, 2, 1, Q * g(2) * g(5),
       {{Q * g(2) * g(5), Int(1)},
        {qe(2) * g(4) - 1, Int(1)},
        {-g(2), Int(1)}}},
      {2, 2, 2, qe(4) * phi * g(5),
       {{qe(4) * phi * g(5), Int(1)}, {-qe(2) * g(4), Int(1)}, {Q, Int(1)}}},
      {2, 3, 0, g(5),
       {{Int(1), g(3) * g(5)}, {g(2), Q * phi}, {Q, g(3)}}},
      {2, 3, 1, qe(2) * g(4) * g(5),
       {{qe(2) * g(4), g(3) * g(5)},
        {qe(3) * g(3) - g(2), Q * phi},
        {-Q * g(2), g(3)}}},
      {2, 3, 2, qe(6) * phi * g(5),
       {{qe(6) * phi, g(3) * g(5)},
        {-qe(3) * g(3), Q * phi},
        {qe(2), g(3)}}},
      {2, 4, 0, phi * g(5),
       {{phi, g(3) * g(5)}, {Q * g(3), phi}, {qe(2), g(3)}}},
      {2, 4, 1, qe(3) * g(4) * g(5),
       {{qe(3) * g(4), g(3) * g(5)},
        {Q * (qe(4) * g(2) - g(3)), phi},
        {-qe(2) * g(2), g(3)}}},
      {2, 4, 2, qe(8) * g(5),
       {{qe(8), g(3) * g(5)}, {-qe(5) * g(2), phi}, {qe(3), g(3)}}},
      {2, 5, 0, phi * g(5),
       {{phi * g(5), Int(1)}, {Q * g(4), Q}, {qe(3), Int(1)}}},
      {2, 5, 1, qe(4) * g(2) * g(5),
       {{qe(4) * g(2) * g(5), Int(1)},
        {Q * (qe(5) - g(4)), Q},
        {-g(2) * qe(3), Int(1)}}},
      {2, 5, 2, qe(10), {{qe(10), Int(1)}, {-qe(6), Q}, {qe(4), Int(1)}}},
      {3, 3, 0, Int(1),
       {{Int(1), Int(1)},
        {Int(1), Int(1)},
        {Int(1), Int(1)},
        {Int(1), Int(1)}}},
      {3, 3, 1, Q * g(3) * g(4),
       {{Q * g(3) * g(4), Int(1)},
        {qe(2) * g(2) * g(3) - 1, Int(1)},
        {(qe(2) - 1) * g(3), Int(1)},
        {-g(3), Int(1)}}},
      {3, 3, 2, qe(4) * phi * g(3) * g(3),
       {{qe(4) * phi * g(3) * g(3), Int(1)},
        {qe(2) * g(3) * (qe(4) - Q - 1), Int(1)},
        {-Q * g(3) * (qe(2) + Q - 1), Int(1)},
        {Q * g(3), Int(1)}}},
      {3, 3, 3, qe(9) * g(4),
       {{qe(9) * g(4), Int(1)},
        {-qe(6) * g(3), Int(1)},
        {qe(4) * g(2), Int(1)},
        {-qe(3), Int(1)}}},
      {3, 4, 0, g(4),
       {{g(4), Int(1)}, {g(3), Q}, {Q * g(2), Int(1)}, {Q, Q}}},
      {3, 4, 1, qe(2) * phi * g(3) * g(3),
       {{qe(2) * phi * g(3) * g(3), Int(1)},
        {g(3) * (qe(3) * g(2) - 1), Q},
        {Q * g(3) * (qe(2) - Q - 1), Int(1)},
        {-Q * g(3), Q}}},
      {3, 4, 2, qe(6) * g(3) * g(4),
       {{qe(6) * g(3) * g(4), Int(1)},
        {qe(3) * (qe(5) - g(2) * g(3)), Q},
        {-qe(2) * (qe(3) - 1) * g(2), Int(1)},
        {qe(2) * g(3), Q}}},
      {3, 4, 3, qe(12),
       {{qe(12), Int(1)}, {-qe(8), Q}, {qe(6), Int(1)}, {-qe(4), Q}}},
  };

  out.exact_match = true;
  auto mismatch = [&](const std::string& what, int a, int b, int c, int s) {
    std::ostringstream os;
    os << what << " at (a,b,c)=(" << a << "," << b << "," << c
       << ") s=" << s;
    out.mismatches.push_back(os.str());
    out.exact_match = false;
  };

  // multiplicities: 1, [7]-1, [7 2]-[7 1], [7 3]-[7 2]
  std::vector<Int> fref = {Int(1), g(7) - 1,
                           gauss_binomial(7, 2, qp) - g(7),
                           gauss_binomial(7, 3, qp) - gauss_binomial(7, 2, qp)};
  for (int s = 0; s < 4; ++s)
    if (t.multiplicity[s] != fref[s]) mismatch("multiplicity", 0, 0, 0, s);

  const Real one(1);
  for (const auto& row : rows) {
    RelationId r{row.a, row.b, row.c};
    if (cfg.m(r) != row.val * cfg.fiber_size(row.a))
      mismatch("valency", row.a, row.b, row.c, -1);
    for (int s = 0; s < t.num_reps(); ++s) {
      bool listed = s < static_cast<int>(row.d.size());
      if (t.has(s, row.a, row.b) != listed) {
        mismatch("presence", row.a, row.b, row.c, s);
        continue;
      }
      if (!listed) continue;
      const auto& e = row.d[s];
      Rat ref_sq{e.coeff * e.coeff * e.radicand};
      if (sgn(e.coeff) < 0) ref_sq = -ref_sq;
      if (t.dsq(s, r) != ref_sq) mismatch("coefficient", row.a, row.b, row.c, s);
      Real ref = Real(e.coeff) * sqrt(Real(e.radicand));
      Real res = abs(t.delta(s, r) - ref) / max(one, abs(ref));
      out.max_residual = max(out.max_residual, res);
    }
  }
  return out;
}

}  // namespace subsdp
