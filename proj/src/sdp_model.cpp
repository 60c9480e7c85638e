#include "subsdp/sdp_model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace subsdp {

void DimensionBoundTable::set(long q, int n, int d, int k, Int bound,
                              std::string note) {
  tab_[{q, n, d, k}] = {std::move(bound), std::move(note)};
}

std::optional<Int> DimensionBoundTable::lookup(long q, int n, int d,
                                               int k) const {
  auto it = tab_.find({q, n, d, k});
  if (it == tab_.end()) return std::nullopt;
  return it->second.first;
}

DimensionBoundTable DimensionBoundTable::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bound table: " + path);
  nlohmann::json j;
  in >> j;
  DimensionBoundTable t;
  for (const auto& rec : j) {
    Int b(rec.at("bound").get<std::string>().c_str());
    t.set(rec.at("q").get<long>(), rec.at("n").get<int>(),
          rec.at("d").get<int>(), rec.at("k").get<int>(), b,
          rec.value("source-note", ""));
  }
  return t;
}

std::string DimensionBoundTable::dump_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [key, val] : tab_) {
    auto [q, n, d, k] = key;
    j.push_back({{"q", q},
                 {"n", n},
                 {"d", d},
                 {"k", k},
                 {"bound", val.first.get_str()},
                 {"source-note", val.second}});
  }
  return j.dump(2);
}

namespace {

Int raw_dimension_bound(const QParams& q, int n, int d, int k,
                        const DimensionBoundTable* user) {
  if (2 * k < d) return Int(1);
  Int best = gauss_binomial(n, k, q);
  // counting bound: every (k-d/2+1)-space lies in at most one codeword
  long t = k - d / 2 + 1;
  if (t >= 1) {
    Int num = gauss_binomial(n, t, q), den = gauss_binomial(k, t, q);
    Int cnt;
    mpz_fdiv_q(cnt.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    best = std::min(best, cnt);
  }
  // partial-spread packing bound
  if (d == 2 * k && k > 0 && (n - 1) % k == 0) {
    Int qk = q_pow(q.q, k) - 1;
    Int pack = (q_pow(q.q, n) - q.q) / qk - q.q + 1;
    best = std::min(best, pack);
  }
  if (user) {
    auto u = user->lookup(q.q, n, d, k);
    if (u) best = std::min(best, *u);
  }
  return best;
}

}  // namespace

Int dimension_bound(const QParams& q, int n, int d, int k,
                    const DimensionBoundTable* user) {
  if (k < 0 || k > n) throw std::domain_error("dimension outside ambient");
  if (d <= 0 || d % 2 != 0) throw std::domain_error("even distance required");
  if (k == 0 || k == n) return Int(1);
  return std::min(raw_dimension_bound(q, n, d, k, user),
                  raw_dimension_bound(q, n, d, n - k, user));
}

bool distance_zeroed(int i, int j, int l, int d) {
  if (i == j && l == 0) return false;
  return std::abs(i - j) + 2 * l < d;
}

Real SdpProblem::objective(const std::vector<Real>& y) const {
  Real v{obj_offset};
  for (int k = 0; k < num_vars(); ++k) v += Real(vars[k].obj) * y[k];
  return v;
}

SdpProblem build_sdp(const CoherentConfig& cfg, const IrrepTable& tab, int d,
                     const std::vector<int>& K,
                     const DimensionBoundTable* user_bounds) {
  SdpProblem p;
  p.q = cfg.q().q;
  p.n = cfg.n();
  p.d = d;
  p.K = K;
  std::sort(p.K.begin(), p.K.end());
  for (int i : p.K)
    if (!cfg.has_fiber(i)) throw std::domain_error("fiber outside config");

  const int d_even = 2 * ((d + 1) / 2);
  std::map<int, Int> U;
  for (int i : p.K)
    U[i] = dimension_bound(cfg.q(), p.n, d_even, i, user_bounds);

  for (size_t ii = 0; ii < p.K.size(); ++ii)
    for (size_t jj = ii; jj < p.K.size(); ++jj) {
      const int i = p.K[ii], j = p.K[jj];
      for (int l : cfg.classes(i, j)) {
        if (distance_zeroed(i, j, l, d)) continue;
        SdpVar v;
        v.i = i;
        v.j = j;
        v.l = l;
        v.ub = (i == j && l == 0) ? Rat(U[i]) : Rat(U[i] * U[j]);
        v.obj = (i == j && l == 0) ? Rat(U[i]) : Rat(0);
        p.var_index[{i, j, l}] = p.num_vars();
        p.vars.push_back(std::move(v));
      }
    }

  // block scaling: sigma_i^2 ~ sqrt(|X_i|)/U_i keeps PSD-block coefficients
  // of unit order despite the wide spread of relation sizes
  std::map<int, Rat> sigma2;
  for (int i : p.K) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), cfg.fiber_size(i).get_mpz_t());
    if (r == 0) r = 1;
    sigma2[i] = Rat(r) / Rat(U[i]);
  }

  for (int s = 0; s < tab.num_reps(); ++s) {
    std::vector<int> Ks;
    for (int i : p.K)
      if (tab.has(s, i, i)) Ks.push_back(i);
    if (Ks.empty()) continue;
    SdpBlock blk;
    blk.name = "rep_" + std::to_string(s);
    blk.size = static_cast<int>(Ks.size());
    for (size_t ii = 0; ii < Ks.size(); ++ii)
      for (size_t jj = ii; jj < Ks.size(); ++jj) {
        const int i = Ks[ii], j = Ks[jj];
        if (!tab.has(s, i, j)) continue;
        for (int l : cfg.classes(i, j)) {
          auto it = p.var_index.find({i, j, l});
          if (it == p.var_index.end()) continue;
          const SdpVar& v = p.vars[it->second];
          const Int& m = cfg.m(RelationId{i, j, l});
          Rat c2 = tab.dsq(s, RelationId{i, j, l}) * v.ub * v.ub *
                   sigma2[i] * sigma2[j] / Rat(m * m);
          if (c2 == 0) continue;
          blk.entries.push_back(
              {it->second, static_cast<int>(ii), static_cast<int>(jj), c2});
        }
      }
    p.blocks.push_back(std::move(blk));
  }

  auto sum_ub = [&](int i, int j) {
    Rat s(0);
    for (const auto& v : p.vars)
      if (v.i == i && v.j == j) s += v.ub;
    return s;
  };

  for (int i : p.K) {
    SdpBlock blk;
    blk.name = "fiber_" + std::to_string(i);
    blk.size = 2;
    Rat S = sum_ub(i, i);
    blk.entries.push_back({-1, 0, 0, Rat(1)});
    for (const auto& [key, idx] : p.var_index) {
      auto [vi, vj, vl] = key;
      if (vi != i || vj != i) continue;
      const Rat& ub = p.vars[idx].ub;
      if (vl == 0) blk.entries.push_back({idx, 0, 1, ub * ub / S});
      blk.entries.push_back({idx, 1, 1, (ub / S) * (ub / S)});
    }
    p.blocks.push_back(std::move(blk));
  }

  for (size_t ii = 0; ii < p.K.size(); ++ii)
    for (size_t jj = ii + 1; jj < p.K.size(); ++jj) {
      const int i = p.K[ii], j = p.K[jj];
      SdpBlock blk;
      blk.name = "pair_" + std::to_string(i) + "_" + std::to_string(j);
      blk.size = 2;
      Rat S = sum_ub(i, i) + sum_ub(j, j) + Rat(2) * sum_ub(i, j);
      blk.entries.push_back({-1, 0, 0, Rat(1)});
      for (const auto& [key, idx] : p.var_index) {
        auto [vi, vj, vl] = key;
        const Rat& ub = p.vars[idx].ub;
        if (vi == i && vj == i) {
          if (vl == 0) blk.entries.push_back({idx, 0, 1, ub * ub / S});
          blk.entries.push_back({idx, 1, 1, (ub / S) * (ub / S)});
        } else if (vi == j && vj == j) {
          if (vl == 0) blk.entries.push_back({idx, 0, 1, ub * ub / S});
          blk.entries.push_back({idx, 1, 1, (ub / S) * (ub / S)});
        } else if (vi == i && vj == j) {
          Rat c = Rat(2) * ub / S;
          blk.entries.push_back({idx, 1, 1, c * c});
        }
      }
      p.blocks.push_back(std::move(blk));
    }

  // moment block [[1, x^T],[x, Y]] with Y_ij = sum_l b_{ijl}: valid since
  // Y equals x x^T for a code; subsumes the 2x2 Schur blocks, couples all
  // fibers, and in particular ties the extreme fibers to the zeroed cross
  // classes. Scaled by the congruence diag(1, 1/U_i).
  {
    SdpBlock mb;
    mb.name = "moment";
    mb.size = 1 + static_cast<int>(p.K.size());
    std::map<int, int> pos;
    for (size_t a = 0; a < p.K.size(); ++a) pos[p.K[a]] = 1 + static_cast<int>(a);
    mb.entries.push_back({-1, 0, 0, Rat(1)});
    for (int k = 0; k < p.num_vars(); ++k) {
      const SdpVar& v = p.vars[k];
      if (v.i == v.j && v.l == 0) mb.entries.push_back({k, 0, pos[v.i], Rat(1)});
      Rat c = v.ub / (Rat(U[v.i]) * Rat(U[v.j]));
      mb.entries.push_back({k, pos[v.i], pos[v.j], c * c});
    }
    p.blocks.push_back(std::move(mb));
  }

  // pair caps: sum_l b_{ijl} = x_i x_j <= U_j x_i and <= U_i x_j, linear in b
  SdpBlock cap;
  cap.name = "cap";
  cap.diag = true;
  {
    std::map<std::pair<int, int>, std::vector<int>> pair_vars;
    for (int k = 0; k < p.num_vars(); ++k)
      pair_vars[{p.vars[k].i, p.vars[k].j}].push_back(k);
    for (const auto& [ij, vs] : pair_vars) {
      auto [i, j] = ij;
      for (int side = 0; side < (i == j ? 1 : 2); ++side) {
        int a = side == 0 ? i : j;  // the x_a that carries the row
        auto it0 = p.var_index.find({a, a, 0});
        if (it0 == p.var_index.end()) continue;
        int r = cap.size++;
        // row scaled by 1/(U_i U_j): y_{aa0} - sum_l (ub/(U_i U_j)) y >= 0
        cap.entries.push_back({it0->second, r, r, Rat(1)});
        for (int k : vs) {
          Rat c = p.vars[k].ub / (Rat(U[i]) * Rat(U[j]));
          cap.entries.push_back({k, r, r, -c * c});
        }
      }
    }
  }
  if (cap.size > 0) p.blocks.push_back(std::move(cap));

  SdpBlock box;
  box.name = "box";
  box.size = 2 * p.num_vars();
  box.diag = true;
  for (int k = 0; k < p.num_vars(); ++k) {
    box.entries.push_back({k, 2 * k, 2 * k, Rat(1)});
    box.entries.push_back({-1, 2 * k + 1, 2 * k + 1, Rat(1)});
    box.entries.push_back({k, 2 * k + 1, 2 * k + 1, Rat(-1)});
  }
  if (box.size > 0) p.blocks.push_back(std::move(box));
  return p;
}

SdpProblem fix_variables(
    const SdpProblem& p,
    const std::map<std::tuple<int, int, int>, Rat>& assignments) {
  std::map<int, Rat> pinned;  // var index -> scaled value
  for (const auto& [key, bval] : assignments) {
    auto it = p.var_index.find(key);
    if (it == p.var_index.end())
      throw std::domain_error("assignment references unknown variable");
    const SdpVar& v = p.vars[it->second];
    if (bval < 0 || bval > v.ub)
      throw std::domain_error("assignment outside box bound");
    pinned[it->second] = bval / v.ub;
  }

  SdpProblem out;
  out.q = p.q;
  out.n = p.n;
  out.d = p.d;
  out.K = p.K;
  out.obj_offset = p.obj_offset;
  std::vector<int> remap(p.num_vars(), -1);
  for (int k = 0; k < p.num_vars(); ++k) {
    auto it = pinned.find(k);
    if (it != pinned.end()) {
      out.obj_offset += p.vars[k].obj * it->second;
      continue;
    }
    remap[k] = out.num_vars();
    out.var_index[{p.vars[k].i, p.vars[k].j, p.vars[k].l}] = out.num_vars();
    out.vars.push_back(p.vars[k]);
  }
  for (const auto& blk : p.blocks) {
    SdpBlock nb;
    nb.name = blk.name;
    nb.size = blk.size;
    nb.diag = blk.diag;
    for (const auto& e : blk.entries) {
      if (e.var < 0 || remap[e.var] >= 0) {
        nb.entries.push_back(e);
        if (e.var >= 0) nb.entries.back().var = remap[e.var];
        continue;
      }
      const Rat& yv = pinned.at(e.var);
      if (yv == 0) continue;
      nb.entries.push_back({-1, e.r, e.c, e.coef_sq * yv * yv});
    }
    out.blocks.push_back(std::move(nb));
  }
  return out;
}

namespace {

Real coef_value(const Rat& sq) {
  Rat a = ::abs(sq);
  Real v = sqrt(Real(a));
  return sgn(sq) < 0 ? -v : v;
}

}  // namespace

void export_sdpa(const SdpProblem& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "* block SDP, encoded as min -objective; the reported optimum is\n"
      << "* the negative of the maximization value\n";
  out << p.num_vars() << "\n" << p.blocks.size() << "\n";
  for (size_t b = 0; b < p.blocks.size(); ++b)
    out << (b ? " " : "")
        << (p.blocks[b].diag ? -p.blocks[b].size : p.blocks[b].size);
  out << "\n";
  for (int k = 0; k < p.num_vars(); ++k)
    out << (k ? " " : "") << Real(-p.vars[k].obj).str(45);
  out << "\n";
  // accumulate duplicates, then emit var block row col value (1-based)
  std::map<std::tuple<int, int, int, int>, Real> acc;
  for (size_t b = 0; b < p.blocks.size(); ++b)
    for (const auto& e : p.blocks[b].entries) {
      int var = e.var < 0 ? 0 : e.var + 1;
      auto key = std::make_tuple(var, static_cast<int>(b) + 1, e.r + 1,
                                 e.c + 1);
      Real v = coef_value(e.coef_sq);
      if (var == 0) v = -v;  // constant matrix enters negated
      auto [it, fresh] = acc.emplace(key, v);
      if (!fresh) it->second += v;
    }
  for (const auto& [key, v] : acc) {
    if (v.is_zero()) continue;
    auto [var, b, r, c] = key;
    out << var << " " << b << " " << r << " " << c << " " << v.str(45)
        << "\n";
  }
}

ExternalLog read_solver_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open log: " + path);
  ExternalLog log;
  std::string line;
  auto value_of = [](const std::string& s) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw std::runtime_error("malformed log line");
    auto v = s.substr(eq + 1);
    auto b = v.find_first_not_of(" \t");
    auto e = v.find_last_not_of(" \t\r");
    if (b == std::string::npos) throw std::runtime_error("empty log value");
    return v.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    if (line.find("objValPrimal") != std::string::npos)
      log.primal_text = value_of(line);
    else if (line.find("objValDual") != std::string::npos)
      log.dual_text = value_of(line);
    else if (line.find("phase.value") != std::string::npos)
      log.status = value_of(line);
  }
  if (log.status.empty() || log.primal_text.empty() || log.dual_text.empty())
    throw std::runtime_error("log missing objective or status lines");
  int digits = 0;
  for (char c : log.dual_text) {
    if (c == 'e' || c == 'E') break;
    if (c >= '0' && c <= '9') ++digits;
  }
  log.digits = digits;
  return log;
}

}  // namespace subsdp
