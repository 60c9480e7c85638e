#include "subsdp/coherent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "subsdp/oracle.hpp"

namespace subsdp {

CoherentConfig::CoherentConfig(int n, QParams q, std::vector<int> fibers)
    : n_(n), q_(q), fibers_(std::move(fibers)) {
  std::sort(fibers_.begin(), fibers_.end());
  fibers_.erase(std::unique(fibers_.begin(), fibers_.end()), fibers_.end());
  for (int a : fibers_) {
    if (a < 0 || a > n_) throw std::domain_error("fiber outside {0..n}");
    fiber_sizes_[a] = gauss_binomial(n_, a, q_);
  }
  for (int a : fibers_)
    for (int b : fibers_) {
      int cmax = std::min(std::min(a, b), n_ - std::min(a, b));
      for (int c = 0; c <= cmax; ++c) {
        Int mv = fiber_sizes_[a] *
                 count_meeting(a, std::min(a, b) - c, b, n_, q_);
        if (mv == 0) continue;  // relation empty (x+y would not fit)
        relations_.push_back(RelationId{a, b, c});
        m_[RelationId{a, b, c}] = mv;
      }
    }
}

bool CoherentConfig::has_fiber(int a) const {
  return std::binary_search(fibers_.begin(), fibers_.end(), a);
}

const Int& CoherentConfig::fiber_size(int a) const {
  auto it = fiber_sizes_.find(a);
  if (it == fiber_sizes_.end()) throw std::domain_error("unknown fiber");
  return it->second;
}

std::vector<int> CoherentConfig::classes(int a, int b) const {
  std::vector<int> out;
  for (const auto& [r, mv] : m_)
    if (r.a == a && r.b == b) out.push_back(r.c);
  return out;
}

const Int& CoherentConfig::m(const RelationId& r) const {
  auto it = m_.find(r);
  if (it == m_.end()) throw std::domain_error("unknown relation");
  return it->second;
}

Int CoherentConfig::valency(int a, int c) const {
  return count_meeting(a, a - c, a, n_, q_);
}

Int CoherentConfig::p(const RelationId& ri, const RelationId& rj,
                      const RelationId& rk) const {
  // chaining: (x,z) in ri, (z,y) in rj, (x,y) in rk
  if (ri.a != rk.a || rj.b != rk.b || ri.b != rj.a) return 0;
  auto key = std::make_tuple(ri, rj, rk);
  auto it = p_cache_.find(key);
  if (it != p_cache_.end()) return it->second;
  Int v = triple_count(rk.a, rk.b, rk.c, ri.b, n_, ri.c, rj.c, q_);
  p_cache_[key] = v;
  return v;
}

std::string CoherentConfig::dump_json() const {
  std::ostringstream os;
  os << "{\n  \"n\": " << n_ << ",\n  \"q\": " << q_.q << ",\n  \"fibers\": [";
  for (size_t i = 0; i < fibers_.size(); ++i)
    os << (i ? ", " : "") << fibers_[i];
  os << "],\n  \"fiber_sizes\": {";
  bool first = true;
  for (const auto& [a, sz] : fiber_sizes_) {
    os << (first ? "" : ", ") << "\"" << a << "\": " << sz.get_str();
    first = false;
  }
  os << "},\n  \"relations\": [\n";
  for (size_t i = 0; i < relations_.size(); ++i) {
    const auto& r = relations_[i];
    os << "    {\"a\": " << r.a << ", \"b\": " << r.b << ", \"c\": " << r.c
       << ", \"m\": " << m_.at(r).get_str() << "}"
       << (i + 1 < relations_.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

CoherentConfig build_config(int n, const QParams& q, std::vector<int> fibers) {
  return CoherentConfig(n, q, std::move(fibers));
}

CoherentConfig build_config(int n, const QParams& q) {
  std::vector<int> fibers(n + 1);
  for (int i = 0; i <= n; ++i) fibers[i] = i;
  return CoherentConfig(n, q, std::move(fibers));
}

namespace {

void check_formula_identities(const CoherentConfig& cfg, VerifyReport& rep) {
  const int n = cfg.n();
  // partition of each fiber-pair block
  for (int a : cfg.fibers())
    for (int b : cfg.fibers()) {
      Int sum(0);
      for (int c : cfg.classes(a, b)) sum += cfg.m(RelationId{a, b, c});
      if (sum != cfg.fiber_size(a) * cfg.fiber_size(b)) {
        std::ostringstream os;
        os << "partition sum failed for fiber pair (" << a << "," << b << ")";
        rep.fail(os.str());
      }
    }
  // transpose and orthogonality symmetry of m
  for (const auto& r : cfg.relations()) {
    if (cfg.m(RelationId{r.b, r.a, r.c}) != cfg.m(r))
      rep.fail("m transpose symmetry failed");
    if (cfg.has_fiber(n - r.a) && cfg.has_fiber(n - r.b)) {
      if (cfg.m(RelationId{n - r.a, n - r.b, r.c}) != cfg.m(r))
        rep.fail("m orthogonality symmetry failed");
    }
  }
  // row-regularity: sum_j p^{(a,b,k)}_{(a,d,i),(d,b,j)} = m_{adi}/|X_a|
  for (const auto& rk : cfg.relations())
    for (int d : cfg.fibers())
      for (int i : cfg.classes(rk.a, d)) {
        Int sum(0);
        for (int j : cfg.classes(d, rk.b))
          sum += cfg.p(RelationId{rk.a, d, i}, RelationId{d, rk.b, j}, rk);
        Int expect = cfg.m(RelationId{rk.a, d, i}) / cfg.fiber_size(rk.a);
        if (sum != expect) {
          std::ostringstream os;
          os << "row-regularity failed at k=(" << rk.a << "," << rk.b << ","
             << rk.c << ") d=" << d << " i=" << i;
          rep.fail(os.str());
        }
      }
}

void check_oracle(const CoherentConfig& cfg, VerifyReport& rep) {
  const int n = cfg.n();
  const int p = static_cast<int>(cfg.q().q);
  AmbientSpace space(n, p);
  std::map<int, std::vector<SubspaceRep>> by_dim;
  for (int a : cfg.fibers()) by_dim[a] = enumerate_subspaces(space, a);

  for (const auto& rk : cfg.relations()) {
    // a handful of base pairs per relation, spread over the block
    std::vector<std::pair<const SubspaceRep*, const SubspaceRep*>> pairs;
    for (const auto& x : by_dim[rk.a]) {
      for (const auto& y : by_dim[rk.b]) {
        int c = std::min(rk.a, rk.b) - dim_intersection(x, y);
        if (c == rk.c) {
          pairs.emplace_back(&x, &y);
          break;
        }
      }
      if (pairs.size() >= 3) break;
    }
    if (pairs.empty()) {
      rep.fail("relation has no witness pair in oracle enumeration");
      continue;
    }
    for (int d : cfg.fibers())
      for (int i : cfg.classes(rk.a, d))
        for (int j : cfg.classes(d, rk.b)) {
          Int expect =
              cfg.p(RelationId{rk.a, d, i}, RelationId{d, rk.b, j}, rk);
          for (auto [x, y] : pairs) {
            long cnt = 0;
            for (const auto& z : by_dim[d]) {
              int ci = std::min(rk.a, d) - dim_intersection(*x, z);
              int cj = std::min(d, rk.b) - dim_intersection(z, *y);
              if (ci == i && cj == j) ++cnt;
            }
            if (Int(cnt) != expect) {
              std::ostringstream os;
              os << "oracle mismatch: p at k=(" << rk.a << "," << rk.b << ","
                 << rk.c << ") i=(" << rk.a << "," << d << "," << i
                 << ") j=(" << d << "," << rk.b << "," << j << ") formula "
                 << expect.get_str() << " oracle " << cnt;
              rep.fail(os.str());
            }
          }
        }
  }
}

}  // namespace

VerifyReport verify_axioms(const CoherentConfig& cfg, AxiomMode mode) {
  VerifyReport rep;
  check_formula_identities(cfg, rep);
  if (mode == AxiomMode::kOracle) check_oracle(cfg, rep);
  return rep;
}

}  // namespace subsdp
