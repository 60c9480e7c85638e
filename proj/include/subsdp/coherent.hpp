#pragma once

// The coherent configuration of subspaces of F_q^n: fibers are dimensions,
// a pair (x, y) lies in relation R_{abc} iff dim x = a, dim y = b and
// c = min(a,b) - dim(x cap y). Everything is produced by the counting
// formulas in qcalc; no group elements are ever constructed.

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "subsdp/qcalc.hpp"

namespace subsdp {

struct RelationId {
  int a;  // fiber of the first entry
  int b;  // fiber of the second entry
  int c;  // codimension class: min(a,b) - dim(x cap y)

  auto operator<=>(const RelationId&) const = default;
};

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(std::string msg) {
    ok = false;
    failures.push_back(std::move(msg));
  }
};

class CoherentConfig {
 public:
  CoherentConfig(int n, QParams q, std::vector<int> fibers);

  int n() const { return n_; }
  const QParams& q() const { return q_; }
  const std::vector<int>& fibers() const { return fibers_; }
  bool has_fiber(int a) const;

  const Int& fiber_size(int a) const;
  const std::vector<RelationId>& relations() const { return relations_; }
  // Nonempty classes c for the fiber pair (a, b).
  std::vector<int> classes(int a, int b) const;
  int num_classes(int a, int b) const { return static_cast<int>(classes(a, b).size()); }

  const Int& m(const RelationId& r) const;  // |R_{abc}|
  Int valency(int a, int c) const;          // m_{aac} / |X_a|

  // Intersection number p^{rk}_{rirj}: for (x,y) in rk, the number of z with
  // (x,z) in ri and (z,y) in rj. Zero unless the fiber indices chain.
  Int p(const RelationId& ri, const RelationId& rj, const RelationId& rk) const;

  std::string dump_json() const;

 private:
  int n_;
  QParams q_;
  std::vector<int> fibers_;
  std::map<int, Int> fiber_sizes_;
  std::vector<RelationId> relations_;
  std::map<RelationId, Int> m_;
  mutable std::map<std::tuple<RelationId, RelationId, RelationId>, Int> p_cache_;
};

CoherentConfig build_config(int n, const QParams& q, std::vector<int> fibers);
CoherentConfig build_config(int n, const QParams& q);  // all fibers 0..n

enum class AxiomMode { kFormulaIdentities, kOracle };

// Checks partition sums, transpose/orthogonality symmetry of m, and
// row-regularity of the p tensor; in oracle mode additionally checks
// constancy of p over enumerated base pairs.
VerifyReport verify_axioms(const CoherentConfig& cfg, AxiomMode mode);

}  // namespace subsdp
