// Python bindings for the main operations: q-analog counting, coherent
// configurations, the SDP bound pipeline, the certified analytic bounds and
// the plane pair brackets. Big integers cross the boundary as Python ints
// (via decimal strings), high-precision reals as strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subsdp/analytic.hpp"
#include "subsdp/fano.hpp"
#include "subsdp/irreps.hpp"
#include "subsdp/sdp_model.hpp"
#include "subsdp/solver.hpp"

namespace py = pybind11;
using namespace subsdp;

namespace {

py::int_ to_py(const Int& v) {
  return py::cast<py::int_>(
      py::module_::import("builtins").attr("int")(v.get_str()));
}

Int int_from_py(const py::int_& v) {
  return Int(py::cast<std::string>(py::str(static_cast<py::handle>(v))));
}

py::dict bound_dict(const BoundResult& b, const Solution& s) {
  py::dict d;
  d["bound"] = to_py(b.bound);
  d["primal_objective"] = b.primal.str();
  d["upper_bound"] = b.upper.str();
  d["status"] = b.status;
  d["iterations"] = s.iterations;
  d["near_integer"] = b.near_integer;
  return d;
}

py::dict compute_bound(long q, int n, int d, std::vector<int> K,
                       const std::string& bounds_file, long precision,
                       const std::string& mode, const std::string& sdpa_path) {
  std::optional<DimensionBoundTable> user;
  if (!bounds_file.empty())
    user = DimensionBoundTable::load_json(bounds_file);
  if (K.empty())
    for (int k = 0; k <= n; ++k) K.push_back(k);
  CoherentConfig cc = build_config(n, QParams(q));
  IrrepTable tab = compute_irreps(cc);
  SdpProblem p = build_sdp(cc, tab, d, K, user ? &*user : nullptr);
  if (!sdpa_path.empty()) export_sdpa(p, sdpa_path);
  SolverSettings st;
  st.precision = precision;
  st.gap_tol_log2 = -48;
  st.feas_tol_log2 = -48;
  Solution s = solve(p, st);
  BoundResult b = extract_bound(
      s, p, mode == "fast" ? BoundMode::kFast : BoundMode::kCertified);
  if (!b.has_bound)
    throw std::runtime_error("no bound (" + b.status + ")");
  return bound_dict(b, s);
}

}  // namespace

PYBIND11_MODULE(_subsdp, m) {
  m.doc() = "semidefinite upper bounds for subspace codes";

  // counting
  m.def("gauss_number",
        [](long n, long q) { return to_py(gauss_number(n, QParams(q))); },
        py::arg("n"), py::arg("q") = 2);
  m.def("gauss_binomial",
        [](long n, long k, long q) {
          return to_py(gauss_binomial(n, k, QParams(q)));
        },
        py::arg("n"), py::arg("k"), py::arg("q") = 2);
  m.def("count_meeting",
        [](long a, long t, long b, long n, long q) {
          return to_py(count_meeting(a, t, b, n, QParams(q)));
        },
        py::arg("a"), py::arg("t"), py::arg("b"), py::arg("n"),
        py::arg("q") = 2);
  m.def("triple_count",
        [](long a, long b, long k, long d, long n, long i, long j, long q) {
          return to_py(triple_count(a, b, k, d, n, i, j, QParams(q)));
        },
        py::arg("a"), py::arg("b"), py::arg("k"), py::arg("d"), py::arg("n"),
        py::arg("i"), py::arg("j"), py::arg("q") = 2);
  m.def("is_prime_power", &is_prime_power);

  // coherent configuration structure
  m.def("relation_sizes", [](int n, long q) {
    CoherentConfig cc = build_config(n, QParams(q));
    py::dict out;
    for (const auto& r : cc.relations())
      out[py::make_tuple(r.a, r.b, r.c)] = to_py(cc.m(r));
    return out;
  });
  m.def("verify_configuration", [](int n, long q, bool oracle) {
    CoherentConfig cc = build_config(n, QParams(q));
    VerifyReport vr = verify_axioms(
        cc, oracle ? AxiomMode::kOracle : AxiomMode::kFormulaIdentities);
    return py::make_tuple(vr.ok, vr.failures);
  }, py::arg("n"), py::arg("q") = 2, py::arg("oracle") = false);
  m.def("irrep_residuals", [](int n, long q) {
    CoherentConfig cc = build_config(n, QParams(q));
    IrrepTable tab = compute_irreps(cc);
    IrrepCheck ck = verify_irrep_identities(cc, tab);
    return py::make_tuple(ck.max_product_residual.str(10),
                          ck.max_orthogonality_residual.str(10));
  }, py::arg("n"), py::arg("q") = 2);

  // main pipeline
  m.def("bound", &compute_bound, py::arg("q"), py::arg("n"), py::arg("d"),
        py::arg("K") = std::vector<int>{}, py::arg("bounds_file") = "",
        py::arg("precision") = 256, py::arg("mode") = "certified",
        py::arg("sdpa_path") = "",
        "certified integer upper bound on A_q(n,d) or A_q(n,d;K)");

  // certified analytic companions
  m.def("family_formula",
        [](long q) { return to_py(family_formula(q)); });
  m.def("pair24_scan", [](long q) {
    ScanResult s = pair24_scan(q);
    return py::make_tuple(to_py(s.value), s.argmax);
  });
  m.def("combined_74_bound",
        [](long q) { return to_py(combined_74_bound(q)); });
  m.def("triple134_bound",
        [](long q) { return to_py(triple134_bound(q)); });
  m.def("verify_t_positivity", &verify_t_positivity);
  m.def("binary_f", &binary_f);
  m.def("binary_g", &binary_g);
  m.def("binary_h", &binary_h);
  m.def("four_fiber_strategy", [](py::function f, py::function g,
                                  py::function h) {
    auto wrap = [](py::function fn) {
      return BoundFn([fn](long x) { return py::cast<long>(fn(x)); });
    };
    return four_fiber_strategy(wrap(f), wrap(g), wrap(h));
  });
  m.def("extreme_fiber_check",
        [](long q, std::vector<long> profile, py::int_ size) {
          return extreme_fiber_check(q, profile, int_from_py(size));
        });

  // plane configuration
  m.def("plane_census", [] {
    PlaneConfig cfg = build_plane_configuration();
    py::dict out;
    for (const auto& r : cfg.relations()) out[py::str(r.str())] = to_py(cfg.m(r));
    return out;
  });
  m.def("plane_pair_bracket", [](int a, int b, int alpha, int beta, int gamma,
                                 bool cap_mode) {
    PlaneConfig cfg = build_plane_configuration();
    PlaneRelation rel{a, b, alpha, beta, gamma};
    TotalsMode mode = cap_mode ? TotalsMode::kCap : TotalsMode::kEquality;
    return py::make_tuple(to_py(plane_pair_bound(cfg, rel, false, mode)),
                          to_py(plane_pair_bound(cfg, rel, true, mode)));
  }, py::arg("a"), py::arg("b"), py::arg("alpha"), py::arg("beta"),
     py::arg("gamma"), py::arg("cap_mode") = false);
}
