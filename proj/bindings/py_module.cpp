// Python bindings for the bellcert core: expressions, correlations, seesaw
// Tsirelson estimates, nondegeneracy certificates and the entanglement
// bound pipeline.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "bellcert/io.hpp"

namespace py = pybind11;
using namespace bellcert;

namespace {

std::vector<double> to_vector(const numerics::RealVector& v) {
  return {v.data(), v.data() + v.size()};
}

experiments::SimulationSpec make_spec(const std::string& state, double noise_w,
                                      const std::string& noise, const std::string& measurements,
                                      std::optional<long> shots, std::uint64_t seed) {
  experiments::SimulationSpec spec;
  if (state == "optimal_cglmp") spec.state = experiments::StateKind::optimal_cglmp;
  else if (state == "maximally_entangled") spec.state = experiments::StateKind::maximally_entangled;
  else if (state == "random_pure") spec.state = experiments::StateKind::random_pure;
  else if (state == "random_mixed") spec.state = experiments::StateKind::random_mixed;
  else throw InvalidInputError("unknown state kind '" + state + "'");
  spec.noise_w = noise_w;
  spec.noise = noise == "random" ? experiments::NoiseKind::random_mix
                                 : experiments::NoiseKind::white;
  if (measurements == "optimal") spec.measurements = experiments::MeasurementSource::optimal;
  else if (measurements == "random") spec.measurements = experiments::MeasurementSource::random;
  else throw InvalidInputError("unknown measurement source '" + measurements + "'");
  spec.shots = shots;
  spec.seed = seed;
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bell-inequality nondegeneracy certification and semi-device-independent "
            "entanglement bounds";

  py::register_exception<InvalidInputError>(m, "InvalidInputError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalErrorCpp", PyExc_RuntimeError);

  py::class_<bell::Scenario>(m, "Scenario")
      .def(py::init<int, int, int, int>(), py::arg("nx"), py::arg("ny"), py::arg("na"),
           py::arg("nb"))
      .def_readonly("nx", &bell::Scenario::nx)
      .def_readonly("ny", &bell::Scenario::ny)
      .def_readonly("na", &bell::Scenario::na)
      .def_readonly("nb", &bell::Scenario::nb)
      .def("__repr__", [](const bell::Scenario& s) {
        return "Scenario(nx=" + std::to_string(s.nx) + ", ny=" + std::to_string(s.ny) +
               ", na=" + std::to_string(s.na) + ", nb=" + std::to_string(s.nb) + ")";
      });

  py::class_<bell::Expression>(m, "Expression")
      .def_readonly("scenario", &bell::Expression::scenario)
      .def_readonly("name", &bell::Expression::name)
      .def_readonly("coeffs", &bell::Expression::coeffs)
      .def("coefficient", [](const bell::Expression& e, int x, int y, int a, int b) {
        return e.s(x, y, a, b);
      })
      .def("to_json", [](const bell::Expression& e) { return io::expression_to_json(e).dump(); });

  py::class_<bell::Correlation>(m, "Correlation")
      .def_readonly("scenario", &bell::Correlation::scenario)
      .def_readonly("p", &bell::Correlation::p)
      .def("at", [](const bell::Correlation& c, int x, int y, int a, int b) {
        return c.at(x, y, a, b);
      })
      .def("to_json", [](const bell::Correlation& c) { return io::correlation_to_json(c).dump(); });

  py::class_<bell::Assemblage>(m, "Assemblage")
      .def_readonly("dim", &bell::Assemblage::dim)
      .def_readonly("povms", &bell::Assemblage::povms);

  m.def("builtin_expression", &bell::builtin_expression, py::arg("name"),
        "Builtin coefficient tables: 'cglmp3' or 'chsh'.");
  m.def("expression_from_json",
        [](const std::string& text) { return io::expression_from_json(io::parse_json_text(text)); });
  m.def("correlation_from_json",
        [](const std::string& text) { return io::correlation_from_json(io::parse_json_text(text)); });
  m.def(
      "classical_bound",
      [](const bell::Expression& e) {
        const auto cb = bell::classical_bound(e);
        return py::make_tuple(cb.value, cb.alice_strategy, cb.bob_strategy);
      },
      "Exact deterministic-strategy maximum: (value, alice_strategy, bob_strategy).");
  m.def("evaluate_bell", &bell::evaluate_bell, py::arg("expr"), py::arg("correlation"));
  m.def("born_correlation", &bell::born_correlation, py::arg("rho"), py::arg("alice"),
        py::arg("bob"));
  m.def("bell_operator", &bell::bell_operator, py::arg("expr"), py::arg("alice"), py::arg("bob"));

  py::class_<tsirelson::SeesawConfig>(m, "SeesawConfig")
      .def(py::init([](int restarts, int max_iters, double tol, int inner_iters,
                       std::uint64_t seed) {
             return tsirelson::SeesawConfig{restarts, max_iters, tol, inner_iters, seed};
           }),
           py::arg("restarts") = 50, py::arg("max_iters") = 500, py::arg("tol") = 1e-9,
           py::arg("inner_iters") = 200, py::arg("seed") = 0)
      .def_readwrite("restarts", &tsirelson::SeesawConfig::restarts)
      .def_readwrite("max_iters", &tsirelson::SeesawConfig::max_iters)
      .def_readwrite("tol", &tsirelson::SeesawConfig::tol)
      .def_readwrite("inner_iters", &tsirelson::SeesawConfig::inner_iters)
      .def_readwrite("seed", &tsirelson::SeesawConfig::seed);

  py::class_<tsirelson::TsirelsonEstimate>(m, "TsirelsonEstimate")
      .def_readonly("value", &tsirelson::TsirelsonEstimate::value)
      .def_readonly("t", &tsirelson::TsirelsonEstimate::t)
      .def_readonly("dim", &tsirelson::TsirelsonEstimate::dim)
      .def_readonly("best_alice", &tsirelson::TsirelsonEstimate::best_alice)
      .def_readonly("best_bob", &tsirelson::TsirelsonEstimate::best_bob)
      .def_property_readonly("top_eigenvalues",
                             [](const tsirelson::TsirelsonEstimate& e) {
                               return to_vector(e.top_eigenvalues);
                             })
      .def_readonly("per_restart_values", &tsirelson::TsirelsonEstimate::per_restart_values)
      .def_readonly("converged", &tsirelson::TsirelsonEstimate::converged);

  m.def("seesaw", &tsirelson::seesaw, py::arg("expr"), py::arg("d"), py::arg("t") = 1,
        py::arg("config") = tsirelson::SeesawConfig{},
        "Seesaw estimate of C(I,d,t); a heuristic lower estimate.");
  m.def(
      "ky_fan_value",
      [](const numerics::Matrix& h, int t) {
        const auto kf = tsirelson::ky_fan_value(h, t);
        return py::make_tuple(kf.value, kf.projector);
      },
      py::arg("h"), py::arg("t"), "Sum of the t largest eigenvalues and its projector.");

  py::class_<nondeg::Certificate>(m, "NondegeneracyCertificate")
      .def_readonly("expr_name", &nondeg::Certificate::expr_name)
      .def_readonly("d", &nondeg::Certificate::d)
      .def_readonly("c_q", &nondeg::Certificate::c_q)
      .def_readonly("c2", &nondeg::Certificate::c2)
      .def_readonly("c_prev", &nondeg::Certificate::c_prev)
      .def_readonly("nondegenerate", &nondeg::Certificate::nondegenerate)
      .def_readonly("eps1_max", &nondeg::Certificate::eps1_max)
      .def_readonly("method", &nondeg::Certificate::method)
      .def_readonly("heuristic_caveat", &nondeg::Certificate::heuristic_caveat)
      .def("to_json", [](const nondeg::Certificate& c) { return io::certificate_to_json(c).dump(); });

  m.def("certify_nondegeneracy", &nondeg::certify_nondegeneracy, py::arg("expr"), py::arg("d"),
        py::arg("config") = tsirelson::SeesawConfig{});
  m.def("certificate_from_json",
        [](const std::string& text) { return io::certificate_from_json(io::parse_json_text(text)); });
  m.def("epsilon2_for", &nondeg::epsilon2_for, py::arg("certificate"), py::arg("eps1"));
  m.def("schmidt_number", &nondeg::schmidt_number, py::arg("state"), py::arg("dim_a"),
        py::arg("dim_b"), py::arg("tol") = numerics::kRankTol);
  m.def(
      "schmidt_reduce",
      [](const numerics::Vector& psi, const numerics::Vector& phi, int d) {
        const auto red = nondeg::schmidt_reduce(psi, phi, d);
        return py::make_tuple(red.alpha, red.beta, red.combined, red.achieved_schmidt_number);
      },
      py::arg("psi"), py::arg("phi"), py::arg("d"),
      "Combination with Schmidt number <= d-1: (alpha, beta, combined, schmidt_number).");

  py::class_<bounds::ViolationAnalysis>(m, "ViolationAnalysis")
      .def_readonly("violation", &bounds::ViolationAnalysis::violation)
      .def_readonly("eps1", &bounds::ViolationAnalysis::eps1)
      .def_readonly("eps2", &bounds::ViolationAnalysis::eps2)
      .def_readonly("a1_lower", &bounds::ViolationAnalysis::a1_lower)
      .def_readonly("purity_lower", &bounds::ViolationAnalysis::purity_lower)
      .def_readonly("has_certificate", &bounds::ViolationAnalysis::has_certificate);

  py::class_<bounds::EntanglementCertificate>(m, "EntanglementCertificate")
      .def_readonly("analysis", &bounds::EntanglementCertificate::analysis)
      .def_readonly("s_upper", &bounds::EntanglementCertificate::s_upper)
      .def_readonly("f1", &bounds::EntanglementCertificate::f1)
      .def_readonly("f2", &bounds::EntanglementCertificate::f2)
      .def_readonly("gamma_a", &bounds::EntanglementCertificate::gamma_a)
      .def_readonly("s_lower", &bounds::EntanglementCertificate::s_lower)
      .def_readonly("ic_lower", &bounds::EntanglementCertificate::ic_lower)
      .def_readonly("certified", &bounds::EntanglementCertificate::certified)
      .def_readonly("caveats", &bounds::EntanglementCertificate::caveats)
      .def("to_json",
           [](const bounds::EntanglementCertificate& ec) { return io::entanglement_to_json(ec).dump(); });

  m.def("violation_analysis", &bounds::violation_analysis, py::arg("v"), py::arg("certificate"),
        py::arg("d"));
  m.def("max_entropy_for_purity", &bounds::max_entropy_for_purity, py::arg("gamma"), py::arg("n"));
  m.def("min_entropy_for_purity", &bounds::min_entropy_for_purity, py::arg("gamma"), py::arg("n"));
  m.def(
      "marginal_purity_upper_bound",
      [](const bell::Correlation& c, int d) {
        const auto mp = bounds::marginal_purity_upper_bound(c, d);
        return py::make_tuple(mp.f1, mp.f2, mp.gamma_a);
      },
      py::arg("correlation"), py::arg("d"), "Returns (f1, f2, gamma_a).");
  m.def("certify_entanglement", &bounds::certify_entanglement, py::arg("correlation"),
        py::arg("expr"), py::arg("certificate"), py::arg("d"));

  m.def("optimal_cglmp_state", &experiments::optimal_cglmp_state);
  m.def("reference_coherent_info", &experiments::reference_coherent_info, py::arg("rho"),
        py::arg("d"));
  m.def(
      "simulate_correlation",
      [](const bell::Expression& expr, int d, const std::string& state, double noise_w,
         const std::string& noise, const std::string& measurements, std::optional<long> shots,
         std::uint64_t seed, const tsirelson::SeesawConfig& cfg) {
        const auto spec = make_spec(state, noise_w, noise, measurements, shots, seed);
        const auto res = experiments::simulate_correlation(spec, expr, d, cfg);
        return py::make_tuple(res.correlation, res.rho, res.exact_violation);
      },
      py::arg("expr"), py::arg("d"), py::arg("state") = "optimal_cglmp",
      py::arg("noise_w") = 0.0, py::arg("noise") = "white", py::arg("measurements") = "optimal",
      py::arg("shots") = std::nullopt, py::arg("seed") = 0,
      py::arg("config") = tsirelson::SeesawConfig{},
      "Returns (correlation, rho, exact_violation).");

  m.def("sample_haar_unitary", &numerics::sample_haar_unitary, py::arg("dim"), py::arg("seed"));
  m.def("sample_pure_state", &numerics::sample_pure_state, py::arg("dim"), py::arg("seed"));
  m.def("sample_density_matrix", &numerics::sample_density_matrix, py::arg("dim"), py::arg("seed"));
  m.def("sample_projective_povm", &numerics::sample_projective_povm, py::arg("dim"),
        py::arg("seed"));
  m.def("kron", &numerics::kron, py::arg("a"), py::arg("b"));
  m.def(
      "partial_trace",
      [](const numerics::Matrix& mat, int dim_a, int dim_b, const std::string& keep) {
        return numerics::partial_trace(
            mat, dim_a, dim_b,
            keep == "A" ? numerics::Party::alice : numerics::Party::bob);
      },
      py::arg("m"), py::arg("dim_a"), py::arg("dim_b"), py::arg("keep") = "A");

#ifdef VERSION_INFO
#define BELLCERT_STR(x) #x
#define BELLCERT_XSTR(x) BELLCERT_STR(x)
  m.attr("__version__") = BELLCERT_XSTR(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
