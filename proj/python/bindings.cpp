#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polymaass/verify.hpp"

namespace py = pybind11;
using namespace polymaass;

namespace {

TruncationPolicy policy(int modes, double tol) {
  TruncationPolicy t;
  t.mode_count = modes;
  if (tol > 0.0) t.target_tol = tol;
  return t;
}

py::tuple result(const sf::EvalResult& r) {
  return py::make_tuple(r.value, r.abs_error_estimate, std::string(sf::to_string(r.method)));
}

py::dict report(const CheckReport& c) {
  py::dict d;
  d["check_name"] = c.check_name;
  d["inputs"] = c.inputs;
  d["residual"] = c.residual;
  d["scale"] = c.scale;
  d["tolerance"] = c.tolerance;
  d["passed"] = c.passed;
  d["extras"] = c.extras;
  return d;
}

}  // namespace

PYBIND11_MODULE(_polymaass, m) {
  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<PoleError>(m, "PoleError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<AccuracyError>(m, "AccuracyError", base.ptr());
  py::register_exception<TailError>(m, "TailError", base.ptr());
  py::register_exception<ZeroArgument>(m, "ZeroArgument", base.ptr());
  py::register_exception<DegenerateParameter>(m, "DegenerateParameter", base.ptr());
  py::register_exception<OverflowError>(m, "OverflowError", base.ptr());

  m.def(
      "doubly_completed_eval",
      [](int k, cplx s, cplx z, int modes, double tol) {
        return result(doubly_completed_eval(SpectralParam(k, s), PointUHP(z), policy(modes, tol)));
      },
      py::arg("k"), py::arg("s"), py::arg("z"), py::arg("modes") = 0, py::arg("tol") = 0.0);
  m.def(
      "completed_eval",
      [](int k, cplx s, cplx z, int modes, double tol) {
        return result(fourier_eval_completed(SpectralParam(k, s), PointUHP(z), policy(modes, tol)));
      },
      py::arg("k"), py::arg("s"), py::arg("z"), py::arg("modes") = 0, py::arg("tol") = 0.0);
  m.def(
      "eisenstein_E",
      [](int k, cplx s, cplx z, int modes, double tol) {
        return result(eisenstein_E(SpectralParam(k, s), PointUHP(z), policy(modes, tol)));
      },
      py::arg("k"), py::arg("s"), py::arg("z"), py::arg("modes") = 0, py::arg("tol") = 0.0);
  m.def(
      "lattice_sum_E",
      [](int k, cplx s, cplx z, int radius) {
        TruncationPolicy t;
        t.lattice_radius = radius;
        return result(lattice_sum_E(SpectralParam(k, s), PointUHP(z), t));
      },
      py::arg("k"), py::arg("s"), py::arg("z"), py::arg("radius") = 280);
  m.def(
      "taylor_coeffs",
      [](int k, cplx s0, cplx z, int order, double radius) {
        TruncationPolicy t;
        t.special.cauchy_radius = radius;
        py::list out;
        for (const auto& r : taylor_coeffs(k, s0, PointUHP(z), order, t)) out.append(result(r));
        return out;
      },
      py::arg("k"), py::arg("s0"), py::arg("z"), py::arg("order"), py::arg("radius") = 0.25);
  m.def("fourier_coefficient", [](int k, cplx s, long n) { return fourier_coefficient(SpectralParam(k, s), n); },
        py::arg("k"), py::arg("s"), py::arg("n"));
  m.def("constant_term", [](int k, cplx s, double y) { return constant_term(SpectralParam(k, s), y); },
        py::arg("k"), py::arg("s"), py::arg("y"));
  m.def("completion_factor", &completion_factor, py::arg("k"), py::arg("s"));
  m.def(
      "whittaker_w",
      [](cplx kappa, cplx mu, double y, int order) { return result(sf::whittaker_w({kappa, mu, y, order})); },
      py::arg("kappa"), py::arg("mu"), py::arg("y"), py::arg("order") = 0);
  m.def(
      "expansion_json",
      [](int k, cplx s, int N) { return to_json(eisenstein_expansion(SpectralParam(k, s), N, true)); },
      py::arg("k"), py::arg("s"), py::arg("N"));
  m.def("suite_names", &suite_names);
  m.def(
      "run_suite",
      [](const std::string& name, py::object weight, std::uint64_t seed, int threads, double tol) {
        SuiteOptions o;
        o.seed = seed;
        o.threads = threads;
        o.tol = tol;
        if (!weight.is_none()) {
          o.has_weight = true;
          o.weight = weight.cast<int>();
        }
        std::vector<CheckReport> r;
        {
          py::gil_scoped_release release;
          r = run_suite(name, o);
        }
        py::list out;
        for (const CheckReport& c : r) out.append(report(c));
        return out;
      },
      py::arg("name"), py::arg("weight") = py::none(), py::arg("seed") = 20240611, py::arg("threads") = 0,
      py::arg("tol") = 0.0);
}
