#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "larmor/angular.hpp"
#include "larmor/armphase.hpp"
#include "larmor/clock.hpp"
#include "larmor/errors.hpp"
#include "larmor/harness/config.hpp"
#include "larmor/harness/output.hpp"
#include "larmor/harness/sweep.hpp"
#include "larmor/pumpprobe.hpp"
#include "larmor/saddle.hpp"
#include "larmor/units.hpp"
#include "larmor/version.hpp"

namespace py = pybind11;
using namespace larmor;
using harness::json;

namespace {

angular::HalfInt half(double x) {
  const double twice = std::round(2.0 * x);
  if (std::abs(twice - 2.0 * x) > 1e-9) throw std::invalid_argument("angular momenta must be integer or half-integer");
  return angular::HalfInt::from_twice(static_cast<int>(twice));
}

pulse::PulseSpec make_pulse(double field, double omega, const std::string& envelope, const std::string& helicity) {
  return {field, omega, pulse::envelope_from_string(envelope), pulse::helicity_from_string(helicity)};
}

// preset name, path to a channel file, or {"lower": ..., "upper": ...}
atomic::ChannelPair make_channels(const py::object& channels) {
  if (py::isinstance<py::str>(channels)) {
    const auto s = channels.cast<std::string>();
    if (s == "krypton" || s == "hydrogen") return harness::channels_from_json(json{{"preset", s}});
    return harness::channels_from_json(json(s));
  }
  const auto text = py::module_::import("json").attr("dumps")(channels).cast<std::string>();
  return harness::channels_from_json(json::parse(text));
}

py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_python(const py::object& o) {
  if (py::isinstance<py::str>(o)) return json::parse(o.cast<std::string>());
  return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_larmorclock, m) {
  m.doc() = "Spin-orbit Larmor clock: strong-field and one-photon ionisation delays";
  m.attr("__version__") = std::string(version());

  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);
  py::register_exception<BranchCutError>(m, "BranchCutError", PyExc_RuntimeError);

  m.def(
      "wigner3j",
      [](double j1, double j2, double j3, double m1, double m2, double m3) {
        return angular::wigner3j(half(j1), half(j2), half(j3), half(m1), half(m2), half(m3));
      },
      py::arg("j1"), py::arg("j2"), py::arg("j3"), py::arg("m1"), py::arg("m2"), py::arg("m3"));
  m.def(
      "clebsch_gordan",
      [](double j1, double m1, double j2, double m2, double J, double M) {
        return angular::clebsch_gordan(half(j1), half(m1), half(j2), half(m2), half(J), half(M));
      },
      "<J M | j1 m1, j2 m2>", py::arg("j1"), py::arg("m1"), py::arg("j2"), py::arg("m2"), py::arg("J"), py::arg("M"));

  m.def(
      "solve_saddle",
      [](double field, double omega, double px, double py_, double ip, const std::string& envelope,
         const std::string& helicity) {
        const auto s = make_pulse(field, omega, envelope, helicity);
        const auto sol = saddle::solve_saddle(s, {px, py_}, ip);
        py::dict d;
        d["ts"] = sol.ts;
        d["tau_T"] = sol.tau_T;
        d["r0"] = py::make_tuple(sol.r0.x, sol.r0.y);
        d["residual"] = sol.residual;
        return d;
      },
      py::arg("field"), py::arg("omega"), py::arg("px"), py::arg("py"), py::arg("ip"), py::arg("envelope") = "flat",
      py::arg("helicity") = "right");
  m.def(
      "characteristic_momentum",
      [](double field, double omega, double ip) { return saddle::characteristic_momentum({field, omega}, ip); },
      py::arg("field"), py::arg("omega"), py::arg("ip"));
  m.def(
      "keldysh_gamma", [](double field, double omega, double ip) { return saddle::keldysh_gamma({field, omega}, ip); },
      py::arg("field"), py::arg("omega"), py::arg("ip"));

  m.def(
      "compute_phases",
      [](double field, double omega, const py::object& channels, py::object p, const std::string& envelope,
         const std::string& helicity) {
        const auto s = make_pulse(field, omega, envelope, helicity);
        const auto pair = make_channels(channels);
        const Vec2 mom = p.is_none() ? Vec2{saddle::characteristic_momentum(s, pair.mean_ip()), 0.0}
                                     : Vec2{p.cast<std::pair<double, double>>().first,
                                            p.cast<std::pair<double, double>>().second};
        const auto b = armphase::compute_phases(s, pair, mom);
        const auto d = clock::extract_times(b.phi_c, b.phi_d, pair.splitting());
        py::dict out;
        out["p"] = py::make_tuple(mom.x, mom.y);
        out["dphi_c"] = b.phi_c;
        out["dphi_d"] = b.phi_d;
        out["xi_so"] = b.xi_so;
        out["under_barrier_c"] = b.under_barrier_c;
        out["dphi_c_dIp"] = b.dphi_c_dip;
        out["tau_si_as"] = units::au_to_as(d.tau_si);
        out["tau_eh_as"] = units::au_to_as(d.tau_eh);
        out["converged"] = b.converged;
        return out;
      },
      py::arg("field"), py::arg("omega"), py::arg("channels") = "krypton", py::arg("p") = py::none(),
      py::arg("envelope") = "flat", py::arg("helicity") = "right");
  m.def("xi_so", &armphase::xi_so, py::arg("field"), py::arg("ip"), py::arg("l"));
  m.def("xi_so_numeric", &armphase::xi_so_numeric, py::arg("field"), py::arg("ip"), py::arg("l"));
  m.def("tunnelling_limit_phases", &armphase::tunnelling_limit_phases, py::arg("field"), py::arg("ip"), py::arg("dE"));

  m.def(
      "one_photon_rotation", [](Complex r3, Complex r1) { return clock::one_photon_rotation({r3, r1}); },
      py::arg("r3"), py::arg("r1"));
  m.def(
      "one_photon_rotation_tangent", [](Complex r3, Complex r1) { return clock::one_photon_rotation_tangent({r3, r1}); },
      py::arg("r3"), py::arg("r1"));
  m.def("calibrated_rotation", &clock::calibrated_rotation, py::arg("tau_ws"), py::arg("dE"), py::arg("ratio"));
  m.def("wigner_smith_delay", &clock::wigner_smith_delay, py::arg("phase"), py::arg("E"), py::arg("h"));
  m.def(
      "hole_spin_rotation",
      [](Complex t3, Complex t1, double dE, double t, bool accumulated) {
        return clock::hole_spin_rotation({t3, t1}, dE, t,
                                         accumulated ? clock::AngleMode::Accumulated : clock::AngleMode::Wrapped);
      },
      py::arg("t3"), py::arg("t1"), py::arg("dE"), py::arg("t"), py::arg("accumulated") = false);
  m.def(
      "extract_times",
      [](double dphi_c, double dphi_d, double dE) {
        const auto d = clock::extract_times(dphi_c, dphi_d, dE);
        return py::make_tuple(d.tau_si, d.tau_eh);
      },
      "(tau_SI, tau_eh) in atomic units", py::arg("dphi_c"), py::arg("dphi_d"), py::arg("dE"));
  m.def("attoclock_offset", &clock::attoclock_offset, py::arg("tau_si"), py::arg("omega"));

  m.def("pathway_factor", &pumpprobe::pathway_factor);
  m.def(
      "population",
      [](Complex A1, Complex A3, Complex background, double dE, double tau) {
        return pumpprobe::population(A1, A3, background, dE, tau);
      },
      py::arg("A1"), py::arg("A3"), py::arg("background"), py::arg("dE"), py::arg("tau"));
  m.def(
      "pathway_amplitudes",
      [](Complex T1, Complex T3, Complex T3_up, double omega3, double dE, double center, double bandwidth,
         double d_half, double d_threehalf) {
        const auto probe = pumpprobe::ProbeSpec::tuned(center, bandwidth, omega3, dE, d_half, d_threehalf);
        const auto a = pumpprobe::pathway_amplitudes({T1, T3, T3_up}, probe);
        return py::make_tuple(a.A1, a.A3, a.A3_background);
      },
      py::arg("T1"), py::arg("T3"), py::arg("T3_up"), py::arg("omega3"), py::arg("dE"), py::arg("center"),
      py::arg("bandwidth") = INFINITY, py::arg("d_half") = 1.0, py::arg("d_threehalf") = 1.0);
  m.def(
      "recover_phase",
      [](const std::vector<double>& tau, const std::vector<double>& w, double dE) {
        if (tau.size() != w.size()) throw std::invalid_argument("tau and w differ in length");
        std::vector<pumpprobe::TraceSample> s;
        for (std::size_t i = 0; i < tau.size(); ++i) s.push_back({tau[i], w[i]});
        const auto fit = pumpprobe::recover_phase(s, dE);
        py::dict d;
        d["dphi13"] = fit.dphi13;
        d["contrast"] = fit.contrast;
        d["offset"] = fit.offset;
        d["amplitude"] = fit.amplitude;
        return d;
      },
      py::arg("tau"), py::arg("w"), py::arg("dE"));

  m.def(
      "convert_units",
      [](double x, const std::string& from, const std::string& to) {
        return units::convert_units(x, units::unit_from_string(from), units::unit_from_string(to));
      },
      py::arg("x"), py::arg("from_unit"), py::arg("to_unit"));

  m.def(
      "run_sweep",
      [](const py::object& config, const std::string& base_dir, bool use_cache, const std::string& cache_dir,
         int threads) {
        const auto cfg = harness::parse_config(from_python(config), base_dir);
        harness::SweepResult res;
        {
          py::gil_scoped_release release;
          res = harness::run_sweep(cfg, {use_cache, cache_dir, threads});
        }
        return to_python(harness::result_to_json(res));
      },
      "Run a sweep from a config (dict or JSON text); returns rows, trace and summary as a dict",
      py::arg("config"), py::arg("base_dir") = ".", py::arg("use_cache") = false, py::arg("cache_dir") = "",
      py::arg("threads") = 0);
}
