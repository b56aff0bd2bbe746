// rdgap: Python bindings (module rdgap._rdgap).
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rdgap/gapopt.hpp"
#include "rdgap/io.hpp"
#include "rdgap/random.hpp"
#include "rdgap/rdrc.hpp"
#include "rdgap/simulator.hpp"
#include "rdgap/waterfill.hpp"

namespace py = pybind11;
using namespace rdgap;

namespace {

py::dict report_dict(const SimReport& r) {
  py::dict d;
  d["mode"] = r.mode;
  d["trials"] = r.trials;
  d["mean_distortion"] = r.mean_distortion;
  d["standard_error"] = r.standard_error;
  d["analytic_target"] = r.analytic_target;
  d["per_trial"] = r.per_trial;
  d["warnings"] = r.warnings;
  d["codebook_size"] = r.codebook_size;
  d["mean_tau"] = r.mean_tau;
  d["zero_fallbacks"] = r.zero_fallbacks;
  d["successes"] = r.successes;
  d["draws"] = r.draws;
  d["p_hat"] = r.p_hat;
  d["wilson"] = py::make_tuple(r.wilson_low, r.wilson_high);
  d["exponent_bits"] = r.exponent_bits ? py::cast(*r.exponent_bits) : py::none();
  d["exponent_lower_bound"] = r.exponent_lower_bound;
  return d;
}

}  // namespace

PYBIND11_MODULE(_rdgap, m) {
  m.doc() = "Waterfilling and random-coding rate-distortion curves, universality gap, simulator";
  m.attr("__version__") = kVersion;
  m.attr("generator") = kGeneratorName;

  py::class_<Spectrum>(m, "Spectrum")
      .def_static("from_eigenvalues", [](const std::vector<double>& raw) { return Spectrum::from_eigenvalues(raw); })
      .def_static("from_levels",
                  [](const std::vector<double>& v, const std::vector<double>& w) { return Spectrum::from_levels(v, w); },
                  py::arg("values"), py::arg("weights"))
      .def_static("flat", &Spectrum::flat)
      .def_static("semi_flat", &Spectrum::semi_flat, py::arg("active_fraction"))
      .def_static("sample_random", &Spectrum::sample_random, py::arg("k"), py::arg("seed"))
      .def_static("parse", [](const std::string& text) { return parse_spectrum(text); })
      .def_property_readonly("values", &Spectrum::values)
      .def_property_readonly("weights", &Spectrum::weights)
      .def("__len__", &Spectrum::size)
      .def("__eq__", [](const Spectrum& a, const Spectrum& b) { return a == b; })
      .def("to_literal", &Spectrum::to_literal)
      .def("__repr__", [](const Spectrum& s) { return "Spectrum('" + s.to_literal() + "')"; });

  m.def("merge_close", &merge_close, py::arg("spectrum"), py::arg("tol"));

  m.def("d_wf", [](const Spectrum& s, double t) { return d_wf(s, t); });
  m.def("r_wf", [](const Spectrum& s, double t) { return r_wf(s, t); });
  m.def("t_for_distortion", [](const Spectrum& s, double d) { return t_for_distortion(s, d); });
  m.def("rr_wf", [](const Spectrum& s, double d) { return rr_wf(s, d); });
  m.def("dd_wf", [](const Spectrum& s, double r) { return dd_wf(s, r); });
  m.def("per_coord_distortions", [](const Spectrum& s, double t) { return per_coord_distortions(s, t); });

  m.def("d_rc", [](const Spectrum& s, double T) { return d_rc(s, T); });
  m.def("r_rc", [](const Spectrum& s, double T) { return r_rc(s, T); });
  m.def("t_rc_for_rate", [](const Spectrum& s, double r) { return t_rc_for_rate(s, r); });
  m.def("t_rc_for_distortion", [](const Spectrum& s, double d) { return t_rc_for_distortion(s, d); });
  m.def("rr_rc", [](const Spectrum& s, double d) { return rr_rc(s, d); });
  m.def("dd_rc", [](const Spectrum& s, double r) { return dd_rc(s, r); });
  m.def("quantize_tau", &quantize_tau, py::arg("tau"), py::arg("w_inf_norm"), py::arg("delta"));

  py::class_<GapRecord>(m, "GapRecord")
      .def_readonly("spectrum", &GapRecord::spectrum)
      .def_readonly("d_star", &GapRecord::d_star)
      .def_readonly("rate_wf_bits", &GapRecord::rate_wf_bits)
      .def_readonly("rate_rc_bits", &GapRecord::rate_rc_bits)
      .def_readonly("gap_bits", &GapRecord::gap_bits)
      .def_readonly("level_t", &GapRecord::level_t)
      .def_readonly("level_T", &GapRecord::level_T);

  m.def("gap_at", &gap_at, py::arg("spectrum"), py::arg("d_star"));
  m.def(
      "maximize_gap",
      [](double d, int k_max, std::uint64_t seed, int restarts_per_k) {
        SearchConfig cfg;
        cfg.seed = seed;
        cfg.restarts_per_k = restarts_per_k;
        return maximize_gap(d, k_max, cfg).best;
      },
      py::arg("d_star"), py::arg("k_max") = 5, py::arg("seed") = 1, py::arg("restarts_per_k") = 16);
  m.def(
      "sweep_csv",
      [](const std::vector<double>& grid, int k_max, std::uint64_t seed, int restarts_per_k) {
        SearchConfig cfg;
        cfg.seed = seed;
        cfg.restarts_per_k = restarts_per_k;
        py::gil_scoped_release release;
        return sweep_csv(sweep(grid, k_max, cfg));
      },
      py::arg("grid"), py::arg("k_max") = 5, py::arg("seed") = 1, py::arg("restarts_per_k") = 16);

  m.def("haar_orthogonal", &haar_orthogonal, py::arg("n"), py::arg("seed"));
  m.def(
      "simulate_scheme",
      [](const Spectrum& s, std::size_t n, double rate, std::size_t trials, std::uint64_t seed,
         const std::string& rotation, std::optional<double> tau_delta, std::optional<double> tau_threshold) {
        SimConfig c;
        c.spectrum = s;
        c.n = n;
        c.rate_bits = rate;
        c.trials = trials;
        c.seed = seed;
        c.rotation = rotation_from_string(rotation);
        c.tau_delta = tau_delta;
        c.tau_threshold = tau_threshold;
        return report_dict(run_universal_scheme(c));
      },
      py::arg("spectrum"), py::arg("n"), py::arg("rate"), py::arg("trials") = 1000, py::arg("seed") = 1,
      py::arg("rotation") = "identity", py::arg("tau_delta") = py::none(), py::arg("tau_threshold") = py::none());
  m.def(
      "simulate_success",
      [](const Spectrum& s, std::size_t n, double rate, double eta, std::size_t draws, std::size_t w_batches,
         std::uint64_t seed) {
        SimConfig c;
        c.spectrum = s;
        c.n = n;
        c.rate_bits = rate;
        c.eta = eta;
        c.trials = draws;
        c.w_batches = w_batches;
        c.seed = seed;
        return report_dict(estimate_codeword_success(c));
      },
      py::arg("spectrum"), py::arg("n"), py::arg("rate"), py::arg("eta") = 0.05, py::arg("draws") = 1000,
      py::arg("w_batches") = 1, py::arg("seed") = 1);
  m.def(
      "simulate_coupling",
      [](const Spectrum& s, double t, std::size_t n, std::size_t trials, std::uint64_t seed) {
        return report_dict(simulate_wf_coupling(s, t, n, trials, seed));
      },
      py::arg("spectrum"), py::arg("t"), py::arg("n"), py::arg("trials") = 1000, py::arg("seed") = 1);
  m.def(
      "simulate_filter",
      [](const Spectrum& s, double T, std::size_t n, std::size_t trials, std::uint64_t seed,
         const std::string& rotation) {
        return report_dict(simulate_mmse_filter(s, T, n, trials, seed, rotation_from_string(rotation)));
      },
      py::arg("spectrum"), py::arg("T"), py::arg("n"), py::arg("trials") = 1000, py::arg("seed") = 1,
      py::arg("rotation") = "identity");
}
