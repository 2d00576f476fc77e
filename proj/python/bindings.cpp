/// pybind11 bindings. Fields cross the boundary as 1-D float64 arrays on the
/// grid [-length/2, length/2) with n points.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "bbmlab/errors.hpp"
#include "bbmlab/evolve.hpp"
#include "bbmlab/harness/commands.hpp"
#include "bbmlab/harness/identity.hpp"
#include "bbmlab/initial_data.hpp"
#include "bbmlab/invariants.hpp"
#include "bbmlab/limit_lab.hpp"
#include "bbmlab/spectral.hpp"
#include "bbmlab/symbols.hpp"

namespace py = pybind11;
using namespace bbmlab;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Field to_field(const Array& values, double length) {
    if (values.ndim() != 1) throw InputError("expected a 1-D array of samples");
    const auto grid = make_grid(static_cast<std::size_t>(values.size()), length);
    return Field::from_physical(grid, std::vector<double>(values.data(), values.data() + values.size()));
}

Array to_array(const Field& f) {
    Array out(static_cast<py::ssize_t>(f.physical().size()));
    std::copy(f.physical().begin(), f.physical().end(), out.mutable_data());
    return out;
}

Array stack(const Trace& trace) {
    const auto n = trace.empty() ? 0 : trace.front().field.physical().size();
    Array out({static_cast<py::ssize_t>(trace.size()), static_cast<py::ssize_t>(n)});
    auto* dst = out.mutable_data();
    for (const auto& snap : trace) dst = std::copy(snap.field.physical().begin(), snap.field.physical().end(), dst);
    return out;
}

std::vector<double> times_of(const Trace& trace) {
    std::vector<double> t;
    for (const auto& snap : trace) t.push_back(snap.time);
    return t;
}

Trace to_trace(const std::vector<double>& times, const Array& fields, double length) {
    if (fields.ndim() != 2 || static_cast<std::size_t>(fields.shape(0)) != times.size()) {
        throw InputError("fields must have shape (len(times), n)");
    }
    const auto grid = make_grid(static_cast<std::size_t>(fields.shape(1)), length);
    Trace trace;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double* row = fields.data() + i * fields.shape(1);
        trace.push_back({times[i], Field::from_physical(grid, std::vector<double>(row, row + fields.shape(1)))});
    }
    return trace;
}

DispersionModel model_for(std::optional<double> eps) {
    return eps ? DispersionModel::bbm(*eps) : DispersionModel::kdv();
}

}  // namespace

PYBIND11_MODULE(_bbmlab, m) {
    m.doc() = "Pseudo-spectral BBM_eps and KdV solvers with convergence diagnostics";
    m.attr("__version__") = harness::version();

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<InterpolationError>(m, "InterpolationError", base.ptr());
    py::register_exception<InsufficientDataError>(m, "InsufficientDataError", base.ptr());
    py::register_exception<BlowUpError>(m, "BlowUpError", base.ptr());

    m.def("grid_points", [](std::size_t n, double length) { return make_grid(n, length).points(); },
          py::arg("n"), py::arg("length"), "Grid points of the periodic grid [-length/2, length/2).");

    m.def("symbol", [](std::optional<double> eps, double xi) { return symbol(model_for(eps), xi); },
          py::arg("eps"), py::arg("xi"), "s_eps(xi); eps=None selects KdV.");
    m.def("resonance_gap", [](std::optional<double> eps, double xi) { return resonance_gap(model_for(eps), xi); },
          py::arg("eps"), py::arg("xi"));
    m.def("inflection_points",
          [](double eps) {
              const auto p = inflection_points(DispersionModel::bbm(eps));
              return py::make_tuple(p.second_derivative_zeros, p.third_derivative_zeros);
          },
          py::arg("eps"), "Zeros of s_eps'' and s_eps'''.");

    m.def("sech2", [](std::size_t n, double length, double amplitude, double width, double center) {
              return to_array(generate(Sech2Data{amplitude, width, center}, make_grid(n, length)));
          },
          py::arg("n"), py::arg("length"), py::arg("amplitude") = 1.0, py::arg("width") = 1.0, py::arg("center") = 0.0);
    m.def("soliton", [](std::size_t n, double length, double speed, double center, double t) {
              const auto g = make_grid(n, length);
              return to_array(Field::from_function(g, [&](double x) { return soliton_profile(speed, center, x, t); }));
          },
          py::arg("n"), py::arg("length"), py::arg("speed") = 1.0, py::arg("center") = 0.0, py::arg("t") = 0.0);

    m.def("conserved",
          [](const Array& u, double length, std::optional<double> eps) {
              const auto c = conserved(to_field(u, length), model_for(eps));
              return py::make_tuple(c.e0, c.e1, c.e2);
          },
          py::arg("u"), py::arg("length"), py::arg("eps"), "(E0, E1, E2) of one snapshot.");
    m.def("sobolev_norm", [](const Array& u, double length, double s) { return sobolev_norm(to_field(u, length), s); },
          py::arg("u"), py::arg("length"), py::arg("s"));

    m.def("evolve",
          [](const Array& u0, double length, std::optional<double> eps, double T, double dt, int record_every,
             bool dealias) {
              StepperConfig cfg;
              cfg.dt = dt;
              cfg.record_every = record_every;
              cfg.dealias = dealias;
              EvolutionResult run = [&] {
                  py::gil_scoped_release release;
                  return evolve_to({model_for(eps), 0.0, to_field(u0, length), 0}, T, cfg);
              }();
              const auto drift = drift_report(run.invariant_log);
              py::dict out;
              out["times"] = times_of(run.trace);
              out["fields"] = stack(run.trace);
              out["drift"] = py::make_tuple(drift.e0, drift.e1, drift.e2);
              out["warnings"] = run.warnings;
              return out;
          },
          py::arg("u0"), py::arg("length"), py::arg("eps"), py::arg("T"), py::arg("dt") = 1e-3,
          py::arg("record_every") = 10, py::arg("dealias") = true,
          "Evolves u0 to time T; returns times, fields (one row per snapshot), drift and warnings.");

    m.def("duhamel_residual",
          [](const std::vector<double>& times, const Array& fields, double length, std::optional<double> eps) {
              return duhamel_residual(to_trace(times, fields, length), model_for(eps));
          },
          py::arg("times"), py::arg("fields"), py::arg("length"), py::arg("eps"));

    m.def("run_pair",
          [](double eps, double T, std::size_t n, double length, double dt, int record_every) {
              SweepConfig cfg;
              cfg.eps_list = {eps};
              cfg.T = T;
              cfg.n = n;
              cfg.length = length;
              cfg.dt = dt;
              cfg.record_every = record_every;
              ErrorTrace trace;
              {
                  py::gil_scoped_release release;
                  trace = run_pair(eps, cfg);
              }
              std::vector<double> t, e;
              for (const auto& s : trace) {
                  t.push_back(s.time);
                  e.push_back(s.error);
              }
              return py::make_tuple(t, e);
          },
          py::arg("eps"), py::arg("T") = 0.5, py::arg("n") = 2048, py::arg("length") = 80.0, py::arg("dt") = 1e-3,
          py::arg("record_every") = 10, "(times, L2 errors) of BBM_eps against KdV from sech^2 data.");

    m.def("fit_power_law",
          [](const std::vector<std::pair<double, double>>& pairs) {
              const auto f = fit_power_law(pairs);
              py::dict out;
              out["slope"] = f.slope;
              out["intercept"] = f.intercept;
              out["r_squared"] = f.r_squared;
              return out;
          },
          py::arg("pairs"), "Least-squares line through (log eps, log error).");

    m.def("rescale_to_physical",
          [](const std::vector<double>& times, const Array& fields, double length, double alpha) {
              const auto u = rescale_to_physical(to_trace(times, fields, length), alpha);
              return py::make_tuple(times_of(u), stack(u), u.front().field.grid().length());
          },
          py::arg("times"), py::arg("fields"), py::arg("length"), py::arg("alpha"),
          "Normalized-frame map; returns (times, fields, physical length).");
    m.def("unscale_to_rescaled",
          [](const std::vector<double>& times, const Array& fields, double length, double eps) {
              const auto w = unscale_to_rescaled(to_trace(times, fields, length), eps);
              return py::make_tuple(times_of(w), stack(w), w.front().field.grid().length());
          },
          py::arg("times"), py::arg("fields"), py::arg("length"), py::arg("eps"));

    m.def("strichartz_ratio",
          [](double eps, double q, double r, int ensemble_size, std::uint64_t seed, std::size_t n, double length,
             int samples) {
              StrichartzConfig cfg;
              cfg.n = n;
              cfg.length = length;
              cfg.samples = samples;
              py::gil_scoped_release release;
              return strichartz_ratio(eps, q, r, ensemble_size, seed, cfg);
          },
          py::arg("eps"), py::arg("q") = 18.0, py::arg("r") = 3.0, py::arg("ensemble_size") = 100,
          py::arg("seed") = 0, py::arg("n") = 1024, py::arg("length") = StrichartzConfig{}.length,
          py::arg("samples") = 401);

    m.def("identity_check",
          [](std::uint64_t seed, long samples) {
              const auto report = harness::run_identity_check(seed, samples);
              py::dict out;
              for (const auto& id : report.identities) {
                  py::dict entry;
                  entry["max_residual"] = id.max_residual;
                  entry["tolerance"] = id.tolerance;
                  entry["pass"] = id.pass();
                  out[py::str(id.name)] = entry;
              }
              return out;
          },
          py::arg("seed") = 0, py::arg("samples") = 10000, "Max residual per closed-form symbol identity.");
}
