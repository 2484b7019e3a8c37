// pybind11 bindings exposing the main operations.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "screwphase/geometry.hpp"
#include "screwphase/modes.hpp"
#include "screwphase/noise.hpp"
#include "screwphase/phase.hpp"
#include "screwphase/special.hpp"

namespace py = pybind11;
using namespace screwphase;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dirac phases of electrons around a screw dislocation";

    // geometry -------------------------------------------------------------
    py::class_<ScrewDefect>(m, "ScrewDefect")
        .def_static("from_b0", &ScrewDefect::from_b0, py::arg("b0"))
        .def_static("from_beta", &ScrewDefect::from_beta, py::arg("beta"))
        .def_property_readonly("b0", &ScrewDefect::b0)
        .def_property_readonly("beta", &ScrewDefect::beta)
        .def("__repr__", [](const ScrewDefect& d) {
            return "ScrewDefect(b0=" + std::to_string(d.b0()) + ")";
        });

    py::class_<CylPoint>(m, "CylPoint")
        .def(py::init<double, double, double>(), py::arg("rho"), py::arg("phi") = 0.0,
             py::arg("z") = 0.0)
        .def_readwrite("rho", &CylPoint::rho)
        .def_readwrite("phi", &CylPoint::phi)
        .def_readwrite("z", &CylPoint::z);

    py::class_<Metric3>(m, "Metric3")
        .def("at", [](const Metric3& g, int i, int j) { return g.at(i, j); })
        .def("rows", &Metric3::rows)
        .def("__getitem__", [](const Metric3& g, std::pair<int, int> ij) {
            return g.at(ij.first, ij.second);
        });

    py::class_<CylGrid>(m, "CylGrid")
        .def(py::init<double, double, int, int>(), py::arg("rho_min"),
             py::arg("rho_max"), py::arg("n_rho"), py::arg("n_phi"))
        .def_property_readonly("n_rho", &CylGrid::n_rho)
        .def_property_readonly("n_phi", &CylGrid::n_phi)
        .def_property_readonly("h_rho", &CylGrid::h_rho)
        .def_property_readonly("h_phi", &CylGrid::h_phi)
        .def("rho", &CylGrid::rho)
        .def("phi", &CylGrid::phi)
        .def("refined", &CylGrid::refined);

    m.def("metric_tensor", &metric_tensor, py::arg("defect"), py::arg("p"));
    m.def("metric_inverse", &metric_inverse, py::arg("defect"), py::arg("p"));
    m.def("metric_det", &metric_det, py::arg("defect"), py::arg("p"));
    m.def("gauge_potential", &gauge_potential, py::arg("k"), py::arg("defect"),
          py::arg("p"));
    m.def(
        "laplace_beltrami_apply",
        [](const ScrewDefect& defect, const CylGrid& grid,
           const std::vector<std::complex<double>>& field, double k) {
            return laplace_beltrami_apply(defect, grid, field, k);
        },
        py::arg("defect"), py::arg("grid"), py::arg("field"), py::arg("k"));

    // special --------------------------------------------------------------
    m.def("bessel_j", &special::bessel_j, py::arg("nu"), py::arg("x"));
    m.def("lanczos_gamma", &special::lanczos_gamma, py::arg("z"));

    // phase ----------------------------------------------------------------
    py::class_<AngularPath>(m, "AngularPath")
        .def(py::init<std::vector<double>, std::vector<double>, bool>(), py::arg("t"),
             py::arg("phi"), py::arg("cyclic"))
        .def_static("uniform_cycle", &AngularPath::uniform_cycle, py::arg("period"),
                    py::arg("n_steps"), py::arg("phi0") = 0.0)
        .def_property_readonly("t", &AngularPath::t)
        .def_property_readonly("phi", &AngularPath::phi)
        .def_property_readonly("cyclic", &AngularPath::cyclic)
        .def_property_readonly("period", &AngularPath::period);

    py::class_<PhaseResult>(m, "PhaseResult")
        .def_readonly("gamma", &PhaseResult::gamma)
        .def_property_readonly("method", [](const PhaseResult& r) {
            return r.method == PhaseResult::Method::closed_form ? "closed-form"
                                                                : "quadrature";
        });

    m.def("dirac_phase_closed", &dirac_phase_closed, py::arg("k"), py::arg("defect"),
          py::arg("phi0"), py::arg("phi1"));
    m.def(
        "dirac_phase_quadrature",
        [](double k, const std::vector<double>& beta, const AngularPath& path) {
            return dirac_phase_quadrature(k, beta, path);
        },
        py::arg("k"), py::arg("beta_samples"), py::arg("path"));
    m.def("phase_factor", &phase_factor, py::arg("result"));

    // modes ----------------------------------------------------------------
    py::class_<PhysicalConstants>(m, "PhysicalConstants")
        .def(py::init<double, double>(), py::arg("hbar") = 1.0, py::arg("mass") = 1.0)
        .def_readwrite("hbar", &PhysicalConstants::hbar)
        .def_readwrite("mass", &PhysicalConstants::mass);

    py::class_<Mode>(m, "Mode")
        .def_static("make", &Mode::make, py::arg("l"), py::arg("k"), py::arg("kappa"),
                    py::arg("defect"), py::arg("consts") = PhysicalConstants{})
        .def_property_readonly("l", &Mode::l)
        .def_property_readonly("k", &Mode::k)
        .def_property_readonly("kappa", &Mode::kappa)
        .def_property_readonly("nu", &Mode::nu)
        .def_property_readonly("energy", &Mode::energy);

    m.def("mode_eval", &mode_eval, py::arg("mode"), py::arg("defect"), py::arg("consts"),
          py::arg("p"), py::arg("t") = 0.0);
    m.def("pde_residual", &pde_residual, py::arg("mode"), py::arg("defect"),
          py::arg("consts"), py::arg("grid"),
          py::arg("energy_override") = std::optional<double>());

    py::class_<AngularFactorPair>(m, "AngularFactorPair")
        .def_readonly("direct", &AngularFactorPair::direct)
        .def_readonly("factored", &AngularFactorPair::factored)
        .def("extra_phase", &AngularFactorPair::extra_phase);

    m.def("phase_factor_equivalence", &phase_factor_equivalence, py::arg("l"),
          py::arg("k"), py::arg("defect"), py::arg("p"), py::arg("phi0") = 0.0);

    // noise ----------------------------------------------------------------
    py::class_<NoiseConfig>(m, "NoiseConfig")
        .def(py::init<double, double, double, int, std::uint64_t>(), py::arg("D"),
             py::arg("dt"), py::arg("T"), py::arg("dims") = 3,
             py::arg("master_seed") = 0)
        .def_property_readonly("D", &NoiseConfig::D)
        .def_property_readonly("dt", &NoiseConfig::dt)
        .def_property_readonly("T", &NoiseConfig::T)
        .def_property_readonly("dims", &NoiseConfig::dims)
        .def_property_readonly("master_seed", &NoiseConfig::master_seed)
        .def_property_readonly("n_steps", &NoiseConfig::n_steps)
        .def_property_readonly("step_sigma", &NoiseConfig::step_sigma);

    py::class_<NoisePath>(m, "NoisePath")
        .def(py::init<std::vector<double>, long, int>(), py::arg("samples"),
             py::arg("n_steps"), py::arg("dims"))
        .def_property_readonly("n_steps", &NoisePath::n_steps)
        .def_property_readonly("dims", &NoisePath::dims)
        .def("at", [](const NoisePath& p, long j, int c) { return p.at(j, c); })
        .def_property_readonly("samples", &NoisePath::samples);

    py::class_<EnsembleStats>(m, "EnsembleStats")
        .def_readonly("n_traj", &EnsembleStats::n_traj)
        .def_readonly("mean_dgamma", &EnsembleStats::mean_dgamma)
        .def_readonly("m2_dgamma", &EnsembleStats::m2_dgamma)
        .def_readonly("var_dgamma", &EnsembleStats::var_dgamma)
        .def_readonly("se_mean", &EnsembleStats::se_mean)
        .def_readonly("se_m2", &EnsembleStats::se_m2)
        .def_readonly("n_batches", &EnsembleStats::n_batches);

    py::enum_<SweepAxis>(m, "SweepAxis")
        .value("k", SweepAxis::k)
        .value("T", SweepAxis::T)
        .value("D", SweepAxis::D);

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("value", &SweepPoint::value)
        .def_readonly("stats", &SweepPoint::stats)
        .def_readonly("prediction", &SweepPoint::prediction);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("axis", &SweepResult::axis)
        .def_readonly("points", &SweepResult::points)
        .def_readonly("slope", &SweepResult::slope)
        .def_readonly("expected_slope", &SweepResult::expected_slope);

    m.def("sample_noise_path", &sample_noise_path, py::arg("config"),
          py::arg("trajectory_index"));
    m.def(
        "delta_gamma_linear",
        [](double k, const std::vector<double>& dir, const NoisePath& path,
           const NoiseConfig& cfg) { return delta_gamma_linear(k, dir, path, cfg); },
        py::arg("k"), py::arg("b0_dir"), py::arg("path"), py::arg("config"));
    m.def(
        "delta_gamma_exact",
        [](double k, const std::vector<double>& b0, const NoisePath& path,
           const NoiseConfig& cfg) { return delta_gamma_exact(k, b0, path, cfg); },
        py::arg("k"), py::arg("b0"), py::arg("path"), py::arg("config"));
    m.def(
        "ensemble_moments",
        [](double k, const std::vector<double>& b0, const NoiseConfig& cfg, long n_traj,
           bool use_exact, int n_threads) {
            return ensemble_moments(k, b0, cfg, n_traj, use_exact, n_threads);
        },
        py::arg("k"), py::arg("b0"), py::arg("config"), py::arg("n_traj"),
        py::arg("use_exact") = false, py::arg("n_threads") = 0,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "scaling_sweep",
        [](SweepAxis axis, const std::vector<double>& values, double k,
           const std::vector<double>& b0, const NoiseConfig& cfg, long n_traj,
           int n_threads) {
            return scaling_sweep(axis, values, k, b0, cfg, n_traj, n_threads);
        },
        py::arg("axis"), py::arg("values"), py::arg("k"), py::arg("b0"),
        py::arg("config"), py::arg("n_traj"), py::arg("n_threads") = 0,
        py::call_guard<py::gil_scoped_release>());
    m.def("noisy_phase_trajectory", &noisy_phase_trajectory, py::arg("k"),
          py::arg("defect"), py::arg("path"), py::arg("config"), py::arg("angular"));
}
