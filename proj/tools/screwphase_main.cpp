// Command-line front end: metric tables, Dirac phases, mode residual
// checks, noise Monte Carlo and scaling sweeps, with a JSON config file,
// CSV/JSON outputs and deterministic seeding.
//
// Exit codes: 0 success, 1 numerical/statistical check failure,
// 2 usage/validation error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "screwphase/geometry.hpp"
#include "screwphase/modes.hpp"
#include "screwphase/noise.hpp"
#include "screwphase/phase.hpp"

using json = nlohmann::ordered_json;
using namespace screwphase;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything a run can configure. Flags override config-file values
/// override these defaults.
struct Options {
    // shared
    std::string config_path;
    std::string output_path;
    std::string format = "csv";
    std::uint64_t seed = 0;
    int threads = 0;
    bool deterministic = false;
    // defect
    double b0 = 1.0;
    // constants
    double hbar = 1.0;
    double mass = 1.0;
    // noise
    double D = 0.5;
    double dt = 1e-3;
    double T = 1.0;
    int dims = 3;
    // mode
    int l = 0;
    double k = 1.0;
    double kappa = 1.0;
    // grid
    double rho_min = 0.5;
    double rho_max = 10.0;
    int n_rho = 201;
    int n_phi = 64;
    // sweep
    std::string axis = "k";
    std::vector<double> values;
    long n_traj = 10000;
    // command-specific extras
    double rho = std::numeric_limits<double>::quiet_NaN();  // metric: single point
    double beta_flag = std::numeric_limits<double>::quiet_NaN();
    double phi0 = 0.0;
    double phi1 = kTwoPi;
    int quad_n = 1000;
    double threshold = 5e-4;
    double energy_scale = 1.0;
    bool use_exact = false;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&tt));
    return buf;
}

// ---------------------------------------------------------------------------
// config file

const std::map<std::string, std::set<std::string>>& config_schema() {
    static const std::map<std::string, std::set<std::string>> schema = {
        {"defect", {"b0"}},
        {"constants", {"hbar", "mass"}},
        {"noise", {"D", "dt", "T", "dims"}},
        {"mode", {"l", "k", "kappa"}},
        {"grid", {"rho_min", "rho_max", "n_rho", "n_phi"}},
        {"sweep", {"axis", "values", "n_traj"}},
    };
    return schema;
}

void apply_config_file(const std::string& path, Options& o,
                       const std::set<std::string>& flag_overrides) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("config file must hold a JSON object");

    const auto& schema = config_schema();
    for (const auto& [key, block] : j.items()) {
        const auto it = schema.find(key);
        if (it == schema.end()) throw ValidationError("unknown config key: " + key);
        if (!block.is_object())
            throw ValidationError("config key must hold an object: " + key);
        for (const auto& [sub, val] : block.items()) {
            (void)val;
            if (!it->second.count(sub))
                throw ValidationError("unknown config key: " + key + "." + sub);
        }
    }

    const auto overridden = [&](const std::string& name) {
        return flag_overrides.count(name) > 0;
    };
    const auto get = [&](const char* blk, const char* name, auto& target) {
        if (j.contains(blk) && j[blk].contains(name) &&
            !overridden(std::string(blk) + "." + name))
            target = j[blk][name].get<std::decay_t<decltype(target)>>();
    };
    get("defect", "b0", o.b0);
    get("constants", "hbar", o.hbar);
    get("constants", "mass", o.mass);
    get("noise", "D", o.D);
    get("noise", "dt", o.dt);
    get("noise", "T", o.T);
    get("noise", "dims", o.dims);
    get("mode", "l", o.l);
    get("mode", "k", o.k);
    get("mode", "kappa", o.kappa);
    get("grid", "rho_min", o.rho_min);
    get("grid", "rho_max", o.rho_max);
    get("grid", "n_rho", o.n_rho);
    get("grid", "n_phi", o.n_phi);
    get("sweep", "axis", o.axis);
    get("sweep", "values", o.values);
    get("sweep", "n_traj", o.n_traj);
}

json effective_config(const Options& o) {
    json cfg;
    cfg["defect"] = {{"b0", o.b0}};
    cfg["constants"] = {{"hbar", o.hbar}, {"mass", o.mass}};
    cfg["noise"] = {{"D", o.D}, {"dt", o.dt}, {"T", o.T}, {"dims", o.dims}};
    cfg["mode"] = {{"l", o.l}, {"k", o.k}, {"kappa", o.kappa}};
    cfg["grid"] = {{"rho_min", o.rho_min},
                   {"rho_max", o.rho_max},
                   {"n_rho", o.n_rho},
                   {"n_phi", o.n_phi}};
    cfg["sweep"] = {{"axis", o.axis}, {"values", o.values}, {"n_traj", o.n_traj}};
    // worker count never affects results, so it stays out of the provenance echo
    cfg["seed"] = o.seed;
    return cfg;
}

// ---------------------------------------------------------------------------
// output plumbing

class Output {
public:
    explicit Output(const Options& o) : opts_(o) {
        if (!o.output_path.empty()) {
            file_.open(o.output_path, std::ios::binary);  // LF endings everywhere
            if (!file_) throw ValidationError("cannot open output file: " + o.output_path);
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

    void write_csv(const std::string& command, const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows) {
        auto& os = stream();
        os << "# screwphase " << command << "\n";
        os << "# config: " << effective_config(opts_).dump() << "\n";
        if (!opts_.deterministic) os << "# generated: " << iso_timestamp() << "\n";
        for (std::size_t i = 0; i < header.size(); ++i)
            os << header[i] << (i + 1 < header.size() ? "," : "\n");
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << fmt17(row[i]) << (i + 1 < row.size() ? "," : "\n");
        }
        os.flush();
    }

    void write_json(const std::string& command, json results) {
        json doc;
        doc["command"] = command;
        doc["config"] = effective_config(opts_);
        if (!opts_.deterministic) doc["timestamp"] = iso_timestamp();
        doc["results"] = std::move(results);
        stream() << doc.dump(2) << "\n";
        stream().flush();
    }

private:
    const Options& opts_;
    std::ofstream file_;
};

// ---------------------------------------------------------------------------
// commands

ScrewDefect defect_from(const Options& o) {
    if (!std::isnan(o.beta_flag)) return ScrewDefect::from_beta(o.beta_flag);
    if (!(o.b0 >= 0.0)) throw ValidationError("b0 must be non-negative");
    return ScrewDefect::from_b0(o.b0);
}

int run_metric(const Options& o) {
    const auto defect = defect_from(o);
    std::vector<double> rhos;
    if (!std::isnan(o.rho)) {
        if (!(o.rho > 0.0)) throw ValidationError("rho must be positive");
        rhos.push_back(o.rho);
    } else {
        if (!(o.rho_min > 0.0)) throw ValidationError("rho_min must be positive");
        if (!(o.rho_max > o.rho_min)) throw ValidationError("rho_max must exceed rho_min");
        if (o.n_rho < 2) throw ValidationError("n_rho must be at least 2");
        const double h = (o.rho_max - o.rho_min) / (o.n_rho - 1);
        for (int i = 0; i < o.n_rho; ++i) rhos.push_back(o.rho_min + h * i);
    }

    std::vector<std::vector<double>> rows;
    json points = json::array();
    for (double rho : rhos) {
        const CylPoint p{rho, 0.0, 0.0};
        const auto g = metric_tensor(defect, p);
        const double det = metric_det(defect, p);
        rows.push_back({rho, g(0, 0), g(1, 1), g(1, 2), g(2, 2), det});
        if (o.format == "json") {
            const auto inv = metric_inverse(defect, p);
            points.push_back({{"rho", rho},
                              {"g", g.rows()},
                              {"g_inv", inv.rows()},
                              {"det", det}});
        }
    }

    Output out(o);
    if (o.format == "json")
        out.write_json("metric", {{"points", points}});
    else
        out.write_csv("metric", {"rho", "g_rr", "g_pp", "g_pz", "g_zz", "det"}, rows);
    return 0;
}

int run_phase(const Options& o) {
    const auto defect = defect_from(o);
    const auto closed = dirac_phase_closed(o.k, defect, o.phi0, o.phi1);
    const auto closed_factor = phase_factor(closed);

    std::vector<std::vector<double>> rows;
    rows.push_back({0.0, closed.gamma, closed_factor.real(), closed_factor.imag()});
    json results;
    results["closed"] = {{"gamma", closed.gamma},
                         {"factor_re", closed_factor.real()},
                         {"factor_im", closed_factor.imag()}};

    if (o.quad_n > 0) {
        std::vector<double> t(o.quad_n + 1), phi(o.quad_n + 1);
        const bool cyclic = std::abs(o.phi1 - o.phi0 - kTwoPi) <= 1e-12;
        for (int j = 0; j <= o.quad_n; ++j) {
            const double frac = static_cast<double>(j) / o.quad_n;
            t[j] = frac;
            phi[j] = o.phi0 + (o.phi1 - o.phi0) * frac;
        }
        const AngularPath path(std::move(t), std::move(phi), cyclic);
        const std::vector<double> beta(path.n_samples(), defect.beta());
        const auto quad = dirac_phase_quadrature(o.k, beta, path);
        const auto quad_factor = phase_factor(quad);
        rows.push_back({1.0, quad.gamma, quad_factor.real(), quad_factor.imag()});
        results["quadrature"] = {{"gamma", quad.gamma},
                                 {"factor_re", quad_factor.real()},
                                 {"factor_im", quad_factor.imag()},
                                 {"n_samples", o.quad_n + 1}};
    }

    Output out(o);
    if (o.format == "json")
        out.write_json("phase", results);
    else
        out.write_csv("phase", {"method", "gamma", "factor_re", "factor_im"}, rows);
    return 0;
}

int run_mode_check(const Options& o) {
    const auto defect = defect_from(o);
    if (!(o.hbar > 0.0)) throw ValidationError("hbar must be positive");
    if (!(o.mass > 0.0)) throw ValidationError("mass must be positive");
    if (!(o.kappa >= 0.0)) throw ValidationError("kappa must be non-negative");
    if (!(o.threshold > 0.0)) throw ValidationError("threshold must be positive");
    const PhysicalConstants pc{o.hbar, o.mass};
    const auto mode = Mode::make(o.l, o.k, o.kappa, defect, pc);
    const CylGrid coarse(o.rho_min, o.rho_max, o.n_rho, o.n_phi);

    std::optional<double> trial;
    if (o.energy_scale != 1.0) trial = mode.energy() * o.energy_scale;
    const double r_coarse = pde_residual(mode, defect, pc, coarse, trial);
    const double r_fine = pde_residual(mode, defect, pc, coarse.refined(), trial);
    const double ratio = r_fine / r_coarse;
    // an exact discrete solution sits at the roundoff floor on both grids;
    // the refinement ratio only means something above the threshold scale
    const bool at_floor = r_coarse < o.threshold && r_fine < o.threshold;
    const bool converged = (ratio >= 0.2 && ratio <= 0.3) || at_floor;
    const bool below = r_coarse < o.threshold;

    Output out(o);
    if (o.format == "json")
        out.write_json("mode-check", {{"nu", mode.nu()},
                                      {"energy", mode.energy() * o.energy_scale},
                                      {"residual_coarse", r_coarse},
                                      {"residual_fine", r_fine},
                                      {"ratio", ratio},
                                      {"threshold", o.threshold},
                                      {"converged", converged},
                                      {"below_threshold", below}});
    else
        out.write_csv("mode-check",
                      {"residual_coarse", "residual_fine", "ratio", "threshold",
                       "converged", "below_threshold"},
                      {{r_coarse, r_fine, ratio, o.threshold,
                        converged ? 1.0 : 0.0, below ? 1.0 : 0.0}});

    if (!converged || !below)
        throw CheckFailure("mode check failed: residual " + fmt17(r_coarse) +
                           " (threshold " + fmt17(o.threshold) + "), ratio " +
                           fmt17(ratio) + " (expected within [0.2, 0.3])");
    return 0;
}

struct ZScores {
    double z_mean, z_m2;
};

ZScores z_scores(const EnsembleStats& s, double prediction) {
    const auto z = [](double dev, double se) {
        if (se > 0.0) return dev / se;
        return dev == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    };
    return {z(s.mean_dgamma, s.se_mean), z(s.m2_dgamma - prediction, s.se_m2)};
}

int run_noise_mc(const Options& o) {
    const auto defect = defect_from(o);
    if (!(defect.b0() > 0.0)) throw ValidationError("b0 must be positive");
    if (o.n_traj < 2) throw ValidationError("n_traj must be at least 2");
    const NoiseConfig cfg(o.D, o.dt, o.T, o.dims, o.seed);
    std::vector<double> b0(o.dims, 0.0);
    b0[0] = defect.b0();

    const auto stats = ensemble_moments(o.k, b0, cfg, o.n_traj, o.use_exact, o.threads);
    const double prediction = 2.0 * o.D * o.k * o.k / o.T;
    const auto z = z_scores(stats, prediction);

    Output out(o);
    if (o.format == "json")
        out.write_json("noise-mc", {{"n_traj", stats.n_traj},
                                    {"mean", stats.mean_dgamma},
                                    {"se_mean", stats.se_mean},
                                    {"m2", stats.m2_dgamma},
                                    {"se_m2", stats.se_m2},
                                    {"var", stats.var_dgamma},
                                    {"prediction", prediction},
                                    {"z_mean", z.z_mean},
                                    {"z_m2", z.z_m2}});
    else
        out.write_csv("noise-mc",
                      {"n_traj", "mean", "se_mean", "m2", "se_m2", "var",
                       "prediction", "z_mean", "z_m2"},
                      {{static_cast<double>(stats.n_traj), stats.mean_dgamma,
                        stats.se_mean, stats.m2_dgamma, stats.se_m2, stats.var_dgamma,
                        prediction, z.z_mean, z.z_m2}});

    if (!(std::abs(z.z_mean) < 3.0) || !(std::abs(z.z_m2) < 3.0))
        throw CheckFailure("moment z-scores exceed 3: z_mean = " + fmt17(z.z_mean) +
                           ", z_m2 = " + fmt17(z.z_m2));
    return 0;
}

int run_sweep(const Options& o) {
    if (o.axis != "k" && o.axis != "T" && o.axis != "D")
        throw ValidationError("axis must be one of k, T, D");
    if (o.values.size() < 4) throw ValidationError("sweep requires at least 4 values");
    for (double v : o.values)
        if (!(v > 0.0)) throw ValidationError("sweep values must be positive");
    const auto defect = defect_from(o);
    if (!(defect.b0() > 0.0)) throw ValidationError("b0 must be positive");
    if (o.n_traj < 2) throw ValidationError("n_traj must be at least 2");

    const SweepAxis axis = o.axis == "k"   ? SweepAxis::k
                           : o.axis == "T" ? SweepAxis::T
                                           : SweepAxis::D;
    const NoiseConfig cfg(o.D, o.dt, o.T, o.dims, o.seed);
    std::vector<double> b0(o.dims, 0.0);
    b0[0] = defect.b0();

    const auto sweep = scaling_sweep(axis, o.values, o.k, b0, cfg, o.n_traj, o.threads);

    json summary;
    summary["axis"] = o.axis;
    summary["slope"] = sweep.slope;
    summary["expected_slope"] = sweep.expected_slope;
    json points = json::array();
    std::vector<std::vector<double>> rows;
    for (const auto& p : sweep.points) {
        rows.push_back({p.value, p.stats.m2_dgamma, p.stats.se_m2, p.prediction});
        points.push_back({{"value", p.value},
                          {"m2", p.stats.m2_dgamma},
                          {"se_m2", p.stats.se_m2},
                          {"prediction", p.prediction}});
    }
    summary["points"] = points;

    Output out(o);
    if (o.format == "json") {
        out.write_json("sweep", summary);
    } else {
        out.write_csv("sweep", {"value", "m2", "se_m2", "prediction"}, rows);
        // machine-readable summary always lands on stdout alongside the table
        json doc;
        doc["command"] = "sweep";
        doc["results"] = summary;
        std::cout << doc.dump(2) << "\n";
    }

    if (!(std::abs(sweep.slope - sweep.expected_slope) < 0.05))
        throw CheckFailure("fitted slope " + fmt17(sweep.slope) +
                           " deviates from expected " + fmt17(sweep.expected_slope) +
                           " by 0.05 or more");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"screwphase: Dirac phases around a screw dislocation"};
    app.require_subcommand(1);

    Options o;
    // option pointer bookkeeping so config files never override explicit
    // flags; the same logical key appears on several subcommands
    std::map<std::string, std::vector<CLI::Option*>> bound;
    const auto track = [&](const std::string& key, CLI::Option* opt) {
        bound[key].push_back(opt);
        return opt;
    };

    const auto add_shared = [&](CLI::App* cmd) {
        cmd->add_option("--config", o.config_path, "JSON config file");
        cmd->add_option("--output,-o", o.output_path, "output file (default stdout)");
        cmd->add_option("--format", o.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        track("seed", cmd->add_option("--seed", o.seed, "master seed"));
        track("threads", cmd->add_option("--threads", o.threads, "worker thread cap"));
        cmd->add_flag("--deterministic", o.deterministic,
                      "suppress the timestamp field for byte-identical outputs");
    };
    const auto add_defect = [&](CLI::App* cmd) {
        auto* b = cmd->add_option("--b0", o.b0, "Burgers magnitude");
        auto* bf = cmd->add_option("--beta", o.beta_flag, "b0 / (2*pi), alternative to --b0");
        b->excludes(bf);
        bf->excludes(b);
        track("defect.b0", b);
    };
    const auto add_grid = [&](CLI::App* cmd) {
        track("grid.rho_min", cmd->add_option("--rho-min", o.rho_min, "grid inner radius"));
        track("grid.rho_max", cmd->add_option("--rho-max", o.rho_max, "grid outer radius"));
        track("grid.n_rho", cmd->add_option("--n-rho", o.n_rho, "radial points"));
        track("grid.n_phi", cmd->add_option("--n-phi", o.n_phi, "azimuthal points"));
    };
    const auto add_noise = [&](CLI::App* cmd) {
        track("noise.D", cmd->add_option("--D", o.D, "noise diffusion constant"));
        track("noise.dt", cmd->add_option("--dt", o.dt, "time step"));
        track("noise.T", cmd->add_option("--T", o.T, "period / horizon"));
        track("noise.dims", cmd->add_option("--dims", o.dims, "noise vector dimension"));
        track("sweep.n_traj", cmd->add_option("--n-traj", o.n_traj, "trajectory count"));
    };

    auto* metric = app.add_subcommand("metric", "metric tensor, inverse and determinant");
    add_shared(metric);
    add_defect(metric);
    add_grid(metric);
    metric->add_option("--rho", o.rho, "single radius (otherwise the grid rho range)");

    auto* phase = app.add_subcommand("phase", "Dirac phase along an angular sweep");
    add_shared(phase);
    add_defect(phase);
    track("mode.k", phase->add_option("--k", o.k, "axial wavenumber"));
    phase->add_option("--phi0", o.phi0, "start angle");
    phase->add_option("--phi1", o.phi1, "end angle (default phi0 + 2*pi)");
    phase->add_option("--quad-n", o.quad_n, "quadrature steps (0 disables)");

    auto* mode_check = app.add_subcommand("mode-check", "PDE residual and convergence check");
    add_shared(mode_check);
    add_defect(mode_check);
    add_grid(mode_check);
    track("mode.l", mode_check->add_option("--l", o.l, "angular quantum number"));
    track("mode.k", mode_check->add_option("--k", o.k, "axial wavenumber"));
    track("mode.kappa", mode_check->add_option("--kappa", o.kappa, "radial wavenumber"));
    track("constants.hbar", mode_check->add_option("--hbar", o.hbar, "hbar"));
    track("constants.mass", mode_check->add_option("--mass", o.mass, "particle mass"));
    mode_check->add_option("--threshold", o.threshold, "residual threshold");
    mode_check->add_option("--energy-scale", o.energy_scale,
                           "scale the trial energy (negative control)");

    auto* noise_mc = app.add_subcommand("noise-mc", "ensemble moments of the phase shift");
    add_shared(noise_mc);
    add_defect(noise_mc);
    add_noise(noise_mc);
    track("mode.k", noise_mc->add_option("--k", o.k, "axial wavenumber"));
    noise_mc->add_flag("--use-exact", o.use_exact, "pre-linearization estimator");

    auto* sweep = app.add_subcommand("sweep", "scaling sweep with a log-log slope fit");
    add_shared(sweep);
    add_defect(sweep);
    add_noise(sweep);
    track("mode.k", sweep->add_option("--k", o.k, "axial wavenumber"));
    track("sweep.axis", sweep->add_option("--axis", o.axis, "sweep axis: k, T or D"));
    track("sweep.values",
          sweep->add_option("--values", o.values, "sweep values (comma separated)")
              ->delimiter(','));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (!o.config_path.empty()) {
            std::set<std::string> overridden;
            for (const auto& [name, opts] : bound)
                for (const auto* opt : opts)
                    if (opt->count() > 0) overridden.insert(name);
            apply_config_file(o.config_path, o, overridden);
        }
        if (metric->parsed()) return run_metric(o);
        if (phase->parsed()) return run_phase(o);
        if (mode_check->parsed()) return run_mode_check(o);
        if (noise_mc->parsed()) return run_noise_mc(o);
        if (sweep->parsed()) return run_sweep(o);
        std::cerr << "no subcommand given\n";
        return 2;
    } catch (const CheckFailure& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
