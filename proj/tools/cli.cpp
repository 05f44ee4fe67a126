#include "cli.hpp"

#include "qent/dielectric.hpp"
#include "qent/dressed_model.hpp"
#include "qent/entanglement.hpp"
#include "qent/io.hpp"
#include "qent/tomography.hpp"
#include "qent/tripartite.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace qent::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kFallbackSeed = 20220101;

// Illustrative defaults; none of these are measured properties of the sample.
constexpr double kDefaultQubitHz = 3.271e9;
constexpr double kDefaultOscillatorHz = 5.0e9;
constexpr double kDefaultCouplingHz = 1.0e8;
constexpr double kDefaultEjOverEc = 50.0;
constexpr double kDefaultCalibrationShiftHz = -8.0e6;
constexpr double kDefaultCalibrationEps = 4.0;
constexpr double kHardwareFidelityReference = 0.82;

/// Validation failure tied to a flag; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    UsageError(const std::string& flag, const std::string& message)
        : std::runtime_error(flag + ": " + message)
    {
    }
};

void require(bool ok, const std::string& flag, const std::string& message)
{
    if (!ok)
        throw UsageError(flag, message);
}

std::uint64_t default_seed()
{
    const char* env = std::getenv(kSeedEnv);
    if (env == nullptr || *env == '\0')
        return kFallbackSeed;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used);
        if (used != std::string(env).size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw UsageError(kSeedEnv, "environment variable must be an unsigned integer");
    }
}

void emit(const std::string& path, const std::string& contents, std::ostream& out)
{
    if (path.empty() || path == "-")
        out << contents;
    else
        io::write_file_atomic(path, contents);
}

DensityMatrix load_density(const std::string& path, const std::string& flag)
{
    try {
        return io::density_from_json(io::read_json(path));
    } catch (const std::exception& e) {
        throw UsageError(flag, e.what());
    }
}

// ---------------------------------------------------------------- dressed

struct DressedArgs {
    double wq_hz = kDefaultQubitHz;
    std::vector<double> osc_hz{kDefaultOscillatorHz};
    double g_hz = kDefaultCouplingHz;
    std::optional<double> shift_hz;
};

int cmd_dressed(const DressedArgs& a, std::ostream& out)
{
    require(std::isfinite(a.wq_hz) && a.wq_hz > 0.0, "--wq", "qubit frequency must be positive");
    require(!a.osc_hz.empty(), "--osc", "at least one oscillator frequency is required");
    for (double f : a.osc_hz) {
        require(std::isfinite(f) && f > 0.0, "--osc", "oscillator frequencies must be positive");
        require(f != a.wq_hz, "--osc", "oscillator is resonant with --wq (zero detuning)");
    }
    require(std::isfinite(a.g_hz) && a.g_hz >= 0.0, "--g", "coupling must be non-negative");
    if (a.shift_hz)
        require(std::isfinite(*a.shift_hz), "--shift", "shift must be finite");

    DressedModel model;
    model.omega_q = kTwoPi * a.wq_hz;
    for (double f : a.osc_hz)
        model.omegas.push_back(kTwoPi * f);
    model.g = kTwoPi * a.g_hz;

    const double pert = perturbative_gap(model);
    const double exact = exact_gap(model);
    const DressedState state = dressed_excited_state(model);

    json coeffs = json::array();
    for (const Complex& c : state.psi1_coeffs)
        coeffs.push_back({c.real(), c.imag()});

    json j{{"qubit_frequency_hz", a.wq_hz},
           {"oscillator_frequencies_hz", a.osc_hz},
           {"coupling_hz", a.g_hz},
           {"perturbative_gap_hz", pert},
           {"exact_gap_hz", exact},
           {"relative_difference", std::abs(pert - exact) / exact},
           {"perturbative_shift_hz", pert - a.wq_hz},
           {"theta", state.theta},
           {"cos_half_theta", std::cos(0.5 * state.theta)},
           {"cos_half_theta_perturbative", perturbative_cos_half_theta(model)},
           {"psi1_coefficients", coeffs}};

    if (a.shift_hz) {
        const ShiftInversion inv = theta_from_shift(*a.shift_hz, model);
        j["shift_inversion"] = {{"shift_hz", *a.shift_hz}, {"coupling_hz", inv.g / kTwoPi}, {"theta", inv.theta}};
    }
    out << io::dump(j);
    return kExitOk;
}

// ------------------------------------------------------- dielectric-sweep

struct TransmonArgs {
    double f0_hz = kDefaultQubitHz;
    double ej_over_ec = kDefaultEjOverEc;
    std::optional<double> anharm_hz;
};

dielectric::TransmonParams build_transmon(const TransmonArgs& a)
{
    require(std::isfinite(a.f0_hz) && a.f0_hz > 0.0, "--f0", "qubit frequency must be positive");
    if (a.anharm_hz) {
        require(std::isfinite(*a.anharm_hz) && *a.anharm_hz != 0.0, "--anharm", "anharmonicity must be nonzero");
        return dielectric::TransmonParams::from_frequency_and_anharmonicity(a.f0_hz, kTwoPi * *a.anharm_hz);
    }
    require(std::isfinite(a.ej_over_ec) && a.ej_over_ec > 4.0, "--ej-ec-ratio",
            "E_j / E_c must exceed 4 for the frequency to fall with capacitance");
    return dielectric::TransmonParams::from_frequency_and_ratio(a.f0_hz, a.ej_over_ec);
}

struct DielectricArgs {
    TransmonArgs transmon;
    std::optional<double> participation;
    double calib_shift_hz = kDefaultCalibrationShiftHz;
    double calib_eps = kDefaultCalibrationEps;
    double eps_min = 1.0;
    double eps_max = 30.0;
    int points = 30;
    std::string out_path;
};

double resolve_participation(const DielectricArgs& a, const dielectric::TransmonParams& p, std::ostream& err)
{
    if (a.participation)
        return *a.participation;
    const double part = dielectric::fit_participation(a.transmon.f0_hz, a.calib_shift_hz, a.calib_eps, p);
    err << "calibrated participation " << io::format_float(part) << " from shift "
        << io::format_float(a.calib_shift_hz) << " Hz at eps_r " << io::format_float(a.calib_eps) << '\n';
    return part;
}

std::vector<double> linspace(int points, double lo, double hi)
{
    std::vector<double> v(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k)
        v[static_cast<std::size_t>(k)] = k + 1 == points ? hi : lo + (hi - lo) * k / (points - 1);
    return v;
}

int cmd_dielectric_sweep(const DielectricArgs& a, std::ostream& out, std::ostream& err)
{
    const auto params = build_transmon(a.transmon);
    if (a.participation)
        require(*a.participation >= 0.0 && *a.participation <= 1.0, "--participation", "must lie in [0, 1]");
    require(std::isfinite(a.calib_shift_hz) && a.calib_shift_hz <= 0.0, "--calib-shift", "must be non-positive");
    require(std::isfinite(a.calib_eps) && a.calib_eps > 1.0, "--calib-eps", "must exceed 1");
    require(std::isfinite(a.eps_min) && a.eps_min >= 1.0, "--eps-min", "must be >= 1");
    require(std::isfinite(a.eps_max) && a.eps_max >= a.eps_min, "--eps-max", "must be >= --eps-min");
    require(a.points >= 2, "--points", "at least two points are required");

    const double part = resolve_participation(a, params, err);
    const auto eps = linspace(a.points, a.eps_min, a.eps_max);
    emit(a.out_path, io::permittivity_csv(dielectric::permittivity_sweep(params, eps, part)), out);
    return kExitOk;
}

// ---------------------------------------------------------- tomo-sim

struct TomoSimArgs {
    std::string in_path;
    std::uint64_t shots = 10000;
    std::uint64_t seed = 0;
    double noise = 0.0;
    std::string out_path;
};

int cmd_tomo_sim(const TomoSimArgs& a, std::ostream& out)
{
    require(a.shots >= 1, "--shots", "must be at least 1");
    require(a.noise >= 0.0 && a.noise <= 1.0, "--noise", "must lie in [0, 1]");
    const DensityMatrix rho = a.in_path.empty() ? tomography::ideal_density_matrix() : load_density(a.in_path, "--in");
    require(rho.dims() == std::vector<std::size_t>{2, 2}, "--in", "a two-qubit state with dims [2, 2] is required");

    const auto record = tomography::simulate_counts(rho, a.shots, a.seed, a.noise);
    emit(a.out_path, io::dump(io::record_to_json(record)), out);
    return kExitOk;
}

// -------------------------------------------------------- reconstruct

struct ReconstructArgs {
    std::string in_path;
    std::string out_path;
    int restarts = 3;
    int max_iterations = 10000;
};

int cmd_reconstruct(const ReconstructArgs& a, std::ostream& out, std::ostream& err)
{
    require(a.restarts >= 0, "--restarts", "must be non-negative");
    require(a.max_iterations >= 1, "--max-iter", "must be positive");
    tomography::TomographyRecord record;
    try {
        record = io::record_from_json(io::read_json(a.in_path));
    } catch (const std::exception& e) {
        throw UsageError("--in", e.what());
    }

    tomography::MleOptions options;
    options.restarts = a.restarts;
    options.max_iterations = a.max_iterations;
    const auto result = tomography::mle_reconstruct(record, options);
    emit(a.out_path, io::dump(io::density_to_json(result.rho)), out);

    err << "log_likelihood " << io::format_float(result.log_likelihood) << ", iterations " << result.iterations
        << ", converged " << (result.converged ? "true" : "false") << ", fidelity_to_ideal "
        << io::format_float(tomography::fidelity(result.rho, tomography::ideal_density_matrix())) << '\n';
    return kExitOk;
}

// ------------------------------------------------------------- expand

struct ExpandArgs {
    std::string in_path;
    double theta = 0.0;
    bool tabulated_order = false;
    std::string out_path;
};

int cmd_expand(const ExpandArgs& a, std::ostream& out)
{
    require(a.theta >= 0.0 && a.theta <= std::numbers::pi, "--theta", "must lie in [0, pi]");
    const DensityMatrix rho = load_density(a.in_path, "--in");
    require(rho.dims() == std::vector<std::size_t>{2, 2}, "--in", "a two-qubit state with dims [2, 2] is required");

    const auto state = tripartite::expand(rho, a.theta);
    const json j = a.tabulated_order ? io::matrix_to_json(state.tabulated, {2, 2, 2})
                                     : io::density_to_json(state.rho_abt);
    emit(a.out_path, io::dump(j), out);
    return kExitOk;
}

// ----------------------------------------------------- entangle-sweep

struct SweepArgs {
    std::string in_path;
    int points = 101;
    double theta_min = 0.0;
    double theta_max = std::numbers::pi;
    std::string out_path;
};

void validate_grid(int points, double lo, double hi)
{
    require(points >= 1, "--points", "must be at least 1");
    require(lo >= 0.0 && lo <= std::numbers::pi, "--theta-min", "must lie in [0, pi]");
    require(hi >= lo && hi <= std::numbers::pi, "--theta-max", "must lie in [--theta-min, pi]");
}

int cmd_entangle_sweep(const SweepArgs& a, std::ostream& out)
{
    validate_grid(a.points, a.theta_min, a.theta_max);
    const DensityMatrix rho = a.in_path.empty() ? tomography::ideal_density_matrix() : load_density(a.in_path, "--in");
    require(rho.dims() == std::vector<std::size_t>{2, 2}, "--in", "a two-qubit state with dims [2, 2] is required");

    const auto grid = entanglement::theta_grid(static_cast<std::size_t>(a.points), a.theta_min, a.theta_max);
    emit(a.out_path, io::sweep_csv(entanglement::theta_sweep(rho, grid)), out);
    return kExitOk;
}

// ---------------------------------------------------------- reproduce

struct ReproduceArgs {
    std::string out_dir = "qent-reproduce";
    std::uint64_t shots = 100000;
    std::uint64_t seed = 0;
    double noise = 0.0;
    int points = 101;
    int restarts = 3;
    TransmonArgs transmon;
};

int cmd_reproduce(const ReproduceArgs& a, std::ostream& out)
{
    require(a.shots >= 1, "--shots", "must be at least 1");
    require(a.noise >= 0.0 && a.noise <= 1.0, "--noise", "must lie in [0, 1]");
    require(a.points >= 2, "--points", "at least two points are required");
    require(a.restarts >= 0, "--restarts", "must be non-negative");
    require(!a.out_dir.empty(), "--out-dir", "must not be empty");
    const auto transmon = build_transmon(a.transmon);

    const DensityMatrix ideal = tomography::ideal_density_matrix();
    const auto record = tomography::simulate_counts(ideal, a.shots, a.seed, a.noise);
    tomography::MleOptions options;
    options.restarts = a.restarts;
    const auto mle = tomography::mle_reconstruct(record, options);
    const double fid = tomography::fidelity(mle.rho, ideal);
    const double fid_noisy = tomography::fidelity(mle.rho, tomography::depolarize(ideal, a.noise));

    const auto grid = entanglement::theta_grid(static_cast<std::size_t>(a.points), 0.0, std::numbers::pi);
    const auto sweep_mle = entanglement::theta_sweep(mle.rho, grid);
    const auto sweep_ideal = entanglement::theta_sweep(ideal, grid);

    const double part =
        dielectric::fit_participation(a.transmon.f0_hz, kDefaultCalibrationShiftHz, kDefaultCalibrationEps, transmon);
    const double shift30 = dielectric::shifted_frequency(transmon, 30.0, part) - dielectric::qubit_frequency(transmon);

    const auto half = entanglement::pi_tangle(tripartite::expand(mle.rho, 0.5 * std::numbers::pi));

    std::ostringstream summary;
    summary << "shots_per_setting " << a.shots << '\n'
            << "noise " << io::format_float(a.noise) << '\n'
            << "seed " << a.seed << '\n'
            << "mle_converged " << (mle.converged ? "true" : "false") << '\n'
            << "mle_iterations " << mle.iterations << '\n'
            << "mle_log_likelihood " << io::format_float(mle.log_likelihood) << '\n'
            << "fidelity_to_ideal " << io::format_float(fid) << '\n'
            << "fidelity_to_noisy_source " << io::format_float(fid_noisy) << '\n'
            << "trace_distance_to_ideal " << io::format_float(trace_distance(mle.rho, ideal)) << '\n'
            << "hardware_fidelity_reference " << io::format_float(kHardwareFidelityReference)
            << " (comparison only, not reproducible from simulation)\n"
            << "theta_points " << a.points << '\n'
            << "mle_n_a_bc_at_half_pi " << io::format_float(half.n_a_bc) << '\n'
            << "mle_n_t_ab_at_half_pi " << io::format_float(half.n_c_ab) << '\n'
            << "mle_pi_tangle_at_half_pi " << io::format_float(half.pi_tangle) << '\n'
            << "dielectric_participation " << io::format_float(part) << " (calibrated: "
            << io::format_float(kDefaultCalibrationShiftHz) << " Hz at eps_r "
            << io::format_float(kDefaultCalibrationEps) << ", whole shift attributed to the dielectric)\n"
            << "dielectric_shift_at_eps_30_hz " << io::format_float(shift30) << '\n';

    fs::create_directories(a.out_dir);
    const fs::path dir(a.out_dir);
    io::write_file_atomic(dir / "ideal_state.json", io::dump(io::density_to_json(ideal)));
    io::write_file_atomic(dir / "tomography_record.json", io::dump(io::record_to_json(record)));
    io::write_file_atomic(dir / "rho_mle.json", io::dump(io::density_to_json(mle.rho)));
    io::write_file_atomic(dir / "entanglement_sweep_mle.csv", io::sweep_csv(sweep_mle));
    io::write_file_atomic(dir / "entanglement_sweep_ideal.csv", io::sweep_csv(sweep_ideal));
    io::write_file_atomic(dir / "summary.txt", summary.str());

    out << summary.str();
    return kExitOk;
}

void add_transmon_flags(CLI::App* sub, TransmonArgs& t)
{
    sub->add_option("--f0", t.f0_hz, "Unloaded qubit frequency f0 in Hz (illustrative default 3.271e9)");
    sub->add_option("--ej-ec-ratio", t.ej_over_ec, "E_j / E_c ratio used to derive C and E_j (illustrative default 50)");
    sub->add_option("--anharm", t.anharm_hz,
                    "Anharmonicity delta/2pi in Hz; if set, E_c = hbar |delta| and E_j follows from --f0");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Dressed-state, tomography and entanglement numerics"};
    app.name("qent");
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    try {
        seed = default_seed();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    DressedArgs dressed;
    auto* s_dressed = app.add_subcommand("dressed", "Perturbative and exact dressed-state gap, theta and c_j");
    s_dressed->add_option("--wq", dressed.wq_hz, "Qubit frequency omega_q/2pi in Hz (illustrative default 3.271e9)");
    s_dressed->add_option("--osc", dressed.osc_hz, "Oscillator frequencies omega_j/2pi in Hz, one or more (default 5e9)")
        ->expected(1, -1);
    s_dressed->add_option("--g", dressed.g_hz, "Coupling g/2pi in Hz (illustrative default 1e8)");
    s_dressed->add_option("--shift", dressed.shift_hz,
                          "Observed frequency shift in Hz; reports the coupling g/2pi and theta reproducing it");

    DielectricArgs diel;
    auto* s_diel = app.add_subcommand("dielectric-sweep", "Qubit frequency versus relative permittivity (CSV)");
    add_transmon_flags(s_diel, diel.transmon);
    s_diel->add_option("--participation", diel.participation,
                       "Dielectric participation in [0, 1]; calibrated from --calib-shift if omitted");
    s_diel->add_option("--calib-shift", diel.calib_shift_hz, "Calibration frequency shift in Hz (default -8e6)");
    s_diel->add_option("--calib-eps", diel.calib_eps, "Relative permittivity of the calibration point (default 4)");
    s_diel->add_option("--eps-min", diel.eps_min, "First relative permittivity (default 1)");
    s_diel->add_option("--eps-max", diel.eps_max, "Last relative permittivity (default 30)");
    s_diel->add_option("--points", diel.points, "Number of permittivity values (default 30)");
    s_diel->add_option("-o,--out", diel.out_path, "Output CSV path (stdout if omitted)");

    TomoSimArgs tomo;
    tomo.seed = seed;
    auto* s_tomo = app.add_subcommand("tomo-sim", "Simulate two-qubit tomography counts (JSON record)");
    s_tomo->add_option("--in", tomo.in_path, "Two-qubit density matrix JSON (ideal prepared state if omitted)");
    s_tomo->add_option("--shots", tomo.shots, "Shots per measurement setting (default 10000)");
    s_tomo->add_option("--seed", tomo.seed, std::string("RNG seed (default from ") + kSeedEnv + ")");
    s_tomo->add_option("--noise", tomo.noise, "Depolarizing weight in [0, 1] (default 0)");
    s_tomo->add_option("-o,--out", tomo.out_path, "Output record path (stdout if omitted)");

    ReconstructArgs recon;
    auto* s_recon = app.add_subcommand("reconstruct", "Maximum-likelihood density matrix from a tomography record");
    s_recon->add_option("--in", recon.in_path, "Tomography record JSON")->required();
    s_recon->add_option("-o,--out", recon.out_path, "Output density matrix path (stdout if omitted)");
    s_recon->add_option("--restarts", recon.restarts, "Extra optimizer runs from perturbed starts (default 3)");
    s_recon->add_option("--max-iter", recon.max_iterations, "Iteration cap per optimizer run (default 10000)");

    ExpandArgs expand;
    auto* s_expand = app.add_subcommand("expand", "Expand a 4x4 dressed-basis state into the A-B-T 8x8 state");
    s_expand->add_option("--in", expand.in_path, "Two-qubit density matrix JSON")->required();
    s_expand->add_option("--theta", expand.theta, "Mixing angle theta in radians, [0, pi]")->required();
    s_expand->add_flag("--tabulated-order", expand.tabulated_order,
                       "Write rows in the order {000,010,001,011,100,110,101,111} instead of A(x)B(x)T");
    s_expand->add_option("-o,--out", expand.out_path, "Output path (stdout if omitted)");

    SweepArgs sweep;
    auto* s_sweep = app.add_subcommand("entangle-sweep", "Negativities and pi-tangle versus theta (CSV)");
    s_sweep->add_option("--in", sweep.in_path, "Two-qubit density matrix JSON (ideal prepared state if omitted)");
    s_sweep->add_option("--points", sweep.points, "Grid size (default 101)");
    s_sweep->add_option("--theta-min", sweep.theta_min, "First theta in radians (default 0)");
    s_sweep->add_option("--theta-max", sweep.theta_max, "Last theta in radians (default pi)");
    s_sweep->add_option("-o,--out", sweep.out_path, "Output CSV path (stdout if omitted)");

    ReproduceArgs repro;
    repro.seed = seed;
    auto* s_repro = app.add_subcommand("reproduce", "End-to-end pipeline; writes a report directory");
    s_repro->add_option("--out-dir", repro.out_dir, "Report directory (default qent-reproduce)");
    s_repro->add_option("--shots", repro.shots, "Shots per measurement setting (default 100000)");
    s_repro->add_option("--seed", repro.seed, std::string("RNG seed (default from ") + kSeedEnv + ")");
    s_repro->add_option("--noise", repro.noise, "Depolarizing weight in [0, 1] (default 0)");
    s_repro->add_option("--points", repro.points, "Theta grid size on [0, pi] (default 101)");
    s_repro->add_option("--restarts", repro.restarts, "Extra optimizer runs from perturbed starts (default 3)");
    add_transmon_flags(s_repro, repro.transmon);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        const auto parsed = app.get_subcommands();
        out << (parsed.empty() ? app.help() : parsed.front()->help());
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (s_dressed->parsed())
            return cmd_dressed(dressed, out);
        if (s_diel->parsed())
            return cmd_dielectric_sweep(diel, out, err);
        if (s_tomo->parsed())
            return cmd_tomo_sim(tomo, out);
        if (s_recon->parsed())
            return cmd_reconstruct(recon, out, err);
        if (s_expand->parsed())
            return cmd_expand(expand, out);
        if (s_sweep->parsed())
            return cmd_entangle_sweep(sweep, out);
        if (s_repro->parsed())
            return cmd_reproduce(repro, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    err << "error: no subcommand\n";
    return kExitUsage;
}

}  // namespace qent::cli
