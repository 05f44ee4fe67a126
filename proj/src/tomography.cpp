#include "qent/tomography.hpp"

#include "qent/lbfgs.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace qent::tomography {

namespace {

constexpr double kProbabilityFloor = 1e-12;
constexpr int kParameterCount = 16;

// Strictly-lower entries of the 4x4 Cholesky factor, row-major.
constexpr std::array<std::pair<int, int>, 6> kLowerEntries = {
    {{1, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}}};

ComplexMatrix cholesky_factor(const Eigen::VectorXd& t)
{
    if (t.size() != kParameterCount)
        throw std::invalid_argument("cholesky factor: expected 16 parameters");
    ComplexMatrix T = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
        T(i, i) = t(i);
    for (std::size_t k = 0; k < kLowerEntries.size(); ++k) {
        const auto [r, c] = kLowerEntries[k];
        const auto base = static_cast<Eigen::Index>(4 + 2 * k);
        T(r, c) = Complex(t(base), t(base + 1));
    }
    return T;
}

double tr_product(const ComplexMatrix& a, const ComplexMatrix& b)
{
    // Re Tr(a b) for Hermitian a, b.
    return a.cwiseProduct(b.transpose()).sum().real();
}

std::uint64_t total_of(const OutcomeCounts& c)
{
    return c[0] + c[1] + c[2] + c[3];
}

// Uniform double in [0, 1) from the top 53 bits; avoids implementation-defined distributions.
double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class LikelihoodProblem {
public:
    LikelihoodProblem(const std::vector<MeasurementSetting>& settings, const std::vector<OutcomeWeights>& counts)
        : projectors_(povm_elements(settings))
    {
        if (counts.size() != settings.size())
            throw std::invalid_argument("mle_reconstruct: one count row per setting is required");
        weights_.reserve(projectors_.size());
        for (const auto& row : counts)
            for (double n : row) {
                if (!(n >= 0.0) || !std::isfinite(n))
                    throw std::invalid_argument("mle_reconstruct: counts must be non-negative");
                weights_.push_back(n);
                total_ += n;
            }
        if (!(total_ > 0.0))
            throw std::invalid_argument("mle_reconstruct: record contains no counts");
    }

    // -(1/W) sum n ln p + (Tr T^dagger T - 1)^2; the penalty fixes the scale
    // of T without changing rho.
    double operator()(const Eigen::VectorXd& t, Eigen::VectorXd& grad) const
    {
        const ComplexMatrix T = cholesky_factor(t);
        const ComplexMatrix A = T.adjoint() * T;
        const double a = A.trace().real();
        const ComplexMatrix rho = A / a;

        double value = 0.0;
        ComplexMatrix G = ComplexMatrix::Zero(4, 4);
        for (std::size_t i = 0; i < projectors_.size(); ++i) {
            const double n = weights_[i];
            if (n == 0.0)
                continue;
            const double p = tr_product(projectors_[i], rho);
            if (p > kProbabilityFloor) {
                value -= n * std::log(p);
                G -= (n / p) * projectors_[i];
            } else {
                value -= n * std::log(kProbabilityFloor);
            }
        }
        value /= total_;
        G /= total_;
        const double excess = a - 1.0;
        value += excess * excess;

        const ComplexMatrix H = G / a - (tr_product(G, A) / (a * a) - 2.0 * excess) *
                                            ComplexMatrix::Identity(4, 4);
        const ComplexMatrix HT = H * T.adjoint();
        grad.resize(kParameterCount);
        for (int i = 0; i < 4; ++i)
            grad(i) = 2.0 * HT(i, i).real();
        for (std::size_t k = 0; k < kLowerEntries.size(); ++k) {
            const auto [r, c] = kLowerEntries[k];
            const auto base = static_cast<Eigen::Index>(4 + 2 * k);
            grad(base) = 2.0 * HT(c, r).real();
            grad(base + 1) = -2.0 * HT(c, r).imag();
        }
        return value;
    }

private:
    std::vector<ComplexMatrix> projectors_;
    std::vector<double> weights_;
    double total_ = 0.0;
};

}  // namespace

std::string_view gate_name(Gate gate)
{
    switch (gate) {
    case Gate::I: return "I";
    case Gate::X90: return "X90";
    case Gate::Y90: return "Y90";
    case Gate::X180: return "X180";
    }
    throw std::invalid_argument("gate_name: unknown gate");
}

Gate parse_gate(std::string_view name)
{
    for (Gate g : kGates)
        if (gate_name(g) == name)
            return g;
    throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

ComplexMatrix gate_matrix(Gate gate)
{
    const double h = std::numbers::sqrt2 / 2.0;
    const Complex i(0.0, 1.0);
    ComplexMatrix u(2, 2);
    switch (gate) {
    case Gate::I:
        u = ComplexMatrix::Identity(2, 2);
        break;
    case Gate::X90: // exp(-i pi/4 X)
        u << h, -i * h, -i * h, h;
        break;
    case Gate::Y90: // exp(-i pi/4 Y)
        u << h, -h, h, h;
        break;
    case Gate::X180: // exp(-i pi/2 X)
        u << 0.0, -i, -i, 0.0;
        break;
    }
    return u;
}

std::vector<MeasurementSetting> all_settings()
{
    std::vector<MeasurementSetting> out;
    out.reserve(16);
    for (Gate a : kGates)
        for (Gate b : kGates)
            out.push_back({a, b});
    return out;
}

void TomographyRecord::validate() const
{
    if (shots == 0)
        throw std::invalid_argument("tomography record: shots must be positive");
    if (entries.size() != 16)
        throw std::invalid_argument("tomography record: expected 16 settings");
    std::set<std::pair<int, int>> seen;
    for (const auto& e : entries) {
        if (!seen.emplace(static_cast<int>(e.setting.gate_a), static_cast<int>(e.setting.gate_b)).second)
            throw std::invalid_argument("tomography record: duplicate measurement setting");
        if (total_of(e.counts) != shots)
            throw std::invalid_argument("tomography record: counts of a setting do not sum to shots");
    }
}

DensityMatrix depolarize(const DensityMatrix& rho, double noise)
{
    if (!(noise >= 0.0 && noise <= 1.0))
        throw std::invalid_argument("depolarize: noise must lie in [0, 1]");
    if (noise == 0.0)
        return rho;
    const auto d = static_cast<Eigen::Index>(rho.dim());
    ComplexMatrix mixed = (1.0 - noise) * rho.matrix() +
                          (noise / static_cast<double>(d)) * ComplexMatrix::Identity(d, d);
    return DensityMatrix(rho.dims(), std::move(mixed));
}

OutcomeWeights outcome_probabilities(const DensityMatrix& rho, const MeasurementSetting& setting)
{
    if (rho.dim() != 4)
        throw std::invalid_argument("outcome_probabilities: two-qubit state required");
    const ComplexMatrix u = tensor(gate_matrix(setting.gate_a), gate_matrix(setting.gate_b));
    const ComplexMatrix rotated = u * rho.matrix() * u.adjoint();
    OutcomeWeights p{};
    for (int k = 0; k < 4; ++k)
        p[static_cast<std::size_t>(k)] = std::max(0.0, rotated(k, k).real());
    return p;
}

std::vector<ComplexMatrix> povm_elements(const std::vector<MeasurementSetting>& settings)
{
    std::vector<ComplexMatrix> out;
    out.reserve(settings.size() * 4);
    for (const auto& s : settings) {
        const ComplexMatrix u = tensor(gate_matrix(s.gate_a), gate_matrix(s.gate_b));
        for (int k = 0; k < 4; ++k)
            out.push_back(u.adjoint().col(k) * u.row(k));
    }
    return out;
}

int povm_gram_rank(const std::vector<MeasurementSetting>& settings)
{
    const auto elements = povm_elements(settings);
    const auto n = static_cast<Eigen::Index>(elements.size());
    ComplexMatrix gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            gram(i, j) = (elements[static_cast<std::size_t>(i)].adjoint() * elements[static_cast<std::size_t>(j)]).trace();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
    const RealVector& ev = solver.eigenvalues();
    const double cutoff = 1e-10 * ev.cwiseAbs().maxCoeff();
    return static_cast<int>((ev.array() > cutoff).count());
}

Ket ideal_state()
{
    const double h = std::numbers::sqrt2 / 2.0;
    ComplexMatrix hadamard(2, 2);
    hadamard << h, h, h, -h;
    const ComplexMatrix p0 = basis_ket(2, 0) * basis_ket(2, 0).adjoint();
    const ComplexMatrix p1 = basis_ket(2, 1) * basis_ket(2, 1).adjoint();
    const ComplexMatrix open_controlled_not = tensor(p0, pauli::x()) + tensor(p1, pauli::identity());

    Ket psi = basis_ket(4, 0); // |0_A, g_BT>
    psi = tensor(hadamard, pauli::identity()) * psi;
    psi = open_controlled_not * psi;
    return psi;
}

DensityMatrix ideal_density_matrix()
{
    return DensityMatrix::from_ket(ideal_state(), {2, 2});
}

TomographyRecord simulate_counts(const DensityMatrix& rho, std::uint64_t shots, std::uint64_t seed, double noise)
{
    if (shots == 0)
        throw std::invalid_argument("simulate_counts: shots must be positive");
    const DensityMatrix noisy = depolarize(rho, noise);
    std::mt19937_64 rng(seed);

    TomographyRecord record;
    record.shots = shots;
    for (const auto& setting : all_settings()) {
        const OutcomeWeights p = outcome_probabilities(noisy, setting);
        std::array<double, 4> cumulative{};
        double acc = 0.0;
        for (std::size_t k = 0; k < 4; ++k)
            cumulative[k] = (acc += p[k]);
        SettingCounts entry{setting, {}};
        for (std::uint64_t s = 0; s < shots; ++s) {
            const double u = uniform01(rng) * acc;
            std::size_t k = 0;
            while (k < 3 && u >= cumulative[k])
                ++k;
            ++entry.counts[k];
        }
        record.entries.push_back(entry);
    }
    return record;
}

std::vector<OutcomeWeights> expected_counts(const DensityMatrix& rho, double shots, double noise)
{
    if (!(shots > 0.0))
        throw std::invalid_argument("expected_counts: shots must be positive");
    const DensityMatrix noisy = depolarize(rho, noise);
    std::vector<OutcomeWeights> out;
    for (const auto& setting : all_settings()) {
        OutcomeWeights p = outcome_probabilities(noisy, setting);
        for (double& x : p)
            x *= shots;
        out.push_back(p);
    }
    return out;
}

ComplexMatrix cholesky_density(const Eigen::VectorXd& t)
{
    const ComplexMatrix T = cholesky_factor(t);
    ComplexMatrix A = T.adjoint() * T;
    const double a = A.trace().real();
    if (!(a > 0.0))
        throw std::domain_error("cholesky_density: parameters give a zero matrix");
    A /= a;
    return 0.5 * (A + A.adjoint());
}

Eigen::VectorXd maximally_mixed_parameters()
{
    Eigen::VectorXd t = Eigen::VectorXd::Zero(kParameterCount);
    t.head(4).setConstant(0.5);
    return t;
}

double negative_log_likelihood(const ComplexMatrix& rho, const std::vector<MeasurementSetting>& settings,
                               const std::vector<OutcomeWeights>& counts, double shots)
{
    const auto projectors = povm_elements(settings);
    if (counts.size() * 4 != projectors.size())
        throw std::invalid_argument("negative_log_likelihood: one count row per setting is required");
    double value = 0.0;
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        const double expected = shots * std::max(kProbabilityFloor, tr_product(projectors[i], rho));
        const double n = counts[i / 4][i % 4];
        value += expected - (n > 0.0 ? n * std::log(expected) : 0.0);
    }
    return value;
}

double mle_objective(const std::vector<MeasurementSetting>& settings, const std::vector<OutcomeWeights>& counts,
                     const Eigen::VectorXd& t, Eigen::VectorXd& grad)
{
    if (t.size() != kParameterCount)
        throw std::invalid_argument("mle_objective: expected 16 parameters");
    return LikelihoodProblem(settings, counts)(t, grad);
}

MleResult mle_reconstruct(const std::vector<MeasurementSetting>& settings, const std::vector<OutcomeWeights>& counts,
                          double shots, const MleOptions& options)
{
    if (!(shots > 0.0))
        throw std::invalid_argument("mle_reconstruct: shots must be positive");
    if (options.restarts < 0 || options.max_iterations < 1)
        throw std::invalid_argument("mle_reconstruct: invalid optimizer options");
    const LikelihoodProblem problem(settings, counts);
    const Objective objective = [&problem](const Eigen::VectorXd& t, Eigen::VectorXd& g) { return problem(t, g); };

    LbfgsOptions lbfgs;
    lbfgs.max_iterations = options.max_iterations;
    lbfgs.gradient_tolerance = options.gradient_tolerance;

    std::mt19937_64 rng(options.restart_seed);
    std::normal_distribution<double> jitter(0.0, 0.2);
    const Eigen::VectorXd start = maximally_mixed_parameters();

    LbfgsResult best;
    bool have_best = false;
    for (int run = 0; run <= options.restarts; ++run) {
        Eigen::VectorXd x0 = start;
        if (run > 0)
            for (Eigen::Index i = 0; i < x0.size(); ++i)
                x0(i) += jitter(rng);
        LbfgsResult r = minimize_lbfgs(objective, x0, lbfgs);
        if (!have_best || r.value < best.value) {
            best = std::move(r);
            have_best = true;
        }
    }

    MleResult out;
    out.rho = DensityMatrix({2, 2}, cholesky_density(best.x));
    out.log_likelihood = -negative_log_likelihood(out.rho.matrix(), settings, counts, shots);
    out.iterations = best.iterations;
    out.converged = best.converged;
    out.objective_history = std::move(best.value_history);
    return out;
}

MleResult mle_reconstruct(const TomographyRecord& record, const MleOptions& options)
{
    record.validate();
    std::vector<MeasurementSetting> settings;
    std::vector<OutcomeWeights> counts;
    for (const auto& e : record.entries) {
        settings.push_back(e.setting);
        OutcomeWeights row{};
        for (std::size_t k = 0; k < 4; ++k)
            row[k] = static_cast<double>(e.counts[k]);
        counts.push_back(row);
    }
    return mle_reconstruct(settings, counts, static_cast<double>(record.shots), options);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma)
{
    if (rho.dim() != sigma.dim() || rho.dims() != sigma.dims())
        throw std::invalid_argument("fidelity: dimension mismatch");
    // Eigenvalues this small are rounding noise; their square roots (~1e-8)
    // would otherwise leak into the result, e.g. for pure states.
    constexpr double kSpectralFloor = 1e-14;
    auto floored_sqrt = [](const RealVector& v) {
        return v.unaryExpr([](double x) { return x > kSpectralFloor ? std::sqrt(x) : 0.0; });
    };

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> rho_eig(rho.matrix());
    const ComplexMatrix& u = rho_eig.eigenvectors();
    const ComplexMatrix root = u * floored_sqrt(rho_eig.eigenvalues()).cast<Complex>().asDiagonal() * u.adjoint();
    ComplexMatrix inner = root * sigma.matrix() * root;
    inner = 0.5 * (inner + inner.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(inner, Eigen::EigenvaluesOnly);
    const double root_sum = floored_sqrt(solver.eigenvalues()).sum();
    return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

}  // namespace qent::tomography
