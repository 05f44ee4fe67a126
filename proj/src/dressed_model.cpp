#include "qent/dressed_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qent {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double detuning_sum(const DressedModel& model, int power)
{
    double sum = 0.0;
    for (double delta : model.detunings()) {
        if (delta == 0.0)
            throw ResonanceError("dressed model: zero detuning between qubit and oscillator");
        sum += 1.0 / std::pow(delta, power);
    }
    return sum;
}

struct QubitLikeLevel {
    double energy = 0.0;
    Ket vector;
};

QubitLikeLevel select_qubit_like_level(const DressedModel& model)
{
    // Diagonalize relative to omega_q: the eigensolver's absolute error then
    // scales with the detunings and g rather than with omega_q itself.
    ComplexMatrix h = build_single_excitation_hamiltonian(model);
    h.diagonal().array() -= model.omega_q;
    const EigenDecomposition eig = eigh(h);
    const Eigen::Index n = eig.values.size();

    // Values are descending, so walking from the back visits lower energies
    // first and a tie in overlap keeps the lower one.
    Eigen::Index best = n - 1;
    double best_overlap = std::abs(eig.vectors(0, best));
    for (Eigen::Index k = n - 2; k >= 0; --k) {
        const double overlap = std::abs(eig.vectors(0, k));
        if (overlap > best_overlap + 1e-12) {
            best = k;
            best_overlap = overlap;
        }
    }

    const double guard = 1e-9 * model.omega_q;
    for (Eigen::Index k = 0; k < n; ++k)
        if (k != best && std::abs(eig.values(k) - eig.values(best)) <= guard)
            throw DegeneracyError("dressed_excited_state: qubit-like level is degenerate");

    QubitLikeLevel level;
    level.energy = model.omega_q + eig.values(best);
    level.vector = eig.vectors.col(best);
    const Complex lead = level.vector(0);
    if (std::abs(lead) > 0.0)
        level.vector *= std::conj(lead) / std::abs(lead);
    return level;
}

}  // namespace

void DressedModel::validate() const
{
    if (omegas.empty())
        throw std::invalid_argument("dressed model: at least one oscillator is required");
    if (!(omega_q > 0.0) || !std::isfinite(omega_q))
        throw std::invalid_argument("dressed model: qubit frequency must be positive");
    for (double w : omegas)
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("dressed model: oscillator frequencies must be positive");
    if (!(g >= 0.0) || !std::isfinite(g))
        throw std::invalid_argument("dressed model: coupling must be non-negative");
}

std::vector<double> DressedModel::detunings() const
{
    std::vector<double> out;
    out.reserve(omegas.size());
    for (double w : omegas)
        out.push_back(omega_q - w);
    return out;
}

double DressedModel::min_abs_detuning() const
{
    double m = std::numeric_limits<double>::infinity();
    for (double delta : detunings())
        m = std::min(m, std::abs(delta));
    return m;
}

ComplexMatrix build_single_excitation_hamiltonian(const DressedModel& model)
{
    model.validate();
    const auto n = static_cast<Eigen::Index>(model.oscillator_count());
    ComplexMatrix h = ComplexMatrix::Zero(n + 1, n + 1);
    h(0, 0) = model.omega_q;
    for (Eigen::Index j = 0; j < n; ++j) {
        h(j + 1, j + 1) = model.omegas[static_cast<std::size_t>(j)];
        h(0, j + 1) = 0.5 * model.g;
        h(j + 1, 0) = 0.5 * model.g;
    }
    return h;
}

ComplexMatrix build_low_energy_hamiltonian(const DressedModel& model)
{
    const ComplexMatrix block = build_single_excitation_hamiltonian(model);
    ComplexMatrix h = ComplexMatrix::Zero(block.rows() + 1, block.cols() + 1);
    h.bottomRightCorner(block.rows(), block.cols()) = block;
    return h;
}

double perturbative_gap(const DressedModel& model)
{
    model.validate();
    const double sum = detuning_sum(model, 1);
    return (model.omega_q + 0.25 * model.g * model.g * sum) / kTwoPi;
}

double exact_gap(const DressedModel& model)
{
    return select_qubit_like_level(model).energy / kTwoPi;
}

DressedState dressed_excited_state(const DressedModel& model)
{
    const QubitLikeLevel level = select_qubit_like_level(model);
    const Eigen::Index n = level.vector.size() - 1;

    const double cos_half = std::min(1.0, std::abs(level.vector(0)));
    Ket rest = level.vector.tail(n);
    const double sin_half = rest.norm();

    DressedState state;
    state.theta = 2.0 * std::atan2(sin_half, cos_half);
    state.energy_gap_hz = level.energy / kTwoPi;
    state.psi1_coeffs.resize(static_cast<std::size_t>(n));
    if (sin_half > 1e-14) {
        rest /= sin_half;
    } else {
        const std::vector<double> deltas = model.detunings();
        for (Eigen::Index j = 0; j < n; ++j)
            rest(j) = 1.0 / deltas[static_cast<std::size_t>(j)];
        rest.normalize();
    }
    for (Eigen::Index j = 0; j < n; ++j)
        state.psi1_coeffs[static_cast<std::size_t>(j)] = rest(j);
    return state;
}

Ket excited_state_vector(const DressedState& state)
{
    const auto n = static_cast<Eigen::Index>(state.psi1_coeffs.size());
    Ket e(n + 1);
    e(0) = std::cos(0.5 * state.theta);
    const double s = std::sin(0.5 * state.theta);
    for (Eigen::Index j = 0; j < n; ++j)
        e(j + 1) = s * state.psi1_coeffs[static_cast<std::size_t>(j)];
    return e;
}

double perturbative_cos_half_theta(const DressedModel& model)
{
    model.validate();
    return 1.0 - model.g * model.g / 8.0 * detuning_sum(model, 2);
}

ShiftInversion theta_from_shift(double observed_shift_hz, const DressedModel& model_template)
{
    DressedModel model = model_template;
    model.g = 0.0;
    model.validate();
    if (!std::isfinite(observed_shift_hz))
        throw std::invalid_argument("theta_from_shift: shift must be finite");

    const double inverse_sum = detuning_sum(model, 1);
    if (observed_shift_hz == 0.0)
        return {0.0, dressed_excited_state(model).theta};
    if (inverse_sum == 0.0 || std::signbit(observed_shift_hz) != std::signbit(inverse_sum))
        throw std::domain_error("theta_from_shift: shift sign is inconsistent with the template detunings");

    const double f0 = model.omega_q / kTwoPi;
    auto residual = [&](double g) {
        model.g = g;
        return std::abs(perturbative_gap(model) - f0) - std::abs(observed_shift_hz);
    };

    double lo = 0.0;
    double hi = 0.5 * model.min_abs_detuning();
    if (residual(hi) < 0.0)
        throw std::domain_error("theta_from_shift: shift magnitude exceeds the perturbative range of the template");

    // |shift| grows monotonically with g.
    while (hi - lo > 1e-9 * hi) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) < 0.0 ? lo : hi) = mid;
    }
    model.g = 0.5 * (lo + hi);
    return {model.g, dressed_excited_state(model).theta};
}

}  // namespace qent
