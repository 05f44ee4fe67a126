#include "qent/dielectric.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qent::dielectric {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double require_positive(double value, const char* what)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
    return value;
}

}  // namespace

double charging_energy(double capacitance)
{
    require_positive(capacitance, "capacitance");
    return kElementaryCharge * kElementaryCharge / (2.0 * capacitance);
}

TransmonParams TransmonParams::from_capacitance(double capacitance, double josephson_energy, double anharmonicity)
{
    TransmonParams p;
    p.C = capacitance;
    p.E_c = charging_energy(capacitance);
    p.E_j = josephson_energy;
    p.delta_anharm = anharmonicity;
    p.validate();
    return p;
}

TransmonParams TransmonParams::from_frequency_and_ratio(double f0_hz, double ej_over_ec, double anharmonicity)
{
    require_positive(f0_hz, "qubit frequency");
    if (!(ej_over_ec > 1.0) || !std::isfinite(ej_over_ec))
        throw std::invalid_argument("E_j / E_c ratio must exceed 1");
    // hbar omega = E_c (sqrt(r) - 1)
    const double ec = kHbar * kTwoPi * f0_hz / (std::sqrt(ej_over_ec) - 1.0);
    const double capacitance = kElementaryCharge * kElementaryCharge / (2.0 * ec);
    return from_capacitance(capacitance, ej_over_ec * ec, anharmonicity);
}

TransmonParams TransmonParams::from_frequency_and_anharmonicity(double f0_hz, double anharmonicity)
{
    require_positive(f0_hz, "qubit frequency");
    const double ec = kHbar * std::abs(anharmonicity);
    require_positive(ec, "anharmonicity magnitude");
    const double root = kHbar * kTwoPi * f0_hz + ec; // sqrt(E_c E_j)
    const double capacitance = kElementaryCharge * kElementaryCharge / (2.0 * ec);
    return from_capacitance(capacitance, root * root / ec, anharmonicity);
}

void TransmonParams::validate() const
{
    require_positive(C, "capacitance");
    require_positive(E_c, "charging energy");
    if (std::abs(E_c - charging_energy(C)) > 1e-12 * E_c)
        throw std::invalid_argument("charging energy is inconsistent with E_c = e^2 / 2C");
    if (!std::isfinite(E_j) || !(E_j > E_c))
        throw std::invalid_argument("transmon regime requires E_j > E_c > 0");
    if (!std::isfinite(delta_anharm))
        throw std::invalid_argument("anharmonicity must be finite");
}

double qubit_frequency(const TransmonParams& p)
{
    p.validate();
    return (std::sqrt(p.E_c * p.E_j) - p.E_c) / (kHbar * kTwoPi);
}

std::vector<double> transmon_levels(const TransmonParams& p, int j_max)
{
    if (j_max < 1)
        throw std::invalid_argument("transmon_levels: j_max must be at least 1");
    const double f = qubit_frequency(p);
    const double half_delta_hz = 0.5 * p.delta_anharm / kTwoPi;
    std::vector<double> levels;
    levels.reserve(static_cast<std::size_t>(j_max) + 1);
    for (int j = 0; j <= j_max; ++j)
        levels.push_back((f - half_delta_hz) * j + half_delta_hz * j * j);
    return levels;
}

double effective_capacitance(double capacitance, double eps_r, double participation)
{
    if (!(eps_r >= 1.0) || !std::isfinite(eps_r))
        throw std::invalid_argument("relative permittivity must be >= 1");
    if (!(participation >= 0.0 && participation <= 1.0))
        throw std::invalid_argument("participation must lie in [0, 1]");
    return capacitance * (1.0 + participation * (eps_r - 1.0));
}

double shifted_frequency(const TransmonParams& p, double eps_r, double participation)
{
    p.validate();
    TransmonParams loaded = p;
    loaded.C = effective_capacitance(p.C, eps_r, participation);
    loaded.E_c = charging_energy(loaded.C);
    return qubit_frequency(loaded);
}

double fit_participation(double f0, double observed_shift, double eps_r, const TransmonParams& p)
{
    require_positive(f0, "f0");
    const double model_f0 = qubit_frequency(p);
    if (std::abs(model_f0 - f0) > 1e-6 * f0)
        throw std::invalid_argument("fit_participation: transmon parameters do not reproduce f0");
    if (!(observed_shift <= 0.0) || !std::isfinite(observed_shift))
        throw std::invalid_argument("fit_participation: observed shift must be non-positive");
    if (observed_shift == 0.0)
        return 0.0;
    if (!(eps_r > 1.0))
        throw std::invalid_argument("fit_participation: eps_r must exceed 1");

    const double target = f0 + observed_shift;
    auto residual = [&](double participation) { return shifted_frequency(p, eps_r, participation) - target; };
    if (residual(1.0) > 0.0)
        throw std::domain_error("fit_participation: shift is too large for any participation <= 1");

    // residual(0) = f0 - target > 0 and the frequency falls with participation.
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<SweepPoint> permittivity_sweep(const TransmonParams& p, const std::vector<double>& eps_values,
                                           double participation)
{
    const double f0 = qubit_frequency(p);
    std::vector<SweepPoint> out;
    out.reserve(eps_values.size());
    for (double eps : eps_values) {
        const double f = shifted_frequency(p, eps, participation);
        out.push_back({eps, f, f - f0});
    }
    return out;
}

}  // namespace qent::dielectric
