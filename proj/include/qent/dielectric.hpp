// dielectric.hpp: transmon level structure and the frequency shift caused by
// a dielectric body loading the shunt capacitor.

#pragma once

#include <vector>

namespace qent::dielectric {

inline constexpr double kElementaryCharge = 1.602176634e-19; // C
inline constexpr double kHbar = 1.054571817e-34;             // J s

struct TransmonParams {
    double E_c = 0.0;          ///< charging energy, J
    double E_j = 0.0;          ///< Josephson energy, J
    double delta_anharm = 0.0; ///< anharmonicity, rad/s
    double C = 0.0;            ///< shunt capacitance, F

    /// E_c = e^2 / 2C.
    static TransmonParams from_capacitance(double capacitance, double josephson_energy, double anharmonicity = 0.0);

    /// Picks C so that qubit_frequency equals f0_hz at the given E_j / E_c ratio.
    static TransmonParams from_frequency_and_ratio(double f0_hz, double ej_over_ec, double anharmonicity = 0.0);

    /// Uses |delta| = E_c / hbar to fix E_c, then solves hbar omega = sqrt(E_c E_j) - E_c for E_j.
    static TransmonParams from_frequency_and_anharmonicity(double f0_hz, double anharmonicity);

    /// Throws std::invalid_argument unless E_j > E_c > 0 and C > 0.
    void validate() const;
};

double charging_energy(double capacitance);

/// f = omega / 2pi with hbar omega = sqrt(E_c E_j) - E_c.
double qubit_frequency(const TransmonParams& p);

/// omega_j / 2pi for j = 0..j_max, omega_j = (omega - delta/2) j + (delta/2) j^2.
std::vector<double> transmon_levels(const TransmonParams& p, int j_max);

/// Effective capacitance C (1 + participation (eps_r - 1)).
double effective_capacitance(double capacitance, double eps_r, double participation);

/// Qubit frequency after loading a fraction `participation` of the shunt
/// capacitance with relative permittivity eps_r.
double shifted_frequency(const TransmonParams& p, double eps_r, double participation);

/// Participation in [0, 1] reproducing f0 + observed_shift at eps_r, by
/// bisection to 1e-12 relative. `p` must have qubit frequency f0.
/// Throws std::domain_error if no participation <= 1 reaches the shift.
double fit_participation(double f0, double observed_shift, double eps_r, const TransmonParams& p);

struct SweepPoint {
    double eps_r = 0.0;
    double frequency_hz = 0.0;
    double shift_hz = 0.0;
};

/// Frequency and shift relative to the unloaded qubit for each permittivity.
std::vector<SweepPoint> permittivity_sweep(const TransmonParams& p, const std::vector<double>& eps_values,
                                           double participation);

}  // namespace qent::dielectric
