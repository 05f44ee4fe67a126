// dressed_model.hpp: a qubit coupled to N harmonic oscillators under the
// rotating-wave approximation, restricted to the single-excitation sector.
//
// Units: every omega is an angular frequency in rad/s; every *_hz value is an
// ordinary frequency in Hz. Energies are expressed as angular frequencies
// (hbar = 1) with the ground state |0>|0...0> at zero.

#pragma once

#include "qent/hilbert.hpp"

#include <stdexcept>
#include <vector>

namespace qent {

/// Raised when a detuning omega_q - omega_j vanishes and perturbation theory has a pole.
class ResonanceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when the qubit-like excited level cannot be singled out.
class DegeneracyError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct DressedModel {
    double omega_q = 0.0;        ///< qubit angular frequency
    std::vector<double> omegas;  ///< oscillator angular frequencies
    double g = 0.0;              ///< coupling angular frequency, shared by all oscillators

    std::size_t oscillator_count() const noexcept { return omegas.size(); }

    /// Throws std::invalid_argument unless N >= 1, all frequencies > 0 and g >= 0.
    void validate() const;

    /// omega_q - omega_j
    std::vector<double> detunings() const;

    /// Smallest |omega_q - omega_j|.
    double min_abs_detuning() const;
};

struct DressedState {
    double theta = 0.0;               ///< mixing angle in [0, pi]
    std::vector<Complex> psi1_coeffs; ///< c_j of the oscillator-side state, unit norm
    double energy_gap_hz = 0.0;
};

/// (N+1)x(N+1) block over {|1>|0..0>, |0>|1_1 0..>, ..., |0>|0..1_N>}.
/// Diagonal holds bare frequencies; the qubit row and column carry g/2.
ComplexMatrix build_single_excitation_hamiltonian(const DressedModel& model);

/// Ground state |0>|0..0> at index 0 followed by the single-excitation block.
/// The ground state is uncoupled for any g.
ComplexMatrix build_low_energy_hamiltonian(const DressedModel& model);

/// Second-order gap (1/2pi)(omega_q + (g^2/4) sum_j 1/(omega_q - omega_j)).
/// Throws ResonanceError if any detuning is zero.
double perturbative_gap(const DressedModel& model);

/// Exact energy of the qubit-like excited level in Hz.
double exact_gap(const DressedModel& model);

/// Exact dressed excited state cos(theta/2)|1>|0..0> + sin(theta/2)|0>|psi1>.
///
/// The qubit-like eigenvector is the one with the largest |<1,0..0|e>|; a tie
/// in overlap goes to the lower energy. The global phase makes the qubit
/// amplitude real and non-negative. When sin(theta/2) vanishes the
/// coefficients fall back to the first-order direction c_j ~ 1/delta_j.
/// Throws DegeneracyError if the selected level lies within 1e-9 omega_q of
/// another single-excitation level.
DressedState dressed_excited_state(const DressedModel& model);

/// Amplitudes of |e> in the single-excitation basis of
/// build_single_excitation_hamiltonian.
Ket excited_state_vector(const DressedState& state);

/// cos(theta/2) ~ 1 - (g^2/8) sum_j 1/delta_j^2, valid for small g.
double perturbative_cos_half_theta(const DressedModel& model);

struct ShiftInversion {
    double g = 0.0;     ///< coupling in rad/s
    double theta = 0.0; ///< mixing angle of the resulting dressed state
};

/// Finds the coupling g in [0, 0.5 min|delta_j|] for which
/// perturbative_gap - omega_q/2pi equals observed_shift_hz (bisection, 1e-9
/// relative), then evaluates theta at that g. The template's own g is ignored.
/// Throws std::domain_error if the shift has the wrong sign for the template
/// detunings or exceeds what the bracket can reach.
ShiftInversion theta_from_shift(double observed_shift_hz, const DressedModel& model_template);

}  // namespace qent
