// tomography.hpp: two-qubit state preparation, synthetic tomography data and
// maximum-likelihood reconstruction.
//
// The two-qubit basis is {|0g>, |0e>, |1g>, |1e>}: qubit A is the most
// significant factor and the dressed B-T pair ({g, e}) the second.

#pragma once

#include "qent/hilbert.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qent::tomography {

/// Single-qubit pre-measurement rotations.
enum class Gate { I, X90, Y90, X180 };

inline constexpr std::array<Gate, 4> kGates = {Gate::I, Gate::X90, Gate::Y90, Gate::X180};

std::string_view gate_name(Gate gate);
/// Throws std::invalid_argument for unknown names.
Gate parse_gate(std::string_view name);
ComplexMatrix gate_matrix(Gate gate);

struct MeasurementSetting {
    Gate gate_a = Gate::I;
    Gate gate_b = Gate::I;
    friend bool operator==(const MeasurementSetting&, const MeasurementSetting&) = default;
};

/// The 16 settings in gate_a-major order.
std::vector<MeasurementSetting> all_settings();

/// Outcome order {00, 01, 10, 11}.
using OutcomeCounts = std::array<std::uint64_t, 4>;
using OutcomeWeights = std::array<double, 4>;

struct SettingCounts {
    MeasurementSetting setting;
    OutcomeCounts counts{};
};

struct TomographyRecord {
    std::uint64_t shots = 0;
    std::vector<SettingCounts> entries;

    /// Throws std::invalid_argument unless there are 16 distinct settings
    /// forming the full product set and every row sums to `shots`.
    void validate() const;
};

/// Depolarizing mix (1 - noise) rho + noise I/4.
DensityMatrix depolarize(const DensityMatrix& rho, double noise);

/// Born probabilities after applying the setting's rotations.
OutcomeWeights outcome_probabilities(const DensityMatrix& rho, const MeasurementSetting& setting);

/// Measurement operators U^dagger |k><k| U for every setting and outcome (64 total).
std::vector<ComplexMatrix> povm_elements(const std::vector<MeasurementSetting>& settings);

/// Numerical rank of the Gram matrix of the vectorized POVM elements.
int povm_gram_rank(const std::vector<MeasurementSetting>& settings);

/// Hadamard on A, then a NOT on the B-T pair conditioned on A = |0>, applied to |0g>.
/// Yields (|0e> + |1g>) / sqrt 2.
Ket ideal_state();

DensityMatrix ideal_density_matrix();

/// Multinomial sampling of every setting with a seeded mt19937_64.
/// Deterministic for fixed arguments.
TomographyRecord simulate_counts(const DensityMatrix& rho, std::uint64_t shots, std::uint64_t seed,
                                 double noise = 0.0);

/// Expected (infinite-statistics) counts shots * p, one row per setting.
std::vector<OutcomeWeights> expected_counts(const DensityMatrix& rho, double shots, double noise = 0.0);

struct MleOptions {
    int max_iterations = 10000;
    int restarts = 3;              ///< extra runs from perturbed starts
    std::uint64_t restart_seed = 7;
    double gradient_tolerance = 1e-12;
};

struct MleResult {
    DensityMatrix rho = DensityMatrix::maximally_mixed({2, 2});
    double log_likelihood = 0.0;   ///< sum n ln(S p) - S p over every outcome
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective_history; ///< accepted-iterate objective values of the winning run
};

/// Density matrix T^dagger T / Tr(T^dagger T) for the 16 real parameters of
/// a lower-triangular T: four real diagonal entries, then (re, im) pairs of
/// the six strictly-lower entries in row-major order.
ComplexMatrix cholesky_density(const Eigen::VectorXd& t);

/// Parameters of T = I/2, the maximally mixed starting point.
Eigen::VectorXd maximally_mixed_parameters();

/// Poissonian negative log-likelihood sum [S p - n ln(S p)] with p floored at 1e-12.
double negative_log_likelihood(const ComplexMatrix& rho, const std::vector<MeasurementSetting>& settings,
                               const std::vector<OutcomeWeights>& counts, double shots);

/// Objective minimized by mle_reconstruct at Cholesky parameters t: the
/// count-normalized negative log-likelihood plus (Tr T^dagger T - 1)^2.
/// Writes the analytic gradient into `grad`.
double mle_objective(const std::vector<MeasurementSetting>& settings, const std::vector<OutcomeWeights>& counts,
                     const Eigen::VectorXd& t, Eigen::VectorXd& grad);

/// Reconstruction from possibly non-integer counts.
MleResult mle_reconstruct(const std::vector<MeasurementSetting>& settings, const std::vector<OutcomeWeights>& counts,
                          double shots, const MleOptions& options = {});

MleResult mle_reconstruct(const TomographyRecord& record, const MleOptions& options = {});

/// Jozsa fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qent::tomography
