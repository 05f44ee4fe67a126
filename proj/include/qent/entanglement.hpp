// entanglement.hpp: doubled negativities and the pi-tangle of a three-qubit
// state A-B-T.

#pragma once

#include "qent/hilbert.hpp"
#include "qent/tripartite.hpp"

#include <vector>

namespace qent::entanglement {

/// Doubled negativity ||rho^{T_X}||_1 - 1 for the cut X vs the rest, computed as
/// twice the negative spectral weight of rho^{T_X} and floored at 0.
/// Throws std::invalid_argument unless `cut` is a nonempty proper subset.
double negativity(const DensityMatrix& rho, std::span<const std::size_t> cut);
double negativity(const DensityMatrix& rho, std::initializer_list<std::size_t> cut);

struct EntanglementReport {
    // one-vs-rest, on the full three-party state
    double n_a_bc = 0.0;
    double n_b_ac = 0.0;
    double n_c_ab = 0.0;
    // pairwise, on two-party reduced states
    double n_ab = 0.0;
    double n_ac = 0.0;
    double n_bc = 0.0;
    // residual tangles, possibly slightly negative for mixed states
    double pi_a = 0.0;
    double pi_b = 0.0;
    double pi_c = 0.0;
    double pi_tangle = 0.0;         ///< (pi_a + pi_b + pi_c) / 3
    double pi_tangle_floored = 0.0; ///< max(0, pi_tangle)
};

/// Subsystems are ordered A, B, C (C is the tardigrade T).
EntanglementReport pi_tangle(const DensityMatrix& rho_abc);
EntanglementReport pi_tangle(const tripartite::TripartiteState& state);

struct SweepRow {
    double theta = 0.0;
    EntanglementReport report;
};

/// Expands rho4 at each theta and reports every quantifier, rows in input order.
/// Each row is independent of the others.
std::vector<SweepRow> theta_sweep(const DensityMatrix& rho4, const std::vector<double>& thetas);

/// `points` evenly spaced angles from lo to hi inclusive.
std::vector<double> theta_grid(std::size_t points, double lo, double hi);

/// 101 points on [0, pi].
std::vector<double> default_theta_grid();

}  // namespace qent::entanglement
