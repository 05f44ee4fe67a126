// tripartite.hpp: expansion of a two-qubit state over {|0g>, |0e>, |1g>, |1e>}
// into an explicit qubit A - qubit B - tardigrade (effective qubit T) state.
//
// The dressed states expand as
//   |g> -> |0, 0_T>
//   |e> -> cos(theta/2) |1, 0_T> + sin(theta/2) |0, 1_T>
// so B and T are never simultaneously excited.
//
// Two orderings of the eight-dimensional space are used:
//   * "tabulated" order {000, 010, 001, 011, 100, 110, 101, 111}, the row
//     order of the closed-form entry table;
//   * lexicographic A (x) B (x) T order, used by every hilbert routine.
// The permutation between them swaps slots 1<->2 and 5<->6.

#pragma once

#include "qent/hilbert.hpp"

#include <array>

namespace qent::tripartite {

/// tabulated index -> lexicographic index (the map is an involution).
inline constexpr std::array<std::size_t, 8> kTabulatedToLexicographic = {0, 2, 1, 3, 4, 6, 5, 7};

/// Tabulated slots of |011> and |111>, whose rows and columns vanish.
inline constexpr std::array<std::size_t, 2> kForbiddenSlots = {3, 7};

/// Entries below this magnitude count as zero.
inline constexpr double kZeroTol = 1e-12;

/// Maximum entrywise disagreement tolerated between the two expansion routes.
inline constexpr double kRouteAgreementTol = 1e-12;

ComplexMatrix to_lexicographic(const ComplexMatrix& tabulated);
ComplexMatrix to_tabulated(const ComplexMatrix& lexicographic);

struct TripartiteState {
    double theta = 0.0;
    ComplexMatrix tabulated;   ///< 8x8 in tabulated order
    DensityMatrix rho_abt;     ///< dims {2, 2, 2}, lexicographic
};

/// Closed-form route: every entry of the 8x8 matrix written as rho_ij times
/// a trigonometric factor.
ComplexMatrix expand_entry_formula(const ComplexMatrix& rho4, double theta);

/// Isometry route: V rho V^dagger with V mapping the dressed basis into the
/// tabulated 8-dimensional basis.
ComplexMatrix expand_isometry(const ComplexMatrix& rho4, double theta);

/// 8x4 isometry in tabulated order.
ComplexMatrix expansion_isometry(double theta);

/// Runs both routes and throws std::logic_error if they disagree beyond
/// kRouteAgreementTol. Throws std::invalid_argument unless theta in [0, pi]
/// and rho is a 4-dimensional state.
TripartiteState expand(const DensityMatrix& rho, double theta);

/// True iff all 28 entries in the |011> and |111> rows and columns are below kZeroTol.
bool verify_zero_pattern(const TripartiteState& state);
bool verify_zero_pattern(const ComplexMatrix& tabulated);

/// Number of entries with magnitude below kZeroTol.
int count_zero_entries(const ComplexMatrix& m);

}  // namespace qent::tripartite
