#include "qent/tripartite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qent::tripartite {

namespace {

enum class Factor { Zero, One, C, S, CC, CS, SS };

struct Cell {
    int i; // 1-based row of rho4
    int j; // 1-based column of rho4
    Factor f;
};

constexpr Cell O{0, 0, Factor::Zero};

// The closed-form matrix, transcribed cell by cell in tabulated order.
// c = cos(theta/2), s = sin(theta/2).
constexpr std::array<std::array<Cell, 8>, 8> kTable = {{
    // <000|
    {{{1, 1, Factor::One}, {1, 2, Factor::C}, {1, 2, Factor::S}, O,
      {1, 3, Factor::One}, {1, 4, Factor::C}, {1, 4, Factor::S}, O}},
    // <010|
    {{{2, 1, Factor::C}, {2, 2, Factor::CC}, {2, 2, Factor::CS}, O,
      {2, 3, Factor::C}, {2, 4, Factor::CC}, {2, 4, Factor::CS}, O}},
    // <001|
    {{{2, 1, Factor::S}, {2, 2, Factor::CS}, {2, 2, Factor::SS}, O,
      {2, 3, Factor::S}, {2, 4, Factor::CS}, {2, 4, Factor::SS}, O}},
    // <011|
    {{O, O, O, O, O, O, O, O}},
    // <100|
    {{{3, 1, Factor::One}, {3, 2, Factor::C}, {3, 2, Factor::S}, O,
      {3, 3, Factor::One}, {3, 4, Factor::C}, {3, 4, Factor::S}, O}},
    // <110|
    {{{4, 1, Factor::C}, {4, 2, Factor::CC}, {4, 2, Factor::CS}, O,
      {4, 3, Factor::C}, {4, 4, Factor::CC}, {4, 4, Factor::CS}, O}},
    // <101|
    {{{4, 1, Factor::S}, {4, 2, Factor::CS}, {4, 2, Factor::SS}, O,
      {4, 3, Factor::S}, {4, 4, Factor::CS}, {4, 4, Factor::SS}, O}},
    // <111|
    {{O, O, O, O, O, O, O, O}},
}};

double factor_value(Factor f, double c, double s)
{
    switch (f) {
    case Factor::Zero: return 0.0;
    case Factor::One: return 1.0;
    case Factor::C: return c;
    case Factor::S: return s;
    case Factor::CC: return c * c;
    case Factor::CS: return c * s;
    case Factor::SS: return s * s;
    }
    return 0.0;
}

void require_theta(double theta)
{
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw std::invalid_argument("tripartite expansion: theta must lie in [0, pi]");
}

void require_four(const ComplexMatrix& rho4)
{
    if (rho4.rows() != 4 || rho4.cols() != 4)
        throw std::invalid_argument("tripartite expansion: a 4x4 input is required");
}

ComplexMatrix permute(const ComplexMatrix& m)
{
    ComplexMatrix out(8, 8);
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c)
            out(static_cast<Eigen::Index>(kTabulatedToLexicographic[r]),
                static_cast<Eigen::Index>(kTabulatedToLexicographic[c])) =
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    return out;
}

}  // namespace

ComplexMatrix to_lexicographic(const ComplexMatrix& tabulated)
{
    return permute(tabulated);
}

ComplexMatrix to_tabulated(const ComplexMatrix& lexicographic)
{
    return permute(lexicographic);
}

ComplexMatrix expand_entry_formula(const ComplexMatrix& rho4, double theta)
{
    require_four(rho4);
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    ComplexMatrix out(8, 8);
    for (Eigen::Index r = 0; r < 8; ++r)
        for (Eigen::Index col = 0; col < 8; ++col) {
            const Cell& cell = kTable[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            out(r, col) = cell.f == Factor::Zero ? Complex(0.0)
                                                 : rho4(cell.i - 1, cell.j - 1) * factor_value(cell.f, c, s);
        }
    return out;
}

ComplexMatrix expansion_isometry(double theta)
{
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    ComplexMatrix v = ComplexMatrix::Zero(8, 4);
    v(0, 0) = 1.0; // |0g> -> |000>
    v(1, 1) = c;   // |0e> -> c|010> + s|001>
    v(2, 1) = s;
    v(4, 2) = 1.0; // |1g> -> |100>
    v(5, 3) = c;   // |1e> -> c|110> + s|101>
    v(6, 3) = s;
    return v;
}

ComplexMatrix expand_isometry(const ComplexMatrix& rho4, double theta)
{
    require_four(rho4);
    const ComplexMatrix v = expansion_isometry(theta);
    return v * rho4 * v.adjoint();
}

TripartiteState expand(const DensityMatrix& rho, double theta)
{
    require_theta(theta);
    if (rho.dim() != 4)
        throw std::invalid_argument("tripartite expansion: a two-qubit state is required");

    ComplexMatrix table = expand_entry_formula(rho.matrix(), theta);
    const ComplexMatrix conjugated = expand_isometry(rho.matrix(), theta);
    if ((table - conjugated).cwiseAbs().maxCoeff() > kRouteAgreementTol)
        throw std::logic_error("tripartite expansion: entry formula and isometry disagree");

    TripartiteState state{theta, table, DensityMatrix({2, 2, 2}, to_lexicographic(table))};
    return state;
}

bool verify_zero_pattern(const ComplexMatrix& tabulated)
{
    if (tabulated.rows() != 8 || tabulated.cols() != 8)
        throw std::invalid_argument("verify_zero_pattern: an 8x8 matrix is required");
    for (std::size_t slot : kForbiddenSlots) {
        const auto k = static_cast<Eigen::Index>(slot);
        if (tabulated.row(k).cwiseAbs().maxCoeff() >= kZeroTol || tabulated.col(k).cwiseAbs().maxCoeff() >= kZeroTol)
            return false;
    }
    return true;
}

bool verify_zero_pattern(const TripartiteState& state)
{
    return verify_zero_pattern(state.tabulated);
}

int count_zero_entries(const ComplexMatrix& m)
{
    return static_cast<int>((m.array().abs() < kZeroTol).count());
}

}  // namespace qent::tripartite
