#include "qent/entanglement.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace qent::entanglement {

double negativity(const DensityMatrix& rho, std::span<const std::size_t> cut)
{
    const std::size_t parties = rho.subsystem_count();
    if (cut.empty() || cut.size() >= parties)
        throw std::invalid_argument("negativity: cut must be a nonempty proper subset of the subsystems");
    std::vector<bool> seen(parties, false);
    for (std::size_t s : cut) {
        if (s >= parties || seen[s])
            throw std::invalid_argument("negativity: invalid subsystem in cut");
        seen[s] = true;
    }
    // ||X||_1 - 1 with Tr X = 1, written as twice the negative spectral weight
    // so that PPT states give exactly zero instead of a rounding residue.
    const RealVector ev = eigh(partial_transpose(rho, cut)).values;
    const double n = -2.0 * ev.cwiseMin(0.0).sum();
    return std::max(0.0, n);
}

double negativity(const DensityMatrix& rho, std::initializer_list<std::size_t> cut)
{
    return negativity(rho, std::span<const std::size_t>(cut.begin(), cut.size()));
}

EntanglementReport pi_tangle(const DensityMatrix& rho_abc)
{
    if (rho_abc.dims() != std::vector<std::size_t>{2, 2, 2})
        throw std::invalid_argument("pi_tangle: a three-qubit state is required");

    EntanglementReport r;
    r.n_a_bc = negativity(rho_abc, {0});
    r.n_b_ac = negativity(rho_abc, {1});
    r.n_c_ab = negativity(rho_abc, {2});
    r.n_ab = negativity(partial_trace(rho_abc, {0, 1}), {0});
    r.n_ac = negativity(partial_trace(rho_abc, {0, 2}), {0});
    r.n_bc = negativity(partial_trace(rho_abc, {1, 2}), {0});

    auto sq = [](double x) { return x * x; };
    r.pi_a = sq(r.n_a_bc) - sq(r.n_ab) - sq(r.n_ac);
    r.pi_b = sq(r.n_b_ac) - sq(r.n_ab) - sq(r.n_bc);
    r.pi_c = sq(r.n_c_ab) - sq(r.n_ac) - sq(r.n_bc);
    r.pi_tangle = (r.pi_a + r.pi_b + r.pi_c) / 3.0;
    r.pi_tangle_floored = std::max(0.0, r.pi_tangle);
    return r;
}

EntanglementReport pi_tangle(const tripartite::TripartiteState& state)
{
    return pi_tangle(state.rho_abt);
}

std::vector<SweepRow> theta_sweep(const DensityMatrix& rho4, const std::vector<double>& thetas)
{
    std::vector<SweepRow> rows;
    rows.reserve(thetas.size());
    for (double theta : thetas)
        rows.push_back({theta, pi_tangle(tripartite::expand(rho4, theta))});
    return rows;
}

std::vector<double> theta_grid(std::size_t points, double lo, double hi)
{
    if (points == 0)
        throw std::invalid_argument("theta_grid: at least one point is required");
    if (!(lo <= hi))
        throw std::invalid_argument("theta_grid: lower bound exceeds upper bound");
    std::vector<double> grid(points);
    if (points == 1) {
        grid[0] = lo;
        return grid;
    }
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = lo + step * static_cast<double>(i);
    grid.back() = hi;
    return grid;
}

std::vector<double> default_theta_grid()
{
    return theta_grid(101, 0.0, std::numbers::pi);
}

}  // namespace qent::entanglement
