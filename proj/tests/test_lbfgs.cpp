#include "qent/lbfgs.hpp"

#include <doctest.h>

using namespace qent;

TEST_CASE("quadratic bowl")
{
    Eigen::MatrixXd a(3, 3);
    a << 4, 1, 0, 1, 3, 0.5, 0, 0.5, 2;
    const Eigen::VectorXd b = Eigen::Vector3d(1, -2, 0.5);
    const Objective f = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
        g = a * x - b;
        return 0.5 * x.dot(a * x) - b.dot(x);
    };
    const auto r = minimize_lbfgs(f, Eigen::VectorXd::Zero(3));
    CHECK(r.converged);
    CHECK((r.x - a.ldlt().solve(b)).norm() < 1e-9);
}

TEST_CASE("Rosenbrock")
{
    const Objective f = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
        const double u = 1 - x(0), v = x(1) - x(0) * x(0);
        g(0) = -2 * u - 400 * x(0) * v;
        g(1) = 200 * v;
        return u * u + 100 * v * v;
    };
    const auto r = minimize_lbfgs(f, Eigen::Vector2d(-1.2, 1.0));
    CHECK(r.x(0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.x(1) == doctest::Approx(1.0).epsilon(1e-6));
    REQUIRE(r.value_history.size() >= 2);
    for (std::size_t k = 1; k < r.value_history.size(); ++k)
        CHECK(r.value_history[k] <= r.value_history[k - 1]);
    CHECK(r.value == r.value_history.back());
}

TEST_CASE("already at the minimum")
{
    const Objective f = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
        g = 2 * x;
        return x.squaredNorm();
    };
    const auto r = minimize_lbfgs(f, Eigen::VectorXd::Zero(4));
    CHECK(r.converged);
    CHECK(r.iterations == 0);
}
