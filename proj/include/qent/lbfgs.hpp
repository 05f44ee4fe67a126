// lbfgs.hpp: limited-memory BFGS with a backtracking Armijo line search.

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace qent {

/// Returns f(x) and writes the gradient into `grad` (already sized).
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

struct LbfgsOptions {
    int max_iterations = 10000;
    int history = 8;
    double gradient_tolerance = 1e-10;  ///< on the infinity norm of the gradient
    double relative_tolerance = 1e-15;  ///< on |f_k - f_{k+1}| / max(1, |f_k|)
    int stall_iterations = 20;          ///< consecutive sub-tolerance steps before stopping
};

struct LbfgsResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> value_history; ///< f at the start point and after each accepted step
};

LbfgsResult minimize_lbfgs(const Objective& objective, Eigen::VectorXd x0, const LbfgsOptions& options = {});

}  // namespace qent
