#include "qent/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace qent {

namespace {

struct CurvaturePair {
    Eigen::VectorXd s;
    Eigen::VectorXd y;
    double rho;
};

// Two-loop recursion: returns -H * grad.
Eigen::VectorXd search_direction(const std::deque<CurvaturePair>& memory, const Eigen::VectorXd& grad)
{
    Eigen::VectorXd q = grad;
    std::vector<double> alpha(memory.size());
    for (std::size_t i = memory.size(); i-- > 0;) {
        alpha[i] = memory[i].rho * memory[i].s.dot(q);
        q -= alpha[i] * memory[i].y;
    }
    if (!memory.empty()) {
        const auto& last = memory.back();
        q *= last.s.dot(last.y) / last.y.squaredNorm();
    }
    for (std::size_t i = 0; i < memory.size(); ++i) {
        const double beta = memory[i].rho * memory[i].y.dot(q);
        q += (alpha[i] - beta) * memory[i].s;
    }
    return -q;
}

}  // namespace

LbfgsResult minimize_lbfgs(const Objective& objective, Eigen::VectorXd x0, const LbfgsOptions& options)
{
    constexpr double kArmijo = 1e-4;
    constexpr int kMaxBacktracks = 60;

    LbfgsResult result;
    Eigen::VectorXd x = std::move(x0);
    Eigen::VectorXd grad(x.size());
    double value = objective(x, grad);
    result.value_history.push_back(value);

    std::deque<CurvaturePair> memory;
    Eigen::VectorXd trial(x.size());
    Eigen::VectorXd trial_grad(x.size());
    int stalled = 0;

    int it = 0;
    for (; it < options.max_iterations; ++it) {
        if (grad.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance) {
            result.converged = true;
            break;
        }

        Eigen::VectorXd direction = search_direction(memory, grad);
        double slope = grad.dot(direction);
        if (!(slope < 0.0)) {
            memory.clear();
            direction = -grad;
            slope = -grad.squaredNorm();
        }

        // First step without curvature information is scaled to unit length.
        double step = memory.empty() ? std::min(1.0, 1.0 / direction.norm()) : 1.0;
        double trial_value = 0.0;
        bool accepted = false;
        for (int bt = 0; bt < kMaxBacktracks; ++bt) {
            trial = x + step * direction;
            trial_value = objective(trial, trial_grad);
            if (std::isfinite(trial_value) && trial_value <= value + kArmijo * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // Direction exhausted: restart from steepest descent once, else give up.
            if (!memory.empty()) {
                memory.clear();
                continue;
            }
            result.converged = grad.lpNorm<Eigen::Infinity>() <= std::sqrt(options.gradient_tolerance);
            break;
        }

        CurvaturePair pair{trial - x, trial_grad - grad, 0.0};
        const double sy = pair.s.dot(pair.y);
        if (sy > 1e-14 * pair.s.norm() * pair.y.norm()) {
            pair.rho = 1.0 / sy;
            memory.push_back(std::move(pair));
            if (static_cast<int>(memory.size()) > options.history)
                memory.pop_front();
        }

        const double decrease = value - trial_value;
        x = trial;
        grad = trial_grad;
        value = trial_value;
        result.value_history.push_back(value);

        if (decrease <= options.relative_tolerance * std::max(1.0, std::abs(value))) {
            if (++stalled >= options.stall_iterations) {
                result.converged = true;
                ++it;
                break;
            }
        } else {
            stalled = 0;
        }
    }

    result.x = std::move(x);
    result.value = value;
    result.iterations = it;
    return result;
}

}  // namespace qent
