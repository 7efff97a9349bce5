#pragma once

#include <Eigen/Core>
#include <functional>

namespace lppl {

struct BoxBounds {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
};

Eigen::VectorXd clamp_to_box(const BoxBounds& box, Eigen::VectorXd x);

struct SimplexResult {
    Eigen::VectorXd x;
    double f = 0.0;
    bool converged = false;
    int evals = 0;
};

// Bounded Nelder-Mead: candidate points are clamped into the box before
// evaluation. Stops when the simplex objective spread falls below tol or
// the evaluation budget is spent. max_evals <= 0 returns the evaluated x0.
SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                          const Eigen::VectorXd& x0, const BoxBounds& box, int max_evals,
                          double tol);

}  // namespace lppl
