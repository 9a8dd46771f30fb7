#pragma once

#include <Eigen/Dense>
#include <functional>

namespace qfo {

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;

struct OptimResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int evaluations = 0;
    int iterations = 0;
};

/// Nelder-Mead simplex minimization. Deterministic for fixed inputs.
OptimResult nelder_mead(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                        double initial_step, int max_iterations,
                        double tolerance);

/// BFGS minimization with central-difference gradients and backtracking
/// line search. Polishing stage for a smooth objective.
OptimResult bfgs_fd(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                    int max_iterations, double gradient_tolerance,
                    double fd_step = 1e-6);

}  // namespace qfo
