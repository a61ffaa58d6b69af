#pragma once

#include <Eigen/Dense>

#include <functional>

namespace formkit::optim {

struct Options {
  int max_iters = 300;
  double grad_tol = 1e-8;  // infinity norm
};

struct Result {
  Eigen::VectorXd x;
  double value = 0.0;
  Eigen::VectorXd gradient;
  int iterations = 0;
  bool converged = false;
};

/// Objective returning the value and filling the gradient.
using Objective = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

/// BFGS with Armijo backtracking.
Result minimize(const Objective& f, Eigen::VectorXd x0, Options opts = {});

/// Wraps a value-only objective with central finite differences.
Result minimize_fd(const std::function<double(const Eigen::VectorXd&)>& f, Eigen::VectorXd x0,
                   Options opts = {}, double fd_step = 1e-6);

}  // namespace formkit::optim
