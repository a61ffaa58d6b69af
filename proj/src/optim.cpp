#include "formkit/optim.hpp"

#include <cmath>

namespace formkit::optim {

Result minimize(const Objective& f, Eigen::VectorXd x0, Options opts) {
  const int n = static_cast<int>(x0.size());
  Result res;
  res.x = std::move(x0);
  res.gradient.resize(n);
  res.value = f(res.x, res.gradient);

  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
  for (int it = 0; it < opts.max_iters; ++it) {
    res.iterations = it;
    if (res.gradient.lpNorm<Eigen::Infinity>() < opts.grad_tol) {
      res.converged = true;
      return res;
    }
    Eigen::VectorXd d = -H * res.gradient;
    double slope = res.gradient.dot(d);
    if (slope >= 0.0) {  // reset on loss of descent
      H.setIdentity();
      d = -res.gradient;
      slope = res.gradient.dot(d);
    }

    double step = 1.0;
    Eigen::VectorXd x_new(n), g_new(n);
    double v_new = res.value;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = res.x + step * d;
      v_new = f(x_new, g_new);
      if (std::isfinite(v_new) && v_new <= res.value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.converged = res.gradient.lpNorm<Eigen::Infinity>() < 10 * opts.grad_tol;
      return res;
    }

    const Eigen::VectorXd s = x_new - res.x;
    const Eigen::VectorXd y = g_new - res.gradient;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      const Eigen::VectorXd Hy = H * y;
      const double yHy = y.dot(Hy);
      H += ((sy + yHy) / (sy * sy)) * (s * s.transpose()) -
           (Hy * s.transpose() + s * Hy.transpose()) / sy;
    }
    res.x = std::move(x_new);
    res.gradient = std::move(g_new);
    res.value = v_new;
  }
  res.converged = res.gradient.lpNorm<Eigen::Infinity>() < opts.grad_tol;
  return res;
}

Result minimize_fd(const std::function<double(const Eigen::VectorXd&)>& f, Eigen::VectorXd x0,
                   Options opts, double fd_step) {
  auto wrapped = [&f, fd_step](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    const double v = f(x);
    Eigen::VectorXd probe = x;
    for (int i = 0; i < x.size(); ++i) {
      const double h = fd_step * std::max(1.0, std::abs(x(i)));
      probe(i) = x(i) + h;
      const double up = f(probe);
      probe(i) = x(i) - h;
      const double down = f(probe);
      probe(i) = x(i);
      grad(i) = (up - down) / (2.0 * h);
    }
    return v;
  };
  return minimize(wrapped, std::move(x0), opts);
}

}  // namespace formkit::optim
