#pragma once

#include <functional>

namespace formkit::quadrature {

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_depth = 60;
};

/// Adaptive Gauss-Kronrod (G7, K15) with interval bisection.
double integrate(const std::function<double(double)>& f, double a, double b, Options opts = {});

/// Integral over [a, infinity) via the map r = a + t/(1-t).
double integrate_half_line(const std::function<double(double)>& f, double a, Options opts = {});

}  // namespace formkit::quadrature
