#pragma once

#include "formkit/types.hpp"

namespace formkit::specfun {

struct SeriesAccuracy {
  double rel_tol = 1e-14;
  int max_terms = 500;
};

/// Modified Bessel function I0. Power series (all terms positive) below
/// z = 40, asymptotic expansion e^z/sqrt(2 pi z) * sum u_k/z^k above.
double bessel_i0(double z, SeriesAccuracy acc = {});

/// e^{-|z|} I0(z); never overflows.
double bessel_i0_scaled(double z, SeriesAccuracy acc = {});

/// log I0(z), stable for large z.
double log_bessel_i0(double z, SeriesAccuracy acc = {});

/// Modified Bessel function I1, same switchover scheme as I0.
double bessel_i1(double z, SeriesAccuracy acc = {});

double bessel_i1_scaled(double z, SeriesAccuracy acc = {});

/// Kummer confluent hypergeometric 1F1(a; b; z). Direct series for z >= 0,
/// Kummer transform e^z 1F1(b-a; b; -z) for z < 0. b must not be a
/// non-positive integer.
double hyp1f1(double a, double b, double z, SeriesAccuracy acc = {});

/// log Gamma(x) for x > 0 (Lanczos, g = 7, 9 coefficients).
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x); series for x < a+1,
/// continued fraction otherwise.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b) by Lentz continued fraction with
/// the symmetry switch at x = (a+1)/(a+b+2).
double betainc(double a, double b, double x);

/// Chi-squared survival function with k degrees of freedom.
double chi2_sf(double x, int k);

/// F distribution survival function with (d1, d2) degrees of freedom.
double f_sf(double x, int d1, int d2);

}  // namespace formkit::specfun
