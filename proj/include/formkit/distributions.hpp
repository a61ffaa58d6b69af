#pragma once

#include "formkit/dirstats.hpp"
#include "formkit/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace formkit::distributions {

enum class AngularDomain { full_circle, half_circle };

/// Parameters of the radius-angle exponential-family density
/// r exp(-kappa1 r^2 + kappa2 r + kappa3 r cos(theta - mu)) / c.
struct ConeDensityParams {
  double kappa1 = 1.0;
  double kappa2 = 0.0;
  double kappa3 = 0.0;
  double mu = 0.0;
  AngularDomain domain = AngularDomain::full_circle;
};

enum class NormMethod { series, quadrature };

struct NormConstResult {
  double value = 0.0;
  bool quadrature_fallback = false;
};

/// Normalizing constant. The series route evaluates
/// pi * sum_m kappa2^m / kappa1^(m/2+1) * Gamma(m/2+1)/m! * 1F1(m/2+1; 1; kappa3^2/(4 kappa1))
/// and falls back to quadrature (flagged) when it cannot be used. On the
/// half circle the constant is half the full-circle one only when the
/// angular factor is symmetric about the cut (kappa3 = 0 or mu in {0, pi});
/// otherwise the exact half-domain integral is computed by quadrature.
NormConstResult cone_norm_const(const ConeDensityParams& p, NormMethod method = NormMethod::series);

double cone_log_density(double r, double theta, const ConeDensityParams& p);
double cone_log_density(double r, double theta, const ConeDensityParams& p, double log_c);

/// d log c / d (kappa1, kappa2, t) with t = kappa3^2, full circle, by the
/// term-wise differentiated series. Exposed for the exponential-family
/// moment identities.
Eigen::Vector3d cone_log_norm_gradient(const ConeDensityParams& p);

struct ConeSample {
  std::vector<double> r;
  std::vector<double> theta;
  double acceptance_rate = 1.0;
};

/// Exact rejection sampler: r from the marginal bounded through
/// I0(z) <= e^{|z|}, then theta | r von Mises.
ConeSample cone_sample(const ConeDensityParams& p, int n, std::uint64_t seed);

struct ConeFit {
  ConeDensityParams params;
  double kappa3_star = 0.0;
  double kappa4 = 0.0;
  double loglik = 0.0;
  int iterations = 0;
  bool converged = false;
  double grad_inf_norm = 0.0;
};

/// MLE over the natural parameters (kappa1, kappa2, kappa3*, kappa4) with
/// kappa1 = exp(xi) enforcing positivity; moment-based start.
ConeFit cone_fit(const std::vector<double>& r, const std::vector<double>& theta,
                 AngularDomain domain = AngularDomain::full_circle);

struct FisherParams {
  Eigen::Vector3d mu;
  double kappa = 0.0;
};

/// Density kappa e^{kappa mu.x} / (4 pi sinh kappa) with respect to the
/// surface measure; uniform limit 1/(4 pi) as kappa -> 0.
double fisher_log_density(const Eigen::Vector3d& x, const FisherParams& p);

struct FisherFit {
  FisherParams params;
  double resultant = 0.0;
  double rayleigh = 0.0;  // 3 n Rbar^2, the uniformity test statistic
};

/// mu from the mean direction; kappa solves coth(k) - 1/k = Rbar by
/// safeguarded Newton.
FisherFit fisher_fit(const dirstats::SphericalSample& sample);

dirstats::SphericalSample fisher_sample(const FisherParams& p, int n, std::uint64_t seed);

/// Independent product of the half-circle cone density and the Fisher
/// density.
double joint_cone_fisher_log_density(double r, double theta, const Eigen::Vector3d& ell,
                                     const ConeDensityParams& cone, const FisherParams& fisher);

struct HalfPlaneParams {
  double kappa1 = 1.0;
  double kappa2 = 0.0;
  double mu = 0.0;  // in [0, pi]
};

/// r exp(-kappa1 r^2 + kappa2 r cos(theta - mu)) on r > 0, 0 < theta < pi;
/// normalized through the cone machinery with no linear radial term.
double half_plane_log_density(double r, double theta, const HalfPlaneParams& p);

/// Von Mises sampler (Best-Fisher envelope), used for theta | r.
double von_mises_sample(double mu, double kappa, std::mt19937_64& rng);

}  // namespace formkit::distributions
