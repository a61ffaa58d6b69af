#include "formkit/distributions.hpp"

#include "formkit/optim.hpp"
#include "formkit/quadrature.hpp"
#include "formkit/specfun.hpp"

#include <cmath>
#include <numeric>

namespace formkit::distributions {

namespace {

using specfun::bessel_i0_scaled;
using specfun::hyp1f1;
using specfun::log_bessel_i0;
using specfun::log_gamma;

bool half_is_symmetric(const ConeDensityParams& p) {
  if (p.kappa3 == 0.0) return true;
  const double s = std::sin(p.mu);
  return std::abs(s) < 1e-12;
}

void check_params(const ConeDensityParams& p) {
  if (!(p.kappa1 > 0.0)) fail(errc::out_of_domain, "kappa1 must be positive");
  if (p.domain == AngularDomain::half_circle && (p.mu < 0.0 || p.mu > kPi)) {
    fail(errc::out_of_domain, "half-circle densities need mu in [0, pi]");
  }
}

// Series for c and its partial derivatives w.r.t. kappa1, kappa2 and
// t = kappa3^2. Terms alternate for kappa2 < 0; Kahan-compensated sums
// with a cancellation guard.
struct SeriesEval {
  double c = 0.0, dk1 = 0.0, dk2 = 0.0, dt = 0.0;
  bool ok = false;
};

SeriesEval cone_series(const ConeDensityParams& p, bool with_gradient) {
  const double k1 = p.kappa1;
  const double k2 = p.kappa2;
  const double z = p.kappa3 * p.kappa3 / (4.0 * k1);

  SeriesEval out;
  double comp_c = 0.0;  // Kahan compensation
  double max_mag = 0.0;
  int small_streak = 0;
  const int terms = (k2 == 0.0) ? 1 : 500;
  for (int m = 0; m < terms; ++m) {
    const double a = 0.5 * m + 1.0;
    // term magnitudes assembled in log space; sign from kappa2^m
    const double log_mag = (m == 0 ? 0.0 : m * std::log(std::abs(k2))) + std::log(kPi) -
                           a * std::log(k1) + log_gamma(a) - log_gamma(m + 1.0);
    const double sign = (k2 < 0.0 && m % 2 == 1) ? -1.0 : 1.0;
    const double coeff = sign * std::exp(log_mag);
    const double F = hyp1f1(a, 1.0, z);
    const double term = coeff * F;
    if (!std::isfinite(term)) return out;

    const double y = term - comp_c;
    const double t_sum = out.c + y;
    comp_c = (t_sum - out.c) - y;
    out.c = t_sum;
    max_mag = std::max(max_mag, std::abs(term));

    if (with_gradient) {
      const double Fp = a * hyp1f1(a + 1.0, 2.0, z);  // d 1F1(a,1,z) / dz
      out.dk1 += coeff * (-a / k1 * F - z / k1 * Fp);
      if (m >= 1) out.dk2 += m * coeff / k2 * F;
      out.dt += coeff * Fp / (4.0 * k1);
    }
    if (std::abs(term) < 1e-15 * std::abs(out.c)) {
      if (++small_streak >= 2) break;
    } else {
      small_streak = 0;
    }
  }
  if (k2 != 0.0 && small_streak < 2) return out;  // not converged in 500 terms
  // cancellation guard for alternating sums
  if (out.c <= 0.0 || std::abs(out.c) < 1e-10 * max_mag) return out;
  out.ok = true;
  return out;
}

double log_cone_kernel_radial(double r, double k1, double k2, double k3) {
  // log of r e^{-k1 r^2 + k2 r} I0(k3 r)
  return std::log(r) - k1 * r * r + k2 * r + log_bessel_i0(k3 * r);
}

double full_circle_quadrature(const ConeDensityParams& p) {
  auto f = [&p](double r) {
    if (r <= 0.0) return 0.0;
    const double e = log_cone_kernel_radial(r, p.kappa1, p.kappa2, p.kappa3);
    return e < -745.0 ? 0.0 : kTwoPi * std::exp(e);
  };
  return quadrature::integrate_half_line(f, 0.0);
}

// exact half-domain constant for asymmetric mu: inner angular integral
// int_0^pi e^{a cos(theta - mu)} dtheta evaluated per radial node, with
// the exponent shifted by |a| so the inner integrand stays in (0, 1]
double half_circle_quadrature(const ConeDensityParams& p) {
  quadrature::Options inner{1e-12, 1e-12, 40};
  auto f = [&](double r) {
    if (r <= 0.0) return 0.0;
    const double a = p.kappa3 * r;
    const double shift = std::abs(a);
    const double ang = quadrature::integrate(
        [a, shift, &p](double th) { return std::exp(a * std::cos(th - p.mu) - shift); }, 0.0,
        kPi, inner);
    const double e = std::log(r) - p.kappa1 * r * r + p.kappa2 * r + shift + std::log(ang);
    return e < -745.0 ? 0.0 : std::exp(e);
  };
  return quadrature::integrate_half_line(f, 0.0);
}

double ln_2pi_i0(double z) { return std::log(kTwoPi) + log_bessel_i0(z); }

struct SampleSums {
  double n = 0, r = 0, r2 = 0, rcos = 0, rsin = 0;
};

}  // namespace

NormConstResult cone_norm_const(const ConeDensityParams& p, NormMethod method) {
  check_params(p);
  const bool half = p.domain == AngularDomain::half_circle;

  if (method == NormMethod::series) {
    if (!half || half_is_symmetric(p)) {
      const SeriesEval s = cone_series(p, false);
      if (s.ok) return {half ? 0.5 * s.c : s.c, false};
    }
    // series unusable: asymmetric half domain, overflow, or cancellation
    NormConstResult out = cone_norm_const(p, NormMethod::quadrature);
    out.quadrature_fallback = true;
    return out;
  }
  if (!half) return {full_circle_quadrature(p), false};
  if (half_is_symmetric(p)) return {0.5 * full_circle_quadrature(p), false};
  return {half_circle_quadrature(p), false};
}

double cone_log_density(double r, double theta, const ConeDensityParams& p, double log_c) {
  if (!(r > 0.0)) fail(errc::out_of_domain, "r must be positive");
  if (p.domain == AngularDomain::half_circle && !(theta > 0.0 && theta < kPi)) {
    fail(errc::out_of_domain, "theta must lie in (0, pi) on the half circle");
  }
  return std::log(r) - p.kappa1 * r * r + p.kappa2 * r +
         p.kappa3 * r * std::cos(theta - p.mu) - log_c;
}

double cone_log_density(double r, double theta, const ConeDensityParams& p) {
  return cone_log_density(r, theta, p, std::log(cone_norm_const(p).value));
}

Eigen::Vector3d cone_log_norm_gradient(const ConeDensityParams& p) {
  check_params(p);
  if (p.domain != AngularDomain::full_circle) {
    fail(errc::out_of_domain, "series gradient is defined on the full circle");
  }
  const SeriesEval s = cone_series(p, true);
  if (!s.ok) fail(errc::non_convergence, "normalizing-constant series did not converge");
  return {s.dk1 / s.c, s.dk2 / s.c, s.dt / s.c};
}

double von_mises_sample(double mu, double kappa, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (kappa < 1e-8) return wrap_angle(kTwoPi * unif(rng));
  const double a = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double b = (a - std::sqrt(2.0 * a)) / (2.0 * kappa);
  const double r = (1.0 + b * b) / (2.0 * b);
  for (;;) {
    const double u1 = unif(rng);
    const double z = std::cos(kPi * u1);
    const double f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    const double u2 = unif(rng);
    if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
      const double sign = unif(rng) < 0.5 ? -1.0 : 1.0;
      return wrap_angle(mu + sign * std::acos(std::clamp(f, -1.0, 1.0)));
    }
  }
}

ConeSample cone_sample(const ConeDensityParams& p, int n, std::uint64_t seed) {
  check_params(p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);

  const double k1 = p.kappa1;
  const double ak3 = std::abs(p.kappa3);
  const double b = p.kappa2 + ak3;
  const double vm_mu = p.kappa3 >= 0.0 ? p.mu : wrap_angle(p.mu + kPi);
  const bool half = p.domain == AngularDomain::half_circle;

  // envelope for the radial marginal r e^{-k1 r^2 + b r}
  const double r0 = b > 0.0 ? b / (2.0 * k1) : 0.0;
  const double w_norm = b > 0.0 ? r0 * std::sqrt(kPi / k1) : 0.0;
  const double w_tail = 1.0 / k1;

  ConeSample out;
  out.r.reserve(n);
  out.theta.reserve(n);
  long long proposals = 0;
  while (static_cast<int>(out.r.size()) < n) {
    ++proposals;
    if (proposals > 10000 && static_cast<double>(out.r.size()) / proposals < 1e-4) {
      fail(errc::envelope_failure, "cone sampler acceptance rate below 1e-4");
    }
    double r;
    if (b <= 0.0) {
      const double s = expo(rng) / k1;  // envelope e^{-k1 s} in s = r^2
      r = std::sqrt(s);
      if (std::log(unif(rng)) > b * r) continue;
    } else {
      double u;
      if (unif(rng) * (w_norm + w_tail) < w_norm) {
        u = gauss(rng) / std::sqrt(2.0 * k1);
      } else {
        u = std::sqrt(expo(rng) / k1) * (unif(rng) < 0.5 ? -1.0 : 1.0);
      }
      r = r0 + u;
      if (r <= 0.0) continue;
      if (unif(rng) * (r0 + std::abs(u)) > r) continue;
    }
    // Bessel correction I0(k3 r) / e^{|k3| r}
    if (ak3 > 0.0 && unif(rng) > bessel_i0_scaled(ak3 * r)) continue;
    const double theta = von_mises_sample(vm_mu, ak3 * r, rng);
    if (half && !(theta > 0.0 && theta < kPi)) continue;
    out.r.push_back(r);
    out.theta.push_back(theta);
  }
  out.acceptance_rate = proposals > 0 ? static_cast<double>(n) / proposals : 1.0;
  return out;
}

ConeFit cone_fit(const std::vector<double>& r, const std::vector<double>& theta,
                 AngularDomain domain) {
  const std::size_t n = r.size();
  if (theta.size() != n) fail(errc::dimension_mismatch, "r and theta sizes differ");
  if (n < 4) fail(errc::degenerate_data, "need at least 4 observations");

  SampleSums sums;
  sums.n = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(r[i] > 0.0)) fail(errc::out_of_domain, "radii must be positive");
    sums.r += r[i];
    sums.r2 += r[i] * r[i];
    sums.rcos += r[i] * std::cos(theta[i]);
    sums.rsin += r[i] * std::sin(theta[i]);
  }
  const double mean_r = sums.r / sums.n;
  const double var_r = sums.r2 / sums.n - mean_r * mean_r;
  if (var_r <= 0.0) fail(errc::degenerate_data, "all radii equal");

  double sum_log_r = 0.0, cbar = 0.0, sbar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum_log_r += std::log(r[i]);
    cbar += std::cos(theta[i]);
    sbar += std::sin(theta[i]);
  }
  cbar /= sums.n;
  sbar /= sums.n;
  const double rbar_theta = std::hypot(cbar, sbar);
  const double mu0 = std::atan2(sbar, cbar);

  // moment start
  const double k1_0 = std::max(1.0 / (2.0 * var_r), 1e-6);
  const double k2_0 = 0.5 * mean_r / var_r;
  const double kvm = rbar_theta < 0.999
                         ? rbar_theta * (2.0 - rbar_theta * rbar_theta) /
                               (1.0 - rbar_theta * rbar_theta)
                         : 1e3;
  const double k3_0 = std::max(kvm / std::max(mean_r, 1e-6), 1e-3);

  const bool full = domain == AngularDomain::full_circle;

  auto objective = [&](const Eigen::VectorXd& eta, Eigen::VectorXd& grad) {
    const double k1 = std::exp(eta(0));
    const double k3s = eta(2), k4 = eta(3);
    const double t = k3s * k3s + k4 * k4;
    ConeDensityParams q{k1, eta(1), std::sqrt(t), std::atan2(k4, k3s), domain};
    if (q.mu < 0.0) q.mu += kTwoPi;

    double log_c;
    Eigen::Vector3d g;  // d log c / d(k1, k2, t)
    if (full) {
      const SeriesEval s = cone_series(q, true);
      if (!s.ok) return std::numeric_limits<double>::infinity();
      log_c = std::log(s.c);
      g = Eigen::Vector3d{s.dk1 / s.c, s.dk2 / s.c, s.dt / s.c};
    } else {
      ConeDensityParams qq = q;
      qq.mu = std::clamp(qq.mu, 0.0, kPi);
      log_c = std::log(cone_norm_const(qq, NormMethod::quadrature).value);
      // central differences in the natural parameters
      auto lc = [&](double a1, double a2, double a3s, double a4) {
        const double tt = a3s * a3s + a4 * a4;
        ConeDensityParams pp{a1, a2, std::sqrt(tt),
                             std::clamp(wrap_angle(std::atan2(a4, a3s)), 0.0, kPi), domain};
        return std::log(cone_norm_const(pp, NormMethod::quadrature).value);
      };
      const double h = 1e-5;
      g(0) = (lc(k1 + h, eta(1), k3s, k4) - lc(k1 - h, eta(1), k3s, k4)) / (2 * h);
      g(1) = (lc(k1, eta(1) + h, k3s, k4) - lc(k1, eta(1) - h, k3s, k4)) / (2 * h);
      // gradient w.r.t. k3s and k4 directly
      const double g3 = (lc(k1, eta(1), k3s + h, k4) - lc(k1, eta(1), k3s - h, k4)) / (2 * h);
      const double g4 = (lc(k1, eta(1), k3s, k4 + h) - lc(k1, eta(1), k3s, k4 - h)) / (2 * h);
      const double nll_grad_k1 = sums.r2 + sums.n * g(0);
      grad(0) = nll_grad_k1 * k1;
      grad(1) = -sums.r + sums.n * g(1);
      grad(2) = -sums.rcos + sums.n * g3;
      grad(3) = -sums.rsin + sums.n * g4;
      return -(sum_log_r - k1 * sums.r2 + eta(1) * sums.r + k3s * sums.rcos + k4 * sums.rsin -
               sums.n * log_c);
    }
    const double nll = -(sum_log_r - k1 * sums.r2 + eta(1) * sums.r + k3s * sums.rcos +
                         k4 * sums.rsin - sums.n * log_c);
    grad(0) = (sums.r2 + sums.n * g(0)) * k1;  // chain rule through k1 = e^xi
    grad(1) = -sums.r + sums.n * g(1);
    grad(2) = -sums.rcos + sums.n * g(2) * 2.0 * k3s;
    grad(3) = -sums.rsin + sums.n * g(2) * 2.0 * k4;
    return nll;
  };

  Eigen::VectorXd eta0(4);
  eta0 << std::log(k1_0), k2_0, k3_0 * std::cos(mu0), k3_0 * std::sin(mu0);
  optim::Options opts;
  opts.max_iters = 500;
  opts.grad_tol = 1e-7;
  const optim::Result res = optim::minimize(objective, eta0, opts);

  ConeFit fit;
  const double k1 = std::exp(res.x(0));
  fit.kappa3_star = res.x(2);
  fit.kappa4 = res.x(3);
  fit.params = ConeDensityParams{k1, res.x(1), std::hypot(res.x(2), res.x(3)),
                                 wrap_angle(std::atan2(res.x(3), res.x(2))), domain};
  fit.loglik = -res.value;
  fit.iterations = res.iterations;
  // gradient in the natural parameters (undo the k1 = e^xi chain rule)
  Eigen::VectorXd natural = res.gradient;
  natural(0) /= k1;
  fit.grad_inf_norm = natural.lpNorm<Eigen::Infinity>();
  fit.converged = fit.grad_inf_norm < 1e-6;
  return fit;
}

double fisher_log_density(const Eigen::Vector3d& x, const FisherParams& p) {
  if (std::abs(x.norm() - 1.0) > 1e-8 || std::abs(p.mu.norm() - 1.0) > 1e-8) {
    fail(errc::out_of_domain, "Fisher density needs unit vectors");
  }
  if (p.kappa < 0.0) fail(errc::out_of_domain, "kappa must be non-negative");
  const double dot = p.mu.dot(x);
  if (p.kappa < 1e-8) {
    return -std::log(4.0 * kPi) + p.kappa * dot - p.kappa * p.kappa / 6.0;
  }
  // log(kappa / sinh(kappa)) computed stably for large kappa
  const double log_sinh =
      p.kappa + std::log1p(-std::exp(-2.0 * p.kappa)) - std::log(2.0);
  return std::log(p.kappa) - log_sinh - std::log(4.0 * kPi) + p.kappa * dot;
}

FisherFit fisher_fit(const dirstats::SphericalSample& sample) {
  const auto summary = dirstats::directional_summary(sample);
  const double rbar = summary.resultant;
  const double n = static_cast<double>(sample.points.rows());

  FisherFit fit;
  fit.params.mu = summary.mean_direction;
  fit.resultant = rbar;
  fit.rayleigh = 3.0 * n * rbar * rbar;

  if (rbar >= 1.0 - 1e-12) {
    fit.params.kappa = 1e12;
    return fit;
  }
  double kappa = rbar * (3.0 - rbar * rbar) / (1.0 - rbar * rbar);
  for (int it = 0; it < 100; ++it) {
    double A, Ap;
    if (kappa < 1e-4) {
      A = kappa / 3.0 - kappa * kappa * kappa / 45.0;
      Ap = 1.0 / 3.0 - kappa * kappa / 15.0;
    } else {
      const double coth = kappa > 20.0 ? 1.0 : std::cosh(kappa) / std::sinh(kappa);
      A = coth - 1.0 / kappa;
      const double s = std::sinh(std::min(kappa, 350.0));
      Ap = 1.0 / (kappa * kappa) - (kappa > 350.0 ? 0.0 : 1.0 / (s * s));
    }
    const double step = (A - rbar) / Ap;
    kappa -= step;
    if (kappa <= 0.0) kappa = 1e-8;
    if (std::abs(step) < 1e-12 * std::max(1.0, kappa)) break;
  }
  fit.params.kappa = kappa;
  return fit;
}

dirstats::SphericalSample fisher_sample(const FisherParams& p, int n, std::uint64_t seed) {
  if (std::abs(p.mu.norm() - 1.0) > 1e-8 || p.kappa < 0.0) {
    fail(errc::out_of_domain, "invalid Fisher parameters");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // orthonormal completion of mu
  Eigen::Vector3d a = std::abs(p.mu(0)) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d e1 = p.mu.cross(a).normalized();
  const Eigen::Vector3d e2 = p.mu.cross(e1);

  Eigen::MatrixX3d pts(n, 3);
  for (int i = 0; i < n; ++i) {
    double w;
    if (p.kappa < 1e-8) {
      w = 2.0 * unif(rng) - 1.0;
    } else {
      const double u = unif(rng);
      // inverse CDF of w on [-1, 1]: density prop e^{kappa w}
      w = 1.0 + std::log1p(-u * (1.0 - std::exp(-2.0 * p.kappa))) / p.kappa;
    }
    const double psi = kTwoPi * unif(rng);
    const double s = std::sqrt(std::max(0.0, 1.0 - w * w));
    pts.row(i) =
        (w * p.mu + s * (std::cos(psi) * e1 + std::sin(psi) * e2)).transpose();
  }
  return dirstats::SphericalSample{std::move(pts)};
}

double joint_cone_fisher_log_density(double r, double theta, const Eigen::Vector3d& ell,
                                     const ConeDensityParams& cone, const FisherParams& fisher) {
  if (cone.domain != AngularDomain::half_circle) {
    fail(errc::out_of_domain, "joint density uses the half-circle cone component");
  }
  return cone_log_density(r, theta, cone) + fisher_log_density(ell, fisher);
}

double half_plane_log_density(double r, double theta, const HalfPlaneParams& p) {
  if (!(p.kappa1 > 0.0) || p.mu < 0.0 || p.mu > kPi) {
    fail(errc::out_of_domain, "half-plane parameters out of range");
  }
  const ConeDensityParams cone{p.kappa1, 0.0, p.kappa2, p.mu, AngularDomain::half_circle};
  return cone_log_density(r, theta, cone);
}

}  // namespace formkit::distributions
