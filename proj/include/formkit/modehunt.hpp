#pragma once

#include "formkit/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <span>
#include <vector>

namespace formkit::modehunt {

struct WrappedNormalParams {
  double mu = 0.0;     // in [0, 2*pi)
  double sigma = 1.0;  // > 0
};

/// log of sum_w phi((theta - mu + 2 pi w) / sigma) / sigma, wrapping terms
/// added until they stop contributing (at least |w| <= 3).
double wrapped_normal_logpdf(double theta, const WrappedNormalParams& p);

struct SingleFit {
  WrappedNormalParams params;
  double loglik = 0.0;
  bool spread_floored = false;
};

/// Moment estimates (mean direction, sigma^2 = -2 log Rbar) followed by a
/// local likelihood refinement.
SingleFit fit_single(std::span<const double> angles);

enum class WeightMode { fixed_half, free };

struct MixtureFit {
  WrappedNormalParams comp1, comp2;
  double w1 = 0.5, w2 = 0.5;
  std::vector<double> resp1;  // responsibility of component 1 per point
  double loglik = 0.0;
  int iterations = 0;
  bool converged = true;
};

/// Two-component EM over a deterministic initialization schedule; the best
/// iterate by log-likelihood is returned, which keeps the mixture fit at
/// least as good as the single fit.
MixtureFit fit_mixture2(std::span<const double> angles, const SingleFit& single,
                        WeightMode mode = WeightMode::fixed_half);

struct LrtResult {
  double statistic = 0.0;
  double p_value = 1.0;
  bool split = false;
};

/// Wilks test of the two-component model against the single one;
/// 2 degrees of freedom with fixed equal weights, 3 with free weights.
LrtResult lrt_split(const SingleFit& single, const MixtureFit& mixture, double alpha,
                    WeightMode mode = WeightMode::fixed_half);

LrtResult lrt_split(std::span<const double> angles, double alpha,
                    WeightMode mode = WeightMode::fixed_half);

struct ClusterNode {
  std::vector<int> indices;  // into the original data
  double loglik_single = 0.0;
  double loglik_mixture = 0.0;
  double statistic = 0.0;
  double p_value = 1.0;
  bool split = false;
  bool degenerate = false;  // fit failed; kept as a leaf
  std::vector<ClusterNode> children;  // empty or exactly two
};

using ClusterTree = ClusterNode;

/// Recursive parametric mode hunting: fit both models, gate on the minimal
/// cluster size, test, and recurse on the label partition while the test
/// rejects.
ClusterTree mode_hunt(std::span<const double> angles, double alpha = 0.05, int min_cluster = 3,
                      WeightMode mode = WeightMode::fixed_half);

/// Leaf label per input point, in leaf discovery order.
std::vector<int> leaf_labels(const ClusterTree& tree, std::size_t n);

nlohmann::json to_json(const ClusterTree& tree);

}  // namespace formkit::modehunt
