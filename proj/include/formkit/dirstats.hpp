#pragma once

#include "formkit/types.hpp"

namespace formkit::dirstats {

/// Unit vectors on the 2-sphere, one per row.
struct SphericalSample {
  Eigen::MatrixX3d points;

  static SphericalSample validated(Eigen::MatrixX3d points);
};

struct DirectionalSummary {
  Eigen::Vector3d mean_vector;
  Eigen::Vector3d mean_direction;
  double resultant;  // in [0, 1]
};

DirectionalSummary directional_summary(const SphericalSample& sample);

enum class RotationConvention { pole_rotation_a, eigenframe_b };

/// Sample rotated so the mean direction lies on the first coordinate axis.
/// Convention A uses the explicit rotation built from the polar angles of
/// the mean direction; convention B uses the sign-fixed eigenvectors of
/// x0 x0^T. Colatitude is then acos(y1), longitude atan2(y3, y2).
struct RotatedSample {
  Eigen::MatrixX3d points;
  Eigen::Matrix3d rotation;  // applied as x -> rotation * x
  RotationConvention convention;
};

RotatedSample rotate_to_pole(const SphericalSample& sample,
                             RotationConvention convention = RotationConvention::eigenframe_b);

/// Rotates with a caller-supplied mean direction (pooled analyses).
RotatedSample rotate_to_pole_about(const SphericalSample& sample,
                                   const Eigen::Vector3d& mean_direction,
                                   RotationConvention convention = RotationConvention::eigenframe_b);

/// Equal-area coordinates (2 sin(theta/2) cos phi, 2 sin(theta/2) sin phi).
struct TangentSample {
  Eigen::MatrixX2d points;
  Eigen::Matrix3d rotation;
  RotationConvention convention;
};

TangentSample lambert_project(const RotatedSample& rotated);

struct SummaryStats {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;   // unbiased, divisor n-1
  Eigen::MatrixXd correlation;
};

/// Mean, covariance, and correlation of row-major observations.
SummaryStats summarize(const Eigen::MatrixXd& data);

struct PcaResult {
  Eigen::VectorXd eigenvalues;  // descending
  Eigen::VectorXd percent;      // 100 * lambda_i / sum
  Eigen::MatrixXd loadings;     // orthonormal columns
};

PcaResult pca(const Eigen::MatrixXd& symmetric);

struct TwoSampleResult {
  double mahalanobis_sq = 0.0;
  double t_squared = 0.0;
  double f_statistic = 0.0;
  int dof1 = 0;
  int dof2 = 0;
  double p_value = 1.0;
  bool p_underflow = false;
  Eigen::MatrixXd pooled_covariance;
};

/// Two-sample Hotelling test with pooled covariance (equal-covariance
/// assumption). p-values below 1e-300 are reported as 0 with the
/// underflow flag set.
TwoSampleResult hotelling_two_sample(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// The arithmetic chain T^2 = n1 n2 / (n1 + n2) d^2,
/// F = T^2 (n1 + n2 - p - 1) / ((n1 + n2 - 2) p) from a given distance.
TwoSampleResult hotelling_from_distance(double mahalanobis_sq, int n1, int n2, int p);

}  // namespace formkit::dirstats
