#include "formkit/dirstats.hpp"

#include "formkit/specfun.hpp"

#include <cmath>

namespace formkit::dirstats {

namespace {

Eigen::Matrix3d pole_rotation_matrix(const Eigen::Vector3d& x0) {
  const double alpha = std::acos(std::clamp(x0(2), -1.0, 1.0));
  const double beta = std::atan2(x0(1), x0(0));
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double sb = std::sin(beta), cb = std::cos(beta);
  Eigen::Matrix3d A;
  A << sa * cb, sa * sb, ca,
       sb, -cb, 0.0,
       ca * cb, ca * sb, -sa;
  return A;
}

Eigen::Matrix3d eigenframe_rotation(const Eigen::Vector3d& x0) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(x0 * x0.transpose());
  Eigen::Matrix3d B;
  B.col(0) = eig.eigenvectors().col(2);  // eigenvalue 1
  B.col(1) = eig.eigenvectors().col(0);
  B.col(2) = eig.eigenvectors().col(1);
  if (x0.dot(B.col(0)) < 0.0) B.col(0) = -B.col(0);
  if (B.determinant() < 0.0) B.col(1) = -B.col(1);
  return B;
}

}  // namespace

SphericalSample SphericalSample::validated(Eigen::MatrixX3d points) {
  if (points.rows() < 1) fail(errc::too_few_samples, "spherical sample needs n >= 1");
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    if (std::abs(points.row(i).norm() - 1.0) > 1e-10) {
      fail(errc::out_of_domain, "row " + std::to_string(i) + " is not a unit vector");
    }
  }
  return SphericalSample{std::move(points)};
}

DirectionalSummary directional_summary(const SphericalSample& sample) {
  DirectionalSummary out;
  out.mean_vector = sample.points.colwise().mean();
  out.resultant = out.mean_vector.norm();
  if (out.resultant == 0.0) {
    fail(errc::zero_resultant, "mean vector vanishes; direction undefined");
  }
  out.mean_direction = out.mean_vector / out.resultant;
  return out;
}

RotatedSample rotate_to_pole_about(const SphericalSample& sample,
                                   const Eigen::Vector3d& mean_direction,
                                   RotationConvention convention) {
  const Eigen::Matrix3d R = (convention == RotationConvention::pole_rotation_a)
                                ? pole_rotation_matrix(mean_direction)
                                : eigenframe_rotation(mean_direction).transpose();
  RotatedSample out;
  out.points = sample.points * R.transpose();
  out.rotation = R;
  out.convention = convention;
  return out;
}

RotatedSample rotate_to_pole(const SphericalSample& sample, RotationConvention convention) {
  return rotate_to_pole_about(sample, directional_summary(sample).mean_direction, convention);
}

TangentSample lambert_project(const RotatedSample& rotated) {
  TangentSample out;
  out.rotation = rotated.rotation;
  out.convention = rotated.convention;
  out.points.resize(rotated.points.rows(), 2);
  for (Eigen::Index i = 0; i < rotated.points.rows(); ++i) {
    const double theta = std::acos(std::clamp(rotated.points(i, 0), -1.0, 1.0));
    const double phi = std::atan2(rotated.points(i, 2), rotated.points(i, 1));
    const double rho = 2.0 * std::sin(0.5 * theta);
    out.points(i, 0) = rho * std::cos(phi);
    out.points(i, 1) = rho * std::sin(phi);
  }
  return out;
}

SummaryStats summarize(const Eigen::MatrixXd& data) {
  const Eigen::Index n = data.rows();
  const Eigen::Index p = data.cols();
  if (n < 2) fail(errc::too_few_samples, "need n >= 2 observations");

  SummaryStats out;
  out.mean = data.colwise().mean();
  const Eigen::MatrixXd centred = data.rowwise() - out.mean.transpose();
  out.covariance = centred.transpose() * centred / double(n - 1);

  Eigen::VectorXd sd = out.covariance.diagonal().cwiseSqrt();
  for (Eigen::Index j = 0; j < p; ++j) {
    if (sd(j) == 0.0) {
      fail(errc::degenerate_variance,
           "column " + std::to_string(j) + " has zero variance; correlation undefined");
    }
  }
  out.correlation = out.covariance.array() / (sd * sd.transpose()).array();
  return out;
}

PcaResult pca(const Eigen::MatrixXd& symmetric) {
  const Eigen::Index p = symmetric.rows();
  if (symmetric.cols() != p || !symmetric.isApprox(symmetric.transpose(), 1e-10)) {
    fail(errc::not_symmetric, "PCA input must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetric);

  PcaResult out;
  out.eigenvalues = eig.eigenvalues().reverse();
  out.loadings.resize(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    Eigen::VectorXd v = eig.eigenvectors().col(p - 1 - j);
    Eigen::Index top;
    v.cwiseAbs().maxCoeff(&top);
    if (v(top) < 0.0) v = -v;  // deterministic sign
    out.loadings.col(j) = v;
  }
  const double total = out.eigenvalues.sum();
  out.percent = 100.0 * out.eigenvalues / total;
  return out;
}

TwoSampleResult hotelling_from_distance(double mahalanobis_sq, int n1, int n2, int p) {
  if (n1 + n2 <= p + 1) fail(errc::too_few_samples, "need n1 + n2 > p + 1");
  TwoSampleResult out;
  out.mahalanobis_sq = mahalanobis_sq;
  out.t_squared = double(n1) * n2 / (n1 + n2) * mahalanobis_sq;
  out.dof1 = p;
  out.dof2 = n1 + n2 - p - 1;
  out.f_statistic = out.t_squared * out.dof2 / (double(n1 + n2 - 2) * p);
  out.p_value = specfun::f_sf(out.f_statistic, out.dof1, out.dof2);
  if (out.p_value < 1e-300) {
    out.p_value = 0.0;
    out.p_underflow = true;
  }
  return out;
}

TwoSampleResult hotelling_two_sample(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const int p = static_cast<int>(a.cols());
  const int n1 = static_cast<int>(a.rows());
  const int n2 = static_cast<int>(b.rows());
  if (b.cols() != p) fail(errc::dimension_mismatch, "samples have different dimensions");
  if (n1 < 2 || n2 < 2 || n1 + n2 <= p + 1) {
    fail(errc::too_few_samples, "need n1, n2 >= 2 and n1 + n2 > p + 1");
  }

  const Eigen::VectorXd mean1 = a.colwise().mean();
  const Eigen::VectorXd mean2 = b.colwise().mean();
  const Eigen::MatrixXd c1 = a.rowwise() - mean1.transpose();
  const Eigen::MatrixXd c2 = b.rowwise() - mean2.transpose();
  Eigen::MatrixXd pooled =
      (c1.transpose() * c1 + c2.transpose() * c2) / double(n1 + n2 - 2);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(pooled);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv(p - 1) <= 0.0 || sv(0) / sv(p - 1) > 1e12) {
    fail(errc::singular_pooled, "pooled covariance numerically singular");
  }

  const Eigen::VectorXd diff = mean1 - mean2;
  const double d2 = diff.dot(pooled.llt().solve(diff));
  TwoSampleResult out = hotelling_from_distance(d2, n1, n2, p);
  out.pooled_covariance = std::move(pooled);
  return out;
}

}  // namespace formkit::dirstats
