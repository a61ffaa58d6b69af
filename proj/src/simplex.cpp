#include "formkit/simplex.hpp"

#include <cmath>

namespace formkit::simplex {

namespace {

constexpr double kConditionLimit = 1e10;

Eigen::VectorXd unit_null_vector(const Eigen::MatrixXd& rows) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  return svd.matrixV().col(rows.cols() - 1);
}

Eigen::Vector3d spherical_unit(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace

SimplexFrame simplex_frame(const Eigen::MatrixXd& frame_columns, FrameType type) {
  const int m = static_cast<int>(frame_columns.rows());
  if (frame_columns.cols() != m || m < 2) {
    fail(errc::degenerate_simplex, "frame needs m columns of dimension m >= 2");
  }
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(frame_columns);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv(m - 1) <= 0.0 || sv(0) / sv(m - 1) > kConditionLimit) {
      fail(errc::degenerate_simplex, "frame columns near linear dependence");
    }
  }

  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd h = Eigen::VectorXd::Zero(m);

  if (type == FrameType::type1) {
    const Eigen::VectorXd w =
        frame_columns.transpose().partialPivLu().solve(Eigen::VectorXd::Ones(m));
    const double norm = w.norm();
    U.col(m - 1) = w / norm;
    h(m - 1) = 1.0 / norm;
  } else {
    Eigen::VectorXd w = unit_null_vector(frame_columns.leftCols(m - 1).transpose());
    if (w.dot(frame_columns.col(m - 1)) < 0.0) w = -w;
    U.col(m - 1) = w;  // sign revisited once the frame is complete
    h(m - 1) = 0.0;
  }

  const int last_solved = (type == FrameType::type1) ? 1 : 0;
  for (int j = m - 2; j >= last_solved; --j) {
    // rows z_1..z_{j+1} with rhs 1, rows u_{j+2}..u_m with rhs 0
    Eigen::MatrixXd system(m, m);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    for (int i = 0; i <= j; ++i) {
      system.row(i) = frame_columns.col(i).transpose();
      rhs(i) = 1.0;
    }
    for (int i = j + 1; i < m; ++i) system.row(i) = U.col(i).transpose();
    const Eigen::VectorXd w = system.partialPivLu().solve(rhs);
    const double norm = w.norm();
    if (!(norm > 0.0) || !w.allFinite()) {
      fail(errc::degenerate_simplex, "frame system singular");
    }
    U.col(j) = w / norm;
    h(j) = 1.0 / norm;
  }

  if (type == FrameType::type1) {
    Eigen::MatrixXd others(m - 1, m);
    for (int i = 1; i < m; ++i) others.row(i - 1) = U.col(i).transpose();
    U.col(0) = unit_null_vector(others);
    if (U.determinant() < 0.0) U.col(0) = -U.col(0);
    h(0) = U.col(0).dot(frame_columns.col(0));
  } else {
    if (U.determinant() < 0.0) U.col(m - 1) = -U.col(m - 1);
  }
  return SimplexFrame{std::move(U), std::move(h), type};
}

SimplexMppCoordinates simplex_mpp(const mucen::MulticentredConfig& mc, FrameType type) {
  const Eigen::MatrixXd& Z = mc.columns;
  const int m = static_cast<int>(Z.rows());
  const int n = static_cast<int>(Z.cols());
  if (n < m) fail(errc::degenerate_simplex, "need at least m multicentred columns");
  for (int j = 0; j < n; ++j) {
    if (Z.col(j).norm() == 0.0) {
      fail(errc::zero_landmark, "multicentred column " + std::to_string(j) + " is zero");
    }
  }
  const SimplexFrame frame = simplex_frame(Z.leftCols(m), type);

  // Projections U_j^T z_j within the frame range, full U^T z_j beyond it.
  const int frame_last = (type == FrameType::type1) ? m : m - 1;  // paper's j, 1-based

  SimplexMppCoordinates out;
  out.type = type;
  out.dim = m;
  out.h1 = frame.heights(0);
  out.s.reserve(n - 1);
  out.zeta.reserve(n - 1);
  for (int c = 1; c < n; ++c) {
    const int j = c + 1;  // 1-based column
    Eigen::VectorXd proj = frame.U.transpose() * Z.col(c);
    if (j <= frame_last) {
      for (int i = j; i < m; ++i) proj(i) = 0.0;
      const double s = proj.norm();
      out.s.push_back(s);
      out.zeta.push_back(proj / s);
    } else {
      const double s = Z.col(c).norm();
      out.s.push_back(s);
      out.zeta.push_back(proj / s);
    }
  }
  return out;
}

FivePointVector five_point_coordinates(const Configuration& config) {
  if (config.dim() != 3 || config.count() != 5) {
    fail(errc::dimension_mismatch, "five-point coordinates require a 3 x 5 configuration");
  }
  static const mucen::MulticentringScheme scheme =
      mucen::preset_scheme(mucen::SchemePreset::five_point, 5);
  const auto mc = mucen::multicentre(config, scheme);
  const auto coords = simplex_mpp(mc, FrameType::type2);

  FivePointVector w;
  w.d1 = coords.h1;
  w.d2 = coords.s[0];
  w.alpha = std::atan2(coords.zeta[0](1), coords.zeta[0](0));
  w.theta1 = std::acos(std::clamp(coords.zeta[1](2), -1.0, 1.0));
  w.phi1 = wrap_angle(std::atan2(coords.zeta[1](1), coords.zeta[1](0)));
  w.theta2 = std::acos(std::clamp(coords.zeta[2](2), -1.0, 1.0));
  w.phi2 = wrap_angle(std::atan2(coords.zeta[2](1), coords.zeta[2](0)));
  return w;
}

std::pair<double, double> five_point_fixed_lengths(const Configuration& config) {
  if (config.dim() != 3 || config.count() != 5) {
    fail(errc::dimension_mismatch, "five-point lengths require a 3 x 5 configuration");
  }
  const auto& X = config.landmarks;
  return {(X.col(0) - X.col(1)).norm(), (X.col(4) - X.col(3)).norm()};
}

Configuration five_point_reconstruct(const FivePointVector& w, double fixed12, double fixed45) {
  if (!(w.d1 > 0.0) || !(w.d2 > 0.0)) fail(errc::range_violation, "d1, d2 must be positive");
  if (!(w.alpha > 0.0 && w.alpha < kPi)) fail(errc::range_violation, "alpha must be in (0, pi)");
  if (!(w.theta1 > 0.0 && w.theta1 < kPi) || !(w.theta2 > 0.0 && w.theta2 < kPi)) {
    fail(errc::range_violation, "theta must be in (0, pi)");
  }
  if (!(fixed12 > 0.0) || !(fixed45 > 0.0)) {
    fail(errc::range_violation, "fixed lengths must be positive");
  }

  const Eigen::Vector3d z1{w.d1, w.d2 * std::sin(w.alpha), 0.0};
  const Eigen::Vector3d z2 = w.d2 * Eigen::Vector3d{std::cos(w.alpha), std::sin(w.alpha), 0.0};
  const Eigen::Vector3d z3 = fixed12 * spherical_unit(w.theta1, w.phi1);
  const Eigen::Vector3d z4 = fixed45 * spherical_unit(w.theta2, w.phi2);

  Eigen::MatrixXd X(3, 5);
  X.col(2).setZero();        // P at the origin
  X.col(1) = z1;             // C1'
  X.col(3) = z2;             // C1'
  X.col(0) = z1 + z3;        // N1/N9
  X.col(4) = z2 + z4;        // N1/N9
  return Configuration{std::move(X)};
}

}  // namespace formkit::simplex
