#include "formkit/polypolar.hpp"

#include <cmath>

namespace formkit::polypolar {

namespace {

constexpr double kConditionLimit = 1e10;

}  // namespace

MppCoordinates mpp_coordinates(const mucen::MulticentredConfig& mc) {
  const Eigen::MatrixXd& Z = mc.columns;
  const int m = static_cast<int>(Z.rows());
  const int n = static_cast<int>(Z.cols());
  if (n < m) fail(errc::degenerate_frame, "need at least m multicentred columns");
  for (int j = 0; j < n; ++j) {
    if (Z.col(j).norm() == 0.0) {
      fail(errc::zero_landmark, "multicentred column " + std::to_string(j) + " is zero");
    }
  }
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Z.leftCols(m));
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv(m - 1) <= 0.0 || sv(0) / sv(m - 1) > kConditionLimit) {
      fail(errc::degenerate_frame, "first m columns near linear dependence");
    }
  }

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Z);
  Eigen::MatrixXd V = qr.householderQ() * Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd T = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();

  for (int j = 0; j < m; ++j) {
    if (T(j, j) < 0.0) {
      T.row(j) = -T.row(j);
      V.col(j) = -V.col(j);
    }
  }
  if (V.determinant() < 0.0) {
    // Restore det(V) = +1; the last diagonal of T carries the chirality.
    T.row(m - 1) = -T.row(m - 1);
    V.col(m - 1) = -V.col(m - 1);
  }

  MppCoordinates out;
  out.dim = m;
  out.rotation = std::move(V);
  out.radii.resize(n);
  out.directions.resize(n);
  for (int j = 0; j < n; ++j) {
    const double r = T.col(j).norm();
    out.radii[j] = r;
    out.directions[j] = T.col(j) / r;
  }
  return out;
}

ConstrainedMpp apply_constraints(const MppCoordinates& coords, const ConstraintMask& mask,
                                 double rel_tol) {
  const int n = static_cast<int>(coords.radii.size());
  for (const auto& [idx, value] : mask.fixed_radii) {
    if (idx < 0 || idx >= n) fail(errc::out_of_domain, "fixed radius index out of range");
    if (value <= 0.0) fail(errc::out_of_domain, "fixed radius must be positive");
    if (std::abs(coords.radii[idx] - value) > rel_tol * value) {
      fail(errc::constraint_violation,
           "radius " + std::to_string(idx) + " = " + std::to_string(coords.radii[idx]) +
               " deviates from fixed value " + std::to_string(value));
    }
  }
  for (const auto& [idx, dir] : mask.fixed_directions) {
    if (idx < 0 || idx >= n) fail(errc::out_of_domain, "fixed direction index out of range");
    if (dir.size() != coords.dim) fail(errc::out_of_domain, "fixed direction has wrong dimension");
  }

  ConstrainedMpp out;
  out.dim = coords.dim;
  for (int j = 0; j < n; ++j) {
    if (!mask.fixed_radii.count(j)) {
      out.radius_columns.push_back(j);
      out.radii.push_back(coords.radii[j]);
    }
    const bool trivial = (j == 0);  // the first direction is a single point
    if (!trivial && !mask.fixed_directions.count(j)) {
      out.direction_columns.push_back(j);
      out.directions.push_back(coords.directions[j]);
    }
  }
  return out;
}

mucen::MulticentredConfig mpp_representative(const MppCoordinates& coords) {
  const int n = static_cast<int>(coords.radii.size());
  Eigen::MatrixXd T(coords.dim, n);
  for (int j = 0; j < n; ++j) T.col(j) = coords.radii[j] * coords.directions[j];
  return mucen::MulticentredConfig{std::move(T)};
}

mucen::MulticentredConfig mpp_representative(const ConstrainedMpp& coords,
                                             const ConstraintMask& mask) {
  const int n = static_cast<int>(coords.radii.size() + mask.fixed_radii.size());
  const int m = coords.dim;
  std::vector<double> radii(n, -1.0);
  std::vector<Eigen::VectorXd> dirs(n);

  for (std::size_t i = 0; i < coords.radii.size(); ++i) {
    const int c = coords.radius_columns[i];
    if (c < 0 || c >= n || radii[c] >= 0.0) fail(errc::range_violation, "bad radius layout");
    radii[c] = coords.radii[i];
  }
  for (const auto& [idx, value] : mask.fixed_radii) {
    if (idx < 0 || idx >= n || radii[idx] >= 0.0) fail(errc::range_violation, "bad radius layout");
    radii[idx] = value;
  }
  for (std::size_t i = 0; i < coords.directions.size(); ++i) {
    dirs[coords.direction_columns[i]] = coords.directions[i].normalized();
  }
  for (const auto& [idx, dir] : mask.fixed_directions) {
    if (dirs[idx].size() != 0) fail(errc::range_violation, "direction set twice");
    dirs[idx] = dir.normalized();
  }
  if (dirs[0].size() == 0) dirs[0] = Eigen::VectorXd::Unit(m, 0);

  Eigen::MatrixXd T(m, n);
  for (int j = 0; j < n; ++j) {
    if (radii[j] <= 0.0) fail(errc::range_violation, "missing or non-positive radius");
    if (dirs[j].size() == 0) fail(errc::range_violation, "missing direction for column");
    T.col(j) = radii[j] * dirs[j];
  }
  return mucen::MulticentredConfig{std::move(T)};
}

DihedralRepresentation dihedral_chain(const Configuration& config) {
  if (config.dim() != 3) fail(errc::dimension_mismatch, "dihedral chains require m = 3");
  const int k = config.count();
  if (k < 3) fail(errc::dimension_mismatch, "dihedral chains require k >= 3");

  DihedralRepresentation rep;
  std::vector<Eigen::Vector3d> axis(k - 1);  // unit bond directions
  for (int j = 0; j + 1 < k; ++j) {
    const Eigen::Vector3d d = config.landmarks.col(j + 1) - config.landmarks.col(j);
    const double r = d.norm();
    if (r == 0.0) fail(errc::zero_landmark, "zero bond between consecutive landmarks");
    rep.bond_lengths.push_back(r);
    axis[j] = d / r;
  }
  for (int j = 0; j + 2 < k; ++j) {
    const double c = std::clamp(axis[j].dot(axis[j + 1]), -1.0, 1.0);
    const double s = std::sqrt(1.0 - c * c);
    if (s < 1e-8) fail(errc::collinear_bond, "bond angle at position " + std::to_string(j));
    rep.bond_angles.push_back(std::acos(c));
  }
  // Local frame about each interior bond; torsion convention: cis = 0,
  // trans = pi.
  for (int j = 1; j + 2 < k; ++j) {
    const double cos_prev = std::cos(rep.bond_angles[j - 1]);
    const Eigen::Vector3d y = (axis[j - 1] - cos_prev * axis[j]).normalized();
    const Eigen::Vector3d x = y.cross(axis[j]);
    const double s = -x.dot(axis[j + 1]);
    const double c = -y.dot(axis[j + 1]);
    rep.dihedrals.push_back(wrap_angle(std::atan2(s, c)));
  }
  return rep;
}

}  // namespace formkit::polypolar
