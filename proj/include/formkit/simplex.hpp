#pragma once

#include "formkit/mucen.hpp"
#include "formkit/types.hpp"

#include <utility>
#include <vector>

namespace formkit::simplex {

enum class FrameType { type1, type2 };

/// Orthonormal frame adapted to the tower of simplices spanned by the
/// first m multicentred columns.
///
/// Type 1: u_j^T z_i = h_j for all i <= j <= m, with h_2..h_m > 0 and
/// h_1 = u_1^T z_1 free of sign.
/// Type 2: the same for j <= m-1, u_m orthogonal to z_1..z_{m-1}, h_m = 0,
/// and h_1 > 0.
struct SimplexFrame {
  Eigen::MatrixXd U;        // m x m, in SO(m)
  Eigen::VectorXd heights;  // h_1..h_m
  FrameType type;
};

/// Constructs the frame from m linearly independent columns by the chain
/// of linear systems: each u_j solves w^T z_i = 1 (i <= j), w^T u_i = 0
/// (i > j) with u_j = w/|w| and h_j = 1/|w|.
SimplexFrame simplex_frame(const Eigen::MatrixXd& frame_columns, FrameType type);

struct SimplexMppCoordinates {
  FrameType type;
  int dim = 0;
  double h1 = 0.0;
  std::vector<double> s;                // k-2 radial parts
  std::vector<Eigen::VectorXd> zeta;    // k-2 unit m-vectors
};

SimplexMppCoordinates simplex_mpp(const mucen::MulticentredConfig& mc, FrameType type);

/// The seven variables of the five-landmark representation: pseudo bond
/// lengths d1, d2 (Angstrom), the in-plane angle alpha, and spherical
/// polars of the two fixed-length bond directions.
struct FivePointVector {
  double d1, d2, alpha, theta1, phi1, theta2, phi2;
};

/// Five-point scheme + Type 2 simplex coordinates + angle extraction.
FivePointVector five_point_coordinates(const Configuration& config);

/// The two constrained bond lengths |x1 - x2| and |x5 - x4|.
std::pair<double, double> five_point_fixed_lengths(const Configuration& config);

/// Canonical inverse: places the centre landmark at the origin and the
/// frame axes along the coordinate axes.
Configuration five_point_reconstruct(const FivePointVector& w, double fixed12, double fixed45);

}  // namespace formkit::simplex
