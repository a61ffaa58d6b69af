#pragma once

#include "formkit/mucen.hpp"
#include "formkit/types.hpp"

#include <map>
#include <vector>

namespace formkit::polypolar {

/// Polar pairs (radius, direction) of the upper-triangular factor of
/// Z = V T with V in SO(m) and positive leading diagonal. Directions are
/// stored as m-vectors; column c (0-based) keeps entries beyond c+1
/// exactly zero while c < m-1, with a strictly positive entry at
/// position c. The last diagonal keeps its sign (chirality), so the
/// direction of column m-1 and beyond ranges over the full sphere.
struct MppCoordinates {
  int dim = 0;
  Eigen::MatrixXd rotation;                 // V, m x m
  std::vector<double> radii;                // k-1 entries
  std::vector<Eigen::VectorXd> directions;  // k-1 unit m-vectors
};

MppCoordinates mpp_coordinates(const mucen::MulticentredConfig& mc);

/// Fixed coordinates to be removed before analysis. Keys are 0-based
/// column indices of the multicentred matrix.
struct ConstraintMask {
  std::map<int, double> fixed_radii;
  std::map<int, Eigen::VectorXd> fixed_directions;
};

/// Free coordinates left after removing fixed radii, fixed directions, and
/// the information-free first direction (a single point for any m >= 2).
struct ConstrainedMpp {
  int dim = 0;
  std::vector<int> radius_columns;
  std::vector<double> radii;
  std::vector<int> direction_columns;
  std::vector<Eigen::VectorXd> directions;
};

/// Validates observed fixed radii against the mask to a relative tolerance
/// and drops every fixed coordinate.
ConstrainedMpp apply_constraints(const MppCoordinates& coords, const ConstraintMask& mask,
                                 double rel_tol = 0.05);

/// Canonical representative with V = I, i.e. the triangular factor itself.
mucen::MulticentredConfig mpp_representative(const MppCoordinates& coords);

/// Representative from constrained coordinates with the masked constants
/// re-inserted.
mucen::MulticentredConfig mpp_representative(const ConstrainedMpp& coords,
                                             const ConstraintMask& mask);

/// Chain description by bond lengths, bond angles, and torsion angles.
/// Angles follow the molecular convention: a planar zigzag (trans) chain
/// has torsion pi, a planar cis chain torsion 0.
struct DihedralRepresentation {
  std::vector<double> bond_lengths;  // k-1, between consecutive landmarks
  std::vector<double> bond_angles;   // k-2, in (0, pi)
  std::vector<double> dihedrals;     // k-3, in [0, 2*pi)
};

DihedralRepresentation dihedral_chain(const Configuration& config);

}  // namespace formkit::polypolar
