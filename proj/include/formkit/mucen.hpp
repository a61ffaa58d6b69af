#pragma once

#include "formkit/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <vector>

namespace formkit::mucen {

/// Translation-removal scheme: a permutation of the landmarks followed by a
/// rank-(k-1) centring matrix A = I - E built from a binary pattern E.
/// Entry epsilon(i, j) = 1 means "subtract landmark i from landmark j"
/// (indices after permutation, 0-based). The first landmark is always
/// centred by itself and no other landmark is.
struct MulticentringScheme {
  int k = 0;
  std::vector<int> permutation;  // y_j = x_{permutation[j]}
  Eigen::MatrixXi epsilon;       // k x k binary
  Eigen::MatrixXd A;             // k x k, I - epsilon

  // Cached from the SVD of A: the singular pair of the zero singular value
  // and a factorization of A + u v^T used for location recovery.
  Eigen::VectorXd left_null;   // u
  Eigen::VectorXd right_null;  // v
  Eigen::PartialPivLU<Eigen::MatrixXd> recovery;
};

enum class SchemePreset { gm_type1, five_point, chain_difference };

/// Validates the epsilon pattern, derives A, and verifies rank(A) = k-1 by
/// singular values (a value counts as zero below 1e-10 times the largest).
MulticentringScheme build_scheme(int k, std::vector<int> permutation, Eigen::MatrixXi epsilon);

MulticentringScheme preset_scheme(SchemePreset preset, int k);

/// Translation-free coordinates; the dropped zero column is implicit.
struct MulticentredConfig {
  Eigen::MatrixXd columns;  // m x (k-1)
};

MulticentredConfig multicentre(const Configuration& config, const MulticentringScheme& scheme);

/// The location information removed by the scheme: X P u.
Eigen::VectorXd location_of(const Configuration& config, const MulticentringScheme& scheme);

/// Inverts multicentring given the removed location, undoing the permutation.
Configuration reconstruct(const MulticentredConfig& mc, const Eigen::VectorXd& location,
                          const MulticentringScheme& scheme);

nlohmann::json to_json(const MulticentringScheme& scheme);
MulticentringScheme scheme_from_json(const nlohmann::json& j);

}  // namespace formkit::mucen
