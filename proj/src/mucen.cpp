#include "formkit/mucen.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace formkit::mucen {

namespace {

constexpr double kRankTol = 1e-10;

void check_permutation(const std::vector<int>& perm, int k) {
  if (static_cast<int>(perm.size()) != k) {
    fail(errc::pattern_violation, "permutation size does not match k");
  }
  std::vector<bool> seen(k, false);
  for (int p : perm) {
    if (p < 0 || p >= k || seen[p]) {
      fail(errc::pattern_violation, "permutation is not a bijection on 0..k-1");
    }
    seen[p] = true;
  }
}

}  // namespace

MulticentringScheme build_scheme(int k, std::vector<int> permutation, Eigen::MatrixXi epsilon) {
  if (k < 2) fail(errc::pattern_violation, "k must be at least 2");
  check_permutation(permutation, k);
  if (epsilon.rows() != k || epsilon.cols() != k) {
    fail(errc::pattern_violation, "epsilon must be k x k");
  }
  if (epsilon(0, 0) != 1) fail(errc::pattern_violation, "epsilon(0,0) must be 1");
  for (int j = 1; j < k; ++j) {
    if (epsilon(j, j) != 0) fail(errc::pattern_violation, "epsilon(j,j) must be 0 for j >= 1");
  }
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (epsilon(i, j) != 0 && epsilon(i, j) != 1) {
        fail(errc::pattern_violation, "epsilon entries must be 0 or 1");
      }
    }
  }

  MulticentringScheme scheme;
  scheme.k = k;
  scheme.permutation = std::move(permutation);
  scheme.epsilon = std::move(epsilon);
  scheme.A = Eigen::MatrixXd::Identity(k, k) - scheme.epsilon.cast<double>();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scheme.A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double tol = kRankTol * sv(0);
  int rank = 0;
  for (int i = 0; i < k; ++i) {
    if (sv(i) > tol) ++rank;
  }
  if (rank != k - 1) {
    fail(errc::rank_deficient, "rank(A) = " + std::to_string(rank) + ", expected k-1");
  }
  scheme.left_null = svd.matrixU().col(k - 1);
  scheme.right_null = svd.matrixV().col(k - 1);
  scheme.recovery.compute(scheme.A + scheme.left_null * scheme.right_null.transpose());
  return scheme;
}

MulticentringScheme preset_scheme(SchemePreset preset, int k) {
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  Eigen::MatrixXi eps = Eigen::MatrixXi::Zero(k, k);

  switch (preset) {
    case SchemePreset::gm_type1:
      if (k < 2) fail(errc::bad_arity, "gm_type1 requires k >= 2");
      eps.row(0).setOnes();  // subtract the first landmark from all
      break;
    case SchemePreset::five_point:
      if (k != 5) fail(errc::bad_arity, "five_point requires k = 5");
      perm = {2, 1, 3, 0, 4};
      eps(0, 0) = eps(0, 1) = eps(0, 2) = 1;
      eps(1, 3) = 1;
      eps(2, 4) = 1;
      break;
    case SchemePreset::chain_difference:
      if (k < 2) fail(errc::bad_arity, "chain_difference requires k >= 2");
      eps(0, 0) = 1;
      for (int j = 0; j + 1 < k; ++j) eps(j, j + 1) = 1;
      break;
  }
  return build_scheme(k, std::move(perm), std::move(eps));
}

MulticentredConfig multicentre(const Configuration& config, const MulticentringScheme& scheme) {
  if (config.count() != scheme.k) {
    fail(errc::dimension_mismatch, "configuration has k = " + std::to_string(config.count()) +
                                       ", scheme expects " + std::to_string(scheme.k));
  }
  const int k = scheme.k;
  Eigen::MatrixXd permuted(config.dim(), k);
  for (int j = 0; j < k; ++j) permuted.col(j) = config.landmarks.col(scheme.permutation[j]);
  const Eigen::MatrixXd W = permuted * scheme.A;
  return MulticentredConfig{W.rightCols(k - 1)};
}

Eigen::VectorXd location_of(const Configuration& config, const MulticentringScheme& scheme) {
  if (config.count() != scheme.k) {
    fail(errc::dimension_mismatch, "configuration does not match scheme arity");
  }
  Eigen::MatrixXd permuted(config.dim(), scheme.k);
  for (int j = 0; j < scheme.k; ++j) {
    permuted.col(j) = config.landmarks.col(scheme.permutation[j]);
  }
  return permuted * scheme.left_null;
}

Configuration reconstruct(const MulticentredConfig& mc, const Eigen::VectorXd& location,
                          const MulticentringScheme& scheme) {
  const int k = scheme.k;
  const int m = static_cast<int>(mc.columns.rows());
  if (mc.columns.cols() != k - 1) {
    fail(errc::dimension_mismatch, "multicentred coordinates do not match scheme arity");
  }
  if (location.size() != m) {
    fail(errc::dimension_mismatch, "location vector has wrong dimension");
  }
  if (scheme.recovery.rows() != k) {
    fail(errc::singular_recovery, "scheme carries no recovery factorization");
  }

  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(m, k);
  W.rightCols(k - 1) = mc.columns;
  // Y (A + u v^T) = W + (Y u) v^T
  const Eigen::MatrixXd rhs = W + location * scheme.right_null.transpose();
  const Eigen::MatrixXd Y = scheme.recovery.solve(rhs.transpose()).transpose();

  Eigen::MatrixXd X(m, k);
  for (int j = 0; j < k; ++j) X.col(scheme.permutation[j]) = Y.col(j);
  return Configuration{std::move(X)};
}

nlohmann::json to_json(const MulticentringScheme& scheme) {
  nlohmann::json j;
  j["k"] = scheme.k;
  j["permutation"] = scheme.permutation;
  std::vector<std::vector<int>> eps(scheme.k, std::vector<int>(scheme.k));
  for (int r = 0; r < scheme.k; ++r) {
    for (int c = 0; c < scheme.k; ++c) eps[r][c] = scheme.epsilon(r, c);
  }
  j["epsilon"] = eps;
  return j;
}

MulticentringScheme scheme_from_json(const nlohmann::json& j) {
  const int k = j.at("k").get<int>();
  auto perm = j.at("permutation").get<std::vector<int>>();
  const auto eps_rows = j.at("epsilon").get<std::vector<std::vector<int>>>();
  if (static_cast<int>(eps_rows.size()) != k) {
    fail(errc::parse_error, "epsilon row count does not match k");
  }
  Eigen::MatrixXi eps(k, k);
  for (int r = 0; r < k; ++r) {
    if (static_cast<int>(eps_rows[r].size()) != k) {
      fail(errc::parse_error, "epsilon column count does not match k");
    }
    for (int c = 0; c < k; ++c) eps(r, c) = eps_rows[r][c];
  }
  return build_scheme(k, std::move(perm), std::move(eps));
}

}  // namespace formkit::mucen
