#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace formkit {

enum class errc {
  pattern_violation,
  rank_deficient,
  bad_arity,
  dimension_mismatch,
  singular_recovery,
  degenerate_frame,
  zero_landmark,
  constraint_violation,
  collinear_bond,
  degenerate_simplex,
  range_violation,
  zero_resultant,
  degenerate_variance,
  not_symmetric,
  singular_pooled,
  too_few_samples,
  non_convergence,
  out_of_domain,
  envelope_failure,
  degenerate_data,
  parse_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

/// Landmark configuration: columns are the m-dimensional landmark positions.
struct Configuration {
  Eigen::MatrixXd landmarks;  // m x k

  int dim() const { return static_cast<int>(landmarks.rows()); }
  int count() const { return static_cast<int>(landmarks.cols()); }

  /// Checks finiteness and m >= 2, k >= 2. Operations that need a frame
  /// (m+1 landmarks in general position) enforce k >= m+1 themselves.
  static Configuration validated(Eigen::MatrixXd landmarks);
};

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.1415926535897932384626433832795;

/// Maps an atan2-style angle from (-pi, pi] to [0, 2*pi).
inline double wrap_angle(double a) {
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

}  // namespace formkit
