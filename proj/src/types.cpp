#include "formkit/types.hpp"

namespace formkit {

const char* errc_name(errc code) {
  switch (code) {
    case errc::pattern_violation: return "PatternViolation";
    case errc::rank_deficient: return "RankDeficient";
    case errc::bad_arity: return "BadArity";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::singular_recovery: return "SingularRecovery";
    case errc::degenerate_frame: return "DegenerateFrame";
    case errc::zero_landmark: return "ZeroLandmark";
    case errc::constraint_violation: return "ConstraintViolation";
    case errc::collinear_bond: return "CollinearBond";
    case errc::degenerate_simplex: return "DegenerateSimplex";
    case errc::range_violation: return "RangeViolation";
    case errc::zero_resultant: return "ZeroResultant";
    case errc::degenerate_variance: return "DegenerateVariance";
    case errc::not_symmetric: return "NotSymmetric";
    case errc::singular_pooled: return "SingularPooled";
    case errc::too_few_samples: return "TooFewSamples";
    case errc::non_convergence: return "NonConvergence";
    case errc::out_of_domain: return "OutOfDomain";
    case errc::envelope_failure: return "EnvelopeFailure";
    case errc::degenerate_data: return "DegenerateData";
    case errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

Configuration Configuration::validated(Eigen::MatrixXd landmarks) {
  if (landmarks.rows() < 2) fail(errc::dimension_mismatch, "configuration needs dim >= 2");
  if (landmarks.cols() < 2) fail(errc::dimension_mismatch, "configuration needs k >= 2");
  if (!landmarks.allFinite()) fail(errc::range_violation, "configuration has non-finite entries");
  return Configuration{std::move(landmarks)};
}

}  // namespace formkit
