#pragma once

#include "omc/liouvillian.hpp"

namespace omc {

/// Two-mode restriction of a covariance matrix with the standard block
/// partition V = [[A1, C1], [C1^T, B1]] (quadrature units, vacuum 1/2).
struct TwoModeCovariance {
  Eigen::Matrix2d a1;
  Eigen::Matrix2d b1;
  Eigen::Matrix2d c1;

  Eigen::Matrix4d assembled() const;
};

/// Rows/columns of V restricted to modes i and j, in that order.
TwoModeCovariance extract_two_mode(const CovarianceState& state,
                                   const ModeRegistry& reg,
                                   const std::string& mode_i,
                                   const std::string& mode_j);

/// Logarithmic negativity N = max(0, -ln(2 nu)) with nu the smaller
/// symplectic eigenvalue of the partially transposed state,
///   nu^2 = sigma/2 - sqrt(sigma^2 - 4 det V)/2,
///   sigma = det A1 + det B1 - 2 det C1.
/// Natural logarithm throughout. Separable states (nu >= 1/2) return 0.
double log_negativity(const TwoModeCovariance& tm);

/// Annihilation-annihilation moment <a_i a_j> of the state.
Complex mode_correlator(const CovarianceState& state, const ModeRegistry& reg,
                        const std::string& mode_i, const std::string& mode_j);

}  // namespace omc
