#include "omc/entanglement.hpp"

#include <cmath>

namespace omc {

Eigen::Matrix4d TwoModeCovariance::assembled() const {
  Eigen::Matrix4d v;
  v.topLeftCorner<2, 2>() = a1;
  v.topRightCorner<2, 2>() = c1;
  v.bottomLeftCorner<2, 2>() = c1.transpose();
  v.bottomRightCorner<2, 2>() = b1;
  return v;
}

TwoModeCovariance extract_two_mode(const CovarianceState& state,
                                   const ModeRegistry& reg,
                                   const std::string& mode_i,
                                   const std::string& mode_j) {
  const int i = reg.index_of(mode_i);
  const int j = reg.index_of(mode_j);
  if (i == j) throw InvalidParameter("extract_two_mode: modes must differ");
  if (state.covariance.rows() != 2 * reg.count())
    throw InvalidParameter("extract_two_mode: state/registry size mismatch");

  const auto block = [&](int a, int b) -> Eigen::Matrix2d {
    return state.covariance.block<2, 2>(2 * a, 2 * b);
  };
  TwoModeCovariance tm;
  tm.a1 = block(i, i);
  tm.b1 = block(j, j);
  tm.c1 = block(i, j);
  return tm;
}

double log_negativity(const TwoModeCovariance& tm) {
  const double det_a = tm.a1.determinant();
  const double det_b = tm.b1.determinant();
  const double det_c = tm.c1.determinant();
  const double det_v = tm.assembled().determinant();
  const double sigma = det_a + det_b - 2.0 * det_c;

  double disc = sigma * sigma - 4.0 * det_v;
  if (disc < -1e-10)
    throw NumericalFailure(
        "log_negativity: inadmissible two-mode covariance (sigma^2 - 4 det V "
        "= " +
        std::to_string(disc) + ")");
  disc = std::max(disc, 0.0);

  double nu_sq = 0.5 * (sigma - std::sqrt(disc));
  if (nu_sq < -1e-10)
    throw NumericalFailure("log_negativity: negative symplectic eigenvalue");
  nu_sq = std::max(nu_sq, 0.0);
  const double nu = std::sqrt(nu_sq);
  if (nu >= 0.5) return 0.0;
  if (nu == 0.0)
    throw NumericalFailure("log_negativity: vanishing symplectic eigenvalue");
  return -std::log(2.0 * nu);
}

Complex mode_correlator(const CovarianceState& state, const ModeRegistry& reg,
                        const std::string& mode_i, const std::string& mode_j) {
  const int i = reg.index_of(mode_i);
  const int j = reg.index_of(mode_j);
  const Matrix moments = complex_moments(state, reg);
  return moments(ModeRegistry::a_slot(i), ModeRegistry::a_slot(j));
}

}  // namespace omc
