#include "omc/adiabatic.hpp"

#include <algorithm>
#include <cmath>

namespace omc {

namespace {

using num::Complex;
using num::Matrix;

const Complex kI(0.0, 1.0);

void check_params(const AdiabaticParams& p) {
  if (!(p.Gamma > 0.0))
    throw InvalidParameter("adiabatic: Gamma must be positive");
  if (p.g1 < 0.0 || p.g2 < 0.0 || p.kappa < 0.0 || p.gamma < 0.0)
    throw InvalidParameter("adiabatic: rates must be non-negative");
}

void check_denominator(const Complex& den, double scale, const char* what) {
  if (std::abs(den) <= 1e-14 * (1.0 + scale))
    throw SingularLimit(std::string("adiabatic: degenerate denominator in ") +
                        what);
}

double alpha_of(const AdiabaticParams& p) {
  const double g1_2 = p.g1 * p.g1;
  const double g2_2 = p.g2 * p.g2;
  const double gamma2 = p.Gamma * p.Gamma;
  return std::sqrt(gamma2 * g1_2 * g1_2 +
                   2.0 * (gamma2 + 8.0 * p.kappa * p.kappa) * g1_2 * g2_2 +
                   gamma2 * g2_2 * g2_2);
}

}  // namespace

bool adiabatic_regime_ok(const AdiabaticParams& p) {
  return p.Gamma >= 10.0 * std::max({p.g1, p.g2, p.kappa});
}

num::Complex b1b2_no_feedback(const AdiabaticParams& p) {
  check_params(p);
  if (p.g1 * p.g2 == 0.0) return 0.0;

  const double alpha = alpha_of(p);
  const double g1_2 = p.g1 * p.g1;
  const double g2_2 = p.g2 * p.g2;
  const double denom_k = p.Gamma * p.Gamma + 4.0 * p.kappa * p.kappa;
  const double beta1 = p.gamma + 2.0 * p.Gamma * (g2_2 - g1_2) / denom_k;
  const double beta2 = alpha / denom_k;

  const double poles = beta1 * beta1 - 4.0 * beta2 * beta2;
  check_denominator(poles, beta1 * beta1 + 4.0 * beta2 * beta2,
                    "b1b2_no_feedback");
  check_denominator(beta1, std::abs(p.gamma) + beta2, "b1b2_no_feedback");

  const Complex prefactor =
      4.0 * kI * p.kappa * p.g1 * p.g2 / (alpha * alpha);
  const double bracket =
      p.Gamma * (g1_2 + g2_2) * (2.0 * beta2 / beta1) + alpha;
  return prefactor * p.gamma * bracket * (beta2 / poles);
}

num::Complex b1b2_with_feedback(const AdiabaticParams& p) {
  check_params(p);
  if (p.g1 * p.g2 == 0.0) return 0.0;

  const double alpha = alpha_of(p);
  const double g1_2 = p.g1 * p.g1;
  const double g2_2 = p.g2 * p.g2;
  const Complex denom_k =
      p.Gamma * p.Gamma + 4.0 * p.kappa * p.kappa -
      kI * 4.0 * p.kappa * p.Gamma;
  const Complex disc =
      alpha * alpha - kI * 16.0 * p.kappa * p.Gamma * g1_2 * g2_2;
  const Complex root = std::sqrt(disc);

  const Complex beta1 = p.gamma + 2.0 * p.Gamma * (g2_2 - g1_2) / denom_k;
  const Complex beta2 = root / denom_k;

  const Complex poles = beta1 * beta1 - 4.0 * beta2 * beta2;
  check_denominator(poles, std::abs(beta1 * beta1) + 4.0 * std::abs(beta2 * beta2),
                    "b1b2_with_feedback");
  check_denominator(beta1, std::abs(p.gamma) + std::abs(beta2),
                    "b1b2_with_feedback");
  check_denominator(disc, alpha * alpha, "b1b2_with_feedback");

  const Complex prefactor = 4.0 * (p.Gamma + kI * p.kappa) * p.g1 * p.g2 / disc;
  const Complex bracket =
      p.Gamma * (g1_2 + g2_2) * (2.0 * beta2 / beta1) + root;
  return prefactor * p.gamma * bracket * (beta2 / poles);
}

num::Complex model2_a2b_with_feedback(const AdiabaticParams& p) {
  check_params(p);
  const double g1 = p.g1;
  const double g2 = p.g2;
  const double big_gamma = p.Gamma;
  const double slow_decay = 0.5 * p.gamma - 2.0 * g1 * g1 / big_gamma;

  Matrix c = Matrix::Zero(4, 4);
  c(0, 0) = -0.5 * big_gamma;
  c(0, 2) = -kI * g2;
  c(0, 3) = 2.0 * kI * g1;
  c(1, 1) = -0.5 * big_gamma;
  c(1, 2) = -2.0 * kI * g1;
  c(1, 3) = kI * g2;
  c(2, 0) = -kI * g2;
  c(2, 2) = -slow_decay;
  c(3, 1) = kI * g2;
  c(3, 3) = -slow_decay;

  const double abscissa = num::spectral_abscissa(c);
  if (!(abscissa < 0.0))
    throw UnstableDynamics(abscissa,
                           "model2_a2b_with_feedback: adiabatic drift unstable");

  Matrix w = Matrix::Zero(4, 4);
  w(0, 1) = big_gamma;
  w(0, 2) = 2.0 * kI * g1;
  w(2, 3) = p.gamma;
  w(3, 1) = -2.0 * kI * g1;
  w(3, 2) = 4.0 * g1 * g1 / big_gamma;

  const Matrix x = num::solve_sylvester(c, c.transpose(), Matrix(-w));
  return x(0, 2);
}

num::Complex model2_a2b_no_feedback() { return 0.0; }

}  // namespace omc
