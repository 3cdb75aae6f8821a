#pragma once

#include "omc/numerics.hpp"

namespace omc {

/// Parameter set for the adiabatic-elimination closed forms. Both cavities
/// share the linewidth Gamma and the mechanical modes the damping gamma;
/// cavity baths are at zero temperature. The closed forms are derived for
/// Gamma much larger than every coupling; adiabatic_regime_ok reports whether
/// that premise holds (a warning condition, not an error).
struct AdiabaticParams {
  double g1 = 0.01;
  double g2 = 0.05;
  double kappa = 0.1;
  double Gamma = 1.0;
  double gamma = 1e-2;
};

/// True when Gamma >= 10 x max(g1, g2, kappa).
bool adiabatic_regime_ok(const AdiabaticParams& p);

/// Steady-state <b1 b2> for the two-cavity network without the cascaded
/// link, after eliminating both cavity modes. SingularLimit on a degenerate
/// denominator (beta1^2 == 4 beta2^2).
num::Complex b1b2_no_feedback(const AdiabaticParams& p);

/// Steady-state <b1 b2> with the cascaded link in place.
num::Complex b1b2_with_feedback(const AdiabaticParams& p);

/// Steady-state <a2 b> of the mechanics-mediated network with feedback,
/// evaluated from the slow (a2, b) dynamics after eliminating a1: element
/// (1,3) of the integral solved through the Sylvester identity
/// int_0^inf e^{Ct} W e^{C^T t} dt. UnstableDynamics if C is not stable.
/// Here kappa is unused (no reversible optical link in this topology) and
/// gamma is the mechanical damping.
num::Complex model2_a2b_with_feedback(const AdiabaticParams& p);

/// Without feedback the noise inputs of a2 and b are uncorrelated and the
/// steady-state <a2 b> vanishes identically.
num::Complex model2_a2b_no_feedback();

}  // namespace omc
