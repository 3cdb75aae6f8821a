#pragma once

#include <Eigen/Dense>
#include <complex>

#include "omc/errors.hpp"

namespace omc::num {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Largest real part over the spectrum of a square matrix.
double spectral_abscissa(const RealMatrix& a);
double spectral_abscissa(const Matrix& a);

/// Solves the continuous Lyapunov equation S X + X S^T + Q = 0 for stable S.
///
/// Throws UnstableDynamics unless spectral_abscissa(S) < 0 (strict, no
/// tolerance band). The result satisfies the residual bound
/// |S X + X S^T + Q|_max <= 1e-10 * (1 + |Q|_max) or NumericalFailure is
/// thrown. X is symmetrized when Q is symmetric.
RealMatrix solve_lyapunov(const RealMatrix& s, const RealMatrix& q);

/// Solves the Sylvester equation A X + X B = C via Kronecker vectorization.
/// Requires the spectra of A and -B to be disjoint; a (near-)singular system
/// raises NumericalFailure.
Matrix solve_sylvester(const Matrix& a, const Matrix& b, const Matrix& c);

/// Matrix exponential exp(A t) by scaling-and-squaring with Pade approximants.
Matrix expm(const Matrix& a, double t = 1.0);
RealMatrix expm(const RealMatrix& a, double t = 1.0);

/// Fixed-step RK4 integration of dV/dt = S V + V S^T + D from V0 to t_end.
/// V is symmetrized after every step. Throws NumericalFailure if |V|_max
/// exceeds 1e12 during integration.
RealMatrix integrate_covariance_ode(const RealMatrix& s, const RealMatrix& d,
                                    const RealMatrix& v0, double t_end,
                                    double dt = 1e-3);

/// Max-abs norm used by the residual contracts.
double max_abs(const RealMatrix& m);
double max_abs(const Matrix& m);

void require_finite(const RealMatrix& m, const char* who);
void require_finite(const Matrix& m, const char* who);
void require_square(const Eigen::Index rows, const Eigen::Index cols,
                    const char* who);

}  // namespace omc::num
