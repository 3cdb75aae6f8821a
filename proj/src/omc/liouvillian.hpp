#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "omc/errors.hpp"
#include "omc/numerics.hpp"

namespace omc {

using num::Complex;
using num::Matrix;
using num::RealMatrix;

enum class ModeKind { Optical, Mechanical };

/// Ordered list of bosonic modes. The registration order fixes the basis
/// ordering used by every downstream matrix: quadratures r = (q0, p0, q1, p1,
/// ...) and the doubled complex basis v = (a0, a0+, a1, a1+, ...).
class ModeRegistry {
 public:
  int add(const std::string& label, ModeKind kind);
  int index_of(const std::string& label) const;  // InvalidParameter if unknown
  bool contains(const std::string& label) const;
  int count() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int mode) const { return labels_.at(mode); }
  ModeKind kind(int mode) const { return kinds_.at(mode); }
  std::vector<std::string> labels() const { return labels_; }

  static int q_slot(int mode) { return 2 * mode; }
  static int p_slot(int mode) { return 2 * mode + 1; }
  static int a_slot(int mode) { return 2 * mode; }
  static int adag_slot(int mode) { return 2 * mode + 1; }

 private:
  std::vector<std::string> labels_;
  std::vector<ModeKind> kinds_;
};

/// Bilinear Hamiltonian stored as the Hermitian coefficient matrix G over the
/// doubled basis, H = (1/2) v+ G v. All rates and couplings are dimensionless
/// (units of the reference cavity linewidth).
class QuadraticHamiltonian {
 public:
  explicit QuadraticHamiltonian(int n_modes)
      : g_(Matrix::Zero(2 * n_modes, 2 * n_modes)) {}

  int modes() const { return static_cast<int>(g_.rows() / 2); }
  const Matrix& coefficients() const { return g_; }

  /// H += delta * a_m+ a_m
  void add_detuning(int mode, double delta);
  /// H += g (a_i+ a_j + a_j+ a_i)
  void add_beamsplitter(int i, int j, double g);
  /// H += g (a_i a_j + a_i+ a_j+)
  void add_two_mode_squeeze(int i, int j, double g);
  /// H += c a_i+ a_j + conj(c) a_j+ a_i
  void add_excitation_exchange(int i, int j, Complex c);
  /// H += sum_ij W_ij a_i+ a_j for Hermitian W over modes.
  void add_excitation_matrix(const Matrix& w);

  void add(const QuadraticHamiltonian& other);
  bool is_hermitian(double tol = 1e-12) const;

 private:
  // Distributes c * a_i+ a_j over the two equivalent slot orderings of G.
  void raw_exchange(int i, int j, Complex c);
  Matrix g_;
};

/// Linear jump operators A_k = sum_j C_kj a_j with a Hermitian PSD
/// dissipation matrix coupling the channels and a thermal occupation per
/// channel. Channels with nbar > 0 must be single-mode; dissipation-matrix
/// off-diagonals may only connect zero-temperature channels.
struct DissipatorSet {
  Matrix jump_coeffs;    // K x n
  Matrix gamma;          // K x K, Hermitian PSD
  Eigen::VectorXd nbar;  // K

  static DissipatorSet empty(int n_modes);
  int channels() const { return static_cast<int>(jump_coeffs.rows()); }
  int modes() const { return static_cast<int>(jump_coeffs.cols()); }

  /// Appends a single-mode decay channel D[a_mode] at the given rate and
  /// thermal occupation (rate*(nbar+1) downward, rate*nbar upward).
  void add_bath(int mode, double rate, double thermal_nbar = 0.0);
  /// Appends a multi-mode channel D[sum_j coeffs_j a_j] with unit weight.
  void add_channel(const Eigen::RowVectorXcd& coeffs);

  /// Index of the unique zero-temperature single-mode decay channel on the
  /// given mode; InvalidParameter if absent or ambiguous.
  int decay_channel_of(int mode) const;

  void validate() const;
};

/// Symbolic description of a Gaussian open network, compiled by
/// build_drift_diffusion into first- and second-moment equations of motion.
struct LiouvillianSpec {
  ModeRegistry registry;
  QuadraticHamiltonian hamiltonian;
  DissipatorSet dissipators;

  LiouvillianSpec(ModeRegistry reg, QuadraticHamiltonian ham, DissipatorSet dis);
  int modes() const { return registry.count(); }
};

/// Real drift and diffusion matrices of d<r>/dt = S <r> and
/// dV/dt = S V + V S^T + D over the quadrature basis.
struct DriftDiffusion {
  RealMatrix drift;      // S
  RealMatrix diffusion;  // D, symmetric PSD
  std::string basis;     // convention record
};

/// Quadrature covariance matrix (vacuum variance 1/2) plus mean vector.
struct CovarianceState {
  RealMatrix covariance;
  Eigen::VectorXd mean;
};

/// Symplectic form Omega = blkdiag([[0,1],[-1,0]]), [r_i, r_j] = i Omega_ij.
RealMatrix symplectic_form(int n_modes);

/// Block-diagonal unitary mapping the doubled complex basis to quadratures,
/// r = T v with per-mode block (1/sqrt(2)) [[1, 1], [-i, i]].
Matrix quadrature_transform(int n_modes);

/// Returns a copy of the spec with an irreversible (cascaded) optical link
/// from source to target: Hamiltonian shift
/// (sqrt(rate1*rate2)/2i)(a_t+ a_s - a_s+ a_t) plus the collective-decay
/// off-diagonals sqrt(rate1*rate2) between the two decay channels.
LiouvillianSpec add_cascade(const LiouvillianSpec& spec,
                            const std::string& source,
                            const std::string& target, double rate1,
                            double rate2);

/// Compiles the spec into drift and diffusion matrices via the adjoint
/// generator acting on first and second quadrature moments.
DriftDiffusion build_drift_diffusion(const LiouvillianSpec& spec);

/// Steady-state covariance, S V + V S^T + D = 0, zero mean. Propagates
/// UnstableDynamics from the Lyapunov solve.
CovarianceState steady_state(const LiouvillianSpec& spec);
CovarianceState steady_state(const DriftDiffusion& dd);

/// Second moments <v_i v_j> in the doubled annihilation/creation basis,
/// obtained from the quadrature covariance by the linear change of basis.
Matrix complex_moments(const CovarianceState& state, const ModeRegistry& reg);

/// Mean drift in the doubled complex basis, M = T+ S T (d<v>/dt = M <v>).
Matrix complex_drift(const DriftDiffusion& dd);

/// Smallest eigenvalue of V + i Omega/2; >= 0 (up to tolerance) for any
/// physical state under the vacuum-1/2 convention.
double physicality_min_eig(const RealMatrix& v);

}  // namespace omc
