#include "omc/liouvillian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <utility>

namespace omc {

namespace {

const Complex kI(0.0, 1.0);

// Pair-swap permutation P with v+ = P v (exchanges a and a+ slots).
Matrix pair_swap(int n_modes) {
  Matrix p = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int m = 0; m < n_modes; ++m) {
    p(2 * m, 2 * m + 1) = 1.0;
    p(2 * m + 1, 2 * m) = 1.0;
  }
  return p;
}

void check_mode_range(int mode, int n_modes, const char* who) {
  if (mode < 0 || mode >= n_modes)
    throw InvalidParameter(std::string(who) + ": mode index out of range");
}

}  // namespace

int ModeRegistry::add(const std::string& label, ModeKind kind) {
  if (label.empty()) throw InvalidParameter("ModeRegistry: empty mode label");
  if (contains(label))
    throw InvalidParameter("ModeRegistry: duplicate mode label '" + label +
                           "'");
  labels_.push_back(label);
  kinds_.push_back(kind);
  return count() - 1;
}

int ModeRegistry::index_of(const std::string& label) const {
  for (int i = 0; i < count(); ++i)
    if (labels_[i] == label) return i;
  throw InvalidParameter("ModeRegistry: unknown mode '" + label + "'");
}

bool ModeRegistry::contains(const std::string& label) const {
  for (const auto& l : labels_)
    if (l == label) return true;
  return false;
}

void QuadraticHamiltonian::raw_exchange(int i, int j, Complex c) {
  g_(ModeRegistry::a_slot(i), ModeRegistry::a_slot(j)) += c;
  g_(ModeRegistry::adag_slot(j), ModeRegistry::adag_slot(i)) += c;
}

void QuadraticHamiltonian::add_detuning(int mode, double delta) {
  check_mode_range(mode, modes(), "add_detuning");
  raw_exchange(mode, mode, delta);
}

void QuadraticHamiltonian::add_excitation_exchange(int i, int j, Complex c) {
  check_mode_range(i, modes(), "add_excitation_exchange");
  check_mode_range(j, modes(), "add_excitation_exchange");
  raw_exchange(i, j, c);
  raw_exchange(j, i, std::conj(c));
}

void QuadraticHamiltonian::add_beamsplitter(int i, int j, double g) {
  if (i == j) throw InvalidParameter("add_beamsplitter: distinct modes required");
  add_excitation_exchange(i, j, g);
}

void QuadraticHamiltonian::add_two_mode_squeeze(int i, int j, double g) {
  check_mode_range(i, modes(), "add_two_mode_squeeze");
  check_mode_range(j, modes(), "add_two_mode_squeeze");
  // g a_i+ a_j+ distributed over the two equivalent slot orderings, plus the
  // Hermitian conjugate g a_j a_i.
  g_(ModeRegistry::a_slot(i), ModeRegistry::adag_slot(j)) += g;
  g_(ModeRegistry::a_slot(j), ModeRegistry::adag_slot(i)) += g;
  g_(ModeRegistry::adag_slot(j), ModeRegistry::a_slot(i)) += g;
  g_(ModeRegistry::adag_slot(i), ModeRegistry::a_slot(j)) += g;
}

void QuadraticHamiltonian::add_excitation_matrix(const Matrix& w) {
  const int n = modes();
  if (w.rows() != n || w.cols() != n)
    throw InvalidParameter("add_excitation_matrix: W must be n_modes square");
  if (num::max_abs(Matrix(w - w.adjoint())) > 1e-12 * (1.0 + num::max_abs(w)))
    throw InvalidParameter("add_excitation_matrix: W must be Hermitian");
  for (int i = 0; i < n; ++i) {
    add_detuning(i, w(i, i).real());
    for (int j = i + 1; j < n; ++j) add_excitation_exchange(i, j, w(i, j));
  }
}

void QuadraticHamiltonian::add(const QuadraticHamiltonian& other) {
  if (other.modes() != modes())
    throw InvalidParameter("QuadraticHamiltonian::add: mode count mismatch");
  g_ += other.g_;
}

bool QuadraticHamiltonian::is_hermitian(double tol) const {
  return num::max_abs(Matrix(g_ - g_.adjoint())) <=
         tol * (1.0 + num::max_abs(g_));
}

DissipatorSet DissipatorSet::empty(int n_modes) {
  DissipatorSet d;
  d.jump_coeffs = Matrix::Zero(0, n_modes);
  d.gamma = Matrix::Zero(0, 0);
  d.nbar = Eigen::VectorXd::Zero(0);
  return d;
}

void DissipatorSet::add_bath(int mode, double rate, double thermal_nbar) {
  check_mode_range(mode, modes(), "add_bath");
  if (rate < 0.0) throw InvalidParameter("add_bath: negative rate");
  if (thermal_nbar < 0.0)
    throw InvalidParameter("add_bath: negative thermal occupation");
  Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(modes());
  row(mode) = 1.0;
  const int k = channels();
  jump_coeffs.conservativeResize(k + 1, Eigen::NoChange);
  jump_coeffs.row(k) = row;
  Matrix g = Matrix::Zero(k + 1, k + 1);
  g.topLeftCorner(k, k) = gamma;
  g(k, k) = rate;
  gamma = std::move(g);
  nbar.conservativeResize(k + 1);
  nbar(k) = thermal_nbar;
}

void DissipatorSet::add_channel(const Eigen::RowVectorXcd& coeffs) {
  if (coeffs.size() != modes())
    throw InvalidParameter("add_channel: coefficient length mismatch");
  const int k = channels();
  jump_coeffs.conservativeResize(k + 1, Eigen::NoChange);
  jump_coeffs.row(k) = coeffs;
  Matrix g = Matrix::Zero(k + 1, k + 1);
  g.topLeftCorner(k, k) = gamma;
  g(k, k) = 1.0;
  gamma = std::move(g);
  nbar.conservativeResize(k + 1);
  nbar(k) = 0.0;
}

int DissipatorSet::decay_channel_of(int mode) const {
  int found = -1;
  for (int k = 0; k < channels(); ++k) {
    bool single = std::abs(jump_coeffs(k, mode)) > 0.0;
    for (int m = 0; m < modes() && single; ++m)
      if (m != mode && std::abs(jump_coeffs(k, m)) > 0.0) single = false;
    if (single && nbar(k) == 0.0) {
      if (found >= 0)
        throw InvalidParameter(
            "decay_channel_of: multiple decay channels on mode " +
            std::to_string(mode));
      found = k;
    }
  }
  if (found < 0)
    throw InvalidParameter(
        "decay_channel_of: no zero-temperature decay channel on mode " +
        std::to_string(mode));
  return found;
}

void DissipatorSet::validate() const {
  const int k = channels();
  if (gamma.rows() != k || gamma.cols() != k || nbar.size() != k)
    throw InvalidParameter("DissipatorSet: inconsistent channel count");
  if (k == 0) return;
  num::require_finite(jump_coeffs, "DissipatorSet");
  num::require_finite(gamma, "DissipatorSet");
  const double scale = 1.0 + num::max_abs(gamma);
  if (num::max_abs(Matrix(gamma - gamma.adjoint())) > 1e-12 * scale)
    throw InvalidParameter("DissipatorSet: dissipation matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(gamma,
                                           Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("DissipatorSet: eigenvalue check failed");
  if (es.eigenvalues().minCoeff() < -1e-12 * scale)
    throw InvalidParameter("DissipatorSet: dissipation matrix not PSD");
  for (int i = 0; i < k; ++i) {
    if (nbar(i) < 0.0)
      throw InvalidParameter("DissipatorSet: negative thermal occupation");
    if (nbar(i) > 0.0) {
      int nonzero = 0;
      for (int m = 0; m < modes(); ++m)
        if (std::abs(jump_coeffs(i, m)) > 0.0) ++nonzero;
      if (nonzero != 1)
        throw InvalidParameter(
            "DissipatorSet: thermal baths attach only to single-mode jump "
            "operators");
      for (int j = 0; j < k; ++j)
        if (j != i && std::abs(gamma(i, j)) > 0.0)
          throw InvalidParameter(
              "DissipatorSet: off-diagonal dissipation requires "
              "zero-temperature channels");
    }
  }
}

LiouvillianSpec::LiouvillianSpec(ModeRegistry reg, QuadraticHamiltonian ham,
                                 DissipatorSet dis)
    : registry(std::move(reg)),
      hamiltonian(std::move(ham)),
      dissipators(std::move(dis)) {
  if (hamiltonian.modes() != registry.count() ||
      dissipators.modes() != registry.count())
    throw InvalidParameter("LiouvillianSpec: mode count mismatch");
  if (!hamiltonian.is_hermitian())
    throw InvalidParameter("LiouvillianSpec: Hamiltonian not Hermitian");
}

RealMatrix symplectic_form(int n_modes) {
  RealMatrix omega = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
  for (int m = 0; m < n_modes; ++m) {
    omega(2 * m, 2 * m + 1) = 1.0;
    omega(2 * m + 1, 2 * m) = -1.0;
  }
  return omega;
}

Matrix quadrature_transform(int n_modes) {
  Matrix t = Matrix::Zero(2 * n_modes, 2 * n_modes);
  const double s = 1.0 / std::sqrt(2.0);
  for (int m = 0; m < n_modes; ++m) {
    t(2 * m, 2 * m) = s;
    t(2 * m, 2 * m + 1) = s;
    t(2 * m + 1, 2 * m) = -kI * s;
    t(2 * m + 1, 2 * m + 1) = kI * s;
  }
  return t;
}

LiouvillianSpec add_cascade(const LiouvillianSpec& spec,
                            const std::string& source,
                            const std::string& target, double rate1,
                            double rate2) {
  if (!(rate1 > 0.0) || !(rate2 > 0.0))
    throw InvalidParameter("add_cascade: rates must be positive");
  const int s = spec.registry.index_of(source);
  const int t = spec.registry.index_of(target);
  if (s == t) throw InvalidParameter("add_cascade: source equals target");

  DissipatorSet dis = spec.dissipators;
  const int ks = dis.decay_channel_of(s);
  const int kt = dis.decay_channel_of(t);
  const double c = std::sqrt(rate1 * rate2);
  if (std::abs(dis.gamma(ks, ks) - rate1) > 1e-12 * (1.0 + rate1) ||
      std::abs(dis.gamma(kt, kt) - rate2) > 1e-12 * (1.0 + rate2))
    throw InvalidParameter(
        "add_cascade: rates disagree with the existing decay channels");
  dis.gamma(ks, kt) = c;
  dis.gamma(kt, ks) = c;

  QuadraticHamiltonian ham = spec.hamiltonian;
  // (c/2i)(a_t+ a_s - a_s+ a_t)
  ham.add_excitation_exchange(t, s, Complex(0.0, -0.5) * c);
  return LiouvillianSpec(spec.registry, std::move(ham), std::move(dis));
}

DriftDiffusion build_drift_diffusion(const LiouvillianSpec& spec) {
  const int n = spec.modes();
  const int dim = 2 * n;
  spec.dissipators.validate();
  if (!spec.hamiltonian.is_hermitian())
    throw InvalidParameter("build_drift_diffusion: Hamiltonian not Hermitian");

  const Matrix t = quadrature_transform(n);
  const RealMatrix omega = symplectic_form(n);

  // Hamiltonian in quadratures: H = (1/2) r^T G_r r with
  // G_r = 2 Re sym(T* K T+), K = (1/2) P G.
  const Matrix k = 0.5 * pair_swap(n) * spec.hamiltonian.coefficients();
  const Matrix kq = t.conjugate() * k * t.adjoint();
  const Matrix kq_sym = 0.5 * (kq + kq.transpose());
  if (num::max_abs(RealMatrix(kq_sym.imag())) >
      1e-10 * (1.0 + num::max_abs(kq)))
    throw InvalidParameter(
        "build_drift_diffusion: Hamiltonian has a non-Hermitian remainder");
  const RealMatrix g_r = 2.0 * kq_sym.real();

  // Expanded jump list over quadratures: one row per channel for the
  // annihilation-side operators, plus one row per thermal channel for the
  // creation side. Rates and thermal weights live in the block-diagonal
  // weight matrix.
  const DissipatorSet& dis = spec.dissipators;
  const int kc = dis.channels();
  std::vector<int> thermal;
  for (int i = 0; i < kc; ++i)
    if (dis.nbar(i) > 0.0) thermal.push_back(i);
  const int rows = kc + static_cast<int>(thermal.size());

  Matrix c_r = Matrix::Zero(rows, dim);
  Matrix weights = Matrix::Zero(rows, rows);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < kc; ++i) {
    for (int m = 0; m < n; ++m) {
      const Complex c = dis.jump_coeffs(i, m);
      if (c == Complex(0.0)) continue;
      c_r(i, ModeRegistry::q_slot(m)) = c * inv_sqrt2;
      c_r(i, ModeRegistry::p_slot(m)) = kI * c * inv_sqrt2;
    }
    for (int j = 0; j < kc; ++j) weights(i, j) = dis.gamma(i, j);
    weights(i, i) = dis.gamma(i, i) * (dis.nbar(i) + 1.0);
  }
  for (size_t ti = 0; ti < thermal.size(); ++ti) {
    const int i = thermal[ti];
    const int row = kc + static_cast<int>(ti);
    for (int m = 0; m < n; ++m) {
      const Complex c = std::conj(dis.jump_coeffs(i, m));
      if (c == Complex(0.0)) continue;
      c_r(row, ModeRegistry::q_slot(m)) = c * inv_sqrt2;
      c_r(row, ModeRegistry::p_slot(m)) = -kI * c * inv_sqrt2;
    }
    weights(row, row) = dis.gamma(i, i) * dis.nbar(i);
  }

  const Matrix theta = c_r.adjoint() * weights * c_r;

  DriftDiffusion dd;
  dd.drift = omega * (g_r + theta.imag());
  dd.diffusion = omega * theta.real() * omega.transpose();
  dd.diffusion = 0.5 * (dd.diffusion + dd.diffusion.transpose()).eval();
  dd.basis =
      "quadratures (q,p) per mode in registry order; vacuum variance 1/2; "
      "Omega = blkdiag([[0,1],[-1,0]])";
  return dd;
}

CovarianceState steady_state(const DriftDiffusion& dd) {
  CovarianceState state;
  state.covariance = num::solve_lyapunov(dd.drift, dd.diffusion);
  state.mean = Eigen::VectorXd::Zero(dd.drift.rows());
  const double admissibility = physicality_min_eig(state.covariance);
  if (admissibility < -1e-8)
    throw NumericalFailure(
        "steady_state: covariance violates Heisenberg admissibility (min eig " +
        std::to_string(admissibility) + ")");
  return state;
}

CovarianceState steady_state(const LiouvillianSpec& spec) {
  return steady_state(build_drift_diffusion(spec));
}

Matrix complex_moments(const CovarianceState& state, const ModeRegistry& reg) {
  const int n = reg.count();
  if (state.covariance.rows() != 2 * n)
    throw InvalidParameter("complex_moments: state/registry size mismatch");
  const Matrix t = quadrature_transform(n);
  const Matrix second =
      state.covariance.cast<Complex>() +
      Complex(0.0, 0.5) * symplectic_form(n).cast<Complex>();
  const Eigen::VectorXcd mean_c = t.adjoint() * state.mean.cast<Complex>();
  return t.adjoint() * second * t.conjugate() + mean_c * mean_c.transpose();
}

Matrix complex_drift(const DriftDiffusion& dd) {
  const int n = static_cast<int>(dd.drift.rows() / 2);
  const Matrix t = quadrature_transform(n);
  return t.adjoint() * dd.drift.cast<Complex>() * t;
}

double physicality_min_eig(const RealMatrix& v) {
  const int n = static_cast<int>(v.rows() / 2);
  const Matrix h =
      v.cast<Complex>() + Complex(0.0, 0.5) * symplectic_form(n).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("physicality_min_eig: eigenvalue iteration failed");
  return es.eigenvalues().minCoeff();
}

}  // namespace omc
