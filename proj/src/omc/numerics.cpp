#include "omc/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace omc::num {

namespace {

constexpr double kLyapunovRelResidual = 1e-10;
constexpr double kSylvesterRelResidual = 1e-10;
constexpr double kOdeBlowUp = 1e12;

// Kronecker solves scale as (2n)^6 in the drift dimension; beyond this the
// Schur reduction is used instead (same residual contract).
constexpr Eigen::Index kKroneckerMaxDim = 32;

template <typename Mat>
double max_abs_impl(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename Mat>
bool all_finite(const Mat& m) {
  return m.allFinite();
}

// Pade approximant of order 13 with scaling and squaring (Higham 2005).
Matrix expm_pade(const Matrix& a) {
  static const double b[] = {64764752532480000.0, 32382376266240000.0,
                             7771770303897600.0,  1187353796428800.0,
                             129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,
                             1323241920.0,        40840800.0,
                             960960.0,            16380.0,
                             182.0,               1.0};
  const Eigen::Index n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);

  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
  if (norm == 0.0) return ident;
  const double theta13 = 5.371920351148152;
  int squarings = 0;
  Matrix as = a;
  if (norm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
    as = a / std::pow(2.0, squarings);
  }

  const Matrix a2 = as * as;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a2 * a4;
  const Matrix u =
      as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
            b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                   b[4] * a4 + b[2] * a2 + b[0] * ident;

  Matrix num = v + u;
  Matrix den = v - u;
  Matrix r = den.partialPivLu().solve(num);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

// Bartels-Stewart style solve of S X + X S^T = -Q through one complex Schur
// factorization S = U T U^H.
RealMatrix lyapunov_schur(const RealMatrix& s, const RealMatrix& q) {
  const Eigen::Index n = s.rows();
  Eigen::ComplexSchur<Matrix> schur(s.cast<Complex>());
  if (schur.info() != Eigen::Success)
    throw NumericalFailure("solve_lyapunov: Schur factorization failed");
  const Matrix& u = schur.matrixU();
  const Matrix& t = schur.matrixT();

  // T Y + Y T^T = -R with R = U^H Q conj(U); columns solved back to front.
  Matrix r = u.adjoint() * q.cast<Complex>() * u.conjugate();
  Matrix y = Matrix::Zero(n, n);
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    Eigen::VectorXcd rhs = -r.col(j);
    for (Eigen::Index k = j + 1; k < n; ++k) rhs -= t(j, k) * y.col(k);
    Matrix lhs = t;
    lhs.diagonal().array() += t(j, j);
    y.col(j) = lhs.triangularView<Eigen::Upper>().solve(rhs);
  }
  return (u * y * u.transpose()).real();
}

RealMatrix lyapunov_kronecker(const RealMatrix& s, const RealMatrix& q) {
  const Eigen::Index n = s.rows();
  const RealMatrix ident = RealMatrix::Identity(n, n);
  RealMatrix big = RealMatrix::Zero(n * n, n * n);
  // vec(S X + X S^T) = (I (x) S + S (x) I) vec(X), column-major vec.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      big.block(i * n, j * n, n, n) += ident(i, j) * s;
      big.block(i * n, j * n, n, n) += s(i, j) * ident;
    }
  Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(q.data(), n * n);
  Eigen::VectorXd x = big.partialPivLu().solve(rhs);
  return Eigen::Map<const RealMatrix>(x.data(), n, n);
}

}  // namespace

double max_abs(const RealMatrix& m) { return max_abs_impl(m); }
double max_abs(const Matrix& m) { return max_abs_impl(m); }

void require_finite(const RealMatrix& m, const char* who) {
  if (!all_finite(m))
    throw InvalidParameter(std::string(who) + ": non-finite matrix entries");
}

void require_finite(const Matrix& m, const char* who) {
  if (!all_finite(m))
    throw InvalidParameter(std::string(who) + ": non-finite matrix entries");
}

void require_square(const Eigen::Index rows, const Eigen::Index cols,
                    const char* who) {
  if (rows != cols)
    throw InvalidParameter(std::string(who) + ": matrix must be square (got " +
                           std::to_string(rows) + "x" + std::to_string(cols) +
                           ")");
}

double spectral_abscissa(const RealMatrix& a) {
  require_square(a.rows(), a.cols(), "spectral_abscissa");
  require_finite(a, "spectral_abscissa");
  Eigen::EigenSolver<RealMatrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("spectral_abscissa: eigenvalue iteration failed");
  return es.eigenvalues().real().maxCoeff();
}

double spectral_abscissa(const Matrix& a) {
  require_square(a.rows(), a.cols(), "spectral_abscissa");
  require_finite(a, "spectral_abscissa");
  Eigen::ComplexEigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("spectral_abscissa: eigenvalue iteration failed");
  return es.eigenvalues().real().maxCoeff();
}

RealMatrix solve_lyapunov(const RealMatrix& s, const RealMatrix& q) {
  require_square(s.rows(), s.cols(), "solve_lyapunov");
  require_finite(s, "solve_lyapunov");
  require_finite(q, "solve_lyapunov");
  if (q.rows() != s.rows() || q.cols() != s.cols())
    throw InvalidParameter("solve_lyapunov: Q must match the shape of S");

  const double abscissa = spectral_abscissa(s);
  if (!(abscissa < 0.0))
    throw UnstableDynamics(
        abscissa, "solve_lyapunov: drift is not strictly stable (abscissa " +
                      std::to_string(abscissa) + ")");

  RealMatrix x = s.rows() <= kKroneckerMaxDim ? lyapunov_kronecker(s, q)
                                              : lyapunov_schur(s, q);
  const bool q_symmetric = max_abs(RealMatrix(q - q.transpose())) <=
                           1e-12 * (1.0 + max_abs(q));
  if (q_symmetric) x = 0.5 * (x + x.transpose()).eval();

  const double residual = max_abs(RealMatrix(s * x + x * s.transpose() + q));
  if (!(residual <= kLyapunovRelResidual * (1.0 + max_abs(q))))
    throw NumericalFailure("solve_lyapunov: residual " +
                           std::to_string(residual) +
                           " exceeds the contract bound");
  return x;
}

Matrix solve_sylvester(const Matrix& a, const Matrix& b, const Matrix& c) {
  require_square(a.rows(), a.cols(), "solve_sylvester(A)");
  require_square(b.rows(), b.cols(), "solve_sylvester(B)");
  require_finite(a, "solve_sylvester");
  require_finite(b, "solve_sylvester");
  require_finite(c, "solve_sylvester");
  const Eigen::Index m = a.rows();
  const Eigen::Index n = b.rows();
  if (c.rows() != m || c.cols() != n)
    throw InvalidParameter("solve_sylvester: C must be " + std::to_string(m) +
                           "x" + std::to_string(n));

  // vec(A X + X B) = (I (x) A + B^T (x) I) vec(X), column-major vec.
  Matrix big = Matrix::Zero(m * n, m * n);
  const Matrix im = Matrix::Identity(m, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) big.block(i * m, j * m, m, m) += a;
      big.block(i * m, j * m, m, m) += b(j, i) * im;
    }
  Eigen::FullPivLU<Matrix> lu(big);
  if (!lu.isInvertible())
    throw NumericalFailure(
        "solve_sylvester: singular system (spectra of A and -B collide)");
  Eigen::VectorXcd rhs = Eigen::Map<const Eigen::VectorXcd>(c.data(), m * n);
  Eigen::VectorXcd x = lu.solve(rhs);
  Matrix result = Eigen::Map<const Matrix>(x.data(), m, n);

  const double residual = max_abs(Matrix(a * result + result * b - c));
  if (!(residual <= kSylvesterRelResidual * (1.0 + max_abs(c))))
    throw NumericalFailure("solve_sylvester: residual " +
                           std::to_string(residual) +
                           " exceeds the contract bound");
  return result;
}

Matrix expm(const Matrix& a, double t) {
  require_square(a.rows(), a.cols(), "expm");
  require_finite(a, "expm");
  if (!std::isfinite(t)) throw InvalidParameter("expm: non-finite time");
  if (t == 0.0) return Matrix::Identity(a.rows(), a.cols());
  Matrix r = expm_pade(a * t);
  if (!all_finite(r))
    throw NumericalFailure("expm: overflow in scaling-and-squaring");
  return r;
}

RealMatrix expm(const RealMatrix& a, double t) {
  return expm(Matrix(a.cast<Complex>()), t).real();
}

RealMatrix integrate_covariance_ode(const RealMatrix& s, const RealMatrix& d,
                                    const RealMatrix& v0, double t_end,
                                    double dt) {
  require_square(s.rows(), s.cols(), "integrate_covariance_ode");
  require_finite(s, "integrate_covariance_ode");
  require_finite(d, "integrate_covariance_ode");
  require_finite(v0, "integrate_covariance_ode");
  const Eigen::Index n = s.rows();
  if (d.rows() != n || d.cols() != n || v0.rows() != n || v0.cols() != n)
    throw InvalidParameter("integrate_covariance_ode: dimension mismatch");
  if (!(dt > 0.0)) throw InvalidParameter("integrate_covariance_ode: dt <= 0");
  if (!(t_end >= 0.0))
    throw InvalidParameter("integrate_covariance_ode: t_end < 0");

  const auto rhs = [&](const RealMatrix& v) -> RealMatrix {
    RealMatrix sv = s * v;
    return sv + sv.transpose() + d;
  };

  const auto step = [&](RealMatrix& v, double h, double t_now) {
    const RealMatrix k1 = rhs(v);
    const RealMatrix k2 = rhs(v + 0.5 * h * k1);
    const RealMatrix k3 = rhs(v + 0.5 * h * k2);
    const RealMatrix k4 = rhs(v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    v = 0.5 * (v + v.transpose()).eval();
    if (!all_finite(v) || max_abs(v) > kOdeBlowUp)
      throw NumericalFailure(
          "integrate_covariance_ode: step blow-up at t = " +
          std::to_string(t_now));
  };

  RealMatrix v = v0;
  const auto n_full = static_cast<long long>(std::floor(t_end / dt));
  for (long long i = 0; i < n_full; ++i) step(v, dt, i * dt);
  const double rem = t_end - static_cast<double>(n_full) * dt;
  if (rem > 1e-12 * dt) step(v, rem, n_full * dt);
  return v;
}

}  // namespace omc::num
