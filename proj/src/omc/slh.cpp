#include "omc/slh.hpp"

#include <cmath>
#include <utility>

namespace omc {

SLHTriple::SLHTriple(Matrix scattering, Matrix coupling, QuadraticHamiltonian h)
    : scattering_(std::move(scattering)),
      coupling_(std::move(coupling)),
      hamiltonian_(std::move(h)) {
  num::require_square(scattering_.rows(), scattering_.cols(), "SLHTriple(S)");
  num::require_finite(scattering_, "SLHTriple(S)");
  num::require_finite(coupling_, "SLHTriple(L)");
  if (coupling_.rows() != scattering_.rows())
    throw InvalidComposition("SLHTriple: coupling rows must equal port count");
  if (coupling_.cols() != hamiltonian_.modes())
    throw InvalidComposition("SLHTriple: coupling columns must equal mode count");
  if (!hamiltonian_.is_hermitian())
    throw InvalidParameter("SLHTriple: Hamiltonian not Hermitian");
  const Matrix gram = scattering_.adjoint() * scattering_;
  const Matrix eye = Matrix::Identity(ports(), ports());
  if (num::max_abs(Matrix(gram - eye)) > 1e-12)
    throw InvalidParameter("SLHTriple: scattering matrix not unitary");
}

SLHTriple series_product(const SLHTriple& g2, const SLHTriple& g1) {
  if (g2.ports() != g1.ports())
    throw InvalidComposition("series_product: port counts differ");
  if (g2.modes() != g1.modes())
    throw InvalidComposition("series_product: mode spaces differ");

  Matrix s_eff = g2.scattering() * g1.scattering();
  Matrix l_eff = g2.coupling() + g2.scattering() * g1.coupling();

  QuadraticHamiltonian h_eff = g1.hamiltonian();
  h_eff.add(g2.hamiltonian());
  // (1/2i)(L2+ S2 L1 - L1+ S2+ L2) as an excitation-exchange matrix over
  // modes: E_mm' carries the coefficient of a_m+ a_m'.
  const Matrix e =
      g2.coupling().adjoint() * g2.scattering() * g1.coupling();
  const Matrix shift = (e - e.adjoint()) / Complex(0.0, 2.0);
  h_eff.add_excitation_matrix(shift);

  return SLHTriple(std::move(s_eff), std::move(l_eff), std::move(h_eff));
}

LiouvillianSpec to_liouvillian(const SLHTriple& g, const ModeRegistry& registry,
                               const DissipatorSet& extra_baths) {
  const int n = g.modes();
  if (registry.count() != n)
    throw InvalidParameter("to_liouvillian: registry size mismatch");
  if (extra_baths.modes() != n)
    throw InvalidParameter("to_liouvillian: extra bath size mismatch");

  // sum_p D[L_p] with L_p = sum_m C_pm a_m expands over per-mode jumps a_m
  // with dissipation matrix Gamma_mm' = sum_p C_pm conj(C_pm').
  const Matrix& c = g.coupling();
  const Matrix gram = (c.adjoint() * c).conjugate();

  std::vector<int> active;
  for (int m = 0; m < n; ++m)
    if (c.col(m).norm() > 0.0) active.push_back(m);

  DissipatorSet dis = DissipatorSet::empty(n);
  const int ka = static_cast<int>(active.size());
  const int ke = extra_baths.channels();
  dis.jump_coeffs = Matrix::Zero(ka + ke, n);
  dis.gamma = Matrix::Zero(ka + ke, ka + ke);
  dis.nbar = Eigen::VectorXd::Zero(ka + ke);
  for (int i = 0; i < ka; ++i) {
    dis.jump_coeffs(i, active[i]) = 1.0;
    for (int j = 0; j < ka; ++j) dis.gamma(i, j) = gram(active[i], active[j]);
  }
  dis.jump_coeffs.bottomRows(ke) = extra_baths.jump_coeffs;
  dis.gamma.bottomRightCorner(ke, ke) = extra_baths.gamma;
  dis.nbar.tail(ke) = extra_baths.nbar;

  return LiouvillianSpec(registry, g.hamiltonian(), std::move(dis));
}

}  // namespace omc
