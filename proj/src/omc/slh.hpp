#pragma once

#include "omc/liouvillian.hpp"

namespace omc {

/// Network element in the (S, L, H) description: per-port scattering matrix
/// (unitary), coupling vector of linear forms over mode annihilation
/// operators (units sqrt(rate)), and a bilinear Hamiltonian.
class SLHTriple {
 public:
  SLHTriple(Matrix scattering, Matrix coupling, QuadraticHamiltonian h);

  int ports() const { return static_cast<int>(scattering_.rows()); }
  int modes() const { return hamiltonian_.modes(); }
  const Matrix& scattering() const { return scattering_; }
  const Matrix& coupling() const { return coupling_; }
  const QuadraticHamiltonian& hamiltonian() const { return hamiltonian_; }

 private:
  Matrix scattering_;  // ports x ports
  Matrix coupling_;    // ports x modes
  QuadraticHamiltonian hamiltonian_;
};

/// Series product G2 <| G1 (output of G1 feeds the input of G2):
///   (S2 S1, L2 + S2 L1, H1 + H2 + (1/2i)(L2+ S2 L1 - L1+ S2+ L2)).
/// Port counts must match; InvalidComposition otherwise.
SLHTriple series_product(const SLHTriple& g2, const SLHTriple& g1);

/// Reduction to a master-equation spec, generator -i[H, .] + D[L] plus the
/// supplied extra baths. Each port's collective channel is expanded into
/// per-mode jump operators with the cross rates in the dissipation matrix.
LiouvillianSpec to_liouvillian(const SLHTriple& g, const ModeRegistry& registry,
                               const DissipatorSet& extra_baths);

}  // namespace omc
