#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "omc/models.hpp"
#include "omc/slh.hpp"
#include "oracles.hpp"

using namespace omc;
using num::Complex;
using num::Matrix;
using num::RealMatrix;

namespace {

ModeRegistry model1_registry() {
  ModeRegistry reg;
  reg.add("a1", ModeKind::Optical);
  reg.add("b1", ModeKind::Mechanical);
  reg.add("a2", ModeKind::Optical);
  reg.add("b2", ModeKind::Mechanical);
  return reg;
}

// SLH route to the two-cavity network: compose the cavities in series, add
// the reversible optical coupling at network level, then reduce together
// with the mechanical baths.
LiouvillianSpec slh_model1(const Model1Params& p) {
  QuadraticHamiltonian h1(4), h2(4);
  h1.add_two_mode_squeeze(0, 1, p.g1);
  h2.add_beamsplitter(2, 3, p.g2);
  Matrix l1 = Matrix::Zero(1, 4), l2 = Matrix::Zero(1, 4);
  l1(0, 0) = std::sqrt(p.Gamma1);
  l2(0, 2) = std::sqrt(p.Gamma2);
  const Matrix s = Matrix::Identity(1, 1);
  const SLHTriple composed = series_product(SLHTriple(s, l2, h2),
                                            SLHTriple(s, l1, h1));
  QuadraticHamiltonian h = composed.hamiltonian();
  h.add_beamsplitter(0, 2, p.kappa);
  const SLHTriple network(composed.scattering(), composed.coupling(), h);

  DissipatorSet baths = DissipatorSet::empty(4);
  baths.add_bath(1, p.gamma, p.nbar);
  baths.add_bath(3, p.gamma, p.nbar);
  return to_liouvillian(network, model1_registry(), baths);
}

SLHTriple random_triple(std::mt19937& rng, int ports, int modes) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  Matrix s = Matrix::Zero(ports, ports);
  for (int i = 0; i < ports; ++i)
    s(i, i) = std::exp(Complex(0.0, angle(rng)));  // diagonal-phase unitary
  Matrix l(ports, modes);
  for (int i = 0; i < ports; ++i)
    for (int j = 0; j < modes; ++j) l(i, j) = 0.5 * Complex(u(rng), u(rng));
  QuadraticHamiltonian h(modes);
  for (int i = 0; i < modes; ++i) {
    h.add_detuning(i, u(rng));
    for (int j = i + 1; j < modes; ++j) {
      h.add_excitation_exchange(i, j, 0.3 * Complex(u(rng), u(rng)));
      h.add_two_mode_squeeze(i, j, 0.1 * u(rng));
    }
  }
  return SLHTriple(s, l, h);
}

double triple_distance(const SLHTriple& x, const SLHTriple& y) {
  double d = num::max_abs(Matrix(x.scattering() - y.scattering()));
  d = std::max(d, num::max_abs(Matrix(x.coupling() - y.coupling())));
  d = std::max(d, num::max_abs(Matrix(x.hamiltonian().coefficients() -
                                      y.hamiltonian().coefficients())));
  return d;
}

}  // namespace

TEST_CASE("scattering matrix must be unitary") {
  QuadraticHamiltonian h(1);
  Matrix l = Matrix::Zero(1, 1);
  Matrix bad = 2.0 * Matrix::Identity(1, 1);
  CHECK_THROWS_AS(SLHTriple(bad, l, h), InvalidParameter);
}

TEST_CASE("series product: identity element and one-sided couplings") {
  std::mt19937 rng(7);
  const SLHTriple g1 = random_triple(rng, 1, 2);

  QuadraticHamiltonian h0(2);
  const SLHTriple idle(Matrix::Identity(1, 1), Matrix::Zero(1, 2), h0);
  CHECK(triple_distance(series_product(idle, g1), g1) < 1e-12);

  // Passive upstream system: L_eff = L2, H_eff = H1 + H2.
  QuadraticHamiltonian h1(2);
  h1.add_detuning(0, 0.3);
  const SLHTriple passive(Matrix::Identity(1, 1), Matrix::Zero(1, 2), h1);
  const SLHTriple g2 = random_triple(rng, 1, 2);
  const SLHTriple out = series_product(g2, passive);
  CHECK(num::max_abs(Matrix(out.coupling() - g2.coupling())) < 1e-12);
  QuadraticHamiltonian expected = h1;
  expected.add(g2.hamiltonian());
  CHECK(num::max_abs(Matrix(out.hamiltonian().coefficients() -
                            expected.coefficients())) < 1e-12);
}

TEST_CASE("series product: effective Hamiltonian gains the interference term") {
  // Two decaying cavities: the composition picks up
  // (sqrt(G1 G2)/2i)(a2+ a1 - a1+ a2).
  const double big1 = 0.7, big2 = 1.3;
  QuadraticHamiltonian h0(2);
  Matrix l1 = Matrix::Zero(1, 2), l2 = Matrix::Zero(1, 2);
  l1(0, 0) = std::sqrt(big1);
  l2(0, 1) = std::sqrt(big2);
  const Matrix s = Matrix::Identity(1, 1);
  const SLHTriple out =
      series_product(SLHTriple(s, l2, h0), SLHTriple(s, l1, h0));

  QuadraticHamiltonian expected(2);
  expected.add_excitation_exchange(
      1, 0, Complex(0.0, -0.5) * std::sqrt(big1 * big2));
  CHECK(num::max_abs(Matrix(out.hamiltonian().coefficients() -
                            expected.coefficients())) < 1e-12);
  CHECK(num::max_abs(Matrix(out.coupling() - (l1 + l2))) < 1e-12);
}

TEST_CASE("series product: port mismatch is rejected") {
  std::mt19937 rng(11);
  const SLHTriple one = random_triple(rng, 1, 2);
  const SLHTriple two = random_triple(rng, 2, 2);
  CHECK_THROWS_AS((void)series_product(two, one), InvalidComposition);
}

TEST_CASE("series product is associative on all three fields") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 6; ++trial) {
    const SLHTriple g1 = random_triple(rng, 2, 3);
    const SLHTriple g2 = random_triple(rng, 2, 3);
    const SLHTriple g3 = random_triple(rng, 2, 3);
    const SLHTriple left = series_product(series_product(g3, g2), g1);
    const SLHTriple right = series_product(g3, series_product(g2, g1));
    CHECK(triple_distance(left, right) < 1e-12);
  }
}

TEST_CASE("reduction expands the collective channel into the dissipation matrix") {
  const double big1 = 0.8, big2 = 1.7;
  QuadraticHamiltonian h0(2);
  Matrix l = Matrix::Zero(1, 2);
  l(0, 0) = std::sqrt(big1);
  l(0, 1) = std::sqrt(big2);
  ModeRegistry reg;
  reg.add("a1", ModeKind::Optical);
  reg.add("a2", ModeKind::Optical);
  const auto spec = to_liouvillian(SLHTriple(Matrix::Identity(1, 1), l, h0),
                                   reg, DissipatorSet::empty(2));
  Matrix expected(2, 2);
  const double cross = std::sqrt(big1 * big2);
  expected << big1, cross, cross, big2;
  CHECK(num::max_abs(Matrix(spec.dissipators.gamma - expected)) < 1e-12);
}

TEST_CASE("reduction edge cases: no coupling, single decay channel") {
  QuadraticHamiltonian h(1);
  h.add_detuning(0, 0.4);
  ModeRegistry reg;
  reg.add("a", ModeKind::Optical);

  const auto pure_h = to_liouvillian(
      SLHTriple(Matrix::Identity(1, 1), Matrix::Zero(1, 1), h), reg,
      DissipatorSet::empty(1));
  CHECK(pure_h.dissipators.channels() == 0);

  Matrix l = Matrix::Zero(1, 1);
  l(0, 0) = std::sqrt(2.0);
  const auto decay =
      to_liouvillian(SLHTriple(Matrix::Identity(1, 1), l, QuadraticHamiltonian(1)),
                     reg, DissipatorSet::empty(1));
  const auto dd = build_drift_diffusion(decay);
  CHECK(num::max_abs(RealMatrix(dd.drift + 1.0 * RealMatrix::Identity(2, 2))) <
        1e-13);
}

TEST_CASE("SLH-composed network equals the direct master-equation build") {
  // Equality of drift and diffusion holds across the parameter space, not
  // just at the figure-2 point.
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    Model1Params p;
    p.g1 = 0.02 * u(rng);
    p.g2 = 0.08 * u(rng);
    p.kappa = u(rng);
    p.Gamma1 = 0.5 + u(rng);
    p.Gamma2 = 0.5 + u(rng);
    p.gamma = 0.002 + 0.02 * u(rng);
    p.nbar = 0.3 * u(rng);
    p.feedback = true;
    const auto direct = build_drift_diffusion(build_model1(p));
    const auto composed = build_drift_diffusion(slh_model1(p));
    CHECK(num::max_abs(RealMatrix(direct.drift - composed.drift)) < 1e-12);
    CHECK(num::max_abs(RealMatrix(direct.diffusion - composed.diffusion)) <
          1e-12);
  }
}
