#include "omc/models.hpp"

#include <cmath>
#include <string>

namespace omc {

namespace {

void check_rate(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value))
    throw InvalidParameter(std::string("model parameters: ") + name +
                           " must be a finite non-negative rate");
}

void check_model1(const Model1Params& p) {
  check_rate(p.g1, "g1");
  check_rate(p.g2, "g2");
  check_rate(p.kappa, "kappa");
  check_rate(p.Gamma1, "Gamma1");
  check_rate(p.Gamma2, "Gamma2");
  check_rate(p.gamma, "gamma");
  check_rate(p.nbar, "nbar");
}

}  // namespace

LiouvillianSpec build_model1(const Model1Params& p) {
  check_model1(p);

  ModeRegistry reg;
  const int a1 = reg.add("a1", ModeKind::Optical);
  const int b1 = reg.add("b1", ModeKind::Mechanical);
  const int a2 = reg.add("a2", ModeKind::Optical);
  const int b2 = reg.add("b2", ModeKind::Mechanical);

  QuadraticHamiltonian h(reg.count());
  h.add_two_mode_squeeze(a1, b1, p.g1);
  h.add_beamsplitter(a2, b2, p.g2);
  h.add_beamsplitter(a1, a2, p.kappa);

  DissipatorSet dis = DissipatorSet::empty(reg.count());
  dis.add_bath(a1, p.Gamma1);
  dis.add_bath(b1, p.gamma, p.nbar);
  dis.add_bath(a2, p.Gamma2);
  dis.add_bath(b2, p.gamma, p.nbar);

  LiouvillianSpec spec(reg, std::move(h), std::move(dis));
  if (p.feedback) return add_cascade(spec, "a1", "a2", p.Gamma1, p.Gamma2);
  return spec;
}

LiouvillianSpec build_model2(const Model2Params& p) {
  check_rate(p.g1, "g1");
  check_rate(p.g2, "g2");
  check_rate(p.Gamma1, "Gamma1");
  check_rate(p.Gamma2, "Gamma2");
  check_rate(p.gamma1, "gamma1");
  check_rate(p.nbar, "nbar");

  ModeRegistry reg;
  const int a1 = reg.add("a1", ModeKind::Optical);
  const int b = reg.add("b", ModeKind::Mechanical);
  const int a2 = reg.add("a2", ModeKind::Optical);

  QuadraticHamiltonian h(reg.count());
  h.add_two_mode_squeeze(a1, b, p.g1);
  h.add_beamsplitter(a2, b, p.g2);

  DissipatorSet dis = DissipatorSet::empty(reg.count());
  dis.add_bath(a1, p.Gamma1);
  dis.add_bath(b, p.gamma1, p.nbar);
  dis.add_bath(a2, p.Gamma2);

  LiouvillianSpec spec(reg, std::move(h), std::move(dis));
  if (p.feedback) return add_cascade(spec, "a1", "a2", p.Gamma1, p.Gamma2);
  return spec;
}

std::string chain_label(const std::string& base, int port) {
  return base + "_" + std::to_string(port);
}

LiouvillianSpec build_chain(const ChainParams& p) {
  if (p.n_ports < 1)
    throw InvalidParameter("build_chain: n_ports must be >= 1");
  if (p.n_ports > ChainParams::kMaxPorts)
    throw InvalidParameter("build_chain: n_ports exceeds the dimension guard (" +
                           std::to_string(ChainParams::kMaxPorts) + ")");
  check_model1(p.port);
  check_rate(p.chi, "chi");

  ModeRegistry reg;
  for (int i = 1; i <= p.n_ports; ++i) {
    reg.add(chain_label("a1", i), ModeKind::Optical);
    reg.add(chain_label("b1", i), ModeKind::Mechanical);
    reg.add(chain_label("a2", i), ModeKind::Optical);
    reg.add(chain_label("b2", i), ModeKind::Mechanical);
  }

  QuadraticHamiltonian h(reg.count());
  DissipatorSet dis = DissipatorSet::empty(reg.count());
  for (int i = 1; i <= p.n_ports; ++i) {
    const int a1 = reg.index_of(chain_label("a1", i));
    const int b1 = reg.index_of(chain_label("b1", i));
    const int a2 = reg.index_of(chain_label("a2", i));
    const int b2 = reg.index_of(chain_label("b2", i));
    h.add_two_mode_squeeze(a1, b1, p.port.g1);
    h.add_beamsplitter(a2, b2, p.port.g2);
    h.add_beamsplitter(a1, a2, p.port.kappa);
    dis.add_bath(a1, p.port.Gamma1);
    dis.add_bath(b1, p.port.gamma, p.port.nbar);
    dis.add_bath(a2, p.port.Gamma2);
    dis.add_bath(b2, p.port.gamma, p.port.nbar);
  }
  // Open boundary: chi couples a2 of port i to a1 of port i+1.
  for (int i = 1; i < p.n_ports; ++i) {
    h.add_beamsplitter(reg.index_of(chain_label("a2", i)),
                       reg.index_of(chain_label("a1", i + 1)), p.chi);
  }

  LiouvillianSpec spec(reg, std::move(h), std::move(dis));
  if (p.port.feedback) {
    for (int i = 1; i <= p.n_ports; ++i)
      spec = add_cascade(spec, chain_label("a1", i), chain_label("a2", i),
                         p.port.Gamma1, p.port.Gamma2);
  }
  return spec;
}

}  // namespace omc
