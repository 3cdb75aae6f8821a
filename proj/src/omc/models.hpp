#pragma once

#include "omc/liouvillian.hpp"

namespace omc {

/// Two optomechanical cavities coupled reversibly (kappa) via their optical
/// modes, cavity 1 driven on the blue sideband (two-mode squeezing g1) and
/// cavity 2 on the red sideband (beamsplitter g2). With feedback on, the
/// optical output of cavity 1 irreversibly drives cavity 2. All rates in
/// units of the reference cavity linewidth.
struct Model1Params {
  double g1 = 0.01;
  double g2 = 0.05;
  double kappa = 0.1;
  double Gamma1 = 1.0;
  double Gamma2 = 1.0;
  double gamma = 1e-2;
  double nbar = 0.0;
  bool feedback = true;
};

/// Two optical modes coupled through a common mechanical mode: blue-sideband
/// two-mode squeezing g1 on (a1, b) and beamsplitter g2 on (a2, b), with an
/// optional cascaded link a1 -> a2.
struct Model2Params {
  double g1 = 0.01;
  double g2 = 0.05;
  double Gamma1 = 1.0;
  double Gamma2 = 1.0;
  double gamma1 = 1e-2;
  double nbar = 0.0;
  bool feedback = true;
};

/// Open chain of N ports, each port a Model 1 unit; consecutive ports are
/// coupled by the beamsplitter term chi (a2 of port i with a1 of port i+1).
struct ChainParams {
  int n_ports = 1;
  Model1Params port;
  double chi = 0.1;

  static constexpr int kMaxPorts = 16;
};

/// Mode order (a1, b1, a2, b2).
LiouvillianSpec build_model1(const Model1Params& p);

/// Mode order (a1, b, a2).
LiouvillianSpec build_model2(const Model2Params& p);

/// Mode order (a1_1, b1_1, a2_1, b2_1, a1_2, ...), ports numbered from 1.
LiouvillianSpec build_chain(const ChainParams& p);

/// Label helpers for chain modes, e.g. chain_label("b1", 3) == "b1_3".
std::string chain_label(const std::string& base, int port);

}  // namespace omc
