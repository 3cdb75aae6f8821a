#include "omcascade.h"

#include <cstring>
#include <string>

#include "omc/adiabatic.hpp"
#include "omc/entanglement.hpp"
#include "omc/models.hpp"
#include "omc/sweep.hpp"
#include "omc/version.hpp"

struct omc_spec {
  omc::LiouvillianSpec spec;
};

struct omc_state {
  omc::CovarianceState state;
  omc::ModeRegistry registry;
};

struct omc_sweep_result {
  omc::sweep::SweepResult result;
};

namespace {

thread_local std::string g_last_error;

omc_status status_of(const omc::Error& e) {
  switch (e.code()) {
    case omc::ErrorCode::InvalidParameter: return OMC_ERR_INVALID_PARAMETER;
    case omc::ErrorCode::InvalidComposition: return OMC_ERR_INVALID_COMPOSITION;
    case omc::ErrorCode::UnstableDynamics: return OMC_ERR_UNSTABLE_DYNAMICS;
    case omc::ErrorCode::NumericalFailure: return OMC_ERR_NUMERICAL_FAILURE;
    case omc::ErrorCode::SingularLimit: return OMC_ERR_SINGULAR_LIMIT;
    case omc::ErrorCode::ConfigError: return OMC_ERR_CONFIG;
    case omc::ErrorCode::IoError: return OMC_ERR_IO;
  }
  return OMC_ERR_UNKNOWN;
}

template <typename Fn>
omc_status guarded(Fn&& fn) {
  try {
    fn();
    return OMC_OK;
  } catch (const omc::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OMC_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return OMC_ERR_UNKNOWN;
  }
}

omc_status null_argument(const char* what) {
  g_last_error = std::string(what) + ": null argument";
  return OMC_ERR_NULL_ARGUMENT;
}

omc::Model1Params convert(const omc_model1_params& p) {
  omc::Model1Params out;
  out.g1 = p.g1;
  out.g2 = p.g2;
  out.kappa = p.kappa;
  out.Gamma1 = p.Gamma1;
  out.Gamma2 = p.Gamma2;
  out.gamma = p.gamma;
  out.nbar = p.nbar;
  out.feedback = p.feedback != 0;
  return out;
}

}  // namespace

extern "C" {

const char* omc_version(void) { return omc::kVersion; }

const char* omc_status_name(omc_status status) {
  switch (status) {
    case OMC_OK: return "ok";
    case OMC_ERR_NULL_ARGUMENT: return "null_argument";
    case OMC_ERR_INVALID_PARAMETER: return "invalid_parameter";
    case OMC_ERR_INVALID_COMPOSITION: return "invalid_composition";
    case OMC_ERR_UNSTABLE_DYNAMICS: return "unstable_dynamics";
    case OMC_ERR_NUMERICAL_FAILURE: return "numerical_failure";
    case OMC_ERR_SINGULAR_LIMIT: return "singular_limit";
    case OMC_ERR_CONFIG: return "config_error";
    case OMC_ERR_IO: return "io_error";
    case OMC_ERR_UNKNOWN: return "unknown";
  }
  return "unknown";
}

const char* omc_last_error_message(void) { return g_last_error.c_str(); }

omc_status omc_model1_build(const omc_model1_params* params, omc_spec** out) {
  if (!params || !out) return null_argument("omc_model1_build");
  return guarded([&] { *out = new omc_spec{omc::build_model1(convert(*params))}; });
}

omc_status omc_model2_build(const omc_model2_params* params, omc_spec** out) {
  if (!params || !out) return null_argument("omc_model2_build");
  return guarded([&] {
    omc::Model2Params p;
    p.g1 = params->g1;
    p.g2 = params->g2;
    p.Gamma1 = params->Gamma1;
    p.Gamma2 = params->Gamma2;
    p.gamma1 = params->gamma1;
    p.nbar = params->nbar;
    p.feedback = params->feedback != 0;
    *out = new omc_spec{omc::build_model2(p)};
  });
}

omc_status omc_chain_build(const omc_chain_params* params, omc_spec** out) {
  if (!params || !out) return null_argument("omc_chain_build");
  return guarded([&] {
    omc::ChainParams p;
    p.n_ports = params->n_ports;
    p.port = convert(params->port);
    p.chi = params->chi;
    *out = new omc_spec{omc::build_chain(p)};
  });
}

void omc_spec_free(omc_spec* spec) { delete spec; }

int omc_spec_mode_count(const omc_spec* spec) {
  return spec ? spec->spec.modes() : 0;
}

omc_status omc_spec_mode_label(const omc_spec* spec, int index, char* buf,
                               size_t buf_len) {
  if (!spec || !buf) return null_argument("omc_spec_mode_label");
  return guarded([&] {
    if (index < 0 || index >= spec->spec.modes())
      throw omc::InvalidParameter("omc_spec_mode_label: index out of range");
    const std::string& label = spec->spec.registry.label(index);
    if (label.size() + 1 > buf_len)
      throw omc::InvalidParameter("omc_spec_mode_label: buffer too small");
    std::memcpy(buf, label.c_str(), label.size() + 1);
  });
}

omc_status omc_spec_drift_diffusion(const omc_spec* spec, double* drift,
                                    double* diffusion, int* dim) {
  if (!spec || !dim) return null_argument("omc_spec_drift_diffusion");
  return guarded([&] {
    const omc::DriftDiffusion dd = omc::build_drift_diffusion(spec->spec);
    const int n = static_cast<int>(dd.drift.rows());
    *dim = n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (drift) drift[i * n + j] = dd.drift(i, j);
        if (diffusion) diffusion[i * n + j] = dd.diffusion(i, j);
      }
  });
}

omc_status omc_steady_state(const omc_spec* spec, omc_state** out) {
  if (!spec || !out) return null_argument("omc_steady_state");
  return guarded([&] {
    *out = new omc_state{omc::steady_state(spec->spec), spec->spec.registry};
  });
}

void omc_state_free(omc_state* state) { delete state; }

int omc_state_dim(const omc_state* state) {
  return state ? static_cast<int>(state->state.covariance.rows()) : 0;
}

omc_status omc_state_covariance(const omc_state* state, double* out) {
  if (!state || !out) return null_argument("omc_state_covariance");
  return guarded([&] {
    const auto& v = state->state.covariance;
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      for (Eigen::Index j = 0; j < v.cols(); ++j)
        out[i * v.cols() + j] = v(i, j);
  });
}

omc_status omc_log_negativity(const omc_state* state, const char* mode_i,
                              const char* mode_j, double* out) {
  if (!state || !mode_i || !mode_j || !out)
    return null_argument("omc_log_negativity");
  return guarded([&] {
    *out = omc::log_negativity(
        omc::extract_two_mode(state->state, state->registry, mode_i, mode_j));
  });
}

omc_status omc_mode_correlator(const omc_state* state, const char* mode_i,
                               const char* mode_j, double* out_re,
                               double* out_im) {
  if (!state || !mode_i || !mode_j || !out_re || !out_im)
    return null_argument("omc_mode_correlator");
  return guarded([&] {
    const omc::Complex c =
        omc::mode_correlator(state->state, state->registry, mode_i, mode_j);
    *out_re = c.real();
    *out_im = c.imag();
  });
}

omc_status omc_adiabatic_b1b2(const omc_adiabatic_params* params,
                              int with_feedback, double* out_re,
                              double* out_im) {
  if (!params || !out_re || !out_im) return null_argument("omc_adiabatic_b1b2");
  return guarded([&] {
    omc::AdiabaticParams p;
    p.g1 = params->g1;
    p.g2 = params->g2;
    p.kappa = params->kappa;
    p.Gamma = params->Gamma;
    p.gamma = params->gamma;
    const omc::Complex c =
        with_feedback ? omc::b1b2_with_feedback(p) : omc::b1b2_no_feedback(p);
    *out_re = c.real();
    *out_im = c.imag();
  });
}

omc_status omc_adiabatic_model2_a2b(const omc_adiabatic_params* params,
                                    int with_feedback, double* out_re,
                                    double* out_im) {
  if (!params || !out_re || !out_im)
    return null_argument("omc_adiabatic_model2_a2b");
  return guarded([&] {
    omc::AdiabaticParams p;
    p.g1 = params->g1;
    p.g2 = params->g2;
    p.kappa = params->kappa;
    p.Gamma = params->Gamma;
    p.gamma = params->gamma;
    const omc::Complex c = with_feedback ? omc::model2_a2b_with_feedback(p)
                                         : omc::model2_a2b_no_feedback();
    *out_re = c.real();
    *out_im = c.imag();
  });
}

omc_status omc_sweep_validate_json(const char* config_json) {
  if (!config_json) return null_argument("omc_sweep_validate_json");
  return guarded([&] { omc::sweep::parse_config_text(config_json); });
}

omc_status omc_sweep_run_json(const char* config_json, omc_sweep_result** out) {
  if (!config_json || !out) return null_argument("omc_sweep_run_json");
  return guarded([&] {
    const omc::sweep::RunConfig config =
        omc::sweep::parse_config_text(config_json);
    *out = new omc_sweep_result{omc::sweep::run(config)};
  });
}

void omc_sweep_result_free(omc_sweep_result* result) { delete result; }

size_t omc_sweep_result_rows(const omc_sweep_result* result) {
  return result ? result->result.rows.size() : 0;
}

omc_status omc_sweep_write_csv(const omc_sweep_result* result,
                               const char* path, int reproducible) {
  if (!result || !path) return null_argument("omc_sweep_write_csv");
  return guarded(
      [&] { omc::sweep::write_csv(result->result, path, reproducible != 0); });
}

omc_status omc_preset_config_json(const char* name, char** out_json) {
  if (!name || !out_json) return null_argument("omc_preset_config_json");
  return guarded([&] {
    const omc::sweep::RunConfig config = omc::sweep::preset(name);
    const std::string text = omc::sweep::config_to_json(config).dump(2);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out_json = buf;
  });
}

void omc_string_free(char* str) { delete[] str; }

}  // extern "C"
