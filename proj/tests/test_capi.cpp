// Exercises the shared-library surface: handles, error codes, sweep JSON.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "omcascade.h"

namespace {

omc_model1_params fig2_params(int feedback) {
  return omc_model1_params{0.01, 0.05, 0.1, 1.0, 1.0, 0.01, 0.0, feedback};
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(omc_version()) == "0.1.0");
  CHECK(std::string(omc_status_name(OMC_OK)) == "ok");
  CHECK(std::string(omc_status_name(OMC_ERR_UNSTABLE_DYNAMICS)) ==
        "unstable_dynamics");
}

TEST_CASE("model lifecycle: build, inspect, solve, measure") {
  omc_model1_params params = fig2_params(1);
  omc_spec* spec = nullptr;
  REQUIRE(omc_model1_build(&params, &spec) == OMC_OK);
  REQUIRE(spec != nullptr);
  CHECK(omc_spec_mode_count(spec) == 4);

  char label[16];
  REQUIRE(omc_spec_mode_label(spec, 2, label, sizeof(label)) == OMC_OK);
  CHECK(std::string(label) == "a2");

  int dim = 0;
  std::vector<double> drift(8 * 8), diffusion(8 * 8);
  REQUIRE(omc_spec_drift_diffusion(spec, drift.data(), diffusion.data(),
                                   &dim) == OMC_OK);
  CHECK(dim == 8);
  CHECK(drift[0] == doctest::Approx(-0.5));      // optical decay
  CHECK(diffusion[0] == doctest::Approx(0.5));   // vacuum noise

  omc_state* state = nullptr;
  REQUIRE(omc_steady_state(spec, &state) == OMC_OK);
  CHECK(omc_state_dim(state) == 8);

  std::vector<double> cov(8 * 8);
  REQUIRE(omc_state_covariance(state, cov.data()) == OMC_OK);
  CHECK(cov[0] == doctest::Approx(0.5).epsilon(0.05));

  double n = -1.0;
  REQUIRE(omc_log_negativity(state, "b1", "b2", &n) == OMC_OK);
  CHECK(n > 0.2);  // fig-2 operating point

  double re = 0.0, im = 0.0;
  REQUIRE(omc_mode_correlator(state, "b1", "b2", &re, &im) == OMC_OK);
  CHECK(std::hypot(re, im) > 0.1);

  omc_state_free(state);
  omc_spec_free(spec);
}

TEST_CASE("error paths surface codes and messages") {
  omc_model1_params bad = fig2_params(1);
  bad.gamma = -1.0;
  omc_spec* spec = nullptr;
  CHECK(omc_model1_build(&bad, &spec) == OMC_ERR_INVALID_PARAMETER);
  CHECK(std::strlen(omc_last_error_message()) > 0);

  CHECK(omc_model1_build(nullptr, &spec) == OMC_ERR_NULL_ARGUMENT);

  // Feedback-driven amplification beyond stability.
  omc_model2_params m2{0.05, 0.05, 1.0, 1.0, 0.01, 0.0, 1};
  omc_spec* spec2 = nullptr;
  REQUIRE(omc_model2_build(&m2, &spec2) == OMC_OK);
  omc_state* state = nullptr;
  CHECK(omc_steady_state(spec2, &state) == OMC_ERR_UNSTABLE_DYNAMICS);
  omc_spec_free(spec2);

  double n = 0.0;
  omc_state* null_state = nullptr;
  CHECK(omc_log_negativity(null_state, "a", "b", &n) == OMC_ERR_NULL_ARGUMENT);
}

TEST_CASE("chain build and mode naming") {
  omc_chain_params chain{3, fig2_params(1), 0.1};
  omc_spec* spec = nullptr;
  REQUIRE(omc_chain_build(&chain, &spec) == OMC_OK);
  CHECK(omc_spec_mode_count(spec) == 12);
  char label[16];
  REQUIRE(omc_spec_mode_label(spec, 11, label, sizeof(label)) == OMC_OK);
  CHECK(std::string(label) == "b2_3");
  omc_spec_free(spec);

  chain.n_ports = 99;
  CHECK(omc_chain_build(&chain, &spec) == OMC_ERR_INVALID_PARAMETER);
}

TEST_CASE("adiabatic closed forms through the C surface") {
  omc_adiabatic_params p{0.01, 0.05, 0.1, 1.0, 0.01};
  double re = 0.0, im = 0.0;
  REQUIRE(omc_adiabatic_b1b2(&p, 1, &re, &im) == OMC_OK);
  CHECK(std::hypot(re, im) > 0.1);
  REQUIRE(omc_adiabatic_b1b2(&p, 0, &re, &im) == OMC_OK);
  CHECK(std::hypot(re, im) < 0.1);

  omc_adiabatic_params m2{0.02, 0.05, 0.0, 1.0, 0.01};
  REQUIRE(omc_adiabatic_model2_a2b(&m2, 1, &re, &im) == OMC_OK);
  CHECK(std::hypot(re, im) > 1e-3);
  REQUIRE(omc_adiabatic_model2_a2b(&m2, 0, &re, &im) == OMC_OK);
  CHECK(re == 0.0);
  CHECK(im == 0.0);
}

TEST_CASE("sweep pipeline through the C surface") {
  const char* config = R"({
    "model": "model1",
    "params": {"kappa": 0.1},
    "feedback": "both",
    "sweep": [{"name": "kappa", "grid": [0.05, 0.2]}],
    "outputs": [{"type": "log_negativity", "modes": ["b1", "b2"]}]
  })";
  CHECK(omc_sweep_validate_json(config) == OMC_OK);
  CHECK(omc_sweep_validate_json("{\"model\": \"model9\"}") == OMC_ERR_CONFIG);

  omc_sweep_result* result = nullptr;
  REQUIRE(omc_sweep_run_json(config, &result) == OMC_OK);
  CHECK(omc_sweep_result_rows(result) == 4);

  const char* path = "capi_sweep.csv";
  REQUIRE(omc_sweep_write_csv(result, path, 1) == OMC_OK);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "kappa,observable,feedback,value,error");
  in.close();
  std::remove(path);
  std::remove("capi_sweep.csv.meta.json");
  omc_sweep_result_free(result);
}

TEST_CASE("preset configs round-trip through validation") {
  char* text = nullptr;
  REQUIRE(omc_preset_config_json("fig2a", &text) == OMC_OK);
  REQUIRE(text != nullptr);
  CHECK(omc_sweep_validate_json(text) == OMC_OK);
  omc_string_free(text);

  char* none = nullptr;
  CHECK(omc_preset_config_json("fig99", &none) == OMC_ERR_CONFIG);
}
