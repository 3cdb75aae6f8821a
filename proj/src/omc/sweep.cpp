#include "omc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <thread>

#include "omc/adiabatic.hpp"
#include "omc/entanglement.hpp"
#include "omc/version.hpp"

namespace omc::sweep {

namespace {

using nlohmann::json;

const std::vector<std::string> kModel1Keys = {
    "g1", "g2", "kappa", "Gamma1", "Gamma2", "gamma", "nbar"};
const std::vector<std::string> kModel2Keys = {"g1",     "g2",    "Gamma1",
                                              "Gamma2", "gamma1", "nbar"};
const std::vector<std::string> kChainKeys = {
    "g1", "g2", "kappa", "Gamma1", "Gamma2", "gamma", "nbar", "chi"};

std::map<std::string, double> default_params(const std::string& model) {
  std::map<std::string, double> m;
  if (model == "model1" || model == "chain") {
    Model1Params d;
    m = {{"g1", d.g1},         {"g2", d.g2},       {"kappa", d.kappa},
         {"Gamma1", d.Gamma1}, {"Gamma2", d.Gamma2}, {"gamma", d.gamma},
         {"nbar", d.nbar}};
    if (model == "chain") m["chi"] = ChainParams().chi;
  } else if (model == "model2") {
    Model2Params d;
    m = {{"g1", d.g1},         {"g2", d.g2},   {"Gamma1", d.Gamma1},
         {"Gamma2", d.Gamma2}, {"gamma1", d.gamma1}, {"nbar", d.nbar}};
  }
  return m;
}

const std::vector<std::string>& param_keys(const std::string& model) {
  if (model == "model1") return kModel1Keys;
  if (model == "model2") return kModel2Keys;
  return kChainKeys;
}

Model1Params model1_from(const std::map<std::string, double>& m,
                         bool feedback) {
  Model1Params p;
  p.g1 = m.at("g1");
  p.g2 = m.at("g2");
  p.kappa = m.at("kappa");
  p.Gamma1 = m.at("Gamma1");
  p.Gamma2 = m.at("Gamma2");
  p.gamma = m.at("gamma");
  p.nbar = m.at("nbar");
  p.feedback = feedback;
  return p;
}

Model2Params model2_from(const std::map<std::string, double>& m,
                         bool feedback) {
  Model2Params p;
  p.g1 = m.at("g1");
  p.g2 = m.at("g2");
  p.Gamma1 = m.at("Gamma1");
  p.Gamma2 = m.at("Gamma2");
  p.gamma1 = m.at("gamma1");
  p.nbar = m.at("nbar");
  p.feedback = feedback;
  return p;
}

LiouvillianSpec build_spec(const RunConfig& config,
                           const std::map<std::string, double>& params,
                           bool feedback) {
  if (config.model == "model1") return build_model1(model1_from(params, feedback));
  if (config.model == "model2") return build_model2(model2_from(params, feedback));
  ChainParams p;
  p.n_ports = config.n_ports;
  p.port = model1_from(params, feedback);
  p.chi = params.at("chi");
  return build_chain(p);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string iso_timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1);
  return v;
}

ObservableKind kind_from_string(const std::string& s, const std::string& path) {
  if (s == "log_negativity") return ObservableKind::LogNegativity;
  if (s == "correlator_abs") return ObservableKind::CorrelatorAbs;
  if (s == "adiabatic_b1b2_abs") return ObservableKind::AdiabaticB1B2Abs;
  throw ConfigError(path, "unknown observable type '" + s + "'");
}

std::string kind_to_string(ObservableKind k) {
  switch (k) {
    case ObservableKind::LogNegativity: return "log_negativity";
    case ObservableKind::CorrelatorAbs: return "correlator_abs";
    case ObservableKind::AdiabaticB1B2Abs: return "adiabatic_b1b2_abs";
  }
  return "?";
}

std::string error_marker(const Error& e) {
  switch (e.code()) {
    case ErrorCode::UnstableDynamics: return "unstable";
    case ErrorCode::SingularLimit: return "singular_limit";
    case ErrorCode::InvalidParameter: return "invalid_parameter";
    default: return "numerical_failure";
  }
}

}  // namespace

std::string Observable::column_name() const {
  // Semicolon separator keeps the CSV free of quoted fields.
  switch (kind) {
    case ObservableKind::LogNegativity:
      return "logneg(" + mode_i + ";" + mode_j + ")";
    case ObservableKind::CorrelatorAbs:
      return "abscorr(" + mode_i + ";" + mode_j + ")";
    case ObservableKind::AdiabaticB1B2Abs:
      return "adiabatic_abscorr(" + mode_i + ";" + mode_j + ")";
  }
  return "?";
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("$", "config must be a JSON object");

  RunConfig config;
  if (!doc.contains("model") || !doc["model"].is_string())
    throw ConfigError("model", "required string field");
  config.model = doc["model"].get<std::string>();
  if (config.model != "model1" && config.model != "model2" &&
      config.model != "chain")
    throw ConfigError("model", "expected one of model1|model2|chain");

  config.params = default_params(config.model);
  const auto& keys = param_keys(config.model);
  if (doc.contains("params")) {
    if (!doc["params"].is_object())
      throw ConfigError("params", "must be an object");
    for (const auto& [key, value] : doc["params"].items()) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end())
        throw ConfigError("params." + key,
                          "unknown parameter for " + config.model);
      if (!value.is_number())
        throw ConfigError("params." + key, "must be a number");
      const double v = value.get<double>();
      if (!std::isfinite(v))
        throw ConfigError("params." + key, "must be finite");
      config.params[key] = v;
    }
  }

  if (doc.contains("n_ports")) {
    if (config.model != "chain")
      throw ConfigError("n_ports", "only valid for the chain model");
    if (!doc["n_ports"].is_number_integer() || doc["n_ports"].get<int>() < 1)
      throw ConfigError("n_ports", "must be a positive integer");
    config.n_ports = doc["n_ports"].get<int>();
  }

  if (doc.contains("feedback")) {
    const std::string f = doc["feedback"].is_string()
                              ? doc["feedback"].get<std::string>()
                              : std::string();
    if (f == "both") config.feedback = FeedbackSelect::Both;
    else if (f == "on") config.feedback = FeedbackSelect::On;
    else if (f == "off") config.feedback = FeedbackSelect::Off;
    else throw ConfigError("feedback", "expected both|on|off");
  }

  std::set<std::string> axis_names;
  if (doc.contains("sweep")) {
    if (!doc["sweep"].is_array()) throw ConfigError("sweep", "must be an array");
    int idx = 0;
    for (const auto& entry : doc["sweep"]) {
      const std::string path = "sweep[" + std::to_string(idx++) + "]";
      if (!entry.is_object() || !entry.contains("name") ||
          !entry["name"].is_string())
        throw ConfigError(path + ".name", "required string field");
      SweepAxis axis;
      axis.name = entry["name"].get<std::string>();
      if (std::find(keys.begin(), keys.end(), axis.name) == keys.end())
        throw ConfigError(path + ".name", "swept parameter '" + axis.name +
                                              "' does not exist in the " +
                                              config.model + " parameter block");
      if (!axis_names.insert(axis.name).second)
        throw ConfigError(path + ".name", "duplicate sweep axis");
      const bool has_grid = entry.contains("grid");
      const bool has_follow = entry.contains("follow");
      if (has_grid == has_follow)
        throw ConfigError(path, "exactly one of grid|follow is required");
      if (has_grid) {
        if (!entry["grid"].is_array() || entry["grid"].empty())
          throw ConfigError(path + ".grid", "must be a non-empty array");
        for (const auto& g : entry["grid"]) {
          if (!g.is_number() || !std::isfinite(g.get<double>()))
            throw ConfigError(path + ".grid", "grid values must be finite numbers");
          axis.grid.push_back(g.get<double>());
        }
      } else {
        if (!entry["follow"].is_string())
          throw ConfigError(path + ".follow", "must be a string");
        axis.follow = entry["follow"].get<std::string>();
      }
      config.sweep.push_back(std::move(axis));
    }
    idx = 0;
    for (const auto& axis : config.sweep) {
      const std::string path = "sweep[" + std::to_string(idx++) + "].follow";
      if (!axis.is_follow()) continue;
      bool ok = false;
      for (const auto& other : config.sweep)
        if (!other.is_follow() && other.name == axis.follow) ok = true;
      if (!ok)
        throw ConfigError(path, "'" + axis.follow +
                                    "' is not a gridded sweep axis");
    }
  }

  if (!doc.contains("outputs") || !doc["outputs"].is_array() ||
      doc["outputs"].empty())
    throw ConfigError("outputs", "required non-empty array");
  {
    // Mode labels of the base spec; fails early on unknown modes.
    const LiouvillianSpec base = build_spec(config, config.params, false);
    int idx = 0;
    for (const auto& entry : doc["outputs"]) {
      const std::string path = "outputs[" + std::to_string(idx++) + "]";
      if (!entry.is_object() || !entry.contains("type") ||
          !entry["type"].is_string())
        throw ConfigError(path + ".type", "required string field");
      Observable obs;
      obs.kind = kind_from_string(entry["type"].get<std::string>(),
                                  path + ".type");
      if (!entry.contains("modes") || !entry["modes"].is_array() ||
          entry["modes"].size() != 2)
        throw ConfigError(path + ".modes", "expected a pair of mode labels");
      obs.mode_i = entry["modes"][0].get<std::string>();
      obs.mode_j = entry["modes"][1].get<std::string>();
      if (obs.kind == ObservableKind::AdiabaticB1B2Abs) {
        if (config.model != "model1")
          throw ConfigError(path + ".type",
                            "adiabatic_b1b2_abs is only defined for model1");
        if (obs.mode_i != "b1" || obs.mode_j != "b2")
          throw ConfigError(path + ".modes",
                            "adiabatic_b1b2_abs is the (b1,b2) correlator");
      } else {
        if (!base.registry.contains(obs.mode_i))
          throw ConfigError(path + ".modes", "unknown mode '" + obs.mode_i + "'");
        if (!base.registry.contains(obs.mode_j))
          throw ConfigError(path + ".modes", "unknown mode '" + obs.mode_j + "'");
      }
      config.outputs.push_back(std::move(obs));
    }
  }
  return config;
}

RunConfig parse_config_text(const std::string& text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw ConfigError("$", "invalid JSON document");
  return parse_config(doc);
}

nlohmann::json config_to_json(const RunConfig& config) {
  json doc;
  doc["model"] = config.model;
  doc["params"] = config.params;
  if (config.model == "chain") doc["n_ports"] = config.n_ports;
  doc["feedback"] = config.feedback == FeedbackSelect::Both
                        ? "both"
                        : (config.feedback == FeedbackSelect::On ? "on" : "off");
  doc["sweep"] = json::array();
  for (const auto& axis : config.sweep) {
    json entry;
    entry["name"] = axis.name;
    if (axis.is_follow()) entry["follow"] = axis.follow;
    else entry["grid"] = axis.grid;
    doc["sweep"].push_back(entry);
  }
  doc["outputs"] = json::array();
  for (const auto& obs : config.outputs) {
    json entry;
    entry["type"] = kind_to_string(obs.kind);
    entry["modes"] = {obs.mode_i, obs.mode_j};
    doc["outputs"].push_back(entry);
  }
  return doc;
}

std::vector<std::string> preset_names() {
  return {"fig2a", "fig2b", "fig3", "fig4", "fig6", "fig8"};
}

RunConfig preset(const std::string& name) {
  json doc;
  doc["feedback"] = "both";
  if (name == "fig2a") {
    doc["model"] = "model1";
    doc["params"] = {{"g1", 0.01}, {"g2", 0.05}, {"gamma", 0.01}, {"nbar", 0.0}};
    doc["sweep"] = {{{"name", "kappa"}, {"grid", linspace(0.01, 1.0, 50)}}};
    doc["outputs"] = {{{"type", "log_negativity"}, {"modes", {"b1", "b2"}}}};
  } else if (name == "fig2b") {
    doc["model"] = "model1";
    doc["params"] = {{"g1", 0.01}, {"g2", 0.05}, {"gamma", 0.01}, {"kappa", 0.1}};
    doc["sweep"] = {{{"name", "nbar"}, {"grid", linspace(0.0, 0.3, 61)}}};
    doc["outputs"] = {{{"type", "log_negativity"}, {"modes", {"b1", "b2"}}}};
  } else if (name == "fig3") {
    doc["model"] = "model1";
    doc["params"] = {{"gamma", 0.01}, {"kappa", 0.1}, {"nbar", 0.0}};
    doc["sweep"] = {{{"name", "g1"}, {"grid", linspace(0.0, 0.06, 21)}},
                    {{"name", "g2"}, {"grid", linspace(0.0, 0.06, 21)}}};
    doc["outputs"] = {{{"type", "log_negativity"}, {"modes", {"b1", "b2"}}}};
  } else if (name == "fig4") {
    doc["model"] = "model1";
    doc["params"] = {{"g1", 0.01}, {"g2", 0.05}, {"gamma", 0.01}, {"nbar", 0.0}};
    doc["sweep"] = {{{"name", "kappa"}, {"grid", linspace(0.01, 1.0, 50)}}};
    doc["outputs"] = {{{"type", "correlator_abs"}, {"modes", {"b1", "b2"}}},
                      {{"type", "adiabatic_b1b2_abs"}, {"modes", {"b1", "b2"}}}};
  } else if (name == "fig6") {
    doc["model"] = "model2";
    doc["params"] = {{"g2", 0.05}, {"gamma1", 0.01}, {"nbar", 0.0}};
    doc["sweep"] = {{{"name", "g1"}, {"grid", linspace(0.001, 0.05, 50)}}};
    doc["outputs"] = {{{"type", "log_negativity"}, {"modes", {"a1", "b"}}},
                      {{"type", "log_negativity"}, {"modes", {"a2", "b"}}}};
  } else if (name == "fig8") {
    doc["model"] = "chain";
    doc["n_ports"] = 10;
    doc["params"] = {{"g1", 0.01}, {"g2", 0.05}, {"gamma", 0.01}, {"nbar", 0.0}};
    doc["sweep"] = {{{"name", "kappa"}, {"grid", {0.05, 0.1, 0.5}}},
                    {{"name", "chi"}, {"follow", "kappa"}}};
    json outputs = json::array();
    for (int j = 1; j <= 10; ++j)
      outputs.push_back({{"type", "log_negativity"},
                         {"modes", {"b1_1", chain_label("b2", j)}}});
    doc["outputs"] = outputs;
  } else {
    throw ConfigError("preset", "unknown preset '" + name + "'");
  }
  return parse_config(doc);
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("OM_NET_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw InvalidParameter(
          "OM_NET_WORKERS must be a positive integer, got '" +
          std::string(env) + "'");
    return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SweepResult run(const RunConfig& config, int workers) {
  // Gridded axes in config order; the last axis varies fastest.
  std::vector<const SweepAxis*> grid_axes;
  for (const auto& axis : config.sweep)
    if (!axis.is_follow()) grid_axes.push_back(&axis);

  size_t n_points = 1;
  for (const auto* axis : grid_axes) n_points *= axis->grid.size();

  std::vector<bool> variants;
  switch (config.feedback) {
    case FeedbackSelect::Both: variants = {true, false}; break;
    case FeedbackSelect::On: variants = {true}; break;
    case FeedbackSelect::Off: variants = {false}; break;
  }

  const size_t n_items = n_points * variants.size();
  struct Item {
    std::vector<double> point;
    std::vector<SweepRow> rows;
  };
  std::vector<Item> items(n_items);

  const auto point_values = [&](size_t point_idx) {
    std::vector<double> values(grid_axes.size());
    size_t rest = point_idx;
    for (size_t a = grid_axes.size(); a-- > 0;) {
      const auto& grid = grid_axes[a]->grid;
      values[a] = grid[rest % grid.size()];
      rest /= grid.size();
    }
    return values;
  };

  const auto compute = [&](size_t item_idx) {
    const size_t point_idx = item_idx / variants.size();
    const bool feedback = variants[item_idx % variants.size()];
    const std::vector<double> values = point_values(point_idx);

    std::map<std::string, double> params = config.params;
    for (size_t a = 0; a < grid_axes.size(); ++a)
      params[grid_axes[a]->name] = values[a];
    for (const auto& axis : config.sweep)
      if (axis.is_follow()) params[axis.name] = params.at(axis.follow);

    Item item;
    item.point = values;

    const bool needs_state = std::any_of(
        config.outputs.begin(), config.outputs.end(), [](const Observable& o) {
          return o.kind != ObservableKind::AdiabaticB1B2Abs;
        });
    std::optional<CovarianceState> state;
    std::optional<ModeRegistry> registry;
    std::string state_error;
    if (needs_state) {
      try {
        LiouvillianSpec spec = build_spec(config, params, feedback);
        registry = spec.registry;
        state = steady_state(spec);
      } catch (const Error& e) {
        state_error = error_marker(e);
      }
    }

    for (const auto& obs : config.outputs) {
      SweepRow row;
      row.point = values;
      row.observable = obs.column_name();
      row.feedback = feedback;
      if (obs.kind == ObservableKind::AdiabaticB1B2Abs) {
        try {
          AdiabaticParams ap;
          ap.g1 = params.at("g1");
          ap.g2 = params.at("g2");
          ap.kappa = params.at("kappa");
          ap.Gamma = params.at("Gamma1");
          ap.gamma = params.at("gamma");
          row.value = std::abs(feedback ? b1b2_with_feedback(ap)
                                        : b1b2_no_feedback(ap));
        } catch (const Error& e) {
          row.error = error_marker(e);
        }
      } else if (!state_error.empty()) {
        row.error = state_error;
      } else {
        try {
          if (obs.kind == ObservableKind::LogNegativity)
            row.value = log_negativity(
                extract_two_mode(*state, *registry, obs.mode_i, obs.mode_j));
          else
            row.value = std::abs(
                mode_correlator(*state, *registry, obs.mode_i, obs.mode_j));
        } catch (const Error& e) {
          row.error = error_marker(e);
        }
      }
      if (row.value && !std::isfinite(*row.value)) {
        row.value.reset();
        row.error = "numerical_failure";
      }
      item.rows.push_back(std::move(row));
    }
    return item;
  };

  const int n_workers =
      static_cast<int>(std::min<size_t>(resolve_workers(workers),
                                        std::max<size_t>(n_items, 1)));
  if (n_workers <= 1) {
    for (size_t i = 0; i < n_items; ++i) items[i] = compute(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::future<void>> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w)
      pool.push_back(std::async(std::launch::async, [&] {
        for (;;) {
          const size_t i = next.fetch_add(1);
          if (i >= n_items) return;
          items[i] = compute(i);
        }
      }));
    for (auto& f : pool) f.get();
  }

  SweepResult result;
  for (const auto* axis : grid_axes) result.axis_names.push_back(axis->name);
  for (auto& item : items)
    for (auto& row : item.rows) result.rows.push_back(std::move(row));

  // Regime note for the closed adiabatic forms, recomputed deterministically.
  bool regime_warning = false;
  const bool has_adiabatic = std::any_of(
      config.outputs.begin(), config.outputs.end(), [](const Observable& o) {
        return o.kind == ObservableKind::AdiabaticB1B2Abs;
      });
  if (has_adiabatic) {
    for (size_t p = 0; p < n_points && !regime_warning; ++p) {
      std::map<std::string, double> params = config.params;
      const std::vector<double> values = point_values(p);
      for (size_t a = 0; a < grid_axes.size(); ++a)
        params[grid_axes[a]->name] = values[a];
      AdiabaticParams ap;
      ap.g1 = params.at("g1");
      ap.g2 = params.at("g2");
      ap.kappa = params.at("kappa");
      ap.Gamma = params.at("Gamma1");
      ap.gamma = params.at("gamma");
      if (!adiabatic_regime_ok(ap)) regime_warning = true;
    }
    if (regime_warning)
      std::cerr << "warning: adiabatic closed forms evaluated outside their "
                   "validity regime (Gamma < 10x max coupling)\n";
  }

  json meta;
  meta["version"] = kVersion;
  meta["model"] = config.model;
  meta["feedback"] = config.feedback == FeedbackSelect::Both
                         ? "both"
                         : (config.feedback == FeedbackSelect::On ? "on" : "off");
  meta["axes"] = result.axis_names;
  meta["conventions"] = {
      {"vacuum_variance", 0.5},
      {"negativity_log", "natural"},
      {"quadratures", "(q,p) per mode in registry order"},
      {"symplectic_form", "blkdiag([[0,1],[-1,0]])"},
  };
  {
    const LiouvillianSpec base = build_spec(config, config.params, false);
    meta["mode_ordering"] = base.registry.labels();
  }
  if (regime_warning) meta["adiabatic_regime_warning"] = true;
  meta["config"] = config_to_json(config);
  result.metadata = std::move(meta);
  return result;
}

void write_csv(const SweepResult& result, const std::string& path,
               bool reproducible) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("write_csv: cannot open '" + path + "'");

  for (const auto& name : result.axis_names) out << name << ",";
  out << "observable,feedback,value,error\n";
  for (const auto& row : result.rows) {
    for (const double v : row.point) out << format_double(v) << ",";
    out << row.observable << "," << (row.feedback ? "on" : "off") << ",";
    if (row.value) out << format_double(*row.value);
    out << "," << row.error << "\n";
  }
  out.flush();
  if (!out) throw IoError("write_csv: write failed for '" + path + "'");

  json meta = result.metadata;
  if (!reproducible) meta["generated_at"] = iso_timestamp();
  std::ofstream mout(path + ".meta.json", std::ios::binary);
  if (!mout) throw IoError("write_csv: cannot open '" + path + ".meta.json'");
  mout << meta.dump(2) << "\n";
  mout.flush();
  if (!mout)
    throw IoError("write_csv: write failed for '" + path + ".meta.json'");
}

}  // namespace omc::sweep
