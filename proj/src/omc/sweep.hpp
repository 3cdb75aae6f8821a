#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "omc/models.hpp"

namespace omc::sweep {

enum class FeedbackSelect { Both, On, Off };

enum class ObservableKind {
  LogNegativity,      // N(i,j) of the steady state
  CorrelatorAbs,      // |<a_i a_j>| of the steady state
  AdiabaticB1B2Abs,   // |<b1 b2>| from the closed adiabatic forms (model1)
};

struct Observable {
  ObservableKind kind;
  std::string mode_i;
  std::string mode_j;

  std::string column_name() const;
};

/// One sweep axis: either a grid of values for a named parameter, or a
/// parameter locked to the current value of another axis ("follow").
struct SweepAxis {
  std::string name;
  std::vector<double> grid;  // empty when following
  std::string follow;        // empty when gridded
  bool is_follow() const { return !follow.empty(); }
};

struct RunConfig {
  std::string model;  // "model1" | "model2" | "chain"
  std::map<std::string, double> params;
  int n_ports = 1;  // chain only
  FeedbackSelect feedback = FeedbackSelect::Both;
  std::vector<SweepAxis> sweep;
  std::vector<Observable> outputs;
};

/// One record of the result table: swept parameter values in axis order,
/// observable column name, feedback flag, and either a value or an error
/// marker (never NaN).
struct SweepRow {
  std::vector<double> point;
  std::string observable;
  bool feedback = false;
  std::optional<double> value;
  std::string error;  // "", "unstable", "numerical_failure", "singular_limit"
};

struct SweepResult {
  std::vector<std::string> axis_names;  // gridded axes, config order
  std::vector<SweepRow> rows;
  nlohmann::json metadata;
};

/// Parses and validates a config document; ConfigError carries the offending
/// field path.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
nlohmann::json config_to_json(const RunConfig& config);

/// Figure-reproduction presets: fig2a, fig2b, fig3, fig4, fig6, fig8.
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// Executes the sweep. Grid points fan out across workers (OM_NET_WORKERS or
/// the logical core count when workers == 0); results are assembled in grid
/// order so the table is identical for any worker count. Unstable or
/// otherwise failing points are recorded in the error column, not dropped.
SweepResult run(const RunConfig& config, int workers = 0);

/// Writes the table as CSV (12 significant digits, header row, rows in grid
/// order) plus a sidecar metadata document at path + ".meta.json". The
/// sidecar records the conventions and, unless reproducible is set, a
/// generation timestamp.
void write_csv(const SweepResult& result, const std::string& path,
               bool reproducible = false);

/// Number of workers the engine would use for the given request.
int resolve_workers(int requested);

}  // namespace omc::sweep
