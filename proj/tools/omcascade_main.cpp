// Command-line front end for the omcascade shared library. Talks to the
// simulator exclusively through the C API in omcascade.h.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "omcascade.h"

namespace {

void print_usage(std::ostream& out) {
  out << "usage:\n"
         "  omcascade run <config.json> [--out <file.csv>] [--reproducible]\n"
         "  omcascade preset <name> [--out <dir>] [--reproducible]\n"
         "  omcascade validate <config.json>\n"
         "  omcascade version\n"
         "\n"
         "presets: fig2a fig2b fig3 fig4 fig6 fig8\n"
         "Set OM_NET_WORKERS to override the sweep worker count.\n";
}

int fail(omc_status status, const std::string& context) {
  std::cerr << "error (" << omc_status_name(status) << "): " << context;
  const char* msg = omc_last_error_message();
  if (msg && *msg) std::cerr << ": " << msg;
  std::cerr << "\n";
  return 1;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

struct Options {
  std::string out;
  bool reproducible = false;
};

bool parse_flags(const std::vector<std::string>& args, size_t start,
                 Options& opts) {
  for (size_t i = start; i < args.size(); ++i) {
    if (args[i] == "--reproducible") {
      opts.reproducible = true;
    } else if (args[i] == "--out") {
      if (i + 1 >= args.size()) {
        std::cerr << "error: --out requires a path\n";
        return false;
      }
      opts.out = args[++i];
    } else {
      std::cerr << "error: unknown flag '" << args[i] << "'\n";
      return false;
    }
  }
  return true;
}

std::string csv_path_for_config(const std::string& config_path) {
  std::string stem = config_path;
  const size_t slash = stem.find_last_of('/');
  if (slash != std::string::npos) stem = stem.substr(slash + 1);
  const size_t dot = stem.find_last_of('.');
  if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return stem + ".csv";
}

int cmd_run(const std::vector<std::string>& args) {
  if (args.size() < 3) {
    print_usage(std::cerr);
    return 1;
  }
  Options opts;
  if (!parse_flags(args, 3, opts)) return 1;
  const std::string& config_path = args[2];

  std::string config_text;
  if (!read_file(config_path, config_text)) {
    std::cerr << "error: cannot read '" << config_path << "'\n";
    return 1;
  }

  omc_sweep_result* result = nullptr;
  omc_status status = omc_sweep_run_json(config_text.c_str(), &result);
  if (status != OMC_OK) return fail(status, "running " + config_path);

  const std::string csv =
      opts.out.empty() ? csv_path_for_config(config_path) : opts.out;
  status = omc_sweep_write_csv(result, csv.c_str(), opts.reproducible ? 1 : 0);
  const size_t rows = omc_sweep_result_rows(result);
  omc_sweep_result_free(result);
  if (status != OMC_OK) return fail(status, "writing " + csv);

  std::cout << csv << ": " << rows << " rows\n";
  return 0;
}

int cmd_preset(const std::vector<std::string>& args) {
  if (args.size() < 3) {
    print_usage(std::cerr);
    return 1;
  }
  Options opts;
  if (!parse_flags(args, 3, opts)) return 1;
  const std::string& name = args[2];
  const std::string dir = opts.out.empty() ? "." : opts.out;

  char* config_json = nullptr;
  omc_status status = omc_preset_config_json(name.c_str(), &config_json);
  if (status != OMC_OK) return fail(status, "preset " + name);
  const std::string config_text = config_json;
  omc_string_free(config_json);

  const std::string config_path = dir + "/" + name + ".json";
  {
    std::ofstream out(config_path, std::ios::binary);
    out << config_text << "\n";
    if (!out) {
      std::cerr << "error: cannot write '" << config_path << "'\n";
      return 1;
    }
  }

  omc_sweep_result* result = nullptr;
  status = omc_sweep_run_json(config_text.c_str(), &result);
  if (status != OMC_OK) return fail(status, "running preset " + name);

  const std::string csv_path = dir + "/" + name + ".csv";
  status =
      omc_sweep_write_csv(result, csv_path.c_str(), opts.reproducible ? 1 : 0);
  const size_t rows = omc_sweep_result_rows(result);
  omc_sweep_result_free(result);
  if (status != OMC_OK) return fail(status, "writing " + csv_path);

  std::cout << config_path << "\n" << csv_path << ": " << rows << " rows\n";
  return 0;
}

int cmd_validate(const std::vector<std::string>& args) {
  if (args.size() != 3) {
    print_usage(std::cerr);
    return 1;
  }
  std::string config_text;
  if (!read_file(args[2], config_text)) {
    std::cerr << "error: cannot read '" << args[2] << "'\n";
    return 1;
  }
  const omc_status status = omc_sweep_validate_json(config_text.c_str());
  if (status != OMC_OK) return fail(status, "validating " + args[2]);
  std::cout << args[2] << ": ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  if (args.size() < 2) {
    print_usage(std::cerr);
    return 1;
  }
  const std::string& verb = args[1];
  if (verb == "run") return cmd_run(args);
  if (verb == "preset") return cmd_preset(args);
  if (verb == "validate") return cmd_validate(args);
  if (verb == "version") {
    std::cout << "omcascade " << omc_version() << "\n";
    return 0;
  }
  if (verb == "help" || verb == "--help" || verb == "-h") {
    print_usage(std::cout);
    return 0;
  }
  std::cerr << "error: unknown command '" << verb << "'\n";
  print_usage(std::cerr);
  return 1;
}
