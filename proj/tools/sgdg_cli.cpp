// Command-line driver: single runs, convergence tables, case listing.
//
// Exit codes: 0 success, 1 solver blow-up, 2 bad configuration.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sgdg/experiments.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kBlowUp = 1;
constexpr int kBadConfig = 2;

struct Common {
  std::string case_name;
  std::string config_path;
  std::vector<std::string> sets;
  std::vector<std::pair<std::string, std::string>> direct;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--case", c.case_name, "test case (see list-cases)");
  cmd->add_option("--config", c.config_path, "key = value config file");
  cmd->add_option("--set", c.sets, "override, key=value (repeatable)");
  for (const char* key : {"N", "p", "M", "dt", "out", "format"}) {
    cmd->add_option_function<std::string>(
        std::string("--") + key,
        [&c, key](const std::string& v) { c.direct.emplace_back(key, v); },
        std::string("shorthand for --set ") + key + "=...");
  }
}

sgdg::RunConfig resolve(const Common& c, const std::vector<std::pair<std::string, std::string>>& extra) {
  std::vector<std::pair<std::string, std::string>> pairs;
  if (!c.config_path.empty()) pairs = sgdg::read_config_file(c.config_path);
  if (!c.case_name.empty()) pairs.emplace_back("case", c.case_name);
  for (const std::string& s : c.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + s + "'");
    pairs.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  for (const auto& kv : c.direct) pairs.push_back(kv);
  for (const auto& kv : extra) pairs.push_back(kv);
  sgdg::RunConfig cfg = sgdg::config_from_pairs(pairs);
  cfg.validate();
  return cfg;
}

void write_table(const std::vector<sgdg::ConvergenceRow>& table, const sgdg::RunConfig& cfg) {
  if (cfg.out.empty()) {
    std::cout << (cfg.format == sgdg::OutputFormat::Csv ? sgdg::to_csv(table) : sgdg::to_json(table));
  } else {
    sgdg::emit(table, cfg.format, cfg.out);
  }
}

void write_sidecar(const sgdg::RunResult& r, const sgdg::RunConfig& cfg) {
  if (cfg.out.empty() || !r.trajectory) return;
  sgdg::write_profile(r.residuals.profile, sgdg::profile_path(cfg.out));
}

void report_warnings(const sgdg::RunResult& r) {
  for (const std::string& w : r.residuals.warnings) std::cerr << "warning: " << w << '\n';
}

std::string keys_help() {
  std::string s = "Config keys (file, --set key=value):\n";
  for (const auto& [k, d] : sgdg::RunConfig::keys()) s += "  " + k + "  " + d + "\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic Galerkin DG solver with a posteriori residual estimates"};
  app.footer(keys_help());
  app.require_subcommand(1);

  Common run_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "single run, one-row table");
  add_common(run_cmd, run_opts);

  Common conv_opts;
  std::vector<std::pair<std::string, std::string>> conv_extra;
  CLI::App* conv_cmd = app.add_subcommand("convergence", "h- or N-refinement table with EOCs");
  add_common(conv_cmd, conv_opts);
  conv_cmd->add_option_function<std::string>(
      "--levels", [&](const std::string& v) { conv_extra.emplace_back("levels", v); },
      "number of levels (>= 2)");
  conv_cmd->add_option_function<std::string>(
      "--mode", [&](const std::string& v) { conv_extra.emplace_back("mode", v); }, "h | N");

  CLI::App* list_cmd = app.add_subcommand("list-cases", "print the built-in test cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadConfig;
  }

  if (list_cmd->parsed()) {
    for (const sgdg::TestCase& c : sgdg::registry())
      std::cout << c.name << "  " << c.description << '\n';
    return kOk;
  }

  sgdg::RunConfig cfg;
  try {
    cfg = run_cmd->parsed() ? resolve(run_opts, {}) : resolve(conv_opts, conv_extra);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadConfig;
  }

  std::vector<sgdg::ConvergenceRow> table;
  try {
    sgdg::RunResult result;
    if (run_cmd->parsed()) {
      result = sgdg::run(cfg);
      table.push_back(result.row);
    } else {
      result = sgdg::convergence_study(cfg, cfg.levels, cfg.mode, table);
    }
    report_warnings(result);
    write_table(table, cfg);
    write_sidecar(result, cfg);
  } catch (const sgdg::BlowUpError& e) {
    std::cerr << "error: " << e.what() << '\n';
    try {
      write_table(table, cfg);
    } catch (const std::exception& io) {
      std::cerr << "error: " << io.what() << '\n';
    }
    return kBlowUp;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (!table.empty()) {
      try {
        write_table(table, cfg);
      } catch (const std::exception&) {
      }
    }
    return kBadConfig;
  }
  return kOk;
}
