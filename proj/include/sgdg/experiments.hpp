#ifndef SGDG_EXPERIMENTS_HPP_
#define SGDG_EXPERIMENTS_HPP_

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgdg/residual_estimator.hpp"

namespace sgdg {

struct TestCase {
  std::string name;
  std::string description;
  double left;
  double right;
  double final_time;
  FluxLaw flux;
  UniformDistribution distribution;
  RandomField initial;
  RandomField source;
  std::optional<RandomField> exact;
  /// Discontinuities of the exact solution, if any.
  BreakpointFn breakpoints;
  /// A priori bound on |u| (range proxy for C_f'').
  double value_bound;

  int M;
  double dt;
  int N;
  int p;
  NumericalFlux::Kind flux_kind;
  bool limiter;
  double tvb;
  double reconstruction_start;
  ProjectionMethod projection;
  std::string scheme;
};

/// All built-in cases; exact solutions are checked against the PDE by finite
/// differences on first use.
const std::vector<TestCase>& registry();
const TestCase& find_case(const std::string& name);

/// max |d_t u + d_x f(u) - S| over a deterministic sample of (t, x, xi),
/// by fourth-order central differences. Points near breakpoints are skipped.
double pde_consistency_defect(const TestCase& c, int samples_per_axis = 7);

enum class RefineMode { H, N };
RefineMode parse_refine_mode(const std::string& name);
std::string to_string(RefineMode mode);

enum class OutputFormat { Csv, Json };
OutputFormat parse_output_format(const std::string& name);

/// Fully resolved run parameters. Built from a case's defaults and then
/// overridden key by key.
struct RunConfig {
  std::string case_name;
  int M = 16;
  double dt = 0.02;
  int N = 0;
  int p = 1;
  std::string flux = "upwind";
  std::string scheme = "ssprk3";
  std::string projection = "radau";
  bool limiter = false;
  double tvb = 0.0;
  double reconstruction_start = 0.0;
  double final_time = 0.0;
  QuadratureConfig quad;
  int levels = 4;
  RefineMode mode = RefineMode::H;
  std::string out;
  OutputFormat format = OutputFormat::Csv;

  static RunConfig for_case(const std::string& name);
  /// Applies one key=value override; throws std::invalid_argument on an
  /// unknown key or a malformed value.
  void set(const std::string& key, const std::string& value);
  void validate() const;

  /// Keys accepted by set(), with a one-line description each.
  static std::vector<std::pair<std::string, std::string>> keys();
};

/// Parses `key = value` lines ('#' starts a comment).
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);
/// Config from key-value pairs; `case` is applied first, the rest in order.
RunConfig config_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                            const std::string& fallback_case = "advection");

struct ConvergenceRow {
  int level = 0;
  int M = 0;
  double h = 0.0;
  double dt = 0.0;
  int N = 0;
  int p = 0;
  /// L2 error against the exact solution at T (NaN without one).
  double error = 0.0;
  double R_st = 0.0;
  double R_stoch = 0.0;
  double E0_st = 0.0;
  double E0_stoch = 0.0;
  /// Square root of the bound on the squared numerical error.
  double bound = 0.0;
  double exp_factor = 1.0;
  double eoc_error = 0.0;
  double eoc_R_st = 0.0;
  double wall_time = 0.0;
};

struct RunResult {
  std::shared_ptr<const Trajectory> trajectory;
  ResidualReport residuals;
  EstimatorReport estimator;
  ConvergenceRow row;
};

/// march -> reconstruct -> residuals -> bound -> exact error.
RunResult run(const RunConfig& config);

/// log2(coarse / fine); NaN when either value is not positive.
double eoc(double coarse, double fine);

/// Appends one row per level to `table` as soon as it is computed, so a
/// failing level leaves the completed rows in place. Returns the last run.
RunResult convergence_study(const RunConfig& base, int levels, RefineMode mode,
                            std::vector<ConvergenceRow>& table);

// ---- report output

extern const char* const kCsvHeader;

std::string to_csv(const std::vector<ConvergenceRow>& table);
std::string to_json(const std::vector<ConvergenceRow>& table);
std::vector<ConvergenceRow> rows_from_json(const std::string& text);
/// Writes the table; throws std::runtime_error naming the path on failure.
void emit(const std::vector<ConvergenceRow>& table, OutputFormat format, const std::string& path);

std::string profile_csv(const ResidualProfile& profile);
/// `<dir>/<stem>_profile.csv` next to the table path.
std::string profile_path(const std::string& table_path);
void write_profile(const ResidualProfile& profile, const std::string& path);

}  // namespace sgdg

#endif  // SGDG_EXPERIMENTS_HPP_
