#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sgdg/experiments.hpp"

namespace sgdg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int to_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  int out = 0;
  try {
    out = std::stoi(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size())
    throw std::invalid_argument("config key '" + key + "': expected an integer, got '" + v + "'");
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size())
    throw std::invalid_argument("config key '" + key + "': expected a number, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw std::invalid_argument("config key '" + key + "': expected a boolean, got '" + v + "'");
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

RefineMode parse_refine_mode(const std::string& name) {
  if (name == "h" || name == "h_refine") return RefineMode::H;
  if (name == "N" || name == "N_refine") return RefineMode::N;
  throw std::invalid_argument("unknown refinement mode '" + name + "' (expected h|N)");
}

std::string to_string(RefineMode mode) { return mode == RefineMode::H ? "h" : "N"; }

OutputFormat parse_output_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown output format '" + name + "' (expected csv|json)");
}

RunConfig RunConfig::for_case(const std::string& name) {
  const TestCase& c = find_case(name);
  RunConfig cfg;
  cfg.case_name = c.name;
  cfg.M = c.M;
  cfg.dt = c.dt;
  cfg.N = c.N;
  cfg.p = c.p;
  cfg.flux = to_string(c.flux_kind);
  cfg.scheme = c.scheme;
  cfg.projection = to_string(c.projection);
  cfg.limiter = c.limiter;
  cfg.tvb = c.tvb;
  cfg.reconstruction_start = c.reconstruction_start;
  cfg.final_time = c.final_time;
  return cfg;
}

std::vector<std::pair<std::string, std::string>> RunConfig::keys() {
  return {
      {"case", "test case name (see list-cases)"},
      {"M", "number of elements"},
      {"dt", "time step"},
      {"N", "polynomial chaos degree"},
      {"p", "DG polynomial degree"},
      {"flux", "numerical flux: upwind | lax_wendroff"},
      {"scheme", "Runge-Kutta scheme: ssprk3 | rk3_7"},
      {"projection", "initial projection: radau | gauss_legendre"},
      {"limiter", "slope limiter on/off"},
      {"tvb", "TVB constant of the limiter"},
      {"reconstruction_start", "requested start time of the reconstruction"},
      {"T", "final time"},
      {"n_time", "Gauss points per time interval"},
      {"n_space", "Gauss points per element"},
      {"n_stochastic", "Gauss points in xi"},
      {"oversampling", "sample multiplier for max-norms"},
      {"levels", "number of refinement levels"},
      {"mode", "refinement mode: h | N"},
      {"out", "output table path"},
      {"format", "output format: csv | json"},
  };
}

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "case") {
    *this = for_case(v);
  } else if (key == "M") {
    M = to_int(key, v);
  } else if (key == "dt") {
    dt = to_double(key, v);
  } else if (key == "N") {
    N = to_int(key, v);
  } else if (key == "p") {
    p = to_int(key, v);
  } else if (key == "flux") {
    parse_numerical_flux(v);
    flux = v;
  } else if (key == "scheme") {
    scheme_by_name(v);
    scheme = v;
  } else if (key == "projection") {
    parse_projection_method(v);
    projection = v;
  } else if (key == "limiter") {
    limiter = to_bool(key, v);
  } else if (key == "tvb") {
    tvb = to_double(key, v);
  } else if (key == "reconstruction_start") {
    reconstruction_start = to_double(key, v);
  } else if (key == "T") {
    final_time = to_double(key, v);
  } else if (key == "n_time") {
    quad.n_time_per_interval = to_int(key, v);
  } else if (key == "n_space") {
    quad.n_space_per_element = to_int(key, v);
  } else if (key == "n_stochastic") {
    quad.n_stochastic = to_int(key, v);
  } else if (key == "oversampling") {
    quad.oversampling = to_int(key, v);
  } else if (key == "levels") {
    levels = to_int(key, v);
  } else if (key == "mode") {
    mode = parse_refine_mode(v);
  } else if (key == "out") {
    out = v;
  } else if (key == "format") {
    format = parse_output_format(v);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

void RunConfig::validate() const {
  find_case(case_name);
  if (M < 1) throw std::invalid_argument("M must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  if (p < 0) throw std::invalid_argument("p must be >= 0");
  if (!(final_time > 0.0)) throw std::invalid_argument("T must be > 0");
  if (tvb < 0.0) throw std::invalid_argument("tvb must be >= 0");
  if (reconstruction_start < 0.0 || reconstruction_start > final_time)
    throw std::invalid_argument("reconstruction_start must lie in [0, T]");
  quad.validate();
  parse_numerical_flux(flux);
  parse_projection_method(projection);
  scheme_by_name(scheme);
}

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

RunConfig config_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                            const std::string& fallback_case) {
  std::string name = fallback_case;
  for (const auto& [k, v] : pairs)
    if (k == "case") name = v;
  RunConfig cfg = RunConfig::for_case(name);
  for (const auto& [k, v] : pairs)
    if (k != "case") cfg.set(k, v);
  return cfg;
}

RunResult run(const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const TestCase& tc = find_case(config.case_name);

  auto basis = std::make_shared<const StochasticBasis>(
      tc.distribution, config.N, std::max(config.quad.n_stochastic, 3 * config.N + 1));
  auto space = std::make_shared<const DGSpace>(Mesh1D::uniform(tc.left, tc.right, config.M),
                                               config.p);
  const NumericalFlux flux(parse_numerical_flux(config.flux), tc.flux, basis);
  const SGField u0 =
      project_initial(tc.initial, space, basis, parse_projection_method(config.projection));
  const StepOptions opts{config.limiter, config.tvb};
  auto traj = std::make_shared<const Trajectory>(
      march(u0, scheme_by_name(config.scheme), config.dt, config.final_time, flux, tc.source, opts));

  const SpaceTimeReconstruction rec(traj, config.reconstruction_start);
  const double t0 = rec.start_time();
  const double T = traj->final_time();

  RunResult result;
  result.trajectory = traj;
  result.residuals = residual_norms(rec, tc.source, config.quad, t0, T);

  // Initial data for the estimator is the solution at the reconstruction start.
  const RandomField* reference = &tc.initial;
  if (t0 > 0.0) {
    if (!tc.exact)
      throw std::invalid_argument("reconstruction_start > 0 needs an exact solution for case '" +
                                  tc.name + "'");
    reference = &*tc.exact;
  }
  const InitialErrorSplit split = initial_error_split(*reference, t0, rec.at(t0), config.quad);
  result.residuals.E0_st = split.E0_st;
  result.residuals.E0_stoch = split.E0_stoch;
  result.residuals.E0_st_by_mode = split.E0_st_by_mode;

  result.estimator = compute_bound(rec, result.residuals, config.quad, T, tc.value_bound);
  if (tc.exact) {
    const double e2 =
        exact_error_sq(traj->states.back(), *tc.exact, T, config.quad, tc.breakpoints);
    result.estimator.exact_error_sq = e2;
    if (e2 > 0.0) result.estimator.effectivity = std::sqrt(result.estimator.bound_numerical / e2);
  }

  ConvergenceRow& row = result.row;
  row.M = config.M;
  row.h = (tc.right - tc.left) / config.M;
  row.dt = config.dt;
  row.N = config.N;
  row.p = config.p;
  row.error = result.estimator.exact_error_sq ? std::sqrt(*result.estimator.exact_error_sq) : kNaN;
  row.R_st = std::sqrt(result.residuals.R_st_sq);
  row.R_stoch = std::sqrt(result.residuals.R_stoch_sq);
  row.E0_st = result.residuals.E0_st;
  row.E0_stoch = result.residuals.E0_stoch;
  row.bound = std::sqrt(result.estimator.bound_numerical);
  row.exp_factor = result.estimator.exp_factor;
  row.eoc_error = kNaN;
  row.eoc_R_st = kNaN;
  row.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double eoc(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0)) return kNaN;
  return std::log2(coarse / fine);
}

RunResult convergence_study(const RunConfig& base, int levels, RefineMode mode,
                            std::vector<ConvergenceRow>& table) {
  if (levels < 2) throw std::invalid_argument("convergence study needs at least 2 levels");
  RunResult last;
  for (int level = 0; level < levels; ++level) {
    RunConfig cfg = base;
    if (mode == RefineMode::H) {
      cfg.M = base.M << level;
      cfg.dt = base.dt / static_cast<double>(1 << level);
    } else {
      cfg.N = base.N + level;
    }
    last = run(cfg);
    last.row.level = level;
    if (!table.empty() && level > 0) {
      const ConvergenceRow& prev = table.back();
      last.row.eoc_error = eoc(prev.error, last.row.error);
      last.row.eoc_R_st = eoc(prev.R_st, last.row.R_st);
    }
    table.push_back(last.row);
  }
  return last;
}

}  // namespace sgdg
