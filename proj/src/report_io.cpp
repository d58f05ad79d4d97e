#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "sgdg/experiments.hpp"

namespace sgdg {

const char* const kCsvHeader =
    "level,M,h,dt,N,p,error,R_st,R_stoch,E0_st,E0_stoch,bound,exp_factor,eoc_error,eoc_R_st,"
    "wall_time";

namespace {

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

nlohmann::json number(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

double from_json(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

std::string to_csv(const std::vector<ConvergenceRow>& table) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const ConvergenceRow& r : table) {
    os << r.level << ',' << r.M << ',' << fmt17(r.h) << ',' << fmt17(r.dt) << ',' << r.N << ','
       << r.p << ',' << fmt17(r.error) << ',' << fmt17(r.R_st) << ',' << fmt17(r.R_stoch) << ','
       << fmt17(r.E0_st) << ',' << fmt17(r.E0_stoch) << ',' << fmt17(r.bound) << ','
       << fmt17(r.exp_factor) << ',' << fmt17(r.eoc_error) << ',' << fmt17(r.eoc_R_st) << ','
       << fmt17(r.wall_time) << '\n';
  }
  return os.str();
}

std::string to_json(const std::vector<ConvergenceRow>& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ConvergenceRow& r : table) {
    rows.push_back({{"level", r.level},
                    {"M", r.M},
                    {"h", number(r.h)},
                    {"dt", number(r.dt)},
                    {"N", r.N},
                    {"p", r.p},
                    {"error", number(r.error)},
                    {"R_st", number(r.R_st)},
                    {"R_stoch", number(r.R_stoch)},
                    {"E0_st", number(r.E0_st)},
                    {"E0_stoch", number(r.E0_stoch)},
                    {"bound", number(r.bound)},
                    {"exp_factor", number(r.exp_factor)},
                    {"eoc_error", number(r.eoc_error)},
                    {"eoc_R_st", number(r.eoc_R_st)},
                    {"wall_time", number(r.wall_time)}});
  }
  return rows.dump(2) + "\n";
}

std::vector<ConvergenceRow> rows_from_json(const std::string& text) {
  const nlohmann::json rows = nlohmann::json::parse(text);
  std::vector<ConvergenceRow> out;
  for (const auto& j : rows) {
    ConvergenceRow r;
    r.level = j.at("level").get<int>();
    r.M = j.at("M").get<int>();
    r.h = from_json(j.at("h"));
    r.dt = from_json(j.at("dt"));
    r.N = j.at("N").get<int>();
    r.p = j.at("p").get<int>();
    r.error = from_json(j.at("error"));
    r.R_st = from_json(j.at("R_st"));
    r.R_stoch = from_json(j.at("R_stoch"));
    r.E0_st = from_json(j.at("E0_st"));
    r.E0_stoch = from_json(j.at("E0_stoch"));
    r.bound = from_json(j.at("bound"));
    r.exp_factor = from_json(j.at("exp_factor"));
    r.eoc_error = from_json(j.at("eoc_error"));
    r.eoc_R_st = from_json(j.at("eoc_R_st"));
    r.wall_time = from_json(j.at("wall_time"));
    out.push_back(r);
  }
  return out;
}

void emit(const std::vector<ConvergenceRow>& table, OutputFormat format, const std::string& path) {
  write_file(path, format == OutputFormat::Csv ? to_csv(table) : to_json(table));
}

std::string profile_csv(const ResidualProfile& profile) {
  std::ostringstream os;
  os << "x,mode0,R_st_density,R_stoch_density\n";
  for (std::size_t k = 0; k < profile.x.size(); ++k)
    os << fmt17(profile.x[k]) << ',' << fmt17(profile.mode0[k]) << ','
       << fmt17(profile.R_st_density[k]) << ',' << fmt17(profile.R_stoch_density[k]) << '\n';
  return os.str();
}

std::string profile_path(const std::string& table_path) {
  const std::filesystem::path p(table_path);
  return (p.parent_path() / (p.stem().string() + "_profile.csv")).string();
}

void write_profile(const ResidualProfile& profile, const std::string& path) {
  write_file(path, profile_csv(profile));
}

}  // namespace sgdg
