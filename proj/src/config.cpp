#include "bousslab/config.hpp"

#include "bousslab/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace bousslab {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    throw std::invalid_argument("expected a finite number, got '" + std::string(v) + "'");
  return out;
}

long long to_integer(std::string_view v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw std::invalid_argument("expected an integer, got '" + std::string(v) + "'");
  return out;
}

bool to_bool(std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("expected true or false, got '" + std::string(v) + "'");
}

std::vector<double> to_list(std::string_view v) {
  std::vector<double> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    out.push_back(to_double(trim(v.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  if (out.empty()) throw std::invalid_argument("expected a comma-separated list");
  return out;
}

std::string format(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      {"grid_n", [](RunConfig& c, std::string_view v) { c.grid_n = int(to_integer(v)); }},
      {"t_end", [](RunConfig& c, std::string_view v) { c.policy.t_end = to_double(v); }},
      {"cfl", [](RunConfig& c, std::string_view v) { c.policy.cfl = to_double(v); }},
      {"dt_max", [](RunConfig& c, std::string_view v) { c.policy.dt_max = to_double(v); }},
      {"dt_min", [](RunConfig& c, std::string_view v) { c.policy.dt_min = to_double(v); }},
      {"preset", [](RunConfig& c, std::string_view v) { c.preset = parse_preset(v); }},
      {"seed",
       [](RunConfig& c, std::string_view v) {
         const long long s = to_integer(v);
         if (s < 0) throw std::invalid_argument("seed must be nonnegative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"amplitude", [](RunConfig& c, std::string_view v) { c.initial.amplitude = to_double(v); }},
      {"perturbation",
       [](RunConfig& c, std::string_view v) { c.initial.perturbation = to_double(v); }},
      {"band", [](RunConfig& c, std::string_view v) { c.initial.band = int(to_integer(v)); }},
      {"rho_mean", [](RunConfig& c, std::string_view v) { c.initial.rho_mean = to_double(v); }},
      {"mean_u1",
       [](RunConfig& c, std::string_view v) { c.initial.mean_velocity.x() = to_double(v); }},
      {"mean_u2",
       [](RunConfig& c, std::string_view v) { c.initial.mean_velocity.y() = to_double(v); }},
      {"forcing", [](RunConfig& c, std::string_view v) { c.forcing = parse_forcing_variant(v); }},
      {"forcing_M", [](RunConfig& c, std::string_view v) { c.forcing_M = to_double(v); }},
      {"forcing_lambda",
       [](RunConfig& c, std::string_view v) { c.forcing_lambda = to_double(v); }},
      {"forcing_speed", [](RunConfig& c, std::string_view v) { c.forcing_speed = to_double(v); }},
      {"cadence", [](RunConfig& c, std::string_view v) { c.cadence = int(to_integer(v)); }},
      {"p_list", [](RunConfig& c, std::string_view v) { c.p_list = to_list(v); }},
      {"output_dir", [](RunConfig& c, std::string_view v) { c.output_dir = std::string(v); }},
      {"run_name", [](RunConfig& c, std::string_view v) { c.run_name = std::string(v); }},
      {"nonzero_mean", [](RunConfig& c, std::string_view v) { c.nonzero_mean = to_bool(v); }},
  };
  return table;
}

}  // namespace

void RunConfig::validate() const {
  if (grid_n % 2 != 0) throw ConfigError("grid_n must be even");
  if (grid_n < 16) throw ConfigError("grid_n must be >= 16");
  if (!(policy.t_end >= 0.0)) throw ConfigError("t_end must be >= 0");
  if (!(policy.cfl > 0.0 && policy.cfl <= 1.0)) throw ConfigError("cfl must be in (0, 1]");
  if (!(policy.dt_min > 0.0)) throw ConfigError("dt_min must be positive");
  if (!(policy.dt_min <= policy.dt_max)) throw ConfigError("dt_max must be >= dt_min");
  if (cadence < 1) throw ConfigError("cadence must be >= 1");
  if (p_list.empty()) throw ConfigError("p_list must not be empty");
  for (double p : p_list)
    if (!(p >= 2.0)) throw ConfigError("p_list entries must be >= 2");
  if (initial.band < 1) throw ConfigError("band must be >= 1");
  if (forcing == ForcingVariant::curl_forced) {
    if (!(forcing_M >= 1.0)) throw ConfigError("forcing_M must be >= 1");
    if (!(forcing_lambda >= 0.0)) throw ConfigError("forcing_lambda must be >= 0");
  }
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
  if (run_name.empty() || run_name.find('/') != std::string::npos)
    throw ConfigError("run_name must be a nonempty file name");
  if (!nonzero_mean && (initial.mean_velocity.x() != 0.0 || initial.mean_velocity.y() != 0.0))
    throw ConfigError("mean_u1/mean_u2 require nonzero_mean=true");
}

ForcingSpec RunConfig::forcing_spec() const {
  switch (forcing) {
    case ForcingVariant::boussinesq: return ForcingSpec::boussinesq();
    case ForcingVariant::curl_forced:
      return ForcingSpec::curl_forced(forcing_M, forcing_lambda, forcing_speed);
    case ForcingVariant::none: return ForcingSpec::none();
  }
  return ForcingSpec::none();
}

std::string RunConfig::to_text() const {
  std::ostringstream out;
  out << "grid_n=" << grid_n << '\n'
      << "t_end=" << format(policy.t_end) << '\n'
      << "cfl=" << format(policy.cfl) << '\n'
      << "dt_max=" << format(policy.dt_max) << '\n'
      << "dt_min=" << format(policy.dt_min) << '\n'
      << "preset=" << to_string(preset) << '\n'
      << "seed=" << seed << '\n'
      << "amplitude=" << format(initial.amplitude_for(preset)) << '\n'
      << "perturbation=" << format(initial.perturbation) << '\n'
      << "band=" << initial.band << '\n'
      << "rho_mean=" << format(initial.rho_mean) << '\n'
      << "mean_u1=" << format(initial.mean_velocity.x()) << '\n'
      << "mean_u2=" << format(initial.mean_velocity.y()) << '\n'
      << "forcing=" << to_string(forcing) << '\n'
      << "forcing_M=" << format(forcing_M) << '\n'
      << "forcing_lambda=" << format(forcing_lambda) << '\n'
      << "forcing_speed=" << format(forcing_speed) << '\n'
      << "cadence=" << cadence << '\n'
      << "p_list=";
  for (std::size_t i = 0; i < p_list.size(); ++i) out << (i ? "," : "") << format(p_list[i]);
  out << '\n'
      << "output_dir=" << output_dir << '\n'
      << "run_name=" << run_name << '\n'
      << "nonzero_mean=" << (nonzero_mean ? "true" : "false") << '\n';
  return out.str();
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value", line_no);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end())
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                            std::string(key) + "'",
                        line_no);
    if (!seen.emplace(key).second)
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" +
                            std::string(key) + "'",
                        line_no);
    try {
      it->second(config, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + std::string(key) + ": " +
                            e.what(),
                        line_no);
    }
  }
  config.validate();
  return config;
}

}  // namespace bousslab
