#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "casimir/cli.hpp"
#include "casimir/errors.hpp"

namespace casimir::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || end != t.data() + t.size() || t.empty()) {
    throw UsageError(field + ": not a number: '" + text + "'");
  }
  return v;
}

void require_positive(const char* field, const std::optional<double>& v) {
  if (v && !(*v > 0.0 && std::isfinite(*v))) {
    throw UsageError(std::string(field) + ": must be positive, got " + number(*v));
  }
}

MaterialModel parse_model(const std::string& s) {
  if (s == "drude") return MaterialModel::Drude;
  if (s == "plasma") return MaterialModel::Plasma;
  throw UsageError("model: expected 'drude' or 'plasma', got '" + s + "'");
}

const char* model_name(MaterialModel m) { return m == MaterialModel::Drude ? "drude" : "plasma"; }

}  // namespace

double parse_frequency(const std::string& text) {
  std::string t = trim(text);
  bool ev = false;
  if (t.size() > 2 && (t.ends_with("eV") || t.ends_with("ev"))) {
    ev = true;
    t = trim(t.substr(0, t.size() - 2));
  }
  const double v = parse_double("frequency", t);
  return ev ? ev_to_rad_s(v) : v;
}

void validate(const RunConfig& cfg) {
  require_positive("omega_p", cfg.omega_p);
  require_positive("gamma", cfg.gamma);
  require_positive("gamma_ratio", cfg.gamma_ratio);
  require_positive("distance", cfg.distance);
  require_positive("distance_ratio", cfg.distance_ratio);
  require_positive("temperature", cfg.temperature);
  require_positive("temperature_ratio", cfg.temperature_ratio);
  require_positive("cutoff_lambda", cfg.cutoff_lambda);
  require_positive("rel_tol", cfg.rel_tol);
  if (cfg.jobs < 1) throw UsageError("jobs: must be at least 1");

  if (cfg.distance.has_value() == cfg.distance_ratio.has_value()) {
    throw UsageError(cfg.distance ? "distance: give either --distance or --distance-ratio, not both"
                                  : "distance: missing; give --distance [m] or --distance-ratio [L/lambda_p]");
  }
  if (cfg.gamma && cfg.gamma_ratio) throw UsageError("gamma: give either --gamma or --gamma-ratio, not both");
  if (cfg.temperature && cfg.temperature_ratio) {
    throw UsageError("temperature: give either --temperature or --temperature-ratio, not both");
  }
  if (!cfg.omega_p) {
    if (cfg.distance) throw UsageError("distance: an SI distance needs --omega-p");
    if (cfg.gamma) throw UsageError("gamma: an SI damping rate needs --omega-p; use --gamma-ratio");
    if (cfg.temperature) throw UsageError("temperature: a temperature in K needs --omega-p");
  }
  const bool has_gamma = cfg.gamma || cfg.gamma_ratio;
  if (cfg.model == MaterialModel::Drude && !has_gamma) {
    throw UsageError("gamma: the drude model needs --gamma or --gamma-ratio");
  }
  if (cfg.model == MaterialModel::Plasma && has_gamma) {
    throw UsageError("gamma: the plasma model is lossless; drop --gamma");
  }
}

DecompositionInput resolve(const RunConfig& cfg) {
  validate(cfg);
  // validate() guarantees omega_p is set whenever an SI quantity is present.
  const UnitSystem units(cfg.omega_p.value_or(1.0));

  double gamma = 0.0;
  if (cfg.gamma_ratio) gamma = *cfg.gamma_ratio;
  if (cfg.gamma) gamma = units.frequency_to_internal(*cfg.gamma);
  const MaterialParams m =
      cfg.model == MaterialModel::Plasma ? MaterialParams::plasma() : MaterialParams::drude(gamma);

  const Geometry g = cfg.distance ? Geometry(units.distance_to_internal(*cfg.distance))
                                  : Geometry::from_wavelength_ratio(*cfg.distance_ratio, m);

  DecompositionInput in{m, g, CutoffLambda(cfg.cutoff_lambda * (m.has_cut() ? m.gamma : m.omega_p)),
                        std::nullopt, QuadratureConfig{}};
  if (cfg.temperature) in.temperature = Temperature(units.temperature_to_internal(*cfg.temperature));
  if (cfg.temperature_ratio) in.temperature = Temperature(*cfg.temperature_ratio);
  in.quad.rel_tol = cfg.rel_tol;
  return in;
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream os;
  auto put = [&os](const char* key, const std::optional<double>& v) {
    if (v) os << key << " = " << number(*v) << '\n';
  };
  os << "[material]\n";
  os << "model = " << model_name(cfg.model) << '\n';
  put("omega_p", cfg.omega_p);
  put("gamma", cfg.gamma);
  put("gamma_ratio", cfg.gamma_ratio);
  os << "\n[geometry]\n";
  put("distance", cfg.distance);
  put("distance_ratio", cfg.distance_ratio);
  os << "\n[thermal]\n";
  put("temperature", cfg.temperature);
  put("temperature_ratio", cfg.temperature_ratio);
  os << "\n[numerics]\n";
  os << "cutoff_lambda = " << number(cfg.cutoff_lambda) << '\n';
  os << "rel_tol = " << number(cfg.rel_tol) << '\n';
  os << "jobs = " << cfg.jobs << '\n';
  if (!cfg.out.empty()) os << "\n[output]\nout = " << cfg.out << '\n';
  return os.str();
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw UsageError("config line " + std::to_string(lineno) + ": bad section header");
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const std::string full = section + "." + key;

    if (full == "material.model") cfg.model = parse_model(value);
    else if (full == "material.omega_p") cfg.omega_p = parse_frequency(value);
    else if (full == "material.gamma") cfg.gamma = parse_frequency(value);
    else if (full == "material.gamma_ratio") cfg.gamma_ratio = parse_double(key, value);
    else if (full == "geometry.distance") cfg.distance = parse_double(key, value);
    else if (full == "geometry.distance_ratio") cfg.distance_ratio = parse_double(key, value);
    else if (full == "thermal.temperature") cfg.temperature = parse_double(key, value);
    else if (full == "thermal.temperature_ratio") cfg.temperature_ratio = parse_double(key, value);
    else if (full == "numerics.cutoff_lambda") cfg.cutoff_lambda = parse_double(key, value);
    else if (full == "numerics.rel_tol") cfg.rel_tol = parse_double(key, value);
    else if (full == "numerics.jobs") cfg.jobs = static_cast<int>(parse_double(key, value));
    else if (full == "output.out") cfg.out = value;
    else throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + full + "'");
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace casimir::cli
