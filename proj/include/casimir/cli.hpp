#pragma once

// Command-line front end: run configuration, the INI-style config file,
// unit resolution at the SI boundary, and the decompose/sweep/check commands.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/breakdown.hpp"

namespace casimir::cli {

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2, kExitCheckFailed = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  /// Plasma frequency [rad/s]. When absent everything is in natural units
  /// with omega_p = 1 and SI quantities (distance, gamma, temperature) are rejected.
  std::optional<double> omega_p;
  std::optional<double> gamma;        // rad/s
  std::optional<double> gamma_ratio;  // gamma / omega_p
  MaterialModel model = MaterialModel::Drude;
  std::optional<double> distance;        // m
  std::optional<double> distance_ratio;  // L / lambda_p
  std::optional<double> temperature;        // K
  std::optional<double> temperature_ratio;  // k_B T / (hbar omega_p)
  /// Lambda in units of gamma (omega_p for the plasma model).
  double cutoff_lambda = 10.0;
  double rel_tol = 1e-9;
  int jobs = 1;
  std::string out;

  bool operator==(const RunConfig&) const = default;
};

/// Throws UsageError naming the offending field.
void validate(const RunConfig& cfg);

/// Internal-unit problem description. Validates first.
DecompositionInput resolve(const RunConfig& cfg);

/// "[section]" / "key = value" text, numbers with 17 significant digits.
std::string serialize_config(const RunConfig& cfg);
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

/// A number with an optional "eV" suffix (converted to rad/s).
double parse_frequency(const std::string& text);

// --- decompose -------------------------------------------------------------

struct TableRow {
  std::string quantity;
  double value;
  double eta;
  std::string note;
};

std::vector<TableRow> decomposition_rows(const EnergyBreakdown& b);
void write_table(std::ostream& os, const RunConfig& cfg, const EnergyBreakdown& b);

// --- sweep -----------------------------------------------------------------

enum class SweepParam { Distance, Temperature, Gamma, Lambda };

struct SweepSpec {
  SweepParam param = SweepParam::Distance;
  /// Dimensionless: L / lambda_p, k_B T / hbar omega_p, gamma / omega_p, Lambda / gamma.
  double from = 0.0;
  double to = 0.0;
  int points = 2;
  bool log_spacing = true;
};

SweepParam parse_sweep_param(const std::string& name);
std::vector<double> sweep_grid(const SweepSpec& spec);

struct SweepRow {
  double param_value = 0.0;
  std::optional<EnergyBreakdown> result;
  std::string error_flag;  // "ok", "no_cut", "nonconverged" or "error"
  std::string message;
};

extern const char* const kCsvHeader;

/// Evaluates the grid on up to cfg.jobs threads; rows come back in grid order.
std::vector<SweepRow> run_sweep(const RunConfig& cfg, const SweepSpec& spec);
void write_csv(std::ostream& os, const RunConfig& cfg, const std::vector<SweepRow>& rows);

/// Energies per area converted for output: J/m^2 with omega_p set, natural units otherwise.
double output_energy(const RunConfig& cfg, double internal);

}  // namespace casimir::cli
