#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include <json.hpp>

#include "attractor/bounds.hpp"
#include "attractor/config.hpp"
#include "attractor/simulator.hpp"

namespace attractor {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfigError = 2,
  kExitBlowUp = 3,
};

/// Output file names inside output_dir.
inline constexpr const char* kSpectrumCsv = "spectrum_verification.csv";
inline constexpr const char* kReportJson = "dimension_report.json";
inline constexpr const char* kSweepCsv = "bounds_sweep.csv";
inline constexpr const char* kDiagnosticsCsv = "diagnostics.csv";
inline constexpr const char* kSummaryJson = "simulation_summary.json";
inline constexpr const char* kCombinedJson = "combined_report.json";

/// Writes to a temporary sibling and renames over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// The DimensionReport as an object with exactly its own fields.
nlohmann::json report_to_json(const DimensionReport& r);

/// Cross-check of empirical q_j against -A j^{(n+2)/n} + B for one run.
struct QmCheck {
  struct Row {
    std::size_t m = 0;
    double empirical_qm = 0.0;
    double bound = 0.0;
    bool pass = false;
  };
  std::vector<Row> rows;
  bool applicable = false;  // false in the trivial regime
  bool pass = true;
  bool lieb_thirring_consistent = false;  // configured C_star >= observed witness
  std::size_t first_negative_m = 0;       // smallest integer m with f(m) < 0
};

QmCheck check_qm_against_bound(const DimensionReport& report, int n, const RunSummary& summary,
                               double C_star);

int cmd_spectrum(const RunConfig& cfg, std::ostream& log);
int cmd_bounds(const RunConfig& cfg, std::ostream& log);
int cmd_simulate(const RunConfig& cfg, std::ostream& log);
int cmd_report(const RunConfig& cfg, std::ostream& log);

/// Parses `doc`, applies overrides and dispatches; converts ConfigError and
/// BlowUpError into exit codes, printing the message to `log`.
int run_command(const std::string& command, nlohmann::json doc, const Overrides& overrides,
                std::ostream& log);

}  // namespace attractor
