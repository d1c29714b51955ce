#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumdiff/analysis.hpp"
#include "sumdiff/channels.hpp"

namespace sumdiff::cli {

enum ExitCode : int {
  kPass = 0,
  kUsage = 1,
  kVerificationFailure = 2,
  kIoError = 3,
};

/// Unreadable, unwritable or malformed files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad flags or configuration values.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr const char* kToleranceEnv = "SUMDIFF_TOLERANCE";
inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct SweepRange {
  double t_min = 0.0;
  double t_max = 1.0;
  std::size_t steps = 2;
};

struct RunConfig {
  std::string channel = "gad";  // gad | ad2
  std::optional<GadParams> gad;
  std::optional<TwoQubitAdParams> ad2;
  std::string partition = "diag-pairs";  // diag-pairs | split-real-imag | full-spectral
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = kDefaultSeed;
  bool spectral_cleanup = false;
  std::optional<SweepRange> sweep;

  /// Throws UsageError on inconsistent fields, ParameterError on channel
  /// parameters outside their domain.
  void validate() const;
};

/// Reads a JSON config tree and overlays it onto `base`.
RunConfig overlay_config(RunConfig base, const std::string& json_text);
/// Default tolerance after the environment override.
double default_tolerance();

struct KrausExport {
  std::string channel;
  std::optional<GadParams> gad;
  std::optional<TwoQubitAdParams> ad2;
  std::string partition;
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = kDefaultSeed;
  std::string timestamp;
  bool spectral_cleanup_applied = false;

  SignedKrausSet operators;
  double completeness_residual = 0.0;
  double reconstruction_residual = 0.0;

  bool is_cp = false;
  double min_choi_eigenvalue = 0.0;
  bool is_trace_preserving = false;
  bool ppt_of_choi = false;
  double min_pt_eigenvalue = 0.0;
  bool separable_certified = false;

  bool residuals_pass() const {
    return completeness_residual <= tolerance && reconstruction_residual <= tolerance;
  }
};

bool operator==(const KrausExport& a, const KrausExport& b);

std::string export_to_string(const KrausExport& e);
/// Throws IoError for malformed input.
KrausExport export_from_string(const std::string& text);

void save_export(const KrausExport& e, const std::string& path);
KrausExport load_export(const std::string& path);

/// Choi build, partition, extraction and residual checks. The timestamp is
/// left empty.
KrausExport cmd_extract(const RunConfig& config);

enum class VerifyOracle { DirectAction, StandardKraus };

struct VerifyReport {
  std::size_t samples = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_deviation <= tolerance; }
};

/// Applies the stored set to `samples` seeded random states and compares
/// against the chosen oracle channel.
VerifyReport cmd_verify(const KrausExport& e, VerifyOracle oracle, std::size_t samples = 100);

struct SweepRow {
  double t = 0.0;
  TwoQubitAdCoeffs coeffs;
  double completeness_residual = 0.0;
  double min_choi_eigenvalue = 0.0;
  bool mdc_ppt = false;
  bool pdc_ppt = false;
  double pdc_concurrence = 0.0;
};

std::vector<SweepRow> cmd_sweep(const RunConfig& config);
std::string sweep_header();
std::string sweep_csv_row(const SweepRow& row);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sumdiff::cli
