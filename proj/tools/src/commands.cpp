#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sumdiff/analysis.hpp"
#include "sumdiff/choi.hpp"
#include "sumdiff/errors.hpp"
#include "sumdiff/random.hpp"
#include "sumdiff_cli/cli.hpp"

namespace sumdiff::cli {
namespace {

PartitionKind partition_kind(const std::string& name) {
  if (name == "diag-pairs") return PartitionKind::DiagPlusPairs;
  if (name == "split-real-imag") return PartitionKind::SplitRealImag;
  if (name == "full-spectral") return PartitionKind::FullSpectral;
  throw UsageError("unknown partition '" + name + "'");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw IoError("write to '" + path + "' failed");
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Values from the command line, applied over defaults, environment and config.
struct ChannelFlags {
  std::string channel;
  std::string partition;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  bool spectral_cleanup = false;
  std::string config_path;
  std::string out_path;
  GadParams gad;
  TwoQubitAdParams ad2;
  SweepRange sweep;

  CLI::Option* channel_opt = nullptr;
  CLI::Option* partition_opt = nullptr;
  CLI::Option* tolerance_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* cleanup_opt = nullptr;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> gad_opts;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> ad2_opts;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> sweep_opts;
};

void add_channel_options(CLI::App* cmd, ChannelFlags& f) {
  f.channel_opt = cmd->add_option("--channel", f.channel, "gad | ad2")
                      ->check(CLI::IsMember({"gad", "ad2"}));
  f.partition_opt =
      cmd->add_option("--partition", f.partition, "diag-pairs | split-real-imag | full-spectral")
          ->check(CLI::IsMember({"diag-pairs", "split-real-imag", "full-spectral"}));
  f.tolerance_opt = cmd->add_option("--tolerance", f.tolerance, "residual tolerance");
  f.seed_opt = cmd->add_option("--seed", f.seed, "seed for random test states");
  cmd->add_option("--config", f.config_path, "JSON config file");
  cmd->add_option("--out", f.out_path, "output path (default stdout)");

  auto gad_opt = [&](const char* name, double& slot, double GadParams::*field) {
    CLI::Option* o = cmd->add_option(name, slot, "gad parameter");
    f.gad_opts.emplace_back(o, [&slot, field](RunConfig& c) {
      if (!c.gad) c.gad = GadParams{};
      (*c.gad).*field = slot;
    });
  };
  gad_opt("--p", f.gad.p, &GadParams::p);
  gad_opt("--lam", f.gad.lam, &GadParams::lam);

  auto ad2_opt = [&](const char* name, double& slot, double TwoQubitAdParams::*field) {
    CLI::Option* o = cmd->add_option(name, slot, "ad2 parameter");
    f.ad2_opts.emplace_back(o, [&slot, field](RunConfig& c) {
      if (!c.ad2) c.ad2 = TwoQubitAdParams{};
      (*c.ad2).*field = slot;
    });
  };
  ad2_opt("--gamma", f.ad2.gamma, &TwoQubitAdParams::gamma);
  ad2_opt("--gamma12", f.ad2.gamma12, &TwoQubitAdParams::gamma12);
  ad2_opt("--omega12", f.ad2.omega12, &TwoQubitAdParams::omega12);
  ad2_opt("--omega0", f.ad2.omega0, &TwoQubitAdParams::omega0);
  ad2_opt("--t", f.ad2.t, &TwoQubitAdParams::t);
}

void add_sweep_options(CLI::App* cmd, ChannelFlags& f) {
  auto sweep_opt = [&](CLI::Option* o, std::function<void(SweepRange&)> set) {
    f.sweep_opts.emplace_back(o, [set](RunConfig& c) {
      if (!c.sweep) c.sweep = SweepRange{};
      set(*c.sweep);
    });
  };
  sweep_opt(cmd->add_option("--t-min", f.sweep.t_min, "first time point"),
            [&f](SweepRange& s) { s.t_min = f.sweep.t_min; });
  sweep_opt(cmd->add_option("--t-max", f.sweep.t_max, "last time point"),
            [&f](SweepRange& s) { s.t_max = f.sweep.t_max; });
  sweep_opt(cmd->add_option("--steps", f.sweep.steps, "number of time points"),
            [&f](SweepRange& s) { s.steps = f.sweep.steps; });
}

// defaults < environment < config file < flags
RunConfig resolve_config(const ChannelFlags& f) {
  RunConfig cfg;
  cfg.tolerance = default_tolerance();
  if (!f.config_path.empty()) cfg = overlay_config(cfg, read_file(f.config_path));

  if (f.channel_opt->count() > 0) cfg.channel = f.channel;
  if (f.partition_opt->count() > 0) cfg.partition = f.partition;
  if (f.tolerance_opt->count() > 0) cfg.tolerance = f.tolerance;
  if (f.seed_opt != nullptr && f.seed_opt->count() > 0) cfg.seed = f.seed;
  if (f.cleanup_opt != nullptr && f.cleanup_opt->count() > 0) cfg.spectral_cleanup = true;

  for (const auto& [opt, apply] : f.gad_opts) {
    if (opt->count() == 0) continue;
    if (cfg.channel != "gad") throw UsageError(opt->get_name() + " applies to the gad channel");
    apply(cfg);
  }
  for (const auto& [opt, apply] : f.ad2_opts) {
    if (opt->count() == 0) continue;
    if (cfg.channel != "ad2") throw UsageError(opt->get_name() + " applies to the ad2 channel");
    apply(cfg);
  }
  for (const auto& [opt, apply] : f.sweep_opts) {
    if (opt->count() > 0) apply(cfg);
  }

  // A config file may carry both parameter blocks; only the selected one is kept.
  if (cfg.channel == "gad") {
    cfg.ad2.reset();
    if (!cfg.gad) cfg.gad = GadParams{};
  } else {
    cfg.gad.reset();
    if (!cfg.ad2) cfg.ad2 = TwoQubitAdParams{};
  }
  return cfg;
}

}  // namespace

KrausExport cmd_extract(const RunConfig& config) {
  config.validate();

  KrausExport e;
  e.channel = config.channel;
  e.gad = config.gad;
  e.ad2 = config.ad2;
  e.partition = config.partition;
  e.tolerance = config.tolerance;
  e.seed = config.seed;

  const PartitionKind kind = partition_kind(config.partition);
  std::optional<ChoiMatrix> choi;
  HermitianPartition parts;
  if (config.channel == "gad") {
    choi = choi_gad(*config.gad);
    parts = partition(*choi, PartitionStrategy{kind, {}});
  } else {
    const TwoQubitAdCoeffs c = ad2_coefficients(*config.ad2);
    choi = choi_2ad(c);
    parts = partition_2ad(c, kind);
  }

  SignedKrausSet ks = extract_signed_kraus(parts);
  const ChannelReport report = eb_report(*choi, config.tolerance);
  if (config.spectral_cleanup && report.is_cp && kind != PartitionKind::FullSpectral) {
    SignedKrausSet spectral = extract_signed_kraus(partition_full_spectral(*choi));
    if (spectral.size() < ks.size()) {
      ks = std::move(spectral);
      e.spectral_cleanup_applied = true;
    }
  }

  e.completeness_residual = check_completeness(ks);
  e.reconstruction_residual = max_abs_diff(reconstruct_choi(ks).matrix(), choi->matrix());
  e.operators = std::move(ks);
  e.is_cp = report.is_cp;
  e.min_choi_eigenvalue = report.min_choi_eigenvalue;
  e.is_trace_preserving = report.is_trace_preserving;
  e.ppt_of_choi = report.ppt_of_choi;
  e.min_pt_eigenvalue = report.min_pt_eigenvalue;
  e.separable_certified = report.separable_certified;
  return e;
}

VerifyReport cmd_verify(const KrausExport& e, VerifyOracle oracle, std::size_t samples) {
  std::function<ComplexMatrix(const ComplexMatrix&)> reference;
  std::size_t dim = 0;
  std::optional<ChoiMatrix> choi;
  if (e.channel == "gad") {
    if (!e.gad) throw IoError("export: gad parameters missing");
    dim = 2;
    const SignedKrausSet standard = gad_kraus(*e.gad);
    reference = [standard](const ComplexMatrix& rho) { return apply_signed_kraus(rho, standard); };
    choi = choi_gad(*e.gad);
  } else if (e.channel == "ad2") {
    if (!e.ad2) throw IoError("export: ad2 parameters missing");
    dim = 4;
    const TwoQubitAdCoeffs c = ad2_coefficients(*e.ad2);
    reference = [c](const ComplexMatrix& rho) { return ad2_apply(rho, c); };
    choi = choi_2ad(c);
  } else {
    throw IoError("export: unknown channel '" + e.channel + "'");
  }
  if (e.operators.dim != dim) throw IoError("export: operator dimension does not match channel");

  if (oracle == VerifyOracle::StandardKraus) {
    const SignedKrausSet standard = standard_kraus_from_choi(*choi);
    reference = [standard](const ComplexMatrix& rho) { return apply_signed_kraus(rho, standard); };
  }

  VerifyReport report;
  report.samples = samples;
  report.tolerance = e.tolerance;
  Rng rng(e.seed);
  for (std::size_t n = 0; n < samples; ++n) {
    const ComplexMatrix rho = random_density_matrix(dim, rng).matrix();
    report.max_deviation = std::max(
        report.max_deviation, max_abs_diff(apply_signed_kraus(rho, e.operators), reference(rho)));
  }
  return report;
}

std::vector<SweepRow> cmd_sweep(const RunConfig& config) {
  config.validate();
  if (config.channel != "ad2" || !config.sweep) {
    throw UsageError("sweep needs the ad2 channel and a time range");
  }
  const PartitionKind kind = partition_kind(config.partition);
  const SweepRange& range = *config.sweep;

  std::vector<SweepRow> rows(range.steps);
  for (std::size_t n = 0; n < range.steps; ++n) {
    TwoQubitAdParams at = *config.ad2;
    at.t = range.t_min +
           (range.t_max - range.t_min) * static_cast<double>(n) / static_cast<double>(range.steps - 1);
    const TwoQubitAdCoeffs c = ad2_coefficients(at);
    const ChoiMatrix b = choi_2ad(c);

    SweepRow& row = rows[n];
    row.t = at.t;
    row.coeffs = c;
    row.completeness_residual = check_completeness(extract_signed_kraus(partition_2ad(c, kind)));
    row.min_choi_eigenvalue = min_eigenvalue(b.matrix());
    row.mdc_ppt = is_ppt(reconstruct_choi(mdc_kraus(c)).matrix(), 4, 4, config.tolerance);
    row.pdc_ppt = is_ppt(reconstruct_choi(pdc_kraus(c)).matrix(), 4, 4, config.tolerance);
    row.pdc_concurrence = pdc_concurrence(c);
  }
  return rows;
}

std::string sweep_header() {
  return "t,A,B,C,D,E,F,G,H,abs_J,abs_L,abs_M,abs_P,abs_Q,abs_T,abs_U,abs_V,abs_R,abs_S,"
         "completeness_residual,min_choi_eigenvalue,mdc_ppt,pdc_ppt,pdc_concurrence\n";
}

std::string sweep_csv_row(const SweepRow& row) {
  const TwoQubitAdCoeffs& c = row.coeffs;
  std::string line = fmt(row.t);
  for (double x : {c.A, c.B, c.C, c.D, c.E, c.F, c.G, c.H}) line += "," + fmt(x);
  for (Complex z : {c.J, c.L, c.M, c.P, c.Q, c.T, c.U, c.V, c.R, c.S}) {
    line += "," + fmt(std::abs(z));
  }
  line += "," + fmt(row.completeness_residual) + "," + fmt(row.min_choi_eigenvalue);
  line += row.mdc_ppt ? ",1" : ",0";
  line += row.pdc_ppt ? ",1" : ",0";
  line += "," + fmt(row.pdc_concurrence) + "\n";
  return line;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Signed Kraus (operator sum-difference) extraction for quantum channels",
               "sumdiff"};
  app.require_subcommand(1);

  ChannelFlags extract_flags;
  CLI::App* extract = app.add_subcommand("extract", "build, partition and extract a channel");
  add_channel_options(extract, extract_flags);
  extract_flags.cleanup_opt = extract->add_flag(
      "--spectral-cleanup", extract_flags.spectral_cleanup,
      "use one spectral decomposition when the channel is CP and that gives fewer operators");

  std::string export_path;
  std::string against = "direct-action";
  std::size_t samples = 100;
  CLI::App* verify = app.add_subcommand("verify", "re-check an export against an oracle");
  verify->add_option("export", export_path, "export file")->required();
  verify->add_option("--against", against, "direct-action | standard-kraus")
      ->check(CLI::IsMember({"direct-action", "standard-kraus"}));
  verify->add_option("--samples", samples, "number of random states")
      ->check(CLI::PositiveNumber);

  ChannelFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "ad2 coefficients and diagnostics over time (CSV)");
  add_channel_options(sweep, sweep_flags);
  add_sweep_options(sweep, sweep_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*extract) {
      KrausExport e = cmd_extract(resolve_config(extract_flags));
      e.timestamp = utc_timestamp();
      write_text(export_to_string(e), extract_flags.out_path, out);
      if (!extract_flags.out_path.empty()) {
        out << "operators " << e.operators.positive.size() << " positive, "
            << e.operators.negative.size() << " negative\n"
            << "completeness_residual " << fmt(e.completeness_residual) << "\n"
            << "reconstruction_residual " << fmt(e.reconstruction_residual) << "\n";
      }
      if (!e.residuals_pass()) {
        err << "residuals exceed tolerance " << fmt(e.tolerance) << "\n";
        return kVerificationFailure;
      }
      return kPass;
    }
    if (*verify) {
      const KrausExport e = load_export(export_path);
      const VerifyReport r = cmd_verify(
          e, against == "standard-kraus" ? VerifyOracle::StandardKraus : VerifyOracle::DirectAction,
          samples);
      out << "samples " << r.samples << "\n"
          << "max_deviation " << fmt(r.max_deviation) << "\n"
          << "tolerance " << fmt(r.tolerance) << "\n"
          << (r.passed() ? "PASS" : "FAIL") << "\n";
      return r.passed() ? kPass : kVerificationFailure;
    }
    if (*sweep) {
      RunConfig cfg = resolve_config(sweep_flags);
      if (!cfg.sweep) throw UsageError("sweep needs --t-min/--t-max/--steps or a sweep block");
      const std::vector<SweepRow> rows = cmd_sweep(cfg);
      std::string csv = sweep_header();
      bool ok = true;
      for (const SweepRow& row : rows) {
        csv += sweep_csv_row(row);
        ok = ok && row.completeness_residual <= cfg.tolerance;
      }
      write_text(csv, sweep_flags.out_path, out);
      if (!ok) {
        err << "completeness residual exceeds tolerance in at least one row\n";
        return kVerificationFailure;
      }
      return kPass;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
  return kUsage;
}

}  // namespace sumdiff::cli
