#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "sumdiff_cli/cli.hpp"

namespace sumdiff::cli {
namespace {

using json = nlohmann::ordered_json;

const char* const kPartitions[] = {"diag-pairs", "split-real-imag", "full-spectral"};

bool known_partition(const std::string& name) {
  for (const char* p : kPartitions) {
    if (name == p) return true;
  }
  return false;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* key : allowed) ok = ok || item.key() == key;
    if (!ok) throw UsageError("config: unknown key '" + item.key() + "' in " + where);
  }
}

template <typename T>
void take(const json& obj, const char* key, T& slot) {
  if (obj.contains(key)) slot = obj.at(key).get<T>();
}

json gad_to_json(const GadParams& g) { return {{"p", g.p}, {"lam", g.lam}}; }

json ad2_to_json(const TwoQubitAdParams& a) {
  return {{"gamma", a.gamma},     {"gamma12", a.gamma12}, {"omega12", a.omega12},
          {"omega0", a.omega0},   {"t", a.t}};
}

GadParams gad_from_json(const json& j, GadParams g = {}) {
  take(j, "p", g.p);
  take(j, "lam", g.lam);
  return g;
}

TwoQubitAdParams ad2_from_json(const json& j, TwoQubitAdParams a = {}) {
  take(j, "gamma", a.gamma);
  take(j, "gamma12", a.gamma12);
  take(j, "omega12", a.omega12);
  take(j, "omega0", a.omega0);
  take(j, "t", a.t);
  return a;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& rows) {
  if (!rows.is_array()) throw IoError("export: matrix must be an array of rows");
  ComplexMatrix m(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const json& row = rows[r];
    if (!row.is_array() || row.size() != rows.size()) {
      throw IoError("export: matrix must be square");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      const json& z = row[c];
      if (!z.is_array() || z.size() != 2) throw IoError("export: entries are [re, im] pairs");
      m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

json operators_to_json(const std::vector<ComplexMatrix>& ops, const std::vector<std::string>& labels) {
  json list = json::array();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    list.push_back({{"label", i < labels.size() ? labels[i] : std::string()},
                    {"matrix", matrix_to_json(ops[i])}});
  }
  return list;
}

bool same_params(const std::optional<GadParams>& a, const std::optional<GadParams>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (a->p == b->p && a->lam == b->lam);
}

bool same_params(const std::optional<TwoQubitAdParams>& a,
                 const std::optional<TwoQubitAdParams>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (a->gamma == b->gamma && a->gamma12 == b->gamma12 && a->omega12 == b->omega12 &&
                a->omega0 == b->omega0 && a->t == b->t);
}

}  // namespace

void RunConfig::validate() const {
  if (channel != "gad" && channel != "ad2") {
    throw UsageError("channel must be 'gad' or 'ad2', got '" + channel + "'");
  }
  if (!known_partition(partition)) throw UsageError("unknown partition '" + partition + "'");
  if (!(std::isfinite(tolerance) && tolerance > 0.0)) {
    throw UsageError("tolerance must be a positive finite number");
  }
  if (channel == "gad") {
    if (!gad || ad2) throw UsageError("channel gad needs gad parameters only");
    if (partition == "split-real-imag") {
      throw UsageError("split-real-imag is only defined for the ad2 channel");
    }
    if (sweep) throw UsageError("sweeps are only defined for the ad2 channel");
    gad->validate();
  } else {
    if (!ad2 || gad) throw UsageError("channel ad2 needs ad2 parameters only");
    ad2->validate();
  }
  if (sweep) {
    if (!(std::isfinite(sweep->t_min) && std::isfinite(sweep->t_max)) || sweep->t_min < 0.0 ||
        !(sweep->t_min < sweep->t_max)) {
      throw UsageError("sweep needs 0 <= t_min < t_max");
    }
    if (sweep->steps < 2) throw UsageError("sweep needs steps >= 2");
  }
}

double default_tolerance() {
  const char* raw = std::getenv(kToleranceEnv);
  if (raw == nullptr || *raw == '\0') return kDefaultTolerance;
  char* end = nullptr;
  const double value = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !std::isfinite(value) || value <= 0.0) {
    throw UsageError(std::string(kToleranceEnv) + " is not a positive number: " + raw);
  }
  return value;
}

RunConfig overlay_config(RunConfig base, const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("config: ") + e.what());
  }
  if (!root.is_object()) throw UsageError("config: top level must be an object");
  try {
    reject_unknown_keys(root,
                        {"channel", "partition", "tolerance", "seed", "spectral_cleanup", "gad",
                         "ad2", "sweep"},
                        "top level");
    take(root, "channel", base.channel);
    take(root, "partition", base.partition);
    take(root, "tolerance", base.tolerance);
    take(root, "seed", base.seed);
    take(root, "spectral_cleanup", base.spectral_cleanup);
    if (root.contains("gad")) {
      reject_unknown_keys(root["gad"], {"p", "lam"}, "gad");
      base.gad = gad_from_json(root["gad"], base.gad.value_or(GadParams{}));
    }
    if (root.contains("ad2")) {
      reject_unknown_keys(root["ad2"], {"gamma", "gamma12", "omega12", "omega0", "t"}, "ad2");
      base.ad2 = ad2_from_json(root["ad2"], base.ad2.value_or(TwoQubitAdParams{}));
    }
    if (root.contains("sweep")) {
      const json& s = root["sweep"];
      reject_unknown_keys(s, {"t_min", "t_max", "steps"}, "sweep");
      SweepRange range = base.sweep.value_or(SweepRange{});
      take(s, "t_min", range.t_min);
      take(s, "t_max", range.t_max);
      take(s, "steps", range.steps);
      base.sweep = range;
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return base;
}

bool operator==(const KrausExport& a, const KrausExport& b) {
  return a.channel == b.channel && same_params(a.gad, b.gad) && same_params(a.ad2, b.ad2) &&
         a.partition == b.partition && a.tolerance == b.tolerance && a.seed == b.seed &&
         a.timestamp == b.timestamp && a.spectral_cleanup_applied == b.spectral_cleanup_applied &&
         a.operators.dim == b.operators.dim && a.operators.positive == b.operators.positive &&
         a.operators.negative == b.operators.negative &&
         a.operators.positive_labels == b.operators.positive_labels &&
         a.operators.negative_labels == b.operators.negative_labels &&
         a.completeness_residual == b.completeness_residual &&
         a.reconstruction_residual == b.reconstruction_residual && a.is_cp == b.is_cp &&
         a.min_choi_eigenvalue == b.min_choi_eigenvalue &&
         a.is_trace_preserving == b.is_trace_preserving && a.ppt_of_choi == b.ppt_of_choi &&
         a.min_pt_eigenvalue == b.min_pt_eigenvalue &&
         a.separable_certified == b.separable_certified;
}

std::string export_to_string(const KrausExport& e) {
  json params = json::object();
  if (e.gad) params = gad_to_json(*e.gad);
  if (e.ad2) params = ad2_to_json(*e.ad2);

  json root;
  root["metadata"] = {{"channel", e.channel},
                      {"params", params},
                      {"partition", e.partition},
                      {"tolerance", e.tolerance},
                      {"seed", e.seed},
                      {"timestamp", e.timestamp},
                      {"spectral_cleanup", e.spectral_cleanup_applied},
                      {"dim", e.operators.dim}};
  root["operators"] = {
      {"positive", operators_to_json(e.operators.positive, e.operators.positive_labels)},
      {"negative", operators_to_json(e.operators.negative, e.operators.negative_labels)}};
  root["residuals"] = {{"completeness", e.completeness_residual},
                       {"reconstruction", e.reconstruction_residual}};
  root["report"] = {{"is_cp", e.is_cp},
                    {"min_choi_eigenvalue", e.min_choi_eigenvalue},
                    {"is_trace_preserving", e.is_trace_preserving},
                    {"ppt_of_choi", e.ppt_of_choi},
                    {"min_pt_eigenvalue", e.min_pt_eigenvalue},
                    {"separable_certified", e.separable_certified}};
  return root.dump(2) + "\n";
}

KrausExport export_from_string(const std::string& text) {
  KrausExport e;
  try {
    const json root = json::parse(text);
    const json& meta = root.at("metadata");
    e.channel = meta.at("channel").get<std::string>();
    e.partition = meta.at("partition").get<std::string>();
    e.tolerance = meta.at("tolerance").get<double>();
    e.seed = meta.at("seed").get<std::uint64_t>();
    e.timestamp = meta.at("timestamp").get<std::string>();
    e.spectral_cleanup_applied = meta.at("spectral_cleanup").get<bool>();
    e.operators.dim = meta.at("dim").get<std::size_t>();
    const json& params = meta.at("params");
    if (e.channel == "gad") {
      e.gad = gad_from_json(params);
      e.gad->validate();
    } else if (e.channel == "ad2") {
      e.ad2 = ad2_from_json(params);
      e.ad2->validate();
    } else {
      throw IoError("export: unknown channel '" + e.channel + "'");
    }

    const json& ops = root.at("operators");
    for (const char* sign : {"positive", "negative"}) {
      for (const json& item : ops.at(sign)) {
        ComplexMatrix m = matrix_from_json(item.at("matrix"));
        if (m.dim() != e.operators.dim) throw IoError("export: operator dimension mismatch");
        std::string label = item.at("label").get<std::string>();
        if (sign[0] == 'p') {
          e.operators.add_positive(std::move(m), std::move(label));
        } else {
          e.operators.add_negative(std::move(m), std::move(label));
        }
      }
    }
    const json& res = root.at("residuals");
    e.completeness_residual = res.at("completeness").get<double>();
    e.reconstruction_residual = res.at("reconstruction").get<double>();
    const json& rep = root.at("report");
    e.is_cp = rep.at("is_cp").get<bool>();
    e.min_choi_eigenvalue = rep.at("min_choi_eigenvalue").get<double>();
    e.is_trace_preserving = rep.at("is_trace_preserving").get<bool>();
    e.ppt_of_choi = rep.at("ppt_of_choi").get<bool>();
    e.min_pt_eigenvalue = rep.at("min_pt_eigenvalue").get<double>();
    e.separable_certified = rep.at("separable_certified").get<bool>();
  } catch (const json::exception& ex) {
    throw IoError(std::string("export: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw IoError(std::string("export: ") + ex.what());
  }
  return e;
}

void save_export(const KrausExport& e, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << export_to_string(e);
  if (!out) throw IoError("write to '" + path + "' failed");
}

KrausExport load_export(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return export_from_string(buf.str());
}

}  // namespace sumdiff::cli
