#include "relax/records_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "relax/errors.hpp"

namespace relax {
namespace {

constexpr const char* kLayerColumns[kLayerCount] = {"r_ILM", "r_NFLIPL", "r_INL", "r_OPL",
                                                    "r_ONLISM", "r_ISE", "r_OSRPE"};

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Header-indexed CSV table. Blank lines are skipped.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw ValidationError("CSV is missing column '" + name + "'");
  }
  std::optional<std::size_t> maybe_column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    return std::nullopt;
  }
};

Table parse_table(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (trim(line).empty()) continue;
    auto cells = split(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw ValidationError("CSV line " + std::to_string(n) + " has " + std::to_string(cells.size()) +
                            " fields, header has " + std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(cells));
    t.line_numbers.push_back(n);
  }
  if (t.header.empty()) throw ValidationError("CSV is empty");
  return t;
}

double parse_number(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("CSV line " + std::to_string(line) + ": '" + s + "' is not a finite number");
  }
}

std::optional<OctClass> optional_class(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_class(s);
}

std::array<double, kLayerCount> json_layers(const nlohmann::json& j, const char* key, const std::string& cls) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != kLayerCount) {
    throw ValidationError("profile '" + cls + "' needs a 7-element '" + key + "' array");
  }
  std::array<double, kLayerCount> out{};
  for (std::size_t i = 0; i < kLayerCount; ++i) out[i] = j[key][i].get<double>();
  return out;
}

// Classes appear either by name or by index in CNV, DME, DRUSEN, NORMAL order.
OctClass manifest_class(const nlohmann::json& v) {
  if (v.is_number_integer()) {
    const auto i = v.get<long long>();
    if (i < 0 || i >= static_cast<long long>(kClassCount)) {
      throw ValidationError("class index " + std::to_string(i) + " is out of range");
    }
    return kAllClasses[static_cast<std::size_t>(i)];
  }
  return parse_class(v.get<std::string>());
}

}  // namespace

std::string format_attribution_csv(const std::vector<AttributionRecord>& records) {
  std::string out = "scan_id,predicted_class,true_class";
  for (const char* col : kLayerColumns) out += std::string(",") + col;
  out += '\n';
  for (const auto& rec : records) {
    out += rec.scan_id + ',' + std::string(class_name(rec.predicted)) + ',';
    if (rec.truth) out += class_name(*rec.truth);
    for (double v : rec.attribution.r) out += ',' + fixed(v, 4);
    out += '\n';
  }
  return out;
}

std::vector<AttributionRecord> parse_attribution_csv(const std::string& text) {
  const Table t = parse_table(text);
  const auto id = t.column("scan_id");
  const auto pred = t.column("predicted_class");
  const auto truth = t.maybe_column("true_class");
  std::array<std::size_t, kLayerCount> layer_cols{};
  for (std::size_t i = 0; i < kLayerCount; ++i) layer_cols[i] = t.column(kLayerColumns[i]);

  std::vector<AttributionRecord> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    AttributionRecord rec{row[id], parse_class(row[pred]), truth ? optional_class(row[*truth]) : std::nullopt, {}};
    for (std::size_t i = 0; i < kLayerCount; ++i) {
      rec.attribution.r[i] = parse_number(row[layer_cols[i]], t.line_numbers[r]);
      if (rec.attribution.r[i] < 0.0) {
        throw ValidationError("CSV line " + std::to_string(t.line_numbers[r]) + ": negative attribution");
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::string format_profiles_json(const std::map<OctClass, ClassProfile>& profiles) {
  const auto list = [](const std::array<double, kLayerCount>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fixed(v[i], 6);
    return s + "]";
  };
  std::string out = "{";
  bool first = true;
  for (const auto& [cls, p] : profiles) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "  \"" + std::string(class_name(cls)) + "\": {\"mean\": " + list(p.mean) + ", \"std\": " + list(p.std) +
           ", \"n\": " + std::to_string(p.n) + "}";
  }
  out += first ? "}\n" : "\n}\n";
  return out;
}

std::map<OctClass, ClassProfile> parse_profiles_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("profiles JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("profiles JSON must be an object keyed by class");
  std::map<OctClass, ClassProfile> out;
  try {
    for (const auto& [name, body] : j.items()) {
      ClassProfile p{parse_class(name), json_layers(body, "mean", name), json_layers(body, "std", name),
                     body.at("n").get<std::size_t>()};
      for (double s : p.std)
        if (s < 0.0) throw ValidationError("profile '" + name + "' has a negative std");
      if (p.n < 2) throw ValidationError("profile '" + name + "' needs n >= 2");
      out.emplace(p.cls, p);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("profiles JSON: ") + e.what());
  }
  return out;
}

std::string format_deviation_csv(const std::vector<ScoredRecord>& scored) {
  std::string out = "scan_id,layer,observed,difference,z,flagged\n";
  for (const auto& s : scored) {
    for (std::size_t i = 0; i < kLayerCount; ++i) {
      const auto& l = s.report.layers[i];
      bool offending = false;
      for (auto o : s.decision.offending_layers) offending |= (o == i);
      out += s.scan_id + ',' + kLayerNames[i] + ',' + fixed(l.observed, 6) + ',' + fixed(l.difference, 6) + ',' +
             (l.z ? fixed(*l.z, 6) : std::string("undefined")) + ',' + (offending ? "1" : "0") + '\n';
    }
  }
  return out;
}

std::vector<DeviationRow> parse_deviation_csv(const std::string& text) {
  const Table t = parse_table(text);
  const auto id = t.column("scan_id"), layer = t.column("layer"), obs = t.column("observed"),
             diff = t.column("difference");
  std::vector<DeviationRow> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    out.push_back({row[id], row[layer], parse_number(row[obs], t.line_numbers[r]),
                   parse_number(row[diff], t.line_numbers[r])});
  }
  return out;
}

std::string format_histogram_csv(const HistogramData& h) {
  std::string out = "bin_left,bin_right,count\n";
  for (const auto& b : h.bins) out += fixed(b.left, 6) + ',' + fixed(b.right, 6) + ',' + std::to_string(b.count) + '\n';
  return out;
}

std::vector<std::pair<OctClass, OctClass>> parse_pairs_csv(const std::string& text) {
  const Table t = parse_table(text);
  const auto truth = t.column("truth"), pred = t.column("predicted");
  std::vector<std::pair<OctClass, OctClass>> out;
  for (const auto& row : t.rows) out.emplace_back(parse_class(row[truth]), parse_class(row[pred]));
  return out;
}

std::string format_metrics_json(const ConfusionMatrix& m, const MetricsSummary& s) {
  nlohmann::ordered_json j;
  j["classes"] = nlohmann::json::array();
  for (OctClass c : kAllClasses) j["classes"].push_back(class_name(c));
  j["confusion"] = m.counts;
  j["total"] = m.total();
  j["accuracy"] = s.accuracy;
  nlohmann::ordered_json per_class;
  for (std::size_t c = 0; c < kClassCount; ++c) {
    const auto& cm = s.per_class[c];
    per_class[std::string(class_name(kAllClasses[c]))] = {
        {"precision", cm.precision}, {"recall", cm.recall}, {"f1", cm.f1}};
  }
  j["per_class"] = per_class;
  j["macro"] = {{"precision", s.macro.precision}, {"recall", s.macro.recall}, {"f1", s.macro.f1}};
  j["warnings"] = s.warnings;
  return j.dump(2) + "\n";
}

std::map<std::string, Prediction> parse_predictions_csv(const std::string& text) {
  const Table t = parse_table(text);
  const auto id = t.column("scan_id"), pred = t.column("predicted");
  const auto truth = t.maybe_column("truth");
  std::map<std::string, Prediction> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    Prediction p{parse_class(row[pred]), truth ? optional_class(row[*truth]) : std::nullopt};
    if (!out.emplace(row[id], p).second) {
      throw ValidationError("CSV line " + std::to_string(t.line_numbers[r]) + ": duplicate scan_id " + row[id]);
    }
  }
  return out;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  const auto base = path.parent_path();
  std::vector<ManifestEntry> out;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& scan : j.at("scans")) {
      ManifestEntry e;
      e.id = scan.at("id").get<std::string>();
      const auto resolve = [&](const char* key) {
        std::filesystem::path p = scan.at(key).get<std::string>();
        return p.is_absolute() ? p : base / p;
      };
      e.acts = resolve("acts");
      e.grads = resolve("grads");
      e.labels = resolve("labels");
      e.predicted = manifest_class(scan.at("predicted"));
      if (scan.contains("truth") && !scan["truth"].is_null()) e.truth = manifest_class(scan["truth"]);
      e.target = scan.value("target", static_cast<int>(index_of(e.predicted)));
      out.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace relax
