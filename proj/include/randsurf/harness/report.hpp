#pragma once
// Command execution and serialization. Every report is a pure function of the
// resolved config; the worker count is deliberately not part of it.

#include "randsurf/chen_stein.hpp"
#include "randsurf/exact_oracle.hpp"
#include "randsurf/gluing.hpp"
#include "randsurf/harness/config.hpp"
#include "randsurf/harness/stats.hpp"
#include "randsurf/spectrum.hpp"
#include "randsurf/word_algebra.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace randsurf::harness {

using Json = nlohmann::ordered_json;

inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string fmt(const HighFloat& x) { return x.str(12); }
inline std::string fmt(const Rational& x) { return x.str(); }
inline std::string fmt(const BigInt& x) { return x.str(); }

inline Json log_number_json(const LogNumber& x) {
  Json j;
  j["log10"] = x.is_zero() ? std::string("-inf") : fmt(x.log10());
  j["clamped"] = fmt(x > LogNumber(1.0) ? 1.0 : x.value());
  return j;
}

inline Json estimate_json(const Estimate& e) { return Json{{"value", fmt(e.value)}, {"se", fmt(e.standard_error)}}; }

inline Json config_json(const ExperimentConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  j["n"] = cfg.n;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["max_word_len"] = cfg.max_word_len ? Json(*cfg.max_word_len) : Json();
  j["classes"] = cfg.classes ? Json(*cfg.classes) : Json();
  j["max_trace"] = cfg.max_trace ? Json(*cfg.max_trace) : Json();
  j["format"] = format_name(cfg.format);
  j["allow_n3"] = cfg.allow_n3;
  j["gluing"] = cfg.gluing ? Json(*cfg.gluing) : Json();
  return j;
}

inline Json class_json(const WordClass& c) {
  Json j;
  j["class"] = c.canonical.str();
  j["class_size"] = c.class_size;
  j["word_length"] = c.word_length;
  j["trace"] = fmt(c.trace);
  j["length"] = fmt(c.length());
  j["parabolic"] = c.parabolic();
  j["lambda"] = fmt(c.lambda);
  j["lambda_decimal"] = fmt(to_double(c.lambda));
  return j;
}

/// Flat table output: "# key=value" header lines, then a CSV table.
class CsvTable {
 public:
  CsvTable(const ExperimentConfig& cfg, std::vector<std::string> columns) : columns_(std::move(columns)) {
    meta("schema", kSchemaVersion);
    const Json config = config_json(cfg);
    for (const auto& [k, v] : config.items()) meta("config." + k, v.is_string() ? v.get<std::string>() : v.dump());
  }

  void meta(const std::string& key, const std::string& value) { head_ << "# " << key << '=' << value << '\n'; }

  void row(const std::vector<std::string>& cells) {
    require(cells.size() == columns_.size(), "csv row width mismatch");
    rows_.push_back(cells);
  }

  std::string str() const {
    std::ostringstream out;
    out << head_.str();
    write(out, columns_);
    for (const auto& r : rows_) write(out, r);
    return out.str();
  }

 private:
  static void write(std::ostringstream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  }

  std::ostringstream head_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

inline Json report_root(const ExperimentConfig& cfg) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["config"] = config_json(cfg);
  return j;
}

inline std::string finish(const Json& j) { return j.dump(2) + "\n"; }

inline std::string cmd_words(const ExperimentConfig& cfg) {
  require(cfg.max_word_len.has_value() != cfg.max_trace.has_value(), "words needs exactly one of --max-len, --max-trace");
  const auto classes =
      cfg.max_trace ? enumerate_classes_by_trace(*cfg.max_trace).classes : enumerate_classes_by_length(*cfg.max_word_len);
  if (cfg.format == OutputFormat::csv) {
    CsvTable t(cfg, {"class", "class_size", "word_length", "trace", "length", "parabolic", "lambda"});
    t.meta("count", std::to_string(classes.size()));
    for (const auto& c : classes)
      t.row({c.canonical.str(), std::to_string(c.class_size), std::to_string(c.word_length), fmt(c.trace),
             fmt(c.length()), c.parabolic() ? "1" : "0", fmt(c.lambda)});
    return t.str();
  }
  Json j = report_root(cfg);
  j["count"] = classes.size();
  j["classes"] = Json::array();
  for (const auto& c : classes) j["classes"].push_back(class_json(c));
  return finish(j);
}

inline Json bound_json(const BoundReport& b) {
  Json j;
  j["n"] = fmt(b.n_half);
  j["class_count"] = b.classes.size();
  j["m_w"] = b.m_w;
  j["c_w"] = b.c_w;
  j["main_bound"] = log_number_json(b.main_bound);
  j["refined_mtv_bound"] = log_number_json(b.refined_mtv_bound);
  if (b.main_exact) j["main_bound"]["exact"] = fmt(*b.main_exact);
  if (b.refined_exact) j["refined_mtv_bound"]["exact"] = fmt(*b.refined_exact);
  j["refined_within_main"] = b.refined_within_main();
  j["sigma"] = Json::array();
  for (std::size_t i = 0; i < b.classes.size(); ++i) {
    const auto& s = b.sigma[i];
    Json row;
    row["class"] = b.classes[i].canonical.str();
    row["sigma1"] = log_number_json(s.s1_class);
    row["sigma2"] = log_number_json(s.s2_class);
    row["sigma3"] = log_number_json(s.s3_class);
    row["sigma4"] = log_number_json(s.s4_class);
    j["sigma"].push_back(row);
  }
  return j;
}

inline std::string cmd_bound(const ExperimentConfig& cfg) {
  const BigInt n = parse_big_n(cfg.n);
  const auto classes = resolve_classes(cfg);
  require(!classes.empty(), "class list must be nonempty");
  const BoundReport b = evaluate_bounds(classes, n);
  if (cfg.format == OutputFormat::csv) {
    CsvTable t(cfg, {"class", "lambda", "sigma1_log10", "sigma2_log10", "sigma3_log10", "sigma4_log10"});
    t.meta("main_bound_log10", fmt(b.main_bound.log10()));
    t.meta("refined_mtv_bound_log10", fmt(b.refined_mtv_bound.log10()));
    t.meta("refined_within_main", b.refined_within_main() ? "true" : "false");
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const auto& s = b.sigma[i];
      t.row({classes[i].canonical.str(), fmt(classes[i].lambda), fmt(s.s1_class.log10()), fmt(s.s2_class.log10()),
             fmt(s.s3_class.log10()), fmt(s.s4_class.log10())});
    }
    return t.str();
  }
  Json j = report_root(cfg);
  j["bound"] = bound_json(b);
  return finish(j);
}

inline std::string cmd_stats(const ExperimentConfig& cfg) {
  const std::uint32_t n = parse_small_n(cfg.n);
  const auto classes = resolve_classes(cfg);
  const StatsReport r = run_stats(n, cfg.samples, cfg.seed, classes, cfg.workers);
  if (cfg.format == OutputFormat::csv) {
    CsvTable t(cfg, {"class", "lambda", "mean", "mean_se", "variance", "tv", "tv_se", "sample_count"});
    t.meta("joint_tv", fmt(r.joint_tv.value));
    t.meta("joint_tv_se", fmt(r.joint_tv.standard_error));
    t.meta("connected_fraction", fmt(r.topology.connected_fraction.value));
    t.meta("mean_genus", fmt(r.topology.mean_genus.value));
    t.meta("mean_cusps", fmt(r.topology.mean_cusps.value));
    for (const auto& c : r.classes)
      t.row({c.cls.canonical.str(), fmt(c.cls.lambda), fmt(c.mean.value), fmt(c.mean.standard_error), fmt(c.variance),
             fmt(c.tv.value), fmt(c.tv.standard_error), std::to_string(r.sample_count)});
    return t.str();
  }
  Json j = report_root(cfg);
  j["sample_count"] = r.sample_count;
  j["classes"] = Json::array();
  for (const auto& c : r.classes) {
    Json row;
    row["class"] = c.cls.canonical.str();
    row["lambda"] = fmt(c.cls.lambda);
    row["mean"] = estimate_json(c.mean);
    row["variance"] = fmt(c.variance);
    row["tv"] = estimate_json(c.tv);
    row["sample_count"] = r.sample_count;
    j["classes"].push_back(row);
  }
  j["covariances"] = Json::array();
  for (const auto& c : r.covariances)
    j["covariances"].push_back({{"first", r.classes[c.first].cls.canonical.str()},
                                {"second", r.classes[c.second].cls.canonical.str()},
                                {"covariance", estimate_json(c.covariance)}});
  j["joint_tv"] = estimate_json(r.joint_tv);
  j["bounds"] = r.bounds ? bound_json(*r.bounds) : Json("undefined: m_W > N");
  j["topology"] = {{"connected_fraction", estimate_json(r.topology.connected_fraction)},
                   {"mean_genus", estimate_json(r.topology.mean_genus)},
                   {"mean_cusps", estimate_json(r.topology.mean_cusps)}};
  return finish(j);
}

inline std::string cmd_oracle(const ExperimentConfig& cfg) {
  const std::uint32_t n = parse_small_n(cfg.n);
  const auto classes = resolve_classes(cfg);
  const ExactSystem sys = exact_joint_distribution(classes, n, cfg.workers, cfg.allow_n3);
  std::optional<BoundReport> bounds;
  if (BigInt(max_word_length(classes)) <= BigInt(n)) bounds = evaluate_bounds(classes, BigInt(n));
  if (cfg.format == OutputFormat::csv) {
    CsvTable t(cfg, {"class", "lambda", "exact_mean", "exact_mean_decimal"});
    t.meta("gluing_count", fmt(sys.gluing_count));
    t.meta("exact_mtv", fmt(sys.exact_mtv));
    for (std::size_t i = 0; i < classes.size(); ++i)
      t.row({classes[i].canonical.str(), fmt(classes[i].lambda), fmt(sys.exact_means[i]),
             fmt(to_double(sys.exact_means[i]))});
    return t.str();
  }
  Json j = report_root(cfg);
  j["gluing_count"] = fmt(sys.gluing_count);
  j["classes"] = Json::array();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    Json row = class_json(classes[i]);
    row["exact_mean"] = fmt(sys.exact_means[i]);
    row["exact_mean_decimal"] = fmt(to_double(sys.exact_means[i]));
    j["classes"].push_back(row);
  }
  j["exact_mtv"] = fmt(sys.exact_mtv);
  if (bounds) {
    j["bounds"] = bound_json(*bounds);
    j["exact_mtv_within_main_bound"] = LogNumber(sys.exact_mtv.convert_to<double>()) <= bounds->main_bound;
  } else {
    j["bounds"] = "undefined: m_W > N";
  }
  j["joint_law"] = Json::array();
  for (const auto& [v, c] : sys.tallies)
    j["joint_law"].push_back({{"counts", v.values}, {"gluings", fmt(c)}, {"probability", fmt(sys.joint_law.probability(v))}});
  return finish(j);
}

/// "a-b,c-d,..." into a gluing on 6N labels.
inline Gluing parse_gluing(std::uint32_t n_half, const std::string& text) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto dash = item.find('-');
    require(dash != std::string::npos, "gluing pairs must look like a-b, got '" + item + "'");
    try {
      pairs.emplace_back(std::stoul(item.substr(0, dash)), std::stoul(item.substr(dash + 1)));
    } catch (const std::logic_error&) {
      throw PreconditionError("gluing pairs must look like a-b, got '" + item + "'");
    }
  }
  return Gluing::from_pairs(n_half, pairs);
}

inline std::string cmd_spectrum(const ExperimentConfig& cfg) {
  require(cfg.gluing.has_value(), "spectrum needs --gluing");
  require(cfg.max_word_len.has_value(), "spectrum needs --max-word-len");
  const Gluing g = parse_gluing(parse_small_n(cfg.n), *cfg.gluing);
  const SpectrumReport r = count_cycles(g, *cfg.max_word_len);
  if (cfg.format == OutputFormat::csv) {
    CsvTable t(cfg, {"class", "count", "length", "parabolic"});
    t.meta("cusp_count", std::to_string(r.topology.cusp_count));
    t.meta("total_genus", std::to_string(r.topology.total_genus));
    t.meta("connected", r.topology.connected ? "true" : "false");
    for (const auto& [c, k] : r.counts)
      t.row({c.canonical.str(), std::to_string(k), fmt(c.length()), c.parabolic() ? "1" : "0"});
    return t.str();
  }
  Json j = report_root(cfg);
  j["counts"] = Json::array();
  for (const auto& [c, k] : r.counts) {
    Json row = class_json(c);
    row["count"] = k;
    j["counts"].push_back(row);
  }
  j["shortest_geodesic_length"] = r.shortest_geodesic_length ? Json(fmt(*r.shortest_geodesic_length)) : Json();
  const auto& t = r.topology;
  j["topology"] = {{"connected", t.connected},         {"component_count", t.component_count},
                   {"cusp_count", t.cusp_count},       {"euler_characteristic", t.euler_characteristic},
                   {"total_genus", t.total_genus},     {"cusp_degrees", t.cusp_degrees}};
  return finish(j);
}

inline std::string run_command(const ExperimentConfig& cfg) {
  if (cfg.command == "words") return cmd_words(cfg);
  if (cfg.command == "stats") return cmd_stats(cfg);
  if (cfg.command == "bound") return cmd_bound(cfg);
  if (cfg.command == "oracle") return cmd_oracle(cfg);
  if (cfg.command == "spectrum") return cmd_spectrum(cfg);
  throw PreconditionError("unknown command '" + cfg.command + "'");
}

}  // namespace randsurf::harness
