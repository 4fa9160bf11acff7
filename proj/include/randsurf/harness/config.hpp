#pragma once
// Resolved experiment parameters shared by every command.

#include "randsurf/common.hpp"
#include "randsurf/word_algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace randsurf::harness {

inline constexpr const char* kSchemaVersion = "randsurf-report/1";

enum class OutputFormat { json, csv };

struct ExperimentConfig {
  std::string command;
  std::string n = "1";  // decimal; bound accepts N far beyond 32 bits
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  std::optional<std::size_t> max_word_len;
  std::optional<std::string> classes;
  std::optional<std::uint64_t> max_trace;
  OutputFormat format = OutputFormat::json;
  std::size_t workers = 1;
  bool allow_n3 = false;
  std::optional<std::string> gluing;  // spectrum: "a-b,c-d,..."
};

inline BigInt parse_big_n(const std::string& text) {
  require(!text.empty() && text.find_first_not_of("0123456789") == std::string::npos,
          "--n must be a positive decimal integer, got '" + text + "'");
  const BigInt n(text);
  require(n >= 1, "--n must be at least 1");
  return n;
}

/// N for commands that build gluings; these need 6N labels in 32 bits.
inline std::uint32_t parse_small_n(const std::string& text) {
  const BigInt n = parse_big_n(text);
  require(n <= 100'000'000, "--n above 10^8 is only supported by the bound command");
  return n.convert_to<std::uint32_t>();
}

/// Class set from --classes, else --max-trace (W(k)), else --max-word-len
/// (every class of that length or shorter, parabolic ones included).
inline std::vector<WordClass> resolve_classes(const ExperimentConfig& cfg) {
  const int given = int(cfg.classes.has_value()) + int(cfg.max_trace.has_value()) + int(cfg.max_word_len.has_value());
  require(given == 1, "give exactly one of --classes, --max-trace, --max-word-len");
  if (cfg.classes) return parse_class_list(*cfg.classes);
  if (cfg.max_trace) return enumerate_classes_by_trace(*cfg.max_trace).classes;
  return enumerate_classes_by_length(*cfg.max_word_len);
}

inline const char* format_name(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv"; }

}  // namespace randsurf::harness
