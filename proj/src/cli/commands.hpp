#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "natcorpus/prefpairs.hpp"
#include "natcorpus/stability.hpp"

namespace natcorpus::cli {

using Path = std::filesystem::path;

struct LexdivOptions {
  Path reference;
  Path candidate;
  bool fold_case = false;
  std::size_t max_words = 60000;  // 0 disables sampling
  std::uint64_t seed = 0;
};

struct SyndivOptions {
  Path reference;
  Path candidate;
  std::size_t max_sentences = 3000;  // 0 disables sampling
  std::uint64_t seed = 0;
  int h = 2;
  std::optional<std::string> h_range;  // "LO:HI", overrides h
  bool prune_punct = false;
  std::optional<Path> export_kernel;
  std::size_t threads = 1;
};

struct PatternsOptions {
  Path model;
  Path native;
  std::optional<Path> reference;
  std::optional<Path> examples_from;  // defaults to the model corpus
  std::size_t n = 3;
  std::size_t top_k = 20;
  std::size_t examples = 3;
  std::string format = "json";  // or "tsv"
};

struct BaselineOptions {
  Path corpus;
  Metric metric = Metric::kLexical;
  std::uint64_t seed = 0;
  bool fold_case = false;
  int h = 2;
  bool prune_punct = false;
  std::size_t threads = 1;
};

struct BootstrapOptions {
  Path first;
  Path second;
  Metric metric = Metric::kLexical;
  std::size_t k = 10;
  double fraction = 0.5;
  std::uint64_t seed = 0;
  bool fold_case = false;
  int h = 2;
  bool prune_punct = false;
  std::size_t threads = 1;
};

struct PrefFilterOptions {
  Path input;
  FilterThresholds thresholds;
  std::optional<Path> out;
  std::optional<Path> rejected_out;
};

// Each returns the finished report JSON; errors propagate as natcorpus::Error.
nlohmann::ordered_json cmd_lexdiv(const LexdivOptions& options);
nlohmann::ordered_json cmd_syndiv(const SyndivOptions& options);
nlohmann::ordered_json cmd_patterns(const PatternsOptions& options, std::string* tsv);
nlohmann::ordered_json cmd_baseline(const BaselineOptions& options);
nlohmann::ordered_json cmd_bootstrap(const BootstrapOptions& options);
// Kept records go to options.out, or to `kept_stream` when no path is given.
nlohmann::ordered_json cmd_pref_filter(const PrefFilterOptions& options, std::ostream& kept_stream);

// Kernel export: row-major little-endian float32 at `path`, metadata at
// `path` + ".json".
void write_kernel_export(const Path& path, const KernelMatrix& matrix, const nlohmann::ordered_json& metadata);

}  // namespace natcorpus::cli
