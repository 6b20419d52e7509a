#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "natcorpus/corpus.hpp"
#include "natcorpus/random.hpp"
#include "natcorpus/syndiv.hpp"

namespace natcorpus {

enum class Metric { kLexical, kSyntactic };

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view name);

struct MetricOptions {
  bool fold_case = false;
  SyntacticOptions syntactic;
};

// Divergence percentage between two corpora under the chosen metric.
double compute_metric(Metric metric, const Corpus& a, const Corpus& b, const MetricOptions& options = {});

// Seeded shuffle of the documents, then the first ceil(n/2) go to the first
// half and the rest to the second. Throws kInvalidArgument for < 2 documents.
std::pair<Corpus, Corpus> split_halves(const Corpus& corpus, std::uint64_t seed);

// Divergence between the two halves of split_halves(corpus, seed).
double human_reference(const Corpus& corpus, Metric metric, std::uint64_t seed, const MetricOptions& options = {});

// round(fraction * documents) documents drawn without replacement, kept in
// their original order.
Corpus subsample_documents(const Corpus& corpus, double fraction, Sampler& sampler);

struct VariationReport {
  std::vector<double> values;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double rel_interval = 0.0;  // (max - min) / mean, 0 when mean is 0
};

VariationReport summarize(std::vector<double> values);

// Iteration i subsamples `a` and `b` each with a fresh Sampler(seed + i), so
// corpora of equal size get the same document positions. Iterations may run on up to `threads` workers; the report
// does not depend on it. Errors are rethrown with the iteration index.
VariationReport bootstrap_variation(Metric metric, const Corpus& a, const Corpus& b, std::size_t k,
                                    double subset_fraction, std::uint64_t seed,
                                    const MetricOptions& options = {}, std::size_t threads = 1);

}  // namespace natcorpus
