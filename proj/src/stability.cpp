#include "natcorpus/stability.hpp"

#include <algorithm>
#include <cmath>

#include "natcorpus/error.hpp"
#include "natcorpus/lexdiv.hpp"
#include "natcorpus/parallel.hpp"

namespace natcorpus {

std::string_view to_string(Metric metric) {
  return metric == Metric::kLexical ? "lexical" : "syntactic";
}

std::optional<Metric> parse_metric(std::string_view name) {
  if (name == "lexical") return Metric::kLexical;
  if (name == "syntactic") return Metric::kSyntactic;
  return std::nullopt;
}

double compute_metric(Metric metric, const Corpus& a, const Corpus& b, const MetricOptions& options) {
  if (metric == Metric::kLexical) {
    const auto words_a = lexical_word_stream(a, options.fold_case);
    const auto words_b = lexical_word_stream(b, options.fold_case);
    return lexical_divergence(build_freq_dist(words_a), build_freq_dist(words_b));
  }
  return syntactic_divergence(a, b, options.syntactic);
}

std::pair<Corpus, Corpus> split_halves(const Corpus& corpus, std::uint64_t seed) {
  const std::size_t n = corpus.documents.size();
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "a human reference split needs at least 2 documents");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Sampler sampler(seed);
  sampler.shuffle(std::span<std::size_t>(order));

  const std::size_t first_size = (n + 1) / 2;
  std::pair<Corpus, Corpus> halves;
  halves.first.language = corpus.language;
  halves.second.language = corpus.language;
  for (std::size_t i = 0; i < n; ++i) {
    auto& half = i < first_size ? halves.first : halves.second;
    half.documents.push_back(corpus.documents[order[i]]);
  }
  return halves;
}

double human_reference(const Corpus& corpus, Metric metric, std::uint64_t seed, const MetricOptions& options) {
  const auto [first, second] = split_halves(corpus, seed);
  return compute_metric(metric, first, second, options);
}

Corpus subsample_documents(const Corpus& corpus, double fraction, Sampler& sampler) {
  const std::size_t n = corpus.documents.size();
  const auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  if (count == 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "fraction " + std::to_string(fraction) + " of " + std::to_string(n) + " documents selects none");
  }
  Corpus subset;
  subset.language = corpus.language;
  for (auto index : sampler.sample_indices(n, count)) subset.documents.push_back(corpus.documents[index]);
  return subset;
}

VariationReport summarize(std::vector<double> values) {
  VariationReport report;
  report.values = std::move(values);
  if (report.values.empty()) return report;
  const auto [lo, hi] = std::minmax_element(report.values.begin(), report.values.end());
  report.min = *lo;
  report.max = *hi;
  double sum = 0.0;
  for (double v : report.values) sum += v;
  // The rounded mean of equal values can land one ulp outside [min, max].
  report.mean = std::clamp(sum / static_cast<double>(report.values.size()), report.min, report.max);
  report.rel_interval = report.mean == 0.0 ? 0.0 : (report.max - report.min) / report.mean;
  return report;
}

VariationReport bootstrap_variation(Metric metric, const Corpus& a, const Corpus& b, std::size_t k,
                                    double subset_fraction, std::uint64_t seed,
                                    const MetricOptions& options, std::size_t threads) {
  if (k < 2) throw Error(ErrorKind::kInvalidArgument, "bootstrap needs at least 2 randomizations");
  if (!(subset_fraction > 0.0 && subset_fraction <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "subset fraction must lie in (0, 1]");
  }
  // Parallelism goes to the outer loop; each iteration runs single-threaded.
  MetricOptions inner = options;
  if (threads > 1) inner.syntactic.threads = 1;

  std::vector<double> values(k);
  parallel_for(k, threads, [&](std::size_t i) {
    try {
      Sampler sampler_a(seed + i);
      Sampler sampler_b(seed + i);
      const auto sub_a = subsample_documents(a, subset_fraction, sampler_a);
      const auto sub_b = subsample_documents(b, subset_fraction, sampler_b);
      values[i] = compute_metric(metric, sub_a, sub_b, inner);
    } catch (const Error& e) {
      throw Error(e.kind(), "bootstrap iteration " + std::to_string(i) + ": " + e.what());
    }
  });
  return summarize(std::move(values));
}

}  // namespace natcorpus
