#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "natcorpus/corpus.hpp"
#include "natcorpus/upos.hpp"

namespace natcorpus {

using PosNgram = std::vector<Upos>;

inline constexpr double kPerNgramsScale = 40000.0;

std::string to_string(const PosNgram& pattern);  // "(ADJ, CCONJ, ADJ)"

struct PosNgramTable {
  std::size_t n = 0;
  std::map<PosNgram, std::uint64_t> counts;
  std::uint64_t total = 0;

  std::uint64_t count(const PosNgram& pattern) const;
  // 40000 * count / total.
  double per_40k(const PosNgram& pattern) const;
};

// Sliding windows over the UPOS sequence of each sentence; windows never span
// sentence boundaries. Throws kInvalidArgument for n < 2, kMissingAnnotation
// for token-only sentences and kEmptyStream when no window fits.
PosNgramTable extract_pos_ngrams(const Corpus& corpus, std::size_t n);

// log2(model + 0.5) - log2(native + 0.5) on per-40k frequencies; written as a
// difference so that swapping the arguments negates it exactly.
double contrast_score(double model_per_40k, double native_per_40k);

struct ContrastEntry {
  PosNgram pattern;
  double model_per_40k = 0.0;
  double native_per_40k = 0.0;
  std::optional<double> reference_per_40k;
  double score = 0.0;
  std::vector<std::vector<std::string>> examples;
};

// Ranks the patterns seen in either table by contrast score (descending),
// breaking ties by higher model frequency and then by tag-name order. With a
// reference table, only patterns more frequent in the reference than in the
// native table are kept. Throws kShape when the tables disagree on n.
std::vector<ContrastEntry> contrast_patterns(const PosNgramTable& model, const PosNgramTable& native,
                                             const PosNgramTable* reference, std::size_t top_k);

// First k distinct surface realizations of `pattern`, in document order.
std::vector<std::vector<std::string>> example_ngrams(const Corpus& corpus, const PosNgram& pattern, std::size_t k);

}  // namespace natcorpus
