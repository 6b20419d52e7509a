#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace natcorpus {

// Sentence-level BLEU with clipped n-gram precisions for n = 1..max_n,
// uniform weights and the standard brevity penalty. Orders >= 2 use add-one
// smoothing; unigram precision is not smoothed and a zero unigram match
// short-circuits to 0. Throws kInvalidArgument on empty input.
double sentence_bleu(std::span<const std::string> reference, std::span<const std::string> hypothesis,
                     std::size_t max_n = 4);

struct PreferencePair {
  std::string prompt;
  std::string chosen;
  std::string rejected;
  std::vector<std::string> chosen_tokens;
  std::vector<std::string> rejected_tokens;
  double bleu = 0.0;  // sentence_bleu(chosen_tokens, rejected_tokens)
  std::size_t chosen_len = 0;
  std::size_t rejected_len = 0;

  // Fills bleu and the lengths from the token lists.
  static PreferencePair make(std::string prompt, std::string chosen, std::string rejected,
                             std::vector<std::string> chosen_tokens, std::vector<std::string> rejected_tokens);
};

enum class FilterReason { kOk, kBleuTooLow, kBleuTooHigh, kChosenTooShort, kRejectedTooShort };

inline constexpr std::array<FilterReason, 4> kRejectionReasons = {
    FilterReason::kBleuTooLow, FilterReason::kBleuTooHigh, FilterReason::kChosenTooShort,
    FilterReason::kRejectedTooShort};

std::string_view to_string(FilterReason reason);

struct FilterVerdict {
  bool kept = false;
  FilterReason reason = FilterReason::kOk;
};

struct FilterThresholds {
  double bleu_low = 0.15;
  double bleu_high = 0.9;
  std::size_t min_words = 10;
};

// Length floors first (chosen, then rejected), then the strict BLEU band.
FilterVerdict evaluate_pair(const PreferencePair& pair, const FilterThresholds& thresholds = {});

struct FilterStats {
  std::size_t total_records = 0;
  std::size_t malformed_records = 0;
  std::size_t valid_records = 0;
  std::size_t kept = 0;
  std::array<std::size_t, 4> rejected{};  // indexed like kRejectionReasons
  // Means over the kept pairs; 0 when nothing is kept.
  double mean_chosen_len = 0.0;
  double mean_rejected_len = 0.0;
  double mean_bleu = 0.0;
  std::vector<std::string> warnings;

  std::size_t rejected_for(FilterReason reason) const;
};

nlohmann::ordered_json to_json(const FilterStats& stats);

// Order-preserving streaming filter with running statistics.
class DatasetFilter {
 public:
  explicit DatasetFilter(FilterThresholds thresholds = {}) : thresholds_(thresholds) {}

  FilterVerdict add(const PreferencePair& pair);
  void add_malformed(std::string warning);
  FilterStats stats() const;

 private:
  FilterThresholds thresholds_;
  FilterStats stats_;
  std::size_t chosen_len_sum_ = 0;
  std::size_t rejected_len_sum_ = 0;
  double bleu_sum_ = 0.0;
};

struct FilterResult {
  std::vector<PreferencePair> kept;
  FilterStats stats;
};

FilterResult filter_dataset(std::span<const PreferencePair> pairs, const FilterThresholds& thresholds = {});

// Builds a pair from one JSONL record. Throws kSchema on a wrong shape and
// kValidation on empty token lists.
PreferencePair pair_from_json(const nlohmann::ordered_json& record);

// Reads JSONL records from `in`. Kept records are written to `kept_out` with
// an added "bleu"; rejected ones to `rejected_out` (if given) with "bleu" and
// "reason". Malformed lines are counted and reported in the warnings.
FilterStats filter_jsonl(std::istream& in, const FilterThresholds& thresholds, std::ostream* kept_out,
                         std::ostream* rejected_out);

}  // namespace natcorpus
