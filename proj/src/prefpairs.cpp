#include "natcorpus/prefpairs.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>

#include "natcorpus/error.hpp"

namespace natcorpus {

namespace {

using NgramCounts = std::map<std::vector<std::string_view>, std::size_t>;

NgramCounts count_ngrams(std::span<const std::string> words, std::size_t n) {
  NgramCounts counts;
  if (words.size() < n) return counts;
  std::vector<std::string_view> gram(n);
  for (std::size_t start = 0; start + n <= words.size(); ++start) {
    for (std::size_t k = 0; k < n; ++k) gram[k] = words[start + k];
    ++counts[gram];
  }
  return counts;
}

std::size_t reason_index(FilterReason reason) {
  for (std::size_t i = 0; i < kRejectionReasons.size(); ++i) {
    if (kRejectionReasons[i] == reason) return i;
  }
  throw Error(ErrorKind::kInvalidArgument, "not a rejection reason");
}

std::string string_field(const nlohmann::ordered_json& record, const char* key) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    throw Error(ErrorKind::kSchema, std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

std::vector<std::string> token_field(const nlohmann::ordered_json& record, const char* key) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_array()) {
    throw Error(ErrorKind::kSchema, std::string("missing array field '") + key + "'");
  }
  std::vector<std::string> tokens;
  tokens.reserve(it->size());
  for (const auto& t : *it) {
    if (!t.is_string()) throw Error(ErrorKind::kSchema, std::string("non-string token in '") + key + "'");
    tokens.push_back(t.get<std::string>());
  }
  if (tokens.empty()) throw Error(ErrorKind::kValidation, std::string("'") + key + "' is empty");
  return tokens;
}

}  // namespace

double sentence_bleu(std::span<const std::string> reference, std::span<const std::string> hypothesis,
                     std::size_t max_n) {
  if (reference.empty() || hypothesis.empty()) throw Error(ErrorKind::kInvalidArgument, "BLEU of an empty word list");
  if (max_n == 0) throw Error(ErrorKind::kInvalidArgument, "BLEU order must be at least 1");

  double log_precision = 0.0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto ref_counts = count_ngrams(reference, n);
    const auto hyp_counts = count_ngrams(hypothesis, n);
    std::size_t matches = 0;
    std::size_t candidates = 0;
    for (const auto& [gram, c] : hyp_counts) {
      candidates += c;
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matches += std::min(c, it->second);
    }
    double precision;
    if (n == 1) {
      if (matches == 0) return 0.0;
      precision = static_cast<double>(matches) / static_cast<double>(candidates);
    } else {
      precision = static_cast<double>(matches + 1) / static_cast<double>(candidates + 1);
    }
    log_precision += std::log(precision) / static_cast<double>(max_n);
  }
  const double ref_len = static_cast<double>(reference.size());
  const double hyp_len = static_cast<double>(hypothesis.size());
  const double brevity = std::min(1.0, std::exp(1.0 - ref_len / hyp_len));
  return std::min(1.0, brevity * std::exp(log_precision));
}

PreferencePair PreferencePair::make(std::string prompt, std::string chosen, std::string rejected,
                                    std::vector<std::string> chosen_tokens,
                                    std::vector<std::string> rejected_tokens) {
  PreferencePair pair;
  pair.bleu = sentence_bleu(chosen_tokens, rejected_tokens);
  pair.chosen_len = chosen_tokens.size();
  pair.rejected_len = rejected_tokens.size();
  pair.prompt = std::move(prompt);
  pair.chosen = std::move(chosen);
  pair.rejected = std::move(rejected);
  pair.chosen_tokens = std::move(chosen_tokens);
  pair.rejected_tokens = std::move(rejected_tokens);
  return pair;
}

std::string_view to_string(FilterReason reason) {
  switch (reason) {
    case FilterReason::kOk: return "ok";
    case FilterReason::kBleuTooLow: return "bleu_too_low";
    case FilterReason::kBleuTooHigh: return "bleu_too_high";
    case FilterReason::kChosenTooShort: return "chosen_too_short";
    case FilterReason::kRejectedTooShort: return "rejected_too_short";
  }
  return "unknown";
}

FilterVerdict evaluate_pair(const PreferencePair& pair, const FilterThresholds& thresholds) {
  auto reject = [](FilterReason reason) { return FilterVerdict{false, reason}; };
  if (pair.chosen_len < thresholds.min_words) return reject(FilterReason::kChosenTooShort);
  if (pair.rejected_len < thresholds.min_words) return reject(FilterReason::kRejectedTooShort);
  if (!(pair.bleu > thresholds.bleu_low)) return reject(FilterReason::kBleuTooLow);
  if (!(pair.bleu < thresholds.bleu_high)) return reject(FilterReason::kBleuTooHigh);
  return FilterVerdict{true, FilterReason::kOk};
}

std::size_t FilterStats::rejected_for(FilterReason reason) const {
  return reason == FilterReason::kOk ? kept : rejected[reason_index(reason)];
}

nlohmann::ordered_json to_json(const FilterStats& stats) {
  nlohmann::ordered_json reasons = nlohmann::ordered_json::object();
  for (auto reason : kRejectionReasons) reasons[std::string(to_string(reason))] = stats.rejected_for(reason);
  return {
      {"total_records", stats.total_records},
      {"malformed_records", stats.malformed_records},
      {"valid_records", stats.valid_records},
      {"kept", stats.kept},
      {"rejected", reasons},
      {"mean_chosen_len", stats.mean_chosen_len},
      {"mean_rejected_len", stats.mean_rejected_len},
      {"mean_bleu", stats.mean_bleu},
      {"warnings", stats.warnings},
  };
}

FilterVerdict DatasetFilter::add(const PreferencePair& pair) {
  ++stats_.total_records;
  ++stats_.valid_records;
  const auto verdict = evaluate_pair(pair, thresholds_);
  if (verdict.kept) {
    ++stats_.kept;
    chosen_len_sum_ += pair.chosen_len;
    rejected_len_sum_ += pair.rejected_len;
    bleu_sum_ += pair.bleu;
  } else {
    ++stats_.rejected[reason_index(verdict.reason)];
  }
  return verdict;
}

void DatasetFilter::add_malformed(std::string warning) {
  ++stats_.total_records;
  ++stats_.malformed_records;
  stats_.warnings.push_back(std::move(warning));
}

FilterStats DatasetFilter::stats() const {
  FilterStats out = stats_;
  if (out.kept > 0) {
    const auto kept = static_cast<double>(out.kept);
    out.mean_chosen_len = static_cast<double>(chosen_len_sum_) / kept;
    out.mean_rejected_len = static_cast<double>(rejected_len_sum_) / kept;
    out.mean_bleu = bleu_sum_ / kept;
  }
  return out;
}

FilterResult filter_dataset(std::span<const PreferencePair> pairs, const FilterThresholds& thresholds) {
  DatasetFilter filter(thresholds);
  FilterResult result;
  for (const auto& pair : pairs) {
    if (filter.add(pair).kept) result.kept.push_back(pair);
  }
  result.stats = filter.stats();
  return result;
}

PreferencePair pair_from_json(const nlohmann::ordered_json& record) {
  if (!record.is_object()) throw Error(ErrorKind::kSchema, "record is not a JSON object");
  return PreferencePair::make(string_field(record, "prompt"), string_field(record, "chosen"),
                              string_field(record, "rejected"), token_field(record, "chosen_tokens"),
                              token_field(record, "rejected_tokens"));
}

FilterStats filter_jsonl(std::istream& in, const FilterThresholds& thresholds, std::ostream* kept_out,
                         std::ostream* rejected_out) {
  DatasetFilter filter(thresholds);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    nlohmann::ordered_json record;
    PreferencePair pair;
    try {
      record = nlohmann::ordered_json::parse(line);
      pair = pair_from_json(record);
    } catch (const nlohmann::json::exception& e) {
      filter.add_malformed("line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
      continue;
    } catch (const Error& e) {
      filter.add_malformed("line " + std::to_string(line_no) + ": " + e.what());
      continue;
    }

    const auto verdict = filter.add(pair);
    record["bleu"] = pair.bleu;
    if (verdict.kept) {
      if (kept_out) *kept_out << record.dump() << '\n';
    } else if (rejected_out) {
      record["reason"] = std::string(to_string(verdict.reason));
      *rejected_out << record.dump() << '\n';
    }
  }
  return filter.stats();
}

}  // namespace natcorpus
