#include "natcorpus/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "natcorpus/error.hpp"

namespace natcorpus {

namespace {

bool tag_name_less(const PosNgram& a, const PosNgram& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](Upos x, Upos y) { return to_string(x) < to_string(y); });
}

}  // namespace

std::string to_string(const PosNgram& pattern) {
  std::string out = "(";
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(pattern[i]);
  }
  out += ')';
  return out;
}

std::uint64_t PosNgramTable::count(const PosNgram& pattern) const {
  auto it = counts.find(pattern);
  return it == counts.end() ? 0 : it->second;
}

double PosNgramTable::per_40k(const PosNgram& pattern) const {
  if (total == 0) return 0.0;
  return kPerNgramsScale * static_cast<double>(count(pattern)) / static_cast<double>(total);
}

PosNgramTable extract_pos_ngrams(const Corpus& corpus, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "n-gram order must be at least 2");
  PosNgramTable table;
  table.n = n;
  PosNgram window(n);
  for (const auto& doc : corpus.documents) {
    for (const auto& sentence : doc.sentences) {
      if (!sentence.annotated()) {
        throw Error(ErrorKind::kMissingAnnotation, "sentence '" + sentence.id + "' has no UPOS annotation");
      }
      const auto& syntax = sentence.syntax;
      for (std::size_t start = 0; start + n <= syntax.size(); ++start) {
        for (std::size_t k = 0; k < n; ++k) window[k] = syntax[start + k].upos;
        ++table.counts[window];
        ++table.total;
      }
    }
  }
  if (table.total == 0) {
    throw Error(ErrorKind::kEmptyStream, "no sentence is long enough for " + std::to_string(n) + "-grams");
  }
  return table;
}

double contrast_score(double model_per_40k, double native_per_40k) {
  return std::log2(model_per_40k + 0.5) - std::log2(native_per_40k + 0.5);
}

std::vector<ContrastEntry> contrast_patterns(const PosNgramTable& model, const PosNgramTable& native,
                                             const PosNgramTable* reference, std::size_t top_k) {
  if (model.n != native.n || (reference && reference->n != model.n)) {
    throw Error(ErrorKind::kShape, "n-gram tables have different orders");
  }
  std::set<PosNgram> candidates;
  for (const auto& [pattern, _] : model.counts) candidates.insert(pattern);
  for (const auto& [pattern, _] : native.counts) candidates.insert(pattern);

  std::vector<ContrastEntry> entries;
  for (const auto& pattern : candidates) {
    ContrastEntry entry;
    entry.pattern = pattern;
    entry.model_per_40k = model.per_40k(pattern);
    entry.native_per_40k = native.per_40k(pattern);
    if (reference) {
      entry.reference_per_40k = reference->per_40k(pattern);
      if (!(*entry.reference_per_40k > entry.native_per_40k)) continue;
    }
    entry.score = contrast_score(entry.model_per_40k, entry.native_per_40k);
    entries.push_back(std::move(entry));
  }

  std::sort(entries.begin(), entries.end(), [](const ContrastEntry& a, const ContrastEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.model_per_40k != b.model_per_40k) return a.model_per_40k > b.model_per_40k;
    return tag_name_less(a.pattern, b.pattern);
  });
  if (entries.size() > top_k) entries.resize(top_k);
  return entries;
}

std::vector<std::vector<std::string>> example_ngrams(const Corpus& corpus, const PosNgram& pattern, std::size_t k) {
  std::vector<std::vector<std::string>> found;
  if (k == 0 || pattern.empty()) return found;
  std::set<std::vector<std::string>> seen;
  const std::size_t n = pattern.size();
  for (const auto& doc : corpus.documents) {
    for (const auto& sentence : doc.sentences) {
      if (!sentence.annotated()) continue;
      for (std::size_t start = 0; start + n <= sentence.size(); ++start) {
        bool match = true;
        for (std::size_t i = 0; i < n && match; ++i) match = sentence.syntax[start + i].upos == pattern[i];
        if (!match) continue;
        std::vector<std::string> surface;
        for (std::size_t i = 0; i < n; ++i) surface.push_back(sentence.tokens[start + i].surface);
        if (seen.insert(surface).second) {
          found.push_back(std::move(surface));
          if (found.size() == k) return found;
        }
      }
    }
  }
  return found;
}

}  // namespace natcorpus
