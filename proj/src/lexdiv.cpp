#include "natcorpus/lexdiv.hpp"

#include <algorithm>
#include <cmath>

#include "natcorpus/error.hpp"

namespace natcorpus {

FreqDist::FreqDist(std::map<std::string, std::uint64_t, std::less<>> counts) : counts_(std::move(counts)) {
  for (const auto& [word, c] : counts_) {
    if (c == 0) throw Error(ErrorKind::kValidation, "zero count for '" + word + "'");
    total_ += c;
  }
}

std::uint64_t FreqDist::count(std::string_view word) const {
  auto it = counts_.find(word);
  return it == counts_.end() ? 0 : it->second;
}

double FreqDist::probability(std::string_view word) const {
  if (total_ == 0) return 0.0;
  return static_cast<double>(count(word)) / static_cast<double>(total_);
}

FreqDist build_freq_dist(std::span<const std::string> words) {
  if (words.empty()) throw Error(ErrorKind::kEmptyStream, "cannot build a distribution from no words");
  std::map<std::string, std::uint64_t, std::less<>> counts;
  for (const auto& w : words) ++counts[w];
  return FreqDist(std::move(counts));
}

ProbabilityMap midpoint(const FreqDist& p, const FreqDist& q) {
  ProbabilityMap m;
  for (const auto& [word, _] : p.counts()) m[word] = 0.5 * (p.probability(word) + q.probability(word));
  for (const auto& [word, _] : q.counts()) {
    if (!m.contains(word)) m[word] = 0.5 * q.probability(word);
  }
  return m;
}

double kl_divergence(const FreqDist& p, const ProbabilityMap& m) {
  if (p.empty()) throw Error(ErrorKind::kEmptyStream, "empty distribution");
  double sum = 0.0;
  const double total = static_cast<double>(p.total());
  for (const auto& [word, c] : p.counts()) {
    const double pw = static_cast<double>(c) / total;
    auto it = m.find(word);
    if (it == m.end() || it->second <= 0.0) {
      throw Error(ErrorKind::kSupport, "'" + word + "' has mass under P but not under M");
    }
    sum += pw * std::log2(pw / it->second);
  }
  return sum;
}

double lexical_divergence(const FreqDist& p, const FreqDist& q) {
  if (p.empty() || q.empty()) throw Error(ErrorKind::kEmptyStream, "empty distribution");
  const double p_total = static_cast<double>(p.total());
  const double q_total = static_cast<double>(q.total());

  // Single ordered merge over the union support. Each word contributes the
  // same expression with P and Q in symmetric positions, so swapping the
  // arguments only swaps the two accumulators.
  double kl_p = 0.0;
  double kl_q = 0.0;
  auto pi = p.counts().begin();
  auto qi = q.counts().begin();
  const auto p_end = p.counts().end();
  const auto q_end = q.counts().end();
  while (pi != p_end || qi != q_end) {
    double pw = 0.0;
    double qw = 0.0;
    if (qi == q_end || (pi != p_end && pi->first < qi->first)) {
      pw = static_cast<double>(pi->second) / p_total;
      ++pi;
    } else if (pi == p_end || qi->first < pi->first) {
      qw = static_cast<double>(qi->second) / q_total;
      ++qi;
    } else {
      pw = static_cast<double>(pi->second) / p_total;
      qw = static_cast<double>(qi->second) / q_total;
      ++pi;
      ++qi;
    }
    const double mw = 0.5 * (pw + qw);
    if (pw > 0.0) kl_p += pw * std::log2(pw / mw);
    if (qw > 0.0) kl_q += qw * std::log2(qw / mw);
  }
  // Rounding can push a near-zero sum a few ulps below 0.
  return std::clamp(100.0 * 0.5 * (kl_p + kl_q), 0.0, 100.0);
}

}  // namespace natcorpus
