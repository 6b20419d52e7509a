#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

namespace natcorpus {

using ProbabilityMap = std::map<std::string, double, std::less<>>;

// Exact word counts. Probabilities are count / total, computed on demand.
// The map is ordered so every sum over the support runs in the same order.
class FreqDist {
 public:
  FreqDist() = default;

  // Throws kValidation on a zero count.
  explicit FreqDist(std::map<std::string, std::uint64_t, std::less<>> counts);

  const std::map<std::string, std::uint64_t, std::less<>>& counts() const { return counts_; }
  std::uint64_t total() const { return total_; }
  bool empty() const { return total_ == 0; }

  std::uint64_t count(std::string_view word) const;
  double probability(std::string_view word) const;

 private:
  std::map<std::string, std::uint64_t, std::less<>> counts_;
  std::uint64_t total_ = 0;
};

// Throws kEmptyStream on empty input.
FreqDist build_freq_dist(std::span<const std::string> words);

// M = (P + Q) / 2 over the union support.
ProbabilityMap midpoint(const FreqDist& p, const FreqDist& q);

// KL(P || M) in bits. Throws kSupport if P puts mass where M has none.
double kl_divergence(const FreqDist& p, const ProbabilityMap& m);

// Jensen-Shannon divergence in bits scaled to a percentage in [0, 100].
double lexical_divergence(const FreqDist& p, const FreqDist& q);

}  // namespace natcorpus
