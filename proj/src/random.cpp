#include "natcorpus/random.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace natcorpus {

std::uint64_t Sampler::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = kMax - (kMax % bound + 1) % bound;
  while (true) {
    const std::uint64_t x = engine_();
    if (x <= limit) return x % bound;
  }
}

std::vector<std::size_t> Sampler::sample_indices(std::size_t population, std::size_t count) {
  std::vector<std::size_t> indices(population);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  if (count >= population) return indices;
  // Partial Fisher-Yates: the first `count` slots end up a uniform sample.
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(below(population - i));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(count);
  std::sort(indices.begin(), indices.end());
  return indices;
}

}  // namespace natcorpus
