#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace natcorpus {

// Seeded sampling that produces identical sequences on every platform.
// std::mt19937_64 has a fully specified output sequence, but the standard
// distributions and std::shuffle do not, so the bounded draw and the shuffle
// are implemented here.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [0, bound) by rejection on the top of the 64-bit range.
  std::uint64_t below(std::uint64_t bound);

  // Fisher-Yates, from the back.
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  // `count` distinct indices from [0, population), returned in increasing
  // order. count >= population returns every index.
  std::vector<std::size_t> sample_indices(std::size_t population, std::size_t count);

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace natcorpus
