#pragma once

// Independent reference implementations used only by tests. None of these
// call into the code paths they are compared against.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "natcorpus/upos.hpp"

namespace natcorpus::testing {

// JSD (x100) via explicit probability vectors over the sorted union support,
// natural logs converted to bits at the end.
double naive_jsd_percent(const std::map<std::string, std::uint64_t>& p,
                         const std::map<std::string, std::uint64_t>& q);

// Tree given as labels + 0-based parent per node (-1 for the root).
struct OracleTree {
  std::vector<Upos> labels;
  std::vector<int> parents;
};

// Literal double loop over node pairs at each iteration h in [first, H], with
// labels kept as full nested strings instead of interned ids.
std::uint64_t cartesian_wl_kernel(const OracleTree& a, const OracleTree& b, int iterations, int first = 0);

// Matches at iteration h only.
std::uint64_t cartesian_wl_matches(const OracleTree& a, const OracleTree& b, int h);

// BLEU with n-grams keyed by joined strings; add-one smoothing for n >= 2.
double reference_bleu(const std::vector<std::string>& reference, const std::vector<std::string>& hypothesis,
                      int max_n = 4);

}  // namespace natcorpus::testing
