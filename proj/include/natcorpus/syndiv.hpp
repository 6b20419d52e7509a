#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "natcorpus/corpus.hpp"
#include "natcorpus/upos.hpp"

namespace natcorpus {

// A dependency tree with UPOS node labels. Node i is word i of the sentence
// (0-based); edges run (parent, child).
struct DepTree {
  std::vector<Upos> labels;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::uint32_t root = 0;

  std::size_t size() const { return labels.size(); }

  // parents[i] is the 0-based parent of node i, or -1 for the root.
  // Throws kTreeStructure unless the result is a single rooted tree.
  static DepTree from_parents(std::vector<Upos> labels, std::span<const int> parents);
};

struct TreeOptions {
  // Drop PUNCT nodes (except a PUNCT root) and reattach their children to
  // the nearest kept ancestor.
  bool prune_punct = false;
};

// Throws kMissingAnnotation for a token-only sentence.
DepTree tree_from_sentence(const Sentence& sentence, const TreeOptions& options = {});

// All sentences of a corpus in document order.
std::vector<DepTree> corpus_trees(const Corpus& corpus, const TreeOptions& options = {});

struct WlOptions {
  int iterations = 2;     // H
  int first_counted = 0;  // iterations below this are relabeled but not counted
};

// ℓ_h(v) for h = 0..H. levels[0] holds the UPOS enum values; levels[h][v]
// for h >= 1 is an id interned from "ℓ_{h-1}(v)|sorted ℓ_{h-1} of neighbors".
struct WlLabeling {
  std::vector<std::vector<std::uint32_t>> levels;
};

// Interns relabeling strings, one table per iteration. Ids are assigned in
// first-seen order, so labeling trees in a fixed order gives fixed ids.
class WlDictionary {
 public:
  explicit WlDictionary(int iterations);

  // Neighborhoods are undirected (parent and children).
  WlLabeling label(const DepTree& tree);

  int iterations() const { return static_cast<int>(tables_.size()); }

 private:
  std::vector<std::unordered_map<std::string, std::uint32_t>> tables_;
  std::string scratch_;
};

// Sparse histogram over (iteration, label) for the counted iterations,
// sorted by key. Kernel values are dot products of these histograms.
struct WlFeatures {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> counts;
  std::uint64_t self_kernel = 0;
};

WlFeatures wl_features(const WlLabeling& labeling, const WlOptions& options = {});

std::uint64_t kernel_value(const WlFeatures& a, const WlFeatures& b);
double normalized_kernel_value(const WlFeatures& a, const WlFeatures& b);

// Number of (v1, v2) pairs with equal labels, summed over counted iterations.
std::uint64_t wl_kernel(const DepTree& a, const DepTree& b, const WlOptions& options = {});

// wl_kernel(a, b) / sqrt(wl_kernel(a, a) * wl_kernel(b, b)).
double normalized_wl_kernel(const DepTree& a, const DepTree& b, const WlOptions& options = {});

// Dense row-major matrix of normalized kernel values. Stored in single
// precision; consumers accumulate in double.
class KernelMatrix {
 public:
  KernelMatrix() = default;
  KernelMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), values_(rows * cols, 0.0f) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  float operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
  float& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }

  std::span<const float> values() const { return values_; }
  std::span<const float> row(std::size_t i) const { return {values_.data() + i * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<float> values_;
};

// Entry (i, j) = normalized kernel of rows[i] and cols[j]. Each worker owns
// whole output rows, so the result does not depend on `threads`.
KernelMatrix kernel_matrix(std::span<const WlFeatures> rows, std::span<const WlFeatures> cols,
                           std::size_t threads = 1);

// Same as kernel_matrix(items, items) but evaluates each unordered pair once.
KernelMatrix gram_matrix(std::span<const WlFeatures> items, std::size_t threads = 1);

// Labels both sets with one shared dictionary (set1 first), then fills the
// matrix. Throws kInvalidArgument on an empty set.
KernelMatrix kernel_matrix(std::span<const DepTree> set1, std::span<const DepTree> set2,
                           const WlOptions& options = {}, std::size_t threads = 1);

// Biased MMD² (diagonal terms included) as a percentage in [0, 200].
// Throws kShape on inconsistent dimensions.
double mmd2(const KernelMatrix& human_human, const KernelMatrix& model_model,
            const KernelMatrix& human_model);

struct SyntacticOptions {
  WlOptions wl;
  TreeOptions trees;
  std::size_t threads = 1;
};

struct SyntacticResult {
  double divergence = 0.0;
  KernelMatrix human_human;
  KernelMatrix model_model;
  KernelMatrix human_model;
};

SyntacticResult compute_syntactic(std::span<const DepTree> human, std::span<const DepTree> model,
                                  const SyntacticOptions& options = {});

double syntactic_divergence(const Corpus& human, const Corpus& model, const SyntacticOptions& options = {});

// The (N_h + N_m)² kernel over human trees followed by model trees.
KernelMatrix joint_matrix(const SyntacticResult& result);

}  // namespace natcorpus
