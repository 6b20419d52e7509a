#include "natcorpus/syndiv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "natcorpus/error.hpp"
#include "natcorpus/parallel.hpp"

namespace natcorpus {

namespace {

void append_number(std::string& out, std::uint32_t value) {
  char buf[16];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

std::vector<std::vector<std::uint32_t>> undirected_neighbors(const DepTree& tree) {
  std::vector<std::vector<std::uint32_t>> adjacency(tree.size());
  for (const auto& [parent, child] : tree.edges) {
    adjacency[parent].push_back(child);
    adjacency[child].push_back(parent);
  }
  return adjacency;
}

std::uint64_t feature_key(int iteration, std::uint32_t label) {
  return (static_cast<std::uint64_t>(iteration) << 32) | label;
}

void check_options(const WlOptions& options) {
  if (options.iterations < 0 || options.first_counted < 0 || options.first_counted > options.iterations) {
    throw Error(ErrorKind::kInvalidArgument,
                "WL iteration range must satisfy 0 <= first_counted <= iterations");
  }
}

std::vector<WlFeatures> label_all(std::span<const DepTree> first, std::span<const DepTree> second,
                                  const WlOptions& options) {
  WlDictionary dictionary(options.iterations);
  std::vector<WlFeatures> features;
  features.reserve(first.size() + second.size());
  for (const auto& tree : first) features.push_back(wl_features(dictionary.label(tree), options));
  for (const auto& tree : second) features.push_back(wl_features(dictionary.label(tree), options));
  return features;
}

double block_sum(const KernelMatrix& m) {
  double total = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double row_sum = 0.0;
    for (float v : m.row(i)) row_sum += v;
    total += row_sum;
  }
  return total;
}

}  // namespace

DepTree DepTree::from_parents(std::vector<Upos> labels, std::span<const int> parents) {
  if (labels.size() != parents.size()) throw Error(ErrorKind::kTreeStructure, "labels and parents differ in length");
  if (labels.empty()) throw Error(ErrorKind::kTreeStructure, "empty tree");
  Sentence probe;
  probe.id = "<tree>";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    probe.tokens.push_back(Token{"w", false, false});
    probe.syntax.push_back(Dependency{labels[i], static_cast<std::uint32_t>(parents[i] + 1), ""});
  }
  if (std::any_of(parents.begin(), parents.end(),
                  [&](int p) { return p < -1 || p >= static_cast<int>(labels.size()); })) {
    throw Error(ErrorKind::kTreeStructure, "parent index out of range");
  }
  validate_tree(probe);
  return tree_from_sentence(probe);
}

DepTree tree_from_sentence(const Sentence& sentence, const TreeOptions& options) {
  if (!sentence.annotated()) {
    throw Error(ErrorKind::kMissingAnnotation, "sentence '" + sentence.id + "' has no dependency annotation");
  }
  const std::size_t n = sentence.syntax.size();

  std::uint32_t root = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sentence.syntax[i].head == 0) root = static_cast<std::uint32_t>(i);
  }

  std::vector<bool> keep(n, true);
  if (options.prune_punct) {
    for (std::size_t i = 0; i < n; ++i) {
      keep[i] = i == root || sentence.syntax[i].upos != Upos::PUNCT;
    }
  }
  std::vector<std::uint32_t> new_index(n, 0);
  DepTree tree;
  for (std::size_t i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    new_index[i] = static_cast<std::uint32_t>(tree.labels.size());
    tree.labels.push_back(sentence.syntax[i].upos);
  }
  tree.root = new_index[root];
  for (std::size_t i = 0; i < n; ++i) {
    if (!keep[i] || i == root) continue;
    auto parent = sentence.syntax[i].head - 1;
    while (!keep[parent]) parent = sentence.syntax[parent].head - 1;
    tree.edges.emplace_back(new_index[parent], new_index[i]);
  }
  return tree;
}

std::vector<DepTree> corpus_trees(const Corpus& corpus, const TreeOptions& options) {
  std::vector<DepTree> trees;
  for (const auto& doc : corpus.documents) {
    for (const auto& sentence : doc.sentences) trees.push_back(tree_from_sentence(sentence, options));
  }
  if (trees.empty()) throw Error(ErrorKind::kEmptyStream, "corpus has no sentences");
  return trees;
}

WlDictionary::WlDictionary(int iterations) {
  if (iterations < 0) throw Error(ErrorKind::kInvalidArgument, "negative WL iteration count");
  tables_.resize(static_cast<std::size_t>(iterations));
}

WlLabeling WlDictionary::label(const DepTree& tree) {
  const auto adjacency = undirected_neighbors(tree);
  WlLabeling labeling;
  labeling.levels.reserve(tables_.size() + 1);

  std::vector<std::uint32_t> current(tree.size());
  for (std::size_t v = 0; v < tree.size(); ++v) current[v] = static_cast<std::uint32_t>(tree.labels[v]);
  labeling.levels.push_back(current);

  std::vector<std::uint32_t> neighbor_labels;
  for (auto& table : tables_) {
    std::vector<std::uint32_t> next(tree.size());
    for (std::size_t v = 0; v < tree.size(); ++v) {
      neighbor_labels.clear();
      for (auto u : adjacency[v]) neighbor_labels.push_back(current[u]);
      std::sort(neighbor_labels.begin(), neighbor_labels.end());

      scratch_.clear();
      append_number(scratch_, current[v]);
      scratch_ += '|';
      for (std::size_t k = 0; k < neighbor_labels.size(); ++k) {
        if (k > 0) scratch_ += ',';
        append_number(scratch_, neighbor_labels[k]);
      }
      auto [it, inserted] = table.try_emplace(scratch_, static_cast<std::uint32_t>(table.size()));
      next[v] = it->second;
    }
    labeling.levels.push_back(next);
    current = std::move(next);
  }
  return labeling;
}

WlFeatures wl_features(const WlLabeling& labeling, const WlOptions& options) {
  check_options(options);
  if (labeling.levels.size() < static_cast<std::size_t>(options.iterations) + 1) {
    throw Error(ErrorKind::kInvalidArgument, "labeling has fewer iterations than requested");
  }
  std::vector<std::uint64_t> keys;
  for (int h = options.first_counted; h <= options.iterations; ++h) {
    for (auto label : labeling.levels[static_cast<std::size_t>(h)]) keys.push_back(feature_key(h, label));
  }
  std::sort(keys.begin(), keys.end());

  WlFeatures features;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    const auto count = static_cast<std::uint32_t>(j - i);
    features.counts.emplace_back(keys[i], count);
    features.self_kernel += static_cast<std::uint64_t>(count) * count;
    i = j;
  }
  return features;
}

std::uint64_t kernel_value(const WlFeatures& a, const WlFeatures& b) {
  std::uint64_t sum = 0;
  auto ai = a.counts.begin();
  auto bi = b.counts.begin();
  while (ai != a.counts.end() && bi != b.counts.end()) {
    if (ai->first < bi->first) {
      ++ai;
    } else if (bi->first < ai->first) {
      ++bi;
    } else {
      sum += static_cast<std::uint64_t>(ai->second) * bi->second;
      ++ai;
      ++bi;
    }
  }
  return sum;
}

double normalized_kernel_value(const WlFeatures& a, const WlFeatures& b) {
  if (a.self_kernel == 0 || b.self_kernel == 0) {
    throw Error(ErrorKind::kInvalidArgument, "normalized kernel of an empty tree");
  }
  const auto k = static_cast<double>(kernel_value(a, b));
  const double norm = std::sqrt(static_cast<double>(a.self_kernel) * static_cast<double>(b.self_kernel));
  return std::min(1.0, k / norm);
}

std::uint64_t wl_kernel(const DepTree& a, const DepTree& b, const WlOptions& options) {
  check_options(options);
  WlDictionary dictionary(options.iterations);
  const auto fa = wl_features(dictionary.label(a), options);
  const auto fb = wl_features(dictionary.label(b), options);
  return kernel_value(fa, fb);
}

double normalized_wl_kernel(const DepTree& a, const DepTree& b, const WlOptions& options) {
  check_options(options);
  WlDictionary dictionary(options.iterations);
  const auto fa = wl_features(dictionary.label(a), options);
  const auto fb = wl_features(dictionary.label(b), options);
  return normalized_kernel_value(fa, fb);
}

KernelMatrix kernel_matrix(std::span<const WlFeatures> rows, std::span<const WlFeatures> cols, std::size_t threads) {
  KernelMatrix m(rows.size(), cols.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      m(i, j) = static_cast<float>(normalized_kernel_value(rows[i], cols[j]));
    }
  });
  return m;
}

KernelMatrix gram_matrix(std::span<const WlFeatures> items, std::size_t threads) {
  KernelMatrix m(items.size(), items.size());
  // Task i writes (i, j) and (j, i) for j >= i; no two tasks touch the same cell.
  parallel_for(items.size(), threads, [&](std::size_t i) {
    for (std::size_t j = i; j < items.size(); ++j) {
      const auto v = static_cast<float>(normalized_kernel_value(items[i], items[j]));
      m(i, j) = v;
      m(j, i) = v;
    }
  });
  return m;
}

KernelMatrix kernel_matrix(std::span<const DepTree> set1, std::span<const DepTree> set2,
                           const WlOptions& options, std::size_t threads) {
  if (set1.empty() || set2.empty()) throw Error(ErrorKind::kInvalidArgument, "kernel matrix of an empty tree set");
  check_options(options);
  const auto features = label_all(set1, set2, options);
  std::span<const WlFeatures> all(features);
  return kernel_matrix(all.first(set1.size()), all.subspan(set1.size()), threads);
}

double mmd2(const KernelMatrix& human_human, const KernelMatrix& model_model, const KernelMatrix& human_model) {
  const std::size_t nh = human_human.rows();
  const std::size_t nm = model_model.rows();
  if (nh == 0 || nm == 0) throw Error(ErrorKind::kShape, "MMD of an empty sample");
  if (human_human.cols() != nh || model_model.cols() != nm || human_model.rows() != nh ||
      human_model.cols() != nm) {
    throw Error(ErrorKind::kShape, "kernel blocks must be N_h x N_h, N_m x N_m and N_h x N_m");
  }
  const double dh = static_cast<double>(nh);
  const double dm = static_cast<double>(nm);
  const double within_human = block_sum(human_human) / (dh * dh);
  const double within_model = block_sum(model_model) / (dm * dm);
  const double cross = 2.0 * block_sum(human_model) / (dh * dm);
  return 100.0 * (within_human + within_model - cross);
}

SyntacticResult compute_syntactic(std::span<const DepTree> human, std::span<const DepTree> model,
                                  const SyntacticOptions& options) {
  if (human.empty() || model.empty()) throw Error(ErrorKind::kEmptyStream, "syntactic divergence of an empty tree set");
  check_options(options.wl);
  const auto features = label_all(human, model, options.wl);
  std::span<const WlFeatures> all(features);
  const auto human_features = all.first(human.size());
  const auto model_features = all.subspan(human.size());

  SyntacticResult result;
  result.human_human = gram_matrix(human_features, options.threads);
  result.model_model = gram_matrix(model_features, options.threads);
  result.human_model = kernel_matrix(human_features, model_features, options.threads);
  result.divergence = mmd2(result.human_human, result.model_model, result.human_model);
  return result;
}

double syntactic_divergence(const Corpus& human, const Corpus& model, const SyntacticOptions& options) {
  const auto human_trees = corpus_trees(human, options.trees);
  const auto model_trees = corpus_trees(model, options.trees);
  return compute_syntactic(human_trees, model_trees, options).divergence;
}

KernelMatrix joint_matrix(const SyntacticResult& result) {
  const std::size_t nh = result.human_human.rows();
  const std::size_t nm = result.model_model.rows();
  KernelMatrix joint(nh + nm, nh + nm);
  for (std::size_t i = 0; i < nh; ++i) {
    for (std::size_t j = 0; j < nh; ++j) joint(i, j) = result.human_human(i, j);
    for (std::size_t j = 0; j < nm; ++j) {
      joint(i, nh + j) = result.human_model(i, j);
      joint(nh + j, i) = result.human_model(i, j);
    }
  }
  for (std::size_t i = 0; i < nm; ++i) {
    for (std::size_t j = 0; j < nm; ++j) joint(nh + i, nh + j) = result.model_model(i, j);
  }
  return joint;
}

}  // namespace natcorpus
