#include "commands.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "natcorpus/error.hpp"
#include "natcorpus/input.hpp"
#include "natcorpus/lexdiv.hpp"
#include "natcorpus/patterns.hpp"
#include "natcorpus/random.hpp"
#include "natcorpus/syndiv.hpp"
#include "report.hpp"

namespace natcorpus::cli {

namespace {

using nlohmann::ordered_json;

struct LoadedCorpus {
  Corpus corpus;
  std::string raw;
};

std::string read_raw(const Path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

LoadedCorpus load(const Path& path) {
  LoadedCorpus loaded;
  loaded.raw = read_raw(path);
  try {
    const std::string text = is_gzip(loaded.raw) ? gunzip(loaded.raw) : loaded.raw;
    loaded.corpus = parse_corpus(text);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
  return loaded;
}

template <typename F>
auto with_path(const Path& path, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::vector<std::string> downsample_words(std::vector<std::string> words, std::size_t max_words,
                                          std::uint64_t seed) {
  if (max_words == 0 || words.size() <= max_words) return words;
  Sampler sampler(seed);
  std::vector<std::string> kept;
  kept.reserve(max_words);
  for (auto index : sampler.sample_indices(words.size(), max_words)) kept.push_back(std::move(words[index]));
  return kept;
}

struct SampledTrees {
  std::vector<DepTree> trees;
  std::vector<std::string> ids;
  std::size_t available = 0;
};

SampledTrees sample_trees(const Corpus& corpus, std::size_t max_sentences, std::uint64_t seed,
                          const TreeOptions& options) {
  std::vector<const Sentence*> sentences;
  for (const auto& doc : corpus.documents)
    for (const auto& s : doc.sentences) sentences.push_back(&s);

  SampledTrees sampled;
  sampled.available = sentences.size();
  const std::size_t count = max_sentences == 0 ? sentences.size() : max_sentences;
  Sampler sampler(seed);
  for (auto index : sampler.sample_indices(sentences.size(), count)) {
    sampled.trees.push_back(tree_from_sentence(*sentences[index], options));
    sampled.ids.push_back(sentences[index]->id);
  }
  return sampled;
}

WlOptions resolve_wl(int h, const std::optional<std::string>& h_range) {
  WlOptions wl;
  wl.iterations = h;
  if (h_range) {
    const auto& text = *h_range;
    const auto colon = text.find(':');
    int lo = -1;
    int hi = -1;
    bool ok = colon != std::string::npos;
    if (ok) {
      auto r1 = std::from_chars(text.data(), text.data() + colon, lo);
      auto r2 = std::from_chars(text.data() + colon + 1, text.data() + text.size(), hi);
      ok = r1.ec == std::errc() && r1.ptr == text.data() + colon && r2.ec == std::errc() &&
           r2.ptr == text.data() + text.size();
    }
    if (!ok || lo < 0 || hi < lo) {
      throw Error(ErrorKind::kInvalidArgument, "--h-range must look like LO:HI with 0 <= LO <= HI");
    }
    wl.first_counted = lo;
    wl.iterations = hi;
  }
  if (wl.iterations < 0) throw Error(ErrorKind::kInvalidArgument, "--h must be non-negative");
  return wl;
}

ordered_json wl_json(const WlOptions& wl) {
  return {{"h", wl.iterations}, {"first_counted_iteration", wl.first_counted}};
}

MetricOptions metric_options(bool fold_case, int h, bool prune_punct, std::size_t threads) {
  MetricOptions options;
  options.fold_case = fold_case;
  options.syntactic.wl = resolve_wl(h, std::nullopt);
  options.syntactic.trees.prune_punct = prune_punct;
  options.syntactic.threads = threads;
  return options;
}

void write_le_floats(std::ostream& out, std::span<const float> values) {
  std::vector<char> buffer(values.size() * 4);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto bits = std::bit_cast<std::uint32_t>(values[i]);
    for (int b = 0; b < 4; ++b) buffer[i * 4 + b] = static_cast<char>((bits >> (8 * b)) & 0xff);
  }
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
}

ordered_json pattern_json(const ContrastEntry& entry) {
  ordered_json tags = ordered_json::array();
  for (auto tag : entry.pattern) tags.push_back(std::string(to_string(tag)));
  ordered_json row;
  row["pattern"] = to_string(entry.pattern);
  row["tags"] = tags;
  row["model_per_40k"] = entry.model_per_40k;
  row["native_per_40k"] = entry.native_per_40k;
  row["reference_per_40k"] = entry.reference_per_40k ? ordered_json(*entry.reference_per_40k) : ordered_json(nullptr);
  row["score"] = entry.score;
  row["examples"] = entry.examples;
  return row;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

}  // namespace

nlohmann::ordered_json cmd_lexdiv(const LexdivOptions& options) {
  RunReport report("lexdiv");
  report.parameters() = {{"reference", options.reference.string()},
                         {"candidate", options.candidate.string()},
                         {"fold_case", options.fold_case},
                         {"max_words", options.max_words},
                         {"seed", options.seed}};
  const auto reference = load(options.reference);
  const auto candidate = load(options.candidate);
  report.add_input(options.reference, reference.raw);
  report.add_input(options.candidate, candidate.raw);

  auto ref_words = with_path(options.reference, [&] { return lexical_word_stream(reference.corpus, options.fold_case); });
  auto cand_words = with_path(options.candidate, [&] { return lexical_word_stream(candidate.corpus, options.fold_case); });
  const auto ref_available = ref_words.size();
  const auto cand_available = cand_words.size();
  ref_words = downsample_words(std::move(ref_words), options.max_words, options.seed);
  cand_words = downsample_words(std::move(cand_words), options.max_words, options.seed);

  const auto p = build_freq_dist(ref_words);
  const auto q = build_freq_dist(cand_words);
  auto& results = report.results();
  results["lexical_divergence"] = percent_json(lexical_divergence(p, q));
  results["reference_words"] = {{"available", ref_available}, {"used", ref_words.size()}, {"types", p.counts().size()}};
  results["candidate_words"] = {{"available", cand_available}, {"used", cand_words.size()}, {"types", q.counts().size()}};
  return report.finish();
}

nlohmann::ordered_json cmd_syndiv(const SyndivOptions& options) {
  RunReport report("syndiv");
  const auto wl = resolve_wl(options.h, options.h_range);
  report.parameters() = {{"reference", options.reference.string()},
                         {"candidate", options.candidate.string()},
                         {"max_sentences", options.max_sentences},
                         {"seed", options.seed},
                         {"wl", wl_json(wl)},
                         {"prune_punct", options.prune_punct},
                         {"export_kernel", options.export_kernel ? ordered_json(options.export_kernel->string())
                                                                 : ordered_json(nullptr)}};
  const auto reference = load(options.reference);
  const auto candidate = load(options.candidate);
  report.add_input(options.reference, reference.raw);
  report.add_input(options.candidate, candidate.raw);

  TreeOptions tree_options{options.prune_punct};
  const auto human = with_path(options.reference, [&] {
    return sample_trees(reference.corpus, options.max_sentences, options.seed, tree_options);
  });
  const auto model = with_path(options.candidate, [&] {
    return sample_trees(candidate.corpus, options.max_sentences, options.seed, tree_options);
  });

  SyntacticOptions syntactic;
  syntactic.wl = wl;
  syntactic.trees = tree_options;
  syntactic.threads = options.threads;
  const auto result = compute_syntactic(human.trees, model.trees, syntactic);

  auto& results = report.results();
  results["syntactic_divergence"] = percent_json(result.divergence);
  results["reference_sentences"] = {{"available", human.available}, {"used", human.trees.size()}};
  results["candidate_sentences"] = {{"available", model.available}, {"used", model.trees.size()}};

  if (options.export_kernel) {
    ordered_json ids = ordered_json::array();
    for (const auto& id : human.ids) ids.push_back("reference:" + id);
    for (const auto& id : model.ids) ids.push_back("candidate:" + id);
    const auto nh = human.trees.size();
    const auto nm = model.trees.size();
    ordered_json metadata = {
        {"format", "float32-le"},
        {"layout", "row-major"},
        {"rows", nh + nm},
        {"cols", nh + nm},
        {"wl", wl_json(wl)},
        {"normalized", true},
        {"groups", ordered_json::array({{{"name", "reference"}, {"begin", 0}, {"end", nh}},
                                        {{"name", "candidate"}, {"begin", nh}, {"end", nh + nm}}})},
        {"row_ids", ids},
        {"col_ids", ids},
    };
    write_kernel_export(*options.export_kernel, joint_matrix(result), metadata);
    results["kernel_export"] = {{"matrix", options.export_kernel->string()},
                                {"metadata", options.export_kernel->string() + ".json"}};
  }
  return report.finish();
}

nlohmann::ordered_json cmd_patterns(const PatternsOptions& options, std::string* tsv) {
  if (options.format != "json" && options.format != "tsv") {
    throw Error(ErrorKind::kInvalidArgument, "--format must be json or tsv");
  }
  RunReport report("patterns");
  report.parameters() = {
      {"model", options.model.string()},
      {"native", options.native.string()},
      {"reference", options.reference ? ordered_json(options.reference->string()) : ordered_json(nullptr)},
      {"examples_from", (options.examples_from ? *options.examples_from : options.model).string()},
      {"n", options.n},
      {"top_k", options.top_k},
      {"examples", options.examples},
      {"format", options.format}};

  const auto model = load(options.model);
  const auto native = load(options.native);
  report.add_input(options.model, model.raw);
  report.add_input(options.native, native.raw);
  const auto model_table = with_path(options.model, [&] { return extract_pos_ngrams(model.corpus, options.n); });
  const auto native_table = with_path(options.native, [&] { return extract_pos_ngrams(native.corpus, options.n); });

  std::optional<PosNgramTable> reference_table;
  if (options.reference) {
    const auto reference = load(*options.reference);
    report.add_input(*options.reference, reference.raw);
    reference_table = with_path(*options.reference, [&] { return extract_pos_ngrams(reference.corpus, options.n); });
  }

  auto entries = contrast_patterns(model_table, native_table, reference_table ? &*reference_table : nullptr,
                                   options.top_k);
  if (options.examples > 0) {
    std::optional<LoadedCorpus> examples_source;
    if (options.examples_from) {
      examples_source = load(*options.examples_from);
      report.add_input(*options.examples_from, examples_source->raw);
    }
    const Corpus& source = examples_source ? examples_source->corpus : model.corpus;
    for (auto& entry : entries) entry.examples = example_ngrams(source, entry.pattern, options.examples);
  }

  auto& results = report.results();
  results["totals"] = {{"model", model_table.total},
                       {"native", native_table.total},
                       {"reference", reference_table ? ordered_json(reference_table->total) : ordered_json(nullptr)}};
  results["patterns"] = ordered_json::array();
  for (const auto& entry : entries) results["patterns"].push_back(pattern_json(entry));

  if (tsv) {
    std::ostringstream table;
    table << "pattern\tmodel_per_40k\tnative_per_40k\treference_per_40k\tscore\texamples\n";
    for (const auto& entry : entries) {
      table << to_string(entry.pattern) << '\t' << format_number(entry.model_per_40k) << '\t'
            << format_number(entry.native_per_40k) << '\t'
            << (entry.reference_per_40k ? format_number(*entry.reference_per_40k) : std::string("-")) << '\t';
      char score[64];
      std::snprintf(score, sizeof(score), "%.4f", entry.score);
      table << score << '\t';
      for (std::size_t i = 0; i < entry.examples.size(); ++i) {
        if (i > 0) table << "; ";
        table << '(';
        for (std::size_t w = 0; w < entry.examples[i].size(); ++w) {
          if (w > 0) table << ", ";
          table << entry.examples[i][w];
        }
        table << ')';
      }
      table << '\n';
    }
    *tsv = table.str();
  }
  return report.finish();
}

nlohmann::ordered_json cmd_baseline(const BaselineOptions& options) {
  RunReport report("baseline");
  report.parameters() = {{"corpus", options.corpus.string()},
                         {"metric", std::string(to_string(options.metric))},
                         {"seed", options.seed},
                         {"fold_case", options.fold_case},
                         {"wl", wl_json(resolve_wl(options.h, std::nullopt))},
                         {"prune_punct", options.prune_punct}};
  const auto loaded = load(options.corpus);
  report.add_input(options.corpus, loaded.raw);

  const auto metric = metric_options(options.fold_case, options.h, options.prune_punct, options.threads);
  const auto [first, second] = split_halves(loaded.corpus, options.seed);
  const double value = with_path(options.corpus, [&] { return compute_metric(options.metric, first, second, metric); });

  auto& results = report.results();
  results["human_reference"] = percent_json(value);
  results["halves"] = {{"first_documents", first.documents.size()}, {"second_documents", second.documents.size()}};
  return report.finish();
}

nlohmann::ordered_json cmd_bootstrap(const BootstrapOptions& options) {
  RunReport report("bootstrap");
  report.parameters() = {{"first", options.first.string()},
                         {"second", options.second.string()},
                         {"metric", std::string(to_string(options.metric))},
                         {"k", options.k},
                         {"fraction", options.fraction},
                         {"seed", options.seed},
                         {"fold_case", options.fold_case},
                         {"wl", wl_json(resolve_wl(options.h, std::nullopt))},
                         {"prune_punct", options.prune_punct}};
  const auto a = load(options.first);
  const auto b = load(options.second);
  report.add_input(options.first, a.raw);
  report.add_input(options.second, b.raw);

  const auto metric = metric_options(options.fold_case, options.h, options.prune_punct, options.threads);
  const auto variation =
      bootstrap_variation(options.metric, a.corpus, b.corpus, options.k, options.fraction, options.seed, metric,
                          options.threads);

  auto& results = report.results();
  results["values"] = ordered_json::array();
  for (double v : variation.values) results["values"].push_back(percent_json(v));
  results["mean"] = percent_json(variation.mean);
  results["min"] = percent_json(variation.min);
  results["max"] = percent_json(variation.max);
  results["rel_interval"] = variation.rel_interval;
  return report.finish();
}

nlohmann::ordered_json cmd_pref_filter(const PrefFilterOptions& options, std::ostream& kept_stream) {
  const auto& t = options.thresholds;
  if (!(t.bleu_low <= t.bleu_high)) throw Error(ErrorKind::kInvalidArgument, "--bleu-low must not exceed --bleu-high");
  RunReport report("pref-filter");
  report.parameters() = {{"input", options.input.string()},
                         {"bleu_low", t.bleu_low},
                         {"bleu_high", t.bleu_high},
                         {"min_words", t.min_words},
                         {"out", options.out ? ordered_json(options.out->string()) : ordered_json(nullptr)},
                         {"rejected_out", options.rejected_out ? ordered_json(options.rejected_out->string())
                                                               : ordered_json(nullptr)}};
  const auto raw = read_raw(options.input);
  report.add_input(options.input, raw);
  std::istringstream in(is_gzip(raw) ? gunzip(raw) : raw);

  std::ofstream kept_file;
  std::ostream* kept = &kept_stream;
  if (options.out) {
    kept_file.open(*options.out, std::ios::binary);
    if (!kept_file) throw Error(ErrorKind::kIo, "cannot write '" + options.out->string() + "'");
    kept = &kept_file;
  }
  std::ofstream rejected_file;
  if (options.rejected_out) {
    rejected_file.open(*options.rejected_out, std::ios::binary);
    if (!rejected_file) throw Error(ErrorKind::kIo, "cannot write '" + options.rejected_out->string() + "'");
  }
  const auto stats = filter_jsonl(in, t, kept, options.rejected_out ? &rejected_file : nullptr);
  report.results()["statistics"] = to_json(stats);
  return report.finish();
}

void write_kernel_export(const Path& path, const KernelMatrix& matrix, const nlohmann::ordered_json& metadata) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  write_le_floats(out, matrix.values());
  if (!out) throw Error(ErrorKind::kIo, "write error on '" + path.string() + "'");

  const auto sidecar = path.string() + ".json";
  std::ofstream meta(sidecar, std::ios::binary);
  if (!meta) throw Error(ErrorKind::kIo, "cannot write '" + sidecar + "'");
  meta << metadata.dump(2) << '\n';
}

}  // namespace natcorpus::cli
