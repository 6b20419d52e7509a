#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "natcorpus/cli.hpp"
#include "natcorpus/parallel.hpp"

namespace natcorpus::cli {

namespace {

void emit(const nlohmann::ordered_json& report, const std::optional<Path>& path, std::ostream& fallback) {
  const auto text = report.dump(2) + "\n";
  if (!path) {
    fallback << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw Error(ErrorKind::kIo, "cannot write '" + path->string() + "'");
  file << text;
  if (!file) throw Error(ErrorKind::kIo, "write error on '" + path->string() + "'");
}

Metric metric_from(const std::string& name) {
  auto metric = parse_metric(name);
  if (!metric) throw Error(ErrorKind::kInvalidArgument, "unknown metric '" + name + "'");
  return *metric;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kEncoding:
    case ErrorKind::kSchema:
    case ErrorKind::kValidation:
    case ErrorKind::kMissingAnnotation:
      return kExitInput;
    case ErrorKind::kEmptyStream: return kExitEmpty;
    case ErrorKind::kTreeStructure: return kExitTree;
    case ErrorKind::kIo: return kExitIo;
    case ErrorKind::kInvalidArgument: return kExitUsage;
    case ErrorKind::kSupport:
    case ErrorKind::kShape:
      return kExitInternal;
  }
  return kExitInternal;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Corpus-level lexical and syntactic naturalness metrics", "natcorpus"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(NATCORPUS_VERSION));
  // Subcommands inherit this; "-h" would collide with their --h option.
  app.set_help_flag("--help", "Print this help message and exit");

  std::size_t threads = default_thread_count();
  app.add_option("--threads", threads, "Worker threads (fallback: NATCORPUS_THREADS)")
      ->check(CLI::PositiveNumber);

  std::optional<Path> report_out;
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", report_out, "Write the JSON report here instead of stdout");
  };

  LexdivOptions lex;
  auto* lexdiv = app.add_subcommand("lexdiv", "Jensen-Shannon divergence of word distributions (percent)");
  lexdiv->add_option("reference", lex.reference, "Human-written corpus (CoNLL-U or tokenized JSONL)")
      ->required();
  lexdiv->add_option("candidate", lex.candidate, "Generated corpus")->required();
  lexdiv->add_flag("--fold-case", lex.fold_case, "Lowercase words before counting");
  lexdiv->add_option("--max-words", lex.max_words, "Seeded downsampling of each word stream (0 = off)")
      ->capture_default_str();
  lexdiv->add_option("--seed", lex.seed)->capture_default_str();
  add_out(lexdiv);

  SyndivOptions syn;
  auto* syndiv = app.add_subcommand("syndiv", "WL-kernel MMD^2 between dependency-tree sets (percent)");
  syndiv->add_option("reference", syn.reference, "Human-written CoNLL-U")->required();
  syndiv->add_option("candidate", syn.candidate, "Generated CoNLL-U")->required();
  syndiv->add_option("--max-sentences", syn.max_sentences, "Seeded sentence sampling per side (0 = off)")
      ->capture_default_str();
  syndiv->add_option("--seed", syn.seed)->capture_default_str();
  syndiv->add_option("--h", syn.h, "WL iterations")->capture_default_str();
  syndiv->add_option("--h-range", syn.h_range, "Counted iterations LO:HI (overrides --h)");
  syndiv->add_flag("--prune-punct", syn.prune_punct, "Remove PUNCT nodes from trees");
  syndiv->add_option("--export-kernel", syn.export_kernel, "Write the joint kernel matrix (float32 LE + .json)");
  add_out(syndiv);

  PatternsOptions pat;
  auto* patterns = app.add_subcommand("patterns", "POS n-gram patterns frequent in model output, rare natively");
  patterns->add_option("model", pat.model, "Generated CoNLL-U")->required();
  patterns->add_option("native", pat.native, "Native CoNLL-U")->required();
  patterns->add_option("--reference", pat.reference, "Reference-language CoNLL-U (pre-filter)");
  patterns->add_option("--n", pat.n)->capture_default_str()->check(CLI::Range(2, 16));
  patterns->add_option("--top-k", pat.top_k)->capture_default_str();
  patterns->add_option("--examples", pat.examples, "Example n-grams per pattern")->capture_default_str();
  patterns->add_option("--examples-from", pat.examples_from, "Corpus to draw examples from (default: model)");
  patterns->add_option("--format", pat.format)->capture_default_str()->check(CLI::IsMember({"json", "tsv"}));
  add_out(patterns);

  const std::vector<std::string> metric_names = {"lexical", "syntactic"};
  std::string metric_name;

  BaselineOptions base;
  auto* baseline = app.add_subcommand("baseline", "Human reference: divergence between two disjoint halves");
  baseline->add_option("corpus", base.corpus)->required();
  baseline->add_option("--metric", metric_name)->required()->check(CLI::IsMember(metric_names));
  baseline->add_option("--seed", base.seed)->capture_default_str();
  baseline->add_flag("--fold-case", base.fold_case);
  baseline->add_option("--h", base.h)->capture_default_str();
  baseline->add_flag("--prune-punct", base.prune_punct);
  add_out(baseline);

  BootstrapOptions boot;
  auto* bootstrap = app.add_subcommand("bootstrap", "Variation of a metric over seeded document subsets");
  bootstrap->add_option("first", boot.first)->required();
  bootstrap->add_option("second", boot.second)->required();
  bootstrap->add_option("--metric", metric_name)->required()->check(CLI::IsMember(metric_names));
  bootstrap->add_option("--k", boot.k)->capture_default_str();
  bootstrap->add_option("--fraction", boot.fraction)->capture_default_str();
  bootstrap->add_option("--seed", boot.seed)->capture_default_str();
  bootstrap->add_flag("--fold-case", boot.fold_case);
  bootstrap->add_option("--h", boot.h)->capture_default_str();
  bootstrap->add_flag("--prune-punct", boot.prune_punct);
  add_out(bootstrap);

  PrefFilterOptions pref;
  std::optional<Path> stats_out;
  auto* pref_filter = app.add_subcommand("pref-filter", "Filter preference pairs by BLEU band and length");
  pref_filter->add_option("input", pref.input, "JSONL preference pairs")->required();
  pref_filter->add_option("--bleu-low", pref.thresholds.bleu_low)->capture_default_str();
  pref_filter->add_option("--bleu-high", pref.thresholds.bleu_high)->capture_default_str();
  pref_filter->add_option("--min-words", pref.thresholds.min_words)->capture_default_str();
  pref_filter->add_option("--out", pref.out, "Kept pairs (JSONL; default stdout)");
  pref_filter->add_option("--rejected-out", pref.rejected_out, "Rejected pairs with reasons (JSONL)");
  pref_filter->add_option("--stats-out", stats_out, "Statistics report (default: stdout if --out, else stderr)");

  app.set_help_flag("-h,--help", "Print this help message and exit");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*lexdiv) {
      emit(cmd_lexdiv(lex), report_out, out);
    } else if (*syndiv) {
      syn.threads = threads;
      emit(cmd_syndiv(syn), report_out, out);
    } else if (*patterns) {
      std::string tsv;
      auto report = cmd_patterns(pat, pat.format == "tsv" ? &tsv : nullptr);
      if (pat.format == "tsv") {
        if (report_out) {
          std::ofstream file(*report_out, std::ios::binary);
          if (!file) throw Error(ErrorKind::kIo, "cannot write '" + report_out->string() + "'");
          file << tsv;
        } else {
          out << tsv;
        }
      } else {
        emit(report, report_out, out);
      }
    } else if (*baseline) {
      base.threads = threads;
      base.metric = metric_from(metric_name);
      emit(cmd_baseline(base), report_out, out);
    } else if (*bootstrap) {
      boot.threads = threads;
      boot.metric = metric_from(metric_name);
      emit(cmd_bootstrap(boot), report_out, out);
    } else if (*pref_filter) {
      auto report = cmd_pref_filter(pref, out);
      if (stats_out) {
        emit(report, stats_out, out);
      } else {
        emit(report, std::nullopt, pref.out ? out : err);
      }
    }
  } catch (const Error& e) {
    err << "natcorpus: " << to_string(e.kind()) << " error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "natcorpus: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace natcorpus::cli
