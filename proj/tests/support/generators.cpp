#include "generators.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace natcorpus::testing {

Sentence make_sentence(const std::string& id, const std::vector<std::string>& words,
                       const std::vector<Upos>& tags, const std::vector<std::uint32_t>& heads) {
  Sentence s;
  s.id = id;
  for (const auto& w : words) s.tokens.push_back(Token::from_surface(w));
  for (std::size_t i = 0; i < tags.size(); ++i) {
    s.syntax.push_back(Dependency{tags[i], heads.empty() ? 0u : heads[i], "dep"});
  }
  return s;
}

Corpus make_corpus(std::vector<std::vector<Sentence>> documents) {
  Corpus c;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    c.documents.push_back(Document{"d" + std::to_string(i + 1), std::move(documents[i])});
  }
  return c;
}

OracleTree random_tree(Sampler& rng, std::size_t max_nodes, std::size_t alphabet) {
  const std::size_t n = 1 + rng.below(max_nodes);
  std::vector<int> parents(n, -1);
  for (std::size_t i = 1; i < n; ++i) parents[i] = static_cast<int>(rng.below(i));
  std::vector<Upos> labels(n);
  for (auto& l : labels) l = static_cast<Upos>(rng.below(alphabet));
  return permute_nodes(OracleTree{labels, parents}, rng);
}

OracleTree permute_nodes(const OracleTree& tree, Sampler& rng) {
  const std::size_t n = tree.labels.size();
  std::vector<std::size_t> perm(n);  // old index -> new index
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(perm));
  OracleTree out{std::vector<Upos>(n), std::vector<int>(n, -1)};
  for (std::size_t v = 0; v < n; ++v) {
    out.labels[perm[v]] = tree.labels[v];
    out.parents[perm[v]] = tree.parents[v] < 0 ? -1 : static_cast<int>(perm[static_cast<std::size_t>(tree.parents[v])]);
  }
  return out;
}

DepTree to_dep_tree(const OracleTree& tree) { return DepTree::from_parents(tree.labels, tree.parents); }

namespace {

struct Slot {
  Upos tag;
  std::uint32_t head;  // 1-based, 0 = root
};

using Template = std::vector<Slot>;

const std::vector<Template>& native_templates() {
  using enum Upos;
  static const std::vector<Template> templates = {
      {{DET, 2}, {NOUN, 3}, {VERB, 0}, {DET, 5}, {NOUN, 3}, {PUNCT, 3}},
      {{PRON, 2}, {VERB, 0}, {ADP, 5}, {DET, 5}, {NOUN, 2}, {PUNCT, 2}},
      {{DET, 3}, {ADJ, 3}, {NOUN, 4}, {VERB, 0}, {ADV, 4}, {PUNCT, 4}},
      {{NOUN, 2}, {VERB, 0}, {NOUN, 2}, {CCONJ, 5}, {NOUN, 3}, {PUNCT, 2}},
      {{ADV, 3}, {PRON, 3}, {VERB, 0}, {DET, 6}, {ADJ, 6}, {NOUN, 3}, {PUNCT, 3}},
      {{DET, 2}, {NOUN, 3}, {VERB, 0}, {ADP, 6}, {DET, 6}, {NOUN, 3}, {ADP, 9}, {DET, 9}, {NOUN, 6}, {PUNCT, 3}},
  };
  return templates;
}

const Template& passive_template() {
  using enum Upos;
  static const Template passive = {{DET, 2},  {NOUN, 4}, {AUX, 4}, {VERB, 0},
                                   {ADP, 7},  {DET, 7},  {NOUN, 4}, {PUNCT, 4}};
  return passive;
}

std::vector<std::string> numbered(const std::string& stem, std::size_t count) {
  std::vector<std::string> words;
  for (std::size_t i = 0; i < count; ++i) words.push_back(stem + std::to_string(i));
  return words;
}

// Rank-skewed draw: low indices are much more frequent.
std::size_t skewed(Sampler& rng, std::size_t size, double exponent = 2.0) {
  const double u = static_cast<double>(rng.below(1u << 30)) / static_cast<double>(1u << 30);
  const double x = exponent == 2.0 ? u * u : std::pow(u, exponent);
  return std::min(size - 1, static_cast<std::size_t>(x * static_cast<double>(size)));
}

struct Lexicon {
  explicit Lexicon(std::size_t scale)
      : nouns(numbered("noun", 300 * scale)),
        verbs(numbered("verb", 120 * scale)),
        adjs(numbered("adj", 80 * scale)),
        advs(numbered("adv", 40 * scale)) {}

  std::vector<std::string> nouns;
  std::vector<std::string> verbs;
  std::vector<std::string> adjs;
  std::vector<std::string> advs;
  std::vector<std::string> dets = {"the", "a", "this", "that", "every", "some"};
  std::vector<std::string> adps = {"in", "on", "to", "with", "from", "at", "by"};
  std::vector<std::string> prons = {"he", "she", "they", "we", "it"};
  std::vector<std::string> cconjs = {"and", "or", "but"};
  std::vector<std::string> auxs = {"was", "were", "is"};
  std::vector<std::string> puncts = {".", "!"};
};

const std::vector<std::string>& pool(const Lexicon& lex, Upos tag) {
  switch (tag) {
    case Upos::NOUN: return lex.nouns;
    case Upos::VERB: return lex.verbs;
    case Upos::ADJ: return lex.adjs;
    case Upos::ADV: return lex.advs;
    case Upos::DET: return lex.dets;
    case Upos::ADP: return lex.adps;
    case Upos::PRON: return lex.prons;
    case Upos::CCONJ: return lex.cconjs;
    case Upos::AUX: return lex.auxs;
    default: return lex.puncts;
  }
}

bool is_function_tag(Upos tag) {
  return tag == Upos::DET || tag == Upos::ADP || tag == Upos::PRON || tag == Upos::CCONJ || tag == Upos::AUX;
}

}  // namespace

Corpus synthetic_corpus(std::uint64_t seed, const SyntheticOptions& options) {
  Sampler rng(seed);
  const Lexicon lex(options.vocabulary_scale);
  Corpus corpus;
  corpus.language = "synthetic";
  const auto& templates = native_templates();
  std::size_t sentence_no = 0;

  auto draw_word = [&](Upos tag) {
    const auto& words = pool(lex, tag);
    const bool function = is_function_tag(tag);
    const double exponent = options.model_style && !function && tag != Upos::PUNCT ? options.model_content_skew : 2.0;
    std::size_t index = skewed(rng, words.size(), exponent);
    // Model output reverses the frequency ranking of function words.
    if (options.model_style && function) index = words.size() - 1 - index;
    return Token::from_surface(words[index]);
  };

  for (std::size_t d = 0; d < options.documents; ++d) {
    Document doc;
    doc.id = "doc" + std::to_string(d + 1);
    const std::size_t span = options.max_sentences - options.min_sentences + 1;
    const std::size_t sentences = options.min_sentences + rng.below(span);
    for (std::size_t s = 0; s < sentences; ++s) {
      const std::size_t clauses = options.max_clauses > 1 ? 1 + rng.below(options.max_clauses) : 1;
      Sentence sentence;
      sentence.id = "s" + std::to_string(++sentence_no);
      std::uint32_t main_root = 0;
      for (std::size_t c = 0; c < clauses; ++c) {
        const bool passive =
            options.model_style && rng.below(1000) < static_cast<std::uint64_t>(options.passive_rate * 1000);
        const Template& t = passive ? passive_template() : templates[rng.below(templates.size())];
        std::uint32_t clause_root = 0;
        for (std::size_t k = 0; k < t.size(); ++k) {
          if (t[k].head == 0) clause_root = static_cast<std::uint32_t>(k + 1);
        }
        // Later clauses open with a conjunction attached to their verb.
        std::uint32_t offset = static_cast<std::uint32_t>(sentence.tokens.size());
        if (c > 0) {
          sentence.tokens.push_back(draw_word(Upos::CCONJ));
          sentence.syntax.push_back(Dependency{Upos::CCONJ, offset + 1 + clause_root, "cc"});
          ++offset;
        }
        const bool last_clause = c + 1 == clauses;
        for (std::size_t k = 0; k < t.size(); ++k) {
          const auto& slot = t[k];
          if (slot.tag == Upos::PUNCT && k + 1 == t.size() && !last_clause) continue;
          std::uint32_t head = slot.head == 0 ? 0 : offset + slot.head;
          if (slot.head == 0 && c > 0) head = main_root;
          if (slot.tag == Upos::PUNCT && k + 1 == t.size() && c > 0) head = main_root;
          sentence.tokens.push_back(draw_word(slot.tag));
          sentence.syntax.push_back(Dependency{slot.tag, head, "dep"});
        }
        if (c == 0) main_root = clause_root;
      }
      doc.sentences.push_back(std::move(sentence));
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

std::vector<PairFixture> preference_fixture(std::uint64_t seed, std::size_t count) {
  Sampler rng(seed);
  const auto vocab = numbered("w", 60);
  std::vector<PairFixture> pairs;
  for (std::size_t i = 0; i < count; ++i) {
    PairFixture pair;
    const std::size_t length = 3 + rng.below(38);
    for (std::size_t k = 0; k < length; ++k) pair.chosen.push_back(vocab[rng.below(vocab.size())]);
    const auto substitute_permille = rng.below(1001);
    for (const auto& w : pair.chosen) {
      pair.rejected.push_back(rng.below(1000) < substitute_permille ? vocab[rng.below(vocab.size())] : w);
    }
    if (rng.below(4) == 0) {
      const auto cut = std::min<std::size_t>(pair.rejected.size() - 1, rng.below(8));
      pair.rejected.resize(pair.rejected.size() - cut);
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::string gzip_bytes(const std::string& plain) {
  std::string packed(compressBound(static_cast<uLong>(plain.size())) + 32, '\0');
  z_stream zs{};
  if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 16 + MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw std::runtime_error("deflateInit2 failed");
  }
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(plain.data()));
  zs.avail_in = static_cast<uInt>(plain.size());
  zs.next_out = reinterpret_cast<Bytef*>(packed.data());
  zs.avail_out = static_cast<uInt>(packed.size());
  const int status = deflate(&zs, Z_FINISH);
  deflateEnd(&zs);
  if (status != Z_STREAM_END) throw std::runtime_error("deflate failed");
  packed.resize(zs.total_out);
  return packed;
}

std::string join(const std::vector<std::string>& words, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) out += (i ? sep : "") + words[i];
  return out;
}

}  // namespace natcorpus::testing
