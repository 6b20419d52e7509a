#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "natcorpus/upos.hpp"

namespace natcorpus {

// A word-level lexical unit. The two flags are derived from `surface` and
// never set independently.
struct Token {
  std::string surface;
  bool is_punct = false;  // every code point is Unicode P* or S*
  bool is_digit = false;  // every code point is Unicode Nd

  // Throws kValidation on an empty surface.
  static Token from_surface(std::string surface);

  friend bool operator==(const Token&, const Token&) = default;
};

// Syntactic annotation of one word. `head` is 0 for the root, otherwise the
// 1-based index of the governing word within the sentence.
struct Dependency {
  Upos upos = Upos::X;
  std::uint32_t head = 0;
  std::string deprel;

  friend bool operator==(const Dependency&, const Dependency&) = default;
};

struct Sentence {
  std::string id;
  std::vector<Token> tokens;
  // Either empty (token-only sentence) or parallel to `tokens`.
  std::vector<Dependency> syntax;

  bool annotated() const { return !syntax.empty(); }
  std::size_t size() const { return tokens.size(); }

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Document {
  std::string id;
  std::vector<Sentence> sentences;

  friend bool operator==(const Document&, const Document&) = default;
};

struct Corpus {
  std::string language = "und";
  std::vector<Document> documents;

  std::size_t sentence_count() const;
  std::size_t token_count() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// Checks the single-tree invariant of an annotated sentence: heads in range,
// no self-loops, exactly one root, no cycles. Throws kTreeStructure naming the
// sentence id. Token-only sentences pass trivially.
void validate_tree(const Sentence& sentence);

// Parses UTF-8 CoNLL-U. Multiword-token range lines and empty nodes are
// skipped. `# newdoc [id = X]` opens a document; sentences outside any newdoc
// block become single-sentence documents named after the sentence. A sentence
// whose UPOS and HEAD columns are all `_` is kept as token-only.
Corpus parse_conllu(std::string_view text, std::string language = "und");

// Minimal CoNLL-U (ID, FORM, UPOS, HEAD, DEPREL; other columns `_`) that
// parse_conllu reads back into an identical Corpus.
std::string write_conllu(const Corpus& corpus);

// JSON lines of {"id": str, "sentences": [[str, ...], ...]}.
Corpus load_tokenized(std::string_view text, std::string language = "und");

// Surfaces in document order with all-punctuation and all-digit tokens
// dropped. Stopwords are kept. Throws kEmptyStream if nothing remains.
std::vector<std::string> lexical_word_stream(const Corpus& corpus, bool fold_case = false);

}  // namespace natcorpus
