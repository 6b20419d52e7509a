#include "natcorpus/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <span>
#include <unordered_set>

#include "json.hpp"

#include "natcorpus/error.hpp"
#include "natcorpus/unicode.hpp"

namespace natcorpus {

namespace {

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  return static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n')) + 1;
}

void require_utf8(std::string_view text) {
  if (auto bad = unicode::find_invalid_utf8(text)) {
    throw Error(ErrorKind::kEncoding,
                "invalid UTF-8 at byte offset " + std::to_string(*bad),
                line_of_offset(text, *bad));
  }
}

std::string_view strip_bom(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  return text;
}

// Splits `text` into lines, dropping one trailing '\r' from each.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    const auto end = text_.find('\n', pos_);
    const auto stop = end == std::string_view::npos ? text_.size() : end;
    line = text_.substr(pos_, stop - pos_);
    if (line.ends_with('\r')) line.remove_suffix(1);
    pos_ = stop + 1;
    ++number_;
    return true;
  }

  std::size_t number() const { return number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

std::optional<std::uint32_t> parse_index(std::string_view field) {
  std::uint32_t value = 0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty()) return std::nullopt;
  return value;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

// Value of a "# key = value" comment, or nullopt if the comment has another key.
std::optional<std::string_view> comment_value(std::string_view line, std::string_view key) {
  line.remove_prefix(1);
  const auto first = line.find_first_not_of(' ');
  if (first == std::string_view::npos) return std::nullopt;
  line.remove_prefix(first);
  if (!line.starts_with(key)) return std::nullopt;
  line.remove_prefix(key.size());
  const auto rest = line.find_first_not_of(' ');
  if (rest == std::string_view::npos) return std::string_view{};
  line.remove_prefix(rest);
  if (!line.starts_with('=')) return std::nullopt;
  line.remove_prefix(1);
  const auto value_start = line.find_first_not_of(' ');
  if (value_start == std::string_view::npos) return std::string_view{};
  line = line.substr(value_start);
  while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
  return line;
}

bool is_newdoc_comment(std::string_view line) {
  line.remove_prefix(1);
  const auto first = line.find_first_not_of(' ');
  if (first == std::string_view::npos) return false;
  line.remove_prefix(first);
  if (!line.starts_with("newdoc")) return false;
  return line.size() == 6 || line[6] == ' ' || line[6] == '\t';
}

class ConlluBuilder {
 public:
  explicit ConlluBuilder(std::string language) { corpus_.language = std::move(language); }

  void on_comment(std::string_view line) {
    if (is_newdoc_comment(line)) {
      flush_document();
      ++newdoc_count_;
      auto id = comment_value(line, "newdoc id");
      in_document_ = true;
      current_doc_.id = id && !id->empty() ? std::string(*id)
                                           : "doc" + std::to_string(newdoc_count_);
      return;
    }
    if (auto id = comment_value(line, "sent_id")) pending_sent_id_ = std::string(*id);
  }

  void on_word(std::span<const std::string_view> fields, std::size_t line_no) {
    const auto expected = static_cast<std::uint32_t>(current_.tokens.size() + 1);
    auto index = parse_index(fields[0]);
    if (!index || *index != expected) {
      throw Error(ErrorKind::kParse,
                  "expected word id " + std::to_string(expected) + ", found '" +
                      std::string(fields[0]) + "'",
                  line_no);
    }
    if (fields[1].empty()) throw Error(ErrorKind::kParse, "empty FORM column", line_no);
    if (current_.tokens.empty()) first_word_line_ = line_no;

    const bool has_upos = fields[3] != "_";
    const bool has_head = fields[6] != "_";
    if (has_upos != has_head) {
      throw Error(ErrorKind::kParse, "UPOS and HEAD must be both present or both '_'", line_no);
    }
    if (!current_.tokens.empty() && has_upos != annotated_) {
      throw Error(ErrorKind::kParse, "sentence mixes annotated and unannotated words", line_no);
    }
    annotated_ = has_upos;

    current_.tokens.push_back(Token::from_surface(std::string(fields[1])));
    if (!has_upos) return;

    auto upos = parse_upos(fields[3]);
    if (!upos) {
      throw Error(ErrorKind::kParse, "unknown UPOS tag '" + std::string(fields[3]) + "'", line_no);
    }
    auto head = parse_index(fields[6]);
    if (!head) {
      throw Error(ErrorKind::kParse, "HEAD is not a non-negative integer: '" +
                                         std::string(fields[6]) + "'",
                  line_no);
    }
    current_.syntax.push_back(Dependency{*upos, *head, std::string(fields[7])});
  }

  void end_sentence() {
    if (current_.tokens.empty()) {
      pending_sent_id_.reset();
      return;
    }
    ++sentence_ordinal_;
    current_.id = pending_sent_id_ ? *pending_sent_id_ : "s" + std::to_string(sentence_ordinal_);
    pending_sent_id_.reset();
    try {
      validate_tree(current_);
    } catch (const Error& e) {
      throw Error(ErrorKind::kTreeStructure, e.what(), first_word_line_);
    }
    if (in_document_) {
      current_doc_.sentences.push_back(std::move(current_));
    } else {
      Document single;
      single.id = current_.id;
      single.sentences.push_back(std::move(current_));
      add_document(std::move(single));
    }
    current_ = Sentence{};
    annotated_ = false;
  }

  Corpus finish() {
    end_sentence();
    flush_document();
    if (corpus_.documents.empty()) throw Error(ErrorKind::kEmptyStream, "CoNLL-U input contains no sentences");
    return std::move(corpus_);
  }

 private:
  void flush_document() {
    if (in_document_ && !current_doc_.sentences.empty()) add_document(std::move(current_doc_));
    current_doc_ = Document{};
    in_document_ = false;
  }

  void add_document(Document doc) {
    if (!doc_ids_.insert(doc.id).second) {
      throw Error(ErrorKind::kValidation, "duplicate document id '" + doc.id + "'");
    }
    corpus_.documents.push_back(std::move(doc));
  }

  Corpus corpus_;
  Document current_doc_;
  Sentence current_;
  std::unordered_set<std::string> doc_ids_;
  std::optional<std::string> pending_sent_id_;
  std::size_t sentence_ordinal_ = 0;
  std::size_t newdoc_count_ = 0;
  std::size_t first_word_line_ = 0;
  bool in_document_ = false;
  bool annotated_ = false;
};

}  // namespace

Token Token::from_surface(std::string surface) {
  if (surface.empty()) throw Error(ErrorKind::kValidation, "empty token");
  Token token;
  token.is_punct = unicode::is_punct_or_symbol(surface);
  token.is_digit = unicode::is_decimal_digits(surface);
  token.surface = std::move(surface);
  return token;
}

std::size_t Corpus::sentence_count() const {
  std::size_t n = 0;
  for (const auto& doc : documents) n += doc.sentences.size();
  return n;
}

std::size_t Corpus::token_count() const {
  std::size_t n = 0;
  for (const auto& doc : documents)
    for (const auto& s : doc.sentences) n += s.tokens.size();
  return n;
}

void validate_tree(const Sentence& sentence) {
  if (!sentence.annotated()) return;
  const auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::kTreeStructure, "sentence '" + sentence.id + "': " + what);
  };
  const std::size_t n = sentence.syntax.size();
  if (n != sentence.tokens.size()) fail("annotation count does not match token count");

  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto head = sentence.syntax[i].head;
    if (head > n) fail("head " + std::to_string(head) + " of word " + std::to_string(i + 1) + " out of range");
    if (head == i + 1) fail("word " + std::to_string(i + 1) + " is its own head");
    if (head == 0) ++roots;
  }
  if (roots != 1) fail("expected exactly one root, found " + std::to_string(roots));

  // 0 = unvisited, 1 = on the current path, 2 = known to reach the root.
  std::vector<std::uint8_t> state(n, 0);
  std::vector<std::size_t> path;
  for (std::size_t start = 0; start < n; ++start) {
    path.clear();
    std::size_t v = start;
    while (true) {
      if (state[v] == 2) break;
      if (state[v] == 1) fail("cycle through word " + std::to_string(v + 1));
      state[v] = 1;
      path.push_back(v);
      const auto head = sentence.syntax[v].head;
      if (head == 0) break;
      v = head - 1;
    }
    for (auto u : path) state[u] = 2;
  }
}

Corpus parse_conllu(std::string_view text, std::string language) {
  require_utf8(text);
  text = strip_bom(text);
  ConlluBuilder builder(std::move(language));
  LineReader reader(text);
  std::string_view line;
  while (reader.next(line)) {
    if (is_blank(line)) {
      builder.end_sentence();
      continue;
    }
    if (line.front() == '#') {
      builder.on_comment(line);
      continue;
    }
    auto fields = split_tabs(line);
    if (fields.size() != 10) {
      throw Error(ErrorKind::kParse,
                  "expected 10 tab-separated columns, found " + std::to_string(fields.size()),
                  reader.number());
    }
    const auto id = fields[0];
    if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) {
      continue;  // multiword-token range or empty node
    }
    builder.on_word(fields, reader.number());
  }
  return builder.finish();
}

std::string write_conllu(const Corpus& corpus) {
  std::string out;
  for (const auto& doc : corpus.documents) {
    out += "# newdoc id = " + doc.id + "\n";
    for (const auto& sentence : doc.sentences) {
      out += "# sent_id = " + sentence.id + "\n";
      for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
        out += std::to_string(i + 1);
        out += '\t';
        out += sentence.tokens[i].surface;
        out += "\t_\t";
        if (sentence.annotated()) {
          const auto& dep = sentence.syntax[i];
          out += to_string(dep.upos);
          out += "\t_\t_\t";
          out += std::to_string(dep.head);
          out += '\t';
          out += dep.deprel.empty() ? std::string("_") : dep.deprel;
        } else {
          out += "_\t_\t_\t_\t_";
        }
        out += "\t_\t_\n";
      }
      out += '\n';
    }
  }
  return out;
}

Corpus load_tokenized(std::string_view text, std::string language) {
  using nlohmann::json;
  require_utf8(text);
  text = strip_bom(text);

  Corpus corpus;
  corpus.language = std::move(language);
  std::unordered_set<std::string> ids;
  LineReader reader(text);
  std::string_view line;
  while (reader.next(line)) {
    if (is_blank(line)) continue;
    const auto line_no = reader.number();
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::kParse, std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!record.is_object()) throw Error(ErrorKind::kSchema, "record is not a JSON object", line_no);
    auto id_it = record.find("id");
    if (id_it == record.end() || !id_it->is_string()) {
      throw Error(ErrorKind::kSchema, "missing string field 'id'", line_no);
    }
    auto sentences_it = record.find("sentences");
    if (sentences_it == record.end() || !sentences_it->is_array()) {
      throw Error(ErrorKind::kSchema, "missing array field 'sentences'", line_no);
    }

    Document doc;
    doc.id = id_it->get<std::string>();
    if (sentences_it->empty()) {
      throw Error(ErrorKind::kValidation, "document '" + doc.id + "' has no sentences", line_no);
    }
    std::size_t ordinal = 0;
    for (const auto& sentence_json : *sentences_it) {
      ++ordinal;
      if (!sentence_json.is_array()) {
        throw Error(ErrorKind::kSchema, "sentence " + std::to_string(ordinal) + " is not an array", line_no);
      }
      if (sentence_json.empty()) {
        throw Error(ErrorKind::kValidation, "sentence " + std::to_string(ordinal) + " is empty", line_no);
      }
      Sentence sentence;
      sentence.id = doc.id + "." + std::to_string(ordinal);
      for (const auto& token_json : sentence_json) {
        if (!token_json.is_string()) {
          throw Error(ErrorKind::kSchema, "token in sentence " + std::to_string(ordinal) + " is not a string",
                      line_no);
        }
        auto surface = token_json.get<std::string>();
        if (surface.empty()) {
          throw Error(ErrorKind::kValidation, "empty token in sentence " + std::to_string(ordinal), line_no);
        }
        sentence.tokens.push_back(Token::from_surface(std::move(surface)));
      }
      doc.sentences.push_back(std::move(sentence));
    }
    if (!ids.insert(doc.id).second) {
      throw Error(ErrorKind::kValidation, "duplicate document id '" + doc.id + "'", line_no);
    }
    corpus.documents.push_back(std::move(doc));
  }
  if (corpus.documents.empty()) throw Error(ErrorKind::kEmptyStream, "tokenized input contains no documents");
  return corpus;
}

std::vector<std::string> lexical_word_stream(const Corpus& corpus, bool fold_case) {
  std::vector<std::string> words;
  for (const auto& doc : corpus.documents) {
    for (const auto& sentence : doc.sentences) {
      for (const auto& token : sentence.tokens) {
        if (token.is_punct || token.is_digit) continue;
        words.push_back(fold_case ? unicode::to_lower(token.surface) : token.surface);
      }
    }
  }
  if (words.empty()) throw Error(ErrorKind::kEmptyStream, "no words left after removing punctuation and digits");
  return words;
}

}  // namespace natcorpus
