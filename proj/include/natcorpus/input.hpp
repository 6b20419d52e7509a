#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "natcorpus/corpus.hpp"

namespace natcorpus {

enum class CorpusFormat { kConllu, kTokenizedJsonl };

// Reads a whole file, transparently inflating gzip input (sniffed by magic
// bytes, multi-member streams supported).
std::string read_input(const std::filesystem::path& path);

bool is_gzip(std::string_view bytes);
std::string gunzip(std::string_view bytes);

// JSONL if the first non-blank character is '{', CoNLL-U otherwise.
CorpusFormat sniff_format(std::string_view text);

Corpus parse_corpus(std::string_view text, std::string language = "und");

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

}  // namespace natcorpus
