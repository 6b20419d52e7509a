#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace natcorpus {

enum class ErrorKind {
  kParse,              // malformed CoNLL-U line
  kEncoding,           // input is not valid UTF-8
  kSchema,             // JSON record has the wrong shape
  kValidation,         // well-formed input violating a data invariant
  kTreeStructure,      // head links do not form a single rooted tree
  kMissingAnnotation,  // syntactic operation on an unannotated sentence
  kEmptyStream,        // nothing left to measure
  kSupport,            // KL term with P(w) > 0 and M(w) = 0
  kShape,              // matrix / table dimensions disagree
  kInvalidArgument,
  kIo,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library. `line()` is 1-based when the error
// points into an input stream and 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::size_t line = 0);

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::size_t line_;
};

}  // namespace natcorpus
