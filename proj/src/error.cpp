#include "natcorpus/error.hpp"

namespace natcorpus {

namespace {

std::string decorate(const std::string& message, std::size_t line) {
  if (line == 0) return message;
  return "line " + std::to_string(line) + ": " + message;
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kEncoding: return "encoding";
    case ErrorKind::kSchema: return "schema";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kTreeStructure: return "tree-structure";
    case ErrorKind::kMissingAnnotation: return "missing-annotation";
    case ErrorKind::kEmptyStream: return "empty-stream";
    case ErrorKind::kSupport: return "support";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::size_t line)
    : std::runtime_error(decorate(message, line)), kind_(kind), line_(line) {}

}  // namespace natcorpus
