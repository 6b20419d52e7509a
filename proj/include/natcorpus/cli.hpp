#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "natcorpus/error.hpp"

namespace natcorpus::cli {

// Process exit codes. Stable; documented in the README.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,        // bad flags or argument values
  kExitInput = 2,        // parse, encoding, schema, validation, missing annotation
  kExitEmpty = 3,        // empty word stream / corpus / n-gram table
  kExitTree = 4,         // dependency heads do not form a tree
  kExitIo = 5,           // unreadable input or unwritable output
  kExitInternal = 6,
};

int exit_code_for(ErrorKind kind);

// Runs `natcorpus <args...>`; args excludes the program name. Reports go to
// `out` unless redirected by --out, diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace natcorpus::cli
