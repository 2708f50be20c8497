#pragma once

#include <stdexcept>
#include <string>

namespace webspell {

/// Raised when a caller breaks an operation's precondition (bad n-gram
/// order, empty candidate set, non-positive corpus size, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A count line or count file could not be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A persisted index is truncated, fails its checksum, or is otherwise
/// not something save_index could have written.
class CorruptIndex : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VersionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyCorpus : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text too short to induce the requested number of errors.
class InsufficientText : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace webspell
