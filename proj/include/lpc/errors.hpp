#pragma once

#include <stdexcept>
#include <string>

namespace lpc {

struct ParseError : std::runtime_error {
  enum class Kind { Syntax, ArityMismatch, ModeMismatch, UnboundOperator };

  int line;
  int col;
  Kind kind;

  ParseError(Kind k, int l, int c, const std::string& msg)
      : std::runtime_error(msg), line(l), col(c), kind(k) {}

  std::string describe() const {
    return std::to_string(line) + ":" + std::to_string(col) + ": " + kind_name() + ": " + what();
  }

  const char* kind_name() const {
    switch (kind) {
      case Kind::Syntax: return "syntax error";
      case Kind::ArityMismatch: return "arity mismatch";
      case Kind::ModeMismatch: return "mode mismatch";
      case Kind::UnboundOperator: return "unbound operator";
    }
    return "error";
  }
};

struct CompileError : std::runtime_error {
  enum class Kind { UnpreprocessedConnective, IllFormed };
  Kind kind;
  CompileError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// A fused solver was handed a clause that is not ∀x⃗.(R ⊃ p x⃗).
struct MalformedClause : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-ground left side of a match while strict matching is on.
struct StrictMatchViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StaleCheckpoint : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace lpc
