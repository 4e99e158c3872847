#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lnd {

/// Operands live in different variable contexts.
struct RingMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A caller-supplied time budget ran out before the computation finished.
struct DeadlineExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An input violates a documented precondition (e.g. a kernel pair that does
/// not annihilate the derivation).
struct PreconditionViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A postcondition that must hold by construction failed. Never recoverable.
struct InternalInconsistency : std::logic_error {
  using std::logic_error::logic_error;
};

struct ParseError : std::invalid_argument {
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

}  // namespace lnd
