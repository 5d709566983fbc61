// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tb {

/// Closed error taxonomy. The conformance harness compares backends by these
/// kinds, so every user-visible failure must map onto exactly one of them.
enum class ErrorKind {
    UnknownBackend,
    MixedBackends,
    DTypeMismatch,
    ShapeMismatch,
    InvalidAxis,
    EmptyReduction,
    NonDifferentiableOp,
    NotScalarLoss,
    TapeConsumed,
    NotWatched,
    NonScalarOutput,
    UntraceableOp,
    NoAutodiffCapability,
    ParseError,
    IoError,
};

std::string_view error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message);
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace tb
