// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/error.hpp"

namespace tb {

std::string_view error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::UnknownBackend: return "UnknownBackend";
        case ErrorKind::MixedBackends: return "MixedBackends";
        case ErrorKind::DTypeMismatch: return "DTypeMismatch";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::InvalidAxis: return "InvalidAxis";
        case ErrorKind::EmptyReduction: return "EmptyReduction";
        case ErrorKind::NonDifferentiableOp: return "NonDifferentiableOp";
        case ErrorKind::NotScalarLoss: return "NotScalarLoss";
        case ErrorKind::TapeConsumed: return "TapeConsumed";
        case ErrorKind::NotWatched: return "NotWatched";
        case ErrorKind::NonScalarOutput: return "NonScalarOutput";
        case ErrorKind::UntraceableOp: return "UntraceableOp";
        case ErrorKind::NoAutodiffCapability: return "NoAutodiffCapability";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
      kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace tb
