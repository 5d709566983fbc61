// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "tensorbridge/autodiff.hpp"
#include "tensorbridge/ops.hpp"

namespace tb::conformance {

/// One differentiable composite in the gradient test corpus. Every function
/// maps a tensor of `input_shape` to a rank-0 tensor through facade ops
/// only, and is smooth on the generator's input range.
struct CorpusFunction {
    std::string_view name;
    Shape input_shape;
    ScalarFn fn;
    std::vector<OpKind> uses;  // op kinds the body touches (drives --ops filtering)
};

/// The fixed corpus; together the functions exercise every differentiable
/// tier-1 kind, including broadcasting and shape-op gradient routing.
std::span<const CorpusFunction> gradient_corpus();

}  // namespace tb::conformance
