// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tensorbridge/tensor_value.hpp"

namespace tb {

struct ParsedLiteral {
    Shape shape;
    std::vector<double> values;  // row-major
};

/// Parses the nested-bracket tensor text format, e.g. "[[1,2],[3,4]]" or a
/// bare scalar "3.5". Rank is inferred from nesting; ragged nesting, bad
/// numbers and trailing input are ParseError.
ParsedLiteral parse_tensor_literal(std::string_view text);

/// Renders a tensor in the same format with shortest round-trip decimals;
/// rank 0 prints the bare number.
std::string format_tensor(const TensorValue& v);

/// One element rendered at the dtype's precision.
std::string format_element(double v, DType dtype);

}  // namespace tb
