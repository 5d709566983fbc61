// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/backends/plain.hpp"

#include <vector>

namespace tb::plain {

Array Array::from_value(TensorValue v) {
    Array a;
    a.value_ = std::make_shared<const TensorValue>(std::move(v));
    return a;
}

Array apply(const OpDescriptor& op, std::span<const Array> inputs) {
    std::vector<TensorValue> vals;
    vals.reserve(inputs.size());
    for (const Array& a : inputs) vals.push_back(a.value());
    return Array::from_value(eval_op(op, vals));
}

}  // namespace tb::plain
