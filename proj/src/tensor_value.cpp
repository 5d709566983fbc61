// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/tensor_value.hpp"

#include <cassert>

namespace tb {

TensorValue TensorValue::zeros(DType dtype, const Shape& shape) {
    return {shape, Buffer(dtype, shape.numel())};
}

TensorValue TensorValue::full(DType dtype, const Shape& shape, double value) {
    TensorValue v = zeros(dtype, shape);
    for (std::size_t i = 0; i < v.numel(); ++i) v.buffer.set(i, value);
    return v;
}

TensorValue TensorValue::from_doubles(DType dtype, const Shape& shape,
                                      std::span<const double> values) {
    assert(values.size() == shape.numel());
    return {shape, Buffer::from_doubles(dtype, values)};
}

TensorValue TensorValue::scalar(DType dtype, double value) {
    return full(dtype, Shape{}, value);
}

std::vector<double> TensorValue::to_doubles() const {
    std::vector<double> out(numel());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = buffer.at(i);
    return out;
}

double TensorValue::item() const {
    assert(numel() == 1);
    return buffer.at(0);
}

bool TensorValue::bit_equal(const TensorValue& other) const {
    return shape == other.shape && buffer.bit_equal(other.buffer);
}

}  // namespace tb
