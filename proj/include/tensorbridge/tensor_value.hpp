// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "tensorbridge/buffer.hpp"
#include "tensorbridge/shape.hpp"

namespace tb {

/// Shape + element storage. This is the concrete value every backend tensor
/// carries; autodiff state lives in the backends, not here.
struct TensorValue {
    Shape shape;
    Buffer buffer;

    DType dtype() const { return buffer.dtype(); }
    std::size_t rank() const { return shape.rank(); }
    std::size_t numel() const { return shape.numel(); }

    static TensorValue zeros(DType dtype, const Shape& shape);
    static TensorValue full(DType dtype, const Shape& shape, double value);
    static TensorValue from_doubles(DType dtype, const Shape& shape,
                                    std::span<const double> values);
    static TensorValue scalar(DType dtype, double value);

    std::vector<double> to_doubles() const;
    double item() const;  // requires numel() == 1

    bool bit_equal(const TensorValue& other) const;
};

}  // namespace tb
