// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/shape.hpp"

#include <algorithm>

#include "tensorbridge/error.hpp"

namespace tb {

std::size_t Shape::numel() const {
    std::size_t n = 1;
    for (std::size_t d : dims_) n *= d;
    return n;
}

std::string Shape::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (i > 0) s += ',';
        s += std::to_string(dims_[i]);
    }
    s += ']';
    return s;
}

std::vector<std::size_t> row_major_strides(const Shape& shape) {
    std::vector<std::size_t> strides(shape.rank(), 1);
    for (std::size_t i = shape.rank(); i-- > 1;) {
        strides[i - 1] = strides[i] * shape.dim(i);
    }
    return strides;
}

Shape broadcast_shapes(const Shape& a, const Shape& b) {
    const std::size_t rank = std::max(a.rank(), b.rank());
    std::vector<std::size_t> out(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        // Trailing alignment: axis i counted from the end of each shape.
        const std::size_t da = i < a.rank() ? a.dim(a.rank() - 1 - i) : 1;
        const std::size_t db = i < b.rank() ? b.dim(b.rank() - 1 - i) : 1;
        if (da != db && da != 1 && db != 1) {
            fail(ErrorKind::ShapeMismatch,
                 "cannot broadcast " + a.to_string() + " with " + b.to_string());
        }
        out[rank - 1 - i] = std::max(da, db);
    }
    return Shape(std::move(out));
}

std::vector<std::size_t> broadcast_strides(const Shape& input, const Shape& out) {
    const auto in_strides = row_major_strides(input);
    std::vector<std::size_t> strides(out.rank(), 0);
    for (std::size_t i = 0; i < input.rank(); ++i) {
        const std::size_t in_axis = input.rank() - 1 - i;
        const std::size_t out_axis = out.rank() - 1 - i;
        strides[out_axis] = input.dim(in_axis) == 1 ? 0 : in_strides[in_axis];
    }
    return strides;
}

std::vector<std::size_t> unravel_index(std::size_t flat, const Shape& shape) {
    std::vector<std::size_t> coords(shape.rank());
    for (std::size_t i = shape.rank(); i-- > 0;) {
        coords[i] = flat % shape.dim(i);
        flat /= shape.dim(i);
    }
    return coords;
}

}  // namespace tb
