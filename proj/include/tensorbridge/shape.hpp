// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace tb {

/// Extents of a row-major tensor. Rank 0 denotes a scalar.
class Shape {
  public:
    Shape() = default;
    Shape(std::initializer_list<std::size_t> dims) : dims_(dims) {}
    explicit Shape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {}

    std::size_t rank() const { return dims_.size(); }
    std::size_t dim(std::size_t axis) const { return dims_[axis]; }
    std::size_t numel() const;
    const std::vector<std::size_t>& dims() const { return dims_; }

    bool operator==(const Shape&) const = default;

    /// e.g. "[2,3]"; rank 0 prints "[]".
    std::string to_string() const;

  private:
    std::vector<std::size_t> dims_;
};

/// Row-major strides in elements; stride 1 for the last axis.
std::vector<std::size_t> row_major_strides(const Shape& shape);

/// NumPy trailing-alignment broadcast; throws ShapeMismatch when extents
/// differ and neither is 1.
Shape broadcast_shapes(const Shape& a, const Shape& b);

/// Strides of `input` viewed through `out` (trailing-aligned); broadcast axes
/// get stride 0. Precondition: shapes are broadcast-compatible.
std::vector<std::size_t> broadcast_strides(const Shape& input, const Shape& out);

/// Decomposes a flat row-major index of `shape` into coordinates.
std::vector<std::size_t> unravel_index(std::size_t flat, const Shape& shape);

}  // namespace tb
