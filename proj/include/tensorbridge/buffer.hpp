// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tensorbridge/dtype.hpp"

namespace tb {

/// Number of element-buffer allocations performed so far in this process.
/// Wrapping/unwrapping tensors must leave this counter untouched; the
/// acceptance suite checks that.
std::size_t buffer_alloc_count();

/// Contiguous dtype-tagged element storage. Copies allocate (and count as
/// allocations); moves do not.
class Buffer {
  public:
    Buffer() = default;
    Buffer(DType dtype, std::size_t count);  // zero-filled

    Buffer(const Buffer& other);
    Buffer& operator=(const Buffer& other);
    Buffer(Buffer&&) noexcept = default;
    Buffer& operator=(Buffer&&) noexcept = default;

    static Buffer from_doubles(DType dtype, std::span<const double> values);

    DType dtype() const { return dtype_; }
    std::size_t size() const { return count_; }

    template <typename T>
    std::span<T> as() {
        return {reinterpret_cast<T*>(bytes_.data()), count_};
    }
    template <typename T>
    std::span<const T> as() const {
        return {reinterpret_cast<const T*>(bytes_.data()), count_};
    }

    double at(std::size_t i) const;
    void set(std::size_t i, double v);

    bool bit_equal(const Buffer& other) const;

  private:
    DType dtype_ = DType::F64;
    std::size_t count_ = 0;
    std::vector<std::byte> bytes_;
};

}  // namespace tb
