// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/buffer.hpp"

#include <atomic>
#include <cstring>

namespace tb {

namespace {
std::atomic<std::size_t> g_alloc_count{0};
}

std::size_t buffer_alloc_count() { return g_alloc_count.load(); }

Buffer::Buffer(DType dtype, std::size_t count)
    : dtype_(dtype), count_(count), bytes_(count * dtype_size(dtype)) {
    g_alloc_count.fetch_add(1, std::memory_order_relaxed);
}

Buffer::Buffer(const Buffer& other)
    : dtype_(other.dtype_), count_(other.count_), bytes_(other.bytes_) {
    g_alloc_count.fetch_add(1, std::memory_order_relaxed);
}

Buffer& Buffer::operator=(const Buffer& other) {
    if (this != &other) {
        dtype_ = other.dtype_;
        count_ = other.count_;
        bytes_ = other.bytes_;
        g_alloc_count.fetch_add(1, std::memory_order_relaxed);
    }
    return *this;
}

Buffer Buffer::from_doubles(DType dtype, std::span<const double> values) {
    Buffer b(dtype, values.size());
    for (std::size_t i = 0; i < values.size(); ++i) b.set(i, values[i]);
    return b;
}

double Buffer::at(std::size_t i) const {
    return dtype_ == DType::F32 ? static_cast<double>(as<float>()[i])
                                : as<double>()[i];
}

void Buffer::set(std::size_t i, double v) {
    if (dtype_ == DType::F32) {
        as<float>()[i] = static_cast<float>(v);
    } else {
        as<double>()[i] = v;
    }
}

bool Buffer::bit_equal(const Buffer& other) const {
    return dtype_ == other.dtype_ && count_ == other.count_ &&
           std::memcmp(bytes_.data(), other.bytes_.data(), bytes_.size()) == 0;
}

}  // namespace tb
