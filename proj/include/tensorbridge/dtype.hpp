// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace tb {

/// Element type of a tensor. Binary ops never promote; mixing dtypes is an error.
enum class DType { F32, F64 };

constexpr std::size_t dtype_size(DType d) { return d == DType::F32 ? 4 : 8; }

constexpr std::string_view dtype_name(DType d) {
    return d == DType::F32 ? "f32" : "f64";
}

std::optional<DType> dtype_from_name(std::string_view name);

// Invokes f with a value of the corresponding element type (float or double).
template <typename F>
decltype(auto) dispatch_dtype(DType d, F&& f) {
    if (d == DType::F32) {
        return f(float{});
    }
    return f(double{});
}

}  // namespace tb
