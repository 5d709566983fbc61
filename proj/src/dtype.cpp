// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/dtype.hpp"

namespace tb {

std::optional<DType> dtype_from_name(std::string_view name) {
    if (name == "f32") return DType::F32;
    if (name == "f64") return DType::F64;
    return std::nullopt;
}

}  // namespace tb
