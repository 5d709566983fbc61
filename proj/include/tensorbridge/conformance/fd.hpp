// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "tensorbridge/tensor_value.hpp"

namespace tb::conformance {

/// Central-difference gradient estimate of a scalar-valued function,
/// coordinate by coordinate: (f(x + h e_i) - f(x - h e_i)) / (2h).
TensorValue finite_diff_grad(const std::function<double(const TensorValue&)>& f,
                             const TensorValue& x, double h = 1e-6);

}  // namespace tb::conformance
