// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "tensorbridge/ops.hpp"
#include "tensorbridge/tensor_value.hpp"

namespace tb {

/// Forward evaluation shared by every backend. Pure: inputs are never
/// mutated and identical inputs give bitwise-identical outputs. Domain
/// violations (sqrt of negatives, division by zero) follow IEEE-754 and
/// never throw; structural violations throw the matching taxonomy error.
TensorValue eval_op(const OpDescriptor& op, std::span<const TensorValue> inputs);

/// Number of tensor inputs `op` expects (accounts for scalar variants).
std::size_t op_input_count(const OpDescriptor& op);

}  // namespace tb
