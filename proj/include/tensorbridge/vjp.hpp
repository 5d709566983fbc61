// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "tensorbridge/ops.hpp"
#include "tensorbridge/tensor_value.hpp"

namespace tb {

/// Whether a reverse-mode rule exists for `kind`. Creation kinds and the
/// derived norm (which the facade expands into its primitive chain) have
/// none.
bool has_vjp_rule(OpKind kind);

/// Reverse-mode rule table shared by the imperative, tape and functional
/// backends. Maps the output cotangent to one cotangent per tensor input;
/// cotangents of broadcast inputs are sum-reduced back to the input shape.
///
/// Non-smooth conventions: abs'(0) = 0, sign' = 0 everywhere, argreduce
/// cotangents are zero, minimum/maximum ties route to the first operand,
/// clip passes the cotangent through on the closed interval [lo, hi].
/// Throws NonDifferentiableOp for kinds outside the rule table.
std::vector<TensorValue> vjp(const OpDescriptor& op,
                             std::span<const TensorValue> inputs,
                             const TensorValue& output,
                             const TensorValue& cotangent);

/// Sums `cot` over broadcast axes so the result has shape `target`.
TensorValue reduce_to_shape(const TensorValue& cot, const Shape& target);

}  // namespace tb
