// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tensorbridge/dtype.hpp"
#include "tensorbridge/shape.hpp"

namespace tb {

/// The closed tier-1 operation set. Kernels, VJP rules, the facade surface
/// and the conformance generator all enumerate exactly these kinds.
enum class OpKind {
    // unary
    Square,
    Sqrt,
    Exp,
    Log,
    Abs,
    Neg,
    Sign,
    Reciprocal,
    // binary (broadcasting; each also has a tensor-scalar variant)
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Minimum,
    Maximum,
    // reductions (optional axes + keepdims)
    Sum,
    Mean,
    Prod,
    Min,
    Max,
    // argreduce (single axis, result stored in the floating dtype)
    Argmax,
    Argmin,
    // shape
    Reshape,
    Flatten,
    Transpose,
    ExpandDims,
    Squeeze,
    // misc
    Clip,
    Where,
    // creation
    Zeros,
    Ones,
    Full,
    Arange,
    FromValues,
    // derived
    Norm,
};

/// Symbolic description of one operation; the unit shared by kernels, VJP
/// rules and the conformance case generator.
struct OpDescriptor {
    OpKind kind;
    /// Reduction axes; absent means "all axes". Single-axis ops (argreduce,
    /// expand_dims, squeeze) use axes[0].
    std::optional<std::vector<int>> axes;
    bool keepdims = false;
    /// Scalar operand of a binary op's scalar variant; fill value of Full.
    std::optional<double> scalar;
    std::optional<double> clip_lo;
    std::optional<double> clip_hi;
    /// Reshape target; creation shape (Arange uses shape [n]).
    std::optional<Shape> shape;
    /// FromValues payload.
    std::optional<std::vector<double>> values;
    /// Creation dtype; computational ops take the dtype from their inputs.
    std::optional<DType> dtype;
};

enum class OpArity { Nullary, Unary, Binary, Ternary };

struct OpInfo {
    OpKind kind;
    std::string_view name;   // stable name used by the CLI and reports
    std::string_view group;  // unary|binary|reduction|argreduce|shape|misc|creation|derived
    OpArity arity;
    bool differentiable;     // whether a nonzero gradient can flow through
    std::string_view params; // "-" when the op takes none
};

/// The tier-1 registry in deterministic registration order.
std::span<const OpInfo> op_table();

const OpInfo& op_info(OpKind kind);
std::string_view op_name(OpKind kind);
std::optional<OpKind> op_kind_from_name(std::string_view name);

/// Canonical single-line rendering of kind + params; used for case hashing.
std::string describe_op(const OpDescriptor& op);

}  // namespace tb
