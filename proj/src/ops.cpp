// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/ops.hpp"

#include <array>
#include <sstream>

namespace tb {

namespace {

// One row per tier-1 kind, in table order. `differentiable` means a nonzero
// gradient can flow through (false for sign and the argreduces, whose
// derivative is identically zero, and for creation kinds).
constexpr std::array<OpInfo, 35> kOpTable = {{
    {OpKind::Square, "square", "unary", OpArity::Unary, true, "-"},
    {OpKind::Sqrt, "sqrt", "unary", OpArity::Unary, true, "-"},
    {OpKind::Exp, "exp", "unary", OpArity::Unary, true, "-"},
    {OpKind::Log, "log", "unary", OpArity::Unary, true, "-"},
    {OpKind::Abs, "abs", "unary", OpArity::Unary, true, "-"},
    {OpKind::Neg, "neg", "unary", OpArity::Unary, true, "-"},
    {OpKind::Sign, "sign", "unary", OpArity::Unary, false, "-"},
    {OpKind::Reciprocal, "reciprocal", "unary", OpArity::Unary, true, "-"},
    {OpKind::Add, "add", "binary", OpArity::Binary, true, "scalar?"},
    {OpKind::Sub, "sub", "binary", OpArity::Binary, true, "scalar?"},
    {OpKind::Mul, "mul", "binary", OpArity::Binary, true, "scalar?"},
    {OpKind::Div, "div", "binary", OpArity::Binary, true, "scalar?"},
    {OpKind::Pow, "pow", "binary", OpArity::Binary, true, "scalar?"},
    {OpKind::Minimum, "minimum", "binary", OpArity::Binary, true, "scalar?"},
    {OpKind::Maximum, "maximum", "binary", OpArity::Binary, true, "scalar?"},
    {OpKind::Sum, "sum", "reduction", OpArity::Unary, true, "axes?,keepdims"},
    {OpKind::Mean, "mean", "reduction", OpArity::Unary, true, "axes?,keepdims"},
    {OpKind::Prod, "prod", "reduction", OpArity::Unary, true, "axes?,keepdims"},
    {OpKind::Min, "min", "reduction", OpArity::Unary, true, "axes?,keepdims"},
    {OpKind::Max, "max", "reduction", OpArity::Unary, true, "axes?,keepdims"},
    {OpKind::Argmax, "argmax", "argreduce", OpArity::Unary, false, "axis"},
    {OpKind::Argmin, "argmin", "argreduce", OpArity::Unary, false, "axis"},
    {OpKind::Reshape, "reshape", "shape", OpArity::Unary, true, "shape"},
    {OpKind::Flatten, "flatten", "shape", OpArity::Unary, true, "-"},
    {OpKind::Transpose, "transpose", "shape", OpArity::Unary, true, "-"},
    {OpKind::ExpandDims, "expand_dims", "shape", OpArity::Unary, true, "axis"},
    {OpKind::Squeeze, "squeeze", "shape", OpArity::Unary, true, "axis"},
    {OpKind::Clip, "clip", "misc", OpArity::Unary, true, "lo,hi"},
    {OpKind::Where, "where", "misc", OpArity::Ternary, true, "-"},
    {OpKind::Zeros, "zeros", "creation", OpArity::Nullary, false, "shape,dtype"},
    {OpKind::Ones, "ones", "creation", OpArity::Nullary, false, "shape,dtype"},
    {OpKind::Full, "full", "creation", OpArity::Nullary, false, "shape,value,dtype"},
    {OpKind::Arange, "arange", "creation", OpArity::Nullary, false, "n,dtype"},
    {OpKind::FromValues, "from_values", "creation", OpArity::Nullary, false,
     "shape,values,dtype"},
    {OpKind::Norm, "norm", "derived", OpArity::Unary, true, "-"},
}};

}  // namespace

std::span<const OpInfo> op_table() { return kOpTable; }

const OpInfo& op_info(OpKind kind) {
    return kOpTable[static_cast<std::size_t>(kind)];
}

std::string_view op_name(OpKind kind) { return op_info(kind).name; }

std::optional<OpKind> op_kind_from_name(std::string_view name) {
    for (const OpInfo& info : kOpTable) {
        if (info.name == name) return info.kind;
    }
    return std::nullopt;
}

std::string describe_op(const OpDescriptor& op) {
    std::ostringstream s;
    s << op_name(op.kind);
    if (op.axes) {
        s << "|axes=";
        for (std::size_t i = 0; i < op.axes->size(); ++i) {
            if (i > 0) s << ',';
            s << (*op.axes)[i];
        }
    }
    if (op.keepdims) s << "|keepdims";
    if (op.scalar) s << "|scalar=" << *op.scalar;
    if (op.clip_lo) s << "|lo=" << *op.clip_lo;
    if (op.clip_hi) s << "|hi=" << *op.clip_hi;
    if (op.shape) s << "|shape=" << op.shape->to_string();
    if (op.values) {
        s << "|values=";
        for (std::size_t i = 0; i < op.values->size(); ++i) {
            if (i > 0) s << ',';
            s << (*op.values)[i];
        }
    }
    if (op.dtype) s << "|dtype=" << dtype_name(*op.dtype);
    return s.str();
}

}  // namespace tb
