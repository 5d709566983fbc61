// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>

#include "tensorbridge/error.hpp"

// Kernel conventions: elements are loaded as double, combined in double and
// stored back at the tensor's dtype (so every op boundary rounds to storage
// precision); reductions accumulate in double. Domain violations follow
// IEEE-754. Every backend funnels through these kernels, which is what makes
// the backends numerically interchangeable.

namespace tb {

namespace {

using Unary = double (*)(double);

TensorValue map_unary(const TensorValue& x, Unary f) {
    TensorValue out = TensorValue::zeros(x.dtype(), x.shape);
    for (std::size_t i = 0; i < x.numel(); ++i) out.buffer.set(i, f(x.buffer.at(i)));
    return out;
}

double bin_add(double a, double b) { return a + b; }
double bin_sub(double a, double b) { return a - b; }
double bin_mul(double a, double b) { return a * b; }
double bin_div(double a, double b) { return a / b; }
double bin_pow(double a, double b) { return std::pow(a, b); }
// NaN propagates (either operand); ties keep the first operand.
double bin_minimum(double a, double b) {
    if (std::isnan(a)) return a;
    if (std::isnan(b)) return b;
    return a <= b ? a : b;
}
double bin_maximum(double a, double b) {
    if (std::isnan(a)) return a;
    if (std::isnan(b)) return b;
    return a >= b ? a : b;
}

double (*binary_fn(OpKind kind))(double, double) {
    switch (kind) {
        case OpKind::Add: return bin_add;
        case OpKind::Sub: return bin_sub;
        case OpKind::Mul: return bin_mul;
        case OpKind::Div: return bin_div;
        case OpKind::Pow: return bin_pow;
        case OpKind::Minimum: return bin_minimum;
        case OpKind::Maximum: return bin_maximum;
        default: assert(false); return nullptr;
    }
}

TensorValue map_binary(const TensorValue& a, const TensorValue& b,
                       double (*f)(double, double)) {
    if (a.dtype() != b.dtype()) {
        fail(ErrorKind::DTypeMismatch,
             std::string(dtype_name(a.dtype())) + " vs " +
                 std::string(dtype_name(b.dtype())));
    }
    const Shape out_shape = broadcast_shapes(a.shape, b.shape);
    const auto sa = broadcast_strides(a.shape, out_shape);
    const auto sb = broadcast_strides(b.shape, out_shape);
    TensorValue out = TensorValue::zeros(a.dtype(), out_shape);
    for (std::size_t flat = 0; flat < out.numel(); ++flat) {
        const auto coords = unravel_index(flat, out_shape);
        std::size_t ia = 0, ib = 0;
        for (std::size_t d = 0; d < coords.size(); ++d) {
            ia += coords[d] * sa[d];
            ib += coords[d] * sb[d];
        }
        out.buffer.set(flat, f(a.buffer.at(ia), b.buffer.at(ib)));
    }
    return out;
}

TensorValue map_binary_scalar(const TensorValue& a, double s,
                              double (*f)(double, double)) {
    TensorValue out = TensorValue::zeros(a.dtype(), a.shape);
    for (std::size_t i = 0; i < a.numel(); ++i) out.buffer.set(i, f(a.buffer.at(i), s));
    return out;
}

// Normalizes one axis into [0, rank); negative axes count from the end.
// `extended` admits rank itself (expand_dims can append).
std::size_t normalize_axis(int axis, std::size_t rank, bool extended = false) {
    const long hi = static_cast<long>(rank) + (extended ? 1 : 0);
    long a = axis;
    if (a < 0) a += hi;
    if (a < 0 || a >= hi) {
        fail(ErrorKind::InvalidAxis, "axis " + std::to_string(axis) +
                                         " out of range for rank " +
                                         std::to_string(rank));
    }
    return static_cast<std::size_t>(a);
}

// Resolves a reduction's axes list: absent or empty means all axes.
std::vector<bool> reduced_mask(const OpDescriptor& op, std::size_t rank) {
    std::vector<bool> mask(rank, false);
    if (!op.axes || op.axes->empty()) {
        mask.assign(rank, true);
        return mask;
    }
    for (int axis : *op.axes) {
        const std::size_t a = normalize_axis(axis, rank);
        if (mask[a]) {
            fail(ErrorKind::InvalidAxis, "duplicate axis " + std::to_string(axis));
        }
        mask[a] = true;
    }
    return mask;
}

Shape reduced_shape(const Shape& in, const std::vector<bool>& mask, bool keepdims) {
    std::vector<std::size_t> dims;
    for (std::size_t d = 0; d < in.rank(); ++d) {
        if (!mask[d]) {
            dims.push_back(in.dim(d));
        } else if (keepdims) {
            dims.push_back(1);
        }
    }
    return Shape(std::move(dims));
}

TensorValue reduce(const OpDescriptor& op, const TensorValue& x) {
    const auto mask = reduced_mask(op, x.rank());
    const Shape out_shape = reduced_shape(x.shape, mask, op.keepdims);

    std::size_t reduce_count = 1;
    for (std::size_t d = 0; d < x.rank(); ++d) {
        if (mask[d]) reduce_count *= x.shape.dim(d);
    }
    if (reduce_count == 0 &&
        (op.kind == OpKind::Min || op.kind == OpKind::Max)) {
        fail(ErrorKind::EmptyReduction,
             std::string(op_name(op.kind)) + " over zero elements");
    }

    const bool is_sum = op.kind == OpKind::Sum || op.kind == OpKind::Mean;
    const bool is_prod = op.kind == OpKind::Prod;
    std::vector<double> acc(out_shape.numel(), is_sum ? 0.0 : (is_prod ? 1.0 : 0.0));
    std::vector<bool> seen(out_shape.numel(), false);

    const auto out_strides = row_major_strides(out_shape);
    for (std::size_t flat = 0; flat < x.numel(); ++flat) {
        const auto coords = unravel_index(flat, x.shape);
        std::size_t out_flat = 0, out_d = 0;
        for (std::size_t d = 0; d < x.rank(); ++d) {
            if (mask[d]) {
                if (op.keepdims) ++out_d;  // kept axis pins coordinate 0
                continue;
            }
            out_flat += coords[d] * out_strides[out_d++];
        }
        const double v = x.buffer.at(flat);
        switch (op.kind) {
            case OpKind::Sum:
            case OpKind::Mean: acc[out_flat] += v; break;
            case OpKind::Prod: acc[out_flat] *= v; break;
            case OpKind::Min:
                acc[out_flat] = seen[out_flat] ? bin_minimum(acc[out_flat], v) : v;
                break;
            case OpKind::Max:
                acc[out_flat] = seen[out_flat] ? bin_maximum(acc[out_flat], v) : v;
                break;
            default: assert(false);
        }
        seen[out_flat] = true;
    }
    if (op.kind == OpKind::Mean) {
        for (double& v : acc) v /= static_cast<double>(reduce_count);
    }

    TensorValue out = TensorValue::zeros(x.dtype(), out_shape);
    for (std::size_t i = 0; i < acc.size(); ++i) out.buffer.set(i, acc[i]);
    return out;
}

TensorValue argreduce(const OpDescriptor& op, const TensorValue& x) {
    if (!op.axes || op.axes->size() != 1)
        fail(ErrorKind::InvalidAxis, "argreduce needs exactly one axis");
    const std::size_t axis = normalize_axis((*op.axes)[0], x.rank());
    const std::size_t extent = x.shape.dim(axis);
    if (extent == 0) fail(ErrorKind::EmptyReduction, "argreduce over empty axis");

    std::vector<std::size_t> dims;
    for (std::size_t d = 0; d < x.rank(); ++d) {
        if (d != axis) dims.push_back(x.shape.dim(d));
    }
    const Shape out_shape{std::vector<std::size_t>(dims)};
    TensorValue out = TensorValue::zeros(x.dtype(), out_shape);

    const auto strides = row_major_strides(x.shape);
    for (std::size_t out_flat = 0; out_flat < out_shape.numel(); ++out_flat) {
        const auto out_coords = unravel_index(out_flat, out_shape);
        std::size_t base = 0, oc = 0;
        for (std::size_t d = 0; d < x.rank(); ++d) {
            if (d != axis) base += out_coords[oc++] * strides[d];
        }
        std::size_t best_i = 0;
        double best_v = x.buffer.at(base);
        for (std::size_t k = 1; k < extent; ++k) {
            const double v = x.buffer.at(base + k * strides[axis]);
            const bool better =
                op.kind == OpKind::Argmax ? v > best_v : v < best_v;
            if (better) {  // strict: ties keep the lowest index
                best_v = v;
                best_i = k;
            }
        }
        out.buffer.set(out_flat, static_cast<double>(best_i));
    }
    return out;
}

TensorValue reshape_to(const TensorValue& x, const Shape& target) {
    if (target.numel() != x.numel()) {
        fail(ErrorKind::ShapeMismatch, "cannot reshape " + x.shape.to_string() +
                                           " (" + std::to_string(x.numel()) +
                                           " elements) to " + target.to_string());
    }
    TensorValue out = x;  // row-major order carries over unchanged
    out.shape = target;
    return out;
}

TensorValue transpose2d(const TensorValue& x) {
    if (x.rank() != 2) {
        fail(ErrorKind::ShapeMismatch,
             "transpose requires rank 2, got " + x.shape.to_string());
    }
    const std::size_t r = x.shape.dim(0), c = x.shape.dim(1);
    TensorValue out = TensorValue::zeros(x.dtype(), Shape{c, r});
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            out.buffer.set(j * r + i, x.buffer.at(i * c + j));
        }
    }
    return out;
}

TensorValue expand_dims(const TensorValue& x, int axis) {
    const std::size_t a = normalize_axis(axis, x.rank(), /*extended=*/true);
    std::vector<std::size_t> dims = x.shape.dims();
    dims.insert(dims.begin() + static_cast<long>(a), 1);
    return reshape_to(x, Shape(std::move(dims)));
}

TensorValue squeeze(const TensorValue& x, int axis) {
    const std::size_t a = normalize_axis(axis, x.rank());
    if (x.shape.dim(a) != 1) {
        fail(ErrorKind::InvalidAxis, "squeeze axis " + std::to_string(axis) +
                                         " has extent " +
                                         std::to_string(x.shape.dim(a)));
    }
    std::vector<std::size_t> dims = x.shape.dims();
    dims.erase(dims.begin() + static_cast<long>(a));
    return reshape_to(x, Shape(std::move(dims)));
}

TensorValue clip(const TensorValue& x, double lo, double hi) {
    TensorValue out = TensorValue::zeros(x.dtype(), x.shape);
    for (std::size_t i = 0; i < x.numel(); ++i) {
        double v = x.buffer.at(i);
        if (v < lo) v = lo;
        if (v > hi) v = hi;  // NaN fails both tests and passes through
        out.buffer.set(i, v);
    }
    return out;
}

TensorValue where(const TensorValue& c, const TensorValue& a, const TensorValue& b) {
    if (c.dtype() != a.dtype() || a.dtype() != b.dtype()) {
        fail(ErrorKind::DTypeMismatch, "where requires one dtype across inputs");
    }
    const Shape out_shape =
        broadcast_shapes(broadcast_shapes(c.shape, a.shape), b.shape);
    const auto sc = broadcast_strides(c.shape, out_shape);
    const auto sa = broadcast_strides(a.shape, out_shape);
    const auto sb = broadcast_strides(b.shape, out_shape);
    TensorValue out = TensorValue::zeros(a.dtype(), out_shape);
    for (std::size_t flat = 0; flat < out.numel(); ++flat) {
        const auto coords = unravel_index(flat, out_shape);
        std::size_t ic = 0, ia = 0, ib = 0;
        for (std::size_t d = 0; d < coords.size(); ++d) {
            ic += coords[d] * sc[d];
            ia += coords[d] * sa[d];
            ib += coords[d] * sb[d];
        }
        const bool take_a = c.buffer.at(ic) != 0.0;
        out.buffer.set(flat, take_a ? a.buffer.at(ia) : b.buffer.at(ib));
    }
    return out;
}

TensorValue create(const OpDescriptor& op) {
    const DType dtype = op.dtype.value_or(DType::F64);
    switch (op.kind) {
        case OpKind::Zeros: return TensorValue::zeros(dtype, *op.shape);
        case OpKind::Ones: return TensorValue::full(dtype, *op.shape, 1.0);
        case OpKind::Full: return TensorValue::full(dtype, *op.shape, *op.scalar);
        case OpKind::Arange: {
            const std::size_t n = op.shape->dim(0);
            TensorValue out = TensorValue::zeros(dtype, *op.shape);
            for (std::size_t i = 0; i < n; ++i) {
                out.buffer.set(i, static_cast<double>(i));
            }
            return out;
        }
        case OpKind::FromValues:
            return TensorValue::from_doubles(dtype, *op.shape, *op.values);
        default: assert(false); std::abort();
    }
}

}  // namespace

std::size_t op_input_count(const OpDescriptor& op) {
    switch (op_info(op.kind).arity) {
        case OpArity::Nullary: return 0;
        case OpArity::Unary: return 1;
        case OpArity::Binary: return op.scalar ? 1 : 2;
        case OpArity::Ternary: return 3;
    }
    return 0;
}

TensorValue eval_op(const OpDescriptor& op, std::span<const TensorValue> inputs) {
    assert(inputs.size() == op_input_count(op));
    switch (op.kind) {
        case OpKind::Square:
            return map_unary(inputs[0], [](double v) { return v * v; });
        case OpKind::Sqrt:
            return map_unary(inputs[0], [](double v) { return std::sqrt(v); });
        case OpKind::Exp:
            return map_unary(inputs[0], [](double v) { return std::exp(v); });
        case OpKind::Log:
            return map_unary(inputs[0], [](double v) { return std::log(v); });
        case OpKind::Abs:
            return map_unary(inputs[0], [](double v) { return std::fabs(v); });
        case OpKind::Neg:
            return map_unary(inputs[0], [](double v) { return -v; });
        case OpKind::Sign:
            return map_unary(inputs[0], [](double v) {
                if (std::isnan(v)) return v;
                return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
            });
        case OpKind::Reciprocal:
            return map_unary(inputs[0], [](double v) { return 1.0 / v; });

        case OpKind::Add:
        case OpKind::Sub:
        case OpKind::Mul:
        case OpKind::Div:
        case OpKind::Pow:
        case OpKind::Minimum:
        case OpKind::Maximum:
            if (op.scalar) {
                return map_binary_scalar(inputs[0], *op.scalar, binary_fn(op.kind));
            }
            return map_binary(inputs[0], inputs[1], binary_fn(op.kind));

        case OpKind::Sum:
        case OpKind::Mean:
        case OpKind::Prod:
        case OpKind::Min:
        case OpKind::Max:
            return reduce(op, inputs[0]);

        case OpKind::Argmax:
        case OpKind::Argmin:
            return argreduce(op, inputs[0]);

        case OpKind::Reshape:
            if (!op.shape) fail(ErrorKind::ShapeMismatch, "reshape needs a target shape");
            return reshape_to(inputs[0], *op.shape);
        case OpKind::Flatten:
            return reshape_to(inputs[0], Shape{inputs[0].numel()});
        case OpKind::Transpose: return transpose2d(inputs[0]);
        case OpKind::ExpandDims:
        case OpKind::Squeeze: {
            if (!op.axes || op.axes->size() != 1)
                fail(ErrorKind::InvalidAxis, "op needs exactly one axis");
            const int axis = (*op.axes)[0];
            return op.kind == OpKind::ExpandDims ? expand_dims(inputs[0], axis)
                                                 : squeeze(inputs[0], axis);
        }

        case OpKind::Clip:
            if (!op.clip_lo || !op.clip_hi)
                fail(ErrorKind::InvalidAxis, "clip needs lo and hi bounds");
            return clip(inputs[0], *op.clip_lo, *op.clip_hi);
        case OpKind::Where: return where(inputs[0], inputs[1], inputs[2]);

        case OpKind::Zeros:
        case OpKind::Ones:
        case OpKind::Full:
        case OpKind::Arange:
        case OpKind::FromValues:
            return create(op);

        case OpKind::Norm: {
            const TensorValue sq = eval_op({.kind = OpKind::Square}, inputs);
            const TensorValue s =
                eval_op({.kind = OpKind::Sum}, std::span<const TensorValue>(&sq, 1));
            return eval_op({.kind = OpKind::Sqrt},
                           std::span<const TensorValue>(&s, 1));
        }
    }
    assert(false);
    std::abort();
}

}  // namespace tb
