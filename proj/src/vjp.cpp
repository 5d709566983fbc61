// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/vjp.hpp"

#include <cassert>
#include <cmath>

#include "tensorbridge/error.hpp"
#include "tensorbridge/kernels.hpp"

namespace tb {

namespace {

// Elementwise map over the broadcast of (a, b) producing the broadcast shape.
template <typename F>
TensorValue map_broadcast(const TensorValue& a, const TensorValue& b, F f) {
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

template <typename F>
TensorValue map_elem(const TensorValue& x, F f) {
    TensorValue out = TensorValue::zeros(x.dtype(), x.shape);
    for (std::size_t i = 0; i < x.numel(); ++i) out.buffer.set(i, f(x.buffer.at(i)));
    return out;
}

// Cotangent of one side of a broadcasting binary op: elementwise factor on
// the broadcast grid, then sum-reduced to the operand's shape.
template <typename F>
TensorValue binary_side(const TensorValue& cot, const TensorValue& a,
                        const TensorValue& b, const Shape& operand_shape, F factor) {
    return reduce_to_shape(
        [&] {
            const Shape out_shape = cot.shape;
            const auto sa = broadcast_strides(a.shape, out_shape);
            const auto sb = broadcast_strides(b.shape, out_shape);
            TensorValue g = TensorValue::zeros(cot.dtype(), out_shape);
            for (std::size_t flat = 0; flat < g.numel(); ++flat) {
                const auto coords = unravel_index(flat, out_shape);
                std::size_t ia = 0, ib = 0;
                for (std::size_t d = 0; d < coords.size(); ++d) {
                    ia += coords[d] * sa[d];
                    ib += coords[d] * sb[d];
                }
                g.buffer.set(flat, cot.buffer.at(flat) *
                                       factor(a.buffer.at(ia), b.buffer.at(ib)));
            }
            return g;
        }(),
        operand_shape);
}

// Flat input index -> flat output index of the reduction described by `op`.
std::vector<std::size_t> reduction_cell_of(const OpDescriptor& op,
                                           const TensorValue& x,
                                           const Shape& out_shape) {
    std::vector<bool> mask(x.rank(), false);
    if (!op.axes || op.axes->empty()) {
        mask.assign(x.rank(), true);
    } else {
        for (int axis : *op.axes) {
            long a = axis;
            if (a < 0) a += static_cast<long>(x.rank());
            mask[static_cast<std::size_t>(a)] = true;
        }
    }
    const auto out_strides = row_major_strides(out_shape);
    std::vector<std::size_t> cell(x.numel());
    for (std::size_t flat = 0; flat < x.numel(); ++flat) {
        const auto coords = unravel_index(flat, x.shape);
        std::size_t out_flat = 0, out_d = 0;
        for (std::size_t d = 0; d < x.rank(); ++d) {
            if (mask[d]) {
                if (op.keepdims) ++out_d;
                continue;
            }
            out_flat += coords[d] * out_strides[out_d++];
        }
        cell[flat] = out_flat;
    }
    return cell;
}

std::vector<TensorValue> reduction_vjp(const OpDescriptor& op,
                                       const TensorValue& x,
                                       const TensorValue& output,
                                       const TensorValue& cot) {
    const auto cell = reduction_cell_of(op, x, output.shape);
    TensorValue dx = TensorValue::zeros(x.dtype(), x.shape);

    switch (op.kind) {
        case OpKind::Sum:
            for (std::size_t i = 0; i < x.numel(); ++i) {
                dx.buffer.set(i, cot.buffer.at(cell[i]));
            }
            break;
        case OpKind::Mean: {
            double count = 0;  // elements per cell = numel ratio
            count = static_cast<double>(x.numel()) /
                    static_cast<double>(output.numel());
            for (std::size_t i = 0; i < x.numel(); ++i) {
                dx.buffer.set(i, cot.buffer.at(cell[i]) / count);
            }
            break;
        }
        case OpKind::Prod: {
            // d prod / d x_i = product of the cell excluding x_i.
            std::vector<std::vector<std::size_t>> members(output.numel());
            for (std::size_t i = 0; i < x.numel(); ++i) members[cell[i]].push_back(i);
            for (std::size_t c = 0; c < members.size(); ++c) {
                for (std::size_t i : members[c]) {
                    double rest = 1.0;
                    for (std::size_t j : members[c]) {
                        if (j != i) rest *= x.buffer.at(j);
                    }
                    dx.buffer.set(i, cot.buffer.at(c) * rest);
                }
            }
            break;
        }
        case OpKind::Min:
        case OpKind::Max: {
            // Cotangent routes to the first extremal element of each cell
            // (row-major order breaks ties).
            std::vector<long> winner(output.numel(), -1);
            for (std::size_t i = 0; i < x.numel(); ++i) {
                const std::size_t c = cell[i];
                if (winner[c] < 0) {
                    winner[c] = static_cast<long>(i);
                    continue;
                }
                const double best = x.buffer.at(static_cast<std::size_t>(winner[c]));
                const double v = x.buffer.at(i);
                const bool better = op.kind == OpKind::Min ? v < best : v > best;
                if (better) winner[c] = static_cast<long>(i);
            }
            for (std::size_t c = 0; c < winner.size(); ++c) {
                dx.buffer.set(static_cast<std::size_t>(winner[c]), cot.buffer.at(c));
            }
            break;
        }
        default: assert(false);
    }
    return {std::move(dx)};
}

TensorValue reshape_like(const TensorValue& cot, const Shape& target) {
    TensorValue out = cot;
    out.shape = target;
    return out;
}

}  // namespace

bool has_vjp_rule(OpKind kind) {
    switch (kind) {
        case OpKind::Zeros:
        case OpKind::Ones:
        case OpKind::Full:
        case OpKind::Arange:
        case OpKind::FromValues:
        case OpKind::Norm:  // the facade expands norm before AD ever sees it
            return false;
        default: return true;
    }
}

TensorValue reduce_to_shape(const TensorValue& cot, const Shape& target) {
    if (cot.shape == target) return cot;
    const auto strides = broadcast_strides(target, cot.shape);
    std::vector<double> acc(target.numel(), 0.0);
    for (std::size_t flat = 0; flat < cot.numel(); ++flat) {
        const auto coords = unravel_index(flat, cot.shape);
        std::size_t it = 0;
        for (std::size_t d = 0; d < coords.size(); ++d) it += coords[d] * strides[d];
        acc[it] += cot.buffer.at(flat);
    }
    TensorValue out = TensorValue::zeros(cot.dtype(), target);
    for (std::size_t i = 0; i < acc.size(); ++i) out.buffer.set(i, acc[i]);
    return out;
}

std::vector<TensorValue> vjp(const OpDescriptor& op,
                             std::span<const TensorValue> inputs,
                             const TensorValue& output,
                             const TensorValue& cotangent) {
    if (!has_vjp_rule(op.kind)) {
        fail(ErrorKind::NonDifferentiableOp,
             std::string(op_name(op.kind)) + " has no VJP rule");
    }
    const TensorValue& cot = cotangent;
    switch (op.kind) {
        case OpKind::Square:
            return {map_broadcast(cot, inputs[0],
                                  [](double c, double x) { return c * 2.0 * x; })};
        case OpKind::Sqrt:
            return {map_broadcast(cot, output, [](double c, double y) {
                return c * 0.5 / y;
            })};
        case OpKind::Exp:
            return {map_broadcast(cot, output,
                                  [](double c, double y) { return c * y; })};
        case OpKind::Log:
            return {map_broadcast(cot, inputs[0],
                                  [](double c, double x) { return c / x; })};
        case OpKind::Abs:
            return {map_broadcast(cot, inputs[0], [](double c, double x) {
                return x > 0.0 ? c : (x < 0.0 ? -c : 0.0);  // abs'(0) = 0
            })};
        case OpKind::Neg:
            return {map_elem(cot, [](double c) { return -c; })};
        case OpKind::Sign:
            return {TensorValue::zeros(inputs[0].dtype(), inputs[0].shape)};
        case OpKind::Reciprocal:
            return {map_broadcast(cot, inputs[0], [](double c, double x) {
                return -c / (x * x);
            })};

        case OpKind::Add:
            if (op.scalar) return {reduce_to_shape(cot, inputs[0].shape)};
            return {reduce_to_shape(cot, inputs[0].shape),
                    reduce_to_shape(cot, inputs[1].shape)};
        case OpKind::Sub:
            if (op.scalar) return {reduce_to_shape(cot, inputs[0].shape)};
            return {reduce_to_shape(cot, inputs[0].shape),
                    reduce_to_shape(map_elem(cot, [](double c) { return -c; }),
                                    inputs[1].shape)};
        case OpKind::Mul: {
            if (op.scalar) {
                const double s = *op.scalar;
                return {map_elem(cot, [s](double c) { return c * s; })};
            }
            const TensorValue& a = inputs[0];
            const TensorValue& b = inputs[1];
            return {binary_side(cot, a, b, a.shape,
                                [](double, double bv) { return bv; }),
                    binary_side(cot, a, b, b.shape,
                                [](double av, double) { return av; })};
        }
        case OpKind::Div: {
            if (op.scalar) {
                const double s = *op.scalar;
                return {map_elem(cot, [s](double c) { return c / s; })};
            }
            const TensorValue& a = inputs[0];
            const TensorValue& b = inputs[1];
            return {binary_side(cot, a, b, a.shape,
                                [](double, double bv) { return 1.0 / bv; }),
                    binary_side(cot, a, b, b.shape, [](double av, double bv) {
                        return -av / (bv * bv);
                    })};
        }
        case OpKind::Pow: {
            if (op.scalar) {
                const double s = *op.scalar;
                return {map_broadcast(cot, inputs[0], [s](double c, double x) {
                    return c * s * std::pow(x, s - 1.0);
                })};
            }
            const TensorValue& a = inputs[0];
            const TensorValue& b = inputs[1];
            return {binary_side(cot, a, b, a.shape,
                                [](double av, double bv) {
                                    return bv * std::pow(av, bv - 1.0);
                                }),
                    binary_side(cot, a, b, b.shape, [](double av, double bv) {
                        return std::pow(av, bv) * std::log(av);
                    })};
        }
        case OpKind::Minimum: {
            // Ties route to the first operand.
            if (op.scalar) {
                const double s = *op.scalar;
                return {map_broadcast(cot, inputs[0], [s](double c, double x) {
                    return x <= s ? c : 0.0;
                })};
            }
            const TensorValue& a = inputs[0];
            const TensorValue& b = inputs[1];
            return {binary_side(cot, a, b, a.shape,
                                [](double av, double bv) {
                                    return av <= bv ? 1.0 : 0.0;
                                }),
                    binary_side(cot, a, b, b.shape, [](double av, double bv) {
                        return bv < av ? 1.0 : 0.0;
                    })};
        }
        case OpKind::Maximum: {
            if (op.scalar) {
                const double s = *op.scalar;
                return {map_broadcast(cot, inputs[0], [s](double c, double x) {
                    return x >= s ? c : 0.0;
                })};
            }
            const TensorValue& a = inputs[0];
            const TensorValue& b = inputs[1];
            return {binary_side(cot, a, b, a.shape,
                                [](double av, double bv) {
                                    return av >= bv ? 1.0 : 0.0;
                                }),
                    binary_side(cot, a, b, b.shape, [](double av, double bv) {
                        return bv > av ? 1.0 : 0.0;
                    })};
        }

        case OpKind::Sum:
        case OpKind::Mean:
        case OpKind::Prod:
        case OpKind::Min:
        case OpKind::Max:
            return reduction_vjp(op, inputs[0], output, cot);

        case OpKind::Argmax:
        case OpKind::Argmin:
            return {TensorValue::zeros(inputs[0].dtype(), inputs[0].shape)};

        case OpKind::Reshape:
        case OpKind::Flatten:
        case OpKind::ExpandDims:
        case OpKind::Squeeze:
            return {reshape_like(cot, inputs[0].shape)};
        case OpKind::Transpose: {
            OpDescriptor t{.kind = OpKind::Transpose};
            return {eval_op(t, std::span<const TensorValue>(&cot, 1))};
        }

        case OpKind::Clip: {
            const double lo = *op.clip_lo, hi = *op.clip_hi;
            return {map_broadcast(cot, inputs[0], [lo, hi](double c, double x) {
                return (x >= lo && x <= hi) ? c : 0.0;  // closed interval
            })};
        }
        case OpKind::Where: {
            const TensorValue& c = inputs[0];
            const TensorValue& a = inputs[1];
            const TensorValue& b = inputs[2];
            const auto sc = broadcast_strides(c.shape, cot.shape);
            TensorValue ga = TensorValue::zeros(cot.dtype(), cot.shape);
            TensorValue gb = TensorValue::zeros(cot.dtype(), cot.shape);
            for (std::size_t flat = 0; flat < cot.numel(); ++flat) {
                const auto coords = unravel_index(flat, cot.shape);
                std::size_t ic = 0;
                for (std::size_t d = 0; d < coords.size(); ++d) {
                    ic += coords[d] * sc[d];
                }
                const bool take_a = c.buffer.at(ic) != 0.0;
                (take_a ? ga : gb).buffer.set(flat, cot.buffer.at(flat));
            }
            return {TensorValue::zeros(c.dtype(), c.shape),  // d/d cond = 0
                    reduce_to_shape(ga, a.shape), reduce_to_shape(gb, b.shape)};
        }

        default: break;
    }
    assert(false);
    fail(ErrorKind::NonDifferentiableOp, "unhandled op in vjp");
}

}  // namespace tb
