// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/conformance/cases.hpp"

#include <algorithm>
#include <cmath>

namespace tb::conformance {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::next_value() { return -2.0 + 4.0 * next_unit(); }

double SplitMix64::next_smooth_value() {
    // Rescale the [-2,2] draw so its magnitude lands in [0.1, 2).
    const double v = next_value();
    const double mag = 0.1 + std::fabs(v) * 0.95;
    return v < 0.0 ? -mag : mag;
}

std::uint64_t SplitMix64::next_range(std::uint64_t lo, std::uint64_t hi) {
    return lo + next() % (hi - lo + 1);
}

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (std::size_t i = 16; i-- > 0; h >>= 4) out[i] = digits[h & 0xF];
    return out;
}

std::string case_hash(const OpDescriptor& op, std::span<const Shape> shapes,
                      DType dtype, std::uint64_t input_seed) {
    std::string text = describe_op(op);
    for (const Shape& s : shapes) {
        text += '|';
        text += s.to_string();
    }
    text += '|';
    text += dtype_name(dtype);
    text += '|';
    text += std::to_string(input_seed);
    return fnv1a_hex(text);
}

std::vector<OpKind> all_op_kinds() {
    std::vector<OpKind> kinds;
    for (const OpInfo& info : op_table()) kinds.push_back(info.kind);
    return kinds;
}

namespace {

std::size_t cap(std::size_t extent, const ShapeBudget& b) {
    return std::min(extent, b.max_extent);
}

// Fixed per-rank base shapes (seed varies values, not shapes).
Shape shape_for(std::size_t rank, const ShapeBudget& b) {
    switch (rank) {
        case 0: return Shape{};
        case 1: return Shape{cap(5, b)};
        case 2: return Shape{cap(3, b), cap(4, b)};
        default: return Shape{cap(2, b), cap(3, b), cap(4, b)};
    }
}

bool within(const Shape& s, const ShapeBudget& b) {
    if (s.rank() > b.max_rank) return false;
    for (std::size_t d : s.dims()) {
        if (d > b.max_extent) return false;
    }
    return true;
}

struct Builder {
    std::uint64_t seed;
    DType dtype;
    const ShapeBudget& budget;
    std::vector<ConformanceCase> cases;
    std::uint64_t index = 0;

    // Emits one case; skipped entirely (but still consuming an index, so the
    // list stays stable across budgets) when a shape exceeds the budget.
    void add(OpDescriptor op, std::vector<Shape> shapes,
             const std::vector<Shape>& extra_shapes = {}) {
        const std::uint64_t input_seed = seed ^ index;
        ++index;
        for (const Shape& s : shapes) {
            if (!within(s, budget)) return;
        }
        for (const Shape& s : extra_shapes) {
            if (!within(s, budget)) return;
        }
        ConformanceCase c;
        c.op = std::move(op);
        c.input_shapes = std::move(shapes);
        c.dtype = dtype;
        c.input_seed = input_seed;
        c.smooth_inputs = op_info(c.op.kind).differentiable;
        c.case_id = case_hash(c.op, c.input_shapes, dtype, input_seed);
        cases.push_back(std::move(c));
    }
};

}  // namespace

std::vector<ConformanceCase> generate_cases(std::uint64_t seed,
                                            std::span<const OpKind> ops,
                                            const ShapeBudget& budget,
                                            DType dtype) {
    // The full-table list is generated first so a case keeps its identity
    // (index, seed, id) regardless of any --ops filter, then filtered.
    Builder b{seed, dtype, budget};
    const std::size_t max_rank = std::min<std::size_t>(budget.max_rank, 3);

    for (const OpInfo& info : op_table()) {
        const OpKind k = info.kind;
        switch (k) {
            case OpKind::Square:
            case OpKind::Sqrt:
            case OpKind::Exp:
            case OpKind::Log:
            case OpKind::Abs:
            case OpKind::Neg:
            case OpKind::Sign:
            case OpKind::Reciprocal:
                for (std::size_t r = 0; r <= max_rank; ++r) {
                    b.add({.kind = k}, {shape_for(r, budget)});
                }
                break;

            case OpKind::Add:
            case OpKind::Sub:
            case OpKind::Mul:
            case OpKind::Div:
            case OpKind::Pow:
            case OpKind::Minimum:
            case OpKind::Maximum:
                for (std::size_t r = 0; r <= max_rank; ++r) {
                    const Shape s = shape_for(r, budget);
                    b.add({.kind = k}, {s, s});
                }
                // Trailing-alignment broadcast: [3,4] against [4].
                b.add({.kind = k}, {shape_for(2, budget), Shape{cap(4, budget)}});
                b.add({.kind = k, .scalar = 0.7}, {shape_for(1, budget)});
                break;

            case OpKind::Sum:
            case OpKind::Mean:
            case OpKind::Prod:
            case OpKind::Min:
            case OpKind::Max:
                b.add({.kind = k}, {shape_for(0, budget)});
                b.add({.kind = k}, {shape_for(1, budget)});
                b.add({.kind = k, .axes = std::vector<int>{0}},
                      {shape_for(2, budget)});
                b.add({.kind = k, .axes = std::vector<int>{1}, .keepdims = true},
                      {shape_for(2, budget)});
                b.add({.kind = k, .axes = std::vector<int>{0, 2}},
                      {shape_for(3, budget)});
                b.add({.kind = k, .keepdims = true}, {shape_for(3, budget)});
                break;

            case OpKind::Argmax:
            case OpKind::Argmin:
                b.add({.kind = k, .axes = std::vector<int>{0}},
                      {shape_for(1, budget)});
                b.add({.kind = k, .axes = std::vector<int>{1}},
                      {shape_for(2, budget)});
                b.add({.kind = k, .axes = std::vector<int>{2}},
                      {shape_for(3, budget)});
                b.add({.kind = k, .axes = std::vector<int>{-1}},
                      {shape_for(2, budget)});
                break;

            case OpKind::Reshape: {
                b.add({.kind = k, .shape = Shape{1}}, {Shape{}}, {Shape{1}});
                b.add({.kind = k, .shape = Shape{2, 3}}, {Shape{6}},
                      {Shape{2, 3}});
                const Shape r2 = shape_for(2, budget);  // [3,4] -> [2,6]
                b.add({.kind = k, .shape = Shape{2, 6}}, {r2}, {Shape{2, 6}});
                const Shape r3 = shape_for(3, budget);  // [2,3,4] -> [6,4]
                b.add({.kind = k, .shape = Shape{6, 4}}, {r3}, {Shape{6, 4}});
                break;
            }
            case OpKind::Flatten:
                for (std::size_t r = 0; r <= max_rank; ++r) {
                    const Shape s = shape_for(r, budget);
                    b.add({.kind = k}, {s}, {Shape{s.numel()}});
                }
                break;
            case OpKind::Transpose:
                b.add({.kind = k}, {shape_for(2, budget)});
                break;
            case OpKind::ExpandDims:
                b.add({.kind = k, .axes = std::vector<int>{0}}, {Shape{}},
                      {Shape{1}});
                b.add({.kind = k, .axes = std::vector<int>{0}},
                      {shape_for(1, budget)}, {Shape{1, cap(5, budget)}});
                b.add({.kind = k, .axes = std::vector<int>{-1}},
                      {shape_for(1, budget)}, {Shape{cap(5, budget), 1}});
                b.add({.kind = k, .axes = std::vector<int>{1}},
                      {shape_for(2, budget)},
                      {Shape{cap(3, budget), 1, cap(4, budget)}});
                break;
            case OpKind::Squeeze:
                b.add({.kind = k, .axes = std::vector<int>{0}}, {Shape{1}});
                b.add({.kind = k, .axes = std::vector<int>{1}},
                      {Shape{cap(3, budget), 1}});
                b.add({.kind = k, .axes = std::vector<int>{-1}},
                      {Shape{cap(3, budget), 1}});
                b.add({.kind = k, .axes = std::vector<int>{0}},
                      {Shape{1, cap(3, budget), cap(4, budget)}});
                break;

            case OpKind::Clip:
                for (std::size_t r = 0; r <= max_rank; ++r) {
                    b.add({.kind = k, .clip_lo = -1.0, .clip_hi = 1.0},
                          {shape_for(r, budget)});
                }
                break;
            case OpKind::Where:
                for (std::size_t r = 0; r <= max_rank; ++r) {
                    const Shape s = shape_for(r, budget);
                    b.add({.kind = k}, {s, s, s});
                }
                b.add({.kind = k}, {shape_for(2, budget), shape_for(2, budget),
                                    Shape{cap(4, budget)}});
                break;

            case OpKind::Zeros:
            case OpKind::Ones:
                for (std::size_t r = 0; r <= max_rank; ++r) {
                    b.add({.kind = k, .shape = shape_for(r, budget), .dtype = dtype},
                          {}, {shape_for(r, budget)});
                }
                break;
            case OpKind::Full:
                for (std::size_t r = 0; r <= max_rank; ++r) {
                    b.add({.kind = k,
                           .scalar = 2.5,
                           .shape = shape_for(r, budget),
                           .dtype = dtype},
                          {}, {shape_for(r, budget)});
                }
                break;
            case OpKind::Arange:
                b.add({.kind = k, .shape = Shape{1}, .dtype = dtype}, {},
                      {Shape{1}});
                b.add({.kind = k, .shape = Shape{cap(5, budget)}, .dtype = dtype},
                      {}, {Shape{cap(5, budget)}});
                break;
            case OpKind::FromValues:
                for (std::size_t r = 0; r <= max_rank; ++r) {
                    const Shape s = shape_for(r, budget);
                    std::vector<double> values(s.numel());
                    for (std::size_t i = 0; i < values.size(); ++i) {
                        values[i] = static_cast<double>(i % 7) * 0.5 - 1.5;
                    }
                    b.add({.kind = k,
                           .shape = s,
                           .values = std::move(values),
                           .dtype = dtype},
                          {}, {s});
                }
                break;

            case OpKind::Norm:
                for (std::size_t r = 0; r <= max_rank; ++r) {
                    b.add({.kind = k}, {shape_for(r, budget)});
                }
                break;
        }
    }

    std::vector<ConformanceCase> out;
    out.reserve(b.cases.size());
    for (ConformanceCase& c : b.cases) {
        if (std::find(ops.begin(), ops.end(), c.op.kind) != ops.end()) {
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<TensorValue> materialize_inputs(const ConformanceCase& c) {
    SplitMix64 rng(c.input_seed);
    std::vector<TensorValue> inputs;
    inputs.reserve(c.input_shapes.size());
    for (std::size_t i = 0; i < c.input_shapes.size(); ++i) {
        TensorValue v = TensorValue::zeros(c.dtype, c.input_shapes[i]);
        const bool is_cond = c.op.kind == OpKind::Where && i == 0;
        for (std::size_t e = 0; e < v.numel(); ++e) {
            if (is_cond) {  // exercise both branches with a 0/1 mask
                v.buffer.set(e, rng.next_value() > 0.0 ? 1.0 : 0.0);
            } else if (c.smooth_inputs) {
                v.buffer.set(e, rng.next_smooth_value());
            } else {
                v.buffer.set(e, rng.next_value());
            }
        }
        inputs.push_back(std::move(v));
    }
    return inputs;
}

}  // namespace tb::conformance
