// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/conformance/corpus.hpp"

#include "tensorbridge/tensor.hpp"

// Every function here is smooth on the generator's smooth input range
// (|x_i| in [0.1, 2]): compositions keep pow bases positive, log/reciprocal
// arguments away from zero, and minimum/maximum branch gaps wider than any
// finite-difference step.

namespace tb::conformance {

namespace {

using H = TensorHandle;

std::vector<CorpusFunction> build_corpus() {
    std::vector<CorpusFunction> fns;
    auto add = [&fns](std::string_view name, Shape shape, ScalarFn fn,
                      std::vector<OpKind> uses) {
        fns.push_back({name, std::move(shape), std::move(fn), std::move(uses)});
    };

    add("sum_square", Shape{3}, [](const H& x) { return x.square().sum(); },
        {OpKind::Square, OpKind::Sum});
    add("norm_chain", Shape{4},
        [](const H& x) { return x.square().sum().sqrt(); },
        {OpKind::Square, OpKind::Sum, OpKind::Sqrt});
    // same math through the derived op: the facade expands norm before the
    // backends see it, so this differentiates the expansion itself
    add("norm_facade", Shape{3}, [](const H& x) { return x.norm(); },
        {OpKind::Norm});
    add("exp_mean", Shape{2, 3}, [](const H& x) { return x.exp().mean(); },
        {OpKind::Exp, OpKind::Mean});
    add("log_abs", Shape{3}, [](const H& x) { return x.abs().log().sum(); },
        {OpKind::Abs, OpKind::Log, OpKind::Sum});
    add("neg_sum", Shape{3}, [](const H& x) { return x.neg().sum(); },
        {OpKind::Neg, OpKind::Sum});
    add("reciprocal_mean", Shape{4},
        [](const H& x) { return x.reciprocal().mean(); },
        {OpKind::Reciprocal, OpKind::Mean});
    add("add_mul", Shape{3},
        [](const H& x) { return (x + x.mul(2.0)).sum(); },
        {OpKind::Add, OpKind::Mul, OpKind::Sum});
    add("sub_div_scalar", Shape{3},
        [](const H& x) { return x.sub(x.div(2.0)).sum(); },
        {OpKind::Sub, OpKind::Div, OpKind::Sum});
    add("div_tensor", Shape{3},
        [](const H& x) { return x.div(x.square().add(1.0)).sum(); },
        {OpKind::Div, OpKind::Square, OpKind::Add, OpKind::Sum});
    add("pow_scalar", Shape{3},
        [](const H& x) { return x.square().add(0.5).pow(1.7).sum(); },
        {OpKind::Square, OpKind::Add, OpKind::Pow, OpKind::Sum});
    add("pow_tensor", Shape{3},
        [](const H& x) { return x.square().add(0.5).pow(x).sum(); },
        {OpKind::Square, OpKind::Add, OpKind::Pow, OpKind::Sum});
    add("min_pair", Shape{3},
        [](const H& x) { return x.minimum(x.mul(2.0)).sum(); },
        {OpKind::Minimum, OpKind::Mul, OpKind::Sum});
    add("max_pair", Shape{3},
        [](const H& x) { return x.maximum(x.mul(-1.0)).sum(); },
        {OpKind::Maximum, OpKind::Mul, OpKind::Sum});
    add("minimum_scalar", Shape{4},
        [](const H& x) { return x.minimum(0.05).sum(); },
        {OpKind::Minimum, OpKind::Sum});
    add("clip_band", Shape{4},
        [](const H& x) { return x.clip(-1.0, 1.0).sum(); },
        {OpKind::Clip, OpKind::Sum});
    add("where_blend", Shape{4},
        [](const H& x) {
            const H cond = x.sign().maximum(0.0);  // 1 where x>0, else 0
            return where(cond, x.square(), x.neg()).sum();
        },
        {OpKind::Sign, OpKind::Maximum, OpKind::Where, OpKind::Square,
         OpKind::Neg, OpKind::Sum});
    add("shape_mix", Shape{2, 3},
        [](const H& x) { return x.transpose().flatten().square().sum(); },
        {OpKind::Transpose, OpKind::Flatten, OpKind::Square, OpKind::Sum});
    add("reshape_route", Shape{2, 3},
        [](const H& x) {
            return x.reshape(Shape{3, 2}).sum({1}).square().sum();
        },
        {OpKind::Reshape, OpKind::Sum, OpKind::Square});
    add("expand_squeeze", Shape{3},
        [](const H& x) {
            return x.expand_dims(0).squeeze(0).square().sum();
        },
        {OpKind::ExpandDims, OpKind::Squeeze, OpKind::Square, OpKind::Sum});
    add("bcast_mul", Shape{2, 3},
        [](const H& x) {
            const H cols = x.sum({0});  // [3]: broadcast against [2,3]
            return x.mul(cols).sum();
        },
        {OpKind::Mul, OpKind::Sum});
    add("arange_const", Shape{2, 3},
        [](const H& x) {
            const H c = arange(x.backend(), 3, x.dtype());
            return (x + c).square().sum();
        },
        {OpKind::Add, OpKind::Square, OpKind::Sum, OpKind::Arange});
    add("prod_small", Shape{3}, [](const H& x) { return x.prod(); },
        {OpKind::Prod});
    add("min_reduce", Shape{4}, [](const H& x) { return x.min(); },
        {OpKind::Min});
    add("max_rows", Shape{2, 3}, [](const H& x) { return x.max({1}).sum(); },
        {OpKind::Max, OpKind::Sum});
    add("mean_keep", Shape{2, 3},
        [](const H& x) { return x.mean({0}, true).square().sum(); },
        {OpKind::Mean, OpKind::Square, OpKind::Sum});
    add("argmax_zero", Shape{3},
        [](const H& x) {
            // The argreduce contributes exactly zero; it exists so gradient
            // routing across a zero-derivative op is exercised everywhere.
            return x.sum() + x.argmax(0).mul(0.0);
        },
        {OpKind::Sum, OpKind::Argmax, OpKind::Mul, OpKind::Add});

    return fns;
}

}  // namespace

std::span<const CorpusFunction> gradient_corpus() {
    static const std::vector<CorpusFunction> corpus = build_corpus();
    return corpus;
}

}  // namespace tb::conformance
