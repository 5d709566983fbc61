// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/conformance/mutation.hpp"

#include "tensorbridge/kernels.hpp"

namespace tb::conformance {

BackendExecutor wrong_square_kernel_executor(BackendId id) {
    BackendExecutor healthy = facade_executor(id);
    return {healthy.name + "-wrong-square",
            [healthy](const ConformanceCase& c) {
                if (c.op.kind != OpKind::Square) return healthy.run(c);
                ExecResult r;
                const auto inputs = materialize_inputs(c);
                r.value = eval_op({.kind = OpKind::Add, .scalar = 1.0}, inputs);
                return r;
            }};
}

GradientExecutor wrong_vjp_sign_executor(BackendId id) {
    GradientExecutor healthy = facade_grad_executor(id);
    return {healthy.name + "-wrong-vjp-sign",
            [healthy](const CorpusFunction& fn, const TensorValue& x) {
                GradResult r = healthy.run(fn, x);
                if (r.grad) {
                    for (std::size_t i = 0; i < r.grad->numel(); ++i) {
                        r.grad->buffer.set(i, -r.grad->buffer.at(i));
                    }
                }
                return r;
            }};
}

GradientExecutor missing_broadcast_reduction_executor(BackendId id) {
    GradientExecutor healthy = facade_grad_executor(id);
    return {healthy.name + "-missing-bcast-reduce",
            [healthy](const CorpusFunction& fn, const TensorValue& x) {
                GradResult r = healthy.run(fn, x);
                if (r.grad) {
                    // The unreduced cotangent keeps its leading broadcast
                    // axis, so the gradient comes back one rank too high.
                    std::vector<std::size_t> dims{2};
                    for (std::size_t d : r.grad->shape.dims()) dims.push_back(d);
                    const Shape bad(std::move(dims));
                    TensorValue g = TensorValue::zeros(r.grad->dtype(), bad);
                    for (std::size_t i = 0; i < g.numel(); ++i) {
                        g.buffer.set(i, r.grad->buffer.at(i % r.grad->numel()));
                    }
                    r.grad = std::move(g);
                }
                return r;
            }};
}

}  // namespace tb::conformance
