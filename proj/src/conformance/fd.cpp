// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/conformance/fd.hpp"

namespace tb::conformance {

TensorValue finite_diff_grad(const std::function<double(const TensorValue&)>& f,
                             const TensorValue& x, double h) {
    TensorValue grad = TensorValue::zeros(x.dtype(), x.shape);
    for (std::size_t i = 0; i < x.numel(); ++i) {
        const double v = x.buffer.at(i);
        TensorValue lo = x, hi = x;
        lo.buffer.set(i, v - h);
        hi.buffer.set(i, v + h);
        grad.buffer.set(i, (f(hi) - f(lo)) / (2.0 * h));
    }
    return grad;
}

}  // namespace tb::conformance
