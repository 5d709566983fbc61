// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <utility>

#include "tensorbridge/tensor.hpp"

namespace tb {

/// A function from one tensor to a rank-0 tensor, written against the
/// facade op surface; its output must live on its input's backend.
using ScalarFn = std::function<TensorHandle(const TensorHandle&)>;

/// Variant with an auxiliary second output that is passed through
/// untouched and excluded from differentiation.
using ScalarAuxFn =
    std::function<std::pair<TensorHandle, TensorHandle>(const TensorHandle&)>;

struct ValueAndGrad {
    TensorHandle value;
    TensorHandle grad;
};

struct ValueAuxAndGrad {
    TensorHandle value;
    TensorHandle aux;
    TensorHandle grad;
};

/// The one functional autodiff API, reimplemented over all three autodiff
/// idioms. The returned callable evaluates f(x) and d f/d x in one pass,
/// dispatching on x's backend: a fresh isolated graph (imperative), a fresh
/// tape scope (tape), or a trace (functional). The value component is
/// bitwise equal to evaluating f without any autodiff machinery.
///
/// Throws NoAutodiffCapability for inputs on the plain backend and
/// NonScalarOutput when f's primary output is not rank 0.
std::function<ValueAndGrad(const TensorHandle&)> value_and_grad_fn(ScalarFn f);
std::function<ValueAuxAndGrad(const TensorHandle&)> value_and_grad_fn(ScalarAuxFn f);

ValueAndGrad value_and_grad(const ScalarFn& f, const TensorHandle& x);
ValueAuxAndGrad value_aux_and_grad(const ScalarAuxFn& f, const TensorHandle& x);

}  // namespace tb
