// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/autodiff.hpp"

#include <optional>

#include "tensorbridge/error.hpp"

namespace tb {

namespace {

void check_scalar(const TensorHandle& y) {
    if (y.rank() != 0) {
        fail(ErrorKind::NonScalarOutput,
             "value_and_grad needs a rank-0 value, got " + y.shape().to_string());
    }
}

[[noreturn]] void no_autodiff() {
    fail(ErrorKind::NoAutodiffCapability,
         "the plain backend cannot differentiate");
}

// Imperative idiom: fresh isolated leaf, forward, backward, read .grad.
// Using a private leaf keeps repeated calls stateless (no residual .grad on
// the caller's tensor) and keeps accumulation semantics out of this API.
ValueAndGrad imperative_vag(const ScalarFn& f, const TensorHandle& x) {
    imperative::Variable leaf = imperative::Variable::from_value(x.value());
    leaf.requires_grad_();
    const TensorHandle y = f(TensorHandle(leaf));
    check_scalar(y);
    imperative::backward(y.raw_as<imperative::Variable>());
    const auto g = leaf.grad();
    TensorValue gv = g ? *g : TensorValue::zeros(x.dtype(), x.shape());
    return {y, TensorHandle(imperative::Variable::from_value(std::move(gv)))};
}

// Tape idiom: record f under a fresh scope, then query the tape once.
ValueAndGrad tape_vag(const ScalarFn& f, const TensorHandle& x) {
    const tape::Tensor tx = x.raw_as<tape::Tensor>();
    tape::GradientTape tape;
    tape.watch(tx);
    const TensorHandle y = f(TensorHandle(tx));
    tape.stop_recording();
    check_scalar(y);
    return {y, TensorHandle(tape.gradient(y.raw_as<tape::Tensor>(), tx))};
}

// Functional idiom: trace f at x and run the VJP rules over the trace.
ValueAndGrad functional_vag(const ScalarFn& f, const TensorHandle& x) {
    std::optional<TensorHandle> result;
    functional::TracedFn traced = [&](const functional::Array& a) {
        TensorHandle y = f(TensorHandle(a));
        result = y;
        return y.raw_as<functional::Array>();
    };
    auto [v, g] = functional::value_and_grad(traced, x.raw_as<functional::Array>());
    return {*result, TensorHandle(functional::Array::from_value(std::move(g)))};
}

}  // namespace

ValueAndGrad value_and_grad(const ScalarFn& f, const TensorHandle& x) {
    switch (x.backend()) {
        case BackendId::Plain: no_autodiff();
        case BackendId::Imperative: return imperative_vag(f, x);
        case BackendId::Tape: return tape_vag(f, x);
        case BackendId::Functional: return functional_vag(f, x);
    }
    no_autodiff();
}

ValueAuxAndGrad value_aux_and_grad(const ScalarAuxFn& f, const TensorHandle& x) {
    // Differentiates the primary output only; aux rides along untouched.
    std::optional<TensorHandle> aux;
    const ScalarFn primary = [&](const TensorHandle& h) {
        auto [y, a] = f(h);
        aux = a;
        return y;
    };
    ValueAndGrad vg = value_and_grad(primary, x);
    return {vg.value, *aux, vg.grad};
}

std::function<ValueAndGrad(const TensorHandle&)> value_and_grad_fn(ScalarFn f) {
    return [f = std::move(f)](const TensorHandle& x) {
        return value_and_grad(f, x);
    };
}

std::function<ValueAuxAndGrad(const TensorHandle&)> value_and_grad_fn(
    ScalarAuxFn f) {
    return [f = std::move(f)](const TensorHandle& x) {
        return value_aux_and_grad(f, x);
    };
}

}  // namespace tb
