// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "tensorbridge/kernels.hpp"
#include "tensorbridge/tensor_value.hpp"

namespace tb::functional {

/// Symbolic expression captured as a side effect of running a function on a
/// traced input. Nodes are shared (the trace is a DAG) and each node keeps
/// the concrete value it produced while tracing.
struct TraceExpr {
    enum class Kind { Input, Constant, Op };

    Kind kind;
    int slot = -1;                     // Input only
    std::optional<OpDescriptor> op;    // Op only
    std::vector<std::shared_ptr<const TraceExpr>> children;
    TensorValue value;                 // value observed at trace time
};

/// Native tensor of the functional backend: eager value plus, while a trace
/// is being built through it, the expression that produced it.
class Array {
  public:
    static Array from_value(TensorValue v);
    /// Input placeholder: same value, plus an Input trace node for `slot`.
    static Array make_traced(TensorValue v, int slot);

    const TensorValue& value() const;
    bool traced() const;
    std::shared_ptr<const TraceExpr> expr() const;
    bool same_object(const Array& other) const;

  private:
    friend Array apply(const OpDescriptor&, std::span<const Array>);
    struct Payload;
    std::shared_ptr<Payload> p_;
};

/// Runs one kernel; propagates the trace when any input carries one.
Array apply(const OpDescriptor& op, std::span<const Array> inputs);

/// Re-evaluates a trace with fresh values bound to the input slots.
TensorValue eval_trace(const TraceExpr& root,
                       std::span<const TensorValue> slot_values);

using TracedFn = std::function<Array(const Array&)>;

/// Evaluates f(x) and d f/d x in one sweep: trace f at x, then run the
/// shared VJP rules backwards over the trace. f must produce a rank-0
/// result (NonScalarOutput otherwise); a result that does not depend on x
/// has zero gradient.
std::pair<TensorValue, TensorValue> value_and_grad(const TracedFn& f,
                                                   const Array& x);

/// The gradient function of f; traces f anew on every call.
std::function<Array(const Array&)> grad(TracedFn f);

}  // namespace tb::functional
