// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tensorbridge/kernels.hpp"
#include "tensorbridge/tensor_value.hpp"

namespace tb::imperative {

/// One node of the define-by-run backward graph. Nodes capture the operand
/// and result values they need for the VJP; leaves have no op and no
/// parents. A graph is confined to one context and is always acyclic.
struct GradNode {
    bool requires_grad = false;
    std::optional<TensorValue> grad;  // absent until backward reaches the node

    std::optional<OpDescriptor> op;  // absent for leaves
    std::vector<TensorValue> inputs;
    std::optional<TensorValue> output;

    struct Edge {
        std::shared_ptr<GradNode> parent;
        std::size_t input_index;  // which vjp output flows along this edge
    };
    std::vector<Edge> parents;
};

/// Native tensor of the imperative backend. Copies share the payload (and
/// therefore the grad state), mirroring how define-by-run frameworks alias
/// tensors.
class Variable {
  public:
    static Variable from_value(TensorValue v);

    const TensorValue& value() const;
    bool same_object(const Variable& other) const;

    /// In-place request for gradient accumulation on this (leaf) tensor.
    void requires_grad_();
    bool requires_grad() const;

    /// Accumulated gradient; absent until backward has reached this tensor.
    std::optional<TensorValue> grad() const;
    void zero_grad();

    std::shared_ptr<GradNode> node() const;

  private:
    struct Payload;
    std::shared_ptr<Payload> p_;
};

/// Runs one kernel; extends the backward graph when any input tracks
/// gradients.
Variable apply(const OpDescriptor& op, std::span<const Variable> inputs);

/// Reverse pass from a rank-0 loss. Accumulates (+=) d loss/d node into
/// every reachable node with requires_grad; running it twice without
/// zero_grad doubles the grads. Throws NotScalarLoss otherwise.
void backward(const Variable& loss);

}  // namespace tb::imperative
