// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/backends/imperative.hpp"

#include <unordered_map>
#include <unordered_set>

#include "tensorbridge/error.hpp"
#include "tensorbridge/vjp.hpp"

namespace tb::imperative {

struct Variable::Payload {
    std::shared_ptr<GradNode> node;
};

Variable Variable::from_value(TensorValue v) {
    Variable var;
    var.p_ = std::make_shared<Payload>();
    var.p_->node = std::make_shared<GradNode>();
    var.p_->node->output = std::move(v);
    return var;
}

const TensorValue& Variable::value() const { return *p_->node->output; }

bool Variable::same_object(const Variable& other) const { return p_ == other.p_; }

void Variable::requires_grad_() { p_->node->requires_grad = true; }

bool Variable::requires_grad() const { return p_->node->requires_grad; }

std::optional<TensorValue> Variable::grad() const { return p_->node->grad; }

void Variable::zero_grad() {
    GradNode& n = *p_->node;
    if (n.grad) n.grad = TensorValue::zeros(n.grad->dtype(), n.grad->shape);
}

std::shared_ptr<GradNode> Variable::node() const { return p_->node; }

Variable apply(const OpDescriptor& op, std::span<const Variable> inputs) {
    std::vector<TensorValue> vals;
    vals.reserve(inputs.size());
    for (const Variable& v : inputs) vals.push_back(v.value());
    TensorValue out = eval_op(op, vals);

    bool tracked = false;
    for (const Variable& v : inputs) tracked = tracked || v.node()->requires_grad;

    Variable result = Variable::from_value(std::move(out));
    if (tracked && has_vjp_rule(op.kind)) {
        GradNode& n = *result.node();
        n.requires_grad = true;  // propagates: grads can flow through here
        n.op = op;
        n.inputs = std::move(vals);
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            n.parents.push_back({inputs[i].node(), i});
        }
    }
    return result;
}

void backward(const Variable& loss) {
    if (loss.value().rank() != 0) {
        fail(ErrorKind::NotScalarLoss,
             "backward needs a rank-0 loss, got " + loss.value().shape.to_string());
    }

    // Reverse DFS post-order: every consumer precedes its producers.
    std::vector<GradNode*> order;
    {
        std::unordered_set<GradNode*> done;
        std::vector<std::pair<GradNode*, std::size_t>> stack{{loss.node().get(), 0}};
        std::unordered_set<GradNode*> on_stack{loss.node().get()};
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            if (next < node->parents.size()) {
                GradNode* parent = node->parents[next++].parent.get();
                if (!done.count(parent) && !on_stack.count(parent)) {
                    stack.push_back({parent, 0});
                    on_stack.insert(parent);
                }
            } else {
                done.insert(node);
                on_stack.erase(node);
                order.push_back(node);
                stack.pop_back();
            }
        }
        std::reverse(order.begin(), order.end());
    }

    std::unordered_map<GradNode*, TensorValue> cot;
    cot.emplace(loss.node().get(),
                TensorValue::scalar(loss.value().dtype(), 1.0));

    auto add_into = [](TensorValue& dst, const TensorValue& src) {
        for (std::size_t i = 0; i < dst.numel(); ++i) {
            dst.buffer.set(i, dst.buffer.at(i) + src.buffer.at(i));
        }
    };

    for (GradNode* node : order) {
        auto it = cot.find(node);
        if (it == cot.end()) continue;  // gradient never reached this node
        const TensorValue node_cot = it->second;

        if (node->requires_grad) {
            if (node->grad) {
                add_into(*node->grad, node_cot);  // += across backward calls
            } else {
                node->grad = node_cot;
            }
        }
        if (!node->op) continue;

        const auto parent_cots = vjp(*node->op, node->inputs, *node->output, node_cot);
        for (const GradNode::Edge& e : node->parents) {
            auto [pit, inserted] =
                cot.emplace(e.parent.get(), parent_cots[e.input_index]);
            if (!inserted) add_into(pit->second, parent_cots[e.input_index]);
        }
    }
}

}  // namespace tb::imperative
