// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/backends/functional.hpp"

#include <algorithm>
#include <unordered_map>

#include "tensorbridge/error.hpp"
#include "tensorbridge/vjp.hpp"

namespace tb::functional {

struct Array::Payload {
    TensorValue value;
    std::shared_ptr<const TraceExpr> expr;  // null when not traced
};

Array Array::from_value(TensorValue v) {
    Array a;
    a.p_ = std::make_shared<Payload>();
    a.p_->value = std::move(v);
    return a;
}

Array Array::make_traced(TensorValue v, int slot) {
    Array a = from_value(std::move(v));
    auto node = std::make_shared<TraceExpr>();
    node->kind = TraceExpr::Kind::Input;
    node->slot = slot;
    node->value = a.p_->value;
    a.p_->expr = std::move(node);
    return a;
}

const TensorValue& Array::value() const { return p_->value; }

bool Array::traced() const { return p_->expr != nullptr; }

std::shared_ptr<const TraceExpr> Array::expr() const { return p_->expr; }

bool Array::same_object(const Array& other) const { return p_ == other.p_; }

Array apply(const OpDescriptor& op, std::span<const Array> inputs) {
    std::vector<TensorValue> vals;
    vals.reserve(inputs.size());
    for (const Array& a : inputs) vals.push_back(a.value());
    TensorValue out = eval_op(op, vals);

    bool tracing = false;
    for (const Array& a : inputs) tracing = tracing || a.traced();
    Array result = Array::from_value(std::move(out));
    if (!tracing) return result;

    if (!has_vjp_rule(op.kind)) {
        fail(ErrorKind::UntraceableOp,
             std::string(op_name(op.kind)) + " cannot appear in a trace");
    }
    auto node = std::make_shared<TraceExpr>();
    node->kind = TraceExpr::Kind::Op;
    node->op = op;
    node->value = result.value();
    for (const Array& a : inputs) {
        if (a.traced()) {
            node->children.push_back(a.expr());
        } else {  // untraced operand enters the trace as a constant
            auto c = std::make_shared<TraceExpr>();
            c->kind = TraceExpr::Kind::Constant;
            c->value = a.value();
            node->children.push_back(std::move(c));
        }
    }
    result.p_->expr = std::move(node);
    return result;
}

namespace {

// Reverse DFS post-order over the trace DAG: consumers before producers.
std::vector<const TraceExpr*> topo_order(const TraceExpr& root) {
    std::vector<const TraceExpr*> order;
    std::unordered_map<const TraceExpr*, bool> done;
    std::vector<std::pair<const TraceExpr*, std::size_t>> stack{{&root, 0}};
    done[&root] = false;
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next < node->children.size()) {
            const TraceExpr* child = node->children[next++].get();
            if (!done.count(child)) {
                done[child] = false;
                stack.push_back({child, 0});
            }
        } else {
            order.push_back(node);
            stack.pop_back();
        }
    }
    std::reverse(order.begin(), order.end());
    return order;
}

}  // namespace

TensorValue eval_trace(const TraceExpr& root,
                       std::span<const TensorValue> slot_values) {
    std::unordered_map<const TraceExpr*, TensorValue> memo;
    const auto order = topo_order(root);
    // Producers first: walk the topological order back to front.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const TraceExpr* node = *it;
        switch (node->kind) {
            case TraceExpr::Kind::Input:
                memo.emplace(node, slot_values[static_cast<std::size_t>(node->slot)]);
                break;
            case TraceExpr::Kind::Constant:
                memo.emplace(node, node->value);
                break;
            case TraceExpr::Kind::Op: {
                std::vector<TensorValue> child_vals;
                child_vals.reserve(node->children.size());
                for (const auto& c : node->children) {
                    child_vals.push_back(memo.at(c.get()));
                }
                memo.emplace(node, eval_op(*node->op, child_vals));
                break;
            }
        }
    }
    return memo.at(&root);
}

std::pair<TensorValue, TensorValue> value_and_grad(const TracedFn& f,
                                                   const Array& x) {
    const Array traced_x = Array::make_traced(x.value(), 0);
    const Array y = f(traced_x);
    if (y.value().rank() != 0) {
        fail(ErrorKind::NonScalarOutput,
             "grad needs a rank-0 output, got " + y.value().shape.to_string());
    }
    if (!y.traced()) {  // output does not depend on x
        return {y.value(), TensorValue::zeros(x.value().dtype(), x.value().shape)};
    }

    auto add_into = [](TensorValue& dst, const TensorValue& src) {
        for (std::size_t i = 0; i < dst.numel(); ++i) {
            dst.buffer.set(i, dst.buffer.at(i) + src.buffer.at(i));
        }
    };

    std::unordered_map<const TraceExpr*, TensorValue> cot;
    const TraceExpr* root = y.expr().get();
    cot.emplace(root, TensorValue::scalar(y.value().dtype(), 1.0));

    TensorValue grad = TensorValue::zeros(x.value().dtype(), x.value().shape);
    for (const TraceExpr* node : topo_order(*root)) {
        auto it = cot.find(node);
        if (it == cot.end()) continue;
        const TensorValue node_cot = it->second;
        switch (node->kind) {
            case TraceExpr::Kind::Input:
                if (node->slot == 0) add_into(grad, node_cot);
                break;
            case TraceExpr::Kind::Constant:
                break;
            case TraceExpr::Kind::Op: {
                std::vector<TensorValue> child_vals;
                child_vals.reserve(node->children.size());
                for (const auto& c : node->children) child_vals.push_back(c->value);
                const auto child_cots =
                    vjp(*node->op, child_vals, node->value, node_cot);
                for (std::size_t i = 0; i < node->children.size(); ++i) {
                    const TraceExpr* child = node->children[i].get();
                    auto [cit, inserted] = cot.emplace(child, child_cots[i]);
                    if (!inserted) add_into(cit->second, child_cots[i]);
                }
                break;
            }
        }
    }
    return {y.value(), std::move(grad)};
}

std::function<Array(const Array&)> grad(TracedFn f) {
    return [f = std::move(f)](const Array& x) {
        return Array::from_value(value_and_grad(f, x).second);
    };
}

}  // namespace tb::functional
