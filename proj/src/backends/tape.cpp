// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/backends/tape.hpp"

#include <algorithm>
#include <atomic>
#include <unordered_map>

#include "tensorbridge/error.hpp"
#include "tensorbridge/vjp.hpp"

namespace tb::tape {

namespace {
std::atomic<std::uint64_t> g_next_id{1};

// Innermost-last stack of tapes recording on this thread.
thread_local std::vector<GradientTape*> g_active;
}  // namespace

struct Tensor::Payload {
    TensorValue value;
    std::uint64_t id;
};

Tensor Tensor::from_value(TensorValue v) {
    Tensor t;
    t.p_ = std::make_shared<Payload>();
    t.p_->value = std::move(v);
    t.p_->id = g_next_id.fetch_add(1);
    return t;
}

const TensorValue& Tensor::value() const { return p_->value; }

std::uint64_t Tensor::id() const { return p_->id; }

bool Tensor::same_object(const Tensor& other) const { return p_ == other.p_; }

GradientTape::GradientTape(bool persistent) : persistent_(persistent) {
    active_ = true;
    g_active.push_back(this);
}

GradientTape::~GradientTape() { stop_recording(); }

void GradientTape::watch(const Tensor& t) { watched_.insert(t.id()); }

void GradientTape::stop_recording() {
    if (!active_) return;
    active_ = false;
    g_active.erase(std::find(g_active.begin(), g_active.end(), this));
}

void GradientTape::record(TapeRecord rec) { records_.push_back(std::move(rec)); }

std::vector<Tensor> GradientTape::gradient(const Tensor& output,
                                           std::span<const Tensor> sources) {
    if (consumed_ && !persistent_) {
        fail(ErrorKind::TapeConsumed,
             "non-persistent tape already answered a gradient query");
    }
    for (const Tensor& s : sources) {
        if (!watched_.count(s.id())) {
            fail(ErrorKind::NotWatched,
                 "gradient requested for an unwatched tensor");
        }
    }
    consumed_ = true;

    // Replay the records backwards through the shared VJP table.
    std::unordered_map<std::uint64_t, TensorValue> cot;
    cot.emplace(output.id(),
                TensorValue::full(output.value().dtype(), output.value().shape, 1.0));

    auto add_into = [](TensorValue& dst, const TensorValue& src) {
        for (std::size_t i = 0; i < dst.numel(); ++i) {
            dst.buffer.set(i, dst.buffer.at(i) + src.buffer.at(i));
        }
    };

    for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
        const TapeRecord& rec = *it;
        auto out_it = cot.find(rec.output_id);
        if (out_it == cot.end()) continue;
        if (!has_vjp_rule(rec.op.kind)) continue;
        const TensorValue out_cot = out_it->second;
        const auto in_cots = vjp(rec.op, rec.input_values, rec.output_value, out_cot);
        for (std::size_t i = 0; i < rec.input_ids.size(); ++i) {
            auto [cit, inserted] = cot.emplace(rec.input_ids[i], in_cots[i]);
            if (!inserted) add_into(cit->second, in_cots[i]);
        }
    }

    std::vector<Tensor> grads;
    grads.reserve(sources.size());
    for (const Tensor& s : sources) {
        auto cit = cot.find(s.id());
        if (cit != cot.end()) {
            grads.push_back(Tensor::from_value(cit->second));
        } else {  // watched but unreached by the output
            grads.push_back(Tensor::from_value(
                TensorValue::zeros(s.value().dtype(), s.value().shape)));
        }
    }
    return grads;
}

Tensor GradientTape::gradient(const Tensor& output, const Tensor& source) {
    return gradient(output, std::span<const Tensor>(&source, 1))[0];
}

Tensor apply(const OpDescriptor& op, std::span<const Tensor> inputs) {
    std::vector<TensorValue> vals;
    vals.reserve(inputs.size());
    for (const Tensor& t : inputs) vals.push_back(t.value());
    Tensor result = Tensor::from_value(eval_op(op, vals));

    if (!g_active.empty()) {
        std::vector<std::uint64_t> ids;
        ids.reserve(inputs.size());
        for (const Tensor& t : inputs) ids.push_back(t.id());
        for (GradientTape* tape : g_active) {
            tape->record({op, ids, vals, result.id(), result.value()});
        }
    }
    return result;
}

}  // namespace tb::tape
