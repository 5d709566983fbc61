// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_set>
#include <vector>

#include "tensorbridge/kernels.hpp"
#include "tensorbridge/tensor_value.hpp"

namespace tb::tape {

/// Native tensor of the tape backend. Each tensor carries a process-unique
/// id; tape records refer to tensors by id only.
class Tensor {
  public:
    static Tensor from_value(TensorValue v);

    const TensorValue& value() const;
    std::uint64_t id() const;
    bool same_object(const Tensor& other) const;

  private:
    struct Payload;
    std::shared_ptr<Payload> p_;
};

struct TapeRecord {
    OpDescriptor op;
    std::vector<std::uint64_t> input_ids;
    std::vector<TensorValue> input_values;
    std::uint64_t output_id;
    TensorValue output_value;
};

/// Recording scope in the gradient-tape idiom. Construction activates the
/// tape on the current thread; every tape-backend op executed while active
/// is recorded. Tapes nest; inner ops land on all active tapes. A
/// non-persistent tape answers exactly one gradient query.
class GradientTape {
  public:
    explicit GradientTape(bool persistent = false);
    ~GradientTape();
    GradientTape(const GradientTape&) = delete;
    GradientTape& operator=(const GradientTape&) = delete;

    void watch(const Tensor& t);

    /// Stops recording early; idempotent (the destructor also stops).
    void stop_recording();

    /// d output / d source for each watched source, by replaying the records
    /// backwards through the shared VJP table. Sources that gradients never
    /// reach get zeros. Throws NotWatched for unwatched sources and
    /// TapeConsumed on a second query of a non-persistent tape.
    std::vector<Tensor> gradient(const Tensor& output,
                                 std::span<const Tensor> sources);
    Tensor gradient(const Tensor& output, const Tensor& source);

    std::size_t record_count() const { return records_.size(); }
    bool persistent() const { return persistent_; }

  private:
    friend Tensor apply(const OpDescriptor&, std::span<const Tensor>);
    void record(TapeRecord rec);

    bool persistent_;
    bool active_ = false;
    bool consumed_ = false;
    std::vector<TapeRecord> records_;
    std::unordered_set<std::uint64_t> watched_;
};

/// Runs one kernel; appends a record to every tape active on this thread.
Tensor apply(const OpDescriptor& op, std::span<const Tensor> inputs);

}  // namespace tb::tape
