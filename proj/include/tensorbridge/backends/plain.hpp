// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <span>

#include "tensorbridge/kernels.hpp"
#include "tensorbridge/tensor_value.hpp"

namespace tb::plain {

/// Native tensor of the no-autodiff backend: a shared immutable value and
/// nothing else. Copying an Array shares the payload; `same_object` is the
/// backend's identity test.
class Array {
  public:
    static Array from_value(TensorValue v);

    const TensorValue& value() const { return *value_; }
    bool same_object(const Array& other) const { return value_ == other.value_; }

  private:
    std::shared_ptr<const TensorValue> value_;
};

/// Runs one kernel; no bookkeeping of any kind.
Array apply(const OpDescriptor& op, std::span<const Array> inputs);

}  // namespace tb::plain
