// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "tensorbridge/backend_id.hpp"
#include "tensorbridge/backends/functional.hpp"
#include "tensorbridge/backends/imperative.hpp"
#include "tensorbridge/backends/plain.hpp"
#include "tensorbridge/backends/tape.hpp"
#include "tensorbridge/ops.hpp"
#include "tensorbridge/tensor_value.hpp"

namespace tb {

/// One backend-native tensor of any registered backend.
using NativeVariant = std::variant<plain::Array, imperative::Variable,
                                   tape::Tensor, functional::Array>;

/// The unified tensor: a backend tag plus a reference to the native tensor.
/// Wrapping never copies element data; every operation returns a handle on
/// the same backend; handles are immutable values.
class TensorHandle {
  public:
    TensorHandle(plain::Array a);            // NOLINT implicit wrap by design
    TensorHandle(imperative::Variable v);    // NOLINT
    TensorHandle(tape::Tensor t);            // NOLINT
    TensorHandle(functional::Array a);       // NOLINT

    BackendId backend() const;

    const TensorValue& value() const;
    const Shape& shape() const { return value().shape; }
    DType dtype() const { return value().dtype(); }
    std::size_t rank() const { return shape().rank(); }
    std::size_t numel() const { return shape().numel(); }
    double item() const { return value().item(); }
    std::vector<double> to_doubles() const { return value().to_doubles(); }

    /// The identical native tensor this handle wraps (shared payload, not a
    /// copy of the elements).
    NativeVariant raw() const { return native_; }
    template <typename Native>
    Native raw_as() const {
        return std::get<Native>(native_);
    }

    /// Same underlying native object (backend identity, not value equality).
    bool same_native(const TensorHandle& other) const;

    // --- chainable op surface -------------------------------------------
    TensorHandle square() const;
    TensorHandle sqrt() const;
    TensorHandle exp() const;
    TensorHandle log() const;
    TensorHandle abs() const;
    TensorHandle neg() const;
    TensorHandle sign() const;
    TensorHandle reciprocal() const;

    TensorHandle add(const TensorHandle& other) const;
    TensorHandle sub(const TensorHandle& other) const;
    TensorHandle mul(const TensorHandle& other) const;
    TensorHandle div(const TensorHandle& other) const;
    TensorHandle pow(const TensorHandle& other) const;
    TensorHandle minimum(const TensorHandle& other) const;
    TensorHandle maximum(const TensorHandle& other) const;

    TensorHandle add(double s) const;
    TensorHandle sub(double s) const;
    TensorHandle mul(double s) const;
    TensorHandle div(double s) const;
    TensorHandle pow(double s) const;
    TensorHandle minimum(double s) const;
    TensorHandle maximum(double s) const;

    TensorHandle sum(std::vector<int> axes = {}, bool keepdims = false) const;
    TensorHandle mean(std::vector<int> axes = {}, bool keepdims = false) const;
    TensorHandle prod(std::vector<int> axes = {}, bool keepdims = false) const;
    TensorHandle min(std::vector<int> axes = {}, bool keepdims = false) const;
    TensorHandle max(std::vector<int> axes = {}, bool keepdims = false) const;

    TensorHandle argmax(int axis) const;
    TensorHandle argmin(int axis) const;

    TensorHandle reshape(Shape target) const;
    TensorHandle flatten() const;
    TensorHandle transpose() const;  // rank 2 only
    TensorHandle expand_dims(int axis) const;
    TensorHandle squeeze(int axis) const;

    TensorHandle clip(double lo, double hi) const;

    /// sqrt(sum(square(x))), built exactly as that chain.
    TensorHandle norm() const;

  private:
    NativeVariant native_;
};

TensorHandle operator+(const TensorHandle& a, const TensorHandle& b);
TensorHandle operator-(const TensorHandle& a, const TensorHandle& b);
TensorHandle operator*(const TensorHandle& a, const TensorHandle& b);
TensorHandle operator/(const TensorHandle& a, const TensorHandle& b);
TensorHandle operator+(const TensorHandle& a, double s);
TensorHandle operator-(const TensorHandle& a, double s);
TensorHandle operator*(const TensorHandle& a, double s);
TensorHandle operator/(const TensorHandle& a, double s);
TensorHandle operator-(const TensorHandle& a);

// --- free-function op surface (mirrors the methods) ---------------------
TensorHandle square(const TensorHandle& h);
TensorHandle sqrt(const TensorHandle& h);
TensorHandle exp(const TensorHandle& h);
TensorHandle log(const TensorHandle& h);
TensorHandle abs(const TensorHandle& h);
TensorHandle neg(const TensorHandle& h);
TensorHandle sign(const TensorHandle& h);
TensorHandle reciprocal(const TensorHandle& h);
TensorHandle add(const TensorHandle& a, const TensorHandle& b);
TensorHandle sub(const TensorHandle& a, const TensorHandle& b);
TensorHandle mul(const TensorHandle& a, const TensorHandle& b);
TensorHandle div(const TensorHandle& a, const TensorHandle& b);
TensorHandle pow(const TensorHandle& a, const TensorHandle& b);
TensorHandle minimum(const TensorHandle& a, const TensorHandle& b);
TensorHandle maximum(const TensorHandle& a, const TensorHandle& b);
TensorHandle add(const TensorHandle& a, double s);
TensorHandle sub(const TensorHandle& a, double s);
TensorHandle mul(const TensorHandle& a, double s);
TensorHandle div(const TensorHandle& a, double s);
TensorHandle pow(const TensorHandle& a, double s);
TensorHandle minimum(const TensorHandle& a, double s);
TensorHandle maximum(const TensorHandle& a, double s);
TensorHandle sum(const TensorHandle& h, std::vector<int> axes = {},
                 bool keepdims = false);
TensorHandle mean(const TensorHandle& h, std::vector<int> axes = {},
                  bool keepdims = false);
TensorHandle prod(const TensorHandle& h, std::vector<int> axes = {},
                  bool keepdims = false);
TensorHandle min(const TensorHandle& h, std::vector<int> axes = {},
                 bool keepdims = false);
TensorHandle max(const TensorHandle& h, std::vector<int> axes = {},
                 bool keepdims = false);
TensorHandle argmax(const TensorHandle& h, int axis);
TensorHandle argmin(const TensorHandle& h, int axis);
TensorHandle reshape(const TensorHandle& h, Shape target);
TensorHandle flatten(const TensorHandle& h);
TensorHandle transpose(const TensorHandle& h);
TensorHandle expand_dims(const TensorHandle& h, int axis);
TensorHandle squeeze(const TensorHandle& h, int axis);
TensorHandle clip(const TensorHandle& h, double lo, double hi);
TensorHandle where(const TensorHandle& cond, const TensorHandle& a,
                   const TensorHandle& b);
TensorHandle norm(const TensorHandle& h);

/// Generic dispatch used by the conformance harness; inputs must share one
/// backend (MixedBackends otherwise).
TensorHandle apply_op(const OpDescriptor& op,
                      std::span<const TensorHandle> inputs);

// --- creation ------------------------------------------------------------
TensorHandle zeros(BackendId backend, const Shape& shape, DType dtype = DType::F64);
TensorHandle ones(BackendId backend, const Shape& shape, DType dtype = DType::F64);
TensorHandle full(BackendId backend, const Shape& shape, double value,
                  DType dtype = DType::F64);
TensorHandle arange(BackendId backend, std::size_t n, DType dtype = DType::F64);
TensorHandle from_values(BackendId backend, const Shape& shape,
                         std::span<const double> values, DType dtype = DType::F64);
TensorHandle from_values(BackendId backend, std::initializer_list<double> values,
                         DType dtype = DType::F64);
/// Creation-kind dispatch (Zeros/Ones/Full/Arange/FromValues descriptors).
TensorHandle create_op(BackendId backend, const OpDescriptor& op);

// --- conversion ----------------------------------------------------------

/// A native tensor of any backend, or an already-wrapped handle. This is
/// what the conversion entry points accept.
using AnyTensor = std::variant<plain::Array, imperative::Variable, tape::Tensor,
                               functional::Array, TensorHandle>;

/// Wraps a native tensor (no copy); returns a handle unchanged.
TensorHandle astensor(const AnyTensor& x);

/// Elementwise astensor, order preserved; the sequence may be empty.
std::vector<TensorHandle> astensors(std::span<const AnyTensor> xs);

/// Inversion closure returned by the underscore conversion variants: maps a
/// result handle back to the kind (native vs handle) of the original input.
class RestoreFn {
  public:
    explicit RestoreFn(bool to_native) : to_native_(to_native) {}
    AnyTensor operator()(const TensorHandle& result) const;
    bool restores_native() const { return to_native_; }

  private:
    bool to_native_;
};

std::pair<TensorHandle, RestoreFn> astensor_(const AnyTensor& x);

/// Converts all inputs (which must live on one backend; MixedBackends
/// otherwise) and returns one RestoreFn following the first input's kind.
std::pair<std::vector<TensorHandle>, RestoreFn>
astensors_(std::span<const AnyTensor> xs);

/// The identical native tensor held by the handle.
NativeVariant raw(const TensorHandle& h);

BackendId backend_of(const AnyTensor& x);

}  // namespace tb
