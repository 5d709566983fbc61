// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/tensor.hpp"

#include <stdexcept>

#include "tensorbridge/error.hpp"

namespace tb {

namespace {

// Unwraps every handle to one backend's native type, runs that backend's
// apply, and re-wraps. ADL finds tb::<backend>::apply via the native type.
template <typename Native>
TensorHandle run_on(const OpDescriptor& op, std::span<const TensorHandle> inputs) {
    std::vector<Native> natives;
    natives.reserve(inputs.size());
    for (const TensorHandle& h : inputs) natives.push_back(h.raw_as<Native>());
    return TensorHandle(apply(op, std::span<const Native>(natives)));
}

OpDescriptor reduction_desc(OpKind kind, std::vector<int> axes, bool keepdims) {
    OpDescriptor d{.kind = kind, .keepdims = keepdims};
    if (!axes.empty()) d.axes = std::move(axes);
    return d;
}

}  // namespace

TensorHandle::TensorHandle(plain::Array a) : native_(std::move(a)) {}
TensorHandle::TensorHandle(imperative::Variable v) : native_(std::move(v)) {}
TensorHandle::TensorHandle(tape::Tensor t) : native_(std::move(t)) {}
TensorHandle::TensorHandle(functional::Array a) : native_(std::move(a)) {}

BackendId TensorHandle::backend() const {
    switch (native_.index()) {
        case 0: return BackendId::Plain;
        case 1: return BackendId::Imperative;
        case 2: return BackendId::Tape;
        default: return BackendId::Functional;
    }
}

const TensorValue& TensorHandle::value() const {
    return std::visit([](const auto& n) -> const TensorValue& { return n.value(); },
                      native_);
}

bool TensorHandle::same_native(const TensorHandle& other) const {
    if (native_.index() != other.native_.index()) return false;
    return std::visit(
        [&](const auto& n) {
            using Native = std::decay_t<decltype(n)>;
            return n.same_object(std::get<Native>(other.native_));
        },
        native_);
}

TensorHandle apply_op(const OpDescriptor& op,
                      std::span<const TensorHandle> inputs) {
    if (inputs.empty()) {
        throw std::invalid_argument("apply_op needs at least one input");
    }
    if (op.kind == OpKind::Norm) {
        // The derived op is exactly its defining chain, so autodiff sees
        // only primitives.
        return inputs[0].square().sum().sqrt();
    }
    const BackendId backend = inputs[0].backend();
    for (const TensorHandle& h : inputs) {
        if (h.backend() != backend) {
            fail(ErrorKind::MixedBackends,
                 std::string(backend_name(backend)) + " input mixed with " +
                     std::string(backend_name(h.backend())));
        }
    }
    switch (backend) {
        case BackendId::Plain: return run_on<plain::Array>(op, inputs);
        case BackendId::Imperative: return run_on<imperative::Variable>(op, inputs);
        case BackendId::Tape: return run_on<tape::Tensor>(op, inputs);
        case BackendId::Functional: return run_on<functional::Array>(op, inputs);
    }
    throw std::logic_error("unreachable backend");
}

namespace {

TensorHandle unary(const TensorHandle& h, OpKind kind) {
    return apply_op({.kind = kind}, std::span<const TensorHandle>(&h, 1));
}

TensorHandle binary(const TensorHandle& a, const TensorHandle& b, OpKind kind) {
    const TensorHandle pair[2] = {a, b};
    return apply_op({.kind = kind}, pair);
}

TensorHandle binary_scalar(const TensorHandle& a, double s, OpKind kind) {
    return apply_op({.kind = kind, .scalar = s},
                    std::span<const TensorHandle>(&a, 1));
}

}  // namespace

TensorHandle TensorHandle::square() const { return unary(*this, OpKind::Square); }
TensorHandle TensorHandle::sqrt() const { return unary(*this, OpKind::Sqrt); }
TensorHandle TensorHandle::exp() const { return unary(*this, OpKind::Exp); }
TensorHandle TensorHandle::log() const { return unary(*this, OpKind::Log); }
TensorHandle TensorHandle::abs() const { return unary(*this, OpKind::Abs); }
TensorHandle TensorHandle::neg() const { return unary(*this, OpKind::Neg); }
TensorHandle TensorHandle::sign() const { return unary(*this, OpKind::Sign); }
TensorHandle TensorHandle::reciprocal() const {
    return unary(*this, OpKind::Reciprocal);
}

TensorHandle TensorHandle::add(const TensorHandle& o) const {
    return binary(*this, o, OpKind::Add);
}
TensorHandle TensorHandle::sub(const TensorHandle& o) const {
    return binary(*this, o, OpKind::Sub);
}
TensorHandle TensorHandle::mul(const TensorHandle& o) const {
    return binary(*this, o, OpKind::Mul);
}
TensorHandle TensorHandle::div(const TensorHandle& o) const {
    return binary(*this, o, OpKind::Div);
}
TensorHandle TensorHandle::pow(const TensorHandle& o) const {
    return binary(*this, o, OpKind::Pow);
}
TensorHandle TensorHandle::minimum(const TensorHandle& o) const {
    return binary(*this, o, OpKind::Minimum);
}
TensorHandle TensorHandle::maximum(const TensorHandle& o) const {
    return binary(*this, o, OpKind::Maximum);
}

TensorHandle TensorHandle::add(double s) const {
    return binary_scalar(*this, s, OpKind::Add);
}
TensorHandle TensorHandle::sub(double s) const {
    return binary_scalar(*this, s, OpKind::Sub);
}
TensorHandle TensorHandle::mul(double s) const {
    return binary_scalar(*this, s, OpKind::Mul);
}
TensorHandle TensorHandle::div(double s) const {
    return binary_scalar(*this, s, OpKind::Div);
}
TensorHandle TensorHandle::pow(double s) const {
    return binary_scalar(*this, s, OpKind::Pow);
}
TensorHandle TensorHandle::minimum(double s) const {
    return binary_scalar(*this, s, OpKind::Minimum);
}
TensorHandle TensorHandle::maximum(double s) const {
    return binary_scalar(*this, s, OpKind::Maximum);
}

TensorHandle TensorHandle::sum(std::vector<int> axes, bool keepdims) const {
    return apply_op(reduction_desc(OpKind::Sum, std::move(axes), keepdims),
                    std::span<const TensorHandle>(this, 1));
}
TensorHandle TensorHandle::mean(std::vector<int> axes, bool keepdims) const {
    return apply_op(reduction_desc(OpKind::Mean, std::move(axes), keepdims),
                    std::span<const TensorHandle>(this, 1));
}
TensorHandle TensorHandle::prod(std::vector<int> axes, bool keepdims) const {
    return apply_op(reduction_desc(OpKind::Prod, std::move(axes), keepdims),
                    std::span<const TensorHandle>(this, 1));
}
TensorHandle TensorHandle::min(std::vector<int> axes, bool keepdims) const {
    return apply_op(reduction_desc(OpKind::Min, std::move(axes), keepdims),
                    std::span<const TensorHandle>(this, 1));
}
TensorHandle TensorHandle::max(std::vector<int> axes, bool keepdims) const {
    return apply_op(reduction_desc(OpKind::Max, std::move(axes), keepdims),
                    std::span<const TensorHandle>(this, 1));
}

TensorHandle TensorHandle::argmax(int axis) const {
    return apply_op({.kind = OpKind::Argmax, .axes = std::vector<int>{axis}},
                    std::span<const TensorHandle>(this, 1));
}
TensorHandle TensorHandle::argmin(int axis) const {
    return apply_op({.kind = OpKind::Argmin, .axes = std::vector<int>{axis}},
                    std::span<const TensorHandle>(this, 1));
}

TensorHandle TensorHandle::reshape(Shape target) const {
    return apply_op({.kind = OpKind::Reshape, .shape = std::move(target)},
                    std::span<const TensorHandle>(this, 1));
}
TensorHandle TensorHandle::flatten() const {
    return unary(*this, OpKind::Flatten);
}
TensorHandle TensorHandle::transpose() const {
    return unary(*this, OpKind::Transpose);
}
TensorHandle TensorHandle::expand_dims(int axis) const {
    return apply_op({.kind = OpKind::ExpandDims, .axes = std::vector<int>{axis}},
                    std::span<const TensorHandle>(this, 1));
}
TensorHandle TensorHandle::squeeze(int axis) const {
    return apply_op({.kind = OpKind::Squeeze, .axes = std::vector<int>{axis}},
                    std::span<const TensorHandle>(this, 1));
}

TensorHandle TensorHandle::clip(double lo, double hi) const {
    return apply_op({.kind = OpKind::Clip, .clip_lo = lo, .clip_hi = hi},
                    std::span<const TensorHandle>(this, 1));
}

TensorHandle TensorHandle::norm() const { return square().sum().sqrt(); }

TensorHandle operator+(const TensorHandle& a, const TensorHandle& b) {
    return a.add(b);
}
TensorHandle operator-(const TensorHandle& a, const TensorHandle& b) {
    return a.sub(b);
}
TensorHandle operator*(const TensorHandle& a, const TensorHandle& b) {
    return a.mul(b);
}
TensorHandle operator/(const TensorHandle& a, const TensorHandle& b) {
    return a.div(b);
}
TensorHandle operator+(const TensorHandle& a, double s) { return a.add(s); }
TensorHandle operator-(const TensorHandle& a, double s) { return a.sub(s); }
TensorHandle operator*(const TensorHandle& a, double s) { return a.mul(s); }
TensorHandle operator/(const TensorHandle& a, double s) { return a.div(s); }
TensorHandle operator-(const TensorHandle& a) { return a.neg(); }

TensorHandle square(const TensorHandle& h) { return h.square(); }
TensorHandle sqrt(const TensorHandle& h) { return h.sqrt(); }
TensorHandle exp(const TensorHandle& h) { return h.exp(); }
TensorHandle log(const TensorHandle& h) { return h.log(); }
TensorHandle abs(const TensorHandle& h) { return h.abs(); }
TensorHandle neg(const TensorHandle& h) { return h.neg(); }
TensorHandle sign(const TensorHandle& h) { return h.sign(); }
TensorHandle reciprocal(const TensorHandle& h) { return h.reciprocal(); }
TensorHandle add(const TensorHandle& a, const TensorHandle& b) { return a.add(b); }
TensorHandle sub(const TensorHandle& a, const TensorHandle& b) { return a.sub(b); }
TensorHandle mul(const TensorHandle& a, const TensorHandle& b) { return a.mul(b); }
TensorHandle div(const TensorHandle& a, const TensorHandle& b) { return a.div(b); }
TensorHandle pow(const TensorHandle& a, const TensorHandle& b) { return a.pow(b); }
TensorHandle minimum(const TensorHandle& a, const TensorHandle& b) {
    return a.minimum(b);
}
TensorHandle maximum(const TensorHandle& a, const TensorHandle& b) {
    return a.maximum(b);
}
TensorHandle add(const TensorHandle& a, double s) { return a.add(s); }
TensorHandle sub(const TensorHandle& a, double s) { return a.sub(s); }
TensorHandle mul(const TensorHandle& a, double s) { return a.mul(s); }
TensorHandle div(const TensorHandle& a, double s) { return a.div(s); }
TensorHandle pow(const TensorHandle& a, double s) { return a.pow(s); }
TensorHandle minimum(const TensorHandle& a, double s) { return a.minimum(s); }
TensorHandle maximum(const TensorHandle& a, double s) { return a.maximum(s); }
TensorHandle sum(const TensorHandle& h, std::vector<int> axes, bool keepdims) {
    return h.sum(std::move(axes), keepdims);
}
TensorHandle mean(const TensorHandle& h, std::vector<int> axes, bool keepdims) {
    return h.mean(std::move(axes), keepdims);
}
TensorHandle prod(const TensorHandle& h, std::vector<int> axes, bool keepdims) {
    return h.prod(std::move(axes), keepdims);
}
TensorHandle min(const TensorHandle& h, std::vector<int> axes, bool keepdims) {
    return h.min(std::move(axes), keepdims);
}
TensorHandle max(const TensorHandle& h, std::vector<int> axes, bool keepdims) {
    return h.max(std::move(axes), keepdims);
}
TensorHandle argmax(const TensorHandle& h, int axis) { return h.argmax(axis); }
TensorHandle argmin(const TensorHandle& h, int axis) { return h.argmin(axis); }
TensorHandle reshape(const TensorHandle& h, Shape target) {
    return h.reshape(std::move(target));
}
TensorHandle flatten(const TensorHandle& h) { return h.flatten(); }
TensorHandle transpose(const TensorHandle& h) { return h.transpose(); }
TensorHandle expand_dims(const TensorHandle& h, int axis) {
    return h.expand_dims(axis);
}
TensorHandle squeeze(const TensorHandle& h, int axis) { return h.squeeze(axis); }
TensorHandle clip(const TensorHandle& h, double lo, double hi) {
    return h.clip(lo, hi);
}
TensorHandle where(const TensorHandle& cond, const TensorHandle& a,
                   const TensorHandle& b) {
    const TensorHandle triple[3] = {cond, a, b};
    return apply_op({.kind = OpKind::Where}, triple);
}
TensorHandle norm(const TensorHandle& h) { return h.norm(); }

// --- creation --------------------------------------------------------------

TensorHandle create_op(BackendId backend, const OpDescriptor& op) {
    const std::span<const TensorHandle> none;
    switch (backend) {
        case BackendId::Plain:
            return TensorHandle(plain::apply(op, {}));
        case BackendId::Imperative:
            return TensorHandle(imperative::apply(op, {}));
        case BackendId::Tape:
            return TensorHandle(tape::apply(op, {}));
        case BackendId::Functional:
            return TensorHandle(functional::apply(op, {}));
    }
    (void)none;
    fail(ErrorKind::UnknownBackend, "unregistered backend id");
}

TensorHandle zeros(BackendId backend, const Shape& shape, DType dtype) {
    return create_op(backend,
                     {.kind = OpKind::Zeros, .shape = shape, .dtype = dtype});
}

TensorHandle ones(BackendId backend, const Shape& shape, DType dtype) {
    return create_op(backend,
                     {.kind = OpKind::Ones, .shape = shape, .dtype = dtype});
}

TensorHandle full(BackendId backend, const Shape& shape, double value, DType dtype) {
    return create_op(backend, {.kind = OpKind::Full,
                               .scalar = value,
                               .shape = shape,
                               .dtype = dtype});
}

TensorHandle arange(BackendId backend, std::size_t n, DType dtype) {
    return create_op(backend,
                     {.kind = OpKind::Arange, .shape = Shape{n}, .dtype = dtype});
}

TensorHandle from_values(BackendId backend, const Shape& shape,
                         std::span<const double> values, DType dtype) {
    return create_op(backend,
                     {.kind = OpKind::FromValues,
                      .shape = shape,
                      .values = std::vector<double>(values.begin(), values.end()),
                      .dtype = dtype});
}

TensorHandle from_values(BackendId backend, std::initializer_list<double> values,
                         DType dtype) {
    return from_values(backend, Shape{values.size()},
                       std::span<const double>(values.begin(), values.size()),
                       dtype);
}

// --- conversion --------------------------------------------------------------

TensorHandle astensor(const AnyTensor& x) {
    return std::visit(
        [](const auto& v) -> TensorHandle {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, TensorHandle>) {
                return v;  // already a handle: returned unchanged
            } else {
                return TensorHandle(v);
            }
        },
        x);
}

std::vector<TensorHandle> astensors(std::span<const AnyTensor> xs) {
    std::vector<TensorHandle> out;
    out.reserve(xs.size());
    for (const AnyTensor& x : xs) out.push_back(astensor(x));
    return out;
}

AnyTensor RestoreFn::operator()(const TensorHandle& result) const {
    if (!to_native_) return result;
    return std::visit([](const auto& n) -> AnyTensor { return n; }, result.raw());
}

std::pair<TensorHandle, RestoreFn> astensor_(const AnyTensor& x) {
    const bool was_native = !std::holds_alternative<TensorHandle>(x);
    return {astensor(x), RestoreFn(was_native)};
}

std::pair<std::vector<TensorHandle>, RestoreFn>
astensors_(std::span<const AnyTensor> xs) {
    if (xs.empty()) {
        throw std::invalid_argument("astensors_ needs at least one input");
    }
    const BackendId backend = backend_of(xs[0]);
    for (const AnyTensor& x : xs) {
        if (backend_of(x) != backend) {
            fail(ErrorKind::MixedBackends,
                 std::string(backend_name(backend)) + " input mixed with " +
                     std::string(backend_name(backend_of(x))));
        }
    }
    const bool was_native = !std::holds_alternative<TensorHandle>(xs[0]);
    return {astensors(xs), RestoreFn(was_native)};
}

NativeVariant raw(const TensorHandle& h) { return h.raw(); }

BackendId backend_of(const AnyTensor& x) {
    return std::visit(
        [](const auto& v) -> BackendId {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TensorHandle>) {
                return v.backend();
            } else if constexpr (std::is_same_v<T, plain::Array>) {
                return BackendId::Plain;
            } else if constexpr (std::is_same_v<T, imperative::Variable>) {
                return BackendId::Imperative;
            } else if constexpr (std::is_same_v<T, tape::Tensor>) {
                return BackendId::Tape;
            } else {
                return BackendId::Functional;
            }
        },
        x);
}

}  // namespace tb
