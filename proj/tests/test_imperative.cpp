// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "tensorbridge/backends/imperative.hpp"
#include "tensorbridge/error.hpp"

using namespace tb;
using imperative::Variable;

namespace {

Variable leaf(std::vector<double> vals) {
    return Variable::from_value(TensorValue::from_doubles(
        DType::F64, Shape{vals.size()}, vals));
}

Variable run1(OpKind kind, const Variable& x) {
    const Variable in[] = {x};
    return imperative::apply(OpDescriptor{.kind = kind}, in);
}

// loss = sum(square(x))
Variable loss_of(const Variable& x) { return run1(OpKind::Sum, run1(OpKind::Square, x)); }

}  // namespace

TEST_CASE("backward accumulates d loss/d x into .grad") {
    Variable x = leaf({1, 2, 3});
    x.requires_grad_();
    CHECK(x.requires_grad());

    Variable loss = loss_of(x);
    CHECK(loss.value().item() == 14.0);
    CHECK_FALSE(x.grad().has_value());  // nothing before backward

    imperative::backward(loss);
    REQUIRE(x.grad().has_value());
    CHECK(x.grad()->to_doubles() == std::vector<double>{2, 4, 6});
    // forward value is untouched by the backward pass
    CHECK(x.value().to_doubles() == std::vector<double>{1, 2, 3});
}

TEST_CASE("backward twice doubles the accumulated grads") {
    Variable x = leaf({1, 2, 3});
    x.requires_grad_();
    Variable loss = loss_of(x);
    imperative::backward(loss);
    imperative::backward(loss);
    CHECK(x.grad()->to_doubles() == std::vector<double>{4, 8, 12});

    x.zero_grad();
    CHECK(x.grad()->to_doubles() == std::vector<double>{0, 0, 0});
    imperative::backward(loss_of(x));
    CHECK(x.grad()->to_doubles() == std::vector<double>{2, 4, 6});
}

TEST_CASE("a tensor used twice sums both contributions") {
    Variable x = leaf({3});
    x.requires_grad_();
    const Variable in[] = {x, x};
    Variable y = imperative::apply(OpDescriptor{.kind = OpKind::Mul}, in);
    imperative::backward(run1(OpKind::Sum, y));
    // d(x*x)/dx = 2x = 6
    CHECK(x.grad()->to_doubles() == std::vector<double>{6});
}

TEST_CASE("grads flow only where requested") {
    Variable x = leaf({1, 2});
    Variable y = leaf({5, 5});
    x.requires_grad_();  // y stays a constant
    const Variable in[] = {x, y};
    Variable z = imperative::apply(OpDescriptor{.kind = OpKind::Mul}, in);
    imperative::backward(run1(OpKind::Sum, z));
    CHECK(x.grad()->to_doubles() == std::vector<double>{5, 5});
    CHECK_FALSE(y.grad().has_value());

    // with no tracked leaf at all, apply records nothing
    Variable a = leaf({1, 2});
    Variable b = run1(OpKind::Square, a);
    CHECK_FALSE(b.requires_grad());
}

TEST_CASE("backward requires a rank-0 loss") {
    Variable x = leaf({1, 2, 3});
    x.requires_grad_();
    Variable y = run1(OpKind::Square, x);
    try {
        imperative::backward(y);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotScalarLoss);
    }
}

TEST_CASE("copies alias the same grad state") {
    Variable x = leaf({2});
    Variable alias = x;
    CHECK(alias.same_object(x));
    x.requires_grad_();
    CHECK(alias.requires_grad());
    imperative::backward(loss_of(x));
    CHECK(alias.grad()->to_doubles() == std::vector<double>{4});
}

TEST_CASE("independent graphs stay isolated") {
    Variable x1 = leaf({1, 2, 3});
    Variable x2 = leaf({1, 2, 3});
    x1.requires_grad_();
    x2.requires_grad_();
    Variable l1 = loss_of(x1);
    imperative::backward(l1);
    // x2 never participated; its grad is untouched
    CHECK(x1.grad().has_value());
    CHECK_FALSE(x2.grad().has_value());
}

TEST_CASE("longer chain: d/dx sum(sqrt(square(x)+1))") {
    Variable x = leaf({3});
    x.requires_grad_();
    const Variable sq = run1(OpKind::Square, x);
    const Variable sqin[] = {sq};
    const Variable shifted =
        imperative::apply(OpDescriptor{.kind = OpKind::Add, .scalar = 1.0}, sqin);
    imperative::backward(run1(OpKind::Sum, run1(OpKind::Sqrt, shifted)));
    // d sqrt(x^2+1)/dx = x / sqrt(x^2+1) = 3/sqrt(10)
    CHECK(x.grad()->to_doubles()[0] ==
          doctest::Approx(3.0 / std::sqrt(10.0)).epsilon(1e-14));
}
