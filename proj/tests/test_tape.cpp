// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "tensorbridge/backends/tape.hpp"
#include "tensorbridge/error.hpp"

using namespace tb;
using tape::GradientTape;
using tape::Tensor;

namespace {

Tensor leaf(std::vector<double> vals) {
    return Tensor::from_value(
        TensorValue::from_doubles(DType::F64, Shape{vals.size()}, vals));
}

Tensor run1(OpKind kind, const Tensor& x) {
    const Tensor in[] = {x};
    return tape::apply(OpDescriptor{.kind = kind}, in);
}

Tensor loss_of(const Tensor& x) { return run1(OpKind::Sum, run1(OpKind::Square, x)); }

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    REQUIRE(false);
    return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("a tape records watched computations and answers gradients") {
    Tensor x = leaf({1, 2, 3});
    GradientTape tape;
    tape.watch(x);
    Tensor loss = loss_of(x);
    CHECK(tape.record_count() == 2);  // square + sum

    Tensor g = tape.gradient(loss, x);
    CHECK(g.value().to_doubles() == std::vector<double>{2, 4, 6});
    CHECK(loss.value().item() == 14.0);
}

TEST_CASE("a non-persistent tape answers exactly once") {
    Tensor x = leaf({1, 2, 3});
    GradientTape tape;
    tape.watch(x);
    Tensor loss = loss_of(x);
    (void)tape.gradient(loss, x);
    CHECK(kind_of([&] { (void)tape.gradient(loss, x); }) ==
          ErrorKind::TapeConsumed);
}

TEST_CASE("a persistent tape answers repeatedly and identically") {
    Tensor x = leaf({1, 2, 3});
    GradientTape tape(/*persistent=*/true);
    tape.watch(x);
    Tensor loss = loss_of(x);
    Tensor g1 = tape.gradient(loss, x);
    Tensor g2 = tape.gradient(loss, x);
    CHECK(g1.value().bit_equal(g2.value()));
}

TEST_CASE("asking about an unwatched source is an error") {
    Tensor x = leaf({1, 2, 3});
    Tensor y = leaf({4, 5, 6});
    GradientTape tape;
    tape.watch(x);
    Tensor loss = loss_of(x);
    CHECK(kind_of([&] { (void)tape.gradient(loss, y); }) ==
          ErrorKind::NotWatched);
}

TEST_CASE("a watched source the output never used gets zeros") {
    Tensor x = leaf({1, 2, 3});
    Tensor unused = leaf({7, 8});
    GradientTape tape;
    tape.watch(x);
    tape.watch(unused);
    Tensor loss = loss_of(x);
    auto gs = tape.gradient(loss, std::vector<Tensor>{x, unused});
    REQUIRE(gs.size() == 2);
    CHECK(gs[0].value().to_doubles() == std::vector<double>{2, 4, 6});
    CHECK(gs[1].value().to_doubles() == std::vector<double>{0, 0});
}

TEST_CASE("ops outside any active tape are not recorded") {
    Tensor x = leaf({1, 2, 3});
    Tensor pre = run1(OpKind::Square, x);  // no tape active
    GradientTape tape;
    tape.watch(x);
    CHECK(tape.record_count() == 0);
    (void)run1(OpKind::Sum, pre);
    CHECK(tape.record_count() == 1);  // only the sum landed on the tape
}

TEST_CASE("stop_recording freezes the record list and is idempotent") {
    Tensor x = leaf({1, 2, 3});
    GradientTape tape;
    tape.watch(x);
    Tensor loss = loss_of(x);
    tape.stop_recording();
    tape.stop_recording();
    (void)run1(OpKind::Square, x);  // after stop: not recorded
    CHECK(tape.record_count() == 2);
    Tensor g = tape.gradient(loss, x);
    CHECK(g.value().to_doubles() == std::vector<double>{2, 4, 6});
}

TEST_CASE("nested tapes both observe inner ops") {
    Tensor x = leaf({2});
    GradientTape outer(/*persistent=*/true);
    outer.watch(x);
    {
        GradientTape inner;
        inner.watch(x);
        Tensor l = loss_of(x);
        CHECK(inner.record_count() == 2);
        CHECK(outer.record_count() == 2);
        CHECK(inner.gradient(l, x).value().to_doubles() ==
              std::vector<double>{4});
    }
    Tensor l2 = loss_of(x);
    CHECK(outer.record_count() == 4);
    CHECK(outer.gradient(l2, x).value().to_doubles() == std::vector<double>{4});
}

TEST_CASE("tensors are identified by id, values may repeat") {
    Tensor a = leaf({1, 2});
    Tensor b = leaf({1, 2});
    CHECK(a.id() != b.id());
    CHECK(a.same_object(a));
    CHECK_FALSE(a.same_object(b));
    Tensor alias = a;
    CHECK(alias.same_object(a));
    CHECK(alias.id() == a.id());
}

TEST_CASE("gradient flows through a multi-use tensor") {
    Tensor x = leaf({3});
    GradientTape tape;
    tape.watch(x);
    const Tensor in[] = {x, x};
    Tensor y = tape::apply(OpDescriptor{.kind = OpKind::Mul}, in);
    Tensor g = tape.gradient(run1(OpKind::Sum, y), x);
    CHECK(g.value().to_doubles() == std::vector<double>{6});
}
