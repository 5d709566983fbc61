// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "tensorbridge/conformance/cases.hpp"
#include "tensorbridge/conformance/mutation.hpp"
#include "tensorbridge/conformance/report.hpp"
#include "tensorbridge/conformance/runner.hpp"

using namespace tb;
using namespace tb::conformance;

namespace {

std::vector<ConformanceCase> default_cases(std::uint64_t seed,
                                           DType dtype = DType::F64) {
    const auto kinds = all_op_kinds();
    return generate_cases(seed, kinds, ShapeBudget{}, dtype);
}

std::vector<BackendExecutor> all_executors() {
    std::vector<BackendExecutor> out;
    for (BackendId id : kAllBackends) out.push_back(facade_executor(id));
    return out;
}

}  // namespace

TEST_CASE("splitmix64 reproduces the published reference stream") {
    // first outputs for seed 0, from the algorithm's reference vector
    SplitMix64 g(0);
    CHECK(g.next() == 0xE220A8397B1DCDAFull);
    CHECK(g.next() == 0x6E789E6AA1B965F4ull);
    CHECK(g.next() == 0x06C45D188009454Full);
}

TEST_CASE("derived draws are frozen") {
    SplitMix64 a(42);
    CHECK(a.next_value() == 0.9662595150872932);  // -2 + 4 * (next >> 11) / 2^53
    SplitMix64 b(42);
    CHECK(b.next_smooth_value() == 1.0179465393329286);  // 0.1 + 0.95 * |v|
    SplitMix64 c(7);
    for (int i = 0; i < 100; ++i) {
        const double u = c.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = SplitMix64(static_cast<std::uint64_t>(i)).next_value();
        CHECK(v >= -2.0);
        CHECK(v <= 2.0);
        const double s =
            SplitMix64(static_cast<std::uint64_t>(i)).next_smooth_value();
        CHECK(std::fabs(s) >= 0.1);
        CHECK(std::fabs(s) <= 2.0);
        const auto r = c.next_range(3, 5);
        CHECK(r >= 3);
        CHECK(r <= 5);
    }
}

TEST_CASE("fnv1a matches the published test vector") {
    CHECK(fnv1a_hex("abc") == "e71fa2190541574b");
    CHECK(fnv1a_hex("") == "cbf29ce484222325");  // the offset basis
    CHECK(fnv1a_hex("a") != fnv1a_hex("b"));
    CHECK(fnv1a_hex("abc").size() == 16);
}

TEST_CASE("case ids hash the full case identity") {
    const OpDescriptor op{.kind = OpKind::Square};
    const Shape shapes[] = {Shape{3}};
    const std::string id1 = case_hash(op, shapes, DType::F64, 42);
    CHECK(id1.size() == 16);
    CHECK(id1 == case_hash(op, shapes, DType::F64, 42));  // deterministic
    CHECK(id1 != case_hash(op, shapes, DType::F32, 42));  // dtype matters
    CHECK(id1 != case_hash(op, shapes, DType::F64, 43));  // seed matters
    const Shape other[] = {Shape{4}};
    CHECK(id1 != case_hash(op, other, DType::F64, 42));   // shape matters
}

TEST_CASE("case generation is deterministic, bit for bit") {
    const auto a = default_cases(42);
    const auto b = default_cases(42);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].case_id == b[i].case_id);
        CHECK(a[i].input_seed == b[i].input_seed);
        const auto xa = materialize_inputs(a[i]);
        const auto xb = materialize_inputs(b[i]);
        REQUIRE(xa.size() == xb.size());
        for (std::size_t j = 0; j < xa.size(); ++j) {
            CHECK(xa[j].bit_equal(xb[j]));
        }
    }
    // a different seed changes the inputs but not the case list shape
    const auto c = default_cases(43);
    CHECK(c.size() == a.size());
    CHECK(c[0].case_id != a[0].case_id);  // input_seed enters the hash
}

TEST_CASE("the default case list covers every tier-1 kind and is large") {
    const auto cases = default_cases(42);
    CHECK(cases.size() >= 140);
    std::set<OpKind> seen;
    std::set<std::string> ids;
    for (const auto& c : cases) {
        seen.insert(c.op.kind);
        ids.insert(c.case_id);
    }
    CHECK(seen.size() == 35);
    CHECK(ids.size() == cases.size());  // ids are unique
}

TEST_CASE("case inputs respect the smoothness contract") {
    for (const auto& c : default_cases(9)) {
        const auto inputs = materialize_inputs(c);
        REQUIRE(inputs.size() == c.input_shapes.size());
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            CHECK(inputs[i].shape == c.input_shapes[i]);
            CHECK(inputs[i].dtype() == c.dtype);
            for (double v : inputs[i].to_doubles()) {
                CHECK(std::fabs(v) <= 2.0);
                // Where's condition input is a 0/1 mask, exempt from the
                // smooth-draw floor
                if (c.smooth_inputs && !(c.op.kind == OpKind::Where && i == 0)) {
                    CHECK(std::fabs(v) >= 0.1);
                }
            }
        }
    }
}

TEST_CASE("a rank-0 budget caps every generated shape at scalars") {
    const auto kinds = all_op_kinds();
    const auto cases =
        generate_cases(11, kinds, ShapeBudget{.max_rank = 0}, DType::F64);
    CHECK(!cases.empty());
    for (const auto& c : cases) {
        for (const auto& s : c.input_shapes) CHECK(s.rank() == 0);
    }
}

TEST_CASE("filtering by ops keeps case identity stable") {
    const auto all = default_cases(42);
    const OpKind only[] = {OpKind::Square};
    const auto filtered =
        generate_cases(42, only, ShapeBudget{}, DType::F64);
    CHECK(!filtered.empty());
    for (const auto& f : filtered) {
        CHECK(f.op.kind == OpKind::Square);
        // the same case (same id, same seed) appears in the full list
        const auto hit =
            std::find_if(all.begin(), all.end(), [&](const ConformanceCase& c) {
                return c.case_id == f.case_id;
            });
        REQUIRE(hit != all.end());
        CHECK(hit->input_seed == f.input_seed);
    }
}

TEST_CASE("healthy backends agree on every generated case") {
    const auto executors = all_executors();
    std::vector<CaseRecord> records;
    for (const auto& c : default_cases(42)) {
        const auto recs = run_differential(c, executors, 1e-12);
        records.insert(records.end(), recs.begin(), recs.end());
    }
    const auto sum = summarize(records);
    CHECK(sum.all_passed());
    CHECK(sum.passed == records.size());
    // 4 backends -> 6 unordered pairs per case
    CHECK(records.size() == default_cases(42).size() * 6);
}

TEST_CASE("one case yields one record per unordered backend pair") {
    ConformanceCase c;
    c.op = OpDescriptor{.kind = OpKind::Square};
    c.input_shapes = {Shape{3}};
    c.dtype = DType::F64;
    c.input_seed = 5;
    c.smooth_inputs = true;
    c.case_id = case_hash(c.op, c.input_shapes, c.dtype, c.input_seed);

    const auto recs = run_differential(c, all_executors(), 1e-12);
    REQUIRE(recs.size() == 6);
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& r : recs) {
        CHECK(r.status == "pass");
        CHECK(r.op == "square");
        CHECK(r.case_id == c.case_id);
        CHECK(r.backend_a != r.backend_b);
        CHECK(r.max_abs_err == 0.0);  // same kernel: bitwise equal
        pairs.insert(std::minmax(r.backend_a, r.backend_b));
    }
    CHECK(pairs.size() == 6);  // each unordered pair exactly once
}

TEST_CASE("unanimous taxonomy errors conform") {
    // transpose of a rank-1 tensor: every backend raises ShapeMismatch
    ConformanceCase c;
    c.op = OpDescriptor{.kind = OpKind::Transpose};
    c.input_shapes = {Shape{4}};
    c.dtype = DType::F64;
    c.input_seed = 3;
    c.smooth_inputs = false;
    c.case_id = case_hash(c.op, c.input_shapes, c.dtype, c.input_seed);

    const auto recs = run_differential(c, all_executors(), 1e-12);
    REQUIRE(recs.size() == 6);
    for (const auto& r : recs) CHECK(r.status == "pass");
}

TEST_CASE("disagreeing outcomes produce error records naming the kinds") {
    ConformanceCase c;
    c.op = OpDescriptor{.kind = OpKind::Transpose};
    c.input_shapes = {Shape{4}};
    c.dtype = DType::F64;
    c.input_seed = 3;
    c.smooth_inputs = false;
    c.case_id = "0000000000000000";

    // one healthy executor, one that returns a value instead of erroring
    BackendExecutor fake{"fake", [](const ConformanceCase&) {
        return ExecResult{TensorValue::scalar(DType::F64, 0.0), std::nullopt};
    }};
    const BackendExecutor execs[] = {facade_executor(BackendId::Plain), fake};
    const auto recs = run_differential(c, execs, 1e-12);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].status == "error:ShapeMismatch");

    // two different error kinds both get named
    BackendExecutor other{"other", [](const ConformanceCase&) {
        return ExecResult{std::nullopt, ErrorKind::InvalidAxis};
    }};
    const BackendExecutor execs2[] = {facade_executor(BackendId::Plain), other};
    const auto recs2 = run_differential(c, execs2, 1e-12);
    CHECK(recs2[0].status == "error:ShapeMismatch|InvalidAxis");
}

TEST_CASE("comparison semantics: NaN equals NaN, tolerance scales with |a|") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const TensorValue a = TensorValue::from_doubles(
        DType::F64, Shape{2}, std::vector<double>{nan, 1.0});
    const TensorValue b = TensorValue::from_doubles(
        DType::F64, Shape{2}, std::vector<double>{nan, 1.0});
    const auto same = compare_values(a, b, 1e-12);
    CHECK(same.pass);
    CHECK(same.max_abs_err == 0.0);

    // scale: linf(a) = 1000 relaxes the absolute cutoff to tol * 1000
    const TensorValue big1 = TensorValue::from_doubles(
        DType::F64, Shape{1}, std::vector<double>{1000.0});
    const TensorValue big2 = TensorValue::from_doubles(
        DType::F64, Shape{1}, std::vector<double>{1000.0 + 5e-10});
    const auto scaled = compare_values(big1, big2, 1e-12);
    CHECK(scaled.scaled_tol == doctest::Approx(1e-9).epsilon(1e-6));
    CHECK(scaled.pass);

    // NaN against a number is an infinite error
    const TensorValue num = TensorValue::from_doubles(
        DType::F64, Shape{2}, std::vector<double>{0.0, 1.0});
    CHECK_FALSE(compare_values(a, num, 1e-12).pass);

    // shape mismatch can never pass
    const TensorValue shp = TensorValue::zeros(DType::F64, Shape{3});
    CHECK_FALSE(compare_values(num, shp, 1e-12).pass);
}

TEST_CASE("gradient suite: all autodiff backends pass against the oracle") {
    std::vector<GradientExecutor> execs;
    for (BackendId id : kAllBackends) {
        if (backend_supports_grad(id)) execs.push_back(facade_grad_executor(id));
    }
    const auto kinds = all_op_kinds();
    const auto recs = run_gradient_suite(42, execs, kinds, GradSuiteOptions{});
    CHECK(!recs.empty());
    CHECK(summarize(recs).all_passed());
    // every corpus function appears; each contributes oracle + pair records
    std::set<std::string> ops;
    std::size_t oracle_records = 0;
    for (const auto& r : recs) {
        ops.insert(r.op);
        if (r.backend_b == "fd-oracle") ++oracle_records;
        CHECK(r.op.rfind("grad:", 0) == 0);
    }
    CHECK(ops.size() == gradient_corpus().size());
    CHECK(oracle_records == gradient_corpus().size() * execs.size());
}

TEST_CASE("gradient suite filters corpus functions by required kinds") {
    std::vector<GradientExecutor> execs{facade_grad_executor(BackendId::Tape)};
    // square+sum admits sum_square but nothing that needs sqrt
    const OpKind some[] = {OpKind::Square, OpKind::Sum};
    const auto recs = run_gradient_suite(42, execs, some, GradSuiteOptions{});
    CHECK(!recs.empty());
    for (const auto& r : recs) CHECK(r.op == "grad:sum_square");
    // an empty kind set admits nothing
    const auto none = run_gradient_suite(42, execs, std::span<const OpKind>{},
                                         GradSuiteOptions{});
    CHECK(none.empty());
}

TEST_CASE("the corpus covers every differentiable tier-1 kind") {
    std::set<OpKind> used;
    for (const auto& fn : gradient_corpus()) {
        for (OpKind k : fn.uses) used.insert(k);
    }
    for (const OpInfo& info : op_table()) {
        if (info.differentiable) {
            CHECK_MESSAGE(used.count(info.kind) == 1, info.name);
        }
    }
}

TEST_CASE("reports are sorted, stable and byte identical across runs") {
    const auto executors = all_executors();
    auto run_once = [&] {
        std::vector<CaseRecord> records;
        for (const auto& c : default_cases(42)) {
            const auto recs = run_differential(c, executors, 1e-12);
            records.insert(records.end(), recs.begin(), recs.end());
        }
        return report_to_string(records, 42);
    };
    const std::string r1 = run_once();
    const std::string r2 = run_once();
    CHECK(r1 == r2);
    CHECK(r1.find("\"summary\":true") != std::string::npos);

    // sortedness: the case ids of consecutive lines never decrease
    std::vector<std::string> lines;
    for (std::size_t pos = 0; pos < r1.size();) {
        const std::size_t nl = r1.find('\n', pos);
        lines.push_back(r1.substr(pos, nl - pos));
        pos = nl + 1;
    }
    REQUIRE(lines.size() >= 2);
    std::string prev;
    for (std::size_t i = 0; i + 1 < lines.size(); ++i) {  // last line = summary
        const std::string id = lines[i].substr(0, lines[i].find("\",\"op\""));
        CHECK(prev <= id);
        prev = id;
    }
}

TEST_CASE("an empty record set still summarizes") {
    const std::string r = report_to_string({}, 7);
    CHECK(r ==
          "{\"summary\":true,\"passed\":0,\"failed\":0,\"errored\":0,"
          "\"seed\":7}\n");
    const auto sum = summarize({});
    CHECK(sum.all_passed());
}

TEST_CASE("record fields serialize with fixed keys") {
    CaseRecord rec{"00ff", "square", "plain", "tape", 0.5, 1e-12, "fail"};
    const std::string line = report_to_string(std::vector{rec}, 1);
    CHECK(line.find("\"case\":\"00ff\"") != std::string::npos);
    CHECK(line.find("\"op\":\"square\"") != std::string::npos);
    CHECK(line.find("\"a\":\"plain\"") != std::string::npos);
    CHECK(line.find("\"b\":\"tape\"") != std::string::npos);
    CHECK(line.find("\"max_abs_err\":0.5") != std::string::npos);
    CHECK(line.find("\"status\":\"fail\"") != std::string::npos);
    CHECK(line.find("\"failed\":1") != std::string::npos);
}

TEST_CASE("mutation: a wrong square kernel is caught") {
    const BackendExecutor execs[] = {facade_executor(BackendId::Plain),
                                     wrong_square_kernel_executor(BackendId::Tape)};
    std::size_t failures = 0;
    for (const auto& c : default_cases(42)) {
        for (const auto& r : run_differential(c, execs, 1e-12)) {
            if (r.status == "fail") {
                ++failures;
                CHECK(r.op == "square");  // only square records may fail
            }
        }
    }
    CHECK(failures >= 1);
}

TEST_CASE("mutation: a negated VJP is caught by the oracle") {
    const GradientExecutor execs[] = {wrong_vjp_sign_executor(BackendId::Tape)};
    const auto kinds = all_op_kinds();
    const auto recs = run_gradient_suite(42, execs, kinds, GradSuiteOptions{});
    std::size_t failures = 0;
    for (const auto& r : recs) {
        if (r.status == "fail") ++failures;
    }
    CHECK(failures >= 1);
}

TEST_CASE("mutation: a missing broadcast reduction is caught") {
    const GradientExecutor execs[] = {
        facade_grad_executor(BackendId::Imperative),
        missing_broadcast_reduction_executor(BackendId::Tape)};
    const auto kinds = all_op_kinds();
    const auto recs = run_gradient_suite(42, execs, kinds, GradSuiteOptions{});
    std::size_t bad = 0;
    for (const auto& r : recs) {
        if (r.status != "pass") ++bad;
    }
    CHECK(bad >= 1);
    // the healthy executor alone still passes
    const GradientExecutor healthy[] = {
        facade_grad_executor(BackendId::Imperative)};
    CHECK(summarize(run_gradient_suite(42, healthy, kinds, GradSuiteOptions{}))
              .all_passed());
}
