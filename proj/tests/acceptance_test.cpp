// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance harness: one [PASS]/[FAIL] line per criterion, nonzero exit if
// any criterion fails. Tolerances are pinned here, not configurable.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "tensorbridge/autodiff.hpp"
#include "tensorbridge/conformance/cases.hpp"
#include "tensorbridge/conformance/fd.hpp"
#include "tensorbridge/conformance/mutation.hpp"
#include "tensorbridge/conformance/report.hpp"
#include "tensorbridge/conformance/runner.hpp"
#include "tensorbridge/error.hpp"
#include "tensorbridge/tensor.hpp"

#ifndef TB_CLI_PATH
#error "TB_CLI_PATH must point at the tb executable"
#endif

using namespace tb;
using namespace tb::conformance;

namespace {

int g_failures = 0;

void report(const char* name, bool ok, const std::string& detail = "") {
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(TB_CLI_PATH) + " " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {127, ""};
    std::array<char, 4096> chunk{};
    std::string out;
    while (std::fgets(chunk.data(), chunk.size(), pipe)) out += chunk.data();
    return {WEXITSTATUS(pclose(pipe)), out};
}

// --- criterion 1: unified norm across backends and dtypes ----------------
// norm([1,2,3]) == 3.7416575 (f32, atol 1e-6) and 3.7416573867739413
// (f64, atol 1e-12) on all four backends through the one facade chain.
void criterion_norm() {
    constexpr double kF32Expect = 3.7416575;
    constexpr double kF32Atol = 1e-6;
    constexpr double kF64Expect = 3.7416573867739413;
    constexpr double kF64Atol = 1e-12;

    bool ok = true;
    std::string detail;
    for (BackendId id : kAllBackends) {
        const double f32 = from_values(id, {1, 2, 3}, DType::F32).norm().item();
        const double f64 = from_values(id, {1, 2, 3}, DType::F64).norm().item();
        if (std::fabs(f32 - kF32Expect) > kF32Atol ||
            std::fabs(f64 - kF64Expect) > kF64Atol) {
            ok = false;
            detail = std::string(backend_name(id)) + " f32=" +
                     std::to_string(f32) + " f64=" + std::to_string(f64);
        }
    }
    report("norm agrees across all four backends at both dtypes", ok, detail);
}

// --- criterion 2: one autodiff API over three idioms ----------------------
// value_and_grad(sum(square(x)), [1,2,3]) == (14, [2,4,6]) exactly on the
// imperative, tape and functional backends alike.
void criterion_autodiff() {
    bool ok = true;
    std::string detail;
    for (BackendId id : kAllBackends) {
        if (!backend_supports_grad(id)) continue;
        const auto [value, grad] = value_and_grad(
            [](const TensorHandle& x) { return x.square().sum(); },
            from_values(id, {1, 2, 3}));
        const auto g = grad.to_doubles();
        if (value.item() != 14.0 || g != std::vector<double>{2, 4, 6}) {
            ok = false;
            detail = backend_name(id);
        }
    }
    report("value_and_grad gives (14, [2,4,6]) on all autodiff backends", ok,
           detail);
}

// --- criterion 3: CLI differential check -----------------------------------
// `tb check --seed 42` exits 0, covers >= 140 cases, finishes inside 10
// seconds, at f64 and f32.
void criterion_cli_check() {
    constexpr std::size_t kMinCases = 140;
    constexpr double kMaxSeconds = 10.0;

    const auto t0 = std::chrono::steady_clock::now();
    const CliResult f64 = run_cli("check --seed 42 --dtype f64 2>/dev/null");
    const CliResult f32 = run_cli("check --seed 42 --dtype f32 2>/dev/null");
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    const auto cases = generate_cases(42, all_op_kinds(), ShapeBudget{},
                                      DType::F64);
    std::set<std::string> ids;
    for (const auto& c : cases) ids.insert(c.case_id);

    const bool ok = f64.exit_code == 0 && f32.exit_code == 0 &&
                    ids.size() >= kMinCases && seconds < kMaxSeconds &&
                    f64.output.find("\"failed\":0") != std::string::npos;
    report("tb check --seed 42 passes at f64 and f32 within 10s",
           ok,
           "cases=" + std::to_string(ids.size()) +
               " time=" + std::to_string(seconds) + "s exit=" +
               std::to_string(f64.exit_code) + "/" +
               std::to_string(f32.exit_code));
}

// --- criterion 4: gradient corpus against the FD oracle --------------------
// Every corpus function's gradient matches central differences (step 1e-6,
// relative tol 1e-4) on the three autodiff backends.
void criterion_gradient_oracle() {
    GradSuiteOptions options;  // fd_step 1e-6, fd_tol 1e-4, pair_tol 1e-12
    std::vector<GradientExecutor> execs;
    for (BackendId id : kAllBackends) {
        if (backend_supports_grad(id)) execs.push_back(facade_grad_executor(id));
    }
    const auto kinds = all_op_kinds();
    const auto records = run_gradient_suite(42, execs, kinds, options);
    const auto sum = summarize(records);
    report("gradient corpus matches finite differences on all backends",
           !records.empty() && sum.all_passed(),
           std::to_string(records.size()) + " records, failed=" +
               std::to_string(sum.failed) + " errored=" +
               std::to_string(sum.errored));
}

// --- criterion 5: zero-copy wrap/unwrap ------------------------------------
// astensor/raw round trips allocate no element buffers and preserve native
// identity on every backend.
void criterion_zero_copy() {
    bool ok = true;
    std::string detail;
    for (BackendId id : kAllBackends) {
        TensorHandle h = from_values(id, {1, 2, 3, 4});
        const std::size_t before = buffer_alloc_count();
        NativeVariant n = raw(h);
        TensorHandle h2 = astensor(
            std::visit([](auto x) { return AnyTensor{std::move(x)}; }, n));
        const bool same = h2.same_native(h);
        if (buffer_alloc_count() != before || !same) {
            ok = false;
            detail = backend_name(id);
        }
    }
    report("wrap/unwrap is zero-copy and identity-preserving", ok, detail);
}

// --- criterion 6: uniform error and IEEE semantics -------------------------
// sqrt(-1) -> NaN and x/0 -> inf uniformly (no throw); plain-backend
// gradient requests raise NoAutodiffCapability.
void criterion_uniform_semantics() {
    bool ok = true;
    std::string detail;
    for (BackendId id : kAllBackends) {
        const double nan_val =
            from_values(id, {-1.0}).sqrt().to_doubles()[0];
        const double inf_val =
            from_values(id, {1.0}).div(from_values(id, {0.0})).to_doubles()[0];
        if (!std::isnan(nan_val) || !std::isinf(inf_val)) {
            ok = false;
            detail = std::string("ieee: ") + std::string(backend_name(id));
        }
    }
    try {
        (void)value_and_grad(
            [](const TensorHandle& x) { return x.sum(); },
            from_values(BackendId::Plain, {1.0}));
        ok = false;
        detail = "plain backend accepted a gradient request";
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoAutodiffCapability) {
            ok = false;
            detail = e.what();
        }
    }
    report("IEEE domain semantics and NoAutodiffCapability are uniform", ok,
           detail);
}

// --- criterion 7: mutation sensitivity --------------------------------------
// Each seeded defect (wrong square kernel, negated VJP, missing broadcast
// reduction) produces at least one failing record under the harness.
void criterion_mutations() {
    const auto kinds = all_op_kinds();
    std::size_t caught = 0;

    {
        const BackendExecutor execs[] = {
            facade_executor(BackendId::Plain),
            wrong_square_kernel_executor(BackendId::Tape)};
        std::size_t failures = 0;
        for (const auto& c :
             generate_cases(42, kinds, ShapeBudget{}, DType::F64)) {
            for (const auto& r : run_differential(c, execs, 1e-12)) {
                if (r.status != "pass") ++failures;
            }
        }
        if (failures > 0) ++caught;
    }
    {
        const GradientExecutor execs[] = {
            wrong_vjp_sign_executor(BackendId::Imperative)};
        const auto recs = run_gradient_suite(42, execs, kinds, GradSuiteOptions{});
        if (summarize(recs).failed > 0) ++caught;
    }
    {
        const GradientExecutor execs[] = {
            missing_broadcast_reduction_executor(BackendId::Functional)};
        const auto recs = run_gradient_suite(42, execs, kinds, GradSuiteOptions{});
        if (!summarize(recs).all_passed()) ++caught;
    }
    report("all three seeded defects are caught by the harness", caught == 3,
           std::to_string(caught) + "/3 caught");
}

}  // namespace

int main() {
    criterion_norm();
    criterion_autodiff();
    criterion_cli_check();
    criterion_gradient_oracle();
    criterion_zero_copy();
    criterion_uniform_semantics();
    criterion_mutations();

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
