// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tensorbridge/backend_id.hpp"
#include "tensorbridge/conformance/cases.hpp"
#include "tensorbridge/conformance/corpus.hpp"
#include "tensorbridge/error.hpp"

namespace tb::conformance {

/// One differential verdict: a backend pair (or a backend against the
/// finite-difference oracle) on one case.
struct CaseRecord {
    std::string case_id;
    std::string op;
    std::string backend_a;
    std::string backend_b;
    double max_abs_err = 0.0;
    double tol = 0.0;
    std::string status;  // "pass" | "fail" | "error:<kind>[|<kind>]"
};

/// Outcome of one backend executing one case: a value or a taxonomy error.
struct ExecResult {
    std::optional<TensorValue> value;
    std::optional<ErrorKind> error;
};

/// A backend as the harness sees it. Mutation fixtures substitute broken
/// executors here without touching the real backends.
struct BackendExecutor {
    std::string name;
    std::function<ExecResult(const ConformanceCase&)> run;
};

BackendExecutor facade_executor(BackendId id);

/// Elementwise comparison with NaN == NaN; the effective tolerance is
/// tol * max(1, linf(a)). Shape disagreement is an infinite error.
struct Comparison {
    double max_abs_err;
    double scaled_tol;
    bool pass;
};
Comparison compare_values(const TensorValue& a, const TensorValue& b, double tol);

/// One record per unordered executor pair. Raised taxonomy errors conform
/// only when unanimous: same kind on both sides is a pass, anything else is
/// an error record naming the kinds.
std::vector<CaseRecord> run_differential(const ConformanceCase& c,
                                         std::span<const BackendExecutor> backends,
                                         double tol);

/// value_and_grad of one corpus function at one input, or a taxonomy error.
struct GradResult {
    std::optional<TensorValue> value;
    std::optional<TensorValue> grad;
    std::optional<ErrorKind> error;
};

struct GradientExecutor {
    std::string name;
    std::function<GradResult(const CorpusFunction&, const TensorValue& x)> run;
};

GradientExecutor facade_grad_executor(BackendId id);

struct GradSuiteOptions {
    double fd_step = 1e-6;
    double fd_tol = 1e-4;    // backend vs finite differences (relative)
    double pair_tol = 1e-12; // backend vs backend, value and grad
};

/// Runs every corpus function (optionally filtered to those whose op kinds
/// all lie in `ops`) once per executor: each executor is compared against
/// the central-difference oracle and pairwise against the other executors.
/// The gradient suite always runs in F64 so the oracle stays meaningful.
std::vector<CaseRecord> run_gradient_suite(std::uint64_t seed,
                                           std::span<const GradientExecutor> executors,
                                           std::span<const OpKind> ops,
                                           const GradSuiteOptions& options);

}  // namespace tb::conformance
