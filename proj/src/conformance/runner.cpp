// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/conformance/runner.hpp"

#include <cmath>
#include <limits>

#include "tensorbridge/autodiff.hpp"
#include "tensorbridge/conformance/fd.hpp"
#include "tensorbridge/tensor.hpp"

namespace tb::conformance {

namespace {

// Finite stand-in for "infinitely wrong" (JSON has no Infinity literal).
constexpr double kHugeErr = std::numeric_limits<double>::max();

TensorHandle wrap_value(BackendId id, TensorValue v) {
    switch (id) {
        case BackendId::Plain:
            return TensorHandle(plain::Array::from_value(std::move(v)));
        case BackendId::Imperative:
            return TensorHandle(imperative::Variable::from_value(std::move(v)));
        case BackendId::Tape:
            return TensorHandle(tape::Tensor::from_value(std::move(v)));
        case BackendId::Functional:
            return TensorHandle(functional::Array::from_value(std::move(v)));
    }
    throw std::logic_error("unreachable backend");
}

double linf(const TensorValue& v) {
    double m = 0.0;
    for (std::size_t i = 0; i < v.numel(); ++i) {
        const double a = std::fabs(v.buffer.at(i));
        if (std::isfinite(a) && a > m) m = a;
    }
    return m;
}

std::string error_status(const ExecResult& ra, const ExecResult& rb) {
    std::string s = "error:";
    if (ra.error) s += error_kind_name(*ra.error);
    if (rb.error && (!ra.error || *rb.error != *ra.error)) {
        if (ra.error) s += '|';
        s += error_kind_name(*rb.error);
    }
    return s;
}

}  // namespace

BackendExecutor facade_executor(BackendId id) {
    return {std::string(backend_name(id)), [id](const ConformanceCase& c) {
                ExecResult r;
                try {
                    if (op_input_count(c.op) == 0) {
                        r.value = create_op(id, c.op).value();
                        return r;
                    }
                    std::vector<TensorHandle> handles;
                    for (TensorValue& v : materialize_inputs(c)) {
                        handles.push_back(wrap_value(id, std::move(v)));
                    }
                    r.value = apply_op(c.op, handles).value();
                } catch (const Error& e) {
                    r.error = e.kind();
                }
                return r;
            }};
}

Comparison compare_values(const TensorValue& a, const TensorValue& b, double tol) {
    Comparison cmp{0.0, tol * std::max(1.0, linf(a)), false};
    if (a.shape != b.shape || a.dtype() != b.dtype()) {
        cmp.max_abs_err = kHugeErr;
        return cmp;
    }
    for (std::size_t i = 0; i < a.numel(); ++i) {
        const double va = a.buffer.at(i), vb = b.buffer.at(i);
        double d = 0.0;
        if (va == vb || (std::isnan(va) && std::isnan(vb))) {
            d = 0.0;  // NaN == NaN by harness convention; covers +-inf too
        } else {
            d = std::fabs(va - vb);
            if (!std::isfinite(d)) d = kHugeErr;
        }
        if (d > cmp.max_abs_err) cmp.max_abs_err = d;
    }
    cmp.pass = cmp.max_abs_err <= cmp.scaled_tol;
    return cmp;
}

std::vector<CaseRecord> run_differential(const ConformanceCase& c,
                                         std::span<const BackendExecutor> backends,
                                         double tol) {
    std::vector<ExecResult> results;
    results.reserve(backends.size());
    for (const BackendExecutor& b : backends) results.push_back(b.run(c));

    std::vector<CaseRecord> records;
    for (std::size_t i = 0; i < backends.size(); ++i) {
        for (std::size_t j = i + 1; j < backends.size(); ++j) {
            CaseRecord rec;
            rec.case_id = c.case_id;
            rec.op = op_name(c.op.kind);
            rec.backend_a = backends[i].name;
            rec.backend_b = backends[j].name;
            rec.tol = tol;
            const ExecResult& ra = results[i];
            const ExecResult& rb = results[j];
            if (ra.value && rb.value) {
                const Comparison cmp = compare_values(*ra.value, *rb.value, tol);
                rec.max_abs_err = cmp.max_abs_err;
                rec.tol = cmp.scaled_tol;
                rec.status = cmp.pass ? "pass" : "fail";
            } else if (ra.error && rb.error && *ra.error == *rb.error) {
                rec.status = "pass";  // unanimous error kind conforms
            } else {
                rec.status = error_status(ra, rb);
            }
            records.push_back(std::move(rec));
        }
    }
    return records;
}

GradientExecutor facade_grad_executor(BackendId id) {
    return {std::string(backend_name(id)),
            [id](const CorpusFunction& fn, const TensorValue& x) {
                GradResult r;
                try {
                    const ValueAndGrad vg =
                        value_and_grad(fn.fn, wrap_value(id, x));
                    r.value = vg.value.value();
                    r.grad = vg.grad.value();
                } catch (const Error& e) {
                    r.error = e.kind();
                }
                return r;
            }};
}

std::vector<CaseRecord> run_gradient_suite(std::uint64_t seed,
                                           std::span<const GradientExecutor> executors,
                                           std::span<const OpKind> ops,
                                           const GradSuiteOptions& options) {
    std::vector<CaseRecord> records;
    const auto corpus = gradient_corpus();
    for (std::size_t k = 0; k < corpus.size(); ++k) {
        const CorpusFunction& fn = corpus[k];
        bool selected = true;  // keep a function only if every kind it uses is
        for (OpKind kind : fn.uses) {  // in the requested op set
            selected = selected &&
                       std::find(ops.begin(), ops.end(), kind) != ops.end();
        }
        if (!selected) continue;

        // Gradient cases run F64 regardless of the harness dtype: the
        // central-difference oracle is meaningless at F32 resolution.
        const std::uint64_t input_seed = seed ^ (100000 + k);
        SplitMix64 rng(input_seed);
        TensorValue x = TensorValue::zeros(DType::F64, fn.input_shape);
        for (std::size_t i = 0; i < x.numel(); ++i) {
            x.buffer.set(i, rng.next_smooth_value());
        }
        const std::string case_id =
            fnv1a_hex("grad:" + std::string(fn.name) + "|" +
                      fn.input_shape.to_string() + "|f64|" +
                      std::to_string(input_seed));
        const std::string op_label = "grad:" + std::string(fn.name);

        const TensorValue fd = finite_diff_grad(
            [&fn](const TensorValue& v) {
                return fn.fn(TensorHandle(plain::Array::from_value(v))).item();
            },
            x, options.fd_step);

        std::vector<GradResult> results;
        results.reserve(executors.size());
        for (const GradientExecutor& ex : executors) results.push_back(ex.run(fn, x));

        // Each AD backend against the oracle...
        for (std::size_t i = 0; i < executors.size(); ++i) {
            CaseRecord rec;
            rec.case_id = case_id;
            rec.op = op_label;
            rec.backend_a = executors[i].name;
            rec.backend_b = "fd-oracle";
            rec.tol = options.fd_tol;
            if (results[i].grad) {
                const Comparison cmp =
                    compare_values(*results[i].grad, fd, options.fd_tol);
                rec.max_abs_err = cmp.max_abs_err;
                rec.tol = cmp.scaled_tol;
                rec.status = cmp.pass ? "pass" : "fail";
            } else {
                rec.status =
                    "error:" + std::string(error_kind_name(*results[i].error));
            }
            records.push_back(std::move(rec));
        }
        // ...and pairwise (value and gradient both).
        for (std::size_t i = 0; i < executors.size(); ++i) {
            for (std::size_t j = i + 1; j < executors.size(); ++j) {
                CaseRecord rec;
                rec.case_id = case_id;
                rec.op = op_label;
                rec.backend_a = executors[i].name;
                rec.backend_b = executors[j].name;
                rec.tol = options.pair_tol;
                const GradResult& ra = results[i];
                const GradResult& rb = results[j];
                if (ra.grad && rb.grad) {
                    const Comparison cv =
                        compare_values(*ra.value, *rb.value, options.pair_tol);
                    const Comparison cg =
                        compare_values(*ra.grad, *rb.grad, options.pair_tol);
                    rec.max_abs_err = std::max(cv.max_abs_err, cg.max_abs_err);
                    rec.tol = std::max(cv.scaled_tol, cg.scaled_tol);
                    rec.status = cv.pass && cg.pass ? "pass" : "fail";
                } else if (ra.error && rb.error && *ra.error == *rb.error) {
                    rec.status = "pass";
                } else {
                    ExecResult ea, eb;
                    ea.error = ra.error;
                    eb.error = rb.error;
                    rec.status = error_status(ea, eb);
                }
                records.push_back(std::move(rec));
            }
        }
    }
    return records;
}

}  // namespace tb::conformance
