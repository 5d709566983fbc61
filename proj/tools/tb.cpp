// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
//
// tb — conformance harness and demo driver.
//   tb check [--seed N] [--dtype f32|f64] [--backends ...] [--ops ...] [--report PATH|-]
//   tb demo norm LITERAL      tb demo grad LITERAL [--backends ...]
//   tb list-ops
// Exits 0 on success, 1 on failing records or failed demos, 2 on usage errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tensorbridge/autodiff.hpp"
#include "tensorbridge/conformance/report.hpp"
#include "tensorbridge/conformance/runner.hpp"
#include "tensorbridge/literal.hpp"
#include "tensorbridge/tensor.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CheckConfig {
    std::uint64_t seed = 42;
    std::string dtype = "f64";
    std::vector<std::string> backends{"plain", "imperative", "tape", "functional"};
    std::vector<std::string> ops;  // empty = all
    std::string report = "-";
};

int resolve_backends(const std::vector<std::string>& names,
                     std::vector<tb::BackendId>& out) {
    for (const std::string& n : names) {
        const auto id = tb::backend_from_name(n);
        if (!id) {
            std::cerr << "unknown backend: " << n << "\n";
            return kExitUsage;
        }
        if (std::find(out.begin(), out.end(), *id) == out.end()) out.push_back(*id);
    }
    return kExitPass;
}

int cmd_check(const CheckConfig& cfg) {
    std::vector<tb::BackendId> backends;
    if (int rc = resolve_backends(cfg.backends, backends); rc != kExitPass) return rc;
    if (backends.size() < 2) {
        std::cerr << "check needs at least 2 distinct backends\n";
        return kExitUsage;
    }

    std::vector<tb::OpKind> ops;
    if (cfg.ops.empty()) {
        ops = tb::conformance::all_op_kinds();
    } else {
        for (const std::string& n : cfg.ops) {
            const auto kind = tb::op_kind_from_name(n);
            if (!kind) {
                std::cerr << "unknown op: " << n << "\n";
                return kExitUsage;
            }
            ops.push_back(*kind);
        }
    }
    const auto dtype = tb::dtype_from_name(cfg.dtype);
    if (!dtype) {
        std::cerr << "unknown dtype: " << cfg.dtype << "\n";
        return kExitUsage;
    }
    const double tol = *dtype == tb::DType::F64 ? 1e-12 : 1e-5;

    std::vector<tb::conformance::BackendExecutor> executors;
    std::vector<tb::conformance::GradientExecutor> grad_executors;
    for (tb::BackendId id : backends) {
        executors.push_back(tb::conformance::facade_executor(id));
        if (tb::backend_supports_grad(id)) {
            grad_executors.push_back(tb::conformance::facade_grad_executor(id));
        }
    }

    const auto cases = tb::conformance::generate_cases(
        cfg.seed, ops, tb::conformance::ShapeBudget{}, *dtype);
    std::vector<tb::conformance::CaseRecord> records;
    for (const auto& c : cases) {
        auto recs = tb::conformance::run_differential(c, executors, tol);
        records.insert(records.end(), recs.begin(), recs.end());
    }
    auto grad_recs = tb::conformance::run_gradient_suite(
        cfg.seed, grad_executors, ops, tb::conformance::GradSuiteOptions{});
    records.insert(records.end(), grad_recs.begin(), grad_recs.end());

    if (cfg.report == "-") {
        tb::conformance::emit_report(std::cout, records, cfg.seed);
    } else {
        std::ofstream out(cfg.report);
        if (!out) {
            std::cerr << "cannot open report path: " << cfg.report << "\n";
            return kExitUsage;
        }
        tb::conformance::emit_report(out, records, cfg.seed);
    }

    const auto summary = tb::conformance::summarize(records);
    std::cerr << "cases=" << cases.size() << " records=" << records.size()
              << " passed=" << summary.passed << " failed=" << summary.failed
              << " errored=" << summary.errored << "\n";
    return summary.all_passed() ? kExitPass : kExitFail;
}

int cmd_demo_norm(const std::string& literal,
                  const std::vector<std::string>& backend_names,
                  const std::string& dtype_name) {
    const auto dtype = tb::dtype_from_name(dtype_name);
    if (!dtype) {
        std::cerr << "unknown dtype: " << dtype_name << "\n";
        return kExitUsage;
    }
    std::vector<tb::BackendId> backends;
    if (int rc = resolve_backends(backend_names, backends); rc != kExitPass) {
        return rc;
    }
    tb::ParsedLiteral lit;
    try {
        lit = tb::parse_tensor_literal(literal);
    } catch (const tb::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    for (tb::BackendId id : backends) {
        const tb::TensorHandle x =
            tb::from_values(id, lit.shape, lit.values, *dtype);
        std::cout << tb::backend_name(id) << ": "
                  << tb::format_tensor(x.norm().value()) << "\n";
    }
    return kExitPass;
}

int cmd_demo_grad(const std::string& literal,
                  const std::vector<std::string>& backend_names) {
    std::vector<tb::BackendId> backends;
    if (int rc = resolve_backends(backend_names, backends); rc != kExitPass) {
        return rc;
    }
    tb::ParsedLiteral lit;
    try {
        lit = tb::parse_tensor_literal(literal);
    } catch (const tb::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    const tb::ScalarFn f = [](const tb::TensorHandle& x) {
        return x.square().sum();
    };
    bool failed = false;
    for (tb::BackendId id : backends) {
        const tb::TensorHandle x =
            tb::from_values(id, lit.shape, lit.values, tb::DType::F64);
        try {
            const tb::ValueAndGrad vg = tb::value_and_grad(f, x);
            std::cout << tb::backend_name(id)
                      << ": value=" << tb::format_tensor(vg.value.value())
                      << " grad=" << tb::format_tensor(vg.grad.value()) << "\n";
        } catch (const tb::Error& e) {
            std::cout << tb::backend_name(id) << ": " << e.what() << "\n";
            failed = true;
        }
    }
    return failed ? kExitFail : kExitPass;
}

int cmd_list_ops() {
    std::printf("%-12s %-10s %-8s %-5s %s\n", "name", "group", "arity", "diff",
                "params");
    for (const tb::OpInfo& info : tb::op_table()) {
        const char* arity = "";
        switch (info.arity) {
            case tb::OpArity::Nullary: arity = "nullary"; break;
            case tb::OpArity::Unary: arity = "unary"; break;
            case tb::OpArity::Binary: arity = "binary"; break;
            case tb::OpArity::Ternary: arity = "ternary"; break;
        }
        std::printf("%-12s %-10s %-8s %-5s %s\n",
                    std::string(info.name).c_str(),
                    std::string(info.group).c_str(), arity,
                    info.differentiable ? "yes" : "no",
                    std::string(info.params).c_str());
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tensorbridge conformance harness and demos"};
    app.require_subcommand(1);

    CheckConfig cfg;
    CLI::App* check = app.add_subcommand("check", "run the conformance suite");
    check->add_option("--seed", cfg.seed, "PRNG seed")->envname("TB_SEED");
    check->add_option("--dtype", cfg.dtype, "element type (f32|f64)");
    check->add_option("--backends", cfg.backends, "comma-separated backends")
        ->delimiter(',');
    check->add_option("--ops", cfg.ops, "comma-separated op kinds")
        ->delimiter(',');
    check->add_option("--report", cfg.report, "report path, or - for stdout");

    CLI::App* demo = app.add_subcommand("demo", "run a bundled example");
    demo->require_subcommand(1);
    std::string norm_literal;
    std::string norm_dtype = "f64";
    std::vector<std::string> norm_backends{"plain", "imperative", "tape",
                                           "functional"};
    CLI::App* demo_norm = demo->add_subcommand("norm", "L2 norm of a literal");
    demo_norm->add_option("literal", norm_literal, "tensor literal")->required();
    demo_norm->add_option("--backends", norm_backends, "comma-separated backends")
        ->delimiter(',');
    demo_norm->add_option("--dtype", norm_dtype, "element type (f32|f64)");

    std::string grad_literal;
    std::vector<std::string> grad_backends{"imperative", "tape", "functional"};
    CLI::App* demo_grad =
        demo->add_subcommand("grad", "value_and_grad of sum of squares");
    demo_grad->add_option("literal", grad_literal, "tensor literal")->required();
    demo_grad->add_option("--backends", grad_backends, "comma-separated backends")
        ->delimiter(',');

    CLI::App* list = app.add_subcommand("list-ops", "print the op table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    if (check->parsed()) return cmd_check(cfg);
    if (demo_norm->parsed()) {
        return cmd_demo_norm(norm_literal, norm_backends, norm_dtype);
    }
    if (demo_grad->parsed()) return cmd_demo_grad(grad_literal, grad_backends);
    if (list->parsed()) return cmd_list_ops();
    return kExitUsage;
}
