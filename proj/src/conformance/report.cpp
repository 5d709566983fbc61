// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/conformance/report.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace tb::conformance {

ReportSummary summarize(std::span<const CaseRecord> records) {
    ReportSummary s;
    for (const CaseRecord& r : records) {
        if (r.status == "pass") {
            ++s.passed;
        } else if (r.status == "fail") {
            ++s.failed;
        } else {
            ++s.errored;
        }
    }
    return s;
}

void emit_report(std::ostream& out, std::span<const CaseRecord> records,
                 std::uint64_t seed) {
    std::vector<const CaseRecord*> sorted;
    sorted.reserve(records.size());
    for (const CaseRecord& r : records) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(),
              [](const CaseRecord* a, const CaseRecord* b) {
                  return std::tie(a->case_id, a->backend_a, a->backend_b) <
                         std::tie(b->case_id, b->backend_a, b->backend_b);
              });

    for (const CaseRecord* r : sorted) {
        nlohmann::ordered_json j;
        j["case"] = r->case_id;
        j["op"] = r->op;
        j["a"] = r->backend_a;
        j["b"] = r->backend_b;
        j["max_abs_err"] = r->max_abs_err;
        j["tol"] = r->tol;
        j["status"] = r->status;
        out << j.dump() << '\n';
    }
    const ReportSummary s = summarize(records);
    nlohmann::ordered_json j;
    j["summary"] = true;
    j["passed"] = s.passed;
    j["failed"] = s.failed;
    j["errored"] = s.errored;
    j["seed"] = seed;
    out << j.dump() << '\n';
}

std::string report_to_string(std::span<const CaseRecord> records,
                             std::uint64_t seed) {
    std::ostringstream out;
    emit_report(out, records, seed);
    return out.str();
}

}  // namespace tb::conformance
