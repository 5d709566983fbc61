// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tensorbridge/conformance/runner.hpp"

namespace tb::conformance {

struct ReportSummary {
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t errored = 0;
    bool all_passed() const { return failed == 0 && errored == 0; }
};

ReportSummary summarize(std::span<const CaseRecord> records);

/// JSON Lines: one object per record sorted by (case, backend_a, backend_b),
/// then a trailing {"summary":true,...} line. Key order is fixed, so equal
/// record sets serialize byte-identically.
void emit_report(std::ostream& out, std::span<const CaseRecord> records,
                 std::uint64_t seed);

std::string report_to_string(std::span<const CaseRecord> records,
                             std::uint64_t seed);

}  // namespace tb::conformance
