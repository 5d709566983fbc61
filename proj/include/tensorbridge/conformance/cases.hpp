// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tensorbridge/dtype.hpp"
#include "tensorbridge/ops.hpp"
#include "tensorbridge/tensor_value.hpp"

namespace tb::conformance {

/// splitmix64. Fixed here, bit for bit, so any implementation of the case
/// generator reproduces identical inputs from the same seed.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();

    /// Uniform in [0, 1), 53-bit resolution.
    double next_unit();

    /// Uniform in [-2, 2].
    double next_value();

    /// Uniform over [-2, -0.1] and [0.1, 2]: the [-2, 2] draw with the
    /// non-smooth neighborhood of zero rescaled away.
    double next_smooth_value();

    /// Uniform integer in [lo, hi].
    std::uint64_t next_range(std::uint64_t lo, std::uint64_t hi);

  private:
    std::uint64_t state_;
};

struct ShapeBudget {
    std::size_t max_rank = 3;
    std::size_t max_extent = 8;
};

/// One deterministic differential-test case. Regenerating from the same
/// seed yields bitwise-identical inputs.
struct ConformanceCase {
    std::string case_id;  // 16 hex digits
    OpDescriptor op;
    std::vector<Shape> input_shapes;
    DType dtype;
    std::uint64_t input_seed;  // global seed XOR case index
    bool smooth_inputs;        // differentiable op: keep |x| >= 0.1
};

/// Deterministic case list covering every tier-1 op kind at least once per
/// rank at which it is defined, up to the budget. Input values are drawn
/// uniform in [-2, 2] via splitmix64 seeded with (seed XOR case index);
/// cases of differentiable ops use the smooth draw instead.
std::vector<ConformanceCase> generate_cases(std::uint64_t seed,
                                            std::span<const OpKind> ops,
                                            const ShapeBudget& budget,
                                            DType dtype);

/// All tier-1 kinds, for the default generate_cases call.
std::vector<OpKind> all_op_kinds();

/// Reproduces the case's input tensors from its seed.
std::vector<TensorValue> materialize_inputs(const ConformanceCase& c);

/// FNV-1a 64 of `text` as 16 lowercase hex chars.
std::string fnv1a_hex(std::string_view text);

/// FNV-1a 64 over the canonical case description, as 16 lowercase hex chars.
std::string case_hash(const OpDescriptor& op, std::span<const Shape> shapes,
                      DType dtype, std::uint64_t input_seed);

}  // namespace tb::conformance
