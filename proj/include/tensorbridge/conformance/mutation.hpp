// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tensorbridge/conformance/runner.hpp"

namespace tb::conformance {

// Deliberately broken executors used to prove the harness can see bugs.
// Each wraps a healthy backend and corrupts exactly one thing.

/// square(x) computes x + 1 instead of x * x.
BackendExecutor wrong_square_kernel_executor(BackendId id);

/// Gradients come back negated (VJP sign flip).
GradientExecutor wrong_vjp_sign_executor(BackendId id);

/// Broadcast-aware VJPs skip the cotangent reduction, so gradients keep
/// the broadcast shape instead of the input shape.
GradientExecutor missing_broadcast_reduction_executor(BackendId id);

}  // namespace tb::conformance
