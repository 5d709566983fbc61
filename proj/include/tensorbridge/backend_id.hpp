// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace tb {

/// The four registered execution engines. They share one kernel and VJP
/// table and differ only in how differentiation is orchestrated.
enum class BackendId {
    Plain,       // no autodiff
    Imperative,  // requires_grad / backward / .grad
    Tape,        // gradient-tape scope
    Functional,  // function transformation
};

inline constexpr std::array<BackendId, 4> kAllBackends = {
    BackendId::Plain, BackendId::Imperative, BackendId::Tape,
    BackendId::Functional};

std::string_view backend_name(BackendId id);
std::optional<BackendId> backend_from_name(std::string_view name);

constexpr bool backend_supports_grad(BackendId id) {
    return id != BackendId::Plain;
}

}  // namespace tb
