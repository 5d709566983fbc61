// Copyright (c) 2026 tensorbridge authors
// SPDX-License-Identifier: Apache-2.0
#include "tensorbridge/backend_id.hpp"

namespace tb {

std::string_view backend_name(BackendId id) {
    switch (id) {
        case BackendId::Plain: return "plain";
        case BackendId::Imperative: return "imperative";
        case BackendId::Tape: return "tape";
        case BackendId::Functional: return "functional";
    }
    return "unknown";
}

std::optional<BackendId> backend_from_name(std::string_view name) {
    for (BackendId id : kAllBackends) {
        if (backend_name(id) == name) return id;
    }
    return std::nullopt;
}

}  // namespace tb
