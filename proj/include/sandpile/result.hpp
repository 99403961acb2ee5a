// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>

#include "sandpile/graph.hpp"

namespace sandpile {

enum class Status { Terminal, Recurrent };

std::string_view status_name(Status s) noexcept;

/// Common outcome of every solver. config and firings are empty when
/// Recurrent.
struct StabilizationResult {
    Status status = Status::Terminal;
    Configuration config;
    FiringVector firings;
    std::uint64_t total_firings = 0;

    bool terminal() const noexcept { return status == Status::Terminal; }
    static StabilizationResult recurrent() { return {Status::Recurrent, {}, {}, 0}; }

    friend bool operator==(const StabilizationResult& a, const StabilizationResult& b) {
        if (a.status != b.status) return false;
        return a.status == Status::Recurrent || (a.config == b.config && a.firings == b.firings);
    }
};

/// Builds a terminal result from firings via apply_firings.
StabilizationResult make_terminal(const SandpileInstance& instance, FiringVector firings);

}  // namespace sandpile
