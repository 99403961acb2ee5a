// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#include "sandpile/result.hpp"

namespace sandpile {

std::string_view status_name(Status s) noexcept {
    return s == Status::Terminal ? "terminal" : "recurrent";
}

StabilizationResult make_terminal(const SandpileInstance& instance, FiringVector firings) {
    StabilizationResult r;
    r.status = Status::Terminal;
    r.config = apply_firings(instance, firings);
    for (Chips c : firings) r.total_firings += static_cast<std::uint64_t>(c);
    r.firings = std::move(firings);
    return r;
}

}  // namespace sandpile
