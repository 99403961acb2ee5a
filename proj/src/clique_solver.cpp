// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#include "sandpile/clique_solver.hpp"

#include <algorithm>
#include <string>

#include "sandpile/error.hpp"

namespace sandpile {

StabilizationResult solve_clique(std::size_t n, const Configuration& sigma) {
    if (n < 2) fail(ErrorCode::MalformedInstance, "clique needs at least two vertices");
    if (sigma.size() != n) fail(ErrorCode::MalformedInstance, "configuration size");
    const Chips deg = static_cast<Chips>(n) - 1;
    const Chips size = static_cast<Chips>(n);
    Configuration s = sigma;  // chips on v are s[v] + count
    FiringVector fired(n, 0);
    Chips count = 0;

    for (Vertex u = 0; u < n; ++u) {
        if (s[u] < 0) fail(ErrorCode::NegativeChips, "vertex " + std::to_string(u + 1));
        while (s[u] >= deg) {
            s[u] -= size;
            ++fired[u];
            if (++count >= deg) return StabilizationResult::recurrent();
        }
    }

    // Buckets by shifted chips; vertices driven negative can never fire again.
    std::vector<std::uint32_t> head(n, 0), next(n + 1, 0);
    auto nil = static_cast<std::uint32_t>(n);
    head.assign(n, nil);
    Chips top = 0;
    for (std::size_t i = n; i-- > 0;) {
        if (s[i] < 0) continue;
        next[i] = head[static_cast<std::size_t>(s[i])];
        head[static_cast<std::size_t>(s[i])] = static_cast<std::uint32_t>(i);
        top = std::max(top, s[i]);
    }
    for (Chips j = top; j > 0; --j) {
        bool blocked = false;
        for (std::uint32_t x = head[static_cast<std::size_t>(j)]; x != nil; x = next[x]) {
            if (s[x] + count < deg) {
                blocked = true;
                break;
            }
            s[x] -= size;
            ++fired[x];
            if (++count >= deg) return StabilizationResult::recurrent();
        }
        if (blocked) break;
    }

    StabilizationResult r;
    r.status = Status::Terminal;
    r.config = std::move(s);
    for (Chips& c : r.config) c += count;
    r.firings = std::move(fired);
    r.total_firings = static_cast<std::uint64_t>(count);
    return r;
}

}  // namespace sandpile
