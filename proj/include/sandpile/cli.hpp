// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sandpile/graph.hpp"
#include "sandpile/greedy.hpp"
#include "sandpile/result.hpp"

namespace sandpile {

struct SolveReport {
    Status status = Status::Terminal;
    Configuration config;
    FiringVector firings;
    std::string solver;
    std::optional<std::uint64_t> wall_ns;
    std::optional<std::uint64_t> iterations;  // greedy only
    std::optional<Chips> absorbed;            // sink runs only

    friend bool operator==(const SolveReport&, const SolveReport&) = default;
};

std::string format_report(const SolveReport& report);
SolveReport parse_report(std::string_view text);

/// Name of the solver "auto" picks for this instance.
std::string detect_solver(const SandpileInstance& instance);

/// Runs one named solver (auto, tree, path, clique, greedy, pseudotree,
/// reduction, oracle). Raises SolverMismatch if it does not apply.
SolveReport run_solver(const SandpileInstance& instance, std::string_view solver,
                       const GreedyTrace& trace = {});

struct NamedSolver {
    std::string name;
    std::function<StabilizationResult(const SandpileInstance&)> solve;
};

/// Every fast solver that accepts the instance.
std::vector<NamedSolver> applicable_solvers(const SandpileInstance& instance);

struct CheckReport {
    bool pass = false;
    std::size_t solvers = 0;
    std::string message;
};

/// Compares every applicable solver (plus extra) against the oracle, which
/// is itself run in `trials` random firing orders.
CheckReport cmd_check(const SandpileInstance& instance, std::uint64_t seed, unsigned trials,
                      std::span<const NamedSolver> extra = {});

struct BenchOptions {
    std::string family;             // path, random-tree, clique, regular, hypercube
    std::vector<std::size_t> sizes; // n, or dimension for hypercube
    std::uint64_t seed = 1;
    unsigned trials = 1;
    std::string solver = "auto";
    unsigned degree = 4;            // regular family
    std::optional<Chips> chips;     // total chips per instance
    unsigned jobs = 1;
};

/// Parses "a..b" or "a,b,c".
std::vector<std::size_t> parse_sizes(std::string_view text);

/// Writes the CSV header and one row per (size, trial).
void cmd_bench(const BenchOptions& options, std::ostream& csv);

}  // namespace sandpile
