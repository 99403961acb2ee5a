// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sandpile/graph.hpp"
#include "sandpile/result.hpp"

namespace sandpile {

/// Solves one connected component given in merged-sink form.
using ComponentSolver = std::function<StabilizationResult(const SandpileInstance&)>;

/// Sink-free trees go to solve_tree, components with sink edges to the greedy
/// simulator, anything else to the oracle.
StabilizationResult default_component_solver(const SandpileInstance& component);

/// True iff sum over non-sink neighbors of f, minus f(u) * degree(u), plus
/// sigma(u) stays below degree(u) for every non-sink u.
bool check_feasible(const Graph& graph, std::span<const Chips> sigma, std::span<const Chips> f,
                    std::span<const Vertex> sinks = {});

struct Component {
    SandpileInstance instance;   // merged-sink form, no explicit sinks
    std::vector<Vertex> original;
};

/// Connected components of G minus T and the explicit sinks. Edges into the
/// removed set become sink multiplicity. Chips are copied as they are; the
/// caller pushes any firings of T beforehand.
std::vector<Component> remove_vertices(const SandpileInstance& instance,
                                       std::span<const Vertex> removed);

struct BoundedProblem {
    SandpileInstance instance;
    Chips l1 = 0;  // chip budget
    Chips l2 = 0;  // per-vertex firing cap
};

struct BoundedResult {
    bool overflow = false;
    Configuration config;
    FiringVector firings;
};

/// Binary-searches the firing numbers of the vertices of P, outermost first,
/// and solves what remains with solver.
BoundedResult solve_bounded(const BoundedProblem& problem, std::span<const Vertex> removal,
                            const ComponentSolver& solver = default_component_solver);
inline BoundedResult solve_bounded(const BoundedProblem& problem, Vertex p,
                                   const ComponentSolver& solver = default_component_solver) {
    return solve_bounded(problem, std::span<const Vertex>(&p, 1), solver);
}

/// Top-level driver with L2 = n^4. Overflow means Recurrent.
StabilizationResult solve_by_removal(const SandpileInstance& instance,
                                     std::span<const Vertex> removal,
                                     const ComponentSolver& solver = default_component_solver);

/// Cycle vertices of a pseudotree in ascending order (empty for a tree).
std::vector<Vertex> find_cycle(const Graph& graph);

StabilizationResult solve_pseudotree(const SandpileInstance& instance);

}  // namespace sandpile
