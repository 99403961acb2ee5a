// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "sandpile/error.hpp"
#include "sandpile/generators.hpp"
#include "sandpile/oracle.hpp"
#include "sandpile/reduction.hpp"
#include "sandpile/tree_solver.hpp"
#include "support.hpp"

namespace sandpile {
namespace {

using testing::uniform;

// Random tree with a terminal configuration, taken from the oracle.
struct TerminalTree {
    Graph tree;
    Configuration config;
};

TerminalTree terminal_tree(Rng& rng, std::size_t max_n) {
    for (;;) {
        const std::size_t n = uniform(rng, 2, max_n);
        Graph tree = random_tree(n, rng);
        Configuration sigma = random_config(n, static_cast<Chips>(uniform(rng, 0, n - 2)), rng);
        OracleResult r = stabilize_naive({tree, sigma, {}});
        if (r.terminal()) return {std::move(tree), std::move(r.config)};
    }
}

TEST(SolveTree, Examples) {
    StabilizationResult a = solve_tree(make_path(4), {0, 2, 0, 0});
    ASSERT_TRUE(a.terminal());
    EXPECT_EQ(a.config, (Configuration{0, 1, 1, 0}));
    EXPECT_EQ(a.firings, (FiringVector{1, 1, 0, 0}));

    EXPECT_EQ(solve_tree(make_star(3), {0, 1, 1, 1}).status, Status::Recurrent);

    StabilizationResult zero = solve_tree(make_star(5), Configuration(6, 0));
    ASSERT_TRUE(zero.terminal());
    EXPECT_EQ(zero.config, Configuration(6, 0));
    EXPECT_EQ(zero.firings, FiringVector(6, 0));
}

TEST(SolveTree, PathTwoChipsInMiddleIsRecurrent) {
    EXPECT_EQ(solve_tree(make_path(3), {0, 2, 0}).status, Status::Recurrent);
}

TEST(SolveTree, Rejections) {
    EXPECT_THROW(solve_tree(make_cycle(4), {0, 0, 0, 0}), SandpileError);
    EXPECT_THROW(solve_tree(make_path(3), {0, -1, 0}), SandpileError);
    EXPECT_THROW(solve_tree(make_path(3), {0, 0}), SandpileError);
}

TEST(SolveTree, SingleVertex) {
    StabilizationResult r = solve_tree(build_graph(1, {}), {0});
    EXPECT_TRUE(r.terminal());
    EXPECT_EQ(r.firings, (FiringVector{0}));
}

TEST(SolvePartial, LeafPassesChipsUp) {
    TreeSolver solver(make_path(3), {0, 0, 3});
    const TreeSolveState& s = solver.state();
    bool seen = false;
    TreeSolveObserver obs;
    obs.before_merge = [&](Vertex p, Vertex u) {
        if (s.vertex[u] != 2) return;
        seen = true;
        EXPECT_EQ(s.c_down[u], 3);
        EXPECT_EQ(s.sigma_prime[p], 3);
    };
    try {
        solver.solve_partial(obs);
    } catch (const SandpileError&) {
        // Three chips on a 3-path is recurrent; only the leaf step matters here.
    }
    EXPECT_TRUE(seen);
}

TEST(SolvePartial, StopsAtRootOfRecurrentPath) {
    TreeSolver solver(make_path(3), {0, 2, 0});
    const TreeSolveState& s = solver.state();
    bool reached = false;
    TreeSolveObserver obs;
    obs.before_compute = [&](Vertex u) {
        if (u != 0) return;
        reached = true;
        EXPECT_EQ(s.c_down[s.slot[2]], 0);
        EXPECT_EQ(s.c_down[s.slot[1]], 1);
        EXPECT_EQ(s.sigma_prime[s.slot[1]], 1);
        EXPECT_EQ(s.sigma_prime[0], 1);
    };
    try {
        solver.solve_partial(obs);
        FAIL() << "root stabilized";
    } catch (const SandpileError& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvariantViolation);
    }
    EXPECT_TRUE(reached);
}

TEST(SolvePartialComplete, PathWithChipAtFarEnd) {
    TreeSolver solver(make_path(3), {0, 0, 1});
    solver.solve_partial();
    const TreeSolveState& s = solver.state();
    EXPECT_EQ(s.c_down[s.slot[0]], 0);
    EXPECT_EQ(s.c_down[s.slot[1]], 0);
    EXPECT_EQ(s.c_down[s.slot[2]], 1);
    solver.solve_complete();
    EXPECT_EQ(s.c[s.slot[0]], 0);
    EXPECT_EQ(s.c[s.slot[1]], 0);
    EXPECT_EQ(s.c[s.slot[2]], 1);
    StabilizationResult r = solver.result();
    EXPECT_EQ(r.config, (Configuration{0, 1, 0}));
}

TEST(SolveComplete, RootOnly) {
    TreeSolver solver(build_graph(1, {}), {0});
    solver.solve_partial();
    solver.solve_complete();
    EXPECT_EQ(solver.state().c[0], solver.state().c_down[0]);
}

TEST(SolveTree, MatchesOracle) {
    Rng rng(41);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = uniform(rng, 1, 60);
        Graph tree = random_tree(n, rng);
        Configuration sigma = random_config(n, static_cast<Chips>(uniform(rng, 0, n)), rng);
        if (n == 1) sigma[0] = 0;
        EXPECT_EQ(solve_tree(tree, sigma), stabilize_naive({tree, sigma, {}})) << "trial " << t;
    }
}

TEST(SolveTree, RootInvariance) {
    Rng rng(42);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = uniform(rng, 2, 40);
        Graph tree = random_tree(n, rng);
        Configuration sigma = random_config(n, static_cast<Chips>(uniform(rng, 0, n - 2)), rng);
        const StabilizationResult first = solve_tree(tree, sigma, 0);
        for (Vertex root = 1; root < n; ++root) {
            EXPECT_EQ(solve_tree(tree, sigma, root), first) << "trial " << t << " root " << root;
        }
    }
}

TEST(SolveTree, RecoveryIdentity) {
    Rng rng(43);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = uniform(rng, 2, 80);
        Graph tree = random_tree(n, rng);
        Configuration sigma = random_config(n, static_cast<Chips>(uniform(rng, 0, n - 2)), rng);
        StabilizationResult r = solve_tree(tree, sigma);
        ASSERT_TRUE(r.terminal());
        SandpileInstance inst{tree, sigma, {}};
        EXPECT_EQ(apply_firings(inst, r.firings), r.config);
        EXPECT_TRUE(is_terminal(inst, r.config));
    }
}

TEST(SolveTree, NodeBudget) {
    Rng rng(44);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = uniform(rng, 2, 500);
        Graph tree = random_tree(n, rng);
        Configuration sigma = random_config(n, static_cast<Chips>(uniform(rng, 0, n - 2)), rng);
        TreeSolver solver(tree, sigma);
        solver.solve_partial();
        solver.solve_complete();
        Chips bound = 0;
        for (Vertex v = 0; v < n; ++v) bound += tree.degree(v) - 1;
        EXPECT_LE(static_cast<Chips>(solver.store().arena().node_count()), bound);
        EXPECT_LE(solver.store().arena().node_count(), 2 * n);
    }
}

TEST(SolveTree, DecrementingAnyFiringBreaksFeasibility) {
    Rng rng(45);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = uniform(rng, 2, 50);
        Graph tree = random_tree(n, rng);
        Configuration sigma = random_config(n, static_cast<Chips>(uniform(rng, 0, n - 2)), rng);
        StabilizationResult r = solve_tree(tree, sigma);
        ASSERT_TRUE(check_feasible(tree, sigma, r.firings));
        for (Vertex u = 0; u < n; ++u) {
            if (r.firings[u] == 0) continue;
            FiringVector lower = r.firings;
            --lower[u];
            EXPECT_FALSE(check_feasible(tree, sigma, lower));
        }
    }
}

TEST(Delta, MonotoneWithUnitSteps) {
    Rng rng(46);
    for (int t = 0; t < 60; ++t) {
        TerminalTree tt = terminal_tree(rng, 12);
        const std::size_t n = tt.tree.vertex_count();
        const auto root = static_cast<Vertex>(uniform(rng, 0, n - 1));
        const auto u = static_cast<Vertex>((root + uniform(rng, 1, n - 1)) % n);
        Chips prev = delta_bruteforce(tt.tree, root, tt.config, u, 0);
        for (Chips k = 1; k <= 20; ++k) {
            const Chips d = delta_bruteforce(tt.tree, root, tt.config, u, k);
            EXPECT_GE(d, prev);
            EXPECT_LE(d, prev + 1);
            prev = d;
        }
    }
}

TEST(Psi, NonIncreasing) {
    Rng rng(47);
    for (int t = 0; t < 60; ++t) {
        TerminalTree tt = terminal_tree(rng, 12);
        const std::size_t n = tt.tree.vertex_count();
        const auto root = static_cast<Vertex>(uniform(rng, 0, n - 1));
        std::vector<Vertex> parent(n, root);
        std::vector<Vertex> order{root};
        for (std::size_t i = 0; i < order.size(); ++i) {
            for (Vertex w : tt.tree.neighbors(order[i])) {
                if (w != root && w != parent[order[i]]) {
                    parent[w] = order[i];
                    order.push_back(w);
                }
            }
        }
        const auto u = static_cast<Vertex>(uniform(rng, 0, n - 1));
        auto psi = [&](Chips k) {
            Chips value = tt.config[u] - k * tt.tree.degree(u);
            for (Vertex v : tt.tree.neighbors(u)) {
                if (u == root || v != parent[u]) value += delta_bruteforce(tt.tree, root, tt.config, v, k);
            }
            return value;
        };
        Chips prev = psi(0);
        for (Chips k = 1; k <= 15; ++k) {
            const Chips cur = psi(k);
            EXPECT_LE(cur, prev);
            prev = cur;
        }
    }
}

}  // namespace
}  // namespace sandpile
