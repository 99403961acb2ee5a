// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sandpile/clique_solver.hpp"
#include "sandpile/generators.hpp"
#include "sandpile/greedy.hpp"
#include "sandpile/oracle.hpp"
#include "sandpile/path_solver.hpp"
#include "sandpile/reduction.hpp"
#include "sandpile/tree_solver.hpp"
#include "support.hpp"

using namespace sandpile;
using sandpile::testing::uniform;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string describe(const char* what, std::uint64_t seed, std::size_t n) {
    std::ostringstream out;
    out << what << " mismatch (seed " << seed << ", n " << n << ")";
    return out.str();
}

// Shared between the tree-equivalence and recurrence-gate criteria; built on first use.
struct TreeCase {
    std::size_t n;
    Chips total;
    Status oracle;
};
struct TreeSuite {
    std::string error;
    std::vector<TreeCase> cases;
};

const TreeSuite& tree_suite() {
    static const TreeSuite suite = [] {
        TreeSuite s;
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            Rng rng(seed);
            const std::size_t n = uniform(rng, 2, 200);
            Graph tree = random_tree(n, rng);
            const bool low = seed % 2 == 0;
            const Chips total = low ? static_cast<Chips>(uniform(rng, 0, n - 2))
                                    : static_cast<Chips>(uniform(rng, n - 1, 2 * n));
            Configuration sigma = random_config(n, total, rng);
            const StabilizationResult fast = solve_tree(tree, sigma);
            const OracleResult slow = stabilize_naive({tree, sigma, {}});
            if (!(fast == slow)) {
                s.error = describe("tree", seed, n);
                break;
            }
            s.cases.push_back({n, total, slow.status});
        }
        return s;
    }();
    return suite;
}

std::string tree_equivalence() { return tree_suite().error; }

std::string structured_equivalence() {
    std::ostringstream timing;
    auto t0 = Clock::now();
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        Rng rng(10000 + seed);
        const std::size_t n = uniform(rng, 1, 200);
        Configuration sigma = random_config(n, static_cast<Chips>(uniform(rng, 0, n)), rng);
        if (n == 1) sigma[0] = 0;
        Graph path = make_path(n);
        const StabilizationResult fast = solve_path(n, sigma);
        const OracleResult slow = stabilize_naive({path, sigma, {}});
        if (!(fast == slow)) return describe("path", seed, n);
        if (!(solve_tree(path, sigma) == slow)) return describe("path vs tree", seed, n);
    }
    const double path_s = seconds_since(t0);
    t0 = Clock::now();
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        Rng rng(20000 + seed);
        const std::size_t n = uniform(rng, 2, 60);
        Configuration sigma = random_config(n, static_cast<Chips>(uniform(rng, 0, 5000)), rng);
        const StabilizationResult fast = solve_clique(n, sigma);
        const OracleResult slow = stabilize_naive({make_clique(n), sigma, {}});
        if (!(fast == slow)) return describe("clique", seed, n);
    }
    const double clique_s = seconds_since(t0);
    t0 = Clock::now();
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        Rng rng(30000 + seed);
        const std::size_t n = uniform(rng, 3, 100);
        Graph g = random_pseudotree(n, rng);
        Configuration sigma = random_config(n, static_cast<Chips>(uniform(rng, 0, 2 * n)), rng);
        SandpileInstance inst{g, sigma, {}};
        const StabilizationResult fast = solve_pseudotree(inst);
        const OracleResult slow = stabilize_naive(inst);
        if (!(fast == slow)) return describe("pseudotree", seed, n);
    }
    const double pseudo_s = seconds_since(t0);
    if (path_s > 60 || clique_s > 60 || pseudo_s > 60) {
        timing << "suite too slow: path " << path_s << " s, clique " << clique_s
               << " s, pseudotree " << pseudo_s << " s";
        return timing.str();
    }
    return {};
}

std::string greedy_equivalence() {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        Rng rng(40000 + seed);
        const std::size_t n = uniform(rng, 2, 40);
        SandpileInstance inst = sandpile::testing::random_sink_instance(rng, n, 10000);
        const GreedyResult fast = stabilize_greedy(inst);
        const OracleResult slow = stabilize_naive(inst);
        if (!slow.terminal() || fast.config != slow.config || fast.firings != slow.firings) {
            return describe("greedy", seed, n);
        }
        Chips left = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (!inst.is_sink(v)) left += fast.config[v];
        }
        if (left + fast.absorbed != total_chips(inst.config)) return describe("conservation", seed, n);
    }
    return {};
}

std::string recurrence_gate() {
    const TreeSuite& suite = tree_suite();
    if (!suite.error.empty()) return "tree suite failed: " + suite.error;
    std::size_t recurrent = 0;
    for (const TreeCase& c : suite.cases) {
        const bool by_sum = c.total > static_cast<Chips>(c.n) - 2;
        const bool by_oracle = c.oracle == Status::Recurrent;
        if (by_sum != by_oracle) {
            return "verdict differs for n " + std::to_string(c.n) + ", total " + std::to_string(c.total);
        }
        recurrent += by_oracle;
    }
    if (recurrent == 0 || recurrent == suite.cases.size()) return "suite lacks one of the verdicts";
    return {};
}

std::multiset<Chips> key_pairs_bruteforce(const Graph& tree, Vertex root, const Configuration& sigma,
                                          Vertex u, Chips limit) {
    const std::vector<Vertex> sub = sandpile::testing::subtree(tree, root, u);
    auto [local, counts] = local_stabilize({tree, sigma, {}}, sub);
    std::multiset<Chips> out;
    Chips prev = 0;
    for (Chips k = 1; k <= limit; ++k) {
        const Chips d = delta_bruteforce(tree, root, local, u, k);
        if (d == prev) out.insert(k);
        prev = d;
    }
    return out;
}

std::string store_audit() {
    constexpr Chips kLimit = 30;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Rng rng(50000 + seed);
        const std::size_t n = uniform(rng, 2, 14);
        Graph tree = random_tree(n, rng);
        Configuration sigma = random_config(n, static_cast<Chips>(uniform(rng, 0, n - 2)), rng);
        const auto root = static_cast<Vertex>(uniform(rng, 0, n - 1));
        TreeSolver solver(tree, sigma, root);
        KeyPairStore& store = solver.store();
        std::string error;
        std::map<std::pair<Vertex, Vertex>, std::pair<std::string, std::string>> before_merge;
        std::map<Vertex, std::string> before_compute;

        const TreeSolveState& st = solver.state();
        auto name = [&](Vertex slot) { return std::to_string(st.vertex[slot] + 1); };

        TreeSolveObserver obs;
        obs.after_update = [&](Vertex u) {
            if (u == 0 || !error.empty()) return;
            std::multiset<Chips> stored;
            for (auto [m, t] : store.arena().contents(store.root(u))) {
                if (m <= kLimit) stored.insert(m);
            }
            if (stored != key_pairs_bruteforce(tree, root, sigma, st.vertex[u], kLimit)) {
                error = "key pairs differ at vertex " + name(u);
            }
            if (!store.arena().verify(store.root(u))) error = "store structure broken";
        };
        obs.before_merge = [&](Vertex u, Vertex v) {
            if (st.child_count(v) == 0 && store.size(v) != 0) error = "leaf store not empty";
            before_merge[{u, v}] = {store.dump(u), store.dump(v)};
        };
        obs.before_compute = [&](Vertex u) { before_compute[u] = store.dump(u); };
        solver.solve_partial(obs);

        TreeSolveObserver back;
        back.after_revert = [&](Vertex u) {
            auto it = before_compute.find(u);
            if (it != before_compute.end() && it->second != store.dump(u)) {
                error = "update/revert round trip differs at " + name(u);
            }
        };
        back.after_split = [&](Vertex u, Vertex v) {
            const auto& saved = before_merge.at({u, v});
            if (saved.first != store.dump(u) || saved.second != store.dump(v)) {
                error = "merge/split round trip differs at " + name(u) + "," + name(v);
            }
        };
        solver.solve_complete(back);
        if (!error.empty()) return error + " (seed " + std::to_string(seed) + ")";
        if (!(solver.result() == stabilize_naive({tree, sigma, {}}))) {
            return describe("audited tree", seed, n);
        }
    }
    return {};
}

std::string least_action_check(const Graph& g, const Configuration& sigma, FiringVector c,
                               std::span<const Vertex> sinks) {
    if (!check_feasible(g, sigma, c, sinks)) return "returned firing vector infeasible";
    if (sinks.empty()) {
        for (Chips t = 1; t <= 3; ++t) {
            FiringVector shifted = c;
            for (auto& x : shifted) x += t;
            if (!check_feasible(g, sigma, shifted, sinks)) return "shifted vector infeasible";
        }
    }
    for (Vertex u = 0; u < c.size(); ++u) {
        if (c[u] == 0) continue;
        --c[u];
        if (check_feasible(g, sigma, c, sinks)) return "decremented vector still feasible";
        ++c[u];
    }
    return {};
}

std::string least_action() {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(60000 + seed);
        const std::size_t n = uniform(rng, 2, 200);
        Graph tree = random_tree(n, rng);
        Configuration sigma = random_config(n, static_cast<Chips>(uniform(rng, 0, n - 2)), rng);
        StabilizationResult r = solve_tree(tree, sigma);
        if (!r.terminal()) return "terminal tree reported recurrent";
        if (auto e = least_action_check(tree, sigma, r.firings, {}); !e.empty()) {
            return e + " (tree seed " + std::to_string(seed) + ")";
        }
    }
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(61000 + seed);
        const std::size_t n = uniform(rng, 2, 30);
        SandpileInstance inst = sandpile::testing::random_sink_instance(rng, n, 500);
        GreedyResult r = stabilize_greedy(inst);
        if (auto e = least_action_check(inst.graph, inst.config, r.firings, inst.sinks); !e.empty()) {
            return e + " (sink seed " + std::to_string(seed) + ")";
        }
    }
    return {};
}

std::string log_dependence() {
    constexpr std::size_t kN = 64;
    Graph path = make_path(kN);
    std::map<int, std::uint64_t> iterations;
    for (int e = 10; e <= 60; ++e) {
        Configuration sigma(kN, 0);
        sigma[kN - 1] = Chips{1} << e;
        GreedyOptions opt;
        opt.track_firings = false;  // firing numbers reach about 63 * N
        const GreedyResult r = stabilize_greedy({path, sigma, {0}}, opt);
        iterations[e] = r.iterations;
        // Delta = 2 on a path; at least log2 N iterations.
        if (r.iterations < static_cast<std::uint64_t>(e)) {
            return "fewer than log N iterations at N = 2^" + std::to_string(e);
        }
    }
    std::printf("  iterations at N = 2^10, 2^20, 2^30, 2^60: %llu, %llu, %llu, %llu\n",
                static_cast<unsigned long long>(iterations[10]),
                static_cast<unsigned long long>(iterations[20]),
                static_cast<unsigned long long>(iterations[30]),
                static_cast<unsigned long long>(iterations[60]));
    for (int k = 10; k <= 30; ++k) {
        if (iterations[2 * k] > 2 * iterations[k] + 64) {
            return "iterations(2^" + std::to_string(2 * k) + ") = " +
                   std::to_string(iterations[2 * k]) + " > 2 * " + std::to_string(iterations[k]) +
                   " + 64";
        }
    }
    return {};
}

double median_seconds(const std::function<void()>& run, int repeats) {
    std::vector<double> t;
    for (int i = 0; i < repeats; ++i) {
        const auto start = Clock::now();
        run();
        t.push_back(seconds_since(start));
    }
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
}

std::string scaling() {
    auto tree_time = [](std::size_t n) {
        Rng rng(70000 + n);
        Graph tree = random_tree(n, rng);
        Configuration sigma = random_config(n, static_cast<Chips>(n - 2), rng);
        return median_seconds([&] {
            TreeSolver solver(tree, sigma);
            solver.solve_partial();
            solver.solve_complete();
            if (solver.store().arena().node_count() > 2 * n) throw std::runtime_error("node budget");
        }, 5);
    };
    auto path_time = [](std::size_t n) {
        Rng rng(71000 + n);
        Configuration sigma = random_config(n, static_cast<Chips>(n - 2), rng);
        return median_seconds([&] {
            if (!solve_path(n, sigma).terminal()) throw std::runtime_error("path not terminal");
        }, 5);
    };
    const double t5 = tree_time(100000), t6 = tree_time(1000000);
    const double p6 = path_time(1000000), p7 = path_time(10000000);
    std::printf("  tree 1e5 %.3f s, 1e6 %.3f s (ratio %.2f); path 1e6 %.3f s, 1e7 %.3f s (ratio %.2f)\n",
                t5, t6, t6 / t5, p6, p7, p7 / p6);
    if (t6 / t5 > 15) return "tree scaling ratio above 15";
    if (p7 / p6 > 12) return "path scaling ratio above 12";
    if (t6 >= 10) return "tree of 1e6 vertices took 10 s or more";
    return {};
}

std::string abelian_fuzz() {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(80000 + seed);
        const std::size_t n = uniform(rng, 2, 12);
        SandpileInstance inst;
        if (seed % 2 == 0) {
            inst = sandpile::testing::random_sink_instance(rng, n, 20);
        } else {
            const std::size_t max_m = n * (n - 1) / 2;
            inst.graph = random_connected(n, uniform(rng, n - 1, max_m), rng);
            inst.config = random_config(n, static_cast<Chips>(uniform(rng, 0, 20)), rng);
        }
        const OracleResult reference = stabilize_naive(inst);
        for (std::uint64_t order = 0; order < 50; ++order) {
            OracleOptions opt;
            opt.order = order == 0 ? FiringOrder::HighestChips : FiringOrder::Random;
            opt.seed = order;
            const OracleResult r = stabilize_naive(inst, opt);
            if (!(r == reference)) return describe("firing order", seed, n);
        }
    }
    return {};
}

struct Criterion {
    int id;
    const char* name;
    std::function<std::string()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "tree solver matches oracle on 1000 random trees", tree_equivalence},
        {2, "path, clique and pseudotree solvers match oracle", structured_equivalence},
        {3, "greedy simulation matches oracle on 500 sink instances", greedy_equivalence},
        {4, "tree recurrence verdicts follow the chip-sum rule", recurrence_gate},
        {5, "key-pair store audit and round trips", store_audit},
        {6, "least action on returned firing vectors", least_action},
        {7, "greedy iterations grow with log N", log_dependence},
        {8, "tree and path solver scaling", scaling},
        {9, "firing order does not change the outcome", abelian_fuzz},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        const auto start = Clock::now();
        std::string error;
        try {
            error = c.run();
        } catch (const std::exception& e) {
            error = std::string("exception: ") + e.what();
        }
        std::printf("criterion %d %s: %s (%.1f s)%s%s\n", c.id, error.empty() ? "PASS" : "FAIL", c.name,
                    seconds_since(start), error.empty() ? "" : " - ", error.c_str());
        std::fflush(stdout);
        failures += !error.empty();
    }
    return failures == 0 ? 0 : 1;
}
