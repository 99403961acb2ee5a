// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#include "sandpile/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "sandpile/clique_solver.hpp"
#include "sandpile/error.hpp"
#include "sandpile/generators.hpp"
#include "sandpile/oracle.hpp"
#include "sandpile/path_solver.hpp"
#include "sandpile/reduction.hpp"
#include "sandpile/tree_solver.hpp"

namespace sandpile {
namespace {

using Clock = std::chrono::steady_clock;

template <class T>
void write_list(std::ostream& out, std::string_view key, const std::vector<T>& values) {
    out << key;
    for (const T& v : values) out << ' ' << v;
    out << '\n';
}

std::uint64_t elapsed_ns(Clock::time_point start) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

Vertex removal_vertex(const SandpileInstance& inst) {
    const Graph& g = inst.graph;
    Vertex best = 0;
    bool found = false;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (inst.is_sink(v)) continue;
        if (!found || g.degree(v) > g.degree(best)) best = v;
        found = true;
    }
    if (!found) fail(ErrorCode::SolverMismatch, "no vertex to remove");
    return best;
}

[[noreturn]] void mismatch(std::string_view solver, std::string_view why) {
    fail(ErrorCode::SolverMismatch, std::string(solver) + " solver: " + std::string(why));
}

StabilizationResult solve_named(const SandpileInstance& inst, std::string_view name,
                                const GreedyTrace& trace, std::optional<GreedyResult>* greedy) {
    const Graph& g = inst.graph;
    const bool sink = inst.has_sink();
    if (name == "oracle") return stabilize_naive(inst);
    if (name == "greedy") {
        if (!sink) mismatch(name, "needs a sink");
        GreedyResult r = stabilize_greedy(inst, trace);
        StabilizationResult out;
        out.config = r.config;
        out.firings = r.firings;
        for (Chips c : r.firings) out.total_firings += static_cast<std::uint64_t>(c);
        if (greedy) *greedy = std::move(r);
        return out;
    }
    if (name == "reduction") {
        if (g.vertex_count() < 2) mismatch(name, "needs at least two vertices");
        const Vertex p = removal_vertex(inst);
        return solve_by_removal(inst, std::span<const Vertex>(&p, 1));
    }
    if (sink) mismatch(name, "does not accept sinks");
    if (name == "tree") {
        if (!is_tree(g)) mismatch(name, "graph is not a tree");
        return solve_tree(g, inst.config);
    }
    if (name == "path") {
        if (path_order(g).empty()) mismatch(name, "graph is not a path");
        return solve_path_graph(g, inst.config);
    }
    if (name == "clique") {
        if (!is_clique(g)) mismatch(name, "graph is not a clique");
        return solve_clique(g.vertex_count(), inst.config);
    }
    if (name == "pseudotree") {
        if (!is_pseudotree(g)) mismatch(name, "graph is not a pseudotree");
        return solve_pseudotree(inst);
    }
    mismatch(name, "unknown solver");
}

std::string first_difference(const StabilizationResult& expected, const StabilizationResult& got) {
    std::ostringstream out;
    if (expected.status != got.status) {
        out << "status " << status_name(got.status) << " vs oracle " << status_name(expected.status);
        return out.str();
    }
    for (std::size_t v = 0; v < expected.config.size(); ++v) {
        if (got.config.size() != expected.config.size() || got.config[v] != expected.config[v]) {
            out << "vertex " << v + 1 << ": config "
                << (v < got.config.size() ? std::to_string(got.config[v]) : "?") << " vs oracle "
                << expected.config[v];
            return out.str();
        }
        if (got.firings.size() != expected.firings.size() || got.firings[v] != expected.firings[v]) {
            out << "vertex " << v + 1 << ": firings "
                << (v < got.firings.size() ? std::to_string(got.firings[v]) : "?") << " vs oracle "
                << expected.firings[v];
            return out.str();
        }
    }
    return {};
}

}  // namespace

std::string format_report(const SolveReport& r) {
    std::ostringstream out;
    out << "status " << status_name(r.status) << '\n';
    if (r.status == Status::Terminal) {
        write_list(out, "config", r.config);
        write_list(out, "firings", r.firings);
    }
    out << "solver " << r.solver << '\n';
    if (r.iterations) out << "iterations " << *r.iterations << '\n';
    if (r.absorbed) out << "absorbed " << *r.absorbed << '\n';
    if (r.wall_ns) out << "wall_ns " << *r.wall_ns << '\n';
    return out.str();
}

SolveReport parse_report(std::string_view text) {
    SolveReport r;
    std::istringstream in{std::string(text)};
    std::string line;
    bool have_status = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string key;
        fields >> key;
        if (key == "status") {
            std::string s;
            fields >> s;
            if (s == "terminal") {
                r.status = Status::Terminal;
            } else if (s == "recurrent") {
                r.status = Status::Recurrent;
            } else {
                fail(ErrorCode::ParseError, "status " + s);
            }
            have_status = true;
        } else if (key == "config" || key == "firings") {
            auto& dst = key == "config" ? r.config : r.firings;
            for (Chips c; fields >> c;) dst.push_back(c);
        } else if (key == "solver") {
            fields >> r.solver;
        } else if (key == "iterations") {
            std::uint64_t v;
            if (fields >> v) r.iterations = v;
        } else if (key == "absorbed") {
            Chips v;
            if (fields >> v) r.absorbed = v;
        } else if (key == "wall_ns") {
            std::uint64_t v;
            if (fields >> v) r.wall_ns = v;
        } else {
            fail(ErrorCode::ParseError, "unknown report line: " + line);
        }
    }
    if (!have_status) fail(ErrorCode::ParseError, "report without status");
    return r;
}

std::string detect_solver(const SandpileInstance& instance) {
    const Graph& g = instance.graph;
    if (instance.has_sink()) return "greedy";
    if (!path_order(g).empty()) return "path";
    if (is_tree(g)) return "tree";
    if (is_clique(g)) return "clique";
    if (is_pseudotree(g)) return "pseudotree";
    return g.vertex_count() <= 8 ? "oracle" : "reduction";
}

SolveReport run_solver(const SandpileInstance& instance, std::string_view solver,
                       const GreedyTrace& trace) {
    validate_instance(instance);
    const std::string name = solver == "auto" ? detect_solver(instance) : std::string(solver);
    std::optional<GreedyResult> greedy;
    const auto start = Clock::now();
    StabilizationResult r = solve_named(instance, name, trace, &greedy);
    SolveReport report;
    report.wall_ns = elapsed_ns(start);
    report.solver = name;
    report.status = r.status;
    report.config = std::move(r.config);
    report.firings = std::move(r.firings);
    if (greedy) {
        report.iterations = greedy->iterations;
        report.absorbed = greedy->absorbed;
    } else if (instance.has_sink() && report.status == Status::Terminal) {
        Chips before = 0, after = 0;
        for (Vertex v = 0; v < instance.size(); ++v) {
            if (instance.is_sink(v)) continue;
            before += instance.config[v];
            after += report.config[v];
        }
        report.absorbed = before - after;
    }
    return report;
}

std::vector<NamedSolver> applicable_solvers(const SandpileInstance& instance) {
    const Graph& g = instance.graph;
    std::vector<std::string> names;
    if (!instance.has_sink()) {
        if (!path_order(g).empty()) names.push_back("path");
        if (is_tree(g)) names.push_back("tree");
        if (is_clique(g)) names.push_back("clique");
        if (is_pseudotree(g)) names.push_back("pseudotree");
    } else {
        names.push_back("greedy");
    }
    if (g.vertex_count() >= 2) names.push_back("reduction");
    std::vector<NamedSolver> out;
    for (const auto& n : names) {
        out.push_back({n, [n](const SandpileInstance& inst) {
                           return solve_named(inst, n, {}, nullptr);
                       }});
    }
    return out;
}

CheckReport cmd_check(const SandpileInstance& instance, std::uint64_t seed, unsigned trials,
                      std::span<const NamedSolver> extra) {
    validate_instance(instance);
    if (instance.size() > 500 || total_chips(instance.config) > 100000) {
        fail(ErrorCode::TooLargeForOracle, "check is limited to n <= 500 and 100000 chips");
    }
    CheckReport report;
    const OracleResult expected = stabilize_naive(instance);
    for (unsigned t = 0; t < trials; ++t) {
        OracleOptions opt;
        opt.order = FiringOrder::Random;
        opt.seed = seed + t;
        const OracleResult again = stabilize_naive(instance, opt);
        if (!(again == expected)) {
            report.message = "FAIL oracle order " + std::to_string(t) + ": " +
                             first_difference(expected, again);
            return report;
        }
    }
    std::vector<NamedSolver> solvers = applicable_solvers(instance);
    solvers.insert(solvers.end(), extra.begin(), extra.end());
    for (const auto& s : solvers) {
        StabilizationResult got;
        try {
            got = s.solve(instance);
        } catch (const std::exception& e) {
            report.message = "FAIL " + s.name + ": " + e.what();
            return report;
        }
        if (!(got == expected)) {
            report.message = "FAIL " + s.name + " " + first_difference(expected, got);
            return report;
        }
    }
    report.pass = true;
    report.solvers = solvers.size();
    report.message = "PASS " + std::to_string(solvers.size()) + " solvers agree";
    return report;
}

std::vector<std::size_t> parse_sizes(std::string_view text) {
    auto number = [](std::string_view s) {
        std::size_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
            fail(ErrorCode::ParseError, "bad size: " + std::string(s));
        }
        return v;
    };
    std::vector<std::size_t> out;
    if (auto dots = text.find(".."); dots != std::string_view::npos) {
        const std::size_t lo = number(text.substr(0, dots));
        const std::size_t hi = number(text.substr(dots + 2));
        if (lo > hi) fail(ErrorCode::ParseError, "empty size range");
        for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    while (!text.empty()) {
        const auto comma = text.find(',');
        out.push_back(number(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (out.empty()) fail(ErrorCode::ParseError, "no sizes given");
    return out;
}

void cmd_bench(const BenchOptions& options, std::ostream& csv) {
    const std::string& family = options.family;
    if (family != "path" && family != "random-tree" && family != "clique" && family != "regular" &&
        family != "hypercube") {
        fail(ErrorCode::BadFamilyParams, "unknown family " + family);
    }
    std::string solver = options.solver;
    if (solver == "auto") {
        solver = family == "path"          ? "path"
                 : family == "random-tree" ? "tree"
                 : family == "clique"      ? "clique"
                                           : "greedy";
    }
    if (family == "regular") {
        for (std::size_t n : options.sizes) {
            if ((n * options.degree) % 2 != 0 || options.degree == 0 || options.degree >= n) {
                fail(ErrorCode::BadFamilyParams, "regular graph needs n*d even and 0 < d < n");
            }
        }
    }

    struct Task {
        std::size_t size;
        unsigned trial;
    };
    std::vector<Task> tasks;
    for (std::size_t s : options.sizes) {
        for (unsigned t = 0; t < options.trials; ++t) tasks.push_back({s, t});
    }
    std::vector<std::string> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
            try {
                const Task task = tasks[i];
                Rng rng(options.seed * 1000003ULL + task.size * 7919ULL + task.trial);
                Graph g;
                if (family == "path") {
                    g = make_path(task.size);
                } else if (family == "random-tree") {
                    g = random_tree(task.size, rng);
                } else if (family == "clique") {
                    g = make_clique(task.size);
                } else if (family == "regular") {
                    g = random_regular(task.size, options.degree, rng);
                } else {
                    g = make_hypercube(static_cast<unsigned>(task.size));
                }
                const std::size_t n = g.vertex_count();
                const bool with_sink = solver == "greedy";
                const Chips chips = options.chips.value_or(
                    with_sink ? static_cast<Chips>(16 * n) : std::max<Chips>(0, static_cast<Chips>(n) - 2));
                SandpileInstance inst;
                inst.config = random_config(with_sink ? n - 1 : n, chips, rng);
                if (with_sink) {
                    inst.config.insert(inst.config.begin(), 0);
                    inst.sinks = {0};
                }
                const std::size_t m = g.edge_count();
                inst.graph = std::move(g);

                std::optional<std::uint64_t> iterations;
                std::uint64_t firings = 0;
                const auto start = Clock::now();
                if (solver == "path" && family == "path") {
                    firings = solve_path(n, inst.config).total_firings;
                } else if (solver == "tree") {
                    firings = solve_tree(inst.graph, inst.config).total_firings;
                } else if (solver == "clique" && family == "clique") {
                    firings = solve_clique(n, inst.config).total_firings;
                } else if (solver == "greedy") {
                    GreedyResult r = stabilize_greedy(inst);
                    iterations = r.iterations;
                    for (Chips c : r.firings) firings += static_cast<std::uint64_t>(c);
                } else {
                    firings = solve_named(inst, solver, {}, nullptr).total_firings;
                }
                const std::uint64_t ns = elapsed_ns(start);
                std::ostringstream row;
                row << family << ',' << n << ',' << m << ',' << chips << ',' << solver << ',' << ns
                    << ',' << (iterations ? std::to_string(*iterations) : "") << ',' << firings;
                rows[i] = row.str();
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    const unsigned jobs = std::max(1u, options.jobs);
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);

    csv << "family,n,m,N,solver,wall_ns,iterations,firings\n";
    for (const auto& row : rows) csv << row << '\n';
}

}  // namespace sandpile
