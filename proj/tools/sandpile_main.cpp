// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

#include "sandpile/cli.hpp"
#include "sandpile/error.hpp"
#include "sandpile/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

std::ostream& open_output(const std::string& path, std::unique_ptr<std::ofstream>& file) {
    if (path.empty() || path == "-") return std::cout;
    file = std::make_unique<std::ofstream>(path);
    if (!*file) throw sandpile::SandpileError(sandpile::ErrorCode::ParseError, "cannot write " + path);
    return *file;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chip-firing terminal configuration solvers"};
    app.require_subcommand(1);

    std::string input, solver = "auto", trace_path, out_path, family, sizes, bench_solver = "auto";
    std::uint64_t seed = 1;
    unsigned trials = 5, bench_trials = 1, degree = 4, jobs = 1;
    long long chips = -1;
    bool timing = false;

    auto* solve = app.add_subcommand("solve", "Solve one instance file");
    solve->add_option("input", input, "Instance file")->required();
    solve->add_option("--solver", solver, "auto|tree|path|clique|greedy|pseudotree|reduction|oracle");
    solve->add_option("--trace", trace_path, "Greedy per-iteration CSV trace");
    solve->add_option("--out", out_path, "Report destination (default stdout)");
    solve->add_flag("--timing", timing, "Include wall time in the report");

    auto* check = app.add_subcommand("check", "Compare all applicable solvers with the oracle");
    check->add_option("input", input, "Instance file")->required();
    check->add_option("--seed", seed, "Seed for random firing orders");
    check->add_option("--trials", trials, "Random-order oracle runs");

    auto* bench = app.add_subcommand("bench", "Benchmark a graph family, CSV output");
    bench->add_option("--family", family, "path|random-tree|clique|regular|hypercube")->required();
    bench->add_option("--sizes", sizes, "a..b or a,b,c (dimension for hypercube)")->required();
    bench->add_option("--seed", seed, "Generator seed");
    bench->add_option("--trials", bench_trials, "Instances per size");
    bench->add_option("--solver", bench_solver, "auto or a solver name");
    bench->add_option("--degree", degree, "Degree for the regular family");
    bench->add_option("--chips", chips, "Total chips per instance");
    bench->add_option("--jobs", jobs, "Worker threads");
    bench->add_option("--out", out_path, "CSV destination (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        std::unique_ptr<std::ofstream> file;
        if (*solve) {
            const auto instance = sandpile::read_instance_file(input);
            std::unique_ptr<std::ofstream> trace_file;
            sandpile::GreedyTrace trace;
            if (!trace_path.empty()) {
                std::ostream& t = open_output(trace_path, trace_file);
                t << "vertex,k,remaining\n";
                trace = [&t](const sandpile::GreedyTraceRow& row) {
                    t << row.vertex + 1 << ',' << row.k << ',' << row.remaining << '\n';
                };
            }
            auto report = sandpile::run_solver(instance, solver, trace);
            if (!timing) report.wall_ns.reset();
            open_output(out_path, file) << sandpile::format_report(report);
            return kExitOk;
        }
        if (*check) {
            const auto instance = sandpile::read_instance_file(input);
            const auto report = sandpile::cmd_check(instance, seed, trials);
            std::cout << report.message << '\n';
            return report.pass ? kExitOk : kExitMismatch;
        }
        sandpile::BenchOptions options;
        options.family = family;
        options.sizes = sandpile::parse_sizes(sizes);
        options.seed = seed;
        options.trials = bench_trials;
        options.solver = bench_solver;
        options.degree = degree;
        options.jobs = jobs;
        if (chips >= 0) options.chips = chips;
        sandpile::cmd_bench(options, open_output(out_path, file));
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
