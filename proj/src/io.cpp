// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#include "sandpile/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "sandpile/error.hpp"

namespace sandpile {
namespace {

std::int64_t read_int(std::istream& in, const char* what) {
    std::int64_t value;
    if (!(in >> value)) fail(ErrorCode::ParseError, std::string("expected ") + what);
    return value;
}

Vertex read_id(std::istream& in, std::int64_t n, const char* what) {
    std::int64_t id = read_int(in, what);
    if (id < 1 || id > n) fail(ErrorCode::VertexOutOfRange, std::string(what) + " " + std::to_string(id));
    return static_cast<Vertex>(id - 1);
}

}  // namespace

SandpileInstance read_instance(std::istream& in) {
    const std::int64_t n = read_int(in, "vertex count");
    const std::int64_t m = read_int(in, "edge count");
    const std::int64_t k = read_int(in, "sink count");
    if (n < 1 || n > std::numeric_limits<std::int32_t>::max() / 2) {
        fail(ErrorCode::ParseError, "vertex count out of range");
    }
    if (m < 0 || k < 0 || k > n) fail(ErrorCode::ParseError, "bad header");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) {
        Vertex u = read_id(in, n, "edge endpoint");
        Vertex v = read_id(in, n, "edge endpoint");
        edges.emplace_back(u, v);
    }
    SandpileInstance inst;
    inst.graph = build_graph(static_cast<std::size_t>(n), edges);
    inst.config.resize(static_cast<std::size_t>(n));
    for (auto& c : inst.config) c = read_int(in, "chip count");
    for (std::int64_t i = 0; i < k; ++i) inst.sinks.push_back(read_id(in, n, "sink"));
    std::sort(inst.sinks.begin(), inst.sinks.end());
    if (std::adjacent_find(inst.sinks.begin(), inst.sinks.end()) != inst.sinks.end()) {
        fail(ErrorCode::BadSink, "duplicate sink id");
    }
    std::string extra;
    if (in >> extra) fail(ErrorCode::ParseError, "trailing data: " + extra);
    return inst;
}

SandpileInstance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
    return read_instance(in);
}

void write_instance(std::ostream& out, const SandpileInstance& instance) {
    const Graph& g = instance.graph;
    out << g.vertex_count() << ' ' << g.edge_count() << ' ' << instance.sinks.size() << '\n';
    for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
    for (std::size_t i = 0; i < instance.config.size(); ++i) {
        out << (i ? " " : "") << instance.config[i];
    }
    out << '\n';
    if (!instance.sinks.empty()) {
        for (std::size_t i = 0; i < instance.sinks.size(); ++i) {
            out << (i ? " " : "") << instance.sinks[i] + 1;
        }
        out << '\n';
    }
}

}  // namespace sandpile
