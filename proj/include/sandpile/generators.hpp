// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <random>

#include "sandpile/graph.hpp"

namespace sandpile {

using Rng = std::mt19937_64;

Graph make_path(std::size_t n);
Graph make_cycle(std::size_t n);
Graph make_clique(std::size_t n);
Graph make_star(std::size_t leaves);
Graph make_hypercube(unsigned dimension);
/// Uniform random labelled tree (Pruefer sequence).
Graph random_tree(std::size_t n, Rng& rng);
/// Random tree plus one extra edge (n >= 3).
Graph random_pseudotree(std::size_t n, Rng& rng);
/// Random d-regular graph by pairing with rejection; n * d must be even.
Graph random_regular(std::size_t n, unsigned d, Rng& rng);
/// Random connected graph with m >= n - 1 edges.
Graph random_connected(std::size_t n, std::size_t m, Rng& rng);

/// Drops total chips one at a time onto uniformly random vertices.
Configuration random_config(std::size_t n, Chips total, Rng& rng);

}  // namespace sandpile
