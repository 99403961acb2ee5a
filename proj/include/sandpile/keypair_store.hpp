// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sandpile/checked.hpp"
#include "sandpile/graph.hpp"

namespace sandpile {

using NodeId = std::int32_t;
inline constexpr NodeId kNil = -1;

struct StoreNode {
    Chips moment;
    Chips lazy_a;
    Chips lazy_b;
    std::int32_t timestamp;
    std::int32_t timemin;
    std::int32_t timemax;
    std::int32_t size;
    NodeId left;
    NodeId right;
    NodeId parent;
};

/// Splay-tree primitives over an index arena. Trees are addressed by a root
/// handle that the operations update in place.
class SplayArena {
public:
    explicit SplayArena(std::size_t capacity);

    NodeId new_node(Chips moment, std::int32_t timestamp);
    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t capacity() const noexcept { return capacity_; }

    const StoreNode& node(NodeId x) const { return nodes_[static_cast<std::size_t>(x)]; }
    std::int32_t size(NodeId x) const noexcept { return x == kNil ? 0 : nodes_[x].size; }

    /// Adds rank * a + b to every moment in the subtree of x (rank is 1-based
    /// within that subtree).
    void inc_time(NodeId x, Chips a, Chips b);
    void push_down(NodeId x);
    void push_up(NodeId x);
    /// Rotates x to the top of its tree. Ancestors must carry no tags.
    void splay(NodeId x);

    NodeId find_min(NodeId& root);
    /// Inserts a detached node after all nodes with moment <= its moment.
    void insert(NodeId& root, NodeId x);
    /// Removes the current root.
    void erase_root(NodeId& root);
    /// Number of nodes with moment <= k; splays the last node visited.
    std::int64_t count_le(NodeId& root, Chips k);
    /// Lowest-rank node with timestamp >= t, or kNil.
    NodeId find_timestamp_at_least(NodeId& root, std::int32_t t);
    /// Lowest-rank node with timestamp < t, or kNil.
    NodeId find_timestamp_below(NodeId& root, std::int32_t t);

    /// In-order (moment, timestamp) pairs with pending tags applied. Does not
    /// modify the tree.
    std::vector<std::pair<Chips, std::int32_t>> contents(NodeId root) const;
    /// Checks order, sizes, timestamp ranges and parent links.
    bool verify(NodeId root) const;

private:
    void rotate(NodeId x);
    NodeId& child_slot(NodeId parent, NodeId child);

    std::vector<StoreNode> nodes_;
    std::size_t capacity_;
};

/// The family of stores D_u for one solve, all in one arena.
class KeyPairStore {
public:
    /// Node capacity is 2n; exceeding it raises InvariantViolation.
    explicit KeyPairStore(std::size_t n);

    SplayArena& arena() noexcept { return arena_; }
    const SplayArena& arena() const noexcept { return arena_; }
    NodeId& root(Vertex u) { return root_[u]; }
    std::int32_t size(Vertex u) const { return arena_.size(root_[u]); }
    bool swapped(Vertex v) const { return res_[v] != 0; }
    std::int64_t queue_size(Vertex u) const { return q_len_[u]; }
    std::int32_t inserted(Vertex u) const { return num_[u]; }

    /// Inserts a fresh node into D_u.
    void insert(Vertex u, Chips moment, std::int32_t timestamp);
    /// Hands D_from over to D_to, leaving D_from empty. D_to must be empty.
    void move(Vertex from, Vertex to);

    void merge(Vertex u, Vertex v);
    void split(Vertex u, Vertex v, std::int32_t dfs_order_v);

    /// Smallest k with psi_u(k) < degree(u); pops consumed nodes into Q_u.
    Chips compute_c_down(Vertex u, Chips sigma_prime, Chips degree, bool is_root);
    Chips delta_sum(Vertex u, Chips c_down, std::int64_t children) const;
    void update(Vertex u, Chips sigma_prime, Chips degree, Chips c_down, std::int32_t dfs_order);
    void revert(Vertex u, Chips c_down);
    Chips delta_query(Vertex u, Chips k);

    /// Deletes every node with moment <= k and returns how many.
    std::int64_t path_query(Vertex u, Chips k);
    /// Path variant of revert with aggregated count. Returns the new count.
    std::int64_t path_revert(Vertex u, std::int64_t count, Chips c_down);

    /// "moment:timestamp" in-order list.
    std::string dump(Vertex u) const;

private:
    SplayArena arena_;
    std::vector<NodeId> root_;
    std::vector<std::uint8_t> res_;
    std::vector<std::int32_t> num_;
    std::vector<std::int64_t> q_begin_;
    std::vector<std::int32_t> q_len_;
    std::vector<NodeId> q_nodes_;
};

}  // namespace sandpile
