// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#include "sandpile/keypair_store.hpp"

#include <algorithm>
#include <sstream>

#include "sandpile/error.hpp"

namespace sandpile {

SplayArena::SplayArena(std::size_t capacity) : capacity_(capacity) {
    nodes_.reserve(capacity);
}

NodeId SplayArena::new_node(Chips moment, std::int32_t timestamp) {
    if (nodes_.size() >= capacity_) {
        fail(ErrorCode::InvariantViolation,
             "node budget of " + std::to_string(capacity_) + " exceeded");
    }
    nodes_.push_back({moment, 0, 0, timestamp, timestamp, timestamp, 1, kNil, kNil, kNil});
    return static_cast<NodeId>(nodes_.size() - 1);
}

void SplayArena::inc_time(NodeId x, Chips a, Chips b) {
    if (x == kNil) return;
    StoreNode& n = nodes_[x];
    n.moment += (Chips{size(n.left)} + 1) * a + b;
    n.lazy_a += a;
    n.lazy_b += b;
}

void SplayArena::push_down(NodeId x) {
    StoreNode& n = nodes_[x];
    if (n.lazy_a == 0 && n.lazy_b == 0) return;
    inc_time(n.left, n.lazy_a, n.lazy_b);
    inc_time(n.right, n.lazy_a, n.lazy_b + (Chips{size(n.left)} + 1) * n.lazy_a);
    n.lazy_a = 0;
    n.lazy_b = 0;
}

void SplayArena::push_up(NodeId x) {
    StoreNode& n = nodes_[x];
    n.size = 1;
    n.timemin = n.timemax = n.timestamp;
    for (NodeId c : {n.left, n.right}) {
        if (c == kNil) continue;
        const StoreNode& k = nodes_[c];
        n.size += k.size;
        n.timemin = std::min(n.timemin, k.timemin);
        n.timemax = std::max(n.timemax, k.timemax);
    }
}

NodeId& SplayArena::child_slot(NodeId parent, NodeId child) {
    StoreNode& p = nodes_[parent];
    return p.left == child ? p.left : p.right;
}

void SplayArena::rotate(NodeId x) {
    const NodeId y = nodes_[x].parent;
    const NodeId z = nodes_[y].parent;
    if (nodes_[y].left == x) {
        const NodeId b = nodes_[x].right;
        nodes_[y].left = b;
        if (b != kNil) nodes_[b].parent = y;
        nodes_[x].right = y;
    } else {
        const NodeId b = nodes_[x].left;
        nodes_[y].right = b;
        if (b != kNil) nodes_[b].parent = y;
        nodes_[x].left = y;
    }
    nodes_[y].parent = x;
    nodes_[x].parent = z;
    if (z != kNil) child_slot(z, y) = x;
    push_up(y);
    push_up(x);
}

void SplayArena::splay(NodeId x) {
    while (nodes_[x].parent != kNil) {
        const NodeId y = nodes_[x].parent;
        const NodeId z = nodes_[y].parent;
        if (z != kNil) {
            const bool zig_zig = (nodes_[y].left == x) == (nodes_[z].left == y);
            rotate(zig_zig ? y : x);
        }
        rotate(x);
    }
}

NodeId SplayArena::find_min(NodeId& root) {
    if (root == kNil) fail(ErrorCode::EmptyStore, "find_min on empty store");
    NodeId x = root;
    for (;;) {
        push_down(x);
        if (nodes_[x].left == kNil) break;
        x = nodes_[x].left;
    }
    splay(x);
    root = x;
    return x;
}

void SplayArena::insert(NodeId& root, NodeId x) {
    if (root == kNil) {
        root = x;
        return;
    }
    const Chips m = nodes_[x].moment;
    NodeId cur = root;
    for (;;) {
        push_down(cur);
        NodeId& next = m < nodes_[cur].moment ? nodes_[cur].left : nodes_[cur].right;
        if (next == kNil) {
            next = x;
            nodes_[x].parent = cur;
            break;
        }
        cur = next;
    }
    splay(x);
    root = x;
}

void SplayArena::erase_root(NodeId& root) {
    const NodeId x = root;
    push_down(x);
    StoreNode& n = nodes_[x];
    const NodeId l = n.left;
    const NodeId r = n.right;
    n.left = n.right = n.parent = kNil;
    push_up(x);
    if (l != kNil) nodes_[l].parent = kNil;
    if (r != kNil) nodes_[r].parent = kNil;
    if (l == kNil) {
        root = r;
        return;
    }
    NodeId m = l;
    for (;;) {
        push_down(m);
        if (nodes_[m].right == kNil) break;
        m = nodes_[m].right;
    }
    splay(m);
    nodes_[m].right = r;
    if (r != kNil) nodes_[r].parent = m;
    push_up(m);
    root = m;
}

std::int64_t SplayArena::count_le(NodeId& root, Chips k) {
    std::int64_t count = 0;
    NodeId cur = root, last = kNil;
    while (cur != kNil) {
        push_down(cur);
        last = cur;
        if (nodes_[cur].moment <= k) {
            count += size(nodes_[cur].left) + 1;
            cur = nodes_[cur].right;
        } else {
            cur = nodes_[cur].left;
        }
    }
    if (last != kNil) {
        splay(last);
        root = last;
    }
    return count;
}

NodeId SplayArena::find_timestamp_at_least(NodeId& root, std::int32_t t) {
    if (root == kNil || nodes_[root].timemax < t) return kNil;
    NodeId cur = root;
    for (;;) {
        push_down(cur);
        const NodeId l = nodes_[cur].left;
        if (l != kNil && nodes_[l].timemax >= t) {
            cur = l;
        } else if (nodes_[cur].timestamp >= t) {
            break;
        } else {
            cur = nodes_[cur].right;
        }
    }
    splay(cur);
    root = cur;
    return cur;
}

NodeId SplayArena::find_timestamp_below(NodeId& root, std::int32_t t) {
    if (root == kNil || nodes_[root].timemin >= t) return kNil;
    NodeId cur = root;
    for (;;) {
        push_down(cur);
        const NodeId l = nodes_[cur].left;
        if (l != kNil && nodes_[l].timemin < t) {
            cur = l;
        } else if (nodes_[cur].timestamp < t) {
            break;
        } else {
            cur = nodes_[cur].right;
        }
    }
    splay(cur);
    root = cur;
    return cur;
}

std::vector<std::pair<Chips, std::int32_t>> SplayArena::contents(NodeId root) const {
    struct Frame {
        NodeId x;
        Chips a, b;
        bool expanded;
    };
    std::vector<std::pair<Chips, std::int32_t>> out;
    std::vector<Frame> stack;
    if (root != kNil) stack.push_back({root, 0, 0, false});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        const StoreNode& n = nodes_[f.x];
        const Chips left_rank = Chips{size(n.left)} + 1;
        if (f.expanded) {
            out.emplace_back(n.moment + left_rank * f.a + f.b, n.timestamp);
            continue;
        }
        const Chips ta = n.lazy_a + f.a;
        const Chips tb = n.lazy_b + f.b;
        if (n.right != kNil) stack.push_back({n.right, ta, tb + left_rank * ta, false});
        stack.push_back({f.x, f.a, f.b, true});
        if (n.left != kNil) stack.push_back({n.left, ta, tb, false});
    }
    return out;
}

bool SplayArena::verify(NodeId root) const {
    if (root == kNil) return true;
    if (nodes_[root].parent != kNil) return false;
    std::vector<NodeId> order{root};
    for (std::size_t i = 0; i < order.size(); ++i) {
        const StoreNode& n = nodes_[order[i]];
        for (NodeId c : {n.left, n.right}) {
            if (c == kNil) continue;
            if (nodes_[c].parent != order[i]) return false;
            order.push_back(c);
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const StoreNode& n = nodes_[*it];
        std::int32_t sz = 1, lo = n.timestamp, hi = n.timestamp;
        for (NodeId c : {n.left, n.right}) {
            if (c == kNil) continue;
            sz += nodes_[c].size;
            lo = std::min(lo, nodes_[c].timemin);
            hi = std::max(hi, nodes_[c].timemax);
        }
        if (sz != n.size || lo != n.timemin || hi != n.timemax) return false;
    }
    auto items = contents(root);
    for (std::size_t i = 1; i < items.size(); ++i) {
        if (items[i].first < items[i - 1].first) return false;
    }
    return true;
}

KeyPairStore::KeyPairStore(std::size_t n)
    : arena_(2 * n),
      root_(n, kNil),
      res_(n, 0),
      num_(n, 0),
      q_begin_(n, 0),
      q_len_(n, 0) {}

void KeyPairStore::insert(Vertex u, Chips moment, std::int32_t timestamp) {
    arena_.insert(root_[u], arena_.new_node(moment, timestamp));
}

void KeyPairStore::move(Vertex from, Vertex to) {
    if (root_[to] != kNil) fail(ErrorCode::InvariantViolation, "move into a non-empty store");
    root_[to] = root_[from];
    root_[from] = kNil;
}

void KeyPairStore::merge(Vertex u, Vertex v) {
    res_[v] = 0;
    if (arena_.size(root_[u]) < arena_.size(root_[v])) {
        std::swap(root_[u], root_[v]);
        res_[v] = 1;
    }
    NodeId& from = root_[v];
    while (from != kNil) {
        const NodeId x = arena_.find_min(from);
        arena_.erase_root(from);
        arena_.insert(root_[u], x);
    }
}

void KeyPairStore::split(Vertex u, Vertex v, std::int32_t dfs_order_v) {
    if (root_[v] != kNil) fail(ErrorCode::InvariantViolation, "split into a non-empty store");
    const bool swapped = res_[v] != 0;
    for (;;) {
        const NodeId x = swapped ? arena_.find_timestamp_below(root_[u], dfs_order_v)
                                 : arena_.find_timestamp_at_least(root_[u], dfs_order_v);
        if (x == kNil) break;
        arena_.erase_root(root_[u]);
        arena_.insert(root_[v], x);
    }
    if (swapped) std::swap(root_[u], root_[v]);
    res_[v] = 0;
}

Chips KeyPairStore::compute_c_down(Vertex u, Chips sigma_prime, Chips degree, bool is_root) {
    const Chips nr = is_root ? 0 : 1;
    q_begin_[u] = static_cast<std::int64_t>(q_nodes_.size());
    q_len_[u] = 0;
    Chips now = 0;
    Chips count = 0;
    NodeId& root = root_[u];
    while (root != kNil) {
        const NodeId x = arena_.find_min(root);
        const Chips m = arena_.node(x).moment;
        if (m == now || count + nr * (m - 1 - now) <= sigma_prime - degree) {
            arena_.erase_root(root);
            q_nodes_.push_back(x);
            ++q_len_[u];
            count += 1 + nr * (m - now);
            now = m;
        } else {
            break;
        }
    }
    if (is_root && root == kNil && sigma_prime - count >= degree) {
        fail(ErrorCode::InvariantViolation, "root never stabilizes");
    }
    const Chips p = nr * std::max<Chips>(0, sigma_prime - count - (degree - 1));
    return now + p;
}

Chips KeyPairStore::delta_sum(Vertex u, Chips c_down, std::int64_t children) const {
    return c_down * children - q_len_[u];
}

void KeyPairStore::update(Vertex u, Chips sigma_prime, Chips degree, Chips c_down,
                          std::int32_t dfs_order) {
    const Chips num = degree - 1 - sigma_prime;
    if (num < 0) fail(ErrorCode::InvariantViolation, "vertex is not locally terminal");
    arena_.inc_time(root_[u], 0, -c_down);
    num_[u] = static_cast<std::int32_t>(num);
    for (Chips i = 0; i < num; ++i) insert(u, 0, dfs_order);
    arena_.inc_time(root_[u], 1, 0);
}

void KeyPairStore::revert(Vertex u, Chips c_down) {
    NodeId& root = root_[u];
    arena_.inc_time(root, -1, 0);
    for (std::int32_t i = 0; i < num_[u]; ++i) {
        arena_.find_min(root);
        arena_.erase_root(root);
    }
    arena_.inc_time(root, 0, c_down);
    for (std::int32_t i = 0; i < q_len_[u]; ++i) {
        arena_.insert(root, q_nodes_[static_cast<std::size_t>(q_begin_[u] + i)]);
    }
}

Chips KeyPairStore::delta_query(Vertex u, Chips k) {
    return k - arena_.count_le(root_[u], k);
}

std::int64_t KeyPairStore::path_query(Vertex u, Chips k) {
    NodeId& root = root_[u];
    std::int64_t count = 0;
    while (root != kNil) {
        const NodeId x = arena_.find_min(root);
        if (arena_.node(x).moment > k) break;
        arena_.erase_root(root);
        ++count;
    }
    return count;
}

std::int64_t KeyPairStore::path_revert(Vertex u, std::int64_t count, Chips c_down) {
    NodeId& root = root_[u];
    arena_.inc_time(root, -1, -count);
    if (num_[u] <= count) {
        count -= num_[u];
    } else {
        std::int64_t extra = num_[u] - count;
        count = 0;
        for (; extra > 0; --extra) {
            arena_.find_min(root);
            arena_.erase_root(root);
        }
    }
    arena_.inc_time(root, 0, c_down);
    if (count > 0) {
        count += q_len_[u];
    } else {
        for (std::int32_t i = 0; i < q_len_[u]; ++i) {
            arena_.insert(root, q_nodes_[static_cast<std::size_t>(q_begin_[u] + i)]);
        }
    }
    return count;
}

std::string KeyPairStore::dump(Vertex u) const {
    std::ostringstream out;
    bool first = true;
    for (auto [m, t] : arena_.contents(root_[u])) {
        out << (first ? "" : " ") << m << ':' << t;
        first = false;
    }
    return out.str();
}

}  // namespace sandpile
