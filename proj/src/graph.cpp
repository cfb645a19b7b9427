// Copyright 2026 the bridgecons developers. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#include "bridgecons/graph.hpp"

#include <algorithm>
#include <string>

namespace bridgecons {

namespace {

std::string edge_str(const Edge& e) {
    return "(" + std::to_string(e.from) + ", " + std::to_string(e.to) + ")";
}

}  // namespace

Topology::Topology(int node_count, std::vector<Edge> edges, bool undirected)
    : node_count_(node_count), undirected_(undirected), edges_(std::move(edges)) {
    if (node_count_ < 1) {
        throw InvalidArgument("topology needs at least one node, got " +
                              std::to_string(node_count_));
    }
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        const Edge& e = edges_[k];
        if (e.from < 1 || e.from > node_count_ || e.to < 1 || e.to > node_count_) {
            throw InvalidArgument("edge " + edge_str(e) + " outside nodes 1.." +
                                  std::to_string(node_count_));
        }
        if (e.from == e.to) {
            throw InvalidArgument("self-loop " + edge_str(e) + " not allowed");
        }
        if (k > 0 && edges_[k - 1] == e) {
            throw InvalidArgument("duplicate edge " + edge_str(e));
        }
    }
    if (undirected_) {
        for (const Edge& e : edges_) {
            if (!std::binary_search(edges_.begin(), edges_.end(), Edge{e.to, e.from})) {
                throw InvalidArgument("undirected topology missing reverse of " +
                                      edge_str(e));
            }
        }
    }
}

Topology Topology::directed(int node_count, std::vector<Edge> edges) {
    return Topology(node_count, std::move(edges), false);
}

Topology Topology::undirected(int node_count, std::vector<Edge> edges) {
    std::vector<Edge> closed;
    closed.reserve(edges.size() * 2);
    for (const Edge& e : edges) {
        closed.push_back(e);
        closed.push_back(Edge{e.to, e.from});
    }
    std::sort(closed.begin(), closed.end());
    closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
    return Topology(node_count, std::move(closed), true);
}

bool Topology::has_edge(int from, int to) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

std::vector<int> Topology::in_neighbors(int node) const {
    std::vector<int> result;
    for (const Edge& e : edges_) {
        if (e.to == node) result.push_back(e.from);
    }
    std::sort(result.begin(), result.end());
    return result;
}

GraphSchedule::GraphSchedule(std::vector<Frame> frames, bool periodic)
    : frames_(std::move(frames)), periodic_(periodic) {
    if (frames_.empty()) {
        throw InvalidArgument("schedule needs at least one frame");
    }
    const int n = frames_.front().topology.node_count();
    starts_.reserve(frames_.size());
    period_ = 0;
    for (const Frame& f : frames_) {
        if (f.topology.node_count() != n) {
            throw InvalidArgument("all frames must share the node count");
        }
        if (f.duration < 1) {
            throw InvalidArgument("frame duration must be >= 1, got " +
                                  std::to_string(f.duration));
        }
        starts_.push_back(period_);
        period_ += f.duration;
    }
}

GraphSchedule GraphSchedule::single(Topology topology) {
    std::vector<Frame> frames;
    frames.push_back(Frame{std::move(topology), 1});
    return GraphSchedule(std::move(frames), false);
}

int GraphSchedule::node_count() const {
    return frames_.front().topology.node_count();
}

int GraphSchedule::frame_index_at(std::int64_t round) const {
    if (round < 0) {
        throw InvalidArgument("round index must be >= 0");
    }
    std::int64_t r = round;
    if (periodic_) {
        r %= period_;
    } else if (r >= period_) {
        return static_cast<int>(frames_.size()) - 1;
    }
    auto it = std::upper_bound(starts_.begin(), starts_.end(), r);
    return static_cast<int>(it - starts_.begin()) - 1;
}

const Topology& GraphSchedule::topology_at(std::int64_t round) const {
    return frames_[static_cast<std::size_t>(frame_index_at(round))].topology;
}

std::int64_t GraphSchedule::next_frame_change(std::int64_t round,
                                              std::int64_t limit) const {
    if (!periodic_ && round >= period_ - frames_.back().duration) {
        return limit + 1;  // last frame persists
    }
    const int idx = frame_index_at(round);
    const std::int64_t cycle = periodic_ ? (round / period_) * period_ : 0;
    return cycle + starts_[static_cast<std::size_t>(idx)] +
           frames_[static_cast<std::size_t>(idx)].duration;
}

Eigen::MatrixXi adjacency_matrix(const Topology& t) {
    const int n = t.node_count();
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(n, n);
    for (const Edge& e : t.edges()) {
        a(e.to - 1, e.from - 1) = 1;
    }
    return a;
}

Eigen::MatrixXi laplacian(const Topology& t) {
    Eigen::MatrixXi a = adjacency_matrix(t);
    Eigen::MatrixXi l = -a;
    l.diagonal() = a.rowwise().sum();
    return l;
}

int max_degree(const Topology& t) {
    if (t.edges().empty()) return 0;
    return laplacian(t).diagonal().maxCoeff();
}

bool is_balanced(const Topology& t) {
    Eigen::MatrixXi a = adjacency_matrix(t);
    return a.rowwise().sum().transpose() == a.colwise().sum();
}

namespace {

// Every node reachable from node 0 along `adj`, by plain BFS.
bool all_reachable(const std::vector<std::vector<int>>& adj) {
    const std::size_t n = adj.size();
    std::vector<char> seen(n, 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!queue.empty()) {
        int u = queue.back();
        queue.pop_back();
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++count;
                queue.push_back(v);
            }
        }
    }
    return count == n;
}

}  // namespace

bool union_strongly_connected(const GraphSchedule& schedule, std::int64_t tau0,
                              std::int64_t window) {
    if (tau0 < 0 || window < 0) {
        throw InvalidArgument("window [tau0, tau0 + T] needs tau0 >= 0 and T >= 0");
    }
    const std::size_t n = static_cast<std::size_t>(schedule.node_count());
    std::vector<std::vector<int>> fwd(n), rev(n);
    std::vector<char> visited(schedule.frames().size(), 0);
    std::size_t remaining = schedule.frames().size();

    const std::int64_t last = tau0 + window;
    for (std::int64_t tau = tau0; tau <= last && remaining > 0;
         tau = schedule.next_frame_change(tau, last)) {
        const int idx = schedule.frame_index_at(tau);
        if (visited[static_cast<std::size_t>(idx)]) continue;
        visited[static_cast<std::size_t>(idx)] = 1;
        --remaining;
        for (const Edge& e : schedule.frames()[static_cast<std::size_t>(idx)]
                                 .topology.edges()) {
            fwd[static_cast<std::size_t>(e.from - 1)].push_back(e.to - 1);
            rev[static_cast<std::size_t>(e.to - 1)].push_back(e.from - 1);
        }
    }
    // Duplicate arcs from different frames are harmless for reachability.
    return all_reachable(fwd) && all_reachable(rev);
}

Eigen::MatrixXd update_matrix(const Topology& t, const WeightPolicy& policy) {
    const int n = t.node_count();
    if (policy.kind == WeightKind::Metropolis) {
        if (!t.undirected()) {
            throw MetropolisOnDirected(
                "Metropolis weights require an undirected topology");
        }
        const Eigen::MatrixXi lap = laplacian(t);
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            double off = 0.0;
            for (int j = 0; j < n; ++j) {
                if (i == j || lap(i, j) == 0) continue;
                w(i, j) = 1.0 / (1.0 + std::max(lap(i, i), lap(j, j)));
                off += w(i, j);
            }
            w(i, i) = 1.0 - off;
        }
        return w;
    }
    if (policy.d_margin < 0) {
        throw InvalidArgument("d_margin must be >= 0");
    }
    const int d = max_degree(t) + policy.d_margin;
    if (d == 0) {
        return Eigen::MatrixXd::Identity(n, n);  // edgeless, a no-op round
    }
    return Eigen::MatrixXd::Identity(n, n) -
           laplacian(t).cast<double>() / static_cast<double>(d);
}

const Eigen::MatrixXd& UpdateMatrixCache::at_round(std::int64_t round) {
    const auto idx = static_cast<std::size_t>(schedule_.frame_index_at(round));
    if (!ready_[idx]) {
        per_frame_[idx] = update_matrix(schedule_.frames()[idx].topology, policy_);
        ready_[idx] = 1;
    }
    return per_frame_[idx];
}

}  // namespace bridgecons
