// Copyright 2026 the bridgecons developers. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "bridgecons/errors.hpp"

namespace bridgecons {

/// Directed communication link: `from` transmits its state to `to`.
/// Node ids are 1-based everywhere in the public interface.
struct Edge {
    int from = 0;
    int to = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// One snapshot of the communication graph: a fixed node count and a
/// duplicate-free, self-loop-free edge set. Instances are immutable;
/// construction validates every invariant, so operations on a Topology
/// never fail.
class Topology {
public:
    /// Builds a directed topology. Throws InvalidArgument on node ids
    /// outside [1, n], self-loops, or duplicate edges.
    static Topology directed(int node_count, std::vector<Edge> edges);

    /// Builds an undirected topology: the edge set is closed under
    /// reversal, so each link may be listed in either or both directions.
    static Topology undirected(int node_count, std::vector<Edge> edges);

    int node_count() const { return node_count_; }
    bool undirected() const { return undirected_; }

    /// Edges sorted by (from, to).
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_edge(int from, int to) const;

    /// Nodes j whose value is available to `node`, ascending.
    std::vector<int> in_neighbors(int node) const;

private:
    Topology(int node_count, std::vector<Edge> edges, bool undirected);

    int node_count_ = 0;
    bool undirected_ = false;
    std::vector<Edge> edges_;
};

/// Piecewise-constant mapping from round index to Topology. When
/// `periodic` the frame list repeats forever; otherwise the last frame
/// persists, so topology_at is total for every round >= 0.
class GraphSchedule {
public:
    struct Frame {
        Topology topology;
        std::int64_t duration = 1;
    };

    /// Throws InvalidArgument on an empty frame list, a duration < 1,
    /// or frames with differing node counts.
    GraphSchedule(std::vector<Frame> frames, bool periodic);

    /// Single static topology.
    static GraphSchedule single(Topology topology);

    int node_count() const;
    bool periodic() const { return periodic_; }
    std::int64_t period() const { return period_; }
    const std::vector<Frame>& frames() const { return frames_; }

    const Topology& topology_at(std::int64_t round) const;
    int frame_index_at(std::int64_t round) const;

    /// First round after `round` at which the active frame changes, or
    /// a value past `limit` when it never does.
    std::int64_t next_frame_change(std::int64_t round, std::int64_t limit) const;

private:
    std::vector<Frame> frames_;
    std::vector<std::int64_t> starts_;  // cumulative start round of each frame
    bool periodic_ = false;
    std::int64_t period_ = 0;
};

enum class WeightKind {
    UniformDegree,  // common step 1/d with d = max degree + margin
    Metropolis,     // per-edge 1/(1 + max(deg_i, deg_j)); undirected only
};

/// Selects how the one-round update matrix weighs each link.
/// `d_margin` applies to UniformDegree only and keeps d >= max degree.
struct WeightPolicy {
    WeightKind kind = WeightKind::UniformDegree;
    int d_margin = 1;
};

/// 0/1 adjacency matrix: A(i,j) = 1 iff j transmits to i.
Eigen::MatrixXi adjacency_matrix(const Topology& t);

/// Graph Laplacian: in-degrees on the diagonal, -A off it. Integer
/// valued, rows sum to zero exactly.
Eigen::MatrixXi laplacian(const Topology& t);

/// Maximum in-degree, i.e. the largest Laplacian diagonal entry.
int max_degree(const Topology& t);

/// True iff every node's in-degree equals its out-degree.
bool is_balanced(const Topology& t);

/// True iff the union of the edge sets over rounds
/// [tau0, tau0 + window] is strongly connected.
bool union_strongly_connected(const GraphSchedule& schedule, std::int64_t tau0,
                              std::int64_t window);

/// The row-stochastic one-round update matrix for the given topology
/// and weight policy. Entries are nonnegative and every row sums to 1;
/// on balanced topologies with uniform-degree weights the columns sum
/// to 1 as well, and Metropolis weights give a symmetric doubly
/// stochastic matrix. An edgeless topology yields the identity.
/// Throws MetropolisOnDirected when the policy does not fit.
Eigen::MatrixXd update_matrix(const Topology& t, const WeightPolicy& policy);

/// Lazily computed per-frame update matrices for a schedule, so round
/// loops never rebuild the matrix of a repeating frame.
class UpdateMatrixCache {
public:
    UpdateMatrixCache(const GraphSchedule& schedule, const WeightPolicy& policy)
        : schedule_(schedule),
          policy_(policy),
          per_frame_(schedule.frames().size()),
          ready_(schedule.frames().size(), 0) {}

    const Eigen::MatrixXd& at_round(std::int64_t round);

private:
    const GraphSchedule& schedule_;
    WeightPolicy policy_;
    std::vector<Eigen::MatrixXd> per_frame_;
    std::vector<char> ready_;
};

}  // namespace bridgecons
