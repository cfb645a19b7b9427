// Copyright 2026 the bridgecons developers. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
//
// Shared helpers for the test suites: seeded generators for random
// topologies, states, and SPD matrices, plus brute-force oracles that
// stay independent of the library's own code paths.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "bridgecons/consensus.hpp"
#include "bridgecons/graph.hpp"

namespace testsupport {

// Arbitrary digraph: every ordered pair becomes an edge with probability p.
inline bridgecons::Topology random_digraph(std::mt19937& rng, int n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<bridgecons::Edge> edges;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (i != j && coin(rng)) edges.push_back({i, j});
        }
    }
    return bridgecons::Topology::directed(n, std::move(edges));
}

// Connected undirected graph: random spanning tree plus extra links.
inline bridgecons::Topology random_connected_undirected(std::mt19937& rng, int n,
                                                        double extra_p) {
    std::vector<bridgecons::Edge> edges;
    for (int i = 2; i <= n; ++i) {
        std::uniform_int_distribution<int> pick(1, i - 1);
        edges.push_back({pick(rng), i});
    }
    std::bernoulli_distribution coin(extra_p);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            if (coin(rng)) edges.push_back({i, j});
        }
    }
    return bridgecons::Topology::undirected(n, std::move(edges));
}

// Appends the directed cycle through `nodes` unless any of its arcs is
// already present (so in/out degrees stay balanced). Returns success.
inline bool try_add_cycle(std::vector<bridgecons::Edge>& edges,
                          const std::vector<int>& nodes) {
    std::vector<bridgecons::Edge> cycle;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        cycle.push_back({nodes[k], nodes[(k + 1) % nodes.size()]});
    }
    for (const auto& c : cycle) {
        if (std::find(edges.begin(), edges.end(), c) != edges.end()) return false;
    }
    edges.insert(edges.end(), cycle.begin(), cycle.end());
    return true;
}

// Balanced and strongly connected: a directed cycle through all nodes
// in random order, optionally thickened by further disjoint cycles.
// Half the time an undirected connected graph is returned instead,
// which is balanced by symmetry.
inline bridgecons::Topology random_balanced_strongly_connected(std::mt19937& rng,
                                                               int n) {
    if (n == 1) return bridgecons::Topology::directed(1, {});
    if (std::bernoulli_distribution(0.5)(rng)) {
        return random_connected_undirected(rng, n, 0.3);
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<bridgecons::Edge> edges;
    try_add_cycle(edges, order);
    std::uniform_int_distribution<int> extra_count(0, 2);
    for (int attempt = extra_count(rng); attempt > 0; --attempt) {
        std::uniform_int_distribution<int> len(2, n);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<int> sub(order.begin(), order.begin() + len(rng));
        try_add_cycle(edges, sub);
    }
    return bridgecons::Topology::directed(n, std::move(edges));
}

// Balanced but possibly disconnected: two disjoint directed cycles.
inline bridgecons::Topology random_balanced_disconnected(std::mt19937& rng, int n) {
    if (n < 4) return random_balanced_strongly_connected(rng, n);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<int> cut_dist(2, n - 2);
    const int cut = cut_dist(rng);
    std::vector<bridgecons::Edge> edges;
    try_add_cycle(edges, std::vector<int>(order.begin(), order.begin() + cut));
    try_add_cycle(edges, std::vector<int>(order.begin() + cut, order.end()));
    return bridgecons::Topology::directed(n, std::move(edges));
}

// Strong connectivity by boolean Floyd-Warshall transitive closure.
inline bool strongly_connected_oracle(const Eigen::MatrixXi& adjacency) {
    const Eigen::Index n = adjacency.rows();
    std::vector<std::vector<bool>> reach(static_cast<std::size_t>(n),
                                         std::vector<bool>(static_cast<std::size_t>(n)));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            // adjacency(j, i) nonzero means i transmits to j.
            reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                i == j || adjacency(j, i) != 0;
        }
    }
    for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
            for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
            }
        }
    }
    for (const auto& row : reach) {
        for (bool r : row) {
            if (!r) return false;
        }
    }
    return true;
}

// Dense stacked-update oracle: build (update (x) I_m) explicitly and
// multiply the concatenated state vector through Eigen's own product.
inline std::vector<Eigen::VectorXd> kron_step_oracle(
    const std::vector<Eigen::VectorXd>& states, const Eigen::MatrixXd& update) {
    const auto n = static_cast<Eigen::Index>(states.size());
    const Eigen::Index m = states.front().size();
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(n * m, n * m);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            big.block(i * m, j * m, m, m) =
                update(i, j) * Eigen::MatrixXd::Identity(m, m);
        }
    }
    Eigen::VectorXd stacked(n * m);
    for (Eigen::Index i = 0; i < n; ++i) {
        stacked.segment(i * m, m) = states[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd out = big * stacked;
    std::vector<Eigen::VectorXd> result(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        result[static_cast<std::size_t>(i)] = out.segment(i * m, m);
    }
    return result;
}

inline Eigen::MatrixXd random_spd(std::mt19937& rng, int m) {
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    std::uniform_real_distribution<double> shift(0.5, 1.5);
    Eigen::MatrixXd a(m, m);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            a(r, c) = entry(rng);
        }
    }
    return a.transpose() * a + shift(rng) * Eigen::MatrixXd::Identity(m, m);
}

inline Eigen::VectorXd random_vector(std::mt19937& rng, int m, double lo, double hi) {
    std::uniform_real_distribution<double> entry(lo, hi);
    Eigen::VectorXd v(m);
    for (int c = 0; c < m; ++c) v(c) = entry(rng);
    return v;
}

inline std::vector<Eigen::VectorXd> random_states(std::mt19937& rng, int n, int m,
                                                  double lo, double hi) {
    std::vector<Eigen::VectorXd> states;
    states.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) states.push_back(random_vector(rng, m, lo, hi));
    return states;
}

// The per-node view of one round: row `node` of the update matrix
// restricted to the node itself and its in-neighbors.
inline bridgecons::RoundInput round_input_for(const bridgecons::Topology& t,
                                              const Eigen::MatrixXd& update,
                                              const std::vector<Eigen::VectorXd>& states,
                                              int node) {
    bridgecons::RoundInput in;
    in.self_id = node;
    in.self_weight = update(node - 1, node - 1);
    in.self_state = states[static_cast<std::size_t>(node - 1)];
    for (int j : t.in_neighbors(node)) {
        in.neighbors.push_back({j, update(node - 1, j - 1),
                                states[static_cast<std::size_t>(j - 1)]});
    }
    return in;
}

// Random participation with at least one participant.
inline std::vector<bool> random_participation(std::mt19937& rng, int n) {
    std::bernoulli_distribution coin(0.6);
    std::vector<bool> participation(static_cast<std::size_t>(n));
    bool any = false;
    for (int i = 0; i < n; ++i) {
        participation[static_cast<std::size_t>(i)] = coin(rng);
        any = any || participation[static_cast<std::size_t>(i)];
    }
    if (!any) {
        std::uniform_int_distribution<int> pick(0, n - 1);
        participation[static_cast<std::size_t>(pick(rng))] = true;
    }
    return participation;
}

}  // namespace testsupport
