// Copyright 2026 the bridgecons developers. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

#include "bridgecons/errors.hpp"
#include "bridgecons/graph.hpp"

namespace bridgecons {

namespace detail {

/// Accumulates sum of weight * state over terms pre-sorted by node
/// index, skipping exact-zero weights. Both the per-node and the
/// whole-network update funnel through this so their results are
/// bit-identical.
inline Eigen::VectorXd convex_accumulate(
    Eigen::Index dim,
    const std::vector<std::pair<double, const Eigen::VectorXd*>>& terms) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(dim);
    for (const auto& [weight, state] : terms) {
        if (weight != 0.0) {
            acc.noalias() += weight * (*state);
        }
    }
    return acc;
}

}  // namespace detail

/// An in-neighbor's contribution to one local update.
struct WeightedNeighbor {
    int id = 0;
    double weight = 0.0;
    Eigen::VectorXd state;
};

/// Everything node i sees in one round: its own state, the states of
/// its in-neighbors, and the matching row of the update matrix
/// restricted to those nodes. Weights must be nonnegative and sum to 1
/// within 1e-15.
struct RoundInput {
    int self_id = 1;
    double self_weight = 1.0;
    Eigen::VectorXd self_state;
    std::vector<WeightedNeighbor> neighbors;
};

/// One node's synchronous update: the convex combination of its own
/// and its in-neighbors' states, summed in ascending node order. The
/// result lies in the per-coordinate convex hull of the inputs.
Eigen::VectorXd local_update(const RoundInput& input);

/// One synchronous round for the whole network: output i is row i of
/// the update matrix applied across states. Bit-identical to calling
/// local_update per node with matching rows.
std::vector<Eigen::VectorXd> global_step(
    const std::vector<Eigen::VectorXd>& states,
    const Eigen::Ref<const Eigen::MatrixXd>& update);

/// Convergence metric: the largest Euclidean distance of any state
/// from the all-node mean. Zero iff all states are equal.
double disagreement(const std::vector<Eigen::VectorXd>& states);

struct ConsensusRun {
    std::vector<Eigen::VectorXd> states;
    std::int64_t rounds = 0;
    bool converged = false;
};

/// Runs synchronous rounds over the schedule until the disagreement
/// drops to `tol` or `max_rounds` steps have been taken. Rounds are
/// counted exactly; already-agreeing states converge at round 0.
ConsensusRun run_consensus(std::vector<Eigen::VectorXd> states,
                           const GraphSchedule& schedule,
                           const WeightPolicy& policy, double tol,
                           std::int64_t max_rounds);

}  // namespace bridgecons
