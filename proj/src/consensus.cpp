// Copyright 2026 the bridgecons developers. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#include "bridgecons/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bridgecons {

namespace {

constexpr double kWeightSumTol = 1e-15;

void require_same_dim(Eigen::Index expected, Eigen::Index got, const char* what) {
    if (expected != got) {
        throw DimensionMismatch(std::string(what) + ": expected dimension " +
                                std::to_string(expected) + ", got " +
                                std::to_string(got));
    }
}

}  // namespace

Eigen::VectorXd local_update(const RoundInput& input) {
    const Eigen::Index dim = input.self_state.size();
    if (dim < 1) {
        throw DimensionMismatch("state dimension must be >= 1");
    }

    std::vector<std::pair<double, const Eigen::VectorXd*>> terms;
    terms.reserve(input.neighbors.size() + 1);
    std::vector<std::pair<int, std::size_t>> order;  // (node id, neighbor index)
    order.reserve(input.neighbors.size());

    double weight_sum = input.self_weight;
    for (std::size_t k = 0; k < input.neighbors.size(); ++k) {
        const WeightedNeighbor& nb = input.neighbors[k];
        if (nb.id == input.self_id) {
            throw InvalidArgument("neighbor list must not contain the node itself");
        }
        require_same_dim(dim, nb.state.size(), "neighbor state");
        if (nb.weight < 0.0 || !std::isfinite(nb.weight)) {
            throw InvalidArgument("weights must be nonnegative and finite");
        }
        weight_sum += nb.weight;
        order.emplace_back(nb.id, k);
    }
    if (input.self_weight < 0.0 || !std::isfinite(input.self_weight)) {
        throw InvalidArgument("weights must be nonnegative and finite");
    }
    std::sort(order.begin(), order.end());
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (order[k].first == order[k - 1].first) {
            throw InvalidArgument("duplicate neighbor id " +
                                  std::to_string(order[k].first));
        }
    }
    if (std::abs(weight_sum - 1.0) > kWeightSumTol) {
        throw InvalidArgument("weights must sum to 1, got " +
                              std::to_string(weight_sum));
    }

    bool self_added = false;
    for (const auto& [id, k] : order) {
        if (!self_added && input.self_id < id) {
            terms.emplace_back(input.self_weight, &input.self_state);
            self_added = true;
        }
        terms.emplace_back(input.neighbors[k].weight, &input.neighbors[k].state);
    }
    if (!self_added) {
        terms.emplace_back(input.self_weight, &input.self_state);
    }
    return detail::convex_accumulate(dim, terms);
}

std::vector<Eigen::VectorXd> global_step(
    const std::vector<Eigen::VectorXd>& states,
    const Eigen::Ref<const Eigen::MatrixXd>& update) {
    const auto n = static_cast<Eigen::Index>(states.size());
    if (n == 0) {
        throw DimensionMismatch("need at least one state");
    }
    if (update.rows() != n || update.cols() != n) {
        throw DimensionMismatch("update matrix is " + std::to_string(update.rows()) +
                                "x" + std::to_string(update.cols()) + " but there are " +
                                std::to_string(n) + " states");
    }
    const Eigen::Index dim = states.front().size();
    for (const Eigen::VectorXd& s : states) {
        require_same_dim(dim, s.size(), "state");
    }

    std::vector<Eigen::VectorXd> next(states.size());
    std::vector<std::pair<double, const Eigen::VectorXd*>> terms;
    terms.reserve(states.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        terms.clear();
        for (Eigen::Index j = 0; j < n; ++j) {
            terms.emplace_back(update(i, j), &states[static_cast<std::size_t>(j)]);
        }
        next[static_cast<std::size_t>(i)] = detail::convex_accumulate(dim, terms);
    }
    return next;
}

double disagreement(const std::vector<Eigen::VectorXd>& states) {
    if (states.empty()) {
        throw InvalidArgument("disagreement needs at least one state");
    }
    const Eigen::Index dim = states.front().size();
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
    for (const Eigen::VectorXd& s : states) {
        require_same_dim(dim, s.size(), "state");
        mean += s;
    }
    mean /= static_cast<double>(states.size());
    double worst = 0.0;
    for (const Eigen::VectorXd& s : states) {
        worst = std::max(worst, (s - mean).norm());
    }
    return worst;
}

ConsensusRun run_consensus(std::vector<Eigen::VectorXd> states,
                           const GraphSchedule& schedule,
                           const WeightPolicy& policy, double tol,
                           std::int64_t max_rounds) {
    if (tol <= 0.0) {
        throw InvalidArgument("tol must be > 0");
    }
    if (max_rounds < 0) {
        throw InvalidArgument("max_rounds must be >= 0");
    }
    if (static_cast<int>(states.size()) != schedule.node_count()) {
        throw DimensionMismatch("state count does not match the schedule's nodes");
    }

    UpdateMatrixCache cache(schedule, policy);
    std::int64_t round = 0;
    bool converged = disagreement(states) <= tol;
    while (!converged && round < max_rounds) {
        states = global_step(states, cache.at_round(round));
        ++round;
        converged = disagreement(states) <= tol;
    }
    return ConsensusRun{std::move(states), round, converged};
}

}  // namespace bridgecons
