// Copyright 2026 the bridgecons developers. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "bridgecons/errors.hpp"
#include "bridgecons/graph.hpp"

namespace bridgecons {

/// A node's information-space state: the information matrix Y
/// (symmetric positive semidefinite), the information state y, and
/// whether the node contributes an initial value. Participating nodes
/// start at (C, C*x0); non-participating nodes start at zero, carrying
/// no information of their own.
struct InfoPair {
    Eigen::MatrixXd info_matrix;
    Eigen::VectorXd info_state;
    bool participating = false;
};

/// The common prior weight C given to every participating node.
/// Construction rejects matrices that are not symmetric positive
/// definite; the consensus limit is provably independent of the
/// choice, so identity is the canonical default.
class PriorWeight {
public:
    explicit PriorWeight(Eigen::MatrixXd matrix);

    static PriorWeight identity(int dim);

    const Eigen::MatrixXd& matrix() const { return matrix_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }

private:
    Eigen::MatrixXd matrix_;
};

/// A node's current estimate of the participating average, or nullopt
/// while too little information has reached the node to invert its
/// information matrix.
using Estimate = std::optional<Eigen::VectorXd>;

/// Default minimum eigenvalue of Y before an estimate is considered
/// defined. Below this, the node has not yet heard from any
/// participant and honestly reports no estimate.
inline constexpr double kDefaultEstimateThreshold = 1e-9;

/// Builds each node's initial information pair: participating nodes
/// get (C, C*x0), non-participating nodes get zeros. Values supplied
/// for non-participating nodes are ignored by construction.
std::vector<InfoPair> init_information(
    const std::vector<std::optional<Eigen::VectorXd>>& initial_values,
    const std::vector<bool>& participation, const PriorWeight& prior);

/// One synchronous protocol round: two consensus filters with the same
/// update matrix, one on the information matrices and one on the
/// information states. Participation flags pass through unchanged and
/// each Y is re-symmetrized as (Y + Y^T)/2 after the step.
std::vector<InfoPair> bridge_step(const std::vector<InfoPair>& pairs,
                                  const Eigen::Ref<const Eigen::MatrixXd>& update);

/// Solves Y * mu = y through a symmetric positive definite
/// factorization when the smallest eigenvalue of Y exceeds
/// `threshold`; otherwise the estimate is undefined. Never inverts a
/// near-singular Y.
Estimate extract_estimate(const InfoPair& pair,
                          double threshold = kDefaultEstimateThreshold);

/// Maximum-likelihood mean of independent samples with per-sample SPD
/// covariances, computed in information form with SPD solves. Scaling
/// every covariance by a common positive factor leaves the result
/// unchanged.
Eigen::VectorXd ml_mean_estimate(const std::vector<Eigen::VectorXd>& samples,
                                 const std::vector<Eigen::MatrixXd>& covariances);

/// Arithmetic mean over the participating nodes' initial values; the
/// target every node's estimate converges to.
Eigen::VectorXd participating_average(
    const std::vector<std::optional<Eigen::VectorXd>>& initial_values,
    const std::vector<bool>& participation);

/// The baseline that motivates the protocol: every node averages the
/// participating initial values in its closed neighborhood once (for a
/// non-participating node that is exactly the mean of its value-holding
/// neighbors). The resulting network mean is biased toward values seen
/// by the non-participating nodes, which is why plain seeding fails.
std::vector<double> naive_init_baseline(
    const std::vector<std::optional<double>>& initial_values,
    const std::vector<bool>& participation, const Topology& t);

}  // namespace bridgecons
