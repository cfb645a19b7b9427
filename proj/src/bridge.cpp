// Copyright 2026 the bridgecons developers. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#include "bridgecons/bridge.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

#include "bridgecons/consensus.hpp"

namespace bridgecons {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kSpdEigenvalueTol = 1e-12;

void require_symmetric(const Eigen::MatrixXd& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch(std::string(what) + " must be square");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
        throw NotPositiveDefinite(std::string(what) + " is not symmetric");
    }
}

double min_eigenvalue(const Eigen::MatrixXd& symmetric) {
    if (symmetric.rows() == 1) {
        return symmetric(0, 0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric,
                                                          Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

Eigen::VectorXd flatten(const Eigen::MatrixXd& m) {
    return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

}  // namespace

PriorWeight::PriorWeight(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() < 1) {
        throw DimensionMismatch("prior weight must be at least 1x1");
    }
    require_symmetric(matrix_, "prior weight");
    if (min_eigenvalue(matrix_) <= kSpdEigenvalueTol) {
        throw NotPositiveDefinite("prior weight must be positive definite");
    }
}

PriorWeight PriorWeight::identity(int dim) {
    return PriorWeight(Eigen::MatrixXd::Identity(dim, dim));
}

std::vector<InfoPair> init_information(
    const std::vector<std::optional<Eigen::VectorXd>>& initial_values,
    const std::vector<bool>& participation, const PriorWeight& prior) {
    if (initial_values.size() != participation.size()) {
        throw DimensionMismatch("values and participation lists differ in length");
    }
    const int m = prior.dim();
    bool any_participant = false;
    std::vector<InfoPair> pairs;
    pairs.reserve(initial_values.size());
    for (std::size_t i = 0; i < initial_values.size(); ++i) {
        if (!participation[i]) {
            pairs.push_back(InfoPair{Eigen::MatrixXd::Zero(m, m),
                                     Eigen::VectorXd::Zero(m), false});
            continue;
        }
        any_participant = true;
        if (!initial_values[i].has_value()) {
            throw MissingValue("participating node " + std::to_string(i + 1) +
                               " has no initial value");
        }
        const Eigen::VectorXd& x0 = *initial_values[i];
        if (x0.size() != m) {
            throw DimensionMismatch("node " + std::to_string(i + 1) +
                                    " value has dimension " +
                                    std::to_string(x0.size()) + ", expected " +
                                    std::to_string(m));
        }
        pairs.push_back(InfoPair{prior.matrix(), prior.matrix() * x0, true});
    }
    if (!any_participant) {
        throw NoParticipants("no node participates");
    }
    return pairs;
}

std::vector<InfoPair> bridge_step(const std::vector<InfoPair>& pairs,
                                  const Eigen::Ref<const Eigen::MatrixXd>& update) {
    if (pairs.empty()) {
        throw DimensionMismatch("need at least one information pair");
    }
    const Eigen::Index m = pairs.front().info_state.size();
    std::vector<Eigen::VectorXd> matrices;
    std::vector<Eigen::VectorXd> states;
    matrices.reserve(pairs.size());
    states.reserve(pairs.size());
    for (const InfoPair& p : pairs) {
        if (p.info_state.size() != m || p.info_matrix.rows() != m ||
            p.info_matrix.cols() != m) {
            throw DimensionMismatch("information pairs differ in dimension");
        }
        matrices.push_back(flatten(p.info_matrix));
        states.push_back(p.info_state);
    }

    // Two consensus filters sharing one update matrix.
    matrices = global_step(matrices, update);
    states = global_step(states, update);

    std::vector<InfoPair> next;
    next.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        Eigen::MatrixXd y = Eigen::Map<const Eigen::MatrixXd>(matrices[i].data(), m, m);
        y = ((y + y.transpose()) / 2.0).eval();
        next.push_back(InfoPair{std::move(y), std::move(states[i]),
                                pairs[i].participating});
    }
    return next;
}

Estimate extract_estimate(const InfoPair& pair, double threshold) {
    if (threshold <= 0.0) {
        throw InvalidArgument("estimate threshold must be > 0");
    }
    if (pair.info_state.size() == 1) {
        const double mass = pair.info_matrix(0, 0);
        if (mass <= threshold) return std::nullopt;
        return Eigen::VectorXd::Constant(1, pair.info_state(0) / mass);
    }
    if (min_eigenvalue(pair.info_matrix) <= threshold) {
        return std::nullopt;
    }
    return pair.info_matrix.llt().solve(pair.info_state).eval();
}

Eigen::VectorXd ml_mean_estimate(const std::vector<Eigen::VectorXd>& samples,
                                 const std::vector<Eigen::MatrixXd>& covariances) {
    if (samples.empty()) {
        throw DimensionMismatch("need at least one sample");
    }
    if (samples.size() != covariances.size()) {
        throw DimensionMismatch("sample and covariance counts differ");
    }
    const Eigen::Index m = samples.front().size();
    Eigen::MatrixXd info_sum = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd state_sum = Eigen::VectorXd::Zero(m);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].size() != m || covariances[i].rows() != m ||
            covariances[i].cols() != m) {
            throw DimensionMismatch("sample " + std::to_string(i + 1) +
                                    " has inconsistent dimensions");
        }
        require_symmetric(covariances[i], "covariance");
        if (min_eigenvalue(covariances[i]) <= kSpdEigenvalueTol) {
            throw NotPositiveDefinite("covariance " + std::to_string(i + 1) +
                                      " is not positive definite");
        }
        const auto llt = covariances[i].llt();
        info_sum += llt.solve(Eigen::MatrixXd::Identity(m, m));
        state_sum += llt.solve(samples[i]);
    }
    return info_sum.llt().solve(state_sum);
}

Eigen::VectorXd participating_average(
    const std::vector<std::optional<Eigen::VectorXd>>& initial_values,
    const std::vector<bool>& participation) {
    if (initial_values.size() != participation.size()) {
        throw DimensionMismatch("values and participation lists differ in length");
    }
    Eigen::VectorXd sum;
    int count = 0;
    for (std::size_t i = 0; i < initial_values.size(); ++i) {
        if (!participation[i]) continue;
        if (!initial_values[i].has_value()) {
            throw MissingValue("participating node " + std::to_string(i + 1) +
                               " has no initial value");
        }
        const Eigen::VectorXd& x = *initial_values[i];
        if (count == 0) {
            sum = x;
        } else {
            if (x.size() != sum.size()) {
                throw DimensionMismatch("participant values differ in dimension");
            }
            sum += x;
        }
        ++count;
    }
    if (count == 0) {
        throw NoParticipants("no node participates");
    }
    return sum / static_cast<double>(count);
}

std::vector<double> naive_init_baseline(
    const std::vector<std::optional<double>>& initial_values,
    const std::vector<bool>& participation, const Topology& t) {
    const auto n = static_cast<std::size_t>(t.node_count());
    if (initial_values.size() != n || participation.size() != n) {
        throw DimensionMismatch("value and participation lists must have one entry per node");
    }
    bool any_participant = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (participation[i]) {
            any_participant = true;
            if (!initial_values[i].has_value()) {
                throw MissingValue("participating node " + std::to_string(i + 1) +
                                   " has no initial value");
            }
        }
    }
    if (!any_participant) {
        throw NoParticipants("no node participates");
    }

    std::vector<double> states(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const int self = static_cast<int>(i) + 1;
        double sum = 0.0;
        int count = 0;
        for (int j = 1; j <= t.node_count(); ++j) {
            if (j != self && !t.has_edge(j, self)) continue;
            if (!participation[static_cast<std::size_t>(j - 1)]) continue;
            sum += *initial_values[static_cast<std::size_t>(j - 1)];
            ++count;
        }
        if (count == 0) {
            throw NoParticipants("node " + std::to_string(self) +
                                 " sees no participating value in its closed neighborhood");
        }
        states[i] = sum / count;
    }
    return states;
}

}  // namespace bridgecons
