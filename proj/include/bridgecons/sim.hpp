// Copyright 2026 the bridgecons developers. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bridgecons/bridge.hpp"
#include "bridgecons/errors.hpp"
#include "bridgecons/graph.hpp"

namespace bridgecons {

/// A complete experiment description: who talks to whom over time,
/// who participates with which initial value, and when to stop.
struct Scenario {
    GraphSchedule schedule;
    int m = 1;
    std::vector<std::optional<Eigen::VectorXd>> values;
    std::vector<bool> participation;
    PriorWeight prior = PriorWeight::identity(1);
    WeightPolicy policy{};
    double tol = 1e-8;
    std::int64_t max_rounds = 5000;
    std::int64_t record_every = 1;
};

enum class Severity { error, warning };

/// One validation result. Errors block a run; warnings flag setups
/// whose convergence the update rule does not guarantee.
struct Finding {
    Severity severity = Severity::error;
    std::string code;
    std::string message;
};

/// Checks a scenario without running it. Errors: no participants,
/// Metropolis weights on a directed frame, any dimension or length
/// mismatch, a participant without a value. Warnings: an unbalanced
/// frame (the average is not preserved), or no window with a strongly
/// connected edge union (some node may never be reached).
std::vector<Finding> validate(const Scenario& scenario);

struct TraceRow {
    std::int64_t round = 0;
    int node = 0;                // 1-based
    Estimate estimate;           // nullopt while undefined
    double info_mass = 0.0;      // scalar a with Y = a * C
    double disagreement = 0.0;   // NaN with fewer than two defined estimates
};

/// Per-round snapshots of every node, decimated by record_every but
/// always including round 0 and the final round.
struct Trace {
    int m = 1;
    std::vector<TraceRow> rows;
};

struct RunResult {
    bool converged = false;
    std::int64_t rounds = 0;
    std::vector<Estimate> final_estimates;
    Eigen::VectorXd target;     // the participating average
    double max_error = 0.0;     // max node distance from target; inf if undefined
};

struct ScenarioRun {
    RunResult result;
    Trace trace;
};

/// Runs the protocol: information initialization, then one paired
/// consensus step per round, stopping once every node's estimate is
/// defined and their disagreement is at most tol, or at max_rounds.
/// Deterministic: identical scenarios produce byte-identical traces.
ScenarioRun run_scenario(const Scenario& scenario);

/// Writes the trace as CSV with header
/// round,node,estimate_1..estimate_m,info_mass,disagreement.
/// Undefined estimates and NaN disagreements serialize as empty
/// fields; reals carry 17 significant digits so output is bit-stable.
void write_trace(const Trace& trace, std::ostream& out);
void write_trace(const Trace& trace, const std::filesystem::path& destination);

/// Parses the JSON scenario format (see README). Unknown fields are
/// rejected; defaults: m = 1, C = identity, policy uniform_degree with
/// d_margin = 1, record_every = 1, periodic = false.
Scenario parse_scenario(const std::string& text);

/// parse_scenario plus validation; findings of error severity throw
/// ValidationError.
Scenario load_scenario(const std::filesystem::path& source);

/// Inverse of parse_scenario, with deterministic field order.
std::string serialize_scenario(const Scenario& scenario);

void save_scenario(const Scenario& scenario, const std::filesystem::path& destination);

}  // namespace bridgecons
