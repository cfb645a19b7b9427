// Copyright 2026 the bridgecons developers. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#include "bridgecons/sim.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "bridgecons/consensus.hpp"
#include "bridgecons/format.hpp"

namespace bridgecons {

namespace {

void add(std::vector<Finding>& findings, Severity severity, std::string code,
         std::string message) {
    findings.push_back(Finding{severity, std::move(code), std::move(message)});
}

}  // namespace

std::vector<Finding> validate(const Scenario& s) {
    std::vector<Finding> findings;
    const auto n = static_cast<std::size_t>(s.schedule.node_count());

    if (s.m < 1) {
        add(findings, Severity::error, "DimensionMismatch",
            "state dimension m must be >= 1, got " + std::to_string(s.m));
    }
    if (s.values.size() != n) {
        add(findings, Severity::error, "DimensionMismatch",
            "values lists " + std::to_string(s.values.size()) + " nodes, schedule has " +
                std::to_string(n));
    }
    if (s.participation.size() != n) {
        add(findings, Severity::error, "DimensionMismatch",
            "participation lists " + std::to_string(s.participation.size()) +
                " nodes, schedule has " + std::to_string(n));
    }
    if (s.prior.dim() != s.m) {
        add(findings, Severity::error, "DimensionMismatch",
            "C is " + std::to_string(s.prior.dim()) + "x" + std::to_string(s.prior.dim()) +
                " but m = " + std::to_string(s.m));
    }

    if (s.participation.size() == n && s.values.size() == n) {
        int participants = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (s.participation[i]) {
                ++participants;
                if (!s.values[i].has_value()) {
                    add(findings, Severity::error, "MissingValue",
                        "participating node " + std::to_string(i + 1) +
                            " has no initial value");
                    continue;
                }
            }
            if (s.values[i].has_value() && s.values[i]->size() != s.m) {
                add(findings, Severity::error, "DimensionMismatch",
                    "node " + std::to_string(i + 1) + " value has dimension " +
                        std::to_string(s.values[i]->size()) + ", expected m = " +
                        std::to_string(s.m));
            }
        }
        if (participants == 0) {
            add(findings, Severity::error, "NoParticipants", "no node participates");
        }
    }

    for (std::size_t f = 0; f < s.schedule.frames().size(); ++f) {
        const Topology& t = s.schedule.frames()[f].topology;
        if (s.policy.kind == WeightKind::Metropolis && !t.undirected()) {
            add(findings, Severity::error, "MetropolisOnDirected",
                "policy metropolis but frame " + std::to_string(f) + " is directed");
        }
        if (!is_balanced(t)) {
            add(findings, Severity::warning, "Unbalanced",
                "frame " + std::to_string(f) +
                    " is not balanced; the participating average is not preserved");
        }
    }

    // Connectivity over windows: a periodic schedule can at best union
    // all of its frames; a terminating one ends up on its last frame
    // alone.
    const bool connectable =
        s.schedule.periodic()
            ? union_strongly_connected(s.schedule, 0, s.schedule.period() - 1)
            : union_strongly_connected(s.schedule, s.schedule.period() - 1, 0);
    if (!connectable) {
        add(findings, Severity::warning, "NotStronglyConnected",
            s.schedule.periodic()
                ? "union of all frames is not strongly connected"
                : "the persisting last frame is not strongly connected");
    }
    return findings;
}

namespace {

double defined_only_disagreement(const std::vector<Estimate>& estimates) {
    std::vector<Eigen::VectorXd> defined;
    defined.reserve(estimates.size());
    for (const Estimate& e : estimates) {
        if (e.has_value()) defined.push_back(*e);
    }
    if (defined.size() < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return disagreement(defined);
}

void append_rows(Trace& trace, std::int64_t round,
                 const std::vector<Estimate>& estimates,
                 const std::vector<Eigen::VectorXd>& mass, double row_disagreement) {
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        trace.rows.push_back(TraceRow{round, static_cast<int>(i) + 1, estimates[i],
                                      mass[i](0), row_disagreement});
    }
}

}  // namespace

ScenarioRun run_scenario(const Scenario& s) {
    {
        std::string errors;
        for (const Finding& f : validate(s)) {
            if (f.severity != Severity::error) continue;
            if (!errors.empty()) errors += "; ";
            errors += f.code + ": " + f.message;
        }
        if (!errors.empty()) {
            throw ValidationError(errors);
        }
    }
    if (s.tol <= 0.0) {
        throw InvalidArgument("tol must be > 0");
    }
    if (s.max_rounds < 1) {
        throw InvalidArgument("max_rounds must be >= 1");
    }
    if (s.record_every < 1) {
        throw InvalidArgument("record_every must be >= 1");
    }

    const std::size_t n = s.values.size();
    std::vector<InfoPair> pairs = init_information(s.values, s.participation, s.prior);

    // The scalar information mass runs through the same update kernel
    // as Y and y, so sum(mass) tracks |P| on balanced schedules.
    std::vector<Eigen::VectorXd> mass(n);
    for (std::size_t i = 0; i < n; ++i) {
        mass[i] = Eigen::VectorXd::Constant(1, s.participation[i] ? 1.0 : 0.0);
    }

    UpdateMatrixCache cache(s.schedule, s.policy);
    Trace trace;
    trace.m = s.m;

    RunResult result;
    result.target = participating_average(s.values, s.participation);

    std::vector<Estimate> estimates(n);
    std::int64_t round = 0;
    while (true) {
        bool all_defined = true;
        for (std::size_t i = 0; i < n; ++i) {
            estimates[i] = extract_estimate(pairs[i]);
            all_defined = all_defined && estimates[i].has_value();
        }

        double full_disagreement = std::numeric_limits<double>::infinity();
        if (all_defined) {
            std::vector<Eigen::VectorXd> points;
            points.reserve(n);
            for (const Estimate& e : estimates) points.push_back(*e);
            full_disagreement = disagreement(points);
        }
        const bool converged = all_defined && full_disagreement <= s.tol;
        const bool final_round = converged || round == s.max_rounds;

        if (round % s.record_every == 0 || final_round) {
            append_rows(trace, round, estimates, mass,
                        defined_only_disagreement(estimates));
        }
        if (final_round) {
            result.converged = converged;
            result.rounds = round;
            break;
        }

        const Eigen::MatrixXd& update = cache.at_round(round);
        pairs = bridge_step(pairs, update);
        mass = global_step(mass, update);
        ++round;
    }

    result.final_estimates = estimates;
    result.max_error = 0.0;
    for (const Estimate& e : estimates) {
        if (!e.has_value()) {
            result.max_error = std::numeric_limits<double>::infinity();
            break;
        }
        result.max_error = std::max(result.max_error, (*e - result.target).norm());
    }
    return ScenarioRun{std::move(result), std::move(trace)};
}

void write_trace(const Trace& trace, std::ostream& out) {
    out << "round,node";
    for (int c = 1; c <= trace.m; ++c) {
        out << ",estimate_" << c;
    }
    out << ",info_mass,disagreement\n";
    for (const TraceRow& row : trace.rows) {
        out << row.round << ',' << row.node;
        if (row.estimate.has_value()) {
            for (Eigen::Index c = 0; c < row.estimate->size(); ++c) {
                out << ',' << format_real((*row.estimate)(c));
            }
        } else {
            for (int c = 0; c < trace.m; ++c) {
                out << ',';
            }
        }
        out << ',' << format_real(row.info_mass) << ',';
        if (!std::isnan(row.disagreement)) {
            out << format_real(row.disagreement);
        }
        out << '\n';
    }
    if (!out) {
        throw IoFailure("failed writing trace");
    }
}

void write_trace(const Trace& trace, const std::filesystem::path& destination) {
    std::ofstream out(destination);
    if (!out) {
        throw IoFailure("cannot open " + destination.string() + " for writing");
    }
    write_trace(trace, out);
    out.flush();
    if (!out) {
        throw IoFailure("failed writing " + destination.string());
    }
}

}  // namespace bridgecons
