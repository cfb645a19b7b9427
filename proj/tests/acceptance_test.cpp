// Copyright 2026 the bridgecons developers. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
//
// Acceptance suite: one criterion per function, one PASS/FAIL line
// each. Everything runs on fixed seeds so failures reproduce.
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bridgecons/consensus.hpp"
#include "bridgecons/demos.hpp"
#include "bridgecons/sim.hpp"
#include "test_support.hpp"

using namespace bridgecons;
using namespace testsupport;

namespace {

struct Checker {
    bool ok = true;
    long checks = 0;
    std::string detail;

    void expect(bool condition, const std::string& what) {
        ++checks;
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

Eigen::VectorXd scalar(double v) { return Eigen::VectorXd::Constant(1, v); }

// ---------------------------------------------------------------- 1
// Bundled six-node directed scenario: every estimate within 1e-6 of
// 2.5 in at most 5000 rounds, in under a second.
void criterion_fig3(Checker& c) {
    const auto start = std::chrono::steady_clock::now();
    const ScenarioRun run = run_scenario(fig3_scenario());
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    c.expect(run.result.converged, "did not converge");
    c.expect(run.result.rounds <= 5000,
             "took " + std::to_string(run.result.rounds) + " rounds");
    c.expect(seconds < 1.0, "took " + std::to_string(seconds) + " s");
    for (std::size_t i = 0; i < run.result.final_estimates.size(); ++i) {
        const Estimate& e = run.result.final_estimates[i];
        c.expect(e.has_value(), "node " + std::to_string(i + 1) + " undefined");
        if (e) {
            c.expect(std::abs((*e)(0) - 2.5) <= 1e-6,
                     "node " + std::to_string(i + 1) + " at " +
                         std::to_string((*e)(0)));
        }
    }
}

// ---------------------------------------------------------------- 2
// Bundled line-graph scenario: estimates within 1e-6 of 4.
void criterion_fig1(Checker& c) {
    const ScenarioRun run = run_scenario(fig1_scenario());
    c.expect(run.result.converged, "did not converge");
    c.expect(run.result.rounds <= 5000,
             "took " + std::to_string(run.result.rounds) + " rounds");
    for (const Estimate& e : run.result.final_estimates) {
        c.expect(e.has_value(), "undefined estimate");
        if (e) c.expect(std::abs((*e)(0) - 4.0) <= 1e-6, "estimate off 4");
    }
}

// ---------------------------------------------------------------- 3
// One-pass neighborhood averaging produces (2, 3, 5, 5), mean 3.75.
void criterion_naive_baseline(Checker& c) {
    const NaiveBaseline b = naive_baseline_demo();
    const std::vector<double> expected{2.0, 3.0, 5.0, 5.0};
    c.expect(b.states == expected, "states differ from (2, 3, 5, 5)");
    c.expect(b.mean == 3.75, "mean is " + std::to_string(b.mean));
}

// ---------------------------------------------------------------- 4
// Over 200 randomized balanced scenarios, the sums of Y and y are
// invariant under every step to 1e-12 relative.
void criterion_conservation(Checker& c) {
    std::mt19937 rng(41001);
    std::uniform_int_distribution<int> size(2, 10);
    std::uniform_int_distribution<int> dim(1, 3);

    for (int trial = 0; trial < 200; ++trial) {
        const int n = size(rng);
        const int m = dim(rng);

        std::vector<GraphSchedule::Frame> frames;
        frames.push_back({trial % 5 == 0 ? random_balanced_disconnected(rng, n)
                                         : random_balanced_strongly_connected(rng, n),
                          1});
        const bool switching = trial % 3 == 0;
        if (switching) {
            frames.push_back({random_balanced_strongly_connected(rng, n), 1});
        }
        const GraphSchedule schedule(std::move(frames), switching);

        const auto participation = random_participation(rng, n);
        std::vector<std::optional<Eigen::VectorXd>> values(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            if (participation[static_cast<std::size_t>(i)]) {
                values[static_cast<std::size_t>(i)] = random_vector(rng, m, -8.0, 8.0);
            }
        }
        const PriorWeight prior = trial % 2 == 0 ? PriorWeight::identity(m)
                                                 : PriorWeight(random_spd(rng, m));
        auto pairs = init_information(values, participation, prior);

        Eigen::MatrixXd sum_y0 = Eigen::MatrixXd::Zero(m, m);
        Eigen::VectorXd sum_s0 = Eigen::VectorXd::Zero(m);
        for (const auto& p : pairs) {
            sum_y0 += p.info_matrix;
            sum_s0 += p.info_state;
        }

        UpdateMatrixCache cache(schedule, WeightPolicy{});
        for (std::int64_t step = 0; step < 40; ++step) {
            pairs = bridge_step(pairs, cache.at_round(step));
            Eigen::MatrixXd sum_y = Eigen::MatrixXd::Zero(m, m);
            Eigen::VectorXd sum_s = Eigen::VectorXd::Zero(m);
            for (const auto& p : pairs) {
                sum_y += p.info_matrix;
                sum_s += p.info_state;
            }
            c.expect((sum_y - sum_y0).cwiseAbs().maxCoeff() <=
                         1e-12 * std::max(1.0, sum_y0.cwiseAbs().maxCoeff()),
                     "info matrix sum drifted at trial " + std::to_string(trial));
            c.expect((sum_s - sum_s0).cwiseAbs().maxCoeff() <=
                         1e-12 * std::max(1.0, sum_s0.cwiseAbs().maxCoeff()),
                     "info state sum drifted at trial " + std::to_string(trial));
            if (!c.ok) return;
        }
    }
}

// ---------------------------------------------------------------- 5
// Over 200 randomized graphs, the composed per-node update equals the
// dense stacked product to 1e-12.
void criterion_oracle_equivalence(Checker& c) {
    std::mt19937 rng(41002);
    std::uniform_int_distribution<int> size(1, 10);
    std::uniform_int_distribution<int> dim(1, 3);
    std::uniform_real_distribution<double> density(0.0, 0.8);
    std::uniform_int_distribution<int> margin(0, 2);

    for (int trial = 0; trial < 200; ++trial) {
        const int n = size(rng);
        const bool metropolis = trial % 4 == 0;
        const Topology t = metropolis ? random_connected_undirected(rng, n, 0.4)
                                      : random_digraph(rng, n, density(rng));
        const WeightPolicy policy =
            metropolis ? WeightPolicy{WeightKind::Metropolis, 0}
                       : WeightPolicy{WeightKind::UniformDegree, margin(rng)};
        const Eigen::MatrixXd psi = update_matrix(t, policy);
        const auto states = random_states(rng, n, dim(rng), -10.0, 10.0);

        const auto dense = kron_step_oracle(states, psi);
        const auto stacked = global_step(states, psi);
        for (int i = 1; i <= n; ++i) {
            const Eigen::VectorXd local =
                local_update(round_input_for(t, psi, states, i));
            c.expect(local == stacked[static_cast<std::size_t>(i - 1)],
                     "per-node and stacked updates differ at trial " +
                         std::to_string(trial));
            c.expect(
                (local - dense[static_cast<std::size_t>(i - 1)]).cwiseAbs().maxCoeff() <=
                    1e-12,
                "per-node update disagrees with the dense product at trial " +
                    std::to_string(trial));
        }
        if (!c.ok) return;
    }
}

// ---------------------------------------------------------------- 6
// Over 100 randomized static balanced strongly connected scenarios,
// final estimates match the participating average to 1e-8 everywhere.
void criterion_limit(Checker& c) {
    std::mt19937 rng(41003);
    std::uniform_int_distribution<int> size(2, 10);
    std::uniform_int_distribution<int> dim(1, 3);

    for (int trial = 0; trial < 100; ++trial) {
        const int n = size(rng);
        const int m = dim(rng);
        const auto participation = random_participation(rng, n);
        std::vector<std::optional<Eigen::VectorXd>> values(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            if (participation[static_cast<std::size_t>(i)]) {
                values[static_cast<std::size_t>(i)] = random_vector(rng, m, -8.0, 8.0);
            }
        }
        const Scenario s{
            GraphSchedule::single(random_balanced_strongly_connected(rng, n)),
            m,
            values,
            participation,
            trial % 2 == 0 ? PriorWeight::identity(m) : PriorWeight(random_spd(rng, m)),
            WeightPolicy{},
            1e-11,
            100000,
            10000};
        const ScenarioRun run = run_scenario(s);
        c.expect(run.result.converged, "trial " + std::to_string(trial) +
                                           " did not converge");
        const Eigen::VectorXd target = participating_average(values, participation);
        for (const Estimate& e : run.result.final_estimates) {
            c.expect(e.has_value(), "undefined estimate at trial " +
                                        std::to_string(trial));
            if (e) {
                c.expect((*e - target).norm() <= 1e-8,
                         "estimate misses the participating average at trial " +
                             std::to_string(trial));
            }
        }
        if (!c.ok) return;
    }
}

// ---------------------------------------------------------------- 7
// Over 50 randomized scenarios run twice with C = I and a random SPD
// C, per-round defined estimates agree to 1e-10.
void criterion_prior_invariance(Checker& c) {
    std::mt19937 rng(41004);
    std::uniform_int_distribution<int> size(2, 10);
    std::uniform_int_distribution<int> dim(1, 3);

    for (int trial = 0; trial < 50; ++trial) {
        const int n = size(rng);
        const int m = dim(rng);
        const auto participation = random_participation(rng, n);
        std::vector<std::optional<Eigen::VectorXd>> values(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            if (participation[static_cast<std::size_t>(i)]) {
                values[static_cast<std::size_t>(i)] = random_vector(rng, m, -8.0, 8.0);
            }
        }
        Scenario with_identity{
            GraphSchedule::single(random_balanced_strongly_connected(rng, n)),
            m,
            values,
            participation,
            PriorWeight::identity(m),
            WeightPolicy{},
            1e-10,
            20000,
            1};
        Scenario with_random = with_identity;
        with_random.prior = PriorWeight(random_spd(rng, m));

        const ScenarioRun run_a = run_scenario(with_identity);
        const ScenarioRun run_b = run_scenario(with_random);

        std::map<std::pair<std::int64_t, int>, Estimate> by_key;
        for (const TraceRow& row : run_a.trace.rows) {
            by_key[{row.round, row.node}] = row.estimate;
        }
        bool compared = false;
        for (const TraceRow& row : run_b.trace.rows) {
            const auto it = by_key.find({row.round, row.node});
            if (it == by_key.end() || !it->second || !row.estimate) continue;
            compared = true;
            c.expect((*it->second - *row.estimate).cwiseAbs().maxCoeff() <= 1e-10,
                     "estimates depend on C at trial " + std::to_string(trial) +
                         ", round " + std::to_string(row.round));
        }
        c.expect(compared, "no comparable defined estimates at trial " +
                               std::to_string(trial));
        if (!c.ok) return;
    }
}

// ---------------------------------------------------------------- 8
// Alternating disconnected-but-jointly-connected halves converge to
// the participating average; either half alone never does.
void criterion_switching(Checker& c) {
    const Topology half_a = Topology::undirected(4, {{1, 2}, {3, 4}});
    const Topology half_b = Topology::undirected(4, {{2, 3}, {4, 1}});
    const std::vector<std::optional<Eigen::VectorXd>> values{
        scalar(0.0), std::nullopt, scalar(10.0), std::nullopt};
    const std::vector<bool> participation{true, false, true, false};

    const Scenario alternating{GraphSchedule({{half_a, 1}, {half_b, 1}}, true),
                               1,
                               values,
                               participation,
                               PriorWeight::identity(1),
                               WeightPolicy{},
                               1e-10,
                               20000,
                               1000};
    const ScenarioRun run = run_scenario(alternating);
    c.expect(run.result.converged, "switching scenario did not converge");
    for (const Estimate& e : run.result.final_estimates) {
        c.expect(e.has_value(), "undefined estimate under switching");
        if (e) {
            c.expect(std::abs((*e)(0) - 5.0) <= 1e-8,
                     "estimate misses 5 under switching");
        }
    }

    Scenario stuck = alternating;
    stuck.schedule = GraphSchedule::single(half_a);
    stuck.max_rounds = 3000;
    const ScenarioRun stuck_run = run_scenario(stuck);
    c.expect(!stuck_run.result.converged,
             "a disconnected half converged on its own");
    c.expect(stuck_run.result.rounds == 3000, "static run stopped early");
}

// ---------------------------------------------------------------- 9
// Two CLI invocations of `demo fig3 --trace` produce byte-identical
// trace files.
void criterion_determinism(Checker& c) {
    const char* cli = std::getenv("BRIDGECONS_CLI");
    c.expect(cli != nullptr, "BRIDGECONS_CLI is not set");
    if (!cli) return;

    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path();
    const std::string tag = std::to_string(::getpid());
    const fs::path trace_a = dir / ("bridgecons_acc_a_" + tag + ".csv");
    const fs::path trace_b = dir / ("bridgecons_acc_b_" + tag + ".csv");

    auto invoke = [&](const fs::path& trace) {
        const std::string command = std::string("\"") + cli + "\" demo fig3 --trace " +
                                    trace.string() + " > /dev/null 2>&1";
        const int status = std::system(command.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    c.expect(invoke(trace_a) == 0, "first demo invocation failed");
    c.expect(invoke(trace_b) == 0, "second demo invocation failed");

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };
    const std::string a = slurp(trace_a);
    const std::string b = slurp(trace_b);
    c.expect(!a.empty(), "trace file is empty");
    c.expect(a == b, "trace files differ between runs");
    c.expect(a.rfind("round,node,estimate_1,info_mass,disagreement\n", 0) == 0,
             "trace header unexpected");
    fs::remove(trace_a);
    fs::remove(trace_b);
}

struct Criterion {
    int id;
    std::string summary;
    std::function<void(Checker&)> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "bundled fig3 scenario reaches 2.5 +- 1e-6 within 5000 rounds in < 1 s",
         criterion_fig3},
        {2, "bundled fig1 scenario reaches 4 +- 1e-6 within 5000 rounds",
         criterion_fig1},
        {3, "naive baseline reports states (2, 3, 5, 5) with mean exactly 3.75",
         criterion_naive_baseline},
        {4, "sums of Y and y are conserved to 1e-12 over 200 balanced scenarios",
         criterion_conservation},
        {5, "per-node, stacked, and dense-product updates agree to 1e-12 over 200 graphs",
         criterion_oracle_equivalence},
        {6, "estimates reach the participating average to 1e-8 in 100 random scenarios",
         criterion_limit},
        {7, "defined estimates are C-invariant to 1e-10 across 50 paired runs",
         criterion_prior_invariance},
        {8, "switching halves converge to 1e-8; a static half never does",
         criterion_switching},
        {9, "repeated `demo fig3 --trace` runs write byte-identical files",
         criterion_determinism},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        Checker checker;
        try {
            criterion.body(checker);
        } catch (const std::exception& e) {
            checker.expect(false, std::string("exception: ") + e.what());
        }
        if (checker.ok) {
            std::printf("criterion %d: PASS - %s (%ld checks)\n", criterion.id,
                        criterion.summary.c_str(), checker.checks);
        } else {
            ++failures;
            std::printf("criterion %d: FAIL - %s (%s)\n", criterion.id,
                        criterion.summary.c_str(), checker.detail.c_str());
        }
    }
    return failures == 0 ? 0 : 1;
}
