// Copyright 2026 the bridgecons developers. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#include "bridgecons/demos.hpp"

namespace bridgecons {

namespace {

std::optional<Eigen::VectorXd> scalar(double v) {
    return Eigen::VectorXd::Constant(1, v);
}

}  // namespace

Scenario fig1_scenario() {
    Topology line = Topology::undirected(4, {{1, 2}, {2, 3}, {3, 4}});
    return Scenario{
        GraphSchedule::single(std::move(line)),
        1,
        {scalar(2.0), std::nullopt, scalar(4.0), scalar(6.0)},
        {true, false, true, true},
        PriorWeight::identity(1),
        WeightPolicy{},
        1e-8,
        5000,
        1,
    };
}

Scenario fig3_scenario() {
    Topology graph = Topology::directed(6, {{1, 2},
                                            {2, 4},
                                            {3, 1},
                                            {4, 3},
                                            {4, 5},
                                            {5, 4},
                                            {5, 6},
                                            {6, 5},
                                            {1, 6},
                                            {6, 1}});
    return Scenario{
        GraphSchedule::single(std::move(graph)),
        1,
        {scalar(1.0), scalar(10.0), scalar(0.0), scalar(9.0), scalar(4.0), scalar(5.0)},
        {true, false, true, false, true, true},
        PriorWeight::identity(1),
        WeightPolicy{},
        1e-8,
        5000,
        1,
    };
}

NaiveBaseline naive_baseline_demo() {
    const Scenario s = fig1_scenario();
    std::vector<std::optional<double>> values;
    values.reserve(s.values.size());
    for (const auto& v : s.values) {
        values.push_back(v ? std::optional<double>((*v)(0)) : std::nullopt);
    }
    NaiveBaseline out;
    out.states = naive_init_baseline(values, s.participation,
                                     s.schedule.frames().front().topology);
    double sum = 0.0;
    for (double v : out.states) sum += v;
    out.mean = sum / static_cast<double>(out.states.size());
    return out;
}

const std::vector<std::string>& demo_names() {
    static const std::vector<std::string> names{"fig1", "fig3", "naive-baseline"};
    return names;
}

}  // namespace bridgecons
