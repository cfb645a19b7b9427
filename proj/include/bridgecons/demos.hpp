// Copyright 2026 the bridgecons developers. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <string>
#include <vector>

#include "bridgecons/sim.hpp"

namespace bridgecons {

/// Four nodes on an undirected line 1-2-3-4; node 2 joins with no
/// value. The other three hold 2, 4, and 6, so every estimate
/// converges to their average, 4.
Scenario fig1_scenario();

/// Six nodes on a balanced directed graph; nodes 2 and 4 relay but do
/// not participate (their recorded values 10 and 9 are ignored). The
/// participants hold 1, 0, 4, and 5, so the network converges to 2.5.
Scenario fig3_scenario();

struct NaiveBaseline {
    std::vector<double> states;
    double mean = 0.0;
};

/// What happens on the fig1 network if nodes simply average the values
/// in their closed neighborhoods once: states (2, 3, 5, 5) whose mean
/// is 3.75, not the participating average 4.
NaiveBaseline naive_baseline_demo();

/// The closed set of demo names accepted by the CLI.
const std::vector<std::string>& demo_names();

}  // namespace bridgecons
