// Copyright 2026 the bridgecons developers. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "bridgecons/sim.hpp"
#include "json.hpp"

namespace bridgecons {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void reject_unknown_fields(const json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.contains(item.key())) {
            throw ParseError("unknown field '" + item.key() + "' in " + where);
        }
    }
}

const json& require_field(const json& obj, const std::string& key,
                          const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError("missing field '" + key + "' in " + where);
    }
    return *it;
}

std::int64_t as_integer(const json& v, const std::string& field) {
    if (!v.is_number_integer()) {
        throw ParseError("field '" + field + "' must be an integer");
    }
    return v.get<std::int64_t>();
}

double as_number(const json& v, const std::string& field) {
    if (!v.is_number()) {
        throw ParseError("field '" + field + "' must be a number");
    }
    return v.get<double>();
}

bool as_boolean(const json& v, const std::string& field) {
    if (!v.is_boolean()) {
        throw ParseError("field '" + field + "' must be a boolean");
    }
    return v.get<bool>();
}

std::vector<Edge> parse_edges(const json& v, const std::string& field) {
    if (!v.is_array()) {
        throw ParseError("field '" + field + "' must be an array of [from, to] pairs");
    }
    std::vector<Edge> edges;
    edges.reserve(v.size());
    for (const json& e : v) {
        if (!e.is_array() || e.size() != 2) {
            throw ParseError("each entry of '" + field + "' must be a [from, to] pair");
        }
        edges.push_back(Edge{static_cast<int>(as_integer(e[0], field)),
                             static_cast<int>(as_integer(e[1], field))});
    }
    return edges;
}

GraphSchedule parse_schedule(const json& root, int n) {
    const json& frames_json = require_field(root, "frames", "scenario");
    if (!frames_json.is_array() || frames_json.empty()) {
        throw ParseError("field 'frames' must be a non-empty array");
    }
    std::vector<GraphSchedule::Frame> frames;
    frames.reserve(frames_json.size());
    for (std::size_t f = 0; f < frames_json.size(); ++f) {
        const std::string where = "frames[" + std::to_string(f) + "]";
        const json& frame = frames_json[f];
        if (!frame.is_object()) {
            throw ParseError(where + " must be an object");
        }
        reject_unknown_fields(frame, {"edges", "undirected", "duration"}, where);
        std::vector<Edge> edges = parse_edges(require_field(frame, "edges", where),
                                              where + ".edges");
        const bool undirected =
            frame.contains("undirected")
                ? as_boolean(frame["undirected"], where + ".undirected")
                : false;
        const std::int64_t duration =
            frame.contains("duration")
                ? as_integer(frame["duration"], where + ".duration")
                : 1;
        try {
            Topology t = undirected ? Topology::undirected(n, std::move(edges))
                                    : Topology::directed(n, std::move(edges));
            frames.push_back(GraphSchedule::Frame{std::move(t), duration});
        } catch (const InvalidArgument& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    const bool periodic =
        root.contains("periodic") ? as_boolean(root["periodic"], "periodic") : false;
    try {
        return GraphSchedule(std::move(frames), periodic);
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("frames: ") + e.what());
    }
}

std::vector<std::optional<Eigen::VectorXd>> parse_values(const json& v, int m) {
    if (!v.is_array()) {
        throw ParseError("field 'values' must be an array with one entry per node");
    }
    std::vector<std::optional<Eigen::VectorXd>> values;
    values.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string where = "values[" + std::to_string(i) + "]";
        const json& entry = v[i];
        if (entry.is_null()) {
            values.emplace_back(std::nullopt);
        } else if (entry.is_number()) {
            if (m != 1) {
                throw ParseError(where + " must be an array of " + std::to_string(m) +
                                 " numbers");
            }
            values.emplace_back(Eigen::VectorXd::Constant(1, entry.get<double>()));
        } else if (entry.is_array()) {
            Eigen::VectorXd x(entry.size());
            for (std::size_t c = 0; c < entry.size(); ++c) {
                x(static_cast<Eigen::Index>(c)) = as_number(entry[c], where);
            }
            values.emplace_back(std::move(x));
        } else {
            throw ParseError(where + " must be null, a number, or an array of numbers");
        }
    }
    return values;
}

PriorWeight parse_prior(const json& v) {
    Eigen::MatrixXd c;
    if (v.is_number()) {
        c = Eigen::MatrixXd::Constant(1, 1, v.get<double>());
    } else if (v.is_array()) {
        const auto rows = static_cast<Eigen::Index>(v.size());
        for (std::size_t r = 0; r < v.size(); ++r) {
            const json& row = v[r];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
                throw ParseError("field 'C' must be a square matrix given as rows");
            }
            if (r == 0) c.resize(rows, rows);
            for (std::size_t k = 0; k < row.size(); ++k) {
                c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) =
                    as_number(row[k], "C");
            }
        }
        if (rows == 0) {
            throw ParseError("field 'C' must not be empty");
        }
    } else {
        throw ParseError("field 'C' must be a number or a square matrix");
    }
    try {
        return PriorWeight(std::move(c));
    } catch (const Error& e) {
        throw ValidationError(std::string("C: ") + e.what());
    }
}

WeightPolicy parse_policy(const json& v) {
    if (!v.is_object()) {
        throw ParseError("field 'policy' must be an object {kind, d_margin}");
    }
    reject_unknown_fields(v, {"kind", "d_margin"}, "policy");
    const json& kind_json = require_field(v, "kind", "policy");
    if (!kind_json.is_string()) {
        throw ParseError("field 'policy.kind' must be a string");
    }
    const std::string kind = kind_json.get<std::string>();
    WeightPolicy policy;
    if (kind == "uniform_degree") {
        policy.kind = WeightKind::UniformDegree;
        if (v.contains("d_margin")) {
            const std::int64_t margin = as_integer(v["d_margin"], "policy.d_margin");
            if (margin < 0) {
                throw ParseError("field 'policy.d_margin' must be >= 0");
            }
            policy.d_margin = static_cast<int>(margin);
        }
    } else if (kind == "metropolis") {
        policy.kind = WeightKind::Metropolis;
        if (v.contains("d_margin")) {
            throw ParseError("field 'policy.d_margin' applies to uniform_degree only");
        }
        policy.d_margin = 0;
    } else {
        throw ParseError("field 'policy.kind' must be 'uniform_degree' or 'metropolis'");
    }
    return policy;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!root.is_object()) {
        throw ParseError("scenario must be a JSON object");
    }
    reject_unknown_fields(root,
                          {"n", "m", "frames", "periodic", "values", "participation",
                           "C", "policy", "tol", "max_rounds", "record_every"},
                          "scenario");

    const auto n64 = as_integer(require_field(root, "n", "scenario"), "n");
    if (n64 < 1) {
        throw ParseError("field 'n' must be >= 1");
    }
    const int n = static_cast<int>(n64);
    const int m = root.contains("m")
                      ? static_cast<int>(as_integer(root["m"], "m"))
                      : 1;
    if (m < 1) {
        throw ParseError("field 'm' must be >= 1");
    }

    GraphSchedule schedule = parse_schedule(root, n);

    auto values = parse_values(require_field(root, "values", "scenario"), m);

    const json& part_json = require_field(root, "participation", "scenario");
    if (!part_json.is_array()) {
        throw ParseError("field 'participation' must be an array of booleans");
    }
    std::vector<bool> participation;
    participation.reserve(part_json.size());
    for (std::size_t i = 0; i < part_json.size(); ++i) {
        participation.push_back(
            as_boolean(part_json[i], "participation[" + std::to_string(i) + "]"));
    }

    PriorWeight prior = root.contains("C")
                            ? parse_prior(root["C"])
                            : PriorWeight::identity(m);
    WeightPolicy policy =
        root.contains("policy") ? parse_policy(root["policy"]) : WeightPolicy{};

    const double tol = as_number(require_field(root, "tol", "scenario"), "tol");
    if (!(tol > 0.0)) {
        throw ParseError("field 'tol' must be > 0");
    }
    const std::int64_t max_rounds =
        as_integer(require_field(root, "max_rounds", "scenario"), "max_rounds");
    if (max_rounds < 1) {
        throw ParseError("field 'max_rounds' must be >= 1");
    }
    std::int64_t record_every = 1;
    if (root.contains("record_every")) {
        record_every = as_integer(root["record_every"], "record_every");
        if (record_every < 1) {
            throw ParseError("field 'record_every' must be >= 1");
        }
    }

    return Scenario{std::move(schedule), m,          std::move(values),
                    std::move(participation),        std::move(prior),
                    policy,              tol,        max_rounds,
                    record_every};
}

Scenario load_scenario(const std::filesystem::path& source) {
    std::ifstream in(source);
    if (!in) {
        throw IoFailure("cannot open " + source.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoFailure("failed reading " + source.string());
    }
    Scenario scenario = parse_scenario(buffer.str());
    std::string errors;
    for (const Finding& f : validate(scenario)) {
        if (f.severity != Severity::error) continue;
        if (!errors.empty()) errors += "; ";
        errors += f.code + ": " + f.message;
    }
    if (!errors.empty()) {
        throw ValidationError(source.string() + ": " + errors);
    }
    return scenario;
}

std::string serialize_scenario(const Scenario& s) {
    ordered_json root;
    root["n"] = s.schedule.node_count();
    root["m"] = s.m;
    root["frames"] = ordered_json::array();
    for (const GraphSchedule::Frame& frame : s.schedule.frames()) {
        ordered_json edges = ordered_json::array();
        for (const Edge& e : frame.topology.edges()) {
            if (frame.topology.undirected() && e.from > e.to) {
                continue;  // emit each undirected link once
            }
            edges.push_back({e.from, e.to});
        }
        root["frames"].push_back({{"edges", std::move(edges)},
                                  {"undirected", frame.topology.undirected()},
                                  {"duration", frame.duration}});
    }
    root["periodic"] = s.schedule.periodic();
    root["values"] = ordered_json::array();
    for (const auto& value : s.values) {
        if (!value.has_value()) {
            root["values"].push_back(nullptr);
            continue;
        }
        ordered_json components = ordered_json::array();
        for (Eigen::Index c = 0; c < value->size(); ++c) {
            components.push_back((*value)(c));
        }
        root["values"].push_back(std::move(components));
    }
    root["participation"] = s.participation;
    ordered_json prior = ordered_json::array();
    for (Eigen::Index r = 0; r < s.prior.matrix().rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index c = 0; c < s.prior.matrix().cols(); ++c) {
            row.push_back(s.prior.matrix()(r, c));
        }
        prior.push_back(std::move(row));
    }
    root["C"] = std::move(prior);
    if (s.policy.kind == WeightKind::Metropolis) {
        root["policy"] = {{"kind", "metropolis"}};
    } else {
        root["policy"] = {{"kind", "uniform_degree"}, {"d_margin", s.policy.d_margin}};
    }
    root["tol"] = s.tol;
    root["max_rounds"] = s.max_rounds;
    root["record_every"] = s.record_every;
    return root.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& destination) {
    std::ofstream out(destination);
    if (!out) {
        throw IoFailure("cannot open " + destination.string() + " for writing");
    }
    out << serialize_scenario(scenario);
    out.flush();
    if (!out) {
        throw IoFailure("failed writing " + destination.string());
    }
}

}  // namespace bridgecons
