#pragma once

#include <json.hpp>

#include "cubeorient/connectivity.hpp"
#include "cubeorient/hypercube.hpp"

namespace cubeorient {

// {verdict, k, witness_deleted: [ids], witness_side: [ids]}; the witness
// lists are empty on a positive verdict.
inline nlohmann::json connectivity_report_to_json(const ConnectivityReport& report) {
    nlohmann::json j;
    j["verdict"] = report.verdict;
    j["k"] = report.k;
    j["witness_deleted"] = report.witness_deleted ? report.witness_deleted->members() : std::vector<NodeId>{};
    j["witness_side"] = report.witness_side ? report.witness_side->members() : std::vector<NodeId>{};
    return j;
}

inline ConnectivityReport connectivity_report_from_json(const nlohmann::json& j, HypercubeDim d) {
    ConnectivityReport report;
    report.verdict = j.at("verdict").get<bool>();
    report.k = j.at("k").get<int>();
    if (!report.verdict) {
        report.witness_deleted = NodeSet::from_range(d, j.at("witness_deleted").get<std::vector<NodeId>>());
        report.witness_side = NodeSet::from_range(d, j.at("witness_side").get<std::vector<NodeId>>());
    }
    return report;
}

}  // namespace cubeorient
