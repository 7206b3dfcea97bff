#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace g2fun {

// Outcome of one certification step. `witness` is populated on failure
// with enough data to reproduce the discrepancy (an evaluation point and
// the mismatching values).
struct CertReport {
    std::string check;
    bool pass = false;
    double elapsed_ms = 0.0;
    std::optional<nlohmann::json> witness;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["check"] = check;
        j["pass"] = pass;
        j["elapsed_ms"] = elapsed_ms;
        if (witness) j["witness"] = *witness;
        return j;
    }
};

// Outcome of one sampled numeric residual check.
struct ResidualReport {
    std::string name;
    double max_residual = 0.0;
    int samples = 0;
    bool pass = false;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["name"] = name;
        j["max_residual"] = max_residual;
        j["samples"] = samples;
        j["pass"] = pass;
        return j;
    }
};

} // namespace g2fun
