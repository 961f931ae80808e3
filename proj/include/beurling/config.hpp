#pragma once

#include <cstdlib>
#include <string>

#include <json.hpp>

#include "error.hpp"

namespace beurling {

/// Every numerical tolerance used by the library and the CLI.
struct Tolerances {
    double node_residual = 1e-9;  // |f(x_n) - alpha_n| / max(1, |alpha|_inf)
    double bound_rel = 1e-6;      // empirical sup <= bound * (1 + bound_rel)
    double delta_min = 1e-6;      // Carleson constant counted as satisfied above this
    double margin = 1e-12;        // inequality audits fail below -margin
    double identity = 1e-12;      // identity audits fail above this gap
    double conditioning = 1e-6;   // |B_j(x_j)| >= delta^2 (1 - conditioning)
    double invariant = 1e-9;      // slack on Re A_j(x_j) <= 1 + 2 log(1/delta)
};

inline void to_json(nlohmann::json& j, const Tolerances& t) {
    j = nlohmann::json{{"node_residual", t.node_residual}, {"bound_rel", t.bound_rel},
                       {"delta_min", t.delta_min},         {"margin", t.margin},
                       {"identity", t.identity},           {"conditioning", t.conditioning},
                       {"invariant", t.invariant}};
}

/// Applies overrides from a JSON object; unknown keys are rejected.
inline Tolerances apply_overrides(Tolerances t, const nlohmann::json& j) {
    if (!j.is_object()) throw FormatError("tolerance override must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number()) throw FormatError("tolerance '" + key + "' must be a number");
        const double v = value.get<double>();
        if (!(v >= 0.0)) throw FormatError("tolerance '" + key + "' must be non-negative");
        if (key == "node_residual") t.node_residual = v;
        else if (key == "bound_rel") t.bound_rel = v;
        else if (key == "delta_min") t.delta_min = v;
        else if (key == "margin") t.margin = v;
        else if (key == "identity") t.identity = v;
        else if (key == "conditioning") t.conditioning = v;
        else if (key == "invariant") t.invariant = v;
        else throw FormatError("unknown tolerance '" + key + "'");
    }
    return t;
}

/// Defaults, overridden by the BEURLING_TOL environment variable when set.
/// The variable holds a JSON object such as {"node_residual": 1e-8}; a bare
/// number overrides node_residual only.
inline Tolerances tolerances_from_env() {
    Tolerances t;
    const char* raw = std::getenv("BEURLING_TOL");
    if (raw == nullptr || *raw == '\0') return t;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("BEURLING_TOL: ") + e.what());
    }
    if (j.is_number()) j = nlohmann::json{{"node_residual", j}};
    return apply_overrides(t, j);
}

} // namespace beurling
