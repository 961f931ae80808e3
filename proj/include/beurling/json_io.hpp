#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ball.hpp"
#include "config.hpp"
#include "error.hpp"
#include "interpolation.hpp"
#include "lemma_audit.hpp"
#include "metric.hpp"
#include "sequence.hpp"
#include "system.hpp"

namespace beurling::io {

using nlohmann::json;

// Complex numbers travel as [re, im]; doubles are written in shortest
// round-trip form, so save -> load -> save is byte-stable.

inline json to_json(complex z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const CVector& v) {
    json a = json::array();
    for (const auto& z : v.coords()) a.push_back(to_json(z));
    return a;
}

inline json to_json(const std::vector<complex>& values) {
    json a = json::array();
    for (const auto& z : values) a.push_back(to_json(z));
    return a;
}

inline complex complex_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw FormatError(where + ": expected [re, im]");
    const complex z(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw FormatError(where + ": non-finite value");
    return z;
}

inline std::vector<complex> complex_list_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw FormatError(where + ": expected an array of [re, im]");
    std::vector<complex> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(complex_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline BallPoint point_from_json(const json& j, std::size_t dim, const std::string& where) {
    auto coords = complex_list_from_json(j, where);
    if (coords.size() != dim)
        throw FormatError(where + ": has " + std::to_string(coords.size()) +
                          " coordinates, expected " + std::to_string(dim));
    try {
        return BallPoint(CVector(std::move(coords)));
    } catch (const DomainError& e) {
        throw FormatError(where + ": " + e.what());
    }
}

inline std::size_t dim_from_json(const json& j) {
    if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0)
        throw FormatError("'dim' must be a positive integer");
    return j["dim"].get<std::size_t>();
}

inline std::vector<BallPoint> points_from_json(const json& j, std::size_t dim) {
    if (!j.is_array()) throw FormatError("'points' must be an array");
    std::vector<BallPoint> pts;
    pts.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        pts.push_back(point_from_json(j[i], dim, "points[" + std::to_string(i) + "]"));
    return pts;
}

inline json points_to_json(const PointSequence& seq) {
    json a = json::array();
    for (const auto& p : seq.points()) a.push_back(to_json(p.vec()));
    return a;
}

// Sequence file: {"dim": int, "label": str, "points": [[[re,im],...], ...]}

inline json sequence_to_json(const PointSequence& seq) {
    return json{{"dim", seq.dim()}, {"label", seq.label()}, {"points", points_to_json(seq)}};
}

inline PointSequence sequence_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("sequence file must hold a JSON object");
    const std::size_t dim = dim_from_json(j);
    std::string label;
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw FormatError("'label' must be a string");
        label = j["label"].get<std::string>();
    }
    if (!j.contains("points")) throw FormatError("missing 'points'");
    return PointSequence(dim, points_from_json(j["points"], dim), std::move(label));
}

// Values file: {"alpha": [[re,im], ...]}

inline json values_to_json(const std::vector<complex>& alpha) { return json{{"alpha", to_json(alpha)}}; }

inline std::vector<complex> values_from_json(const json& j) {
    if (!j.is_object() || !j.contains("alpha")) throw FormatError("values file needs an 'alpha' array");
    return complex_list_from_json(j["alpha"], "alpha");
}

// System file: {"dim", "delta", "C_delta", "bound", "perm", "points", "B_diag", "A_diag"}.
// Points are stored in sorted order; perm[s] is the input index of point s.

inline json system_to_json(const BeurlingSystem& sys) {
    return json{{"dim", sys.dim()},
                {"delta", sys.delta()},
                {"C_delta", sys.C_delta()},
                {"bound", sys.bound()},
                {"perm", sys.perm()},
                {"points", points_to_json(sys.points())},
                {"B_diag", to_json(sys.B_diag())},
                {"A_diag", to_json(sys.A_diag())}};
}

/// Rebuilds the system from its points and checks every stored derived
/// quantity against the recomputation; any difference is a FormatError.
inline BeurlingSystem system_from_json(const json& j, const Tolerances& tol = {}) {
    if (!j.is_object()) throw FormatError("system file must hold a JSON object");
    for (const char* key : {"dim", "delta", "C_delta", "bound", "perm", "points", "B_diag", "A_diag"})
        if (!j.contains(key)) throw FormatError(std::string("system file: missing '") + key + "'");
    const std::size_t dim = dim_from_json(j);
    auto pts = points_from_json(j["points"], dim);
    if (!j["perm"].is_array()) throw FormatError("'perm' must be an array");
    std::vector<std::size_t> perm;
    for (const auto& v : j["perm"]) {
        if (!v.is_number_unsigned()) throw FormatError("'perm' entries must be non-negative integers");
        perm.push_back(v.get<std::size_t>());
    }
    BeurlingSystem sys = [&] {
        try {
            return BeurlingSystem::restore(PointSequence(dim, std::move(pts)), std::move(perm), tol);
        } catch (const DomainError& e) {
            throw FormatError(std::string("system file: ") + e.what());
        }
    }();
    auto same = [](const json& stored, double value) {
        return stored.is_number() && stored.get<double>() == value;
    };
    if (!same(j["delta"], sys.delta()) || !same(j["C_delta"], sys.C_delta()) ||
        !same(j["bound"], sys.bound()) ||
        complex_list_from_json(j["B_diag"], "B_diag") != sys.B_diag() ||
        complex_list_from_json(j["A_diag"], "A_diag") != sys.A_diag())
        throw FormatError("system file: stored values disagree with its points");
    return sys;
}

// Reports.

inline json carleson_to_json(const CarlesonReport& r) {
    return json{{"delta", r.delta},
                {"per_index_products", r.per_index_products},
                {"satisfied", r.satisfied},
                {"threshold", r.threshold}};
}

inline json audit_to_json(const AuditReport& r) {
    return json{{"lemma_id", r.lemma_id},
                {"kind", r.kind == AuditKind::Inequality ? "inequality" : "identity"},
                {"trials", r.trials},
                {"failures", r.failures},
                {"worst_margin", r.worst_margin},
                {"tolerance", r.tolerance},
                {"worst_case_input", r.worst_case_input}};
}

inline json estimate_to_json(const NormEstimate& e) {
    return json{{"empirical_sup", e.empirical_sup},
                {"samples_used", e.samples_used},
                {"theoretical_bound", e.theoretical_bound},
                {"ratio", e.empirical_sup / e.theoretical_bound},
                {"argmax_point", to_json(e.argmax_point.vec())},
                {"seed", e.seed},
                {"boundary_fraction", e.boundary_fraction}};
}

// Files.

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json read_json(const std::string& path) {
    const std::string text = read_text(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline void write_json(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << dump(j);
    if (!out) throw IoError("write failed for '" + path + "'");
}

inline PointSequence load_sequence(const std::string& path) {
    try {
        return sequence_from_json(read_json(path));
    } catch (const DomainError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

inline void save_sequence(const std::string& path, const PointSequence& seq) {
    write_json(path, sequence_to_json(seq));
}

inline std::vector<complex> load_values(const std::string& path) { return values_from_json(read_json(path)); }

inline BeurlingSystem load_system(const std::string& path, const Tolerances& tol = {}) {
    return system_from_json(read_json(path), tol);
}

} // namespace beurling::io
