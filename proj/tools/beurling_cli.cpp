// Command-line front end: gen, check, build, verify, bound, eval, audit.
//
// Reports go to stdout as JSON; a short human summary goes to stderr.
// Exit codes: 0 success, 1 validation failure, 2 usage or I/O error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "beurling.hpp"

namespace {

using nlohmann::json;
using namespace beurling;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Options {
    // gen
    std::string kind;
    std::size_t n = 0;
    std::size_t dim = 1;
    double c = 0.5;
    double r0 = 0.0;
    std::uint64_t seed = 0;
    std::string output;
    // shared inputs
    std::string sequence_path;
    std::string system_path;
    std::string alpha_path;
    std::string point;
    double hn_c = 0.9;
    // bound
    std::size_t samples = 10000;
    double boundary_fraction = 0.5;
    // audit
    std::string lemma = "all";
    std::size_t trials = 100000;
    std::size_t audit_dim = 4;
};

void emit(const json& j) { std::cout << io::dump(j); }

json hayman_newman_json(const PointSequence& seq, double c) {
    const auto sorted = sort_by_norm(seq).first;
    return json{{"c", c},
                {"holds", hayman_newman_check(sorted, c)},
                {"ratio", hayman_newman_ratio(sorted)}};
}

GeneratorKind parse_kind(const std::string& kind) {
    if (kind == "radial" || kind == "radial-geometric") return GeneratorKind::RadialGeometric;
    if (kind == "orthogonal" || kind == "orthogonal-directions")
        return GeneratorKind::OrthogonalDirections;
    if (kind == "random" || kind == "random-ball") return GeneratorKind::RandomBall;
    throw DomainError("unknown --kind '" + kind + "'");
}

int cmd_gen(const Options& o, const Tolerances& tol) {
    GeneratorSpec spec;
    spec.kind = parse_kind(o.kind);
    spec.n = o.n;
    spec.dim = o.dim;
    spec.c = o.c;
    spec.r0 = o.r0;
    spec.seed = o.seed;
    const PointSequence seq = generate(spec);
    const CarlesonReport rep = carleson_delta(seq, tol.delta_min);
    const json hn = hayman_newman_json(seq, o.hn_c);

    std::cerr << "generated " << seq.size() << " points in dimension " << seq.dim()
              << ", delta = " << rep.delta << ", Hayman-Newman(c=" << o.hn_c
              << "): " << (hn["holds"].get<bool>() ? "holds" : "fails") << "\n";
    if (o.output.empty()) {
        emit(io::sequence_to_json(seq));
        return kOk;
    }
    io::save_sequence(o.output, seq);
    emit(json{{"output", o.output},
              {"kind", seq.label()},
              {"n", seq.size()},
              {"dim", seq.dim()},
              {"seed", o.seed},
              {"delta", rep.delta},
              {"hayman_newman", hn}});
    return kOk;
}

int cmd_check(const Options& o, const Tolerances& tol) {
    const PointSequence seq = io::load_sequence(o.sequence_path);
    if (seq.empty()) throw FormatError("sequence has no points");
    const CarlesonReport rep = carleson_delta(seq, tol.delta_min);
    json out = io::carleson_to_json(rep);
    out["n"] = seq.size();
    out["dim"] = seq.dim();
    out["hayman_newman"] = hayman_newman_json(seq, o.hn_c);
    out["tolerances"] = tol;
    emit(out);
    std::cerr << "delta = " << rep.delta << (rep.satisfied ? " (Carleson condition holds)"
                                                           : " (Carleson condition fails)")
              << "\n";
    return rep.satisfied ? kOk : kFail;
}

int cmd_build(const Options& o, const Tolerances& tol) {
    const PointSequence seq = io::load_sequence(o.sequence_path);
    if (seq.empty()) throw FormatError("sequence has no points");
    const CarlesonReport rep = carleson_delta(seq, tol.delta_min);
    if (!rep.satisfied) {
        std::cerr << "error: Carleson constant " << rep.delta << " is not above threshold "
                  << rep.threshold << "\n";
        return kFail;
    }
    const BeurlingSystem sys = build_system(seq, tol);
    const json sj = io::system_to_json(sys);
    std::cerr << "built system: n = " << sys.size() << ", delta = " << sys.delta()
              << ", bound = " << sys.bound() << "\n";
    if (o.output.empty()) {
        emit(sj);
    } else {
        io::write_json(o.output, sj);
        emit(json{{"output", o.output},
                  {"n", sys.size()},
                  {"delta", sys.delta()},
                  {"C_delta", sys.C_delta()},
                  {"bound", sys.bound()}});
    }
    return kOk;
}

int cmd_verify(const Options& o, const Tolerances& tol) {
    const Interpolant f(io::load_system(o.system_path, tol), io::load_values(o.alpha_path));
    const auto res = node_residuals(f);
    double worst = 0.0;
    for (double r : res) worst = std::max(worst, r);
    const double limit = tol.node_residual * std::max(1.0, f.alpha_sup());
    const bool ok = worst <= limit;
    emit(json{{"max_residual", worst},
              {"per_node_residuals", res},
              {"limit", limit},
              {"passed", ok},
              {"tolerances", tol}});
    std::cerr << "max node residual " << worst << (ok ? " <= " : " > ") << limit << "\n";
    return ok ? kOk : kFail;
}

int cmd_bound(const Options& o, const Tolerances& tol) {
    const BeurlingSystem sys = io::load_system(o.system_path, tol);
    const NormEstimate est = estimate_constant(sys, o.samples, o.seed, o.boundary_fraction);
    const bool ok = est.empirical_sup <= est.theoretical_bound * (1.0 + tol.bound_rel);
    json out = io::estimate_to_json(est);
    out["delta"] = sys.delta();
    out["C_delta"] = sys.C_delta();
    out["passed"] = ok;
    out["tolerances"] = tol;
    emit(out);
    std::cerr << "empirical sup " << est.empirical_sup << ", bound " << est.theoretical_bound
              << ", ratio " << est.empirical_sup / est.theoretical_bound << "\n";
    return ok ? kOk : kFail;
}

int cmd_eval(const Options& o, const Tolerances& tol) {
    const Interpolant f(io::load_system(o.system_path, tol), io::load_values(o.alpha_path));
    json pj;
    try {
        pj = json::parse(o.point);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("--point: ") + e.what());
    }
    const BallPoint x = io::point_from_json(pj, f.system().dim(), "--point");
    emit(io::to_json(f(x)));
    return kOk;
}

int cmd_audit(const Options& o, const Tolerances& tol) {
    std::vector<AuditReport> reports;
    const std::string lemma = canonical_audit_id(o.lemma);
    std::optional<PointSequence> seq;
    if (!o.sequence_path.empty()) seq = io::load_sequence(o.sequence_path);

    if (lemma == "all") {
        for (const auto& id : audit_ids()) reports.push_back(run_audit(id, o.trials, o.seed, o.audit_dim, tol));
        if (seq) reports.push_back(audit_carleson_sums(*seq, tol));
    } else if (lemma == "carleson-sums") {
        if (!seq) throw DomainError("--lemma carleson-sums needs --sequence");
        reports.push_back(audit_carleson_sums(*seq, tol));
    } else {
        reports.push_back(run_audit(lemma, o.trials, o.seed, o.audit_dim, tol));
    }

    bool ok = true;
    json arr = json::array();
    for (const auto& r : reports) {
        ok = ok && r.passed();
        arr.push_back(io::audit_to_json(r));
        std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.lemma_id << ": " << r.failures << "/"
                  << r.trials << " failures, worst " << r.worst_margin << "\n";
    }
    emit(json{{"seed", o.seed},
              {"trials", o.trials},
              {"dim", o.audit_dim},
              {"passed", ok},
              {"reports", arr},
              {"tolerances", tol}});
    return ok ? kOk : kFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Beurling interpolating functions on the Hilbert ball"};
    app.require_subcommand(1);
    Options o;

    auto* gen = app.add_subcommand("gen", "Generate a point sequence");
    gen->add_option("--kind", o.kind, "radial | orthogonal | random")->required();
    gen->add_option("--n", o.n, "Number of points")->required()->check(CLI::PositiveNumber);
    gen->add_option("--dim", o.dim, "Dimension")->check(CLI::PositiveNumber);
    gen->add_option("--c", o.c, "Radial ratio: 1 - r_{k+1} = c (1 - r_k)");
    gen->add_option("--r0", o.r0, "First radius");
    gen->add_option("--seed", o.seed, "Seed for random kinds");
    gen->add_option("--hn-c", o.hn_c, "Ratio used for the Hayman-Newman check");
    gen->add_option("-o,--output", o.output, "Sequence file to write (stdout if absent)");

    auto* check = app.add_subcommand("check", "Carleson constant and Hayman-Newman check");
    check->add_option("sequence", o.sequence_path, "Sequence file")->required();
    check->add_option("--hn-c", o.hn_c, "Ratio used for the Hayman-Newman check");

    auto* build = app.add_subcommand("build", "Build the Beurling system of a sequence");
    build->add_option("sequence", o.sequence_path, "Sequence file")->required();
    build->add_option("-o,--output", o.output, "System file to write (stdout if absent)");

    auto* verify = app.add_subcommand("verify", "Node residuals of an interpolant");
    verify->add_option("system", o.system_path, "System file")->required();
    verify->add_option("alpha", o.alpha_path, "Values file")->required();

    auto* bound = app.add_subcommand("bound", "Sampled sup of sum_j |F_j| against the bound");
    bound->add_option("system", o.system_path, "System file")->required();
    bound->add_option("--samples", o.samples, "Number of sample points")->check(CLI::PositiveNumber);
    bound->add_option("--seed", o.seed, "Sampling seed");
    bound->add_option("--boundary-fraction", o.boundary_fraction, "Share of near-sphere samples")
        ->check(CLI::Range(0.0, 1.0));

    auto* eval = app.add_subcommand("eval", "Evaluate an interpolant at a point");
    eval->add_option("system", o.system_path, "System file")->required();
    eval->add_option("alpha", o.alpha_path, "Values file")->required();
    eval->add_option("--point", o.point, "Point as JSON [[re,im],...]")->required();

    auto* audit = app.add_subcommand("audit", "Randomized checks of the supporting inequalities");
    audit->add_option("--lemma", o.lemma, "Audit id or 'all'");
    audit->add_option("--trials", o.trials, "Trials per audit")->check(CLI::PositiveNumber);
    audit->add_option("--seed", o.seed, "Seed");
    audit->add_option("--dim", o.audit_dim, "Dimension for vector audits")->check(CLI::PositiveNumber);
    audit->add_option("--sequence", o.sequence_path, "Sequence file for carleson-sums");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const Tolerances tol = tolerances_from_env();
        if (gen->parsed()) return cmd_gen(o, tol);
        if (check->parsed()) return cmd_check(o, tol);
        if (build->parsed()) return cmd_build(o, tol);
        if (verify->parsed()) return cmd_verify(o, tol);
        if (bound->parsed()) return cmd_bound(o, tol);
        if (eval->parsed()) return cmd_eval(o, tol);
        if (audit->parsed()) return cmd_audit(o, tol);
    } catch (const ConditioningError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
