#ifndef INSEP_CLI_RUNNER_HPP
#define INSEP_CLI_RUNNER_HPP

#include <ostream>
#include <string>
#include <vector>

#include "insep/artin/oracle.hpp"
#include "insep/cli/report.hpp"
#include "insep/cli/session.hpp"
#include "insep/kaehler/differentials.hpp"
#include "insep/localring/jump.hpp"

namespace insep::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kDomainError = 2, kBoundViolation = 3 };

struct RunOptions {
    bool strict = false;
    std::size_t cap = artin::kDefaultOracleCap;
};

struct RunResult {
    std::vector<Report> reports;
    int exit_code = kOk;
};

inline const char* anchor_of(const std::string& command) {
    if (command == "pdeg") return "p-degree";
    if (command == "trdeg") return "transcendence-degree";
    if (command == "schroer") return "schroer-identity";
    if (command == "edim-tensor") return "tensor-embedding-dimension";
    if (command == "ejump") return "theorem-bound";
    if (command == "edim") return "embedding-dimension";
    if (command == "ecodim") return "embedding-codimension";
    if (command == "height-one") return "height-one-stability";
    if (command == "verify-bounds") return "bound-chain";
    if (command == "verify-structure") return "roots-of-t-structure";
    return "";
}

namespace detail {

using nlohmann::json;

inline kaehler::Reference reference(const Command& c) {
    return c.over && *c.over == "Fp" ? kaehler::Reference::PrimeField : kaehler::Reference::Base;
}

inline std::vector<unsigned> exponents(const Session& s, const Command& c) {
    std::vector<unsigned> e(s.base_vars.size(), 0);
    for (const auto& r : *c.roots) e[ff::index_of(s.base_vars, r.radicand)] = r.exponent;
    return e;
}

inline InseparableExtensionSpec field_spec(const Session& s, const FieldTower& K, const Command& c) {
    return c.roots ? spec_from_roots(s, *c.roots) : InseparableExtensionSpec::height_one(K);
}

inline json jump_json(const localring::JumpReport& r) {
    return {{"edim_before", r.edim_before}, {"edim_after", r.edim_after},       {"ejump", r.ejump},
            {"bound_lemma", r.bound_lemma}, {"bound_theorem", r.bound_theorem}, {"ecodim_after", r.ecodim_after},
            {"satisfied", r.bounds_hold()}};
}

// Fills rep.result; sets rep.status to "violated" when a check fails.
inline void dispatch(const Session& s, const Command& c, const RunOptions& opt, Report& rep) {
    const std::string& n = c.name;
    json& out = rep.result;
    if (n == "pdeg" || n == "trdeg" || n == "schroer") {
        const FieldTower& K = s.towers.at(c.targets[0]);
        const auto ref = reference(c);
        if (n != "trdeg") out["pdeg"] = kaehler::pdeg(K, ref);
        if (n != "pdeg") out["trdeg"] = kaehler::trdeg(K, ref);
        if (n == "schroer") out["predicted_edim"] = kaehler::schroer_predicted_edim(K, ref);
        return;
    }
    if (n == "edim-tensor") {
        const FieldTower& K = s.towers.at(c.targets[0]);
        const auto spec = field_spec(s, K, c);
        out["edim"] = artin::edim_of_base_change(K, spec);
        out["extension_degree"] = spec.degree(K.characteristic());
        return;
    }
    if (n == "verify-structure") {
        const FieldTower& K = s.towers.at(c.targets[0]);
        const auto spec = field_spec(s, K, c);
        const auto S = artin::base_change_structure(K, spec);
        const auto o = artin::verify_structure_oracle(K, spec, S, c.cap.value_or(opt.cap));
        out["edim"] = S.edim();
        out["residue_degree"] = S.residue_degree();
        out["extension_degree"] = S.total_extension_degree;
        json nil = json::array();
        std::size_t q = 1;
        for (const auto& e : S.nilpotents) {
            q = 1;
            for (unsigned i = 0; i < e.order; ++i) q *= K.characteristic();
            nil.push_back({{"element", e.text}, {"order", e.order}, {"index", q}});
        }
        out["nilpotents"] = nil;
        out["oracle"] = {{"dimension_ok", o.dimension_ok},   {"nilpotency_ok", o.nilpotency_ok},
                         {"quotient_ok", o.quotient_ok},     {"cotangent_ok", o.cotangent_ok},
                         {"algebra_dim", o.algebra_dim},     {"quotient_dim", o.quotient_dim},
                         {"cotangent_dim", o.cotangent_dim}, {"nilpotency_index", o.nilpotency_index}};
        out["passed"] = o.passed();
        if (!o.passed()) {
            out["detail"] = o.detail;
            rep.status = "violated";
        }
        return;
    }
    if (n == "height-one" && c.targets.size() == 1) {
        const FieldTower& K = s.towers.at(c.targets[0]);
        const std::size_t v = ff::index_of(s.base_vars, *c.var);
        std::vector<long> jumps;
        for (unsigned e = 1; e <= c.max.value_or(3); ++e) {
            InseparableExtensionSpec one;
            one.entries.push_back({RatFunc::param(K.base_context(), v), e});
            jumps.push_back(long(artin::ejump_field(K, one)));
        }
        out["variable"] = *c.var;
        out["jumps"] = jumps;
        out["stable"] = std::adjacent_find(jumps.begin(), jumps.end(), std::not_equal_to<>()) == jumps.end();
        return;
    }
    if (n == "ejump" && c.targets.size() == 1) {
        const FieldTower& K = s.towers.at(c.targets[0]);
        out["ejump"] = artin::ejump_field(K, spec_from_roots(s, *c.roots));
        return;
    }

    const Ideal& I = s.ideals.at(c.targets[0]).ideal;
    const ClosedPoint& P = s.points.at(c.targets[1]).point;
    if (n == "edim") {
        out["edim"] = localring::edim_at_point(I, P);
    } else if (n == "ecodim") {
        out["edim"] = localring::edim_at_point(I, P);
        out["krull_dim"] = localring::krull_dim(I);
        out["ecodim"] = localring::ecodim_at_point(I, P);
    } else if (n == "height-one") {
        const auto st = localring::verify_height_one_stability(I, P, ff::index_of(s.base_vars, *c.var), c.max.value_or(3));
        out["variable"] = *c.var;
        out["jumps"] = st.jumps;
        out["stable"] = st.stable();
    } else if (n == "ejump") {
        const auto e = exponents(s, c);
        out = jump_json(opt.strict ? localring::verify_bounds(I, P, e) : localring::ejump_at_point(I, P, e));
    } else if (n == "verify-bounds") {
        const auto e = exponents(s, c);
        const auto r = opt.strict ? localring::verify_bounds(I, P, e) : localring::ejump_at_point(I, P, e);
        out = jump_json(r);
        out["ecodim_before"] = r.ecodim_before;
        out["krull_dim"] = r.krull_dim;
        out["base_dim"] = r.base_dim;
        out["point_after"] = r.point_after;
        out["checks"] = {{"nonnegative", r.nonnegative},
                         {"within_lemma", r.within_lemma},
                         {"lemma_within_theorem", r.lemma_within_theorem},
                         {"corollary_edim", r.corollary_edim},
                         {"corollary_ecodim", r.corollary_ecodim}};
        if (!r.bounds_hold()) rep.status = "violated";
    }
}

}  // namespace detail

/// Runs one command. Domain errors are captured in the report.
inline Report run_command(const Session& s, const Command& c, const RunOptions& opt = {}) {
    Report rep;
    rep.command = c.text;
    rep.anchor = anchor_of(c.name);
    try {
        detail::dispatch(s, c, opt, rep);
    } catch (const Error& e) {
        rep.status = dynamic_cast<const BoundViolated*>(&e) ? "violated" : "error";
        rep.error = ErrorInfo{e.name(), e.module(), e.what()};
        rep.result = nlohmann::json::object();
    }
    return rep;
}

/// Folds the last report into the exit code; false means stop.
inline bool record_status(RunResult& out, bool strict) {
    const Report& r = out.reports.back();
    if (r.status == "error") out.exit_code = std::max<int>(out.exit_code, kDomainError);
    if (r.status == "violated" && strict) {
        out.exit_code = kBoundViolation;
        return false;
    }
    return true;
}

/// Runs every command in order. A violation in strict mode stops the run.
inline RunResult run_session(const Session& s, const RunOptions& opt = {}) {
    RunResult out;
    for (const auto& c : s.commands) {
        out.reports.push_back(run_command(s, c, opt));
        if (!record_status(out, opt.strict)) break;
    }
    return out;
}

/// Parses, runs and emits. Diagnostics go to `err`; returns the exit code.
inline int run_text(std::string_view text, const RunOptions& opt, Format format, std::ostream& out,
                    std::ostream& err) {
    Session s;
    try {
        s = parse_session(text);
    } catch (const ParseError& e) {
        err << "line " << e.line() << ", column " << e.column() << ": ParseError: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        err << e.name() << ": " << e.what() << "\n";
        return kInputError;
    }
    const RunResult r = run_session(s, opt);
    out << emit_reports(r.reports, format);
    for (const auto& rep : r.reports)
        if (rep.error) err << rep.command << ": " << rep.error->name << ": " << rep.error->message << "\n";
    return r.exit_code;
}

}  // namespace insep::cli

#endif  // INSEP_CLI_RUNNER_HPP
