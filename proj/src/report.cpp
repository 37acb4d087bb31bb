#include "rmc/report.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

#include "rmc/counting.hpp"
#include "rmc/curves.hpp"
#include "rmc/cyclo.hpp"
#include "rmc/triples.hpp"

namespace rmc {

using nlohmann::json;

namespace {

const char* command_name(Command c) {
    switch (c) {
        case Command::Triple: return "triple";
        case Command::Plan: return "plan";
        case Command::Curve: return "curve";
        case Command::Count: return "count";
        case Command::Congruence: return "congruence";
        case Command::Analyze: return "analyze";
    }
    return "?";
}

json json_ring(const Ring& r) {
    return json{{"n", r.n()}, {"degree", r.degree()}, {"min_poly", r.min_poly().to_string()}};
}

json json_residue(const ResidueData& rd) {
    return json{{"ell", rd.ell},
                {"modulus", fp::to_string(rd.modulus)},
                {"ramification_e", rd.ramification_e},
                {"inertia_k", rd.inertia_k}};
}

// Traces "x=<elt> z=<elt> [n=<n>]"; integer-constant traces are coerced into
// the common ring when the conductors differ.
std::pair<RingElt, RingElt> parse_traces(const std::string& text) {
    std::istringstream is(text);
    std::string tok, xs, zs, ns;
    while (is >> tok) {
        if (tok.rfind("x=", 0) == 0) xs = tok.substr(2);
        else if (tok.rfind("z=", 0) == 0) zs = tok.substr(2);
        else if (tok.rfind("n=", 0) == 0) ns = tok.substr(2);
        else throw std::invalid_argument("bad traces token: " + tok);
    }
    if (xs.empty() || zs.empty())
        throw std::invalid_argument("traces need x=<elt> and z=<elt>: " + text);
    RingElt x = parse_element(xs), z = parse_element(zs);
    if (x.ring() != z.ring()) {
        if (x.is_rational_integer()) x = z.ring().integer(x.rational_value());
        else if (z.is_rational_integer()) z = x.ring().integer(z.rational_value());
        else
            throw std::invalid_argument("traces live in different rings: " + text);
    }
    if (!ns.empty()) {
        int64_t n = std::stoll(ns);
        if (n != x.ring().n())
            throw std::invalid_argument("traces n= does not match the element conductors");
    }
    return {x, z};
}

json json_embeddings(const RingElt& e, int digits) {
    json arr = json::array();
    for (const auto& v : numeric_embeddings(e, digits)) arr.push_back(format_embedding(v, digits));
    return arr;
}

json build_triple_block(const AdmissibleTriple& t, int precision) {
    json b;
    b["orders"] = {t.orders[0], t.orders[1], t.orders[2]};
    b["n"] = t.n;
    b["ring"] = json_ring(ring_for(t.n));
    b["traces"] = {t.traces[0].to_string(), t.traces[1].to_string(), t.traces[2].to_string()};
    b["kappa"] = t.kappa.to_string();
    b["gate8_blocked"] = t.gate8_blocked;
    auto rc = reflection_classify(t.sigma0, t.sigma1, t.sigmaInf);
    b["shape"] = rc.shape == TripleShape::AllSl2
                     ? "all_sl2"
                     : (rc.shape == TripleShape::Dihedral ? "dihedral" : "invalid");
    ValidationReport vr = validate(t);
    b["valid"] = vr.pass;
    if (!vr.pass) b["violations"] = vr.violations;
    b["trace_embeddings"] = {
        {"precision", precision},
        {"x", json_embeddings(t.traces[0], precision)},
        {"z", json_embeddings(t.traces[2], precision)},
    };
    return b;
}

json build_plan_block(const ReductionPlan& plan) {
    json b;
    b["n"] = plan.n;
    if (!plan.rejected_reason.empty()) {
        b["rejected_reason"] = plan.rejected_reason;
        return b;
    }
    json steps = json::array();
    for (const auto& s : plan.steps)
        steps.push_back(json{{"ell", s.ell},
                             {"n_before", s.n_before},
                             {"n_after", s.n_after},
                             {"d_before", s.d_before},
                             {"d_after", s.d_after}});
    b["steps"] = steps;
    b["terminal"] = plan.terminal;
    return b;
}

json build_family_block(const CurveFamily& fam, const std::vector<BigRat>& x0s) {
    json b;
    b["kind"] = fam.name();
    if (fam.r) b["r"] = fam.r;
    b["n"] = fam.n();
    b["ring"] = json_ring(fam.ring_spec);
    b["hpoly"] = fam.hpoly.to_string();
    b["expected_traces"] = {fam.expected_traces[0].to_string(),
                            fam.expected_traces[1].to_string(),
                            fam.expected_traces[2].to_string()};
    json specs = json::array();
    for (const auto& x0 : x0s) {
        json s;
        s["x0"] = x0.str();
        try {
            SpecializedCurve c = specialize(fam, x0);
            s["model"] = c.poly.to_string();
            s["genus"] = c.genus;
            json bp = json::array();
            for (const auto& p : c.bad_primes) bp.push_back(p.str());
            s["bad_primes"] = bp;
        } catch (const std::exception& e) {
            s["error"] = e.what();
        }
        specs.push_back(s);
    }
    if (!x0s.empty()) b["specializations"] = specs;
    return b;
}

json json_twist(const TwistChar& chi, const std::vector<int64_t>& goods, int64_t ell) {
    json t;
    t["description"] = chi.describe();
    t["modulus"] = chi.modulus();
    t["ell_exponent"] = chi.ell_exp;
    json vals = json::array();
    for (int64_t p : goods) vals.push_back(json::array({p, chi.eval_mod_ell(p, ell)}));
    t["values_mod_ell"] = vals;
    return t;
}

json build_congruence_block(const CongruenceReport& cr) {
    json b;
    b["ell"] = cr.ell;
    b["x0"] = cr.x0.str();
    b["pmax"] = cr.pmax;
    b["mode"] = cr.mode == CongruenceMode::CurveTarget ? "curve_target" : "eisenstein_target";
    b["family"] = cr.family;
    b["target"] = cr.target;
    b["residue"] = json_residue(cr.residue);
    std::vector<int64_t> goods;
    for (const auto& row : cr.per_prime) goods.push_back(row.p);
    if (cr.twist_found) {
        b["twist"] = json_twist(cr.twist, goods, cr.ell);
        if (cr.mode == CongruenceMode::EisensteinTarget)
            b["twist2"] = json_twist(cr.twist2, goods, cr.ell);
    } else {
        b["twist"] = nullptr;
    }
    json rows = json::array();
    for (const auto& row : cr.per_prime)
        rows.push_back(json{
            {"p", row.p}, {"lhs", row.lhs}, {"rhs", row.rhs}, {"match", row.match}});
    b["per_prime"] = rows;
    b["verdict"] = verdict_name(cr.verdict);
    return b;
}

void validate_config(const RunConfig& c) {
    if (c.pmax < 2) throw std::invalid_argument("config: pmax must be >= 2");
    if (c.precision < 1) throw std::invalid_argument("config: precision must be positive");
    for (const auto& x0 : c.x0s)
        if (x0 == 0 || x0 == 1)
            throw std::invalid_argument("config: x0 must avoid 0 and 1");
    bool has_traces = !c.traces_text.empty(), has_family = !c.family_name.empty();
    switch (c.command) {
        case Command::Triple:
            if (!has_traces) throw std::invalid_argument("triple: --traces is required");
            if (has_family) throw std::invalid_argument("triple: --family conflicts with --traces");
            break;
        case Command::Plan:
            if (c.plan_n < 1) throw std::invalid_argument("plan: --n must be positive");
            break;
        case Command::Curve:
        case Command::Count:
        case Command::Congruence:
            if (!has_family) throw std::invalid_argument("this command requires --family");
            if (has_traces) throw std::invalid_argument("--traces conflicts with --family");
            if (c.x0s.empty()) throw std::invalid_argument("this command requires --x0");
            break;
        case Command::Analyze:
            if (has_traces == has_family)
                throw std::invalid_argument("analyze: exactly one of --traces/--family");
            break;
    }
    if (c.command == Command::Count && c.p < 2)
        throw std::invalid_argument("count: --p must be an odd prime");
    if (c.command == Command::Congruence) {
        if (c.ell < 3) throw std::invalid_argument("congruence: --ell must be an odd prime");
        if (c.target_name.empty())
            throw std::invalid_argument("congruence: --target is required");
    }
}

}  // namespace

json run_pipeline(const RunConfig& config) {
    validate_config(config);
    json rep;
    rep["version"] = kToolVersion;
    json cfg;
    cfg["command"] = command_name(config.command);
    if (!config.traces_text.empty()) cfg["traces"] = config.traces_text;
    if (!config.family_name.empty()) cfg["family"] = config.family_name;
    if (!config.target_name.empty()) cfg["target"] = config.target_name;
    if (config.plan_n) cfg["n"] = config.plan_n;
    if (!config.x0s.empty()) {
        json xs = json::array();
        for (const auto& x0 : config.x0s) xs.push_back(x0.str());
        cfg["x0"] = xs;
    }
    if (config.ell) cfg["ell"] = config.ell;
    if (config.p) cfg["p"] = config.p;
    cfg["pmax"] = config.pmax;
    cfg["precision"] = config.precision;
    cfg["deep"] = config.deep;
    cfg["strict"] = config.strict;
    rep["config"] = cfg;

    auto family_and_triple = [&](std::optional<CurveFamily>& fam,
                                 std::optional<AdmissibleTriple>& triple,
                                 std::string& family_error) {
        if (!config.family_name.empty()) {
            fam = family_from_name(config.family_name);
            triple = from_traces(fam->expected_traces[0], fam->expected_traces[2]);
        } else {
            auto [x, z] = parse_traces(config.traces_text);
            triple = from_traces(x, z);
            try {
                fam = family_from_triple(*triple);
            } catch (const UnsupportedFamily& e) {
                family_error = e.what();
            }
        }
    };

    switch (config.command) {
        case Command::Plan: {
            rep["plan"] = build_plan_block(reduction_plan(config.plan_n));
            break;
        }
        case Command::Triple: {
            auto [x, z] = parse_traces(config.traces_text);
            AdmissibleTriple t = from_traces(x, z);
            json tb = build_triple_block(t, config.precision);
            try {
                tb["family_match"] = family_from_triple(t).name();
            } catch (const UnsupportedFamily& e) {
                tb["family_match"] = nullptr;
                tb["family_error"] = e.what();
            }
            rep["triple"] = tb;
            break;
        }
        case Command::Curve: {
            CurveFamily fam = family_from_name(config.family_name);
            rep["family"] = build_family_block(fam, config.x0s);
            break;
        }
        case Command::Count: {
            CurveFamily fam = family_from_name(config.family_name);
            rep["family"] = build_family_block(fam, config.x0s);
            json counting = json::array();
            for (const auto& x0 : config.x0s) {
                SpecializedCurve c = specialize(fam, x0);
                LPolynomial L = l_polynomial(c, config.p, config.parallel);
                counting.push_back(json{{"x0", x0.str()},
                                        {"p", config.p},
                                        {"lpoly", L.coeffs},
                                        {"lpoly_text", L.to_string()}});
            }
            rep["counting"] = counting;
            break;
        }
        case Command::Congruence: {
            CurveFamily fam = family_from_name(config.family_name);
            rep["family"] = build_family_block(fam, config.x0s);
            std::optional<CurveFamily> target;
            if (config.target_name != "eisenstein")
                target = family_from_name(config.target_name);
            json blocks = json::array();
            for (const auto& x0 : config.x0s)
                blocks.push_back(build_congruence_block(congruence_check(
                    fam, target, x0, config.ell, config.pmax, config.parallel)));
            rep["congruence"] = blocks;
            break;
        }
        case Command::Analyze: {
            std::optional<CurveFamily> fam;
            std::optional<AdmissibleTriple> triple;
            std::string family_error;
            family_and_triple(fam, triple, family_error);
            json tb = build_triple_block(*triple, config.precision);
            tb["family_match"] = fam ? json(fam->name()) : json(nullptr);
            rep["triple"] = tb;
            if (fam) rep["family"] = build_family_block(*fam, config.x0s);
            else rep["family"] = json{{"error", family_error}};

            ReductionPlan plan = reduction_plan(triple->n);
            rep["plan"] = build_plan_block(plan);

            if (!config.x0s.empty()) {
                json ord;
                ord["n"] = triple->n;
                json sel = json::array();
                for (const auto& c : ordinary_candidates(triple->n, config.x0s))
                    sel.push_back(c.str());
                ord["candidates"] = sel;
                rep["ordinary"] = ord;
            }

            if (fam && !config.x0s.empty() && plan.rejected_reason.empty()) {
                json congs = json::array();
                CurveFamily current = *fam;
                for (const auto& step : plan.steps) {
                    LiftResult lift = lift_traces(current.expected_orders,
                                                  current.expected_traces, step.ell);
                    std::optional<CurveFamily> target;
                    if (!lift.eisenstein) {
                        try {
                            target = family_from_triple(from_traces(lift.x, lift.z));
                        } catch (const UnsupportedFamily& e) {
                            congs.push_back(json{{"ell", step.ell}, {"error", e.what()}});
                            break;
                        }
                    }
                    for (const auto& x0 : config.x0s)
                        congs.push_back(build_congruence_block(congruence_check(
                            current, target, x0, step.ell, config.pmax, config.parallel)));
                    if (!config.deep || lift.eisenstein) break;
                    current = *target;
                }
                if (!congs.empty()) rep["congruence"] = congs;
            }
            break;
        }
    }
    return rep;
}

std::string emit(const json& report) { return report.dump(2) + "\n"; }

int science_flag(const json& report) {
    int flag = 0;
    if (report.contains("congruence"))
        for (const auto& b : report["congruence"])
            if (b.contains("verdict") && b["verdict"] != "verified") flag = 2;
    return flag;
}

}  // namespace rmc
