#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "rmc/report.hpp"

namespace {

rmc::BigRat parse_rational(const std::string& s) {
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return rmc::BigRat(rmc::BigInt(s));
        rmc::BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return rmc::BigRat(num, den);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--x0", "expected a rational like 2 or -7/3, got " + s);
    }
}

struct CommonOpts {
    std::vector<std::string> x0_raw;
    int64_t pmax = 100;
    int precision = 30;
    bool strict = false;
    bool serial = false;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_x0 = true) {
    if (with_x0)
        cmd->add_option("--x0", o.x0_raw, "specialization points t = x0 (rationals, not 0 or 1)");
    cmd->add_option("--pmax", o.pmax, "prime bound for counting and congruence tests");
    cmd->add_option("--precision", o.precision, "decimal digits for numeric embeddings");
    cmd->add_flag("--strict", o.strict, "non-verified science verdicts fail the exit code");
    cmd->add_flag("--serial", o.serial, "disable parallel counting kernels");
    cmd->add_option("--out", o.out_path, "write the report to a file instead of stdout");
}

int run(const rmc::RunConfig& cfg, const CommonOpts& o) {
    nlohmann::json rep = rmc::run_pipeline(cfg);
    int flag = rmc::science_flag(rep);
    rep["science_flag"] = flag;
    std::string bytes = rmc::emit(rep);
    if (o.out_path.empty()) {
        std::cout << bytes;
    } else {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + o.out_path);
        f << bytes;
    }
    return (cfg.strict && flag != 0) ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"admissible SL2 triples, their hyperelliptic families, and mod-ell "
                 "Frobenius congruences"};
    app.require_subcommand(1);

    std::string traces, family, target;
    int64_t plan_n = 0, ell = 0, p = 0;
    bool deep = false;
    CommonOpts o;

    auto* c_triple = app.add_subcommand("triple", "classify a triple given by traces");
    c_triple->add_option("--traces", traces, "\"x=<elt> z=<elt> [n=<n>]\" with elements [c0,c1,...]@n")
        ->required();
    add_common(c_triple, o, false);

    auto* c_plan = app.add_subcommand("plan", "induction plan for a conductor n");
    c_plan->add_option("--n", plan_n, "conductor")->required();
    add_common(c_plan, o, false);

    auto* c_curve = app.add_subcommand("curve", "family model and specializations");
    c_curve->add_option("--family", family, "legendre | j1728 | ttv-odd:<r> | ttv-even:<r>")
        ->required();
    add_common(c_curve, o);

    auto* c_count = app.add_subcommand("count", "L-polynomial of a fibre at one prime");
    c_count->add_option("--family", family)->required();
    c_count->add_option("--p", p, "odd prime of good reduction")->required();
    add_common(c_count, o);

    auto* c_cong = app.add_subcommand("congruence", "mod-ell Frobenius congruence test");
    c_cong->add_option("--family", family)->required();
    c_cong->add_option("--target", target, "target family or \"eisenstein\"")->required();
    c_cong->add_option("--ell", ell, "odd prime dividing n of the family")->required();
    add_common(c_cong, o);

    auto* c_analyze = app.add_subcommand("analyze", "full pipeline: triple, family, plan, congruences");
    c_analyze->add_option("--traces", traces);
    c_analyze->add_option("--family", family);
    c_analyze->add_flag("--deep", deep, "run congruence checks for every plan step");
    add_common(c_analyze, o);

    CLI11_PARSE(app, argc, argv);

    rmc::RunConfig cfg;
    if (app.got_subcommand(c_triple)) cfg.command = rmc::Command::Triple;
    else if (app.got_subcommand(c_plan)) cfg.command = rmc::Command::Plan;
    else if (app.got_subcommand(c_curve)) cfg.command = rmc::Command::Curve;
    else if (app.got_subcommand(c_count)) cfg.command = rmc::Command::Count;
    else if (app.got_subcommand(c_cong)) cfg.command = rmc::Command::Congruence;
    else cfg.command = rmc::Command::Analyze;

    cfg.traces_text = traces;
    cfg.family_name = family;
    cfg.target_name = target;
    cfg.plan_n = plan_n;
    cfg.ell = ell;
    cfg.p = p;
    cfg.pmax = o.pmax;
    cfg.precision = o.precision;
    cfg.deep = deep;
    cfg.strict = o.strict;
    cfg.parallel = !o.serial;

    try {
        for (const auto& s : o.x0_raw) cfg.x0s.push_back(parse_rational(s));
        return run(cfg, o);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
