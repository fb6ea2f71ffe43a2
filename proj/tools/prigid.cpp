#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "prigid/accept.hpp"

using namespace prigid;

namespace {

enum Exit { kPass = 0, kVerify = 1, kUsage = 2, kResource = 3 };

struct Args {
    u64 p = 3;
    u64 seed = AcceptOptions{}.seed;
    std::optional<long long> prec;
    std::optional<u64> bound;
    std::string json_out;
    std::string reverify_in;
    bool quick = false;
    std::string golden;

    std::string sub;
    std::string target;
    std::string kind = "lower-p";
    int n = 3;
    int depth = 1;
    std::string a;
    std::vector<std::string> basis;
    std::string poly;
};

void emit(const json& r, const Args& args) {
    const std::string text = r.dump(2) + "\n";
    if (args.json_out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(args.json_out);
    if (!out) throw usage_error("cannot write " + args.json_out);
    out << text;
    std::cout << r["command"].get<std::string>() << ": " << r["verdict"].dump() << "\n";
}

GroupLimits limits(const Args& args) {
    GroupLimits lim;
    if (args.bound) lim.order_bound = *args.bound;
    return lim;
}

FieldDescriptor field(const Args& args) { return parse_field(args.target, args.p); }

json run_group(const Args& a) {
    const GroupLimits lim = limits(a);
    if (a.sub == "series") return group_series_report(a.target, a.kind, a.n, lim);
    if (a.sub == "dimension") return group_dimension_report(a.target, a.n, lim);
    if (a.sub == "powerful") return group_powerful_report(a.target, lim);
    if (a.sub == "theoremA") return group_theoremA_report(a.target, lim);
    if (a.sub == "jmodule") return group_jmodule_report(a.target, lim);
    if (a.sub == "maximal") return group_maximal_report(a.target, lim);
    if (a.sub == "tower") return group_tower_report(a.target, a.n, lim);
    throw usage_error("unknown group subcommand '" + a.sub + "'");
}

json run_rigidity(const Args& a) {
    FieldDescriptor D = field(a);
    if (a.sub == "check") return rigidity_check_report(D, a.basis);
    if (a.sub == "element") {
        if (a.a.empty()) throw usage_error("rigidity element needs --a");
        return rigidity_element_report(D, a.a, a.basis);
    }
    if (a.sub == "hereditary") return rigidity_hereditary_report(D, a.depth);
    if (a.sub == "steinberg") return rigidity_steinberg_report(D);
    throw usage_error("unknown rigidity subcommand '" + a.sub + "'");
}

int run_reverify(const Args& a) {
    std::ifstream in(a.reverify_in);
    if (!in) throw usage_error("cannot read " + a.reverify_in);
    json rep;
    try {
        rep = json::parse(in);
    } catch (const json::parse_error& e) {
        throw usage_error(std::string("not a JSON report: ") + e.what());
    }
    ReverifyResult r = reverify(rep);
    for (auto& [name, ok] : r.checks) std::cout << (ok ? "ok    " : "FAIL  ") << name << "\n";
    std::cout << (r.ok ? "reverified" : "reverification failed") << " (" << r.checks.size() << " checks)\n";
    return r.ok ? kPass : kVerify;
}

int run_accept(const Args& a) {
    AcceptOptions opt{a.seed, a.quick};
    auto line = [&](const CriterionOutcome& o) { std::cout << criterion_line(o, opt.quick) << std::endl; };
    AcceptRun run;
    bool ok = true;
    if (!a.golden.empty()) {
        GoldenCheck g = golden_check(a.golden, opt, run, line);
        std::cout << (g.matches ? "PASS" : "FAIL") << "  [golden] " << g.message << " (seed " << g.seed << ")\n";
        ok = g.matches;
    } else {
        run = run_acceptance(opt, line);
    }
    for (auto& n : run.report["notes"])
        std::cout << "WARN  " << n["topic"].get<std::string>() << ": stated " << n["stated"].get<std::string>()
                  << "; computed " << n["computed"].get<std::string>() << "\n";
    if (!a.json_out.empty()) {
        std::ofstream out(a.json_out);
        if (!out) throw usage_error("cannot write " + a.json_out);
        out << run.report.dump(2) << "\n";
    }
    ok = ok && run.all_pass;
    std::cout << (ok ? "all criteria pass" : "acceptance FAILED") << "\n";
    return ok ? kPass : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prigid: p-rigidity, Kummer towers and radical solving over finite-field based fields"};
    app.require_subcommand(0, 1);
    Args a;
    app.add_option("--p", a.p, "prime p")->check(CLI::PositiveNumber);
    app.add_option("--seed", a.seed, "seed for sampled checks");
    app.add_option("--prec", a.prec, "root precision in t (solve) or series precision");
    app.add_option("--bound", a.bound, "group order bound, or largest ramification p^s for solve");
    app.add_option("--json", a.json_out, "write the report to this file");
    app.add_option("--reverify", a.reverify_in, "replay every check in a saved report");
    app.add_flag("--quick", a.quick, "reduced acceptance suite");
    app.add_option("--golden", a.golden, "acceptance golden file (written when missing)");

    auto* grp = app.add_subcommand("group", "finite p-group computations");
    grp->add_option("sub", a.sub, "series|dimension|powerful|theoremA|jmodule|maximal|tower")->required();
    grp->add_option("group", a.target, "theta(p,k,r,m), ut(n,p,e) or table:<path>")->required();
    grp->add_option("--kind", a.kind, "lower-p|lower-central|frattini");
    grp->add_option("--n", a.n, "series length or tower level");

    auto* rig = app.add_subcommand("rigidity", "symbol and rigidity checks");
    rig->add_option("sub", a.sub, "check|element|hereditary|steinberg")->required();
    rig->add_option("field", a.target, "gf(q), laurent(q[,prec]) or ratfunc(q)")->required();
    rig->add_option("--a", a.a, "element for `element`");
    rig->add_option("--basis", a.basis, "class basis (default: canonical)");
    rig->add_option("--depth", a.depth, "hereditary depth (<= 3)");

    auto* tow = app.add_subcommand("tower", "Kummer tower level and its Galois group");
    tow->add_option("field", a.target)->required();
    tow->add_option("--n", a.n, "tower level");

    auto* wit = app.add_subcommand("witness", "Hilbert 90 witness in the bicyclic algebra");
    wit->add_option("field", a.target)->required();

    auto* sol = app.add_subcommand("solve", "roots as Puiseux series and radicals");
    sol->add_option("field", a.target)->required();
    sol->add_option("--poly", a.poly, "polynomial in x over the field")->required();

    app.add_subcommand("accept", "run the acceptance suite");

    for (auto* s : app.get_subcommands([](const CLI::App*) { return true; })) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    int rc = kPass;
    try {
        if (!a.reverify_in.empty()) {
            rc = run_reverify(a);
        } else if (app.got_subcommand("accept")) {
            rc = run_accept(a);
        } else if (app.got_subcommand("group")) {
            emit(run_group(a), a);
        } else if (app.got_subcommand("rigidity")) {
            emit(run_rigidity(a), a);
        } else if (app.got_subcommand("tower")) {
            emit(tower_report(field(a), a.n, std::max(4, a.n)), a);
        } else if (app.got_subcommand("witness")) {
            emit(witness_report(field(a)), a);
        } else if (app.got_subcommand("solve")) {
            emit(solve_report(field(a), a.poly, a.prec.value_or(8), a.bound.value_or(81)), a);
        } else {
            std::cout << app.help();
            return kUsage;
        }
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const out_of_scope_error& e) {
        std::cerr << "out of scope: " << e.what() << "\n";
        return kUsage;
    } catch (const resource_error& e) {
        std::cerr << "resource bound: " << e.what() << "\n";
        return kResource;
    } catch (const precision_error& e) {
        std::cerr << "precision: " << e.what() << "\n";
        return kResource;
    } catch (const verification_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kVerify;
    } catch (const json::exception& e) {
        std::cerr << "malformed report: " << e.what() << "\n";
        return kUsage;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "time: " << secs << " s\n";
    return rc;
}
