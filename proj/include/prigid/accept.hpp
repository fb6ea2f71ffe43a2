#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "report.hpp"

namespace prigid {

struct AcceptOptions {
    u64 seed = 20240601;
    bool quick = false;
};

struct CriterionOutcome {
    int id;
    std::string name;
    bool pass = false;
    double seconds = 0;
    double limit = 0;  // 0: no time bound
    std::string message;
    json detail;
    json notes = json::array();
};

namespace accept_detail {

using Clock = std::chrono::steady_clock;

struct Ctx {
    const AcceptOptions& opt;
    json detail = json::object();
    json notes = json::array();
    std::vector<std::string> failures;

    void expect(bool cond, const std::string& what) {
        if (!cond) failures.push_back(what);
    }
};

inline std::string rand_poly_text(std::mt19937_64& rng, u64 ell, int max_deg, bool nonzero_const) {
    std::string s = "[";
    const int deg = static_cast<int>(rng() % static_cast<u64>(max_deg + 1));
    for (int i = 0; i <= deg; ++i) {
        u64 c = rng() % ell;
        if (i == 0 && nonzero_const && c == 0) c = 1;
        if (i == deg && c == 0) c = 1 + rng() % (ell - 1);
        if (i) s += ",";
        s += std::to_string(c);
    }
    return s + "]";
}

// --- 1, 2: Frattini of Frattini against lambda_3

inline void theorem_a_rigid(Ctx& c) {
    for (const std::string g : {"theta(3,1,1,3)", "theta(3,1,2,3)"}) {
        json r = group_theoremA_report(g);
        const json& v = r["verdict"];
        const u64 p = 3;
        const int d = v["generator_rank"];
        c.expect(v["equal"] == true, g + ": Phi(Phi(G)) != lambda3");
        c.expect(v["lambda3_order"] == v["second_power_order"], g + ": lambda3 != G^{p^2}");
        c.expect(v["index_lambda3"].get<u64>() == static_cast<u64>(checked_pow(p, 2 * d)), g + ": |G:lambda3| != p^(2d)");
        c.detail[g] = v;
    }
}

inline void theorem_a_nonrigid(Ctx& c) {
    const std::string g = "ut(4,3,1)";
    json r = group_theoremA_report(g);
    json j = group_jmodule_report(g);
    const json& v = r["verdict"];
    c.expect(v["equal"] == false, "Phi(Phi(G)) == lambda3");
    c.expect(v["frattini_squared_order"] == 1, "Phi(Phi(G)) nontrivial");
    c.expect(v["lambda3_order"] == 3, "|lambda3| != 3");
    c.expect(j["verdict"]["full_order"] == 27 && j["verdict"]["invariant_order"] == 9, "j-module orders differ from 27 vs 9");
    c.expect(j["verdict"]["equal"] == false, "j-module test claims equality");
    c.detail["theoremA"] = v;
    c.detail["jmodule"] = j["verdict"];
}

// --- 3: dimension subgroups

inline void dimension_series(Ctx& c) {
    json r = group_dimension_report("theta(3,1,1,3)", 10);
    const json& v = r["verdict"];
    const std::vector<u64> want{729, 81, 81, 9, 9, 9, 9, 9, 9, 1};
    c.expect(v["orders"].get<std::vector<u64>>() == want, "D-series orders differ");
    c.expect(v["closed_form_agrees"] == true, "closed form differs from the product evaluation");
    c.detail = v;
    for (auto& n : r["notes"]) c.notes.push_back(n);
}

// --- 4: F_7((t)) at p = 3

/// N(x) for x in F_7((s)), s^3 = t, as plain mod-7 arithmetic: x(s) x(2s) x(4s), then read off t-coefficients.
inline std::optional<std::vector<long long>> norm_oracle(const std::vector<long long>& x, int prec) {
    const long long ell = 7;
    const int S = 3 * prec;
    auto mul = [&](const std::vector<long long>& a, const std::vector<long long>& b) {
        std::vector<long long> r(S, 0);
        for (int i = 0; i < S; ++i)
            for (int j = 0; i + j < S; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % ell;
        return r;
    };
    auto twist = [&](long long z) {
        std::vector<long long> r(S, 0);
        long long zi = 1;
        for (int i = 0; i < S; ++i) {
            r[i] = i < static_cast<int>(x.size()) ? x[i] * zi % ell : 0;
            zi = zi * z % ell;
        }
        return r;
    };
    auto n = mul(mul(twist(1), twist(2)), twist(4));
    std::vector<long long> out(prec, 0);
    for (int i = 0; i < S; ++i) {
        if (i % 3 == 0) out[i / 3] = n[i];
        else if (n[i] != 0) return std::nullopt;
    }
    return out;
}

inline void rigidity_local(Ctx& c) {
    FieldDescriptor D = parse_field("laurent(7)", 3);
    FieldRigidity fr = is_field_rigid(D);
    c.expect(fr.rigid && fr.completeness == "complete", "F_7((t)) not rigid/complete");
    c.expect(fr.wedge_symbols.size() == 1, "expected a single wedge");
    if (fr.wedge_symbols.size() == 1) {
        c.expect(fr.wedge_symbols[0].size() == 1 && fr.wedge_symbols[0].begin()->second == 1, "wedge symbol != 1");
        c.detail["wedge_symbol"] = report_detail::symbol_map_json(fr.wedge_symbols[0]);
    }
    // Oracle: every norm from F(t^{1/3}) has a cube as leading coefficient (the class of t^j * cube), so the
    // classes 3 * t^j (3 a non-cube in F_7) never meet N(F(t^{1/3})) F^3.
    const int prec = 8;
    std::mt19937_64 rng(c.opt.seed ^ 0x4e4f524dULL);
    const int tails = c.opt.quick ? 8 : 60;
    std::set<long long> leading;
    u64 count = 0;
    bool in_field = true;
    for (long long c0 = 1; c0 < 7; ++c0)
        for (long long c1 = 0; c1 < 7; ++c1)
            for (int shift = 0; shift < 3; ++shift)
                for (int k = 0; k < tails; ++k) {
                    std::vector<long long> x(3 * prec, 0);
                    x[shift] = c0;
                    if (shift + 1 < 3 * prec) x[shift + 1] = c1;
                    for (int i = shift + 2; i < 3 * prec; ++i) x[i] = static_cast<long long>(rng() % 7);
                    auto n = norm_oracle(x, prec);
                    if (!n) {
                        in_field = false;
                        continue;
                    }
                    long long lead = 0;
                    for (long long a : *n)
                        if (a) {
                            lead = a;
                            break;
                        }
                    leading.insert(lead);
                    ++count;
                }
    std::set<long long> cubes;
    for (long long a = 1; a < 7; ++a) cubes.insert(a * a * a % 7);
    bool only_cubes = std::all_of(leading.begin(), leading.end(), [&](long long a) { return cubes.count(a) > 0; });
    c.expect(in_field, "oracle norm left F_7((t))");
    c.expect(only_cubes, "a norm has non-cube leading coefficient");
    c.expect(cubes.count(3) == 0, "3 is a cube in F_7");
    c.detail["oracle"] = {{"norms", count}, {"precision", prec}, {"leading_coefficients", leading}, {"cubes", cubes}};
}

// --- 5: F_7(t) at p = 3

inline void nonrigid_global(Ctx& c) {
    FieldDescriptor D = parse_field("ratfunc(7)", 3);
    json r = rigidity_steinberg_report(D);
    c.expect(r["verdict"]["symbol_vector_zero"] == true, "Steinberg symbol vector nonzero");
    c.expect(r["verdict"]["independent"] == true, "t and 1-t dependent");
    c.expect(!is_field_rigid(D).rigid, "F_7(t) reported rigid");
    std::mt19937_64 rng(c.opt.seed ^ 0x52454349ULL);
    const int samples = c.opt.quick ? 20 : 100;
    json pairs = json::array();
    int ok = 0;
    for (int i = 0; i < samples; ++i) {
        std::string a = rand_poly_text(rng, 7, 2, true) + "/" + rand_poly_text(rng, 7, 2, true);
        std::string b = rand_poly_text(rng, 7, 2, true) + "/" + rand_poly_text(rng, 7, 2, true);
        RatFunc fa = parse_ratfunc(a, *D.F), fb = parse_ratfunc(b, *D.F);
        try {
            SymbolVector sv = symbol_vector_global(D, fa, fb);
            if (sv.total == 0) ++ok;
        } catch (const verification_error&) {
        }
        pairs.push_back({ratfunc_literal(fa), ratfunc_literal(fb)});
    }
    c.expect(ok == samples, "reciprocity failed on " + std::to_string(samples - ok) + " pairs");
    c.detail = {{"steinberg", r["verdict"]}, {"reciprocity_pairs", pairs}, {"reciprocity_ok", ok}};
}

// --- 6: hereditary

inline void hereditary(Ctx& c) {
    FieldDescriptor D = parse_field("laurent(7)", 3);
    HereditaryReport h1 = hereditary_probe(D, 1);
    c.expect(h1.leaves == 4 && h1.all_rigid, "depth 1: expected 4 rigid extensions");
    c.detail["depth1"] = {{"leaves", h1.leaves}, {"all_rigid", h1.all_rigid}};
    if (!c.opt.quick) {
        HereditaryReport h2 = hereditary_probe(D, 2);
        c.expect(h2.leaves == 16 && h2.all_rigid, "depth 2: expected 16 rigid extensions");
        c.detail["depth2"] = {{"leaves", h2.leaves}, {"all_rigid", h2.all_rigid}};
    }
}

// --- 7, 8: towers

inline void towers(Ctx& c) {
    FieldDescriptor D = parse_field("laurent(7)", 3);
    for (int n : {2, 3}) {
        TowerLevel L = kummer_tower(D, n);
        const std::string key = "level" + std::to_string(n);
        c.expect(L.class_dimension == 2 && L.basis_independent, key + ": class dimension != 2");
        c.expect(L.zeta_in_field && L.zeta_nonresidue && L.zeta_compatible, key + ": zeta checks failed");
        json gens = json::array();
        for (auto& [b, d] : L.generators) gens.push_back({b, d});
        c.detail[key] = {{"field", L.level.str()}, {"class_dimension", L.class_dimension}, {"basis", gens},
                         {"zeta", fq_literal(L.zeta)}, {"zeta_order", L.zeta_order}};
    }
    // zeta_9 in F_343 and not a cube, by exponent arithmetic alone
    const u64 Q = 343;
    const bool in_field = (Q - 1) % 9 == 0;
    const bool noncube = ((Q - 1) / 3) % 9 != 0;
    c.expect(in_field && noncube, "exponent arithmetic for zeta_9 failed");
    c.detail["zeta9_exponents"] = {{"q_minus_1", Q - 1}, {"in_field", in_field}, {"noncube", noncube}};
}

inline void tower_groups(Ctx& c) {
    FieldDescriptor D = parse_field("laurent(7)", 3);
    TowerGalois g2 = tower_galois_group(D, 2);
    TowerGalois g3 = tower_galois_group(D, 3);
    c.expect(g2.automorphism_order == 9 && g2.automorphism_abelian && g2.consistent, "n=2: expected abelian of order 9");
    c.expect(g3.automorphism_order == 81 && !g3.automorphism_abelian && g3.consistent, "n=3: expected non-abelian of order 81");
    c.expect(g3.relation_holds, "n=3: rho^sigma != rho^4");
    json r = tower_report(D, 3);
    bool warned = false;
    for (auto& n : r["notes"]) {
        if (n["topic"] == "abelian-range" && n.contains("stated") && n.contains("computed")) warned = true;
        c.notes.push_back(n);
    }
    c.expect(warned, "abelian-range WARN note missing");
    c.detail = {{"n2", {{"order", g2.automorphism_order}, {"abelian", g2.automorphism_abelian}}},
                {"n3", {{"order", g3.automorphism_order}, {"abelian", g3.automorphism_abelian}, {"relation", g3.relation_holds}}}};
}

// --- 9: Hilbert 90 witness

inline void witness(Ctx& c) {
    json r = witness_report(parse_field("ratfunc(7)", 3));
    const json& v = r["verdict"];
    c.expect(v["tau_identity"] == true, "tau(gamma) != beta gamma");
    c.expect(v["norm_identity"] == true, "N(delta) != 1 - t");
    c.expect(v["v_beta"] == 2 && v["certificate"] == true, "v_P(beta) != 2");
    c.detail = v;
}

// --- 10: solving

inline std::string random_radical_product(std::mt19937_64& rng) {
    auto fac = [&]() -> std::string {
        const u64 kind = rng() % 4;
        const u64 e = rng() % 7, u = 1 + rng() % 6, b = rng() % 3, d = rng() % 7;
        const std::string x = e ? "(x-" + std::to_string(e) + ")" : "x";
        if (kind == 0) return "(x-" + std::to_string(u) + "-" + std::to_string(d) + "*t)";
        if (kind == 3) return "(x^9-" + std::to_string(u * u * u % 7) + "*t^" + std::to_string(1 + b % 2) + ")";
        return "(" + x + "^3-" + std::to_string(u) + "*t^" + std::to_string(b) + "*(1+" + std::to_string(d) + "*t))";
    };
    const int nf = 1 + static_cast<int>(rng() % 2);
    std::string f = fac();
    for (int i = 1; i < nf; ++i) f += "*" + fac();
    return f;
}

inline void solving(Ctx& c) {
    FieldDescriptor D = parse_field("laurent(7)", 3);
    json r1 = solve_report(D, "x^3-(1+t)", 3);
    bool found = false;
    for (auto& root : r1["witness"]["roots"]) {
        json want = json::array({{{"coefficient", "1"}, {"exponent", "0"}},
                                 {{"coefficient", "5"}, {"exponent", "1"}},
                                 {{"coefficient", "3"}, {"exponent", "2"}}});
        if (root["terms"] == want) found = true;
        c.expect(root["verified"] == true, "X^3-(1+t): residual below t^3");
    }
    c.expect(found, "root 1 + 5t + 3t^2 missing");
    json r2 = solve_report(D, "x^9-t", 3);
    c.expect(r2["verdict"]["splitting_r"] == 1 && r2["verdict"]["splitting_s"] == 2, "X^9-t: (r,s) != (1,2)");
    c.expect(r2["verdict"]["tower_level"] == 3 && r2["verdict"]["contained_in_level"] == true, "X^9-t: not in level 3");
    std::mt19937_64 rng(c.opt.seed ^ 0x534f4c56ULL);
    const int samples = c.opt.quick ? 20 : 100;
    int ok = 0, resampled = 0;
    json polys = json::array();
    while (static_cast<int>(polys.size()) < samples) {
        std::string f = random_radical_product(rng);
        json r;
        try {
            r = solve_report(D, f, 4);
        } catch (const usage_error&) {
            ++resampled;  // repeated factor
            continue;
        }
        polys.push_back(f);
        ReverifyResult rv;
        report_detail::replay_witnesses(json::parse(r.dump()), rv);
        const json& v = r["verdict"];
        if (rv.ok && v["all_verified"] == true && v["root_count"] == v["degree"] && v["galois_stable"] == true) ++ok;
    }
    c.expect(ok == samples, "round trip failed on " + std::to_string(samples - ok) + " products");
    c.detail = {{"cube_root_of_1_plus_t", r1["verdict"]},
                {"x9_minus_t", r2["verdict"]},
                {"products", polys},
                {"products_ok", ok},
                {"resampled", resampled}};
}

// --- 11: bridge

inline void bridge(Ctx& c) {
    json rigid = json::array();
    for (auto [f, p] : std::vector<std::pair<std::string, u64>>{{"laurent(7)", 3}, {"laurent(13)", 3}, {"laurent(19)", 3}, {"laurent(11)", 5}}) {
        FieldDescriptor D = parse_field(f, p);
        const bool r = is_field_rigid(D).rigid;
        TowerGalois g = tower_galois_group(D, 3);
        const bool powerful = is_powerful(whole_group(parse_group(g.spec.str()))).powerful;
        c.expect(r && powerful && g.model_powerful, D.str() + ": rigid field without a powerful model");
        rigid.push_back({{"field", D.str()}, {"rigid", r}, {"model", g.spec.str()}, {"powerful", powerful}});
    }
    json controls = json::array();
    for (const std::string g : {"ut(3,3,1)", "ut(4,3,1)"}) {
        const bool powerful = is_powerful(whole_group(parse_group(g))).powerful;
        c.expect(!powerful, g + " reported powerful");
        controls.push_back({{"group", g}, {"powerful", powerful}});
    }
    const bool global_rigid = is_field_rigid(parse_field("ratfunc(7)", 3)).rigid;
    c.expect(!global_rigid, "F_7(t) reported rigid");
    json m = group_maximal_report("theta(3,1,1,3)");
    bool all_two = true;
    for (auto& rk : m["verdict"]["ranks"]) all_two = all_two && rk == 2;
    c.expect(all_two && m["verdict"]["count"] == 4, "maximal subgroups of theta(3,1,1,3) do not all have d = 2");
    c.detail = {{"rigid_fields", rigid}, {"controls", controls}, {"maximal_ranks", m["verdict"]["ranks"]}};
}

struct Criterion {
    int id;
    const char* name;
    double limit;
    void (*run)(Ctx&);
};

inline const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list{
        {1, "theorem A, rigid groups", 20, theorem_a_rigid},
        {2, "theorem A, unitriangular control", 10, theorem_a_nonrigid},
        {3, "dimension subgroups of theta(3,1,1,3)", 0, dimension_series},
        {4, "rigidity of F_7((t)) with norm oracle", 5, rigidity_local},
        {5, "non-rigidity of F_7(t), reciprocity", 5, nonrigid_global},
        {6, "hereditary rigidity, depth 1 and 2", 30, hereditary},
        {7, "Kummer towers, levels 2 and 3", 0, towers},
        {8, "tower Galois groups", 0, tower_groups},
        {9, "Hilbert 90 witness", 5, witness},
        {10, "Puiseux solving and round trip", 20, solving},
        {11, "rigid fields and powerful groups", 0, bridge},
    };
    return list;
}

inline CriterionOutcome run_one(const Criterion& cr, const AcceptOptions& opt) {
    CriterionOutcome out{cr.id, cr.name};
    out.limit = cr.limit;
    Ctx c{opt};
    auto t0 = Clock::now();
    try {
        cr.run(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    out.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (cr.limit > 0 && out.seconds > cr.limit)
        c.failures.push_back("time " + std::to_string(out.seconds) + " s over limit " + std::to_string(cr.limit) + " s");
    out.pass = c.failures.empty();
    for (auto& f : c.failures) out.message += (out.message.empty() ? "" : "; ") + f;
    out.detail = std::move(c.detail);
    out.notes = std::move(c.notes);
    return out;
}

inline json suite_json(const std::vector<CriterionOutcome>& outs, const AcceptOptions& opt) {
    json r = make_report("accept", {{"seed", opt.seed}, {"quick", opt.quick}});
    json crit = json::array();
    json wit = json::object();
    bool all = true;
    for (auto& o : outs) {
        crit.push_back({{"id", o.id}, {"name", o.name}, {"pass", o.pass}, {"message", o.message}});
        wit[std::to_string(o.id)] = o.detail;
        for (auto& n : o.notes) r["notes"].push_back(n);
        all = all && o.pass;
    }
    r["verdict"] = {{"criteria", crit}, {"all_pass", all}};
    r["witness"] = wit;
    return r;
}

}  // namespace accept_detail

struct AcceptRun {
    std::vector<CriterionOutcome> outcomes;  // criteria 1..12
    json report;
    bool all_pass = false;
};

/// Runs every criterion; `line` receives one status line per criterion as it finishes.
inline AcceptRun run_acceptance(const AcceptOptions& opt, const std::function<void(const CriterionOutcome&)>& line = {}) {
    using namespace accept_detail;
    AcceptRun run;
    for (auto& cr : criteria()) {
        run.outcomes.push_back(run_one(cr, opt));
        if (line) line(run.outcomes.back());
    }
    // 12: a second pass must serialize to the same bytes
    CriterionOutcome det{12, "determinism of the acceptance report"};
    auto t0 = Clock::now();
    const std::string first = suite_json(run.outcomes, opt).dump(2);
    std::vector<CriterionOutcome> again;
    for (auto& cr : criteria()) again.push_back(run_one(cr, opt));
    const std::string second = suite_json(again, opt).dump(2);
    det.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    det.pass = first == second;
    if (!det.pass) det.message = "second pass produced different JSON bytes";
    det.detail = {{"bytes", first.size()}, {"identical", det.pass}};
    run.outcomes.push_back(det);
    if (line) line(run.outcomes.back());
    run.report = suite_json(run.outcomes, opt);
    run.all_pass = run.report["verdict"]["all_pass"];
    return run;
}

inline std::string criterion_line(const CriterionOutcome& o, bool quick) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f s", o.seconds);
    std::string s = std::string(o.pass ? "PASS" : "FAIL") + "  [" + std::to_string(o.id) + "] " + o.name + " (" + buf +
                    (quick ? ", quick" : "") + ")";
    if (!o.pass) s += ": " + o.message;
    return s;
}

struct GoldenCheck {
    bool created = false;
    bool matches = true;
    u64 seed = 0;
    std::string message;
};

/// The golden file stores a full acceptance report; its recorded seed and mode drive the replay, and the
/// fresh report must reproduce the stored bytes.
inline GoldenCheck golden_check(const std::string& path, const AcceptOptions& opt, AcceptRun& run,
                                const std::function<void(const CriterionOutcome&)>& line = {}) {
    GoldenCheck g;
    std::ifstream in(path);
    if (!in) {
        run = run_acceptance(opt, line);
        std::ofstream out(path);
        if (!out) throw usage_error("cannot write golden file " + path);
        out << run.report.dump(2) << "\n";
        g.created = true;
        g.seed = opt.seed;
        g.message = "golden file written";
        return g;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    json stored;
    try {
        stored = json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw usage_error("golden file is not JSON: " + std::string(e.what()));
    }
    if (!stored.contains("inputs") || !stored["inputs"].contains("seed")) throw usage_error("golden file has no recorded seed");
    AcceptOptions replay{stored["inputs"]["seed"].get<u64>(), stored["inputs"].value("quick", false)};
    g.seed = replay.seed;
    run = run_acceptance(replay, line);
    g.matches = run.report.dump(2) + "\n" == ss.str();
    g.message = g.matches ? "golden report reproduced byte for byte"
                          : "deterministic reproduction failure: report for seed " + std::to_string(replay.seed) +
                                " differs from the golden file";
    return g;
}

}  // namespace prigid
