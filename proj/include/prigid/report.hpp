#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "parse.hpp"
#include "witness.hpp"

namespace prigid {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json make_report(const std::string& command, json inputs) {
    return json{{"schema_version", kSchemaVersion}, {"command", command}, {"inputs", std::move(inputs)},
                {"notes", json::array()}};
}

/// A disagreement between a stated value and the computed one; reported, never a failure.
inline json warn_note(const std::string& topic, const std::string& stated, const std::string& computed,
                      const std::string& provenance) {
    return json{{"level", "WARN"}, {"topic", topic}, {"stated", stated}, {"computed", computed}, {"provenance", provenance}};
}

// ---------------------------------------------------------------------------
// Group reports

namespace report_detail {

inline json elem_json(const GroupSpec& G, Elem x) { return G.coords(x); }

inline Elem elem_from_json(const GroupSpec& G, const json& j) { return G.encode(j.get<std::vector<u64>>()); }

inline json subgroup_json(const Subgroup& H) {
    json gens = json::array();
    for (Elem g : small_generators(H)) gens.push_back(elem_json(H.group(), g));
    return json{{"order", H.order()}, {"generators", gens}};
}

inline Subgroup subgroup_from_json(const GroupPtr& G, const json& j) {
    std::vector<Elem> gens;
    for (auto& g : j.at("generators")) gens.push_back(elem_from_json(*G, g));
    return closure(G, gens);
}

inline json series_json(const SeriesReport& s) {
    json terms = json::array();
    for (auto& t : s.terms) terms.push_back(subgroup_json(t));
    return json{{"kind", SeriesReport::kind_name(s.kind)}, {"terms", terms}, {"indices", s.indices}};
}

inline json group_header(const GroupPtr& G) {
    return json{{"name", G->name()}, {"p", G->p()}, {"order", G->order()}, {"coordinates", G->coordinate_names()}};
}

}  // namespace report_detail

inline json group_series_report(const std::string& desc, const std::string& kind, int n, const GroupLimits& lim = {}) {
    auto G = parse_group(desc, lim);
    Subgroup W = whole_group(G);
    SeriesReport s = kind == "lower-central" ? lower_central_series(W, n)
                     : kind == "frattini"    ? frattini_series(W, n)
                     : kind == "lower-p"     ? lower_p_series(W, n)
                                             : throw usage_error("unknown series kind '" + kind + "'");
    json r = make_report("group series", {{"group", desc}, {"kind", kind}, {"n", n}});
    r["group"] = report_detail::group_header(G);
    r["verdict"] = {{"orders", json::array()}};
    for (auto& t : s.terms) r["verdict"]["orders"].push_back(t.order());
    r["witness"] = report_detail::series_json(s);
    return r;
}

inline json group_dimension_report(const std::string& desc, int n, const GroupLimits& lim = {}) {
    auto G = parse_group(desc, lim);
    Subgroup W = whole_group(G);
    DimensionReport d = dimension_subgroups(W, n);
    json r = make_report("group dimension", {{"group", desc}, {"n", n}});
    r["group"] = report_detail::group_header(G);
    json orders = json::array();
    for (auto& t : d.series.terms) orders.push_back(t.order());
    // closed form D_n = G^{p^{ceil(log_p n)}} where the group is powerful
    json closed = json::array();
    bool closed_agrees = true;
    const bool powerful = is_powerful(W).powerful;
    for (int k = 1; k <= n; ++k) {
        Subgroup c = power_subgroup(W, ceil_log(static_cast<u64>(k), G->p()));
        closed.push_back(c.order());
        if (!(c == d.series.terms[k - 1])) closed_agrees = false;
    }
    r["verdict"] = {{"orders", orders},
                    {"quotient_orders", d.quotient_orders},
                    {"powerful", powerful},
                    {"closed_form_orders", closed},
                    {"closed_form_agrees", closed_agrees}};
    r["witness"] = report_detail::series_json(d.series);
    if (const auto& th = G->theta_spec()) {
        // quotient rank at p-power indices: stated |I| versus computed
        for (int k = 1; k < n; k *= static_cast<int>(G->p())) {
            u64 q = d.quotient_orders[k - 1];
            if (q == 1) break;
            int rank = exact_log(q, G->p());
            if (rank != th->rho_count)
                r["notes"].push_back(warn_note("dimension-quotient-rank-n" + std::to_string(k),
                                               "D_n/D_{n+1} = (Z/p)^|I| with |I| = " + std::to_string(th->rho_count),
                                               "(Z/p)^" + std::to_string(rank) + " (d = |I|+1 = " +
                                                   std::to_string(th->rho_count + 1) + ")",
                                               "stated quotient rank versus order of the computed closures"));
        }
    }
    return r;
}

inline json group_powerful_report(const std::string& desc, const GroupLimits& lim = {}) {
    auto G = parse_group(desc, lim);
    Subgroup W = whole_group(G);
    PowerfulVerdict v = is_powerful(W);
    json r = make_report("group powerful", {{"group", desc}});
    r["group"] = report_detail::group_header(G);
    r["verdict"] = {{"powerful", v.powerful}, {"derived_order", v.derived.order()}, {"pth_powers_order", v.pth_powers.order()}};
    json w = {{"derived", report_detail::subgroup_json(v.derived)}, {"pth_powers", report_detail::subgroup_json(v.pth_powers)}};
    if (v.witness) w["commutator_outside_pth_powers"] = report_detail::elem_json(*G, *v.witness);
    if (v.witness_pair)
        w["commutator_of"] = {report_detail::elem_json(*G, v.witness_pair->first), report_detail::elem_json(*G, v.witness_pair->second)};
    r["witness"] = w;
    return r;
}

inline json group_theoremA_report(const std::string& desc, const GroupLimits& lim = {}) {
    auto G = parse_group(desc, lim);
    Subgroup W = whole_group(G);
    TheoremAResult t = theorem_A_group_test(W);
    json r = make_report("group theoremA", {{"group", desc}});
    r["group"] = report_detail::group_header(G);
    const int d = generator_rank(W);
    r["verdict"] = {{"equal", t.equal},
                    {"frattini_order", t.frattini.order()},
                    {"frattini_squared_order", t.frattini_squared.order()},
                    {"lambda3_order", t.lambda3.order()},
                    {"generator_rank", d},
                    {"index_lambda3", W.order() / t.lambda3.order()},
                    {"second_power_order", power_subgroup(W, 2).order()}};
    r["witness"] = {{"frattini", report_detail::subgroup_json(t.frattini)},
                    {"frattini_squared", report_detail::subgroup_json(t.frattini_squared)},
                    {"lambda3", report_detail::subgroup_json(t.lambda3)}};
    if (!t.equal) {
        for (Elem x : t.lambda3.elements())
            if (!t.frattini_squared.contains(x)) {
                r["witness"]["lambda3_element_outside"] = report_detail::elem_json(*G, x);
                break;
            }
    }
    return r;
}

inline json group_jmodule_report(const std::string& desc, const GroupLimits& lim = {}) {
    auto G = parse_group(desc, lim);
    Subgroup W = whole_group(G);
    JModuleResult j = j_module_test(W);
    json r = make_report("group jmodule", {{"group", desc}});
    r["group"] = report_detail::group_header(G);
    r["verdict"] = {{"equal", j.equal}, {"full_order", j.full_order}, {"invariant_order", j.invariant_order}};
    r["witness"] = json::object();
    return r;
}

inline json group_maximal_report(const std::string& desc, const GroupLimits& lim = {}) {
    auto G = parse_group(desc, lim);
    Subgroup W = whole_group(G);
    auto ms = maximal_subgroups(W);
    json r = make_report("group maximal", {{"group", desc}});
    r["group"] = report_detail::group_header(G);
    json ranks = json::array(), subs = json::array();
    for (auto& m : ms) {
        ranks.push_back(m.rank);
        json s = report_detail::subgroup_json(m.subgroup);
        s["functional"] = m.functional;
        s["rank"] = m.rank;
        subs.push_back(s);
    }
    r["verdict"] = {{"count", ms.size()}, {"ranks", ranks}, {"frattini_order", frattini(W).order()}};
    r["witness"] = {{"maximal_subgroups", subs}};
    return r;
}

inline json abelian_range_note(const TowerGroupInfo& info, int n, u64 p, std::optional<int> k) {
    const std::string ks = k ? std::to_string(*k) : "inf";
    return warn_note("abelian-range",
                     "abelian iff n <= p^k + 1 (n = " + std::to_string(n) + ", p = " + std::to_string(p) + ", k = " + ks +
                         ": predicts " + (info.predicted_abelian_stated ? "abelian" : "non-abelian") + ")",
                     "abelian iff n <= k + 1 (predicts " + std::string(info.predicted_abelian_computed ? "abelian" : "non-abelian") +
                         "; exhaustive commutation finds " + (info.is_abelian ? "abelian" : "non-abelian") + ")",
                     "action by 1 + p^k is trivial mod p^(n-1) iff k >= n - 1");
}

inline json group_tower_report(const std::string& desc, int n, const GroupLimits& lim = {}) {
    auto G = parse_group(desc, lim);
    const auto& th = G->theta_spec();
    if (!th) throw usage_error("group tower needs a theta(p,k,r,m) descriptor");
    TowerGroupInfo info = tower_group(*th, n, lim);
    json r = make_report("group tower", {{"group", desc}, {"n", n}});
    r["verdict"] = {{"order", info.order},
                    {"abelian", info.is_abelian},
                    {"exponent", info.exponent},
                    {"derived_order", info.derived_order},
                    {"predicted_abelian_stated", info.predicted_abelian_stated},
                    {"predicted_abelian_computed", info.predicted_abelian_computed}};
    r["witness"] = json::object();
    r["notes"].push_back(abelian_range_note(info, n, th->p, th->k));
    return r;
}

// ---------------------------------------------------------------------------
// Field reports

namespace report_detail {

inline json field_header(const FieldDescriptor& D) {
    json j = {{"descriptor", D.str()},
              {"p", D.p},
              {"k", D.k},
              {"coefficient_field", D.F->name()},
              {"zeta_p", fq_literal(D.zeta())},
              {"unit_generator", fq_literal(D.unit_generator())}};
    if (D.kind == FieldDescriptor::Kind::Laurent)
        j["local_model"] = "F_q((t)) with the residue field of the p-adic case; identical tame symbol theory";
    return j;
}

inline json symbol_map_json(const std::map<std::string, u64>& m) {
    json j = json::object();
    for (auto& [k, v] : m) j[k] = v;
    return j;
}

inline std::vector<FieldElem> parse_basis(const FieldDescriptor& D, const std::vector<std::string>& basis) {
    if (basis.empty()) return canonical_basis(D);
    std::vector<FieldElem> out;
    for (auto& b : basis) out.push_back(parse_element(D, b));
    return out;
}

inline json literals(const std::vector<FieldElem>& v) {
    json j = json::array();
    for (auto& e : v) j.push_back(element_literal(e));
    return j;
}

}  // namespace report_detail

inline json rigidity_check_report(const FieldDescriptor& D, const std::vector<std::string>& basis_in = {}) {
    auto basis = report_detail::parse_basis(D, basis_in);
    FieldRigidity fr = is_field_rigid(D, basis);
    json r = make_report("rigidity check", {{"field", D.str()}, {"p", D.p}, {"basis", report_detail::literals(basis)}});
    r["field"] = report_detail::field_header(D);
    json wedges = json::array();
    for (std::size_t w = 0; w < fr.wedges.size(); ++w)
        wedges.push_back({{"pair", {fr.wedges[w].first, fr.wedges[w].second}},
                          {"symbol", report_detail::symbol_map_json(fr.wedge_symbols[w])}});
    r["verdict"] = {{"rigid", fr.rigid},
                    {"completeness", fr.completeness},
                    {"wedge_rank", fr.wedge_rank},
                    {"wedge_count", fr.wedge_count},
                    {"class_dimension", basis.size()}};
    r["witness"] = {{"wedges", wedges}};
    if (fr.steinberg_pair) r["witness"]["zero_symbol_pair"] = {fr.steinberg_pair->first, fr.steinberg_pair->second};
    return r;
}

inline json rigidity_element_report(const FieldDescriptor& D, const std::string& a_text, const std::vector<std::string>& basis_in = {}) {
    auto basis = report_detail::parse_basis(D, basis_in);
    FieldElem a = parse_element(D, a_text);
    ElementRigidity er = is_element_rigid(D, a, basis);
    json r = make_report("rigidity element",
                         {{"field", D.str()}, {"p", D.p}, {"a", element_literal(a)}, {"basis", report_detail::literals(basis)}});
    r["field"] = report_detail::field_header(D);
    json syms = json::array();
    for (auto& s : er.symbols) syms.push_back(report_detail::symbol_map_json(s));
    r["verdict"] = {{"rigid", er.rigid}, {"kernel_dimension", er.kernel.size()}};
    r["witness"] = {{"kernel", er.kernel}, {"a_coordinates", er.a_coordinates}, {"symbols_with_basis", syms}};
    return r;
}

inline json rigidity_steinberg_report(const FieldDescriptor& D) {
    SteinbergWitness w = steinberg_witness(D);
    json r = make_report("rigidity steinberg", {{"field", D.str()}, {"p", D.p}});
    r["field"] = report_detail::field_header(D);
    json vec = json::object();
    for (auto& [P, v] : w.symbols.values) vec[P.str()] = v;
    r["verdict"] = {{"rigid", false}, {"independent", w.independent}, {"symbol_vector_zero", w.symbols.is_zero()},
                    {"norm_identity", w.norm_identity}};
    r["witness"] = {{"a", ratfunc_literal(w.a)},
                    {"b", ratfunc_literal(w.b)},
                    {"symbol_vector", vec},
                    {"norm_equation", "prod_i (1 - zeta^i t^(1/p)) = 1 - t"}};
    return r;
}

inline json rigidity_hereditary_report(const FieldDescriptor& D, int depth) {
    HereditaryReport h = hereditary_probe(D, depth);
    json r = make_report("rigidity hereditary", {{"field", D.str()}, {"p", D.p}, {"depth", depth}});
    r["field"] = report_detail::field_header(D);
    json nodes = json::array();
    for (auto& n : h.nodes)
        nodes.push_back({{"path", n.path}, {"field", n.field}, {"ramified", n.ramified}, {"rigid", n.rigid},
                         {"completeness", n.completeness}, {"depth", n.depth}});
    r["verdict"] = {{"base_rigid", h.base.rigid}, {"all_rigid", h.all_rigid}, {"leaves", h.leaves}, {"nodes", h.nodes.size()}};
    r["witness"] = {{"extensions", nodes}};
    return r;
}

inline json tower_report(const FieldDescriptor& D, int n, int bound = 4) {
    TowerLevel L = kummer_tower(D, n, bound);
    TowerGalois g = tower_galois_group(D, n);
    json r = make_report("tower", {{"field", D.str()}, {"p", D.p}, {"n", n}});
    r["field"] = report_detail::field_header(D);
    json gens = json::array();
    for (auto& [b, d] : L.generators) gens.push_back({{"radicand", b}, {"degree", d}});
    r["verdict"] = {{"level_field", L.level.str()},
                    {"r", L.r},
                    {"s", L.s},
                    {"class_dimension", L.class_dimension},
                    {"basis_independent", L.basis_independent},
                    {"zeta_order", L.zeta_order},
                    {"zeta_in_field", L.zeta_in_field},
                    {"zeta_nonresidue", L.zeta_nonresidue},
                    {"zeta_compatible", L.zeta_compatible},
                    {"galois_model", g.spec.str()},
                    {"galois_order", g.automorphism_order},
                    {"galois_abelian", g.automorphism_abelian},
                    {"galois_derived_order", g.automorphism_derived_order},
                    {"galois_exponent", g.automorphism_exponent},
                    {"model_powerful", g.model_powerful},
                    {"relation_holds", g.relation_holds},
                    {"model_consistent", g.consistent}};
    r["witness"] = {{"zeta", fq_literal(L.zeta)}, {"generators", gens}};
    r["notes"].push_back(abelian_range_note(g.model, n, D.p, D.k));
    return r;
}

namespace report_detail {
inline json bicyclic_json(const BicyclicElem& e) {
    json j = json::array();
    for (u64 i = 0; i < e.p(); ++i)
        for (u64 k = 0; k < e.p(); ++k)
            if (!e.at(i, k).is_zero()) j.push_back({{"x", i}, {"y", k}, {"coefficient", ratfunc_literal(e.at(i, k))}});
    return j;
}
}  // namespace report_detail

inline json witness_report(const FieldDescriptor& D) {
    WitnessBundle w = hilbert90_witness(D);
    GaloisVerdict gv = galois_criterion(w);
    json r = make_report("witness", {{"field", D.str()}, {"p", D.p}});
    r["field"] = report_detail::field_header(D);
    r["verdict"] = {{"tau_identity", w.tau_identity},   {"norm_identity", w.norm_identity},
                    {"cocycle_closes", w.cocycle_closes}, {"v_delta", w.v_delta},
                    {"v_c", w.v_c},                       {"v_beta", w.v_beta},
                    {"v_gamma", w.v_gamma},               {"ramification", w.ramification},
                    {"certificate", w.certificate},       {"galois_status", gv.status}};
    r["witness"] = {{"theta", w.theta},
                    {"gamma", report_detail::bicyclic_json(w.gamma)},
                    {"beta", report_detail::bicyclic_json(w.beta)},
                    {"place", "(x, y) = (1, 0), uniformizer y, t = 1 - y^p"},
                    {"galois_certificate", gv.certificate}};
    return r;
}

inline json solve_report(const FieldDescriptor& D, const std::string& poly, long long prec, u64 tame_bound = 81) {
    LaurentPoly f = parse_xpoly(poly, *D.F, D.precision);
    PuiseuxOptions opt;
    opt.precision = prec;
    opt.tame_bound = tame_bound;
    PuiseuxResult res = puiseux_roots(D, f, opt);
    SplittingDescriptor sd = splitting_descriptor(D, res);
    json r = make_report("solve", {{"field", D.str()}, {"p", D.p}, {"poly", poly}, {"prec", prec}});
    r["field"] = report_detail::field_header(D);
    json roots = json::array();
    bool all_ok = true, all_nonnested = true;
    for (auto& root : res.roots) {
        RootCheck rc = verify_root(f, root);
        RadicalExpression ex = as_nonnested_radicals(D, root);
        all_ok = all_ok && rc.ok;
        all_nonnested = all_nonnested && ex.nonnested;
        json terms = json::array();
        for (auto& [q, c] : root.terms()) terms.push_back({{"exponent", q.str()}, {"coefficient", fq_literal(c)}});
        json gens = json::array();
        for (auto& g : ex.generators) gens.push_back({{"base", g.base_str()}, {"degree", g.degree}});
        roots.push_back({{"text", root.str()},
                         {"terms", terms},
                         {"e", static_cast<u64>(checked_pow(D.p, root.s))},
                         {"r", root.r},
                         {"s", root.s},
                         {"exact", root.exact},
                         {"generators", gens},
                         {"radical_expression", ex.str()},
                         {"residual_valuation", rc.exact_zero ? "exact" : rc.valuation.str()},
                         {"verified", rc.ok}});
    }
    r["verdict"] = {{"root_count", res.roots.size()},
                    {"degree", poly_degree(f)},
                    {"all_verified", all_ok},
                    {"all_nonnested", all_nonnested},
                    {"galois_stable", galois_stable(D, res)},
                    {"splitting_r", sd.r},
                    {"splitting_s", sd.s},
                    {"tower_level", sd.level},
                    {"contained_in_level", sd.contained},
                    {"level_field", sd.level_field},
                    {"solving_field", res.field->name()}};
    r["witness"] = {{"roots", roots}};
    return r;
}

// ---------------------------------------------------------------------------
// Replay

struct ReverifyResult {
    bool ok = true;
    std::vector<std::pair<std::string, bool>> checks;

    void check(const std::string& name, bool pass) {
        checks.emplace_back(name, pass);
        ok = ok && pass;
    }
};

namespace report_detail {

inline std::vector<std::string> str_list(const json& j) {
    std::vector<std::string> v;
    for (auto& x : j) v.push_back(x.get<std::string>());
    return v;
}

/// Witness checks that only use the serialized data and the arithmetic kernels.
inline void replay_witnesses(const json& rep, ReverifyResult& out) {
    const std::string cmd = rep.at("command");
    const json& in = rep.at("inputs");
    const json& w = rep.at("witness");
    const json& v = rep.at("verdict");
    if (cmd.rfind("group", 0) == 0 && in.contains("group") && cmd != "group tower") {
        auto G = parse_group(in.at("group"));
        Subgroup W = whole_group(G);
        if (cmd == "group series" || cmd == "group dimension") {
            const json& terms = w.at("terms");
            for (std::size_t i = 0; i < terms.size(); ++i) {
                Subgroup H = subgroup_from_json(G, terms[i]);
                out.check("term " + std::to_string(i + 1) + " order", H.order() == terms[i].at("order").get<u64>());
                if (i > 0) {
                    Subgroup prev = subgroup_from_json(G, terms[i - 1]);
                    out.check("term " + std::to_string(i + 1) + " descends", prev.contains(H));
                }
            }
        } else if (cmd == "group powerful") {
            Subgroup P = subgroup_from_json(G, w.at("pth_powers"));
            out.check("pth powers", P == power_subgroup(W, 1));
            if (w.contains("commutator_outside_pth_powers")) {
                Elem c = elem_from_json(*G, w.at("commutator_outside_pth_powers"));
                out.check("witness outside G^p", !P.contains(c));
                if (w.contains("commutator_of")) {
                    Elem a = elem_from_json(*G, w.at("commutator_of")[0]), b = elem_from_json(*G, w.at("commutator_of")[1]);
                    out.check("witness is a commutator", G->commutator(a, b) == c);
                }
            } else {
                Subgroup D = subgroup_from_json(G, w.at("derived"));
                out.check("derived inside G^p", P.contains(D));
            }
        } else if (cmd == "group theoremA") {
            Subgroup F2 = subgroup_from_json(G, w.at("frattini_squared"));
            Subgroup L3 = subgroup_from_json(G, w.at("lambda3"));
            out.check("Phi(Phi) inside lambda3", L3.contains(F2));
            out.check("equality claim", (F2 == L3) == v.at("equal").get<bool>());
            if (w.contains("lambda3_element_outside"))
                out.check("element outside Phi(Phi)", !F2.contains(elem_from_json(*G, w.at("lambda3_element_outside"))));
        } else if (cmd == "group maximal") {
            Subgroup phi = frattini(W);
            for (auto& m : w.at("maximal_subgroups")) {
                Subgroup M = subgroup_from_json(G, m);
                out.check("maximal index p", M.order() * G->p() == W.order());
                out.check("contains Frattini", M.contains(phi));
                out.check("rank", generator_rank(M) == m.at("rank").get<int>());
            }
        }
        return;
    }
    if (!in.contains("field")) return;
    FieldDescriptor D = parse_field(in.at("field"), in.at("p").get<u64>());
    if (cmd == "rigidity element") {
        auto basis = parse_basis(D, str_list(in.at("basis")));
        FieldElem a = parse_element(D, in.at("a"));
        for (auto& kv : w.at("kernel")) {
            auto x = kv.get<std::vector<u64>>();
            std::map<std::string, u64> acc;
            for (std::size_t j = 0; j < basis.size(); ++j)
                for (auto& [place, s] : symbol_coordinates(D, a, basis[j])) acc[place] = (acc[place] + x[j] * s) % D.p;
            bool zero = std::all_of(acc.begin(), acc.end(), [](const auto& e) { return e.second == 0; });
            out.check("kernel vector pairs to zero", zero);
        }
    } else if (cmd == "rigidity check") {
        auto basis = parse_basis(D, str_list(in.at("basis")));
        for (auto& wd : w.at("wedges")) {
            int i = wd.at("pair")[0], j = wd.at("pair")[1];
            out.check("wedge symbol", symbol_map_json(symbol_coordinates(D, basis[i], basis[j])) == wd.at("symbol"));
        }
    } else if (cmd == "rigidity steinberg") {
        RatFunc a = parse_ratfunc(w.at("a"), *D.F), b = parse_ratfunc(w.at("b"), *D.F);
        out.check("symbol vector zero", symbol_vector_global(D, a, b).is_zero());
        out.check("independent classes", classes_independent(D, {a, b}));
    } else if (cmd == "witness") {
        WitnessBundle wb = hilbert90_witness(D);
        out.check("v_beta", wb.v_beta == v.at("v_beta").get<long long>());
        out.check("certificate prime to p", mod_norm(v.at("v_beta").get<long long>(), D.p) != 0);
        out.check("tau identity", wb.tau_identity);
        out.check("gamma", bicyclic_json(wb.gamma) == w.at("gamma"));
    } else if (cmd == "solve") {
        LaurentPoly f = parse_xpoly(in.at("poly"), *D.F, D.precision);
        const long long prec = in.at("prec");
        const std::string sf = v.at("solving_field");
        const FqField& FQ = detail::parse_base_field(sf.substr(3, sf.size() - 4), "solving_field");
        for (auto& rt : w.at("roots")) {
            // rebuild the series over the solving field with z^e = t, e the minimal ramification
            u64 e = rt.at("e");
            std::vector<std::pair<long long, FqElem>> terms;
            for (auto& tm : rt.at("terms")) {
                std::string ex = tm.at("exponent");
                auto slash = ex.find('/');
                long long num = std::stoll(ex.substr(0, slash));
                long long den = slash == std::string::npos ? 1 : std::stoll(ex.substr(slash + 1));
                terms.emplace_back(num * static_cast<long long>(e) / den, parse_fq(tm.at("coefficient"), FQ));
            }
            Laurent s(FQ);
            for (auto& [m, c] : terms) s = s + Laurent::monomial(c, m);
            PuiseuxRoot root{s, e, 0, 0, prec, rt.at("exact").get<bool>()};
            out.check("root residual", verify_root(f, root).ok);
        }
    }
}

inline json rerun(const json& rep) {
    const std::string cmd = rep.at("command");
    const json& in = rep.at("inputs");
    if (cmd == "group series") return group_series_report(in.at("group"), in.at("kind"), in.at("n"));
    if (cmd == "group dimension") return group_dimension_report(in.at("group"), in.at("n"));
    if (cmd == "group powerful") return group_powerful_report(in.at("group"));
    if (cmd == "group theoremA") return group_theoremA_report(in.at("group"));
    if (cmd == "group jmodule") return group_jmodule_report(in.at("group"));
    if (cmd == "group maximal") return group_maximal_report(in.at("group"));
    if (cmd == "group tower") return group_tower_report(in.at("group"), in.at("n"));
    FieldDescriptor D = parse_field(in.at("field"), in.at("p").get<u64>());
    if (cmd == "rigidity check") return rigidity_check_report(D, str_list(in.at("basis")));
    if (cmd == "rigidity element") return rigidity_element_report(D, in.at("a"), str_list(in.at("basis")));
    if (cmd == "rigidity steinberg") return rigidity_steinberg_report(D);
    if (cmd == "rigidity hereditary") return rigidity_hereditary_report(D, in.at("depth"));
    if (cmd == "tower") return tower_report(D, in.at("n"), std::max(4, in.at("n").get<int>()));
    if (cmd == "witness") return witness_report(D);
    if (cmd == "solve") return solve_report(D, in.at("poly"), in.at("prec"));
    throw usage_error("reverify: unknown command '" + cmd + "'");
}

}  // namespace report_detail

/// Replay every check from a serialized report: witness checks from the stored data, then a
/// fresh run whose verdict must match the stored one.
inline ReverifyResult reverify(const json& rep) {
    ReverifyResult out;
    if (!rep.contains("schema_version") || rep.at("schema_version") != kSchemaVersion)
        throw usage_error("reverify: unsupported schema_version");
    if (rep.at("command") == "accept") throw usage_error("reverify: acceptance reports are checked with `accept --golden`");
    report_detail::replay_witnesses(rep, out);
    json fresh = report_detail::rerun(rep);
    out.check("verdict reproduces", fresh.at("verdict") == rep.at("verdict"));
    out.check("witness reproduces", fresh.at("witness") == rep.at("witness"));
    return out;
}

}  // namespace prigid
