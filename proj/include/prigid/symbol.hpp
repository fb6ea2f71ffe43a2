#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "field.hpp"
#include "laurent.hpp"
#include "pgroup.hpp"
#include "ratfunc.hpp"

namespace prigid {

// ---------------------------------------------------------------------------
// Field descriptors

/// One of F_q, F_q((u)) at precision N, or F_q(t); always with a fixed odd prime p | q - 1.
struct FieldDescriptor {
    enum class Kind { Fin, Laurent, RatFunc };

    Kind kind = Kind::Fin;
    const FqField* F = nullptr;
    u64 p = 3;
    long long precision = 64;     // Laurent only
    int k = 1;                    // v_p(q - 1)
    std::string uniformizer = "t";  // Laurent only: name of the local parameter

    static FieldDescriptor make(Kind kind, const FqField& F, u64 p, long long precision = 64, std::string unif = "t") {
        if (p < 3 || !is_prime(p)) throw usage_error("p must be an odd prime");
        if (F.ell() == p) throw out_of_scope_error("residue characteristic equals p (wild case)");
        FieldDescriptor d;
        d.kind = kind;
        d.F = &F;
        d.p = p;
        d.precision = precision;
        d.uniformizer = std::move(unif);
        d.k = roots_of_unity_depth(F, p);  // throws unless p | q - 1
        if (kind == Kind::Laurent && precision < 8) throw usage_error("Laurent precision must be >= 8");
        return d;
    }
    static FieldDescriptor fin(const FqField& F, u64 p) { return make(Kind::Fin, F, p); }
    static FieldDescriptor laurent(const FqField& F, u64 p, long long N = 64, std::string unif = "t") {
        return make(Kind::Laurent, F, p, N, std::move(unif));
    }
    static FieldDescriptor ratfunc(const FqField& F, u64 p) { return make(Kind::RatFunc, F, p); }

    std::string base_name() const {
        return F->degree() == 1 ? std::to_string(F->ell()) : std::to_string(F->ell()) + "^" + std::to_string(F->degree());
    }
    std::string str() const {
        switch (kind) {
            case Kind::Fin: return "gf(" + base_name() + ")";
            case Kind::Laurent: return "laurent(" + base_name() + "," + std::to_string(precision) + ")";
            case Kind::RatFunc: return "ratfunc(" + base_name() + ")";
        }
        return "";
    }

    FqElem zeta() const { return primitive_root_of_unity(*F, p); }
    /// Smallest-encoding unit of class 1; spans the unit part of the class group.
    FqElem unit_generator() const { return canonical_nonresidue(*F, p); }
};

using FieldElem = std::variant<FqElem, Laurent, RatFunc>;

namespace detail {
inline void require_kind(const FieldDescriptor& D, FieldDescriptor::Kind k, const char* op) {
    if (D.kind != k) throw usage_error(std::string(op) + ": not defined for " + D.str());
}
inline bool elem_is_zero(const FieldElem& e) {
    return std::visit([](const auto& x) { return x.is_zero(); }, e);
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Places of F_q(t)

struct Place {
    bool infinite = false;
    FqPoly pi;  // monic irreducible when finite

    static Place at_infinity() { return Place{true, FqPoly()}; }
    static Place finite(FqPoly pi) { return Place{false, std::move(pi)}; }

    std::string str() const { return infinite ? "inf" : pi.str("t"); }
    int degree() const { return infinite ? 1 : pi.degree(); }

    friend bool operator<(const Place& a, const Place& b) {
        if (a.infinite != b.infinite) return b.infinite;  // finite places first
        if (a.infinite) return false;
        return a.pi < b.pi;
    }
    friend bool operator==(const Place& a, const Place& b) {
        return a.infinite == b.infinite && (a.infinite || a.pi == b.pi);
    }
};

/// Finite places dividing numerator or denominator, sorted.
inline std::vector<Place> support(const RatFunc& f) {
    std::vector<Place> out;
    for (const FqPoly* poly : {&f.num(), &f.den()}) {
        if (poly->degree() <= 0) continue;
        for (auto& [g, m] : factorize(*poly).factors) out.push_back(Place::finite(g));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Class in Z/p of a polynomial residue g mod pi (g prime to pi), via the residue field F_q[t]/pi.
inline u64 residue_class(const FqPoly& g, const Place& P, u64 p, const FqElem& zeta) {
    const FqField& F = g.field();
    const u128 qd = checked_pow(static_cast<u64>(F.order()), static_cast<u64>(P.degree()));
    FqPoly r = g.powmod((qd - 1) / p, P.pi);
    if (r.degree() != 0) throw verification_error("power residue is not a constant");
    FqElem z = F.one();
    for (u64 c = 0; c < p; ++c) {
        if (r.coeff(0) == z) return c;
        z = z * zeta;
    }
    throw verification_error("power residue is not a p-th root of unity");
}

// ---------------------------------------------------------------------------
// Power classes

/// Coordinates of [a] in the class group F^*/F^*p.
struct PowerClass {
    FieldDescriptor::Kind kind;
    u64 unit = 0;                   // class of the leading/constant/residue unit
    u64 val = 0;                    // Laurent: valuation mod p
    std::map<Place, u64> places;    // RatFunc: finite places with nonzero exponent mod p
    u64 inf = 0;                    // RatFunc: v_inf mod p (determined by the others)

    bool is_zero() const {
        return unit == 0 && val == 0 && inf == 0 &&
               std::all_of(places.begin(), places.end(), [](const auto& kv) { return kv.second == 0; });
    }
};

inline PowerClass power_class(const FieldDescriptor& D, const FieldElem& x) {
    if (detail::elem_is_zero(x)) throw usage_error("power_class: zero element");
    const u64 p = D.p;
    const FqElem zeta = D.zeta();
    PowerClass c{D.kind};
    switch (D.kind) {
        case FieldDescriptor::Kind::Fin:
            c.unit = power_residue_class(std::get<FqElem>(x), p, zeta);
            break;
        case FieldDescriptor::Kind::Laurent: {
            const auto& a = std::get<Laurent>(x);
            c.unit = power_residue_class(a.leading(), p, zeta);
            c.val = mod_norm(a.valuation(), p);
            break;
        }
        case FieldDescriptor::Kind::RatFunc: {
            const auto& f = std::get<RatFunc>(x);
            c.unit = power_residue_class(f.leading(), p, zeta);
            for (auto& P : support(f)) {
                u64 e = mod_norm(f.valuation_at(P.pi), p);
                if (e) c.places[P] = e;
            }
            c.inf = mod_norm(f.valuation_at_infinity(), p);
            break;
        }
    }
    return c;
}

namespace detail {

/// Rows = class coordinates of each element over a common coordinate system.
inline std::vector<std::vector<u64>> class_matrix(const std::vector<PowerClass>& cls) {
    std::vector<Place> keys;
    for (auto& c : cls)
        for (auto& kv : c.places) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<std::vector<u64>> rows;
    for (auto& c : cls) {
        std::vector<u64> r{c.unit, c.val};
        for (auto& k : keys) {
            auto it = c.places.find(k);
            r.push_back(it == c.places.end() ? 0 : it->second);
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

/// Rank of a matrix over Z/p.
inline int rank_mod_p(std::vector<std::vector<u64>> m, u64 p) {
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    int rank = 0;
    for (std::size_t col = 0; col < cols && rank < static_cast<int>(m.size()); ++col) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][col] % p == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        u64 inv = mod_inv(m[rank][col] % p, p);
        for (auto& x : m[rank]) x = x * inv % p;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || m[r][col] % p == 0) continue;
            u64 f = m[r][col] % p;
            for (std::size_t c2 = 0; c2 < cols; ++c2) m[r][c2] = (m[r][c2] + (p - f) * m[rank][c2]) % p;
        }
        ++rank;
    }
    return rank;
}

/// Basis of {x in (Z/p)^n : sum_j x_j * column_j == 0} where columns are given as rows of `cols`
/// (one row per unknown). Result vectors are in reduced echelon form, deterministic.
inline std::vector<std::vector<u64>> nullspace_mod_p(const std::vector<std::vector<u64>>& cols, u64 p) {
    const std::size_t n = cols.size();
    const std::size_t eqs = n ? cols[0].size() : 0;
    // matrix A (eqs x n)
    std::vector<std::vector<u64>> A(eqs, std::vector<u64>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < eqs; ++i) A[i][j] = cols[j][i] % p;
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < eqs; ++col) {
        std::size_t piv = row;
        while (piv < eqs && A[piv][col] == 0) ++piv;
        if (piv == eqs) continue;
        std::swap(A[piv], A[row]);
        u64 inv = mod_inv(A[row][col], p);
        for (auto& x : A[row]) x = x * inv % p;
        for (std::size_t r = 0; r < eqs; ++r) {
            if (r == row || A[r][col] == 0) continue;
            u64 f = A[r][col];
            for (std::size_t c2 = 0; c2 < n; ++c2) A[r][c2] = (A[r][c2] + (p - f) * A[row][c2]) % p;
        }
        pivot_col.push_back(static_cast<int>(col));
        ++row;
    }
    std::vector<std::vector<u64>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(free)) != pivot_col.end()) continue;
        std::vector<u64> v(n, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = (p - A[r][free]) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace detail

/// Independence of the classes of `elems` in F^*/F^*p.
inline bool classes_independent(const FieldDescriptor& D, const std::vector<FieldElem>& elems) {
    std::vector<PowerClass> cls;
    for (auto& e : elems) cls.push_back(power_class(D, e));
    return detail::rank_mod_p(detail::class_matrix(cls), D.p) == static_cast<int>(elems.size());
}

// ---------------------------------------------------------------------------
// p-th powers

/// Exact p-th root when x is a p-th power (Laurent roots to the field precision).
inline std::optional<FieldElem> is_pth_power(const FieldDescriptor& D, const FieldElem& x) {
    if (detail::elem_is_zero(x)) throw usage_error("is_pth_power: zero element");
    if (!power_class(D, x).is_zero()) return std::nullopt;
    const u64 p = D.p;
    switch (D.kind) {
        case FieldDescriptor::Kind::Fin:
            return FieldElem(pth_root_fq(std::get<FqElem>(x), p));
        case FieldDescriptor::Kind::Laurent: {
            auto r = laurent_pth_root(std::get<Laurent>(x), p, D.precision);
            if (!r) throw verification_error("class zero but no p-th root found");
            return FieldElem(*r);
        }
        case FieldDescriptor::Kind::RatFunc: {
            const auto& f = std::get<RatFunc>(x);
            const FqField& F = *D.F;
            FqPoly num = FqPoly::constant(pth_root_fq(f.leading(), p));
            FqPoly den = FqPoly::constant(F.one());
            for (auto& P : support(f)) {
                long long v = f.valuation_at(P.pi);
                if (v > 0) num = num * P.pi.pow(static_cast<u64>(v) / p);
                if (v < 0) den = den * P.pi.pow(static_cast<u64>(-v) / p);
            }
            return FieldElem(RatFunc(num, den));
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Norm-residue symbols

/// Tame symbol (a, b) over F_q((u)): class of (-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)} at the residue.
inline u64 tame_symbol_local(const FieldDescriptor& D, const Laurent& a, const Laurent& b) {
    detail::require_kind(D, FieldDescriptor::Kind::Laurent, "tame_symbol_local");
    if (a.is_zero() || b.is_zero()) throw usage_error("tame_symbol_local: zero argument");
    const long long va = a.valuation(), vb = b.valuation();
    FqElem r = a.leading().powi(vb) * b.leading().powi(-va);
    if ((va * vb) % 2 != 0) r = -r;
    return power_residue_class(r, D.p, D.zeta());
}

/// Place-indexed symbol values in Z/p; places not listed carry 0.
struct SymbolVector {
    std::map<Place, u64> values;
    u64 total = 0;  // sum of all values mod p; 0 by reciprocity

    bool is_zero() const {
        return std::all_of(values.begin(), values.end(), [](const auto& kv) { return kv.second == 0; });
    }
    u64 at(const Place& P) const {
        auto it = values.find(P);
        return it == values.end() ? 0 : it->second;
    }
};

/// Tame symbol of (a, b) at a single place of F_q(t).
inline u64 tame_symbol_at(const FieldDescriptor& D, const RatFunc& a, const RatFunc& b, const Place& P) {
    const u64 p = D.p;
    const FqElem zeta = D.zeta();
    if (P.infinite) {
        const long long va = a.valuation_at_infinity(), vb = b.valuation_at_infinity();
        FqElem r = a.leading().powi(vb) * b.leading().powi(-va);
        if ((va * vb) % 2 != 0) r = -r;
        return power_residue_class(r, p, zeta);
    }
    const long long va = a.valuation_at(P.pi), vb = b.valuation_at(P.pi);
    // class is additive: vb*[a'] - va*[b'] with a' = a / pi^va; [-1] = 0 for odd p
    auto unit_class = [&](const RatFunc& f, long long v) -> long long {
        FqPoly n = f.num(), d = f.den();
        if (v > 0) n = n / P.pi.pow(static_cast<u64>(v));
        if (v < 0) d = d / P.pi.pow(static_cast<u64>(-v));
        long long cn = static_cast<long long>(residue_class(n % P.pi, P, p, zeta));
        long long cd = static_cast<long long>(residue_class(d % P.pi, P, p, zeta));
        return cn - cd;
    };
    long long c = vb * unit_class(a, va) - va * unit_class(b, vb);
    return mod_norm(c, p);
}

inline SymbolVector symbol_vector_global(const FieldDescriptor& D, const RatFunc& a, const RatFunc& b) {
    detail::require_kind(D, FieldDescriptor::Kind::RatFunc, "symbol_vector_global");
    if (a.is_zero() || b.is_zero()) throw usage_error("symbol_vector_global: zero argument");
    std::vector<Place> places = support(a);
    auto sb = support(b);
    places.insert(places.end(), sb.begin(), sb.end());
    std::sort(places.begin(), places.end());
    places.erase(std::unique(places.begin(), places.end()), places.end());
    places.push_back(Place::at_infinity());
    SymbolVector sv;
    u64 total = 0;
    for (auto& P : places) {
        u64 v = tame_symbol_at(D, a, b, P);
        sv.values[P] = v;
        total = (total + v) % D.p;
    }
    sv.total = total;
    if (total != 0) throw verification_error("reciprocity violated: symbol values sum to " + std::to_string(total));
    return sv;
}

/// Symbol coordinates as a flat vector (Laurent: one entry; RatFunc: per place; Fin: none).
inline std::map<std::string, u64> symbol_coordinates(const FieldDescriptor& D, const FieldElem& a, const FieldElem& b) {
    std::map<std::string, u64> out;
    switch (D.kind) {
        case FieldDescriptor::Kind::Fin:
            break;
        case FieldDescriptor::Kind::Laurent:
            out["local"] = tame_symbol_local(D, std::get<Laurent>(a), std::get<Laurent>(b));
            break;
        case FieldDescriptor::Kind::RatFunc:
            for (auto& [P, v] : symbol_vector_global(D, std::get<RatFunc>(a), std::get<RatFunc>(b)).values)
                if (v) out[P.str()] = v;
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rigidity

/// Canonical class-group basis: {u*} for F_q, {u*, t} for F_q((t)).
inline std::vector<FieldElem> canonical_basis(const FieldDescriptor& D) {
    const FqElem u = D.unit_generator();
    switch (D.kind) {
        case FieldDescriptor::Kind::Fin:
            return {u};
        case FieldDescriptor::Kind::Laurent:
            return {Laurent::constant(u), Laurent::monomial(D.F->one(), 1)};
        case FieldDescriptor::Kind::RatFunc:
            return {RatFunc::t(*D.F), RatFunc(FqPoly::from_ints(*D.F, {1, -1}))};
    }
    return {};
}

struct ElementRigidity {
    bool rigid;
    std::vector<std::vector<u64>> kernel;  // basis of the kernel of b -> (a, b) on span(basis)
    std::vector<u64> a_coordinates;        // [a] in the given basis
    std::vector<std::map<std::string, u64>> symbols;  // (a, basis_j)
};

namespace detail {
inline std::vector<std::vector<u64>> symbol_columns(const std::vector<std::map<std::string, u64>>& syms) {
    std::vector<std::string> keys;
    for (auto& s : syms)
        for (auto& kv : s) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<std::vector<u64>> cols;
    for (auto& s : syms) {
        std::vector<u64> c;
        for (auto& k : keys) {
            auto it = s.find(k);
            c.push_back(it == s.end() ? 0 : it->second);
        }
        if (c.empty()) c.push_back(0);
        cols.push_back(std::move(c));
    }
    return cols;
}
}  // namespace detail

inline ElementRigidity is_element_rigid(const FieldDescriptor& D, const FieldElem& a, const std::vector<FieldElem>& basis) {
    if (is_pth_power(D, a)) throw usage_error("is_element_rigid: a is a p-th power");
    if (!classes_independent(D, basis)) throw usage_error("is_element_rigid: basis classes are dependent");
    const u64 p = D.p;
    // coordinates of [a]: the unique x with [a] - sum x_j [b_j] = 0
    std::vector<PowerClass> cls;
    for (auto& b : basis) cls.push_back(power_class(D, b));
    cls.push_back(power_class(D, a));
    auto rows = detail::class_matrix(cls);
    auto ns = detail::nullspace_mod_p(rows, p);
    std::optional<std::vector<u64>> coords;
    for (auto& v : ns) {
        if (v.back() == 0) continue;
        u64 s = mod_inv(v.back(), p);
        std::vector<u64> x;
        for (std::size_t j = 0; j + 1 < v.size(); ++j) x.push_back((p - v[j] * s % p) % p);
        coords = x;
        break;
    }
    if (!coords) throw usage_error("is_element_rigid: [a] is not in the span of the basis");
    ElementRigidity r{false, {}, *coords, {}};
    for (auto& b : basis) r.symbols.push_back(symbol_coordinates(D, a, b));
    r.kernel = detail::nullspace_mod_p(detail::symbol_columns(r.symbols), p);
    r.rigid = r.kernel.size() == 1;
    return r;
}

struct FieldRigidity {
    bool rigid;
    std::string completeness;  // "complete", "subspace-only" or "trivial"
    int wedge_rank;
    int wedge_count;
    std::vector<std::pair<int, int>> wedges;                 // basis index pairs
    std::vector<std::map<std::string, u64>> wedge_symbols;  // symbol coordinates per wedge
    std::optional<std::pair<int, int>> steinberg_pair;       // independent pair with zero symbol
};

inline FieldRigidity is_field_rigid(const FieldDescriptor& D, const std::vector<FieldElem>& basis) {
    if (!classes_independent(D, basis)) throw usage_error("is_field_rigid: dependent basis");
    FieldRigidity r{true, "", 0, 0, {}, {}, std::nullopt};
    for (int i = 0; i < static_cast<int>(basis.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(basis.size()); ++j) {
            r.wedges.emplace_back(i, j);
            r.wedge_symbols.push_back(symbol_coordinates(D, basis[i], basis[j]));
        }
    r.wedge_count = static_cast<int>(r.wedges.size());
    auto cols = detail::symbol_columns(r.wedge_symbols);
    r.wedge_rank = detail::rank_mod_p(cols, D.p);
    r.rigid = r.wedge_rank == r.wedge_count;
    for (std::size_t w = 0; w < r.wedges.size() && !r.steinberg_pair; ++w)
        if (r.wedge_symbols[w].empty()) r.steinberg_pair = r.wedges[w];
    switch (D.kind) {
        case FieldDescriptor::Kind::Fin:
            r.completeness = "trivial";
            break;
        case FieldDescriptor::Kind::Laurent:
            // the class group of F_q((u)) has dimension 2
            r.completeness = basis.size() == 2 ? "complete" : "subspace-only";
            break;
        case FieldDescriptor::Kind::RatFunc:
            r.completeness = (!r.rigid && r.steinberg_pair) ? "complete" : "subspace-only";
            break;
    }
    return r;
}

inline FieldRigidity is_field_rigid(const FieldDescriptor& D) { return is_field_rigid(D, canonical_basis(D)); }

struct SteinbergWitness {
    RatFunc a;  // 1 - t
    RatFunc b;  // t
    bool independent;
    SymbolVector symbols;
    bool norm_identity;  // prod_i (1 - zeta^i x) == 1 - x^p, so N(1 - t^{1/p}) = 1 - t
};

inline SteinbergWitness steinberg_witness(const FieldDescriptor& D) {
    if (D.kind != FieldDescriptor::Kind::RatFunc)
        throw usage_error("steinberg_witness: " + D.str() + " has no Steinberg witness (only rational function fields)");
    const FqField& F = *D.F;
    RatFunc a(FqPoly::from_ints(F, {1, -1}));
    RatFunc b = RatFunc::t(F);
    SteinbergWitness w{a, b, false, symbol_vector_global(D, a, b), false};
    auto sa = support(a), sb = support(b);
    bool disjoint = std::none_of(sa.begin(), sa.end(), [&](const Place& P) { return std::find(sb.begin(), sb.end(), P) != sb.end(); });
    w.independent = disjoint && classes_independent(D, {a, b});
    FqElem zeta = D.zeta();
    FqPoly prod = FqPoly::constant(F.one());
    FqElem z = F.one();
    for (u64 i = 0; i < D.p; ++i) {
        prod = prod * FqPoly(F, {F.one(), -z});
        z = z * zeta;
    }
    std::vector<FqElem> target(D.p + 1, F.zero());
    target[0] = F.one();
    target[D.p] = -F.one();
    w.norm_identity = prod == FqPoly(F, target);
    return w;
}

// ---------------------------------------------------------------------------
// Degree-p extensions of F_q((u))

struct Extension {
    FieldDescriptor field;
    bool ramified;
    Embedding coefficient_map;  // F_q -> coefficient field of E
    FqElem twist;               // ramified: u = twist^-1 * s^p; unramified: 1
    FqElem radicand_unit;       // unramified: E = F(radicand_unit^(1/p))
    bool root_check = false;    // image of a is a p-th power in E

    /// Re-express an element of the base field in E.
    Laurent embed(const Laurent& x) const {
        Laurent y = x.mapped(coefficient_map);
        if (!ramified) return y;
        return y.twisted(coefficient_map(twist).inv()).ramified(static_cast<long long>(field.p));
    }
};

inline Extension extend_by_pth_root(const FieldDescriptor& D, const Laurent& a) {
    detail::require_kind(D, FieldDescriptor::Kind::Laurent, "extend_by_pth_root");
    if (is_pth_power(D, a)) throw usage_error("extend_by_pth_root: a is a p-th power");
    const u64 p = D.p;
    const FqField& F = *D.F;
    const long long v = a.valuation();
    const long long pl = static_cast<long long>(p);
    auto finish = [&](Extension e) {
        auto r = is_pth_power(e.field, e.embed(a));
        e.root_check = r.has_value();
        if (!e.root_check) throw verification_error("extension does not contain a p-th root of a");
        return e;
    };
    if (v % pl == 0) {
        // a = c0 * (p-th power): unramified, coefficient field grows to F_{q^p}
        const FqField& Fe = field_make(F.ell(), F.degree() * static_cast<int>(p));
        Embedding phi = make_embedding(F, Fe);
        auto E = FieldDescriptor::laurent(Fe, p, D.precision, D.uniformizer);
        return finish(Extension{E, false, phi, F.one(), a.leading()});
    }
    // a^j t^{-(jv-1)} = c0' t (1 + ...): j v == 1 mod p
    long long j = 1;
    while (mod_norm(j * v, p) != 1) ++j;
    FqElem c0 = a.leading().powi(j);
    Embedding phi = make_embedding(F, F);
    auto E = FieldDescriptor::laurent(F, p, D.precision, D.uniformizer + "'");
    return finish(Extension{E, true, phi, c0, F.one()});
}

struct HereditaryNode {
    std::vector<std::string> path;  // radicands adjoined, outermost last
    std::string field;
    bool ramified;
    bool rigid;
    std::string completeness;
    int depth;
};

struct HereditaryReport {
    FieldRigidity base;
    std::vector<HereditaryNode> nodes;
    int leaves = 0;
    bool all_rigid = true;
};

namespace detail {
inline void hereditary_walk(const FieldDescriptor& D, int depth, int max_depth, std::vector<std::string>& path,
                            HereditaryReport& rep) {
    if (depth == max_depth) return;
    const u64 p = D.p;
    const FqElem u = D.unit_generator();
    // one radicand per line of (Z/p)^2 = <[u*], [t]>: u*, then u*^i t
    std::vector<std::pair<std::string, Laurent>> radicands;
    radicands.emplace_back("u*", Laurent::constant(u));
    for (u64 i = 0; i < p; ++i) {
        std::string name = i == 0 ? D.uniformizer : "u*^" + std::to_string(i) + "*" + D.uniformizer;
        radicands.emplace_back(name, Laurent::monomial(u.pow(i), 1));
    }
    for (auto& [name, rad] : radicands) {
        Extension ext = extend_by_pth_root(D, rad);
        FieldRigidity fr = is_field_rigid(ext.field);
        path.push_back(name + " over " + D.str());
        rep.nodes.push_back({path, ext.field.str(), ext.ramified, fr.rigid && fr.completeness == "complete", fr.completeness, depth + 1});
        if (!rep.nodes.back().rigid) rep.all_rigid = false;
        if (depth + 1 == max_depth) ++rep.leaves;
        hereditary_walk(ext.field, depth + 1, max_depth, path, rep);
        path.pop_back();
    }
}
}  // namespace detail

inline HereditaryReport hereditary_probe(const FieldDescriptor& D, int depth) {
    detail::require_kind(D, FieldDescriptor::Kind::Laurent, "hereditary_probe");
    if (depth < 0 || depth > 3) throw usage_error("hereditary_probe: depth must lie in [0, 3]");
    HereditaryReport rep{is_field_rigid(D), {}, 0, true};
    rep.all_rigid = rep.base.rigid;
    if (depth == 0) {
        rep.leaves = 1;
        return rep;
    }
    std::vector<std::string> path;
    detail::hereditary_walk(D, 0, depth, path, rep);
    return rep;
}

// ---------------------------------------------------------------------------
// Kummer towers F^(n) = F(zeta_{p^{k+n-1}}, t^{1/p^{n-1}})

struct TowerLevel {
    int n;
    FieldDescriptor base;
    int r;  // coefficient field F_{q^{p^r}}
    int s;  // uniformizer t^{1/p^s}
    FieldDescriptor level;
    FqElem zeta;              // primitive p^{k+n-1}-th root of unity in the coefficient field
    u64 zeta_order;
    bool zeta_in_field;       // p^{k+n-1} | Q - 1
    bool zeta_nonresidue;     // zeta^((Q-1)/p) != 1, by exponent arithmetic and by evaluation
    bool zeta_compatible;     // zeta^{p^{n-1}} is the base field's zeta_{p^k}
    int class_dimension;      // dimension of the class group of the level
    bool basis_independent;   // {[zeta], [t^{1/p^{n-1}}]}
    std::vector<std::pair<std::string, u64>> generators;  // (radicand, root degree)
};

inline TowerLevel kummer_tower(const FieldDescriptor& D, int n, int max_n = 4) {
    detail::require_kind(D, FieldDescriptor::Kind::Laurent, "kummer_tower");
    if (n < 1) throw usage_error("kummer_tower: n must be >= 1");
    if (n > max_n) throw resource_error("kummer_tower: level " + std::to_string(n) + " exceeds bound " + std::to_string(max_n));
    if (!is_field_rigid(D).rigid) throw usage_error("kummer_tower: base field is not rigid");
    const u64 p = D.p;
    const int steps = n - 1;
    const int deg = D.F->degree() * static_cast<int>(checked_pow(p, steps));
    const FqField& Fq = field_make(D.F->ell(), deg);
    Embedding phi = make_embedding(*D.F, Fq);
    const int h = D.k + steps;
    const u128 Q1 = Fq.order() - 1;
    const u64 zorder = static_cast<u64>(checked_pow(p, h));
    TowerLevel L{n, D, steps, steps, FieldDescriptor::laurent(Fq, p, D.precision, steps ? D.uniformizer + "^(1/" + std::to_string(checked_pow(p, steps) == 0 ? 0 : static_cast<u64>(checked_pow(p, steps))) + ")" : D.uniformizer),
                 Fq.one(), zorder, false, false, false, 0, false, {}};
    L.zeta_in_field = Q1 % zorder == 0;
    if (!L.zeta_in_field) return L;
    FqElem base_zeta = root_of_unity(*D.F, p, D.k);
    L.zeta = root_of_unity_chain(phi(base_zeta), p, h);
    L.zeta_compatible = L.zeta.pow(static_cast<u128>(checked_pow(p, steps))) == phi(base_zeta);
    const bool exponent_test = ((Q1 / p) % zorder) != 0;
    L.zeta_nonresidue = exponent_test && !L.zeta.pow(Q1 / p).is_one();
    L.class_dimension = (Q1 % p == 0 ? 1 : 0) + 1;
    L.basis_independent =
        classes_independent(L.level, {Laurent::constant(L.zeta), Laurent::monomial(Fq.one(), 1)});
    L.generators.emplace_back("zeta_" + std::to_string(zorder), zorder);
    L.generators.emplace_back(D.uniformizer, static_cast<u64>(checked_pow(p, steps)));
    return L;
}

// ---------------------------------------------------------------------------
// Galois groups of the tower

struct TowerGalois {
    ThetaAbelianSpec spec;            // theta(p, k, 1, n-1)
    TowerGroupInfo model;             // invariants of the affine model
    u64 automorphism_order = 1;       // order of the group of (zeta, t^{1/p^{n-1}}) actions
    bool automorphism_abelian = true;
    u64 automorphism_derived_order = 1;
    u64 automorphism_exponent = 1;
    bool relation_holds = true;       // sigma rho sigma^-1 == rho^{1+p^k}, element-wise
    bool sigma_is_frobenius_power = true;
    bool model_powerful = true;
    bool consistent = true;
};

inline TowerGalois tower_galois_group(const FieldDescriptor& D, int n, const GroupLimits& lim = {}) {
    detail::require_kind(D, FieldDescriptor::Kind::Laurent, "tower_galois_group");
    if (n < 1) throw usage_error("tower_galois_group: n must be >= 1");
    if (!is_field_rigid(D).rigid) throw usage_error("tower_galois_group: base field is not rigid");
    const u64 p = D.p;
    ThetaAbelianSpec spec{p, D.k, 1, std::max(1, n - 1)};
    TowerGalois g{spec, tower_group(ThetaAbelianSpec{p, D.k, 1, 1}, n, lim)};
    g.spec.m = n - 1;
    if (n == 1) return g;
    const int m = n - 1;
    const u64 Mz = static_cast<u64>(checked_pow(p, D.k + m));  // order of the tower's zeta
    const u64 Mr = static_cast<u64>(checked_pow(p, m));        // ramification index
    const u64 q_mod = static_cast<u64>(D.F->order() % Mz);
    // cyclotomic image <q> in (Z/Mz)^*, identity first
    std::vector<u64> A{1 % Mz};
    for (u64 x = q_mod; x != 1 % Mz; x = x * q_mod % Mz) A.push_back(x);
    const u64 theta = (1 + static_cast<u64>(checked_pow(p, D.k))) % Mz;
    g.sigma_is_frobenius_power = std::find(A.begin(), A.end(), theta) != A.end();
    // (a, b): zeta -> zeta^a, z -> zeta_{p^m}^b z; (a,b)(a',b') = (a a', a b' + b)
    std::map<u64, Elem> a_index;
    for (std::size_t i = 0; i < A.size(); ++i) a_index[A[i]] = static_cast<Elem>(i);
    const u64 N = A.size() * Mr;
    auto idx = [&](u64 a, u64 b) { return static_cast<Elem>(a_index.at(a) + A.size() * b); };
    std::vector<std::vector<Elem>> table(N, std::vector<Elem>(N));
    for (u64 x = 0; x < N; ++x) {
        u64 a = A[x % A.size()], b = x / A.size();
        for (u64 y = 0; y < N; ++y) {
            u64 a2 = A[y % A.size()], b2 = y / A.size();
            table[x][y] = idx(a * a2 % Mz, (a % Mr * b2 + b) % Mr);
        }
    }
    auto aut = GroupSpec::table(std::move(table), "galois-automorphisms", lim);
    Subgroup W = whole_group(aut);
    g.automorphism_order = W.order();
    g.automorphism_abelian = true;
    for (Elem x : W.elements())
        for (Elem y : W.elements())
            if (aut->mul(x, y) != aut->mul(y, x)) g.automorphism_abelian = false;
    g.automorphism_derived_order = commutator_subgroup(W, W).order();
    g.automorphism_exponent = exponent(W);
    if (g.sigma_is_frobenius_power) {
        Elem sigma = idx(theta, 0), rho = idx(1 % Mz, 1 % Mr);
        g.relation_holds = aut->conjugate(sigma, rho) == aut->pow(rho, theta);
    } else {
        g.relation_holds = false;
    }
    auto model = GroupSpec::theta(g.spec, lim);
    Subgroup MW = whole_group(model);
    g.model_powerful = is_powerful(MW).powerful;
    g.consistent = g.relation_holds && g.model.order == g.automorphism_order && g.model.is_abelian == g.automorphism_abelian &&
                   g.model.derived_order == g.automorphism_derived_order && g.model.exponent == g.automorphism_exponent;
    return g;
}

// ---------------------------------------------------------------------------
// Lemma: K(a^{1/p})/F Galois iff sigma(a)/a is a p-th power in K for all sigma

/// Automorphism of F_Q((z)) over the base: coefficients -> c^(ell^frobenius), z -> scale * z.
struct LaurentAutomorphism {
    int frobenius = 0;
    FqElem scale;

    Laurent apply(const Laurent& x) const { return x.frobenius(frobenius).twisted(scale); }
};

struct GaloisVerdict {
    std::string status;  // "Galois", "non-Galois certified" or "undecided"
    std::optional<std::size_t> failing;  // index of the automorphism whose quotient is not a p-th power
    std::vector<PowerClass> quotient_classes;
    std::string certificate;
};

inline GaloisVerdict galois_criterion(const FieldDescriptor& K, const Laurent& a, const std::vector<LaurentAutomorphism>& autos) {
    detail::require_kind(K, FieldDescriptor::Kind::Laurent, "galois_criterion");
    if (a.is_zero()) throw usage_error("galois_criterion: zero element");
    GaloisVerdict v{"Galois", std::nullopt, {}, ""};
    for (std::size_t i = 0; i < autos.size(); ++i) {
        Laurent quotient = autos[i].apply(a) * a.inverse(K.precision);
        PowerClass c = power_class(K, quotient);
        v.quotient_classes.push_back(c);
        if (!c.is_zero() && !v.failing) {
            v.failing = i;
            v.status = "non-Galois certified";
            v.certificate = "sigma_" + std::to_string(i) + "(a)/a has class (unit " + std::to_string(c.unit) +
                            ", valuation " + std::to_string(c.val) + ") != 0";
        }
    }
    return v;
}

}  // namespace prigid
