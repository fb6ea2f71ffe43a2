#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arith.hpp"
#include "error.hpp"

namespace prigid {

/// Limits shared by the group engine.
struct GroupLimits {
    u64 order_bound = 59049;  // 3^10
    int max_depth = 6;        // truncation depth m of theta models
    int max_rank_for_maximal = 4;
    int assoc_samples = 1000;
    u64 exhaustive_assoc_below = 512;
};

/// Theta-abelian model: sigma acting on rho_1..rho_r by the scalar 1 + p^k, everything mod p^m.
/// k == nullopt stands for k = infinity (trivial action).
struct ThetaAbelianSpec {
    u64 p = 3;
    std::optional<int> k = 1;
    int rho_count = 1;
    int m = 1;

    int generator_count() const { return rho_count + 1; }

    std::string str() const {
        return "theta(" + std::to_string(p) + "," + (k ? std::to_string(*k) : std::string("inf")) + "," +
               std::to_string(rho_count) + "," + std::to_string(m) + ")";
    }

    void validate(const GroupLimits& lim = {}) const {
        if (p < 3 || !is_prime(p)) throw usage_error("theta: p must be an odd prime");
        if (k && *k < 1) throw usage_error("theta: k must be >= 1 or inf");
        if (rho_count < 0) throw usage_error("theta: number of rho generators must be >= 0");
        if (m < 1 || m > lim.max_depth)
            throw usage_error("theta: depth m must lie in [1, " + std::to_string(lim.max_depth) + "]");
    }
};

using Elem = std::uint32_t;

/// A finite p-group with a multiplication oracle. Elements are dense indices 0..order-1,
/// index 0 is the identity.
class GroupSpec {
public:
    enum class Kind { ThetaAbelian, Unitriangular, Table };

    static std::shared_ptr<const GroupSpec> theta(const ThetaAbelianSpec& spec, const GroupLimits& lim = {}) {
        spec.validate(lim);
        auto g = std::shared_ptr<GroupSpec>(new GroupSpec());
        g->kind_ = Kind::ThetaAbelian;
        g->theta_ = spec;
        g->p_ = spec.p;
        g->limits_ = lim;
        g->modulus_ = static_cast<u64>(checked_pow(spec.p, spec.m));
        g->width_ = spec.rho_count + 1;
        g->order_ = static_cast<u64>(checked_pow(g->modulus_, g->width_));
        g->check_order();
        u64 theta = spec.k ? (1 + static_cast<u64>(checked_pow(spec.p, *spec.k))) % g->modulus_ : 1 % g->modulus_;
        g->theta_pow_.resize(g->modulus_);
        u64 v = 1 % g->modulus_;
        for (u64 s = 0; s < g->modulus_; ++s) {
            g->theta_pow_[s] = v;
            v = v * theta % g->modulus_;
        }
        g->name_ = spec.str();
        for (int i = 0; i < g->width_; ++i) {
            std::vector<u64> c(g->width_, 0);
            c[i] = 1;
            g->gens_.push_back(g->encode(c));
        }
        return g;
    }

    /// Upper unitriangular n x n matrices over Z/p^e.
    static std::shared_ptr<const GroupSpec> unitriangular(int n, u64 p, int e, const GroupLimits& lim = {}) {
        if (!is_prime(p)) throw usage_error("ut: p must be prime");
        if (n < 1 || e < 1) throw usage_error("ut: need n >= 1 and e >= 1");
        auto g = std::shared_ptr<GroupSpec>(new GroupSpec());
        g->kind_ = Kind::Unitriangular;
        g->p_ = p;
        g->limits_ = lim;
        g->n_ = n;
        g->modulus_ = static_cast<u64>(checked_pow(p, e));
        g->width_ = n * (n - 1) / 2;
        g->order_ = static_cast<u64>(checked_pow(g->modulus_, g->width_));
        g->check_order();
        g->name_ = "ut(" + std::to_string(n) + "," + std::to_string(p) + "," + std::to_string(e) + ")";
        for (int i = 0; i + 1 < n; ++i) {
            std::vector<u64> c(g->width_, 0);
            c[g->ut_slot(i, i + 1)] = 1;
            g->gens_.push_back(g->encode(c));
        }
        return g;
    }

    /// Explicit Cayley table; row 0 must be the identity.
    static std::shared_ptr<const GroupSpec> table(std::vector<std::vector<Elem>> rows, const std::string& name = "table",
                                                  const GroupLimits& lim = {}) {
        auto g = std::shared_ptr<GroupSpec>(new GroupSpec());
        g->kind_ = Kind::Table;
        g->limits_ = lim;
        g->name_ = name;
        const u64 n = rows.size();
        if (n == 0) throw usage_error("table: empty multiplication table");
        g->order_ = n;
        g->check_order();
        for (u64 i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw usage_error("table: row " + std::to_string(i) + " has wrong length");
            for (Elem x : rows[i])
                if (x >= n) throw usage_error("table: entry out of range in row " + std::to_string(i));
        }
        for (u64 i = 0; i < n; ++i) {
            if (rows[0][i] != i || rows[i][0] != i) throw usage_error("table: element 0 is not the identity");
        }
        g->table_ = std::move(rows);
        g->inverse_.assign(n, 0);
        for (u64 i = 0; i < n; ++i) {
            bool found = false;
            for (u64 j = 0; j < n && !found; ++j) {
                if (g->table_[i][j] == 0) {
                    if (g->table_[j][i] != 0) throw usage_error("table: one-sided inverse for " + std::to_string(i));
                    g->inverse_[i] = static_cast<Elem>(j);
                    found = true;
                }
            }
            if (!found) throw usage_error("table: element " + std::to_string(i) + " has no inverse");
        }
        u64 p = 0;
        for (u64 d = 2; d <= n; ++d)
            if (n % d == 0) {
                p = d;
                break;
            }
        if (n > 1 && exact_log(n, p) < 0) throw usage_error("table: order " + std::to_string(n) + " is not a prime power");
        g->p_ = n > 1 ? p : 2;
        g->width_ = 1;
        g->modulus_ = n;
        g->check_associativity();
        // greedy generating set: smallest index outside the span so far
        std::vector<char> in(n, 0);
        in[0] = 1;
        std::vector<Elem> span{0};
        for (Elem x = 1; x < n; ++x) {
            if (in[x]) continue;
            g->gens_.push_back(x);
            span = g->close(g->gens_);
            std::fill(in.begin(), in.end(), 0);
            for (Elem y : span) in[y] = 1;
        }
        return g;
    }

    static std::shared_ptr<const GroupSpec> table_file(const std::string& path, const GroupLimits& lim = {}) {
        std::ifstream in(path);
        if (!in) throw usage_error("table: cannot open " + path);
        std::vector<std::vector<Elem>> rows;
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::vector<Elem> row;
            long long v;
            while (ls >> v) {
                if (v < 0) throw usage_error("table: negative entry");
                row.push_back(static_cast<Elem>(v));
            }
            if (!row.empty()) rows.push_back(std::move(row));
        }
        return table(std::move(rows), "table:" + path, lim);
    }

    Kind kind() const { return kind_; }
    u64 p() const { return p_; }
    u64 order() const { return order_; }
    const std::string& name() const { return name_; }
    const std::vector<Elem>& generators() const { return gens_; }
    const GroupLimits& limits() const { return limits_; }
    const std::optional<ThetaAbelianSpec>& theta_spec() const { return theta_; }
    static constexpr Elem identity() { return 0; }

    Elem mul(Elem a, Elem b) const {
        switch (kind_) {
            case Kind::Table:
                return table_[a][b];
            case Kind::ThetaAbelian: {
                // (s, v)(t, w) = (s + t, v + theta^s w)
                const u64 M = modulus_;
                u64 s = a % M, t = b % M;
                u64 ra = a / M, rb = b / M;
                u64 th = theta_pow_[s];
                u64 out = 0, scale = 1;
                for (int i = 1; i < width_; ++i) {
                    u64 v = ra % M, w = rb % M;
                    ra /= M;
                    rb /= M;
                    out += ((v + th * w) % M) * scale;
                    scale *= M;
                }
                return static_cast<Elem>((s + t) % M + out * M);
            }
            case Kind::Unitriangular: {
                auto A = coords(a), B = coords(b);
                std::vector<u64> C(width_);
                for (int i = 0; i < n_; ++i)
                    for (int j = i + 1; j < n_; ++j) {
                        u64 v = A[ut_slot(i, j)] + B[ut_slot(i, j)];
                        for (int k = i + 1; k < j; ++k) v += A[ut_slot(i, k)] * B[ut_slot(k, j)];
                        C[ut_slot(i, j)] = v % modulus_;
                    }
                return encode(C);
            }
        }
        return 0;
    }

    Elem inv(Elem a) const {
        switch (kind_) {
            case Kind::Table:
                return inverse_[a];
            case Kind::ThetaAbelian: {
                // (s, v)^-1 = (-s, -theta^-s v)
                const u64 M = modulus_;
                auto c = coords(a);
                u64 s = c[0];
                u64 ns = (M - s) % M;
                u64 th = theta_pow_[ns];
                c[0] = ns;
                for (int i = 1; i < width_; ++i) c[i] = (M - th * c[i] % M) % M;
                return encode(c);
            }
            case Kind::Unitriangular: {
                auto A = coords(a);
                std::vector<u64> X(width_, 0);
                for (int j = 0; j < n_; ++j)
                    for (int i = j - 1; i >= 0; --i) {
                        u64 v = A[ut_slot(i, j)];
                        for (int k = i + 1; k < j; ++k) v += A[ut_slot(i, k)] * X[ut_slot(k, j)] % modulus_;
                        X[ut_slot(i, j)] = (modulus_ - v % modulus_) % modulus_;
                    }
                return encode(X);
            }
        }
        return 0;
    }

    Elem pow(Elem a, u64 e) const {
        Elem r = identity();
        Elem b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            e >>= 1;
            if (e) b = mul(b, b);
        }
        return r;
    }

    /// [a, b] = a b a^-1 b^-1
    Elem commutator(Elem a, Elem b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
    Elem conjugate(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }

    std::vector<u64> coords(Elem a) const {
        std::vector<u64> c(width_);
        u64 v = a;
        for (int i = 0; i < width_; ++i) {
            c[i] = v % modulus_;
            v /= modulus_;
        }
        return c;
    }

    Elem encode(const std::vector<u64>& c) const {
        u64 v = 0;
        for (int i = width_ - 1; i >= 0; --i) v = v * modulus_ + c[i] % modulus_;
        return static_cast<Elem>(v);
    }

    /// Coordinate labels, e.g. "s","v1" or "a12","a13".
    std::vector<std::string> coordinate_names() const {
        std::vector<std::string> names;
        if (kind_ == Kind::ThetaAbelian) {
            names.push_back("s");
            for (int i = 1; i < width_; ++i) names.push_back("v" + std::to_string(i));
        } else if (kind_ == Kind::Unitriangular) {
            names.resize(width_);
            for (int i = 0; i < n_; ++i)
                for (int j = i + 1; j < n_; ++j) names[ut_slot(i, j)] = "a" + std::to_string(i + 1) + std::to_string(j + 1);
        } else {
            names.push_back("index");
        }
        return names;
    }

    /// Subgroup generated by gens, as a sorted element list (BFS under right multiplication).
    std::vector<Elem> close(const std::vector<Elem>& gens) const {
        check_order();
        std::vector<char> seen(order_, 0);
        std::vector<Elem> out{identity()};
        seen[identity()] = 1;
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (Elem g : gens) {
                Elem y = mul(out[i], g);
                if (!seen[y]) {
                    seen[y] = 1;
                    out.push_back(y);
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    GroupSpec() = default;

    void check_order() const {
        if (order_ > limits_.order_bound)
            throw resource_error("group " + name_ + " of order " + std::to_string(order_) + " exceeds the order bound " +
                                 std::to_string(limits_.order_bound));
    }

    int ut_slot(int i, int j) const {
        // row-major over the strict upper triangle
        return i * n_ - i * (i + 1) / 2 + (j - i - 1);
    }

    void check_associativity() const {
        const u64 n = order_;
        auto bad = [&](u64 a, u64 b, u64 c) {
            return table_[table_[a][b]][c] != table_[a][table_[b][c]];
        };
        if (n <= limits_.exhaustive_assoc_below) {
            for (u64 a = 0; a < n; ++a)
                for (u64 b = 0; b < n; ++b)
                    for (u64 c = 0; c < n; ++c)
                        if (bad(a, b, c)) throw usage_error("table: multiplication is not associative");
            return;
        }
        std::mt19937_64 gen(0xa55c0c1a7e5eedull);
        for (int s = 0; s < limits_.assoc_samples; ++s) {
            u64 a = gen() % n, b = gen() % n, c = gen() % n;
            if (bad(a, b, c)) throw usage_error("table: multiplication is not associative");
        }
    }

    Kind kind_ = Kind::Table;
    u64 p_ = 2;
    u64 order_ = 1;
    u64 modulus_ = 1;
    int width_ = 0;
    int n_ = 0;
    std::string name_;
    GroupLimits limits_;
    std::optional<ThetaAbelianSpec> theta_;
    std::vector<u64> theta_pow_;
    std::vector<std::vector<Elem>> table_;
    std::vector<Elem> inverse_;
    std::vector<Elem> gens_;
};

using GroupPtr = std::shared_ptr<const GroupSpec>;

/// Closed subset of a GroupSpec, stored as its full sorted element list.
class Subgroup {
public:
    Subgroup(GroupPtr owner, std::vector<Elem> elems, std::vector<Elem> gens)
        : owner_(std::move(owner)), elems_(std::move(elems)), gens_(std::move(gens)) {}

    const GroupPtr& owner() const { return owner_; }
    const GroupSpec& group() const { return *owner_; }
    const std::vector<Elem>& elements() const { return elems_; }
    const std::vector<Elem>& generators() const { return gens_; }
    u64 order() const { return elems_.size(); }
    bool is_trivial() const { return elems_.size() == 1; }

    bool contains(Elem x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

    bool contains(const Subgroup& o) const {
        return std::includes(elems_.begin(), elems_.end(), o.elems_.begin(), o.elems_.end());
    }

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.owner_ == b.owner_ && a.elems_ == b.elems_;
    }

private:
    GroupPtr owner_;
    std::vector<Elem> elems_;
    std::vector<Elem> gens_;
};

// ---------------------------------------------------------------------------
// Closure and subgroup constructions

inline Subgroup closure(const GroupPtr& G, const std::vector<Elem>& gens) {
    for (Elem g : gens)
        if (g >= G->order()) throw usage_error("closure: generator does not belong to " + G->name());
    return Subgroup(G, G->close(gens), gens);
}

inline Subgroup whole_group(const GroupPtr& G) { return closure(G, G->generators()); }
inline Subgroup trivial_subgroup(const GroupPtr& G) { return Subgroup(G, {GroupSpec::identity()}, {}); }

/// Subgroup generated by `start` together with every candidate; re-closes only when a
/// candidate falls outside the current span.
inline Subgroup closure_incremental(const GroupPtr& G, std::vector<Elem> gens, const std::vector<Elem>& candidates) {
    Subgroup cur = closure(G, gens);
    for (Elem x : candidates) {
        if (cur.contains(x)) continue;
        gens.push_back(x);
        cur = closure(G, gens);
    }
    return cur;
}

/// Small generating set: greedily the smallest elements outside the span so far.
inline std::vector<Elem> small_generators(const Subgroup& H) {
    std::vector<Elem> gens;
    Subgroup cur = trivial_subgroup(H.owner());
    for (Elem x : H.elements()) {
        if (cur.contains(x)) continue;
        gens.push_back(x);
        cur = closure(H.owner(), gens);
        if (cur.order() == H.order()) break;
    }
    return gens;
}

namespace detail {
inline void require_same_owner(const Subgroup& H, const Subgroup& K) {
    if (H.owner() != K.owner()) throw usage_error("subgroups belong to different groups");
}
}  // namespace detail

/// Smallest subgroup containing `gens` and normalised by every element of `by`.
inline Subgroup normal_closure(const GroupPtr& G, std::vector<Elem> gens, const std::vector<Elem>& by) {
    Subgroup cur = closure(G, gens);
    bool changed = true;
    while (changed) {
        changed = false;
        for (Elem c : by) {
            for (Elem s : std::vector<Elem>(gens)) {
                Elem x = G->conjugate(c, s);
                if (!cur.contains(x)) {
                    gens.push_back(x);
                    cur = closure(G, gens);
                    changed = true;
                }
            }
        }
    }
    return cur;
}

inline Subgroup product(const Subgroup& H, const Subgroup& K) {
    detail::require_same_owner(H, K);
    std::vector<Elem> gens = small_generators(H);
    return closure_incremental(H.owner(), gens, small_generators(K));
}

/// [H, K]: normal closure in <H, K> of commutators of generators.
inline Subgroup commutator_subgroup(const Subgroup& H, const Subgroup& K) {
    detail::require_same_owner(H, K);
    const GroupPtr& G = H.owner();
    auto hg = small_generators(H);
    auto kg = small_generators(K);
    std::vector<Elem> comms;
    for (Elem h : hg)
        for (Elem k : kg) {
            Elem c = G->commutator(h, k);
            if (c != GroupSpec::identity()) comms.push_back(c);
        }
    std::vector<Elem> by = hg;
    by.insert(by.end(), kg.begin(), kg.end());
    Subgroup base = closure_incremental(G, {}, comms);
    return normal_closure(G, small_generators(base), by);
}

/// H^{p^j}: generated by all p^j-th powers of elements of H.
inline Subgroup power_subgroup(const Subgroup& H, int j) {
    const GroupPtr& G = H.owner();
    const u64 e = static_cast<u64>(checked_pow(G->p(), static_cast<u64>(j)));
    std::vector<Elem> powers;
    powers.reserve(H.order());
    for (Elem x : H.elements()) powers.push_back(G->pow(x, e));
    std::sort(powers.begin(), powers.end());
    powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
    return closure_incremental(G, {}, powers);
}

/// Phi(H) = H^p [H, H].
inline Subgroup frattini(const Subgroup& H) { return product(power_subgroup(H, 1), commutator_subgroup(H, H)); }

inline int log_p_index(const Subgroup& big, const Subgroup& small) {
    int e = exact_log(big.order() / small.order(), big.group().p());
    if (big.order() % small.order() != 0 || e < 0) throw verification_error("index is not a power of p");
    return e;
}

/// d(H) = log_p |H : Phi(H)|.
inline int generator_rank(const Subgroup& H) { return log_p_index(H, frattini(H)); }

inline bool is_abelian(const Subgroup& H) {
    auto g = small_generators(H);
    const auto& G = H.group();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
            if (G.commutator(g[i], g[j]) != GroupSpec::identity()) return false;
    return true;
}

/// Spot check: conjugates of generators of N by generators of H stay in N.
inline bool is_normalized_by(const Subgroup& N, const Subgroup& H) {
    const auto& G = N.group();
    for (Elem g : small_generators(H))
        for (Elem n : small_generators(N))
            if (!N.contains(G.conjugate(g, n))) return false;
    return true;
}

inline u64 exponent(const Subgroup& H) {
    const auto& G = H.group();
    u64 e = 1;
    for (Elem x : H.elements()) {
        u64 o = 1;
        for (Elem y = x; y != GroupSpec::identity(); y = G.pow(y, G.p())) o *= G.p();
        if (x == GroupSpec::identity()) o = 1;
        e = std::max(e, o);
    }
    return e;
}

// ---------------------------------------------------------------------------
// Series

struct SeriesReport {
    enum class Kind { LowerP, LowerCentral, FrattiniIterate, Dimension };
    Kind kind;
    std::vector<Subgroup> terms;     // terms[0] is the first term of the series
    std::vector<u64> indices;        // |terms[i] : terms[i+1]|
    bool normal_checked = true;      // every term normalised by G (spot check)

    static std::string kind_name(Kind k) {
        switch (k) {
            case Kind::LowerP: return "lower-p";
            case Kind::LowerCentral: return "lower-central";
            case Kind::FrattiniIterate: return "frattini-iterate";
            case Kind::Dimension: return "dimension";
        }
        return "";
    }
};

namespace detail {
inline SeriesReport finish_series(SeriesReport::Kind kind, std::vector<Subgroup> terms, const Subgroup& G) {
    SeriesReport r{kind, std::move(terms), {}, true};
    for (std::size_t i = 0; i + 1 < r.terms.size(); ++i) r.indices.push_back(r.terms[i].order() / r.terms[i + 1].order());
    for (const auto& t : r.terms)
        if (!is_normalized_by(t, G)) r.normal_checked = false;
    return r;
}
}  // namespace detail

/// lambda_1 = G, lambda_{i+1} = lambda_i^p [lambda_i, G].
inline SeriesReport lower_p_series(const Subgroup& G, int n) {
    if (n < 1) throw usage_error("lower_p_series: n must be >= 1");
    std::vector<Subgroup> t{G};
    while (static_cast<int>(t.size()) < n) {
        const Subgroup& L = t.back();
        t.push_back(product(power_subgroup(L, 1), commutator_subgroup(L, G)));
    }
    return detail::finish_series(SeriesReport::Kind::LowerP, std::move(t), G);
}

/// gamma_1 = G, gamma_{i+1} = [gamma_i, G].
inline SeriesReport lower_central_series(const Subgroup& G, int n) {
    if (n < 1) throw usage_error("lower_central_series: n must be >= 1");
    std::vector<Subgroup> t{G};
    while (static_cast<int>(t.size()) < n) t.push_back(commutator_subgroup(t.back(), G));
    return detail::finish_series(SeriesReport::Kind::LowerCentral, std::move(t), G);
}

/// G, Phi(G), Phi(Phi(G)), ...
inline SeriesReport frattini_series(const Subgroup& G, int n) {
    if (n < 1) throw usage_error("frattini_series: n must be >= 1");
    std::vector<Subgroup> t{G};
    while (static_cast<int>(t.size()) < n) t.push_back(frattini(t.back()));
    return detail::finish_series(SeriesReport::Kind::FrattiniIterate, std::move(t), G);
}

struct DimensionReport {
    SeriesReport series;            // D_1 .. D_{n_max}
    std::vector<u64> quotient_orders;  // |D_n / D_{n+1}| for n = 1..n_max
};

/// D_n = prod_{i p^h >= n} gamma_i^{p^h}, for 1 <= n <= n_max.
inline DimensionReport dimension_subgroups(const Subgroup& G, int n_max) {
    if (n_max < 1) throw usage_error("dimension_subgroups: n_max must be >= 1");
    const u64 p = G.group().p();
    const int top = n_max + 1;
    auto gamma = lower_central_series(G, top).terms;
    std::map<std::pair<int, int>, Subgroup> powers;
    auto gamma_power = [&](int i, int h) -> const Subgroup& {
        auto key = std::make_pair(i, h);
        auto it = powers.find(key);
        if (it == powers.end()) it = powers.emplace(key, power_subgroup(gamma[i - 1], h)).first;
        return it->second;
    };
    std::vector<Subgroup> D;
    for (int n = 1; n <= top; ++n) {
        // gamma_i^{p^h} shrinks as h grows, so only the least admissible h matters per i,
        // and gamma_i for i >= n is inside gamma_n.
        Subgroup acc = trivial_subgroup(G.owner());
        for (int i = 1; i <= n; ++i) {
            int h = 0;
            while (static_cast<u64>(i) * static_cast<u64>(checked_pow(p, h)) < static_cast<u64>(n)) ++h;
            const Subgroup& term = gamma_power(i, h);
            if (!acc.contains(term)) acc = product(acc, term);
        }
        D.push_back(std::move(acc));
    }
    DimensionReport r{detail::finish_series(SeriesReport::Kind::Dimension, D, G), {}};
    for (int n = 0; n < n_max; ++n) r.quotient_orders.push_back(D[n].order() / D[n + 1].order());
    r.series.terms.pop_back();
    r.series.indices.pop_back();
    return r;
}

// ---------------------------------------------------------------------------
// Predicates

struct PowerfulVerdict {
    bool powerful;
    std::optional<Elem> witness;       // commutator outside G^p
    std::optional<std::pair<Elem, Elem>> witness_pair;
    Subgroup derived;
    Subgroup pth_powers;
};

/// [G, G] contained in G^p (p odd).
inline PowerfulVerdict is_powerful(const Subgroup& G) {
    const auto& grp = G.group();
    if (grp.p() == 2) throw usage_error("is_powerful: p must be odd");
    Subgroup D = commutator_subgroup(G, G);
    Subgroup P = power_subgroup(G, 1);
    PowerfulVerdict v{P.contains(D), std::nullopt, std::nullopt, D, P};
    if (!v.powerful) {
        auto gens = small_generators(G);
        for (std::size_t i = 0; i < gens.size() && !v.witness; ++i)
            for (std::size_t j = i + 1; j < gens.size() && !v.witness; ++j) {
                Elem c = grp.commutator(gens[i], gens[j]);
                if (!P.contains(c)) {
                    v.witness = c;
                    v.witness_pair = std::make_pair(gens[i], gens[j]);
                }
            }
        if (!v.witness) {
            for (Elem c : D.elements())
                if (!P.contains(c)) {
                    v.witness = c;
                    break;
                }
        }
    }
    return v;
}

struct UniformVerdict {
    bool uniform;
    bool vacuous;  // lambda_depth trivial: nothing left to test inside the truncation
    bool powerful;
    std::vector<u64> indices;  // |lambda_i : lambda_{i+1}| for i = 1..depth
};

inline UniformVerdict is_uniform(const Subgroup& G, int depth) {
    if (depth < 2) throw usage_error("is_uniform: depth must be >= 2");
    if (G.is_trivial()) return {true, true, true, {}};
    auto series = lower_p_series(G, depth + 1);
    bool powerful = is_powerful(G).powerful;
    UniformVerdict v{false, series.terms[depth - 1].is_trivial(), powerful, series.indices};
    bool constant = std::all_of(v.indices.begin(), v.indices.end(), [&](u64 x) { return x == v.indices.front(); });
    if (v.vacuous) {
        // compare only the nontrivial stretch
        std::vector<u64> live;
        for (std::size_t i = 0; i < v.indices.size() && !series.terms[i].is_trivial(); ++i) live.push_back(v.indices[i]);
        constant = std::all_of(live.begin(), live.end(), [&](u64 x) { return x == live.front(); });
    }
    v.uniform = powerful && constant;
    return v;
}

/// Powerfulness of the subgroup generated by every pair of generators. Incomplete by
/// nature: it does not enumerate the full subgroup lattice.
struct LocallyPowerfulVerdict {
    bool all_pairs_powerful;
    std::optional<std::pair<Elem, Elem>> failing_pair;
    std::string method = "generator-pair heuristic";
};

inline LocallyPowerfulVerdict locally_powerful_pairs(const Subgroup& G) {
    auto gens = small_generators(G);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            Subgroup H = closure(G.owner(), {gens[i], gens[j]});
            if (!is_powerful(H).powerful) return {false, std::make_pair(gens[i], gens[j])};
        }
    return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Theorem A, group form

struct TheoremAResult {
    Subgroup frattini;          // Phi(G)
    Subgroup frattini_squared;  // Phi(Phi(G))
    Subgroup lambda3;           // Phi(G)^p [G, Phi(G)]
    bool equal;
};

namespace detail {
inline void require_depth(const Subgroup& G, int need, const char* op) {
    const auto& th = G.group().theta_spec();
    if (th && th->m < need)
        throw usage_error(std::string(op) + ": truncation depth m = " + std::to_string(th->m) +
                          " is too shallow; use m >= " + std::to_string(need));
}
}  // namespace detail

inline TheoremAResult theorem_A_group_test(const Subgroup& G) {
    detail::require_depth(G, 3, "theorem_A_group_test");
    Subgroup phi = frattini(G);
    Subgroup phi2 = frattini(phi);
    Subgroup l3 = product(power_subgroup(phi, 1), commutator_subgroup(G, phi));
    bool eq = phi2 == l3;
    return {phi, phi2, l3, eq};
}

struct JModuleResult {
    u64 full_order;       // |Phi(G) : Phi(Phi(G))|
    u64 invariant_order;  // |Phi(G) : [G, Phi(G)] Phi(Phi(G))|
    bool equal;
};

inline JModuleResult j_module_test(const Subgroup& G) {
    detail::require_depth(G, 3, "j_module_test");
    Subgroup phi = frattini(G);
    Subgroup phi2 = frattini(phi);
    Subgroup comm = commutator_subgroup(G, phi);
    Subgroup denom = product(comm, phi2);
    return {phi.order() / phi2.order(), phi.order() / denom.order(), phi2.contains(comm)};
}

// ---------------------------------------------------------------------------
// Maximal subgroups

struct MaximalSubgroup {
    Subgroup subgroup;
    std::vector<u64> functional;  // normalised linear form on G/Phi(G) whose kernel it is
    int rank;                     // d(subgroup)
};

inline std::vector<MaximalSubgroup> maximal_subgroups(const Subgroup& G) {
    const auto& grp = G.group();
    const u64 p = grp.p();
    Subgroup phi = frattini(G);
    const int d = log_p_index(G, phi);
    if (d > grp.limits().max_rank_for_maximal)
        throw resource_error("maximal_subgroups: d(G) = " + std::to_string(d) + " exceeds bound " +
                             std::to_string(grp.limits().max_rank_for_maximal));
    // basis of G/Phi(G)
    std::vector<Elem> basis;
    {
        auto gens = small_generators(phi);
        Subgroup span = phi;
        for (Elem x : G.elements()) {
            if (span.contains(x)) continue;
            basis.push_back(x);
            gens.push_back(x);
            span = closure(G.owner(), gens);
        }
    }
    // label every element with its coordinates modulo Phi(G)
    std::vector<std::vector<u64>> label(grp.order());
    const u64 cosets = static_cast<u64>(checked_pow(p, d));
    for (u64 code = 0; code < cosets; ++code) {
        std::vector<u64> e(d);
        u64 v = code;
        Elem rep = GroupSpec::identity();
        for (int i = 0; i < d; ++i) {
            e[i] = v % p;
            v /= p;
            rep = grp.mul(rep, grp.pow(basis[i], e[i]));
        }
        for (Elem f : phi.elements()) label[grp.mul(rep, f)] = e;
    }
    std::vector<MaximalSubgroup> out;
    for (u64 code = 1; code < cosets; ++code) {
        std::vector<u64> a(d);
        u64 v = code;
        for (int i = 0; i < d; ++i) {
            a[i] = v % p;
            v /= p;
        }
        int first = 0;
        while (a[first] == 0) ++first;
        if (a[first] != 1) continue;  // one representative per line of functionals
        std::vector<Elem> elems;
        for (Elem x : G.elements()) {
            u64 s = 0;
            for (int i = 0; i < d; ++i) s += a[i] * label[x][i];
            if (s % p == 0) elems.push_back(x);
        }
        Subgroup M(G.owner(), elems, {});
        Subgroup M2(G.owner(), elems, small_generators(M));
        int r = generator_rank(M2);
        out.push_back({std::move(M2), a, r});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Galois groups of Kummer towers

struct TowerGroupInfo {
    u64 order;
    bool is_abelian;
    u64 exponent;
    u64 derived_order;
    bool predicted_abelian_stated;    // n <= p^k + 1
    bool predicted_abelian_computed;  // n <= k + 1
};

/// Invariants of the depth-(n-1) theta model; n = 1 is the trivial group.
inline TowerGroupInfo tower_group(const ThetaAbelianSpec& spec, int n, const GroupLimits& lim = {}) {
    if (n < 1) throw usage_error("tower_group: n must be >= 1");
    const bool k_inf = !spec.k.has_value();
    const u64 pk = k_inf ? 0 : static_cast<u64>(checked_pow(spec.p, *spec.k));
    TowerGroupInfo info{1, true, 1, 1, k_inf || static_cast<u64>(n) <= pk + 1, k_inf || n <= *spec.k + 1};
    if (n == 1) return info;
    ThetaAbelianSpec s = spec;
    s.m = n - 1;
    auto G = GroupSpec::theta(s, lim);
    Subgroup whole = whole_group(G);
    info.order = whole.order();
    bool abel = true;
    if (whole.order() <= 729) {
        for (Elem a : whole.elements())
            for (Elem b : whole.elements())
                if (G->mul(a, b) != G->mul(b, a)) {
                    abel = false;
                    break;
                }
    } else {
        abel = is_abelian(whole);
    }
    info.is_abelian = abel;
    info.exponent = exponent(whole);
    info.derived_order = commutator_subgroup(whole, whole).order();
    return info;
}

// ---------------------------------------------------------------------------
// Descriptors

inline GroupPtr parse_group(const std::string& text, const GroupLimits& lim = {}) {
    auto args_of = [&](const std::string& head) {
        if (text.size() < head.size() + 2 || text.back() != ')')
            throw usage_error("malformed group descriptor: " + text);
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : text.substr(head.size() + 1, text.size() - head.size() - 2)) {
            if (ch == ',') {
                parts.push_back(cur);
                cur.clear();
            } else if (ch != ' ') {
                cur += ch;
            }
        }
        parts.push_back(cur);
        return parts;
    };
    auto num = [&](const std::string& s) -> long long {
        try {
            std::size_t pos = 0;
            long long v = std::stoll(s, &pos);
            if (pos != s.size()) throw usage_error("");
            return v;
        } catch (...) {
            throw usage_error("bad integer '" + s + "' in group descriptor " + text);
        }
    };
    if (text.rfind("theta(", 0) == 0) {
        auto a = args_of("theta");
        if (a.size() != 4) throw usage_error("theta(p,k,r,m) takes four arguments");
        ThetaAbelianSpec s;
        s.p = static_cast<u64>(num(a[0]));
        if (a[1] == "inf")
            s.k = std::nullopt;
        else
            s.k = static_cast<int>(num(a[1]));
        s.rho_count = static_cast<int>(num(a[2]));
        s.m = static_cast<int>(num(a[3]));
        return GroupSpec::theta(s, lim);
    }
    if (text.rfind("ut(", 0) == 0) {
        auto a = args_of("ut");
        if (a.size() != 3) throw usage_error("ut(n,p,e) takes three arguments");
        return GroupSpec::unitriangular(static_cast<int>(num(a[0])), static_cast<u64>(num(a[1])), static_cast<int>(num(a[2])), lim);
    }
    if (text.rfind("table:", 0) == 0) return GroupSpec::table_file(text.substr(6), lim);
    throw usage_error("unknown group descriptor: " + text + " (expected theta(p,k,r,m), ut(n,p,e) or table:<path>)");
}

}  // namespace prigid
