#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symbol.hpp"

namespace prigid {

/// Polynomial in X with Laurent coefficients, low degree first.
using LaurentPoly = std::vector<Laurent>;

struct Rational {
    long long num;
    long long den;  // > 0, gcd(num, den) = 1

    static Rational make(long long n, long long d) {
        if (d == 0) throw usage_error("zero denominator");
        if (d < 0) n = -n, d = -d;
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g == 0) g = 1;
        return {n / g, d / g};
    }
    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
};

struct NewtonSegment {
    Rational slope;  // valuation of the roots on this segment
    int length;
    int start;       // index of the left endpoint
};

inline int poly_degree(const LaurentPoly& f) {
    int d = static_cast<int>(f.size()) - 1;
    while (d >= 0 && f[d].is_zero()) --d;
    return d;
}

/// Lower convex hull of (i, v(f_i)); each segment reports the common valuation -slope of its roots.
inline std::vector<NewtonSegment> newton_polygon(const LaurentPoly& f) {
    std::vector<std::pair<int, long long>> pts;
    for (int i = 0; i < static_cast<int>(f.size()); ++i)
        if (!f[i].is_zero()) pts.emplace_back(i, f[i].valuation());
    if (pts.empty()) throw usage_error("newton_polygon: zero polynomial");
    std::vector<std::pair<int, long long>> hull;
    for (auto& pt : pts) {
        while (hull.size() >= 2) {
            auto [x1, y1] = hull[hull.size() - 2];
            auto [x2, y2] = hull.back();
            // drop the middle point when it lies on or above the chord
            if ((y2 - y1) * (pt.first - x1) >= (pt.second - y1) * (x2 - x1))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    std::vector<NewtonSegment> segs;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        auto [x1, y1] = hull[k];
        auto [x2, y2] = hull[k + 1];
        segs.push_back({Rational::make(y1 - y2, x2 - x1), x2 - x1, x1});
    }
    return segs;
}

/// Root in F_Q((z)) with z^e = t.
struct PuiseuxRoot {
    Laurent series;   // in z
    u64 e;            // ramification of the solving field
    int r = 0;        // minimal: coefficients lie in F_{q^{p^r}}
    int s = 0;        // minimal: exponents lie in (1/p^s) Z
    long long precision;  // in t units
    bool exact = false;

    /// (exponent of t as a reduced fraction, coefficient).
    std::vector<std::pair<Rational, FqElem>> terms() const {
        std::vector<std::pair<Rational, FqElem>> out;
        for (auto& [m, c] : series.terms()) out.emplace_back(Rational::make(m, static_cast<long long>(e)), c);
        return out;
    }
    std::string str() const {
        std::string out;
        for (auto& [q, c] : terms()) {
            if (!out.empty()) out += " + ";
            out += c.str();
            if (q.num != 0) out += "*t^(" + q.str() + ")";
        }
        if (out.empty()) out = "0";
        if (!exact) out += " + O(t^" + std::to_string(precision) + ")";
        return out;
    }
};

struct PuiseuxResult {
    int r;   // coefficient field F_{q^{p^r}}
    int s;   // z = t^{1/p^s}
    const FqField* field;
    std::vector<PuiseuxRoot> roots;
};

struct PuiseuxOptions {
    long long precision = 8;   // t-adic precision of the roots
    u64 tame_bound = 81;       // largest accepted ramification p^s
    int max_r = 3;
    int retries = 4;
};

namespace detail {

struct PuiseuxBump {
    int dr;
    int ds;
};
struct PuiseuxRetry {};

inline LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r(a.size() + b.size() - 1, Laurent(a[0].field()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

/// Keep exact short series exact; cut everything else at absolute precision W.
inline Laurent cap(const Laurent& x, long long W) {
    if (x.is_exact() && x.stored_end() <= W) return x;
    return x.truncated(W);
}

/// g(X + a).
inline LaurentPoly taylor_shift(const LaurentPoly& g, const Laurent& a, long long W) {
    const int n = static_cast<int>(g.size()) - 1;
    LaurentPoly h{g[n]};
    for (int i = n - 1; i >= 0; --i) {
        LaurentPoly next(h.size() + 1, Laurent(a.field()));
        for (std::size_t k = 0; k < h.size(); ++k) {
            next[k + 1] = next[k + 1] + h[k];
            next[k] = next[k] + h[k] * a;
        }
        next[0] = next[0] + g[i];
        for (auto& c : next) c = cap(c, W);
        h = std::move(next);
    }
    return h;
}

inline bool is_p_power(u64 x, u64 p) {
    while (x % p == 0) x /= p;
    return x == 1;
}

class PuiseuxSolver {
public:
    PuiseuxSolver(const FqField& FQ, u64 p, long long T, long long W) : F_(FQ), p_(p), T_(T), W_(W) {}

    std::vector<std::pair<Laurent, bool>> solve(const LaurentPoly& g) {
        out_.clear();
        rec(g, LLONG_MIN, Laurent(F_));
        return out_;
    }

private:
    void rec(LaurentPoly g, long long lambda, const Laurent& prefix) {
        const int n = poly_degree(g);
        g.resize(static_cast<std::size_t>(n + 1));
        // exact zero roots
        int j0 = 0;
        while (j0 <= n && g[j0].is_exact_zero()) ++j0;
        if (j0 > 0) {
            for (int k = 0; k < j0; ++k) out_.emplace_back(prefix, true);
            g.erase(g.begin(), g.begin() + j0);
        }
        if (g.size() <= 1) return;
        const int m = static_cast<int>(g.size()) - 1;
        // hull over known points and lower bounds of unknown ones
        struct Pt {
            int i;
            long long v;
            bool known;
        };
        std::vector<Pt> pts;
        for (int i = 0; i <= m; ++i) {
            if (g[i].is_exact_zero()) continue;
            if (g[i].is_zero())
                pts.push_back({i, g[i].precision(), false});
            else
                pts.push_back({i, g[i].valuation(), true});
        }
        std::vector<Pt> hull;
        for (auto& pt : pts) {
            while (hull.size() >= 2) {
                auto& a = hull[hull.size() - 2];
                auto& b = hull.back();
                if ((b.v - a.v) * (pt.i - a.i) >= (pt.v - a.v) * (b.i - a.i))
                    hull.pop_back();
                else
                    break;
            }
            hull.push_back(pt);
        }
        for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
            const Pt& A = hull[k];
            const Pt& B = hull[k + 1];
            const long long L = B.i - A.i;
            const long long dv = A.v - B.v;
            // relevant segments: lambda < mu
            if (lambda != LLONG_MIN && dv <= lambda * L) {
                if (!A.known || !B.known) throw PuiseuxRetry{};
                continue;
            }
            auto below = [&](long long bound) { return dv < bound * L; };  // mu < bound
            if (below(T_)) {
                // every point touching this segment must be known
                if (!A.known || !B.known) throw PuiseuxRetry{};
                for (auto& pt : pts)
                    if (!pt.known && pt.i > A.i && pt.i < B.i &&
                        (pt.v - A.v) * L <= -dv * (pt.i - A.i))
                        throw PuiseuxRetry{};
                Rational mu = Rational::make(dv, L);
                if (mu.den != 1) {
                    if (!is_p_power(static_cast<u64>(mu.den), p_))
                        throw out_of_scope_error("slope denominator " + std::to_string(mu.den) + " is not a power of " +
                                                 std::to_string(p_));
                    throw PuiseuxBump{0, padic_val(static_cast<u128>(mu.den), p_)};
                }
                // residual polynomial
                std::vector<FqElem> phi(static_cast<std::size_t>(L + 1), F_.zero());
                for (auto& pt : pts) {
                    if (!pt.known || pt.i < A.i || pt.i > B.i) continue;
                    if ((pt.v - A.v) * L == -dv * (pt.i - A.i)) phi[pt.i - A.i] = g[pt.i].leading();
                }
                FqPoly res(F_, phi);
                auto fac = factorize(res);
                u64 lcm = 1;
                for (auto& [h, mult] : fac.factors) {
                    u64 d = static_cast<u64>(h.degree());
                    if (d > 1) lcm = std::lcm(lcm, d);
                }
                if (lcm > 1) {
                    if (!is_p_power(lcm, p_))
                        throw out_of_scope_error("residual equation needs a coefficient extension of degree " +
                                                 std::to_string(lcm) + ", not a power of " + std::to_string(p_));
                    throw PuiseuxBump{padic_val(static_cast<u128>(lcm), p_), 0};
                }
                for (auto& [h, mult] : fac.factors) {
                    FqElem c = -h.coeff(0);
                    if (c.is_zero()) continue;
                    Laurent a = Laurent::monomial(c, mu.num);
                    std::size_t before = out_.size();
                    rec(taylor_shift(g, a, W_), mu.num, prefix + a);
                    if (out_.size() - before != static_cast<std::size_t>(mult))
                        throw PuiseuxRetry{};
                }
            } else {
                // roots beyond the target precision: determined to O(z^T)
                for (long long c = 0; c < L; ++c) out_.emplace_back(prefix, false);
            }
        }
    }

    const FqField& F_;
    u64 p_;
    long long T_;
    long long W_;
    std::vector<std::pair<Laurent, bool>> out_;
};

inline int log_p_exact(u64 x, u64 p) {
    int k = 0;
    while (x > 1) {
        x /= p;
        ++k;
    }
    return k;
}

/// Lexicographic comparison on (valuation, coefficient encodings).
inline bool root_less(const Laurent& a, const Laurent& b) {
    auto ta = a.terms(), tb = b.terms();
    for (std::size_t i = 0; i < ta.size() && i < tb.size(); ++i) {
        if (ta[i].first != tb[i].first) return ta[i].first < tb[i].first;
        if (ta[i].second != tb[i].second) return ta[i].second < tb[i].second;
    }
    return ta.size() < tb.size();
}

/// F_q(t)-polynomial view of exact coefficients; nullopt when some coefficient is inexact.
inline std::optional<std::vector<RatFunc>> exact_ratfunc_poly(const LaurentPoly& f) {
    std::vector<RatFunc> out;
    for (auto& c : f) {
        if (!c.is_exact()) return std::nullopt;
        const FqField& F = c.field();
        if (c.is_zero()) {
            out.emplace_back(F);
            continue;
        }
        std::vector<FqElem> coeffs;
        long long v = c.valuation();
        long long shift = v < 0 ? -v : 0;
        coeffs.assign(static_cast<std::size_t>(v + shift), F.zero());
        for (long long e = v; e < c.stored_end(); ++e) coeffs.push_back(c.coeff(e));
        out.push_back(RatFunc(FqPoly(F, coeffs), FqPoly::monomial(F.one(), static_cast<int>(shift))));
    }
    return out;
}

inline int ratpoly_degree(const std::vector<RatFunc>& f) {
    int d = static_cast<int>(f.size()) - 1;
    while (d >= 0 && f[d].is_zero()) --d;
    return d;
}

inline std::vector<RatFunc> ratpoly_rem(std::vector<RatFunc> a, const std::vector<RatFunc>& b) {
    const int db = ratpoly_degree(b);
    RatFunc lb_inv = b[db].inv();
    for (int da = ratpoly_degree(a); da >= db; da = ratpoly_degree(a)) {
        RatFunc q = a[da] * lb_inv;
        for (int i = 0; i <= db; ++i) a[da - db + i] = a[da - db + i] - q * b[i];
    }
    return a;
}

/// Degree of gcd(f, f') over F_q(t).
inline int ratpoly_gcd_with_derivative_degree(const std::vector<RatFunc>& f) {
    const FqField& F = f[0].field();
    std::vector<RatFunc> a = f, b;
    for (std::size_t i = 1; i < f.size(); ++i) b.push_back(f[i].scaled(F.from_int(static_cast<long long>(i))));
    if (b.empty() || ratpoly_degree(b) < 0) return ratpoly_degree(a);
    while (ratpoly_degree(b) >= 0) {
        auto r = ratpoly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return ratpoly_degree(a);
}

}  // namespace detail

/// Substitute `root` into f; returns the residual series in z.
inline Laurent residual(const LaurentPoly& f, const PuiseuxRoot& root) {
    const FqField& FQ = root.series.field();
    Embedding phi = make_embedding(f[0].field(), FQ);
    const long long T = root.precision * static_cast<long long>(root.e);
    Laurent x = root.exact ? root.series : root.series + Laurent::zero_to(FQ, T);
    Laurent acc(FQ);
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
        Laurent c = f[i].mapped(phi).ramified(static_cast<long long>(root.e));
        acc = acc * x + c;
    }
    return acc;
}

struct RootCheck {
    bool ok;
    bool exact_zero;
    Rational valuation;          // of the residual in t units; precision bound when it vanishes
    std::optional<long long> offending;  // z-exponent of the first nonzero residual term below precision
};

inline RootCheck verify_root(const LaurentPoly& f, const PuiseuxRoot& root) {
    Laurent res = residual(f, root);
    const long long e = static_cast<long long>(root.e);
    const long long T = root.precision * e;
    if (res.is_exact_zero()) return {true, true, Rational::make(0, 1), std::nullopt};
    if (res.is_zero()) return {res.precision() >= T, false, Rational::make(res.precision(), e), std::nullopt};
    long long v = res.valuation();
    RootCheck rc{v >= T, false, Rational::make(v, e), std::nullopt};
    if (!rc.ok) rc.offending = v;
    return rc;
}

/// Roots of a squarefree f over F_q((t)) as Puiseux series in F_{q^{p^r}}((t^{1/p^s})).
inline PuiseuxResult puiseux_roots(const FieldDescriptor& D, const LaurentPoly& f_in, const PuiseuxOptions& opt = {}) {
    detail::require_kind(D, FieldDescriptor::Kind::Laurent, "puiseux_roots");
    if (opt.precision < 1) throw usage_error("puiseux_roots: precision must be >= 1");
    LaurentPoly f = f_in;
    const int n = poly_degree(f);
    if (n < 0) throw usage_error("puiseux_roots: zero polynomial");
    if (n == 0) throw usage_error("puiseux_roots: constant polynomial");
    f.resize(static_cast<std::size_t>(n + 1));
    for (auto& c : f)
        if (c.field_ptr() != D.F) throw usage_error("puiseux_roots: coefficient from a different field");
    if (auto rp = detail::exact_ratfunc_poly(f)) {
        if (detail::ratpoly_gcd_with_derivative_degree(*rp) > 0) throw usage_error("puiseux_roots: polynomial is not squarefree");
    }
    const u64 p = D.p;
    long long maxv = 0;
    for (auto& c : f)
        if (!c.is_zero()) maxv = std::max(maxv, std::llabs(c.valuation()));

    int R = 0, S = 0;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 32) throw resource_error("puiseux_roots: too many field extensions");
        if (R > opt.max_r) throw resource_error("puiseux_roots: coefficient extension exceeds bound p^" + std::to_string(opt.max_r));
        const u64 e = static_cast<u64>(checked_pow(p, S));
        if (e > opt.tame_bound)
            throw out_of_scope_error("puiseux_roots: ramification " + std::to_string(e) + " exceeds the tame bound " +
                                     std::to_string(opt.tame_bound));
        const FqField& FQ = field_make(D.F->ell(), D.F->degree() * static_cast<int>(checked_pow(p, R)));
        Embedding phi = make_embedding(*D.F, FQ);
        LaurentPoly g;
        for (auto& c : f) g.push_back(c.mapped(phi).ramified(static_cast<long long>(e)));
        const long long T = opt.precision * static_cast<long long>(e);
        long long margin = 2 * static_cast<long long>(n) * (maxv * static_cast<long long>(e) + 1) + 16;
        try {
            std::vector<std::pair<Laurent, bool>> found;
            bool done = false;
            for (int retry = 0; retry <= opt.retries && !done; ++retry, margin *= 2) {
                detail::PuiseuxSolver solver(FQ, p, T, T + margin);
                try {
                    found = solver.solve(g);
                } catch (const detail::PuiseuxRetry&) {
                    continue;
                }
                if (static_cast<int>(found.size()) != n) continue;
                PuiseuxResult res{R, S, &FQ, {}};
                bool all_ok = true;
                for (auto& [ser, exact] : found) {
                    PuiseuxRoot root{exact ? ser : ser.truncated(T), e, 0, 0, opt.precision, exact};
                    if (!verify_root(f, root).ok) all_ok = false;
                    res.roots.push_back(std::move(root));
                }
                if (!all_ok) continue;
                done = true;
                // minimal (r, s) per root
                for (auto& root : res.roots) {
                    long long g_exp = static_cast<long long>(e);
                    int deg = D.F->degree();
                    for (auto& [m, c] : root.series.terms()) {
                        g_exp = std::gcd(g_exp, std::llabs(m));
                        deg = static_cast<int>(std::lcm(static_cast<long long>(deg), static_cast<long long>(element_degree(c))));
                    }
                    root.s = detail::log_p_exact(static_cast<u64>(static_cast<long long>(e) / g_exp), p);
                    root.r = detail::log_p_exact(static_cast<u64>(deg / D.F->degree()), p);
                }
                std::sort(res.roots.begin(), res.roots.end(),
                          [](const PuiseuxRoot& a, const PuiseuxRoot& b) { return detail::root_less(a.series, b.series); });
                return res;
            }
            throw precision_error("puiseux_roots: roots not separated at precision " + std::to_string(opt.precision) +
                                  "; raise the precision");
        } catch (const detail::PuiseuxBump& b) {
            R += b.dr;
            S += b.ds;
        }
    }
}

struct SplittingDescriptor {
    int r;
    int s;
    int level;             // tower level n = max(r, s) + 1
    bool contained;        // coefficient field and ramification embed in the level
    std::string level_field;
};

inline SplittingDescriptor splitting_descriptor(const FieldDescriptor& D, const PuiseuxResult& res) {
    SplittingDescriptor sd{0, 0, 1, false, ""};
    for (auto& root : res.roots) {
        sd.r = std::max(sd.r, root.r);
        sd.s = std::max(sd.s, root.s);
    }
    sd.level = std::max(sd.r, sd.s) + 1;
    TowerLevel L = kummer_tower(D, sd.level, std::max(4, sd.level));
    const int need_deg = D.F->degree() * static_cast<int>(checked_pow(D.p, sd.r));
    const u64 level_ram = static_cast<u64>(checked_pow(D.p, L.s));
    sd.contained = L.level.F->degree() % need_deg == 0 && level_ram % static_cast<u64>(checked_pow(D.p, sd.s)) == 0 &&
                   L.zeta_in_field && L.basis_independent;
    sd.level_field = L.level.str();
    return sd;
}

/// A radical base^(1/degree); base is a constant of F_q, or t when `constant` is empty.
struct RadicalGenerator {
    std::optional<FqElem> constant;
    u64 degree;

    std::string base_str() const { return constant ? constant->str() : "t"; }
};

struct RadicalExpression {
    std::vector<RadicalGenerator> generators;  // (u*, p^r) and/or (t, p^s)
    FqElem w;                      // chosen root of X^{p^r} - u* in the solving field
    bool minimal_polynomial_irreducible = true;
    /// terms: exponent of z = t^{1/p^s}, coefficient as polynomial in w over F_q (low degree first)
    std::vector<std::pair<long long, std::vector<FqElem>>> terms;
    bool nonnested = true;

    std::string str() const {
        std::string out;
        for (auto& [m, poly] : terms) {
            std::string c;
            for (std::size_t j = 0; j < poly.size(); ++j) {
                if (poly[j].is_zero()) continue;
                if (!c.empty()) c += " + ";
                c += poly[j].str();
                if (j) c += "*w" + (j > 1 ? "^" + std::to_string(j) : std::string());
            }
            if (c.empty()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c + ")";
            if (m) out += "*z" + (m == 1 ? std::string() : "^" + std::to_string(m));
        }
        return out.empty() ? "0" : out;
    }
};

namespace detail {

/// Coordinates of x over F_ell in the power basis of its field.
inline std::vector<u64> prime_coords(const FqElem& x) {
    std::vector<u64> v(static_cast<std::size_t>(x.field().degree()), 0);
    const auto& c = x.coeffs();
    for (std::size_t i = 0; i < c.size() && i < v.size(); ++i) v[i] = c[i];
    return v;
}

/// Solve sum_k a_k * basis_k = target over F_ell; nullopt when inconsistent.
inline std::optional<std::vector<u64>> solve_prime_field(const std::vector<FqElem>& basis, const FqElem& target) {
    const u64 ell = target.field().ell();
    const std::size_t n = basis.size();
    const std::size_t eqs = static_cast<std::size_t>(target.field().degree());
    std::vector<std::vector<u64>> A(eqs, std::vector<u64>(n + 1));
    for (std::size_t k = 0; k < n; ++k) {
        auto col = prime_coords(basis[k]);
        for (std::size_t i = 0; i < eqs; ++i) A[i][k] = col[i];
    }
    auto tc = prime_coords(target);
    for (std::size_t i = 0; i < eqs; ++i) A[i][n] = tc[i];
    std::vector<int> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < eqs; ++col) {
        std::size_t piv = row;
        while (piv < eqs && A[piv][col] == 0) ++piv;
        if (piv == eqs) continue;
        std::swap(A[piv], A[row]);
        u64 inv = mod_inv(A[row][col], ell);
        for (auto& x : A[row]) x = x * inv % ell;
        for (std::size_t r = 0; r < eqs; ++r) {
            if (r == row || A[r][col] == 0) continue;
            u64 f = A[r][col];
            for (std::size_t c2 = 0; c2 <= n; ++c2) A[r][c2] = (A[r][c2] + (ell - f) * A[row][c2]) % ell;
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    for (std::size_t r = row; r < eqs; ++r)
        if (A[r][n] != 0) return std::nullopt;
    std::vector<u64> x(n, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = A[r][n];
    return x;
}

}  // namespace detail

inline RadicalExpression as_nonnested_radicals(const FieldDescriptor& D, const PuiseuxRoot& root) {
    const FqField& Fq = *D.F;
    const FqField& FQ = root.series.field();
    const u64 p = D.p;
    Embedding phi = make_embedding(Fq, FQ);
    RadicalExpression ex;
    const u64 deg_w = static_cast<u64>(checked_pow(p, root.r));
    const u64 ram = static_cast<u64>(checked_pow(p, root.s));
    const FqElem u = D.unit_generator();
    ex.w = FQ.one();
    if (root.r > 0) {
        ex.generators.push_back({u, deg_w});
        // X^{p^r} - u* must be irreducible over F_q so that w generates the coefficient field
        std::vector<FqElem> mc(deg_w + 1, Fq.zero());
        mc[0] = -u;
        mc[deg_w] = Fq.one();
        ex.minimal_polynomial_irreducible = is_irreducible(FqPoly(Fq, mc));
        std::vector<FqElem> mq(deg_w + 1, FQ.zero());
        mq[0] = -phi(u);
        mq[deg_w] = FQ.one();
        auto ws = roots(FqPoly(FQ, mq));
        if (ws.empty()) throw verification_error("u* has no p^r-th root in the solving field");
        ex.w = ws.front();
    }
    if (root.s > 0) {
        ex.generators.push_back({std::nullopt, ram});
    }
    // basis g^i w^j of F_q(w) over F_ell, g the generator of F_q
    std::vector<FqElem> basis;
    const FqElem g = Fq.degree() == 1 ? Fq.one() : Fq.decode(Fq.ell());
    for (u64 j = 0; j < deg_w; ++j)
        for (int i = 0; i < Fq.degree(); ++i) basis.push_back(phi(g.pow(static_cast<u128>(i))) * ex.w.pow(static_cast<u128>(j)));
    const long long scale = static_cast<long long>(root.e / ram);
    for (auto& [m, c] : root.series.terms()) {
        auto sol = detail::solve_prime_field(basis, c);
        if (!sol) throw verification_error("coefficient " + c.str() + " is not in F_q(w)");
        std::vector<FqElem> poly(deg_w, Fq.zero());
        for (u64 j = 0; j < deg_w; ++j) {
            FqElem acc = Fq.zero();
            for (int i = 0; i < Fq.degree(); ++i) {
                u64 a = (*sol)[j * Fq.degree() + i];
                if (a) acc = acc + g.pow(static_cast<u128>(i)).scaled(a);
            }
            poly[j] = acc;
        }
        if (m % scale != 0) throw verification_error("exponent not compatible with minimal ramification");
        ex.terms.emplace_back(m / scale, poly);
    }
    // syntactic non-nestedness: every generator base is in the ground field
    for (auto& gen : ex.generators)
        if (gen.constant && gen.constant->field_ptr() != &Fq) ex.nonnested = false;
    return ex;
}

/// Root set stability under z -> zeta_e z and under the q-Frobenius on coefficients.
inline bool galois_stable(const FieldDescriptor& D, const PuiseuxResult& res) {
    if (res.roots.empty()) return true;
    const FqField& FQ = *res.field;
    const u64 e = res.roots.front().e;
    auto same_set = [&](std::vector<Laurent> img) {
        std::vector<bool> used(res.roots.size(), false);
        for (auto& x : img) {
            bool hit = false;
            for (std::size_t i = 0; i < res.roots.size() && !hit; ++i) {
                if (used[i]) continue;
                const Laurent& y = res.roots[i].series;
                if ((x.is_exact() && y.is_exact()) ? x == y : x.truncated(y.precision()).equal_to_precision(y)) {
                    used[i] = true;
                    hit = true;
                }
            }
            if (!hit) return false;
        }
        return true;
    };
    std::vector<Laurent> frob;
    for (auto& r : res.roots) frob.push_back(r.series.frobenius(D.F->degree()));
    if (!same_set(frob)) return false;
    if (e > 1) {
        if ((FQ.order() - 1) % e != 0) return false;
        FqElem ze = root_of_unity(FQ, D.p, padic_val(static_cast<u128>(e), D.p));
        std::vector<Laurent> rot;
        for (auto& r : res.roots) rot.push_back(r.series.twisted(ze));
        if (!same_set(rot)) return false;
    }
    return true;
}

}  // namespace prigid
