#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fq.hpp"

namespace prigid {

/// Dense univariate polynomial over F_q, coefficients low-to-high, trailing zeros stripped.
class FqPoly {
public:
    FqPoly() = default;
    explicit FqPoly(const FqField& F) : F_(&F) {}
    FqPoly(const FqField& F, std::vector<FqElem> c) : F_(&F), c_(std::move(c)) { trim(); }

    static FqPoly constant(const FqElem& a) { return FqPoly(a.field(), {a}); }
    static FqPoly monomial(const FqElem& a, int deg) {
        std::vector<FqElem> c(deg + 1, a.field().zero());
        c[deg] = a;
        return FqPoly(a.field(), std::move(c));
    }
    /// The indeterminate X.
    static FqPoly x(const FqField& F) { return monomial(F.one(), 1); }
    static FqPoly from_ints(const FqField& F, const std::vector<long long>& c) {
        std::vector<FqElem> v;
        v.reserve(c.size());
        for (long long a : c) v.push_back(F.from_int(a));
        return FqPoly(F, std::move(v));
    }

    const FqField& field() const { return *F_; }
    const FqField* field_ptr() const { return F_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<FqElem>& coeffs() const { return c_; }
    FqElem coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : F_->zero(); }
    FqElem lead() const { return c_.empty() ? F_->zero() : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    FqPoly monic() const {
        if (is_zero()) return *this;
        FqElem li = lead().inv();
        FqPoly r = *this;
        for (auto& a : r.c_) a = a * li;
        return r;
    }

    FqElem eval(const FqElem& x) const {
        FqElem r = F_->zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    FqPoly derivative() const {
        std::vector<FqElem> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i].scaled(i));
        return FqPoly(*F_, std::move(d));
    }

    friend bool operator==(const FqPoly& a, const FqPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const FqPoly& a, const FqPoly& b) { return !(a == b); }

    friend FqPoly operator+(const FqPoly& a, const FqPoly& b) {
        const FqField& F = a.F_ ? *a.F_ : *b.F_;
        std::vector<FqElem> r(std::max(a.c_.size(), b.c_.size()), F.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return FqPoly(F, std::move(r));
    }
    friend FqPoly operator-(const FqPoly& a, const FqPoly& b) {
        const FqField& F = a.F_ ? *a.F_ : *b.F_;
        std::vector<FqElem> r(std::max(a.c_.size(), b.c_.size()), F.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return FqPoly(F, std::move(r));
    }
    FqPoly operator-() const {
        FqPoly r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }
    friend FqPoly operator*(const FqPoly& a, const FqPoly& b) {
        const FqField& F = a.F_ ? *a.F_ : *b.F_;
        if (a.is_zero() || b.is_zero()) return FqPoly(F);
        std::vector<FqElem> r(a.c_.size() + b.c_.size() - 1, F.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return FqPoly(F, std::move(r));
    }
    FqPoly scaled(const FqElem& s) const {
        FqPoly r = *this;
        for (auto& a : r.c_) a = a * s;
        r.trim();
        return r;
    }

    /// Euclidean division; divisor must be nonzero.
    static std::pair<FqPoly, FqPoly> divmod(const FqPoly& a, const FqPoly& b) {
        if (b.is_zero()) throw usage_error("polynomial division by zero");
        const FqField& F = *b.F_;
        if (a.degree() < b.degree()) return {FqPoly(F), a};
        std::vector<FqElem> rem = a.c_;
        std::vector<FqElem> quo(a.degree() - b.degree() + 1, F.zero());
        FqElem li = b.lead().inv();
        for (int d = a.degree(); d >= b.degree(); --d) {
            FqElem coef = rem[d] * li;
            if (coef.is_zero()) continue;
            quo[d - b.degree()] = coef;
            for (int i = 0; i <= b.degree(); ++i) rem[d - b.degree() + i] -= coef * b.c_[i];
        }
        rem.resize(b.degree());
        return {FqPoly(F, std::move(quo)), FqPoly(F, std::move(rem))};
    }
    friend FqPoly operator/(const FqPoly& a, const FqPoly& b) { return divmod(a, b).first; }
    friend FqPoly operator%(const FqPoly& a, const FqPoly& b) { return divmod(a, b).second; }

    FqPoly pow(u64 e) const {
        FqPoly r = constant(F_->one());
        FqPoly b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    /// this^e mod m.
    FqPoly powmod(u128 e, const FqPoly& m) const {
        FqPoly r = constant(F_->one()) % m;
        FqPoly b = *this % m;
        while (e) {
            if (e & 1) r = (r * b) % m;
            e >>= 1;
            if (e) b = (b * b) % m;
        }
        return r;
    }

    /// Canonical order: degree, then coefficient encodings from the top down.
    friend bool operator<(const FqPoly& a, const FqPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int i = a.degree(); i >= 0; --i) {
            u128 x = a.c_[i].encode(), y = b.c_[i].encode();
            if (x != y) return x < y;
        }
        return false;
    }

    std::string str(const std::string& var = "X") const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            bool unit = c_[i].is_one();
            if (!unit || i == 0) s += c_[i].str();
            if (i > 0) {
                if (!unit) s += "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    const FqField* F_ = nullptr;
    std::vector<FqElem> c_;
};

/// Monic gcd.
inline FqPoly gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        FqPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Resultant by the Euclidean remainder sequence.
inline FqElem resultant(const FqPoly& a, const FqPoly& b) {
    const FqField& F = a.field_ptr() ? a.field() : b.field();
    if (a.is_zero() || b.is_zero()) return F.zero();
    FqPoly f = a, g = b;
    FqElem res = F.one();
    while (true) {
        int df = f.degree(), dg = g.degree();
        if (dg == 0) return res * g.lead().pow(static_cast<u128>(df));
        FqPoly r = f % g;
        if (r.is_zero()) return F.zero();
        if ((df % 2 == 1) && (dg % 2 == 1)) res = -res;
        res = res * g.lead().pow(static_cast<u128>(df - r.degree()));
        f = std::move(g);
        g = std::move(r);
    }
}

/// Deterministic source of random field elements for the equal-degree splitter.
class FqRandom {
public:
    explicit FqRandom(u64 seed) : gen_(seed) {}
    FqElem elem(const FqField& F) {
        u128 r = (static_cast<u128>(gen_()) << 64) | gen_();
        return F.decode(r % F.order());
    }
    FqPoly poly(const FqField& F, int deg_below) {
        std::vector<FqElem> c;
        for (int i = 0; i < deg_below; ++i) c.push_back(elem(F));
        return FqPoly(F, std::move(c));
    }
    u64 next() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

inline constexpr u64 kFactorSeed = 0x5eed'0f'fac7'0123ull;

namespace detail {

/// Coefficient-wise ell-th root for a polynomial in X^ell.
inline FqPoly ell_root(const FqPoly& f) {
    const FqField& F = f.field();
    const u64 ell = F.ell();
    std::vector<FqElem> c;
    // x^(q/ell) is the inverse of Frobenius on F_q.
    const u128 e = F.order() / ell;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(ell)) c.push_back(f.coeff(i).pow(e));
    return FqPoly(F, std::move(c));
}

/// x^(q^k) mod m computed by k successive q-th powerings.
inline FqPoly frobenius_power(const FqPoly& x, int k, const FqPoly& m) {
    FqPoly r = x % m;
    for (int i = 0; i < k; ++i) r = r.powmod(m.field().order(), m);
    return r;
}

}  // namespace detail

/// Square-free decomposition of a monic polynomial: pairs (square-free part, multiplicity).
inline std::vector<std::pair<FqPoly, int>> squarefree_decomposition(const FqPoly& input) {
    std::vector<std::pair<FqPoly, int>> out;
    FqPoly f = input.monic();
    if (f.degree() <= 0) return out;
    const int ell = static_cast<int>(f.field().ell());
    FqPoly d = f.derivative();
    if (d.is_zero()) {
        for (auto& [g, m] : squarefree_decomposition(detail::ell_root(f))) out.emplace_back(g, m * ell);
        return out;
    }
    // Yun's algorithm, restricted to multiplicities prime to ell; the rest recurses.
    FqPoly c = gcd(f, d);
    FqPoly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        FqPoly y = gcd(w, c);
        FqPoly z = w / y;
        if (z.degree() > 0) out.emplace_back(z, i);
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0) {
        for (auto& [g, m] : squarefree_decomposition(detail::ell_root(c))) out.emplace_back(g, m * ell);
    }
    return out;
}

/// Distinct-degree factorization of a monic square-free polynomial.
inline std::vector<std::pair<FqPoly, int>> distinct_degree_factorization(const FqPoly& f) {
    std::vector<std::pair<FqPoly, int>> out;
    FqPoly rest = f.monic();
    const FqPoly X = FqPoly::x(f.field());
    FqPoly h = X % rest;
    int d = 0;
    while (rest.degree() >= 2 * (d + 1)) {
        ++d;
        h = h.powmod(f.field().order(), rest);
        FqPoly g = gcd(rest, h - X);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            rest = rest / g;
            h = h % rest;
        }
    }
    if (rest.degree() > 0) out.emplace_back(rest, rest.degree());
    return out;
}

/// Splits a monic square-free product of irreducibles of common degree d (Cantor-Zassenhaus).
inline std::vector<FqPoly> equal_degree_factorization(const FqPoly& f, int d, FqRandom& rng) {
    if (f.degree() == d) return {f.monic()};
    const FqField& F = f.field();
    while (true) {
        FqPoly a = rng.poly(F, f.degree());
        if (a.degree() <= 0) continue;
        FqPoly b(F);
        if (F.ell() == 2) {
            // absolute trace to F_2 of a over F_{q^d}
            const int steps = F.degree() * d;
            FqPoly t = a % f;
            b = t;
            for (int i = 1; i < steps; ++i) {
                t = (t * t) % f;
                b = b + t;
            }
        } else {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
            FqPoly norm = a % f;
            FqPoly cur = norm;
            for (int i = 1; i < d; ++i) {
                cur = cur.powmod(F.order(), f);
                norm = (norm * cur) % f;
            }
            b = norm.powmod((F.order() - 1) / 2, f) - FqPoly::constant(F.one());
        }
        FqPoly g = gcd(f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            auto left = equal_degree_factorization(g, d, rng);
            auto right = equal_degree_factorization(f / g, d, rng);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
    }
}

struct Factorization {
    FqElem unit;
    std::vector<std::pair<FqPoly, int>> factors;  // monic irreducible, multiplicity; canonical order
};

/// Complete factorization into monic irreducibles; deterministic for a fixed seed.
inline Factorization factorize(const FqPoly& f, u64 seed = kFactorSeed) {
    if (f.is_zero()) throw usage_error("factorize: zero polynomial");
    Factorization out{f.lead(), {}};
    FqRandom rng(seed);
    for (auto& [sf, mult] : squarefree_decomposition(f)) {
        for (auto& [part, deg] : distinct_degree_factorization(sf)) {
            for (auto& g : equal_degree_factorization(part, deg, rng)) out.factors.emplace_back(g, mult);
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first || (a.first == b.first && a.second < b.second); });
    return out;
}

/// Rabin-style irreducibility test.
inline bool is_irreducible(const FqPoly& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    FqPoly m = f.monic();
    if (gcd(m, m.derivative()).degree() > 0) return false;
    auto ddf = distinct_degree_factorization(m);
    return ddf.size() == 1 && ddf[0].second == m.degree();
}

/// Distinct roots in F_q, sorted by encoding.
inline std::vector<FqElem> roots(const FqPoly& f, u64 seed = kFactorSeed) {
    if (f.is_zero()) throw usage_error("roots of the zero polynomial");
    std::vector<FqElem> out;
    if (f.degree() <= 0) return out;
    FqPoly m = f.monic();
    const FqField& F = f.field();
    // restrict to the product of linear factors: gcd(f, X^q - X)
    FqPoly X = FqPoly::x(F);
    FqPoly lin = gcd(m, X.powmod(F.order(), m) - X);
    if (lin.degree() <= 0) return out;
    FqRandom rng(seed);
    for (auto& g : equal_degree_factorization(lin, 1, rng)) out.push_back(-g.coeff(0));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace prigid
