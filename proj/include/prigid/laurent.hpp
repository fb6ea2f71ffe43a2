#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "field.hpp"

namespace prigid {

/// Truncated Laurent series sum_{i >= val} c_i t^i over F_q with an absolute precision:
/// coefficients at exponents >= prec are unknown. prec == kExact marks a finite, exact sum.
class Laurent {
public:
    static constexpr long long kExact = LLONG_MAX;

    Laurent() = default;
    /// Exact zero.
    explicit Laurent(const FqField& F) : F_(&F) {}
    Laurent(const FqField& F, long long val, std::vector<FqElem> coeffs, long long prec = kExact)
        : F_(&F), val_(val), c_(std::move(coeffs)), prec_(prec) {
        normalize();
    }

    static Laurent constant(const FqElem& a) { return Laurent(a.field(), 0, {a}); }
    static Laurent monomial(const FqElem& a, long long e) { return Laurent(a.field(), e, {a}); }
    /// Zero known only below `prec`.
    static Laurent zero_to(const FqField& F, long long prec) {
        Laurent z(F);
        z.prec_ = prec;
        return z;
    }

    const FqField& field() const { return *F_; }
    const FqField* field_ptr() const { return F_; }
    bool is_exact() const { return prec_ == kExact; }
    long long precision() const { return prec_; }
    /// True when every known coefficient vanishes.
    bool is_zero() const { return c_.empty(); }
    bool is_exact_zero() const { return c_.empty() && is_exact(); }

    long long valuation() const {
        if (c_.empty()) {
            if (is_exact()) throw usage_error("valuation of the zero series");
            throw precision_error("series vanishes to its precision " + std::to_string(prec_) + "; valuation unknown");
        }
        return val_;
    }
    /// Lower bound for the valuation; for zero series this is the precision.
    long long valuation_bound() const { return c_.empty() ? prec_ : val_; }
    const FqElem& leading() const {
        if (c_.empty()) throw precision_error("leading coefficient of a vanishing series");
        return c_.front();
    }
    /// Index one past the last stored term.
    long long stored_end() const { return c_.empty() ? val_ : val_ + static_cast<long long>(c_.size()); }

    FqElem coeff(long long e) const {
        if (e >= prec_) throw precision_error("coefficient of t^" + std::to_string(e) + " is beyond precision " + std::to_string(prec_));
        if (c_.empty() || e < val_ || e >= val_ + static_cast<long long>(c_.size())) return F_->zero();
        return c_[static_cast<std::size_t>(e - val_)];
    }

    /// Nonzero terms (exponent, coefficient) in increasing order.
    std::vector<std::pair<long long, FqElem>> terms() const {
        std::vector<std::pair<long long, FqElem>> out;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) out.emplace_back(val_ + static_cast<long long>(i), c_[i]);
        return out;
    }

    Laurent truncated(long long prec) const {
        if (prec >= prec_) return *this;
        Laurent r = *this;
        r.prec_ = prec;
        r.normalize();
        return r;
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) { return add(a, b, false); }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return add(a, b, true); }
    Laurent operator-() const {
        Laurent r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        const FqField& F = *a.F_;
        long long prec = kExact;
        if (!a.is_exact()) prec = std::min(prec, sat_add(a.prec_, b.valuation_bound()));
        if (!b.is_exact()) prec = std::min(prec, sat_add(b.prec_, a.valuation_bound()));
        if (a.c_.empty() || b.c_.empty()) {
            Laurent z(F);
            z.prec_ = prec;
            return z;
        }
        const long long val = a.val_ + b.val_;
        std::size_t len = a.c_.size() + b.c_.size() - 1;
        if (prec != kExact) len = static_cast<std::size_t>(std::clamp<long long>(prec - val, 0, static_cast<long long>(len)));
        std::vector<FqElem> c(len, F.zero());
        for (std::size_t i = 0; i < a.c_.size() && i < len; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size() && i + j < len; ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return Laurent(F, val, std::move(c), prec);
    }

    Laurent scaled(const FqElem& s) const {
        Laurent r = *this;
        for (auto& x : r.c_) x = x * s;
        r.normalize();
        return r;
    }
    /// Multiply by t^e.
    Laurent shifted(long long e) const {
        Laurent r = *this;
        r.val_ += e;
        if (!r.is_exact()) r.prec_ += e;
        return r;
    }

    /// Multiplicative inverse. Exact inputs with more than one term get `rel_prec` relative terms.
    Laurent inverse(long long rel_prec) const {
        if (c_.empty()) throw precision_error("inverse of a series that vanishes to its precision");
        if (is_exact() && c_.size() == 1) return Laurent(*F_, -val_, {c_[0].inv()});
        long long rel = is_exact() ? rel_prec : prec_ - val_;
        FqElem c0i = c_[0].inv();
        std::vector<FqElem> r(static_cast<std::size_t>(rel), F_->zero());
        if (rel > 0) r[0] = c0i;
        for (long long n = 1; n < rel; ++n) {
            FqElem s = F_->zero();
            for (long long k = 1; k <= n && k < static_cast<long long>(c_.size()); ++k) s += c_[k] * r[n - k];
            r[n] = -(s * c0i);
        }
        return Laurent(*F_, -val_, std::move(r), -val_ + rel);
    }

    Laurent pow(long long e, long long rel_prec) const {
        if (e < 0) return inverse(rel_prec).pow(-e, rel_prec);
        Laurent r = constant(F_->one());
        Laurent b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    /// t -> t^e.
    Laurent ramified(long long e) const {
        if (e < 1) throw usage_error("ramified: index must be >= 1");
        std::vector<FqElem> c;
        if (!c_.empty()) {
            c.assign((c_.size() - 1) * e + 1, F_->zero());
            for (std::size_t i = 0; i < c_.size(); ++i) c[i * e] = c_[i];
        }
        return Laurent(*F_, val_ * e, std::move(c), is_exact() ? kExact : prec_ * e);
    }

    /// Apply a field embedding coefficient-wise.
    Laurent mapped(const Embedding& phi) const {
        std::vector<FqElem> c;
        for (auto& x : c_) c.push_back(phi(x));
        Laurent r(phi.to(), val_, std::move(c), prec_);
        return r;
    }

    /// Apply the ring map c -> c^(ell^j) to every coefficient.
    Laurent frobenius(int j) const {
        Laurent r = *this;
        for (auto& x : r.c_) x = x.frobenius(j);
        return r;
    }

    /// Substitute t -> u * t (u a constant).
    Laurent twisted(const FqElem& u) const {
        Laurent r = *this;
        if (c_.empty()) return r;
        FqElem up = u.powi(val_);
        for (auto& x : r.c_) {
            x = x * up;
            up = up * u;
        }
        return r;
    }

    /// Compare to the common known precision.
    bool equal_to_precision(const Laurent& o) const {
        Laurent d = *this - o;
        return d.is_zero();
    }

    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.F_ == b.F_ && a.prec_ == b.prec_ && a.c_ == b.c_ && (a.c_.empty() || a.val_ == b.val_);
    }

    std::string str(const std::string& var = "t") const {
        std::string s;
        for (auto& [e, c] : terms()) {
            if (!s.empty()) s += " + ";
            s += c.str();
            if (e != 0) s += "*" + var + (e == 1 ? "" : "^" + std::to_string(e));
        }
        if (s.empty()) s = "0";
        if (!is_exact()) s += " + O(" + var + "^" + std::to_string(prec_) + ")";
        return s;
    }

private:
    static long long sat_add(long long a, long long b) {
        if (a == kExact || b == kExact) return kExact;
        return a + b;
    }

    static Laurent add(const Laurent& a, const Laurent& b, bool negate) {
        const FqField& F = *a.F_;
        long long prec = std::min(a.prec_, b.prec_);
        if (a.c_.empty() && b.c_.empty()) {
            Laurent z(F);
            z.prec_ = prec;
            return z;
        }
        long long lo = LLONG_MAX, hi = LLONG_MIN;
        if (!a.c_.empty()) {
            lo = std::min(lo, a.val_);
            hi = std::max(hi, a.stored_end());
        }
        if (!b.c_.empty()) {
            lo = std::min(lo, b.val_);
            hi = std::max(hi, b.stored_end());
        }
        if (prec != kExact) hi = std::min(hi, prec);
        if (hi <= lo) {
            Laurent z(F);
            z.prec_ = prec;
            return z;
        }
        std::vector<FqElem> c(static_cast<std::size_t>(hi - lo), F.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            long long e = a.val_ + static_cast<long long>(i);
            if (e < hi) c[e - lo] += a.c_[i];
        }
        for (std::size_t i = 0; i < b.c_.size(); ++i) {
            long long e = b.val_ + static_cast<long long>(i);
            if (e < hi) {
                if (negate)
                    c[e - lo] -= b.c_[i];
                else
                    c[e - lo] += b.c_[i];
            }
        }
        return Laurent(F, lo, std::move(c), prec);
    }

    void normalize() {
        if (prec_ != kExact && !c_.empty()) {
            long long keep = prec_ - val_;
            if (keep <= 0)
                c_.clear();
            else if (static_cast<long long>(c_.size()) > keep)
                c_.resize(static_cast<std::size_t>(keep));
        }
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead].is_zero()) ++lead;
        if (lead == c_.size()) {
            c_.clear();
            val_ = 0;
            return;
        }
        if (lead) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long long>(lead));
            val_ += static_cast<long long>(lead);
        }
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    const FqField* F_ = nullptr;
    long long val_ = 0;
    std::vector<FqElem> c_;
    long long prec_ = kExact;
};

/// Exact p-th root of a series whose unit part is a p-th power, to the input's relative
/// precision (or `rel_prec` when the input is exact). The constant term of the root is the
/// canonical p-th root of the leading coefficient. Returns nullopt when no root exists.
inline std::optional<Laurent> laurent_pth_root(const Laurent& a, u64 p, long long rel_prec) {
    const FqField& F = a.field();
    const long long v = a.valuation();
    if (v % static_cast<long long>(p) != 0) return std::nullopt;
    auto roots0 = pth_roots_fq(a.leading(), p);
    if (roots0.empty()) return std::nullopt;
    const FqElem r0 = roots0.front();
    // unit part u = a / (c0 t^v) = 1 + O(t)
    Laurent u = a.shifted(-v).scaled(a.leading().inv());
    long long rel = u.is_exact() ? rel_prec : u.precision();
    u = u.truncated(rel);
    if (u.is_exact()) u = u + Laurent::zero_to(F, rel);
    // Newton iteration y <- y - (y^p - u) / (p y^(p-1)), quadratic convergence from y = 1
    Laurent y = Laurent::constant(F.one()) + Laurent::zero_to(F, rel);
    const FqElem inv_p = F.from_int(static_cast<long long>(p)).inv();
    for (long long known = 1; known < rel; known *= 2) {
        Laurent yp1 = y.pow(static_cast<long long>(p) - 1, rel);
        Laurent num = yp1 * y - u;
        y = y - (num * yp1.inverse(rel)).scaled(inv_p);
    }
    y = y.truncated(rel);
    return y.scaled(r0).shifted(v / static_cast<long long>(p));
}

}  // namespace prigid
