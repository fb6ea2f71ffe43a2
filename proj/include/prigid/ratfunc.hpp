#pragma once

#include <string>
#include <utility>

#include "field.hpp"

namespace prigid {

/// Element of F_q(t): num/den with den monic and gcd(num, den) = 1.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(const FqField& F) : num_(F), den_(FqPoly::constant(F.one())) {}
    RatFunc(FqPoly num, FqPoly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }
    explicit RatFunc(FqPoly num) : num_(std::move(num)), den_(FqPoly::constant(num_.field().one())) {}

    static RatFunc constant(const FqElem& a) { return RatFunc(FqPoly::constant(a)); }
    static RatFunc t(const FqField& F) { return RatFunc(FqPoly::x(F)); }

    const FqField& field() const { return num_.field(); }
    const FqPoly& num() const { return num_; }
    const FqPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.degree() == 0 && num_.lead().is_one() && den_.degree() == 0; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    RatFunc operator-() const { return RatFunc(-num_, den_); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc(a.field());
        FqPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        return RatFunc((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
    }
    RatFunc inv() const {
        if (is_zero()) throw usage_error("division by zero rational function");
        return RatFunc(den_, num_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }

    RatFunc scaled(const FqElem& s) const { return RatFunc(num_.scaled(s), den_); }

    RatFunc pow(long long e) const {
        if (e < 0) return inv().pow(-e);
        return RatFunc(num_.pow(static_cast<u64>(e)), den_.pow(static_cast<u64>(e)));
    }

    /// v_pi for a monic irreducible pi.
    long long valuation_at(const FqPoly& pi) const {
        if (is_zero()) throw usage_error("valuation of zero");
        return multiplicity(num_, pi) - multiplicity(den_, pi);
    }
    /// v_infinity = deg den - deg num.
    long long valuation_at_infinity() const {
        if (is_zero()) throw usage_error("valuation of zero");
        return den_.degree() - num_.degree();
    }
    /// Leading coefficient of num (den is monic).
    FqElem leading() const { return num_.lead(); }

    std::string str(const std::string& var = "t") const {
        if (den_.degree() == 0) return "(" + num_.str(var) + ")";
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

    static long long multiplicity(FqPoly f, const FqPoly& pi) {
        long long m = 0;
        while (!f.is_zero()) {
            auto [q, r] = FqPoly::divmod(f, pi);
            if (!r.is_zero()) break;
            f = std::move(q);
            ++m;
        }
        return m;
    }

private:
    void reduce() {
        if (den_.is_zero()) throw usage_error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = FqPoly::constant(num_.field().one());
            return;
        }
        FqPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        FqElem l = den_.lead();
        if (!l.is_one()) {
            FqElem li = l.inv();
            num_ = num_.scaled(li);
            den_ = den_.scaled(li);
        }
    }

    FqPoly num_;
    FqPoly den_;
};

}  // namespace prigid
