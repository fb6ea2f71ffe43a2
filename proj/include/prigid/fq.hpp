#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "arith.hpp"
#include "error.hpp"

namespace prigid {

class FqElem;

/// F_q with q = ell^f, realised as F_ell[X]/(modulus). Instances are interned by
/// field_make() and live for the whole process, so elements keep a raw pointer.
class FqField {
public:
    FqField(u64 ell, std::vector<std::uint32_t> modulus)
        : ell_(ell), f_(static_cast<int>(modulus.size()) - 1), modulus_(std::move(modulus)) {
        if (!is_prime(ell_)) throw usage_error("characteristic " + std::to_string(ell_) + " is not prime");
        if (ell_ >= (1ull << 31)) throw resource_error("characteristic too large (limit 2^31)");
        if (f_ < 1 || modulus_.back() != 1) throw usage_error("field modulus must be monic of degree >= 1");
        q_ = checked_pow(ell_, static_cast<u64>(f_));
    }

    u64 ell() const { return ell_; }
    int degree() const { return f_; }
    u128 order() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    bool is_prime_field() const { return f_ == 1; }

    std::string name() const {
        return f_ == 1 ? "gf(" + std::to_string(ell_) + ")"
                       : "gf(" + std::to_string(ell_) + "^" + std::to_string(f_) + ")";
    }

    FqElem zero() const;
    FqElem one() const;
    FqElem from_int(long long v) const;
    FqElem from_coeffs(const std::vector<long long>& c) const;
    /// Inverse of encode(): base-ell digits, lowest first.
    FqElem decode(u128 code) const;

private:
    u64 ell_;
    int f_;
    std::vector<std::uint32_t> modulus_;
    u128 q_;
};

/// Element of F_q as a coefficient vector (length f) over F_ell.
class FqElem {
public:
    FqElem() = default;
    FqElem(const FqField* field, std::vector<std::uint32_t> coeffs) : F_(field), c_(std::move(coeffs)) {}

    const FqField& field() const { return *F_; }
    const FqField* field_ptr() const { return F_; }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](std::uint32_t x) { return x == 0; });
    }
    bool is_one() const {
        if (c_.empty() || c_[0] != 1) return false;
        return std::all_of(c_.begin() + 1, c_.end(), [](std::uint32_t x) { return x == 0; });
    }
    /// True when the element lies in the prime field.
    bool is_scalar() const {
        return std::all_of(c_.begin() + 1, c_.end(), [](std::uint32_t x) { return x == 0; });
    }

    /// Canonical integer encoding sum c_i * ell^i.
    u128 encode() const {
        u128 r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * F_->ell() + *it;
        return r;
    }

    friend bool operator==(const FqElem& a, const FqElem& b) { return a.F_ == b.F_ && a.c_ == b.c_; }
    friend bool operator!=(const FqElem& a, const FqElem& b) { return !(a == b); }

    FqElem operator-() const {
        FqElem r = *this;
        const u64 l = F_->ell();
        for (auto& x : r.c_) x = x ? static_cast<std::uint32_t>(l - x) : 0;
        return r;
    }
    FqElem& operator+=(const FqElem& o) {
        check(o);
        const u64 l = F_->ell();
        for (std::size_t i = 0; i < c_.size(); ++i) {
            u64 s = static_cast<u64>(c_[i]) + o.c_[i];
            c_[i] = static_cast<std::uint32_t>(s >= l ? s - l : s);
        }
        return *this;
    }
    FqElem& operator-=(const FqElem& o) {
        check(o);
        const u64 l = F_->ell();
        for (std::size_t i = 0; i < c_.size(); ++i) {
            u64 s = static_cast<u64>(c_[i]) + l - o.c_[i];
            c_[i] = static_cast<std::uint32_t>(s >= l ? s - l : s);
        }
        return *this;
    }
    FqElem& operator*=(const FqElem& o) {
        *this = mul(*this, o);
        return *this;
    }
    FqElem& operator/=(const FqElem& o) {
        *this = mul(*this, o.inv());
        return *this;
    }
    friend FqElem operator+(FqElem a, const FqElem& b) { return a += b; }
    friend FqElem operator-(FqElem a, const FqElem& b) { return a -= b; }
    friend FqElem operator*(const FqElem& a, const FqElem& b) { return mul(a, b); }
    friend FqElem operator/(FqElem a, const FqElem& b) { return a /= b; }

    FqElem scaled(u64 s) const {
        FqElem r = *this;
        const u64 l = F_->ell();
        s %= l;
        for (auto& x : r.c_) x = static_cast<std::uint32_t>(x * s % l);
        return r;
    }

    FqElem pow(u128 e) const {
        FqElem r = F_->one();
        FqElem b = *this;
        while (e) {
            if (e & 1) r = mul(r, b);
            e >>= 1;
            if (e) b = mul(b, b);
        }
        return r;
    }
    /// Signed exponent; negative powers invert first.
    FqElem powi(long long e) const {
        if (e >= 0) return pow(static_cast<u128>(e));
        return inv().pow(static_cast<u128>(-e));
    }

    FqElem inv() const {
        if (is_zero()) throw usage_error("division by zero in " + F_->name());
        if (F_->is_prime_field()) {
            return FqElem(F_, {static_cast<std::uint32_t>(mod_inv(c_[0], F_->ell()))});
        }
        return pow(F_->order() - 2);
    }

    /// Frobenius x -> x^ell.
    FqElem frobenius(int times = 1) const {
        FqElem r = *this;
        for (int i = 0; i < times; ++i) r = r.pow(F_->ell());
        return r;
    }

    std::string str() const {
        if (F_->is_prime_field()) return std::to_string(c_[0]);
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(c_[i]);
        }
        return s + "]";
    }

    friend std::ostream& operator<<(std::ostream& os, const FqElem& e) { return os << e.str(); }

    /// Total order by encoding, used for every "smallest canonical element" choice.
    friend bool operator<(const FqElem& a, const FqElem& b) { return a.encode() < b.encode(); }

private:
    void check(const FqElem& o) const {
        if (F_ != o.F_) throw usage_error("mixing elements of different fields");
    }

    static FqElem mul(const FqElem& a, const FqElem& b) {
        a.check(b);
        const FqField& F = *a.F_;
        const u64 l = F.ell();
        const int f = F.degree();
        if (f == 1) return FqElem(a.F_, {static_cast<std::uint32_t>(static_cast<u64>(a.c_[0]) * b.c_[0] % l)});
        std::vector<u64> t(2 * f - 1, 0);
        for (int i = 0; i < f; ++i) {
            if (!a.c_[i]) continue;
            for (int j = 0; j < f; ++j) t[i + j] = (t[i + j] + static_cast<u64>(a.c_[i]) * b.c_[j]) % l;
        }
        const auto& m = F.modulus();
        for (int d = 2 * f - 2; d >= f; --d) {
            u64 lead = t[d];
            if (!lead) continue;
            t[d] = 0;
            for (int i = 0; i < f; ++i) t[d - f + i] = (t[d - f + i] + (l - lead) * m[i]) % l;
        }
        std::vector<std::uint32_t> r(f);
        for (int i = 0; i < f; ++i) r[i] = static_cast<std::uint32_t>(t[i]);
        return FqElem(a.F_, std::move(r));
    }

    const FqField* F_ = nullptr;
    std::vector<std::uint32_t> c_;
};

inline FqElem FqField::zero() const { return FqElem(this, std::vector<std::uint32_t>(f_, 0)); }
inline FqElem FqField::one() const {
    std::vector<std::uint32_t> c(f_, 0);
    c[0] = 1;
    return FqElem(this, std::move(c));
}
inline FqElem FqField::from_int(long long v) const {
    std::vector<std::uint32_t> c(f_, 0);
    c[0] = static_cast<std::uint32_t>(mod_norm(v, ell_));
    return FqElem(this, std::move(c));
}
inline FqElem FqField::from_coeffs(const std::vector<long long>& cs) const {
    if (static_cast<int>(cs.size()) > f_)
        throw usage_error("element literal has more than " + std::to_string(f_) + " coefficients");
    std::vector<std::uint32_t> c(f_, 0);
    for (std::size_t i = 0; i < cs.size(); ++i) c[i] = static_cast<std::uint32_t>(mod_norm(cs[i], ell_));
    return FqElem(this, std::move(c));
}
inline FqElem FqField::decode(u128 code) const {
    if (code >= q_) throw usage_error("encoding out of range for " + name());
    std::vector<std::uint32_t> c(f_, 0);
    for (int i = 0; i < f_; ++i) {
        c[i] = static_cast<std::uint32_t>(code % ell_);
        code /= ell_;
    }
    return FqElem(this, std::move(c));
}

}  // namespace prigid
