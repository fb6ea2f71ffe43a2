#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include "fqpoly.hpp"

namespace prigid {

namespace detail {

struct FieldRegistry {
    std::mutex mu;
    std::map<std::pair<u64, int>, std::unique_ptr<FqField>> fields;
};

inline FieldRegistry& registry() {
    static FieldRegistry r;
    return r;
}

inline std::unique_ptr<FqField> build_field(u64 ell, int f);

}  // namespace detail

/// F_{ell^f} with the smallest monic irreducible modulus. Interned: the same (ell, f)
/// always returns the same object.
inline const FqField& field_make(u64 ell, int f) {
    if (!is_prime(ell)) throw usage_error("field_make: " + std::to_string(ell) + " is not prime");
    if (f < 1) throw usage_error("field_make: extension degree must be >= 1");
    if (f > 64) throw resource_error("field_make: extension degree " + std::to_string(f) + " exceeds bound 64");
    checked_pow(ell, static_cast<u64>(f));
    auto& reg = detail::registry();
    {
        std::lock_guard<std::mutex> lock(reg.mu);
        auto it = reg.fields.find({ell, f});
        if (it != reg.fields.end()) return *it->second;
    }
    // Build outside the lock; construction of F_{ell^f} needs F_ell.
    auto built = detail::build_field(ell, f);
    std::lock_guard<std::mutex> lock(reg.mu);
    auto [it, inserted] = reg.fields.emplace(std::make_pair(ell, f), std::move(built));
    return *it->second;
}

namespace detail {

inline std::unique_ptr<FqField> build_field(u64 ell, int f) {
    if (f == 1) return std::make_unique<FqField>(ell, std::vector<std::uint32_t>{0, 1});
    const FqField& base = field_make(ell, 1);
    // Lower coefficients c_0..c_{f-1} run through base-ell counting, c_{f-1} most significant.
    const u128 count = checked_pow(ell, static_cast<u64>(f));
    for (u128 code = 0; code < count; ++code) {
        std::vector<std::uint32_t> m(f + 1, 0);
        u128 v = code;
        for (int i = 0; i < f; ++i) {
            m[i] = static_cast<std::uint32_t>(v % ell);
            v /= ell;
        }
        m[f] = 1;
        if (m[0] == 0) continue;
        std::vector<FqElem> c;
        for (auto x : m) c.push_back(base.from_int(x));
        if (is_irreducible(FqPoly(base, std::move(c)))) return std::make_unique<FqField>(ell, std::move(m));
    }
    throw verification_error("no irreducible polynomial found");  // unreachable
}

}  // namespace detail

/// The modulus of F as a polynomial over its prime field.
inline FqPoly modulus_poly(const FqField& F) {
    const FqField& base = field_make(F.ell(), 1);
    std::vector<FqElem> c;
    for (auto x : F.modulus()) c.push_back(base.from_int(x));
    return FqPoly(base, std::move(c));
}

/// k = v_p(q - 1); requires p | q - 1.
inline int roots_of_unity_depth(const FqField& F, u64 p) {
    if ((F.order() - 1) % p != 0)
        throw usage_error(F.name() + " does not contain the " + std::to_string(p) + "-th roots of unity (p does not divide q-1)");
    return padic_val(F.order() - 1, p);
}

/// Primitive p-th root of unity with the smallest encoding.
inline FqElem primitive_root_of_unity(const FqField& F, u64 p) {
    if ((F.order() - 1) % p != 0)
        throw usage_error(F.name() + " does not contain mu_" + std::to_string(p));
    const u128 e = (F.order() - 1) / p;
    FqElem z;
    FqRandom rng(kFactorSeed ^ p);
    for (u128 code = 2; code < F.order(); ++code) {
        // cheap pass over the smallest encodings first, then fall back to random draws
        FqElem a = code < 64 ? F.decode(code) : rng.elem(F);
        if (a.is_zero()) continue;
        FqElem c = a.pow(e);
        if (!c.is_one()) {
            z = c;
            break;
        }
    }
    FqElem best = z;
    FqElem cur = z;
    for (u64 i = 2; i < p; ++i) {
        cur = cur * z;
        if (cur < best) best = cur;
    }
    return best;
}

/// The class c in Z/p with x^((q-1)/p) = zeta^c; c == 0 iff x is a p-th power.
inline u64 power_residue_class(const FqElem& x, u64 p, const FqElem& zeta) {
    const FqField& F = x.field();
    if (x.is_zero()) throw usage_error("power_residue_class: zero element");
    if ((F.order() - 1) % p != 0) throw usage_error("power_residue_class: p does not divide q-1");
    if (zeta.pow(p) != F.one() || zeta.is_one()) throw usage_error("power_residue_class: zeta does not have order p");
    FqElem y = x.pow((F.order() - 1) / p);
    FqElem z = F.one();
    for (u64 c = 0; c < p; ++c) {
        if (z == y) return c;
        z = z * zeta;
    }
    throw verification_error("power_residue_class: x^((q-1)/p) is not a power of zeta");
}

inline u64 power_residue_class(const FqElem& x, u64 p) {
    return power_residue_class(x, p, primitive_root_of_unity(x.field(), p));
}

/// All p-th roots of x in F_q, sorted by encoding (empty when x is not a p-th power).
inline std::vector<FqElem> pth_roots_fq(const FqElem& x, u64 p) {
    const FqField& F = x.field();
    if (x.is_zero()) return {F.zero()};
    if ((F.order() - 1) % p != 0) {
        // x -> x^p is bijective; invert the exponent modulo q - 1
        const __int128 n = static_cast<__int128>(F.order() - 1);
        __int128 r0 = n, r1 = static_cast<__int128>(p % (F.order() - 1)), s0 = 0, s1 = 1;
        while (r1 != 0) {
            __int128 t = r0 / r1;
            std::tie(r0, r1) = std::make_pair(r1, r0 - t * r1);
            std::tie(s0, s1) = std::make_pair(s1, s0 - t * s1);
        }
        if (s0 < 0) s0 += n;
        return {x.pow(static_cast<u128>(s0))};
    }
    std::vector<FqElem> c(p + 1, F.zero());
    c[0] = -x;
    c[p] = F.one();
    return roots(FqPoly(F, std::move(c)));
}

/// Canonical p-th root: the smallest encoding among all roots.
inline FqElem pth_root_fq(const FqElem& x, u64 p) {
    auto r = pth_roots_fq(x, p);
    if (r.empty()) throw usage_error("pth_root_fq: " + x.str() + " is not a " + std::to_string(p) + "-th power in " + x.field().name());
    return r.front();
}

/// Smallest-encoding unit of class exactly 1 relative to the field's canonical zeta_p.
inline FqElem canonical_nonresidue(const FqField& F, u64 p) {
    FqElem zeta = primitive_root_of_unity(F, p);
    for (u128 code = 1; code < F.order(); ++code) {
        FqElem a = F.decode(code);
        if (power_residue_class(a, p, zeta) == 1) return a;
    }
    throw verification_error("no non-residue found");
}

/// Compatible root of unity of order p^h: starting from `start` (order p^j, j <= h), each
/// step takes the smallest-encoding p-th root. Requires p^h | q - 1.
inline FqElem root_of_unity_chain(const FqElem& start, u64 p, int h) {
    const FqField& F = start.field();
    if (roots_of_unity_depth(F, p) < h)
        throw usage_error(F.name() + " does not contain mu_{" + std::to_string(p) + "^" + std::to_string(h) + "}");
    int j = 0;
    for (FqElem t = start; !t.is_one(); t = t.pow(p)) ++j;
    if (j > h) throw usage_error("root_of_unity_chain: start has order exceeding p^h");
    FqElem z = start;
    for (; j < h; ++j) z = pth_root_fq(z, p);
    return z;
}

inline FqElem root_of_unity(const FqField& F, u64 p, int h) {
    return root_of_unity_chain(primitive_root_of_unity(F, p), p, h);
}

/// Field embedding F_small -> F_big determined by the image of the generator.
class Embedding {
public:
    Embedding(const FqField& from, const FqField& to, FqElem gen_image)
        : from_(&from), to_(&to), gen_(std::move(gen_image)) {}

    const FqField& from() const { return *from_; }
    const FqField& to() const { return *to_; }
    const FqElem& generator_image() const { return gen_; }

    FqElem operator()(const FqElem& x) const {
        if (x.field_ptr() != from_) throw usage_error("embedding applied to element of the wrong field");
        FqElem r = to_->zero();
        const auto& c = x.coeffs();
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) r = r * gen_ + to_->from_int(c[i]);
        return r;
    }

private:
    const FqField* from_;
    const FqField* to_;
    FqElem gen_;
};

/// Canonical embedding: the generator goes to the smallest-encoding root of its modulus.
inline Embedding make_embedding(const FqField& from, const FqField& to) {
    if (from.ell() != to.ell() || to.degree() % from.degree() != 0)
        throw usage_error("no embedding " + from.name() + " -> " + to.name());
    if (from.degree() == 1) return Embedding(from, to, to.zero());
    if (&from == &to) return Embedding(from, to, to.decode(from.ell()));
    std::vector<FqElem> c;
    for (auto x : from.modulus()) c.push_back(to.from_int(x));
    auto r = roots(FqPoly(to, std::move(c)));
    if (r.empty()) throw verification_error("modulus of " + from.name() + " has no root in " + to.name());
    return Embedding(from, to, r.front());
}

/// Degree over F_ell of the smallest subfield containing x.
inline int element_degree(const FqElem& x) {
    FqElem y = x.frobenius();
    int d = 1;
    while (y != x) {
        y = y.frobenius();
        ++d;
    }
    return d;
}

}  // namespace prigid
