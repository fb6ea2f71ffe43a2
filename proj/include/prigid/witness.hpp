#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "symbol.hpp"

namespace prigid {

/// Element of E = F_q(t)[x, y]/(x^p - t, y^p - (1 - t)): coefficient (i, j) multiplies x^i y^j.
class BicyclicElem {
public:
    BicyclicElem() = default;
    BicyclicElem(const FqField& F, u64 p) : F_(&F), p_(p), c_(p * p, RatFunc(F)) {}

    static BicyclicElem constant(const FqField& F, u64 p, const RatFunc& r) {
        BicyclicElem e(F, p);
        e.c_[0] = r;
        return e;
    }
    static BicyclicElem monomial(const FqField& F, u64 p, u64 i, u64 j, const RatFunc& r) {
        BicyclicElem e(F, p);
        e.at(i, j) = r;
        return e;
    }

    u64 p() const { return p_; }
    const FqField& field() const { return *F_; }
    RatFunc& at(u64 i, u64 j) { return c_[i * p_ + j]; }
    const RatFunc& at(u64 i, u64 j) const { return c_[i * p_ + j]; }

    bool is_zero() const {
        for (auto& r : c_)
            if (!r.is_zero()) return false;
        return true;
    }

    friend bool operator==(const BicyclicElem& a, const BicyclicElem& b) { return a.c_ == b.c_; }
    friend bool operator!=(const BicyclicElem& a, const BicyclicElem& b) { return !(a == b); }

    friend BicyclicElem operator+(const BicyclicElem& a, const BicyclicElem& b) {
        BicyclicElem r(*a.F_, a.p_);
        for (std::size_t k = 0; k < a.c_.size(); ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend BicyclicElem operator-(const BicyclicElem& a, const BicyclicElem& b) {
        BicyclicElem r(*a.F_, a.p_);
        for (std::size_t k = 0; k < a.c_.size(); ++k) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }
    friend BicyclicElem operator*(const BicyclicElem& a, const BicyclicElem& b) {
        const u64 p = a.p_;
        const FqField& F = *a.F_;
        const RatFunc t = RatFunc::t(F);
        const RatFunc one_minus_t = RatFunc(FqPoly::from_ints(F, {1, -1}));
        BicyclicElem r(F, p);
        for (u64 i = 0; i < p; ++i)
            for (u64 j = 0; j < p; ++j) {
                if (a.at(i, j).is_zero()) continue;
                for (u64 k = 0; k < p; ++k)
                    for (u64 l = 0; l < p; ++l) {
                        if (b.at(k, l).is_zero()) continue;
                        RatFunc c = a.at(i, j) * b.at(k, l);
                        u64 xi = i + k, yj = j + l;
                        if (xi >= p) {
                            xi -= p;
                            c = c * t;
                        }
                        if (yj >= p) {
                            yj -= p;
                            c = c * one_minus_t;
                        }
                        r.at(xi, yj) = r.at(xi, yj) + c;
                    }
            }
        return r;
    }

    /// x -> zeta^power * x (tau^power), y fixed.
    BicyclicElem tau(const FqElem& zeta, u64 power = 1) const {
        BicyclicElem r = *this;
        const FqElem z = zeta.pow(power);
        FqElem zi = F_->one();
        for (u64 i = 0; i < p_; ++i) {
            for (u64 j = 0; j < p_; ++j) r.at(i, j) = r.at(i, j).scaled(zi);
            zi = zi * z;
        }
        return r;
    }

    std::string str() const {
        std::string s;
        for (u64 i = 0; i < p_; ++i)
            for (u64 j = 0; j < p_; ++j) {
                if (at(i, j).is_zero()) continue;
                if (!s.empty()) s += " + ";
                s += at(i, j).str();
                if (i) s += "*x" + (i > 1 ? "^" + std::to_string(i) : std::string());
                if (j) s += "*y" + (j > 1 ? "^" + std::to_string(j) : std::string());
            }
        return s.empty() ? "0" : s;
    }

private:
    const FqField* F_ = nullptr;
    u64 p_ = 0;
    std::vector<RatFunc> c_;
};

/// Local expansion at the place P of E centred at (x, y) = (1, 0), with y as uniformizer:
/// t = 1 - y^p and x = (1 - y^p)^(1/p) with constant term 1.
class PlaceExpansion {
public:
    PlaceExpansion(const FqField& F, u64 p, long long prec) : F_(&F), p_(p), prec_(prec) {
        Laurent one_minus(F, 0, one_minus_yp());
        auto root = laurent_pth_root(one_minus, p, prec);
        if (!root) throw verification_error("1 - y^p has no p-th root in F_q[[y]]");
        x_ = *root;
        if (!x_.leading().is_one()) throw verification_error("local x does not reduce to 1 at P");
        t_ = one_minus;
    }

    const Laurent& x() const { return x_; }
    const Laurent& t() const { return t_; }

    Laurent map(const RatFunc& r) const {
        return eval_poly(r.num()) * eval_poly(r.den()).inverse(prec_);
    }
    Laurent map(const BicyclicElem& e) const {
        Laurent acc = Laurent::zero_to(*F_, prec_);
        Laurent xi = Laurent::constant(F_->one());
        for (u64 i = 0; i < p_; ++i) {
            for (u64 j = 0; j < p_; ++j) {
                if (e.at(i, j).is_zero()) continue;
                acc = acc + map(e.at(i, j)) * xi * Laurent::monomial(F_->one(), static_cast<long long>(j));
            }
            xi = xi * x_;
        }
        return acc;
    }

private:
    std::vector<FqElem> one_minus_yp() const {
        std::vector<FqElem> c(p_ + 1, F_->zero());
        c[0] = F_->one();
        c[p_] = -F_->one();
        return c;
    }
    Laurent eval_poly(const FqPoly& f) const {
        Laurent r = Laurent::zero_to(*F_, prec_);
        for (int i = f.degree(); i >= 0; --i) r = r * t_ + Laurent::constant(f.coeff(i));
        return r.truncated(prec_);
    }

    const FqField* F_;
    u64 p_;
    long long prec_;
    Laurent x_;
    Laurent t_;
};

struct WitnessBundle {
    u64 p;
    FqElem zeta;
    BicyclicElem delta;  // 1 - x
    BicyclicElem c;      // y
    BicyclicElem beta;   // delta / c
    BicyclicElem gamma;
    std::string theta;   // resolvent seed used for gamma
    int theta_index;
    bool cocycle_closes;   // c_p == c_0
    bool tau_identity;     // tau(gamma) == beta * gamma
    bool norm_identity;    // prod_i tau^i(delta) == 1 - t
    long long v_delta;     // v_P(1 - x)
    long long v_c;         // v_P(y)
    long long v_beta;      // v_P(beta)
    long long v_gamma;     // v_P(gamma)
    long long ramification;  // e_P = v_P(1 - t)
    bool certificate;      // v_beta not divisible by p, so beta is not in F * E^p
};

/// Fixed search list for the resolvent seed theta: 1, x, y, x+y, xy, x^2, ...
inline std::vector<std::pair<std::string, BicyclicElem>> theta_candidates(const FqField& F, u64 p) {
    const RatFunc one = RatFunc::constant(F.one());
    auto mono = [&](u64 i, u64 j) { return BicyclicElem::monomial(F, p, i, j, one); };
    std::vector<std::pair<std::string, BicyclicElem>> out{
        {"1", mono(0, 0)}, {"x", mono(1, 0)}, {"y", mono(0, 1)}, {"x+y", mono(1, 0) + mono(0, 1)}, {"x*y", mono(1, 1)}};
    for (u64 i = 2; i < p; ++i) out.emplace_back("x^" + std::to_string(i), mono(i, 0));
    return out;
}

inline WitnessBundle hilbert90_witness(const FieldDescriptor& D, long long local_prec = 32) {
    detail::require_kind(D, FieldDescriptor::Kind::RatFunc, "hilbert90_witness");
    const FqField& F = *D.F;
    const u64 p = D.p;
    const FqElem zeta = D.zeta();
    const RatFunc one = RatFunc::constant(F.one());
    const RatFunc inv_1mt = RatFunc(FqPoly::from_ints(F, {1, -1})).inv();

    BicyclicElem x = BicyclicElem::monomial(F, p, 1, 0, one);
    BicyclicElem y = BicyclicElem::monomial(F, p, 0, 1, one);
    BicyclicElem unit = BicyclicElem::constant(F, p, one);
    BicyclicElem delta = unit - x;
    // y^{-1} = y^{p-1} / (1 - t);  (1 - x)^{-1} = (1 + x + ... + x^{p-1}) / (1 - t)
    BicyclicElem y_inv = BicyclicElem::monomial(F, p, 0, p - 1, inv_1mt);
    BicyclicElem geo(F, p);
    for (u64 i = 0; i < p; ++i) geo.at(i, 0) = inv_1mt;
    BicyclicElem beta = delta * y_inv;
    BicyclicElem beta_inv = y * geo;
    if (beta * beta_inv != unit) throw verification_error("beta inverse check failed");

    WitnessBundle w{p, zeta, delta, y, beta, BicyclicElem(F, p), "", -1, false, false, false, 0, 0, 0, 0, 0, false};

    // c_0 = 1, c_{i+1} = beta^{-1} tau(c_i)
    std::vector<BicyclicElem> cs{unit};
    for (u64 i = 0; i < p; ++i) cs.push_back(beta_inv * cs.back().tau(zeta));
    w.cocycle_closes = cs[p] == cs[0];

    auto cands = theta_candidates(F, p);
    for (std::size_t idx = 0; idx < cands.size(); ++idx) {
        BicyclicElem g(F, p);
        for (u64 i = 0; i < p; ++i) g = g + cs[i] * cands[idx].second.tau(zeta, i);
        if (!g.is_zero()) {
            w.gamma = g;
            w.theta = cands[idx].first;
            w.theta_index = static_cast<int>(idx);
            break;
        }
    }
    if (w.theta_index < 0) throw verification_error("every resolvent seed gives gamma = 0");
    w.tau_identity = w.gamma.tau(zeta) == beta * w.gamma;

    BicyclicElem norm = unit;
    for (u64 i = 0; i < p; ++i) norm = norm * delta.tau(zeta, i);
    w.norm_identity = norm == BicyclicElem::constant(F, p, RatFunc(FqPoly::from_ints(F, {1, -1})));

    PlaceExpansion P(F, p, local_prec);
    w.v_delta = P.map(delta).valuation();
    w.v_c = P.map(y).valuation();
    w.v_beta = P.map(beta).valuation();
    w.v_gamma = P.map(w.gamma).valuation();
    w.ramification = P.map(RatFunc(FqPoly::from_ints(F, {1, -1}))).valuation();
    w.certificate = w.ramification == static_cast<long long>(p) && mod_norm(w.v_beta, p) != 0;
    return w;
}

/// Galois test for E(gamma^{1/p}) with sigma = tau: tau(gamma)/gamma = beta, and beta is not in F * E^p
/// whenever its valuation at P is prime to p (elements of F have v_P in pZ since e_P = p).
inline GaloisVerdict galois_criterion(const WitnessBundle& w) {
    GaloisVerdict v{"undecided", std::nullopt, {}, ""};
    if (!w.tau_identity) throw verification_error("tau(gamma) != beta * gamma");
    if (w.certificate) {
        v.status = "non-Galois certified";
        v.failing = 0;
        v.certificate = "v_P(tau(gamma)/gamma) = v_P(beta) = " + std::to_string(w.v_beta) + " is not divisible by " +
                        std::to_string(w.p) + " at P = (x, y) = (1, 0), e_P = " + std::to_string(w.ramification);
    }
    return v;
}

}  // namespace prigid
