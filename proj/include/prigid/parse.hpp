#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "puiseux.hpp"

namespace prigid {

// ---------------------------------------------------------------------------
// Field descriptors: gf(7), gf(7^3), laurent(7,64), laurent(7^3), ratfunc(7)

namespace detail {

inline long long parse_int(const std::string& s, const std::string& ctx) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw usage_error("");
        return v;
    } catch (...) {
        throw usage_error("bad integer '" + s + "' in " + ctx);
    }
}

inline std::string strip(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

inline const FqField& parse_base_field(const std::string& s, const std::string& ctx) {
    auto caret = s.find('^');
    if (caret == std::string::npos) return field_make(static_cast<u64>(parse_int(s, ctx)), 1);
    return field_make(static_cast<u64>(parse_int(s.substr(0, caret), ctx)), static_cast<int>(parse_int(s.substr(caret + 1), ctx)));
}

}  // namespace detail

inline FieldDescriptor parse_field(const std::string& text, u64 p, std::optional<long long> prec = std::nullopt) {
    const std::string s = detail::strip(text);
    auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')') throw usage_error("malformed field descriptor: " + text);
    const std::string head = s.substr(0, open);
    std::string inner = s.substr(open + 1, s.size() - open - 2);
    std::vector<std::string> args;
    std::string cur;
    for (char c : inner) {
        if (c == ',') {
            args.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    args.push_back(cur);
    if (head == "gf") {
        if (args.size() != 1) throw usage_error("gf(q) takes one argument");
        return FieldDescriptor::fin(detail::parse_base_field(args[0], text), p);
    }
    if (head == "ratfunc") {
        if (args.size() != 1) throw usage_error("ratfunc(q) takes one argument");
        return FieldDescriptor::ratfunc(detail::parse_base_field(args[0], text), p);
    }
    if (head == "laurent") {
        if (args.empty() || args.size() > 2) throw usage_error("laurent(q[,N]) takes one or two arguments");
        long long N = args.size() == 2 ? detail::parse_int(args[1], text) : 64;
        if (prec) N = *prec;
        return FieldDescriptor::laurent(detail::parse_base_field(args[0], text), p, N);
    }
    throw usage_error("unknown field kind '" + head + "' (expected gf, laurent or ratfunc)");
}

// ---------------------------------------------------------------------------
// Expressions over x, t with integers, [c0,c1,...] lists, + - * / ^ and parentheses.
// In series contexts a list is c0 + c1 t + ...; inside a list (or in gf context) a nested
// list is an element of F_q given by its coefficients over F_ell.

struct Expr {
    enum class Op { Num, Var, List, Add, Sub, Mul, Div, Pow, Neg } op;
    long long num = 0;
    char var = 0;
    std::vector<std::shared_ptr<Expr>> kids;
};
using ExprPtr = std::shared_ptr<Expr>;

class ExprParser {
public:
    explicit ExprParser(std::string s) : s_(detail::strip(s)), src_(std::move(s)) {}

    ExprPtr parse() {
        if (s_.empty()) throw usage_error("empty expression");
        ExprPtr e = sum();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw usage_error("parse error in '" + src_ + "' at position " + std::to_string(pos_) + ": " + msg);
    }
    bool eat(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    static ExprPtr node(Expr::Op op, std::vector<ExprPtr> kids) {
        auto e = std::make_shared<Expr>();
        e->op = op;
        e->kids = std::move(kids);
        return e;
    }
    ExprPtr sum() {
        ExprPtr e = product();
        while (pos_ < s_.size()) {
            if (eat('+'))
                e = node(Expr::Op::Add, {e, product()});
            else if (eat('-'))
                e = node(Expr::Op::Sub, {e, product()});
            else
                break;
        }
        return e;
    }
    ExprPtr product() {
        ExprPtr e = unary();
        while (pos_ < s_.size()) {
            if (eat('*'))
                e = node(Expr::Op::Mul, {e, unary()});
            else if (eat('/'))
                e = node(Expr::Op::Div, {e, unary()});
            else if (s_[pos_] == '(' || s_[pos_] == '[' || std::isalpha(static_cast<unsigned char>(s_[pos_])))
                e = node(Expr::Op::Mul, {e, unary()});  // implicit product, e.g. 3t
            else
                break;
        }
        return e;
    }
    ExprPtr unary() {
        if (eat('-')) return node(Expr::Op::Neg, {unary()});
        if (eat('+')) return unary();
        return power();
    }
    ExprPtr power() {
        ExprPtr base = atom();
        if (eat('^')) {
            bool neg = eat('-');
            ExprPtr ex;
            if (eat('(')) {
                bool neg2 = eat('-');
                ex = number();
                if (neg2) ex->num = -ex->num;
                if (!eat(')')) fail("expected ')'");
            } else {
                ex = number();
            }
            if (neg) ex->num = -ex->num;
            return node(Expr::Op::Pow, {base, ex});
        }
        return base;
    }
    ExprPtr number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        auto e = std::make_shared<Expr>();
        e->op = Expr::Op::Num;
        e->num = detail::parse_int(s_.substr(start, pos_ - start), src_);
        return e;
    }
    ExprPtr atom() {
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (eat('(')) {
            ExprPtr e = sum();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (eat('[')) {
            auto e = std::make_shared<Expr>();
            e->op = Expr::Op::List;
            if (!eat(']')) {
                do e->kids.push_back(sum());
                while (eat(','));
                if (!eat(']')) fail("expected ']'");
            }
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (c == 'x' || c == 'X' || c == 't' || c == 'T') {
            ++pos_;
            auto e = std::make_shared<Expr>();
            e->op = Expr::Op::Var;
            e->var = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            return e;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string s_;
    std::string src_;
    std::size_t pos_ = 0;
};

namespace detail {

/// F_q element from a constant expression: integers, lists of F_ell coefficients, + - * / ^.
inline FqElem eval_fq(const Expr& e, const FqField& F) {
    switch (e.op) {
        case Expr::Op::Num: return F.from_int(e.num);
        case Expr::Op::List: {
            std::vector<long long> c;
            for (auto& k : e.kids) {
                if (k->op == Expr::Op::Num)
                    c.push_back(k->num);
                else if (k->op == Expr::Op::Neg && k->kids[0]->op == Expr::Op::Num)
                    c.push_back(-k->kids[0]->num);
                else
                    throw usage_error("field element lists hold integers only");
            }
            if (static_cast<int>(c.size()) > F.degree()) throw usage_error("too many coefficients for " + F.name());
            return F.from_coeffs(c);
        }
        case Expr::Op::Var: throw usage_error(std::string("variable '") + e.var + "' in a constant");
        case Expr::Op::Add: return eval_fq(*e.kids[0], F) + eval_fq(*e.kids[1], F);
        case Expr::Op::Sub: return eval_fq(*e.kids[0], F) - eval_fq(*e.kids[1], F);
        case Expr::Op::Mul: return eval_fq(*e.kids[0], F) * eval_fq(*e.kids[1], F);
        case Expr::Op::Div: {
            FqElem d = eval_fq(*e.kids[1], F);
            if (d.is_zero()) throw usage_error("division by zero");
            return eval_fq(*e.kids[0], F) / d;
        }
        case Expr::Op::Pow: {
            FqElem b = eval_fq(*e.kids[0], F);
            if (b.is_zero() && e.kids[1]->num < 0) throw usage_error("division by zero");
            return b.powi(e.kids[1]->num);
        }
        case Expr::Op::Neg: return -eval_fq(*e.kids[0], F);
    }
    throw usage_error("bad expression");
}

/// List entries inside a series list: integer or nested F_q list.
inline FqElem eval_list_entry(const Expr& e, const FqField& F) { return eval_fq(e, F); }

inline Laurent eval_laurent(const Expr& e, const FqField& F, long long N) {
    switch (e.op) {
        case Expr::Op::Num: return Laurent::constant(F.from_int(e.num));
        case Expr::Op::List: {
            std::vector<FqElem> c;
            for (auto& k : e.kids) c.push_back(eval_list_entry(*k, F));
            return Laurent(F, 0, c);
        }
        case Expr::Op::Var:
            if (e.var != 't') throw usage_error("only t may appear in a Laurent series");
            return Laurent::monomial(F.one(), 1);
        case Expr::Op::Add: return eval_laurent(*e.kids[0], F, N) + eval_laurent(*e.kids[1], F, N);
        case Expr::Op::Sub: return eval_laurent(*e.kids[0], F, N) - eval_laurent(*e.kids[1], F, N);
        case Expr::Op::Mul: return eval_laurent(*e.kids[0], F, N) * eval_laurent(*e.kids[1], F, N);
        case Expr::Op::Div: {
            Laurent d = eval_laurent(*e.kids[1], F, N);
            if (d.is_zero()) throw usage_error("division by zero");
            return eval_laurent(*e.kids[0], F, N) * d.inverse(N);
        }
        case Expr::Op::Pow: {
            Laurent b = eval_laurent(*e.kids[0], F, N);
            if (b.is_zero() && e.kids[1]->num < 0) throw usage_error("division by zero");
            return b.pow(e.kids[1]->num, N);
        }
        case Expr::Op::Neg: return -eval_laurent(*e.kids[0], F, N);
    }
    throw usage_error("bad expression");
}

inline RatFunc eval_ratfunc(const Expr& e, const FqField& F) {
    switch (e.op) {
        case Expr::Op::Num: return RatFunc::constant(F.from_int(e.num));
        case Expr::Op::List: {
            std::vector<FqElem> c;
            for (auto& k : e.kids) c.push_back(eval_list_entry(*k, F));
            return RatFunc(FqPoly(F, c));
        }
        case Expr::Op::Var:
            if (e.var != 't') throw usage_error("only t may appear in a rational function");
            return RatFunc::t(F);
        case Expr::Op::Add: return eval_ratfunc(*e.kids[0], F) + eval_ratfunc(*e.kids[1], F);
        case Expr::Op::Sub: return eval_ratfunc(*e.kids[0], F) - eval_ratfunc(*e.kids[1], F);
        case Expr::Op::Mul: return eval_ratfunc(*e.kids[0], F) * eval_ratfunc(*e.kids[1], F);
        case Expr::Op::Div: return eval_ratfunc(*e.kids[0], F) / eval_ratfunc(*e.kids[1], F);
        case Expr::Op::Pow: return eval_ratfunc(*e.kids[0], F).pow(e.kids[1]->num);
        case Expr::Op::Neg: return -eval_ratfunc(*e.kids[0], F);
    }
    throw usage_error("bad expression");
}

inline LaurentPoly xpoly_trim(LaurentPoly f) {
    while (f.size() > 1 && f.back().is_exact_zero()) f.pop_back();
    return f;
}

inline LaurentPoly eval_xpoly(const Expr& e, const FqField& F, long long N) {
    auto add = [&](LaurentPoly a, const LaurentPoly& b, bool neg) {
        if (a.size() < b.size()) a.resize(b.size(), Laurent(F));
        for (std::size_t i = 0; i < b.size(); ++i) a[i] = neg ? a[i] - b[i] : a[i] + b[i];
        return xpoly_trim(a);
    };
    switch (e.op) {
        case Expr::Op::Var:
            if (e.var == 'x') return {Laurent(F), Laurent::constant(F.one())};
            return {Laurent::monomial(F.one(), 1)};
        case Expr::Op::Add: return add(eval_xpoly(*e.kids[0], F, N), eval_xpoly(*e.kids[1], F, N), false);
        case Expr::Op::Sub: return add(eval_xpoly(*e.kids[0], F, N), eval_xpoly(*e.kids[1], F, N), true);
        case Expr::Op::Neg: return add({Laurent(F)}, eval_xpoly(*e.kids[0], F, N), true);
        case Expr::Op::Mul: return xpoly_trim(poly_mul(eval_xpoly(*e.kids[0], F, N), eval_xpoly(*e.kids[1], F, N)));
        case Expr::Op::Pow: {
            long long k = e.kids[1]->num;
            LaurentPoly b = eval_xpoly(*e.kids[0], F, N);
            if (k < 0) {
                if (b.size() != 1) throw usage_error("negative power of a polynomial in x");
                return {b[0].pow(k, N)};
            }
            LaurentPoly r{Laurent::constant(F.one())};
            for (long long i = 0; i < k; ++i) r = poly_mul(r, b);
            return xpoly_trim(r);
        }
        case Expr::Op::Div: {
            LaurentPoly d = eval_xpoly(*e.kids[1], F, N);
            if (d.size() != 1) throw usage_error("division by a polynomial in x");
            Laurent inv = d[0].inverse(N);
            LaurentPoly a = eval_xpoly(*e.kids[0], F, N);
            for (auto& c : a) c = c * inv;
            return a;
        }
        default: return {eval_laurent(e, F, N)};
    }
}

}  // namespace detail

inline FqElem parse_fq(const std::string& s, const FqField& F) { return detail::eval_fq(*ExprParser(s).parse(), F); }

/// Laurent element: `t^v * [c0,c1,...]` or any expression in t.
inline Laurent parse_laurent(const std::string& s, const FqField& F, long long N = 64) {
    return detail::eval_laurent(*ExprParser(s).parse(), F, N);
}

inline RatFunc parse_ratfunc(const std::string& s, const FqField& F) {
    return detail::eval_ratfunc(*ExprParser(s).parse(), F);
}

/// Polynomial in x with coefficients in F_q((t)), e.g. `x^3-(1+t)`.
inline LaurentPoly parse_xpoly(const std::string& s, const FqField& F, long long N = 64) {
    return detail::eval_xpoly(*ExprParser(s).parse(), F, N);
}

inline FieldElem parse_element(const FieldDescriptor& D, const std::string& s) {
    switch (D.kind) {
        case FieldDescriptor::Kind::Fin: return parse_fq(s, *D.F);
        case FieldDescriptor::Kind::Laurent: return parse_laurent(s, *D.F, D.precision);
        case FieldDescriptor::Kind::RatFunc: return parse_ratfunc(s, *D.F);
    }
    throw usage_error("bad field kind");
}

inline std::string element_str(const FieldElem& e) {
    return std::visit([](const auto& x) { return x.str(); }, e);
}

/// Re-parseable literals: F_q elements as integers or coefficient lists, Laurent series as
/// `t^v*[c0,c1,...]`, rational functions as `[num coeffs]/[den coeffs]`.
inline std::string fq_literal(const FqElem& x) {
    if (x.field().degree() == 1) return std::to_string(static_cast<u64>(x.encode()));
    return x.str();
}

inline std::string coeff_list_literal(const std::vector<FqElem>& c) {
    std::string out = "[";
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + fq_literal(c[i]);
    return out + "]";
}

inline std::string laurent_literal(const Laurent& a) {
    if (!a.is_exact()) throw usage_error("only exact series have literals");
    if (a.is_zero()) return "0";
    std::vector<FqElem> c;
    for (long long e = a.valuation(); e < a.stored_end(); ++e) c.push_back(a.coeff(e));
    std::string v = std::to_string(a.valuation());
    return "t^" + (a.valuation() < 0 ? "(" + v + ")" : v) + "*" + coeff_list_literal(c);
}

inline std::string ratfunc_literal(const RatFunc& f) {
    auto poly = [](const FqPoly& p) {
        std::vector<FqElem> c;
        for (int i = 0; i <= p.degree(); ++i) c.push_back(p.coeff(i));
        if (c.empty()) c.push_back(p.field().zero());
        return coeff_list_literal(c);
    };
    return poly(f.num()) + "/" + poly(f.den());
}

inline std::string element_literal(const FieldElem& e) {
    if (auto x = std::get_if<FqElem>(&e)) return fq_literal(*x);
    if (auto x = std::get_if<Laurent>(&e)) return laurent_literal(*x);
    return ratfunc_literal(std::get<RatFunc>(e));
}

}  // namespace prigid
