#pragma once

/*
 * Laurent polynomials with rational coefficients, univariate (q) and
 * bivariate (q plus one more formal variable: the trace parameter z, or the
 * Hochschild variable a).  Exact division by x^k - 1 is provided for the
 * denominator bookkeeping of the Markov-trace normalization.
 */

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "rational.hpp"

namespace hhh {

class Laurent {
  public:
    Laurent() = default;
    static Laurent mono(int e, const Rational& c) {
        Laurent l;
        if (!is_zero(c)) l.terms_[e] = c;
        return l;
    }
    static Laurent constant(const Rational& c) { return mono(0, c); }
    static Laurent one() { return constant(rat(1)); }

    const std::map<int, Rational>& terms() const { return terms_; }
    bool is_zero_poly() const { return terms_.empty(); }

    void add_term(int e, const Rational& c) {
        if (is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }

    Laurent& operator+=(const Laurent& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
    Laurent operator*(const Rational& s) const {
        Laurent r;
        if (is_zero(s)) return r;
        for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
        return r;
    }
    Laurent operator-() const { return *this * rat(-1); }

    bool operator==(const Laurent& o) const { return terms_ == o.terms_; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    // q -> q^{-1}
    Laurent bar() const {
        Laurent r;
        for (const auto& [e, c] : terms_) r.terms_[-e] = c;
        return r;
    }

    std::string str(const std::string& var = "q") const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rational a = c;
            bool neg = sgn(a) < 0;
            if (first) {
                if (neg) os << "-";
            } else {
                os << (neg ? " - " : " + ");
            }
            if (neg) a = -a;
            if (e == 0) {
                os << rational_str(a);
            } else {
                if (a != 1) os << rational_str(a) << "*";
                os << var;
                if (e != 1) os << "^" << e;
            }
            first = false;
        }
        return os.str();
    }

  private:
    std::map<int, Rational> terms_;  // exponent -> nonzero coefficient
};

// exponent pair (first variable, second variable)
using Exp2 = std::pair<int, int>;

class Laurent2 {
  public:
    Laurent2() = default;
    static Laurent2 mono(int e1, int e2, const Rational& c) {
        Laurent2 l;
        if (!is_zero(c)) l.terms_[{e1, e2}] = c;
        return l;
    }
    static Laurent2 one() { return mono(0, 0, rat(1)); }
    static Laurent2 from_first(const Laurent& l) {
        Laurent2 r;
        for (const auto& [e, c] : l.terms()) r.terms_[{e, 0}] = c;
        return r;
    }

    const std::map<Exp2, Rational>& terms() const { return terms_; }
    bool is_zero_poly() const { return terms_.empty(); }

    void add_term(int e1, int e2, const Rational& c) {
        if (is_zero(c)) return;
        Exp2 key{e1, e2};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, c);
        } else {
            it->second += c;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }

    Laurent2& operator+=(const Laurent2& o) {
        for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
        return *this;
    }
    Laurent2& operator-=(const Laurent2& o) {
        for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, -c);
        return *this;
    }
    friend Laurent2 operator+(Laurent2 a, const Laurent2& b) { return a += b; }
    friend Laurent2 operator-(Laurent2 a, const Laurent2& b) { return a -= b; }
    friend Laurent2 operator*(const Laurent2& a, const Laurent2& b) {
        Laurent2 r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
        return r;
    }
    Laurent2& operator*=(const Laurent2& o) { return *this = *this * o; }
    Laurent2 operator*(const Rational& s) const {
        Laurent2 r;
        if (is_zero(s)) return r;
        for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
        return r;
    }
    Laurent2 operator-() const { return *this * rat(-1); }

    bool operator==(const Laurent2& o) const { return terms_ == o.terms_; }
    bool operator!=(const Laurent2& o) const { return !(*this == o); }

    std::string str(const std::string& v1 = "q", const std::string& v2 = "a") const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rational a = c;
            bool neg = sgn(a) < 0;
            if (first) {
                if (neg) os << "-";
            } else {
                os << (neg ? " - " : " + ");
            }
            if (neg) a = -a;
            std::string mono = mono_str(e, v1, v2);
            if (mono.empty()) {
                os << rational_str(a);
            } else {
                if (a != 1) os << rational_str(a) << "*";
                os << mono;
            }
            first = false;
        }
        return os.str();
    }

  private:
    static std::string mono_str(const Exp2& e, const std::string& v1, const std::string& v2) {
        std::ostringstream os;
        bool any = false;
        if (e.first != 0) {
            os << v1;
            if (e.first != 1) os << "^" << e.first;
            any = true;
        }
        if (e.second != 0) {
            if (any) os << "*";
            os << v2;
            if (e.second != 1) os << "^" << e.second;
        }
        return os.str();
    }

    std::map<Exp2, Rational> terms_;
};

// x^k - 1 in the given variable slot (0 = first, 1 = second)
inline Laurent2 cyclo_factor(int var, int k) {
    Laurent2 r;
    if (var == 0) {
        r.add_term(k, 0, rat(1));
    } else {
        r.add_term(0, k, rat(1));
    }
    r.add_term(0, 0, rat(-1));
    return r;
}

// exact division by x^k - 1 in the given variable; nullopt if not divisible
inline std::optional<Laurent2> divide_exact(const Laurent2& num, int var, int k) {
    // group terms by the exponent of the other variable; each group divides
    // independently since x^k - 1 only involves one variable
    std::map<int, std::map<int, Rational>> groups;  // other-exp -> (x-exp -> coeff)
    for (const auto& [e, c] : num.terms()) {
        int xe = (var == 0) ? e.first : e.second;
        int oe = (var == 0) ? e.second : e.first;
        groups[oe][xe] = c;
    }
    Laurent2 out;
    for (auto& [oe, g] : groups) {
        // synthetic division from the top; every quotient exponent of an
        // exact division lies at or above the lowest exponent of the input
        int min_orig = g.begin()->first;
        while (!g.empty()) {
            auto top = std::prev(g.end());
            int d = top->first;
            Rational t = top->second;
            int qd = d - k;
            if (qd < min_orig) return std::nullopt;
            g.erase(top);
            auto it = g.find(qd);
            if (it == g.end()) {
                g[qd] = t;
            } else {
                it->second += t;
                if (is_zero(it->second)) g.erase(it);
            }
            if (var == 0)
                out.add_term(qd, oe, t);
            else
                out.add_term(oe, qd, t);
        }
    }
    if (out * cyclo_factor(var, k) != num) return std::nullopt;
    return out;
}

// factor (sign, e1, e2) with a == sign * x1^e1 * x2^e2 * b, if any
inline std::optional<std::tuple<int, int, int>> monomial_ratio(const Laurent2& a,
                                                               const Laurent2& b) {
    if (a.is_zero_poly() && b.is_zero_poly()) return std::make_tuple(1, 0, 0);
    if (a.is_zero_poly() || b.is_zero_poly()) return std::nullopt;
    const auto& ta = *a.terms().begin();
    const auto& tb = *b.terms().begin();
    int e1 = ta.first.first - tb.first.first;
    int e2 = ta.first.second - tb.first.second;
    Rational c = ta.second / tb.second;
    int sign;
    if (c == 1)
        sign = 1;
    else if (c == -1)
        sign = -1;
    else
        return std::nullopt;
    Laurent2 scaled = (b * Laurent2::mono(e1, e2, rat(sign)));
    if (scaled != a) return std::nullopt;
    return std::make_tuple(sign, e1, e2);
}

}  // namespace hhh
