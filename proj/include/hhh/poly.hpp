#pragma once

/*
 * Graded multivariate polynomials over the rationals in the difference
 * variables y_1..y_v, with deg y_i = 2.  The symmetric group acts by the
 * transposition automorphisms s_i, and every polynomial splits uniquely as
 * p = sym + y_i*quot with both parts s_i-invariant (the splitting behind all
 * right-action matrices of the bimodule layer).
 */

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace hhh {

// Exponent vector of a monomial in y_1..y_v.
using Monomial = std::vector<int>;

inline int monomial_degree(const Monomial& m) {
    int s = 0;
    for (int e : m) s += e;
    return 2 * s;
}

class Poly {
  public:
    explicit Poly(int vars) : vars_(vars) {
        if (vars < 0) throw std::invalid_argument("Poly: negative variable count");
    }

    static Poly zero(int vars) { return Poly(vars); }

    static Poly constant(int vars, const Rational& c) {
        Poly p(vars);
        if (!is_zero(c)) p.terms_[Monomial(vars, 0)] = c;
        return p;
    }

    static Poly one(int vars) { return constant(vars, rat(1)); }

    // y_i, 1-based index
    static Poly variable(int vars, int i) {
        if (i < 1 || i > vars) throw std::out_of_range("Poly::variable: index out of range");
        Monomial m(vars, 0);
        m[i - 1] = 1;
        Poly p(vars);
        p.terms_[m] = rat(1);
        return p;
    }

    static Poly monomial(int vars, Monomial m, const Rational& c) {
        if (static_cast<int>(m.size()) != vars)
            throw std::invalid_argument("Poly::monomial: wrong exponent length");
        Poly p(vars);
        if (!is_zero(c)) p.terms_[std::move(m)] = c;
        return p;
    }

    int vars() const { return vars_; }
    bool is_zero_poly() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        check_vars(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_vars(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    Poly operator-() const {
        Poly r(vars_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    Poly operator*(const Rational& s) const {
        Poly r(vars_);
        if (is_zero(s)) return r;
        for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_vars(b);
        Poly r(a.vars_);
        Monomial m(a.vars_, 0);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                for (int i = 0; i < a.vars_; ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    bool operator==(const Poly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // graded degree: every monomial the same, or nullopt; zero reports 0
    std::optional<int> homogeneous_degree() const {
        if (terms_.empty()) return 0;
        int d = monomial_degree(terms_.begin()->first);
        for (const auto& [m, c] : terms_)
            if (monomial_degree(m) != d) return std::nullopt;
        return d;
    }

    bool is_homogeneous_of_degree(int d) const {
        for (const auto& [m, c] : terms_)
            if (monomial_degree(m) != d) return false;
        return true;
    }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && monomial_degree(terms_.begin()->first) == 0);
    }

    // exact division by y_i; throws if some monomial lacks y_i
    Poly divide_by_variable(int i) const {
        if (i < 1 || i > vars_) throw std::out_of_range("divide_by_variable: bad index");
        Poly r(vars_);
        for (const auto& [m, c] : terms_) {
            if (m[i - 1] < 1) throw std::logic_error("divide_by_variable: not divisible");
            Monomial q = m;
            q[i - 1] -= 1;
            r.terms_[std::move(q)] = c;
        }
        return r;
    }

    // canonical text form, e.g. "3/2*y1^2*y2 - y3"; terms in descending
    // lexicographic exponent order
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            Rational c = it->second;
            bool neg = sgn(c) < 0;
            if (first) {
                if (neg) os << "-";
            } else {
                os << (neg ? " - " : " + ");
            }
            if (neg) c = -c;
            std::string mono = monomial_str(it->first);
            if (mono.empty()) {
                os << rational_str(c);
            } else {
                if (c != 1) os << rational_str(c) << "*";
                os << mono;
            }
            first = false;
        }
        return os.str();
    }

  private:
    static std::string monomial_str(const Monomial& m) {
        std::ostringstream os;
        bool any = false;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (any) os << "*";
            os << "y" << (i + 1);
            if (m[i] > 1) os << "^" << m[i];
            any = true;
        }
        return os.str();
    }

    void check_vars(const Poly& o) const {
        if (vars_ != o.vars_) throw std::invalid_argument("Poly: variable-count mismatch");
    }

    int vars_;
    std::map<Monomial, Rational> terms_;  // no zero coefficients stored
};

inline Poly pow(const Poly& p, int n) {
    Poly r = Poly::one(p.vars());
    Poly base = p;
    while (n > 0) {
        if (n & 1) r *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return r;
}

// Ring automorphism induced by x_i <-> x_{i+1} in difference coordinates:
// y_i -> -y_i, y_{i-1} -> y_{i-1}+y_i, y_{i+1} -> y_{i+1}+y_i, rest fixed.
inline Poly transposition_action(int i, const Poly& p) {
    const int v = p.vars();
    if (i < 1 || i > v) throw std::out_of_range("transposition_action: index out of range");
    // images of the (at most three) variables that move
    std::map<int, Poly> image;
    image.emplace(i, -Poly::variable(v, i));
    if (i - 1 >= 1) image.emplace(i - 1, Poly::variable(v, i - 1) + Poly::variable(v, i));
    if (i + 1 <= v) image.emplace(i + 1, Poly::variable(v, i + 1) + Poly::variable(v, i));

    std::map<std::pair<int, int>, Poly> powcache;
    auto image_pow = [&](int j, int e) -> const Poly& {
        auto key = std::make_pair(j, e);
        auto it = powcache.find(key);
        if (it == powcache.end()) it = powcache.emplace(key, pow(image.at(j), e)).first;
        return it->second;
    };

    Poly result(v);
    for (const auto& [m, c] : p.terms()) {
        Monomial fixed(v, 0);
        for (int j = 1; j <= v; ++j)
            if (!image.count(j)) fixed[j - 1] = m[j - 1];
        Poly term = Poly::monomial(v, fixed, c);
        for (const auto& [j, img] : image)
            if (m[j - 1] > 0) term *= image_pow(j, m[j - 1]);
        result += term;
    }
    return result;
}

// p = sym + y_i*quot with sym and quot both s_i-invariant; the division by
// y_i of the antisymmetric part is always exact.
inline std::pair<Poly, Poly> demazure_split(int i, const Poly& p) {
    Poly sp = transposition_action(i, p);
    Poly sym = (p + sp) * rat(1, 2);
    Poly quot = ((p - sp) * rat(1, 2)).divide_by_variable(i);
    return {sym, quot};
}

// all exponent vectors in `vars` variables of graded degree `deg` (deg even)
inline std::vector<Monomial> monomials_of_degree(int vars, int deg) {
    std::vector<Monomial> out;
    if (deg < 0 || deg % 2 != 0) return out;
    int total = deg / 2;
    if (vars == 0) {
        if (total == 0) out.push_back(Monomial{});
        return out;
    }
    Monomial cur(vars, 0);
    // lexicographic enumeration of compositions of `total` into `vars` parts
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == vars - 1) {
            cur[pos] = rem;
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= rem; ++e) {
            cur[pos] = e;
            self(self, pos + 1, rem - e);
        }
    };
    rec(rec, 0, total);
    return out;
}

}  // namespace hhh
