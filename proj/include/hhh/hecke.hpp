#pragma once

/*
 * The Iwahori-Hecke algebra H_m in the T-basis, with the quadratic relation
 * (T_i - q^2)(T_i + 1) = 0.  Left multiplication by a generator follows the
 * length rule; general products go letter by letter along reduced words.
 * The bar involution, the explicit Kazhdan-Lusztig basis for m <= 3, and
 * the Markov trace live here too.
 *
 * The trace is normalized so that tr(T_e) = 1 at every strand count, with
 * tr(x T_{m-1} y) = z tr(x y) for x, y in the subalgebra on m-1 strands.
 * The closed-braid invariant rescales by writhe and strand count and
 * converts the trace variable through the recorded substitution
 *   z = a^2 (q^2 - 1) / (a^2 - 1),
 * which makes the result a genuine two-variable link invariant obeying
 *   a P(+) - a^{-1} P(-) = (q - q^{-1}) P(0)   with P(unknot) = 1.
 */

#include <algorithm>
#include <map>
#include <vector>

#include "braid.hpp"
#include "laurent.hpp"

namespace hhh {

class Perm {
  public:
    explicit Perm(int m) : img_(m) {
        for (int i = 0; i < m; ++i) img_[i] = i;
    }
    static Perm from_images(std::vector<int> img) {
        Perm p(static_cast<int>(img.size()));
        p.img_ = std::move(img);
        return p;
    }

    int size() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[i]; }
    const std::vector<int>& images() const { return img_; }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    int length() const {  // inversion count
        int n = 0;
        for (int i = 0; i < size(); ++i)
            for (int j = i + 1; j < size(); ++j)
                if (img_[i] > img_[j]) ++n;
        return n;
    }

    // s_i o w, generator index 1-based: exchange the values i-1 and i
    Perm left_mult_s(int i) const {
        Perm p = *this;
        for (int& v : p.img_) {
            if (v == i - 1)
                v = i;
            else if (v == i)
                v = i - 1;
        }
        return p;
    }

    // w o s_i: exchange the entries at positions i-1 and i
    Perm right_mult_s(int i) const {
        Perm p = *this;
        std::swap(p.img_[i - 1], p.img_[i]);
        return p;
    }

    // l(s_i w) > l(w) iff the value i-1 appears before the value i
    bool left_mult_lengthens(int i) const {
        for (int v : img_) {
            if (v == i - 1) return true;
            if (v == i) return false;
        }
        return false;
    }

    // one reduced word, built from right descents
    std::vector<int> reduced_word() const {
        std::vector<int> word;
        Perm u = *this;
        for (;;) {
            int descent = 0;
            for (int i = 1; i < u.size(); ++i)
                if (u.img_[i - 1] > u.img_[i]) {
                    descent = i;
                    break;
                }
            if (descent == 0) break;
            u = u.right_mult_s(descent);
            word.push_back(descent);
        }
        std::reverse(word.begin(), word.end());
        return word;
    }

    Perm compose(const Perm& o) const {  // (*this) o o
        Perm p(size());
        for (int i = 0; i < size(); ++i) p.img_[i] = img_[o.img_[i]];
        return p;
    }

    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator<(const Perm& o) const { return img_ < o.img_; }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < size(); ++i) {
            if (i) s += " ";
            s += std::to_string(img_[i] + 1);
        }
        return s + "]";
    }

  private:
    std::vector<int> img_;
};

struct HeckeElement {
    int strands = 1;
    std::map<Perm, Laurent> terms;

    void add_term(const Perm& w, const Laurent& c) {
        if (c.is_zero_poly()) return;
        auto it = terms.find(w);
        if (it == terms.end()) {
            terms.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero_poly()) terms.erase(it);
        }
    }

    HeckeElement& operator+=(const HeckeElement& o) {
        for (const auto& [w, c] : o.terms) add_term(w, c);
        return *this;
    }
    HeckeElement& operator-=(const HeckeElement& o) {
        for (const auto& [w, c] : o.terms) add_term(w, -c);
        return *this;
    }
    friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
    friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
    HeckeElement operator*(const Laurent& s) const {
        HeckeElement r;
        r.strands = strands;
        for (const auto& [w, c] : terms) r.add_term(w, c * s);
        return r;
    }

    bool operator==(const HeckeElement& o) const {
        return strands == o.strands && terms == o.terms;
    }
    bool operator!=(const HeckeElement& o) const { return !(*this == o); }

    std::string str() const {
        if (terms.empty()) return "0";
        std::string s;
        for (const auto& [w, c] : terms) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")*T" + w.str();
        }
        return s;
    }
};

inline HeckeElement hecke_identity(int m) {
    HeckeElement e;
    e.strands = m;
    e.add_term(Perm(m), Laurent::one());
    return e;
}

inline HeckeElement hecke_T(int m, int i) {
    if (i < 1 || i > m - 1) throw std::out_of_range("hecke_T: index out of range");
    HeckeElement e;
    e.strands = m;
    e.add_term(Perm(m).left_mult_s(i), Laurent::one());
    return e;
}

// T_i^{-1} = q^{-2} T_i + (q^{-2} - 1)
inline HeckeElement hecke_T_inv(int m, int i) {
    HeckeElement e = hecke_T(m, i) * Laurent::mono(-2, rat(1));
    e.add_term(Perm(m), Laurent::mono(-2, rat(1)) - Laurent::one());
    return e;
}

// T_i * x by the length rule
inline HeckeElement left_mult_gen(int i, const HeckeElement& x) {
    HeckeElement out;
    out.strands = x.strands;
    Laurent q2 = Laurent::mono(2, rat(1));
    Laurent q2m1 = q2 - Laurent::one();
    for (const auto& [w, c] : x.terms) {
        Perm sw = w.left_mult_s(i);
        if (w.left_mult_lengthens(i)) {
            out.add_term(sw, c);
        } else {
            out.add_term(sw, c * q2);
            out.add_term(w, c * q2m1);
        }
    }
    return out;
}

inline HeckeElement t_multiply(const HeckeElement& x, const HeckeElement& y) {
    if (x.strands != y.strands) throw std::invalid_argument("t_multiply: strand mismatch");
    HeckeElement out;
    out.strands = x.strands;
    for (const auto& [w, c] : x.terms) {
        auto word = w.reduced_word();
        HeckeElement acc = y;
        for (auto it = word.rbegin(); it != word.rend(); ++it) acc = left_mult_gen(*it, acc);
        out += acc * c;
    }
    return out;
}

// the bar involution: q -> q^{-1}, T_w -> (T_{w^{-1}})^{-1}
inline HeckeElement iota(const HeckeElement& x) {
    HeckeElement out;
    out.strands = x.strands;
    for (const auto& [w, c] : x.terms) {
        HeckeElement img = hecke_identity(x.strands);
        for (int i : w.reduced_word()) img = t_multiply(img, hecke_T_inv(x.strands, i));
        out += img * c.bar();
    }
    return out;
}

// C'_i = q^{-1}(1 + T_i)
inline HeckeElement kl_generator(int m, int i) {
    HeckeElement e = hecke_identity(m) + hecke_T(m, i);
    return e * Laurent::mono(-1, rat(1));
}

// the full Kazhdan-Lusztig basis from the closed formulas, m <= 3
inline std::map<Perm, HeckeElement> kl_elements(int m) {
    if (m < 1 || m > 3) throw std::invalid_argument("kl_elements: only m <= 3 supported");
    std::map<Perm, HeckeElement> out;
    out.emplace(Perm(m), hecke_identity(m));
    if (m >= 2) out.emplace(Perm(m).left_mult_s(1), kl_generator(m, 1));
    if (m == 3) {
        HeckeElement C1 = kl_generator(3, 1), C2 = kl_generator(3, 2);
        Perm s1 = Perm(3).left_mult_s(1), s2 = Perm(3).left_mult_s(2);
        out.emplace(s2, C2);
        out.emplace(s1.compose(s2), t_multiply(C1, C2));
        out.emplace(s2.compose(s1), t_multiply(C2, C1));
        out.emplace(s1.compose(s2).compose(s1), t_multiply(t_multiply(C1, C2), C1) - C1);
    }
    return out;
}

// Bruhat order by the subword property, on one fixed reduced word of w
inline bool bruhat_leq(const Perm& y, const Perm& w) {
    auto word = w.reduced_word();
    int n = static_cast<int>(word.size());
    int ly = y.length();
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) != ly) continue;
        Perm p(y.size());
        for (int k = 0; k < n; ++k)
            if (mask & (1 << k)) p = p.compose(Perm(y.size()).left_mult_s(word[k]));
        if (p == y) return true;
    }
    return false;
}

// Markov trace with tr(T_e) = 1, variables (q, z); the recursion peels the
// top strand through the coset decomposition T_w = T_u T_{m-1} ... T_k
inline Laurent2 markov_trace(const HeckeElement& x) {
    const int m = x.strands;
    if (m == 1) {
        Laurent2 out;
        for (const auto& [w, c] : x.terms) out += Laurent2::from_first(c);
        return out;
    }
    Laurent2 out;
    HeckeElement fixed;  // the part living on the first m-1 strands
    fixed.strands = m - 1;
    for (const auto& [w, c] : x.terms) {
        int k = -1;  // position of the top value, 0-based
        for (int i = 0; i < m; ++i)
            if (w(i) == m - 1) k = i;
        std::vector<int> img;
        for (int i = 0; i < m; ++i)
            if (i != k) img.push_back(w(i));
        Perm u = Perm::from_images(std::move(img));
        if (k == m - 1) {
            fixed.add_term(u, c);
        } else {
            // T_w = T_u (T_{m-1} T_{m-2} ... T_{k+1}); the trace removes the
            // T_{m-1} factor and leaves T_u T_{m-2} ... T_{k+1} downstairs
            Perm cp(m - 1);
            for (int g = m - 2; g >= k + 1; --g) cp = cp.right_mult_s(g);
            HeckeElement rest;
            rest.strands = m - 1;
            rest.add_term(u, c);
            HeckeElement tail;
            tail.strands = m - 1;
            tail.add_term(cp, Laurent::one());
            Laurent2 sub = markov_trace(t_multiply(rest, tail));
            out += sub * Laurent2::mono(0, 1, rat(1));  // one factor of z
        }
    }
    if (!fixed.terms.empty()) out += markov_trace(fixed);
    return out;
}

// a two-variable value with denominator powers of (a^2-1) and (q^2-1);
// knots always reduce to denominator zero
struct HomflyValue {
    Laurent2 num;  // variables (q, a)
    int den_a = 0;
    int den_q = 0;

    void canonicalize() {
        while (den_a > 0) {
            auto d = divide_exact(num, 1, 2);
            if (!d) break;
            num = *d;
            --den_a;
        }
        while (den_q > 0) {
            auto d = divide_exact(num, 0, 2);
            if (!d) break;
            num = *d;
            --den_q;
        }
        if (num.is_zero_poly()) den_a = den_q = 0;
    }

    bool is_laurent() const { return den_a == 0 && den_q == 0; }

    bool operator==(const HomflyValue& o) const {
        return num == o.num && den_a == o.den_a && den_q == o.den_q;
    }
    bool operator!=(const HomflyValue& o) const { return !(*this == o); }

    HomflyValue operator*(const Laurent2& s) const {
        HomflyValue r{num * s, den_a, den_q};
        r.canonicalize();
        return r;
    }

    friend HomflyValue operator+(const HomflyValue& a, const HomflyValue& b) {
        int da = std::max(a.den_a, b.den_a), dq = std::max(a.den_q, b.den_q);
        auto lift = [&](const HomflyValue& v) {
            Laurent2 n = v.num;
            for (int k = v.den_a; k < da; ++k) n *= cyclo_factor(1, 2);
            for (int k = v.den_q; k < dq; ++k) n *= cyclo_factor(0, 2);
            return n;
        };
        HomflyValue r{lift(a) + lift(b), da, dq};
        r.canonicalize();
        return r;
    }
    friend HomflyValue operator-(const HomflyValue& a, const HomflyValue& b) {
        return a + (b * Laurent2::mono(0, 0, rat(-1)));
    }

    std::string str() const {
        std::string s = num.str("q", "a");
        if (den_a > 0 || den_q > 0) {
            s = "(" + s + ") / (";
            if (den_a > 0) s += "(a^2-1)" + (den_a > 1 ? "^" + std::to_string(den_a) : "");
            if (den_a > 0 && den_q > 0) s += "*";
            if (den_q > 0) s += "(q^2-1)" + (den_q > 1 ? "^" + std::to_string(den_q) : "");
            s += ")";
        }
        return s;
    }
};

// closed-braid invariant: braid image in H_m, Markov trace, then the writhe
// and strand-count normalization with z = a^2(q^2-1)/(a^2-1)
inline HomflyValue homfly(const BraidWord& w) {
    const int m = w.strands;
    for (int l : w.letters)
        if (l == 0 || std::abs(l) > m - 1) throw std::invalid_argument("homfly: letter out of range");
    HeckeElement pi = hecke_identity(m);
    for (int l : w.letters)
        pi = t_multiply(pi, l > 0 ? hecke_T(m, l) : hecke_T_inv(m, -l));
    Laurent2 tr = markov_trace(pi);  // (q, z)

    int d = 0;
    for (const auto& [e, c] : tr.terms()) d = std::max(d, e.second);
    // substitute z and clear denominators over (a^2-1)^d
    Laurent2 N;
    for (const auto& [e, c] : tr.terms()) {
        Laurent2 term = Laurent2::mono(e.first, 2 * e.second, c);
        for (int k = 0; k < e.second; ++k) term *= cyclo_factor(0, 2);
        for (int k = e.second; k < d; ++k) term *= cyclo_factor(1, 2);
        N += term;
    }
    const int e = w.writhe();
    HomflyValue out;
    out.num = N * Laurent2::mono((m - 1) - e, (1 - m) - e, rat(1));
    int pow_a = (m - 1) - d;
    if (pow_a >= 0) {
        for (int k = 0; k < pow_a; ++k) out.num *= cyclo_factor(1, 2);
    } else {
        out.den_a = -pow_a;
    }
    out.den_q = m - 1;
    out.canonicalize();
    return out;
}

}  // namespace hhh
