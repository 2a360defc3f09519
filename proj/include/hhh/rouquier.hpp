#pragma once

/*
 * Rouquier complexes.  A crossing maps to a two-term complex of Soergel
 * bimodules; a braid word maps to the tensor product of those complexes,
 * with the Koszul sign on the right factor's differential.  Complexes are
 * kept in summand form: every term is a labeled direct sum of shifted
 * tensor words, every differential a grid of degree-zero bimodule maps.
 *
 * gaussian_reduce strips contractible pairs: a differential block that is a
 * nonzero rational multiple of the identity between two summands with the
 * same word and shift dies by the usual chain-complex Gaussian elimination
 * (d' = delta - gamma (1/c) beta).  Words with an adjacent repeated letter
 * are first rewritten through the explicit splitting
 * B_i B_i = B_i{2} (+) B_i, which is what lets those identity blocks appear.
 */

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "bimodule.hpp"
#include "braid.hpp"

namespace hhh {

// realized tensor-word modules, shared per (m, word, shift)
inline BimodulePtr realize_word(int m, const std::vector<int>& word, int q_shift) {
    using Key = std::tuple<int, std::vector<int>, int>;
    static std::mutex mtx;
    static std::map<Key, BimodulePtr> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto get = [&](auto&& self, const std::vector<int>& w, int qs) -> BimodulePtr {
        Key key{m, w, qs};
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        BimodulePtr mod;
        if (qs != 0) {
            mod = shift(self(self, w, 0), qs);
        } else if (w.empty()) {
            mod = regular_bimodule(m);
        } else if (w.size() == 1) {
            mod = elementary_bimodule(m, w[0]);
        } else {
            std::vector<int> head(w.begin(), w.end() - 1);
            mod = tensor_bimodule(self(self, head, 0), self(self, {w.back()}, 0));
        }
        cache.emplace(std::move(key), mod);
        return mod;
    };
    return get(get, word, q_shift);
}

struct Summand {
    std::vector<int> word;  // tensor word of elementary indices; empty = R
    int q_shift = 0;
    BimodulePtr module;     // shift(tensor of B_{word[k]}, q_shift)

    bool same_label(const Summand& o) const { return word == o.word && q_shift == o.q_shift; }

    std::string label() const {
        std::ostringstream os;
        if (word.empty()) {
            os << "R";
        } else {
            for (size_t k = 0; k < word.size(); ++k) {
                if (k) os << ".";
                os << "B" << word[k];
            }
        }
        os << "{" << q_shift << "}";
        return os.str();
    }
};

class BimoduleComplex {
  public:
    int strands = 1;
    // cohomological degree -> summand list
    std::map<int, std::vector<Summand>> terms;
    // diffs[t]: (target index in terms[t+1], source index in terms[t]) -> block
    std::map<int, std::map<std::pair<int, int>, PolyMatrix>> diffs;

    int min_t() const { return terms.empty() ? 0 : terms.begin()->first; }
    int max_t() const { return terms.empty() ? 0 : terms.rbegin()->first; }

    int total_summands() const {
        int n = 0;
        for (const auto& [t, list] : terms) n += static_cast<int>(list.size());
        return n;
    }

    const PolyMatrix* block(int t, int target, int source) const {
        auto dt = diffs.find(t);
        if (dt == diffs.end()) return nullptr;
        auto it = dt->second.find({target, source});
        return it == dt->second.end() ? nullptr : &it->second;
    }

    void set_block(int t, int target, int source, PolyMatrix b) {
        if (b.is_zero()) {
            auto dt = diffs.find(t);
            if (dt != diffs.end()) dt->second.erase({target, source});
            return;
        }
        diffs[t].insert_or_assign(std::make_pair(target, source), std::move(b));
    }

    void prune() {
        for (auto it = terms.begin(); it != terms.end();)
            it = it->second.empty() ? terms.erase(it) : std::next(it);
        for (auto it = diffs.begin(); it != diffs.end();)
            it = it->second.empty() ? diffs.erase(it) : std::next(it);
    }
};

inline BimoduleComplex identity_complex(int m) {
    BimoduleComplex c;
    c.strands = m;
    c.terms[0].push_back({{}, 0, realize_word(m, {}, 0)});
    return c;
}

// positive crossing: R{2} -> B_i with B_i in cohomological degree 0;
// negative crossing: B_i{-2} -> R{-2} with B_i{-2} in degree 0
inline BimoduleComplex crossing_complex(int m, int i, int sign) {
    if (i < 1 || i > m - 1) throw std::out_of_range("crossing_complex: index out of range");
    if (sign != 1 && sign != -1) throw std::invalid_argument("crossing_complex: sign must be +-1");
    const int v = m - 1;
    BimoduleComplex c;
    c.strands = m;
    if (sign > 0) {
        c.terms[-1].push_back({{}, 2, realize_word(m, {}, 2)});
        c.terms[0].push_back({{i}, 0, realize_word(m, {i}, 0)});
        PolyMatrix rb(2, 1, v);
        rb.at(0, 0) = Poly::variable(v, i);
        rb.at(1, 0) = Poly::one(v);
        c.set_block(-1, 0, 0, std::move(rb));
    } else {
        c.terms[0].push_back({{i}, -2, realize_word(m, {i}, -2)});
        c.terms[1].push_back({{}, -2, realize_word(m, {}, -2)});
        PolyMatrix br(1, 2, v);
        br.at(0, 0) = Poly::one(v);
        br.at(0, 1) = Poly::variable(v, i);
        c.set_block(0, 0, 0, std::move(br));
    }
    return c;
}

// tensor product over R with the sign (-1)^a on the right differential
inline BimoduleComplex tensor_complexes(const BimoduleComplex& C, const BimoduleComplex& D) {
    if (C.strands != D.strands) throw std::invalid_argument("tensor_complexes: strand mismatch");
    const int m = C.strands;
    BimoduleComplex out;
    out.strands = m;

    // position of the (a, i, j) pair inside out.terms[a+b]
    std::map<std::tuple<int, int, int, int>, int> pos;
    for (const auto& [a, ca] : C.terms)
        for (const auto& [b, db] : D.terms) {
            int t = a + b;
            for (int i = 0; i < static_cast<int>(ca.size()); ++i)
                for (int j = 0; j < static_cast<int>(db.size()); ++j) {
                    std::vector<int> word = ca[i].word;
                    word.insert(word.end(), db[j].word.begin(), db[j].word.end());
                    int qs = ca[i].q_shift + db[j].q_shift;
                    pos[{a, b, i, j}] = static_cast<int>(out.terms[t].size());
                    BimodulePtr mod = realize_word(m, word, qs);
                    out.terms[t].push_back({std::move(word), qs, std::move(mod)});
                }
        }

    for (const auto& [a, ca] : C.terms)
        for (const auto& [b, db] : D.terms) {
            int t = a + b;
            for (int i = 0; i < static_cast<int>(ca.size()); ++i)
                for (int j = 0; j < static_cast<int>(db.size()); ++j) {
                    int src = pos.at({a, b, i, j});
                    const Summand& sx = ca[i];
                    const Summand& sy = db[j];
                    // d_C (x) id
                    if (auto dc = C.diffs.find(a); dc != C.diffs.end()) {
                        for (const auto& [key, blk] : dc->second) {
                            if (key.second != i) continue;
                            int tgt = pos.at({a + 1, b, key.first, j});
                            const Summand& tx = C.terms.at(a + 1)[key.first];
                            BimoduleMap f{sx.module, tx.module, blk, 0};
                            auto full = tensor_map_right_id(
                                f, sy.module, out.terms[t][src].module, out.terms[t + 1][tgt].module);
                            out.set_block(t, tgt, src, std::move(full.matrix));
                        }
                    }
                    // (-1)^a id (x) d_D
                    if (auto dd = D.diffs.find(b); dd != D.diffs.end()) {
                        for (const auto& [key, blk] : dd->second) {
                            if (key.second != j) continue;
                            int tgt = pos.at({a, b + 1, i, key.first});
                            const Summand& ty = D.terms.at(b + 1)[key.first];
                            BimoduleMap g{sy.module, ty.module, blk, 0};
                            auto full = tensor_map_left_id(
                                sx.module, g, out.terms[t][src].module, out.terms[t + 1][tgt].module);
                            PolyMatrix mat = (a % 2 == 0) ? std::move(full.matrix)
                                                          : full.matrix * rat(-1);
                            out.set_block(t, tgt, src, std::move(mat));
                        }
                    }
                }
        }
    return out;
}

inline BimoduleComplex braid_complex(const BraidWord& w) {
    for (int l : w.letters)
        if (l == 0 || std::abs(l) > w.strands - 1)
            throw std::invalid_argument("braid_complex: letter out of range");
    BimoduleComplex c = identity_complex(w.strands);
    for (int l : w.letters)
        c = tensor_complexes(c, crossing_complex(w.strands, std::abs(l), l > 0 ? 1 : -1));
    return c;
}

struct Diagnostics {
    bool ok = true;
    std::string message;
};

// d*d = 0, homogeneity, intertwining; reports the first violation
inline Diagnostics validate_complex(const BimoduleComplex& C) {
    for (const auto& [t, blocks] : C.diffs) {
        auto here = C.terms.find(t);
        auto next = C.terms.find(t + 1);
        for (const auto& [key, blk] : blocks) {
            if (here == C.terms.end() || key.second >= static_cast<int>(here->second.size()) ||
                next == C.terms.end() || key.first >= static_cast<int>(next->second.size())) {
                std::ostringstream os;
                os << "dangling block at t=" << t;
                return {false, os.str()};
            }
            BimoduleMap f{here->second[key.second].module, next->second[key.first].module, blk, 0};
            if (auto why = f.violation()) {
                std::ostringstream os;
                os << "block (t=" << t << ", " << key.first << " <- " << key.second
                   << "): " << *why;
                return {false, os.str()};
            }
        }
    }
    for (const auto& [t, blocks] : C.diffs) {
        auto dn = C.diffs.find(t + 1);
        if (dn == C.diffs.end()) continue;
        // (d_{t+1} d_t)[u, s] over intermediate summands
        std::map<std::pair<int, int>, PolyMatrix> prod;
        for (const auto& [k2, b2] : dn->second)
            for (const auto& [k1, b1] : blocks) {
                if (k2.second != k1.first) continue;
                PolyMatrix p = b2 * b1;
                auto key = std::make_pair(k2.first, k1.second);
                auto it = prod.find(key);
                if (it == prod.end())
                    prod.emplace(key, std::move(p));
                else
                    it->second += p;
            }
        for (const auto& [key, p] : prod)
            if (!p.is_zero()) {
                std::ostringstream os;
                os << "d*d != 0 at t=" << t << " block (" << key.first << " <- " << key.second
                   << ")";
                return {false, os.str()};
            }
    }
    return {};
}

enum class ReduceOrder { Forward, Backward };

namespace detail {

inline std::optional<Rational> scalar_identity(const PolyMatrix& b) {
    if (b.rows() != b.cols()) return std::nullopt;
    Rational c;
    for (int r = 0; r < b.rows(); ++r)
        for (int col = 0; col < b.cols(); ++col) {
            const Poly& p = b.at(r, col);
            if (r == col) {
                if (!p.is_constant() || p.is_zero_poly()) return std::nullopt;
                Rational v = p.terms().begin()->second;
                if (r == 0)
                    c = v;
                else if (v != c)
                    return std::nullopt;
            } else if (!p.is_zero_poly()) {
                return std::nullopt;
            }
        }
    return c;
}

// remove summand at (t, idx), shifting block indices
inline void drop_summand(BimoduleComplex& C, int t, int idx) {
    auto& list = C.terms.at(t);
    list.erase(list.begin() + idx);
    auto remap = [&](int tt, bool source_side) {
        auto dt = C.diffs.find(tt);
        if (dt == C.diffs.end()) return;
        std::map<std::pair<int, int>, PolyMatrix> next;
        for (auto& [key, blk] : dt->second) {
            int tgt = key.first, src = key.second;
            int& affected = source_side ? src : tgt;
            if (affected == idx) continue;
            if (affected > idx) --affected;
            next.emplace(std::make_pair(tgt, src), std::move(blk));
        }
        dt->second = std::move(next);
    };
    remap(t, true);       // blocks out of terms[t]
    remap(t - 1, false);  // blocks into terms[t]
}

// base maps of the splitting  B_i{2} (+) B_i  ~  B_i B_i
struct PairSplit {
    BimoduleMap incl_hi, proj_hi;  // the {+2} copy
    BimoduleMap incl_lo, proj_lo;  // the unshifted copy
};

inline PairSplit pair_split_maps(int m, int i) {
    const int v = m - 1;
    Poly yi = Poly::variable(v, i);
    BimodulePtr B = realize_word(m, {i}, 0);
    BimodulePtr B2 = realize_word(m, {i}, 2);
    BimodulePtr BB = realize_word(m, {i, i}, 0);

    PolyMatrix incl_hi(4, 2, v), proj_hi(2, 4, v), incl_lo(4, 2, v), proj_lo(2, 4, v);
    incl_hi.at(0, 0) = -yi;
    incl_hi.at(2, 0) = Poly::one(v);
    incl_hi.at(1, 1) = -yi;
    incl_hi.at(3, 1) = Poly::one(v);
    proj_hi.at(0, 2) = Poly::one(v);
    proj_hi.at(1, 3) = Poly::one(v);
    incl_lo.at(0, 0) = Poly::one(v);
    incl_lo.at(1, 1) = Poly::one(v);
    proj_lo.at(0, 0) = Poly::one(v);
    proj_lo.at(1, 1) = Poly::one(v);
    proj_lo.at(0, 2) = yi;
    proj_lo.at(1, 3) = yi;
    return {BimoduleMap{B2, BB, std::move(incl_hi), 0}, BimoduleMap{BB, B2, std::move(proj_hi), 0},
            BimoduleMap{B, BB, std::move(incl_lo), 0}, BimoduleMap{BB, B, std::move(proj_lo), 0}};
}

// rewrite the summand (t, idx), whose word repeats letter i at positions
// pos, pos+1, as the two shorter summands
inline void split_pair(BimoduleComplex& C, int t, int idx, int pos) {
    const int m = C.strands;
    Summand s = C.terms.at(t)[idx];
    const int i = s.word[pos];
    std::vector<int> short_word = s.word;
    short_word.erase(short_word.begin() + pos);

    std::vector<int> prefix(s.word.begin(), s.word.begin() + pos);
    std::vector<int> suffix(s.word.begin() + pos + 2, s.word.end());
    BimodulePtr pre = realize_word(m, prefix, 0);
    BimodulePtr suf = realize_word(m, suffix, 0);

    PairSplit base = pair_split_maps(m, i);
    auto expand = [&](const BimoduleMap& mid, const BimodulePtr& src, const BimodulePtr& tgt) {
        // id_pre (x) mid (x) id_suf
        BimodulePtr mid_src = tensor_bimodule(pre, mid.source);
        BimodulePtr mid_tgt = tensor_bimodule(pre, mid.target);
        BimoduleMap left = tensor_map_left_id(pre, mid, mid_src, mid_tgt);
        return tensor_map_right_id(left, suf, src, tgt);
    };

    BimodulePtr hi_mod = realize_word(m, short_word, s.q_shift + 2);
    BimodulePtr lo_mod = realize_word(m, short_word, s.q_shift);
    BimoduleMap incl_hi = expand(base.incl_hi, hi_mod, s.module);
    BimoduleMap incl_lo = expand(base.incl_lo, lo_mod, s.module);
    BimoduleMap proj_hi = expand(base.proj_hi, s.module, hi_mod);
    BimoduleMap proj_lo = expand(base.proj_lo, s.module, lo_mod);

    // collect incident blocks before reindexing
    std::vector<std::pair<int, PolyMatrix>> outgoing;  // (target, block)
    if (auto dt = C.diffs.find(t); dt != C.diffs.end())
        for (const auto& [key, blk] : dt->second)
            if (key.second == idx) outgoing.emplace_back(key.first, blk);
    std::vector<std::pair<int, PolyMatrix>> incoming;  // (source, block)
    if (auto dp = C.diffs.find(t - 1); dp != C.diffs.end())
        for (const auto& [key, blk] : dp->second)
            if (key.first == idx) incoming.emplace_back(key.second, blk);

    drop_summand(C, t, idx);
    auto& list = C.terms.at(t);
    int hi_idx = static_cast<int>(list.size());
    list.push_back({short_word, s.q_shift + 2, hi_mod});
    int lo_idx = static_cast<int>(list.size());
    list.push_back({short_word, s.q_shift, lo_mod});

    for (const auto& [tgt, blk] : outgoing) {
        C.set_block(t, tgt, hi_idx, blk * incl_hi.matrix);
        C.set_block(t, tgt, lo_idx, blk * incl_lo.matrix);
    }
    for (const auto& [src, blk] : incoming) {
        C.set_block(t - 1, hi_idx, src, proj_hi.matrix * blk);
        C.set_block(t - 1, lo_idx, src, proj_lo.matrix * blk);
    }
}

// one Gaussian elimination of the contractible pair (t, src) -> (t+1, tgt)
inline void eliminate_pair(BimoduleComplex& C, int t, int tgt, int src, const Rational& c) {
    Rational cinv = 1 / c;
    auto& dt = C.diffs.at(t);
    std::vector<std::pair<int, const PolyMatrix*>> beta;   // other sources into tgt
    std::vector<std::pair<int, const PolyMatrix*>> gamma;  // src into other targets
    for (const auto& [key, blk] : dt) {
        if (key.first == tgt && key.second != src) beta.emplace_back(key.second, &blk);
        if (key.second == src && key.first != tgt) gamma.emplace_back(key.first, &blk);
    }
    for (const auto& [y, g] : gamma)
        for (const auto& [x, b] : beta) {
            PolyMatrix upd = (*g) * (*b) * (-cinv);
            const PolyMatrix* exist = C.block(t, y, x);
            if (exist) upd += *exist;
            C.set_block(t, y, x, std::move(upd));
        }
    // drop every block touching the two summands, then the summands
    auto scrub = [&](int tt, int target_idx, int source_idx) {
        auto d = C.diffs.find(tt);
        if (d == C.diffs.end()) return;
        for (auto it = d->second.begin(); it != d->second.end();) {
            if ((target_idx >= 0 && it->first.first == target_idx) ||
                (source_idx >= 0 && it->first.second == source_idx))
                it = d->second.erase(it);
            else
                ++it;
        }
    };
    scrub(t, tgt, src);
    scrub(t - 1, src, -1);
    scrub(t + 1, -1, tgt);
    drop_summand(C, t + 1, tgt);
    drop_summand(C, t, src);
}

}  // namespace detail

// strip contractible pairs until none remain; rewrites adjacent repeated
// letters through the B_i B_i splitting whenever eliminations stall
inline BimoduleComplex gaussian_reduce(BimoduleComplex C,
                                       ReduceOrder order = ReduceOrder::Forward) {
    for (;;) {
        bool changed = false;
        // eliminations to exhaustion
        for (;;) {
            std::optional<std::tuple<int, int, int, Rational>> found;
            auto scan = [&](int t) {
                auto dt = C.diffs.find(t);
                if (dt == C.diffs.end()) return false;
                for (const auto& [key, blk] : dt->second) {
                    const Summand& s = C.terms.at(t)[key.second];
                    const Summand& u = C.terms.at(t + 1)[key.first];
                    if (!s.same_label(u)) continue;
                    if (auto c = detail::scalar_identity(blk)) {
                        found = {t, key.first, key.second, *c};
                        return true;
                    }
                }
                return false;
            };
            if (order == ReduceOrder::Forward) {
                for (auto it = C.diffs.begin(); it != C.diffs.end() && !found; ++it) scan(it->first);
            } else {
                for (auto it = C.diffs.rbegin(); it != C.diffs.rend() && !found; ++it)
                    scan(it->first);
            }
            if (!found) break;
            auto [t, tgt, src, c] = *found;
            detail::eliminate_pair(C, t, tgt, src, c);
            changed = true;
        }
        // one split of an adjacent repeated letter, if any
        bool split_done = false;
        for (auto& [t, list] : C.terms) {
            for (int idx = 0; idx < static_cast<int>(list.size()) && !split_done; ++idx) {
                const auto& w = list[idx].word;
                for (size_t p = 0; p + 1 < w.size(); ++p)
                    if (w[p] == w[p + 1]) {
                        detail::split_pair(C, t, idx, static_cast<int>(p));
                        split_done = true;
                        break;
                    }
            }
            if (split_done) break;
        }
        if (!split_done && !changed) break;
    }
    C.prune();
    return C;
}

// inductive construction: fold crossing complexes one letter at a time and
// reduce after every step; homotopy equivalent to reducing the full tensor
inline BimoduleComplex reduced_braid_complex(const BraidWord& w) {
    BimoduleComplex c = identity_complex(w.strands);
    for (int l : w.letters) {
        c = tensor_complexes(c, crossing_complex(w.strands, std::abs(l), l > 0 ? 1 : -1));
        c = gaussian_reduce(std::move(c));
    }
    return c;
}

}  // namespace hhh
