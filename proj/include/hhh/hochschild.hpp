#pragma once

/*
 * Koszul model for Hochschild homology.  For a bimodule M over the reduced
 * ring in v = m-1 variables, the complex has one copy of M for every subset
 * I of {1..v}, sitting in Hochschild degree |I| and q-shifted by +2|I| so
 * that the commutator blocks y_i - A_i become degree preserving.  The
 * differential removes one element of I at a time:
 *   d(x, I) = sum_{i in I} +-(y_i x - x y_i) (x, I\{i}),
 * with the minus sign exactly when I contains an odd number of elements
 * less than i.  Homology in degree h is HH_h(R, M).
 *
 * A bimodule map induces the block-diagonal chain map with no extra signs;
 * intertwining makes it commute with the differentials on the nose.
 *
 * Only the homological direction is built: over a polynomial base ring the
 * Koszul resolution is self-dual, so Hochschild cohomology agrees with
 * homology up to reversing the index, and a separate computation would add
 * nothing.
 */

#include <map>
#include <vector>

#include "bimodule.hpp"

namespace hhh {

// subsets of {1..v} with |I| = h, ascending elements, lexicographic order
inline std::vector<std::vector<int>> subsets_of_size(int v, int h) {
    std::vector<std::vector<int>> out;
    if (h < 0 || h > v) return out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<int>(cur.size()) == h) {
            out.push_back(cur);
            return;
        }
        for (int i = next; i <= v; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

struct FreeComplex {
    int strands = 1;
    int module_rank = 0;
    // Hochschild degree h -> flattened generator q-degrees; generators come
    // in blocks of module_rank, one block per subset in lexicographic order
    std::map<int, std::vector<int>> term_degrees;
    std::map<int, std::vector<std::vector<int>>> subsets;
    // h -> matrix of the differential C_h -> C_{h-1}, for h >= 1
    std::map<int, PolyMatrix> diffs;

    int vars() const { return strands - 1; }
};

inline FreeComplex koszul_hh_complex(const BimodulePtr& M) {
    const int v = M->vars(), r = M->rank();
    FreeComplex C;
    C.strands = M->strands();
    C.module_rank = r;

    for (int h = 0; h <= v; ++h) {
        auto subs = subsets_of_size(v, h);
        std::vector<int> degs;
        degs.reserve(subs.size() * r);
        for (size_t k = 0; k < subs.size(); ++k)
            for (int g = 0; g < r; ++g) degs.push_back(M->degree(g) + 2 * h);
        C.term_degrees[h] = std::move(degs);
        C.subsets[h] = std::move(subs);
    }

    for (int h = 1; h <= v; ++h) {
        const auto& src = C.subsets[h];
        const auto& tgt = C.subsets[h - 1];
        std::map<std::vector<int>, int> tgt_pos;
        for (size_t k = 0; k < tgt.size(); ++k) tgt_pos[tgt[k]] = static_cast<int>(k);

        PolyMatrix d(static_cast<int>(tgt.size()) * r, static_cast<int>(src.size()) * r, v);
        for (size_t si = 0; si < src.size(); ++si) {
            const auto& I = src[si];
            for (size_t pos = 0; pos < I.size(); ++pos) {
                int i = I[pos];
                std::vector<int> J = I;
                J.erase(J.begin() + pos);
                int tj = tgt_pos.at(J);
                // pos counts the elements of I below i
                int sign = (pos % 2 == 1) ? -1 : 1;
                Poly yi = Poly::variable(v, i);
                const PolyMatrix& A = M->action(i);
                for (int row = 0; row < r; ++row)
                    for (int col = 0; col < r; ++col) {
                        Poly entry = -A.at(row, col);
                        if (row == col) entry += yi;
                        if (sign < 0) entry = -entry;
                        if (!entry.is_zero_poly())
                            d.at(tj * r + row, static_cast<int>(si) * r + col) = std::move(entry);
                    }
            }
        }
        C.diffs.emplace(h, std::move(d));
    }
    return C;
}

// the induced chain map: one copy of f per subset, no signs
inline std::map<int, PolyMatrix> koszul_hh_map(const BimoduleMap& f) {
    const int v = f.source->vars();
    const int rs = f.source->rank(), rt = f.target->rank();
    std::map<int, PolyMatrix> out;
    for (int h = 0; h <= v; ++h) {
        auto subs = subsets_of_size(v, h);
        int n = static_cast<int>(subs.size());
        PolyMatrix F(n * rt, n * rs, f.matrix.vars());
        for (int k = 0; k < n; ++k)
            for (int row = 0; row < rt; ++row)
                for (int col = 0; col < rs; ++col) {
                    const Poly& e = f.matrix.at(row, col);
                    if (!e.is_zero_poly()) F.at(k * rt + row, k * rs + col) = e;
                }
        out.emplace(h, std::move(F));
    }
    return out;
}

}  // namespace hhh
