#pragma once

/*
 * The triply-graded pipeline.  Everything is computed one q-degree at a
 * time: a graded piece of a Koszul complex is a finite-dimensional rational
 * complex, its homology is exact linear algebra, and the Rouquier
 * differentials induce maps on those homologies through an explicit
 * representative-and-boundary-correction solve.  Cohomology of the induced
 * complexes in the t-direction gives the (q, h, t) table.  The order of
 * operations is fixed: Hochschild homology first, then the t-direction.
 */

#include <atomic>
#include <memory>
#include <mutex>
#include <thread>
#include <tuple>

#include "hochschild.hpp"
#include "laurent.hpp"
#include "linalg.hpp"
#include "rouquier.hpp"

namespace hhh {

// ----- degree slices -----

struct SliceBasis {
    std::vector<std::pair<int, Monomial>> elems;  // (generator, monomial)
    std::map<std::pair<int, Monomial>, int> index;

    int dim() const { return static_cast<int>(elems.size()); }
};

inline SliceBasis slice_basis(const std::vector<int>& gen_degrees, int q, int vars) {
    SliceBasis b;
    for (int g = 0; g < static_cast<int>(gen_degrees.size()); ++g) {
        for (auto& m : monomials_of_degree(vars, q - gen_degrees[g])) {
            b.index.emplace(std::make_pair(g, m), static_cast<int>(b.elems.size()));
            b.elems.emplace_back(g, m);
        }
    }
    return b;
}

// slice of a degree-preserving left-linear map given by a polynomial matrix
inline SparseMatrix slice_map(const PolyMatrix& F, const SliceBasis& src, const SliceBasis& tgt) {
    SparseMatrix out(tgt.dim(), src.dim());
    Monomial prod;
    for (int k = 0; k < src.dim(); ++k) {
        const auto& [g, mono] = src.elems[k];
        for (int r = 0; r < F.rows(); ++r) {
            const Poly& p = F.at(r, g);
            if (p.is_zero_poly()) continue;
            for (const auto& [pm, c] : p.terms()) {
                prod = pm;
                for (size_t i = 0; i < prod.size(); ++i) prod[i] += mono[i];
                auto it = tgt.index.find({r, prod});
                if (it == tgt.index.end()) continue;  // degree bookkeeping says zero
                out.add(it->second, k, c);
            }
        }
    }
    return out;
}

struct SlicedComplex {
    std::map<int, SliceBasis> bases;    // position -> basis
    std::map<int, SparseMatrix> diffs;  // position h -> matrix into position h-1
};

inline SlicedComplex degree_slice(const FreeComplex& C, int q) {
    SlicedComplex S;
    const int v = C.vars();
    for (const auto& [h, degs] : C.term_degrees) S.bases.emplace(h, slice_basis(degs, q, v));
    for (const auto& [h, d] : C.diffs)
        S.diffs.emplace(h, slice_map(d, S.bases.at(h), S.bases.at(h - 1)));
    return S;
}

// ----- homology with representatives -----

struct HomPosition {
    int ambient = 0;
    int dim = 0;
    std::vector<SparseVec> reps;      // cycle representatives
    std::vector<SparseVec> im_basis;  // column basis of the boundary space
};

struct Projection {
    std::vector<SparseVec> hom_coords;  // coordinates over the representatives
    std::vector<SparseVec> witness;     // boundary part over im_basis
};

// express cycles as homology coordinates plus an explicit boundary; the
// batch solve shares one elimination across all inputs
inline Projection project_to_homology(const HomPosition& P, const std::vector<SparseVec>& cycles) {
    std::vector<SparseVec> cols = P.im_basis;
    cols.insert(cols.end(), P.reps.begin(), P.reps.end());
    auto sol = solve_columns(SparseMatrix::from_columns(P.ambient, cols), cycles);
    if (!sol.has_value())
        throw std::logic_error("project_to_homology: input vector is not a cycle");
    Projection out;
    const int nb = static_cast<int>(P.im_basis.size());
    for (const auto& x : *sol) {
        SparseVec hom, wit;
        for (const auto& [c, val] : x)
            (c < nb ? wit : hom).emplace_back(c < nb ? c : c - nb, val);
        out.witness.push_back(std::move(wit));
        out.hom_coords.push_back(std::move(hom));
    }
    return out;
}

namespace detail {

inline std::vector<SparseVec> extract_columns(const SparseMatrix& m, const std::vector<int>& cols) {
    std::map<int, int> want;
    for (size_t i = 0; i < cols.size(); ++i) want.emplace(cols[i], static_cast<int>(i));
    std::vector<SparseVec> out(cols.size());
    for (int r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r)) {
            auto it = want.find(c);
            if (it != want.end()) out[it->second].emplace_back(r, v);
        }
    return out;
}

inline HomPosition homology_at(const SparseMatrix* d_out, const SparseMatrix* d_in, int ambient) {
    HomPosition P;
    P.ambient = ambient;
    if (ambient == 0) return P;

    std::vector<SparseVec> Z;
    if (d_out == nullptr) {
        for (int i = 0; i < ambient; ++i) Z.push_back(sparse_unit(i));
    } else {
        Z = kernel_basis(*d_out);
    }
    if (d_in != nullptr && d_in->cols() > 0) {
        Rref r = rref(*d_in);
        P.im_basis = extract_columns(*d_in, r.pivot_col);
    }
    // complete the boundary space to the cycle space; the kernel columns
    // that pick up new pivots are the representatives
    std::vector<SparseVec> cols = P.im_basis;
    cols.insert(cols.end(), Z.begin(), Z.end());
    Rref r = rref(SparseMatrix::from_columns(ambient, cols));
    const int nb = static_cast<int>(P.im_basis.size());
    for (int c : r.pivot_col)
        if (c >= nb) P.reps.push_back(Z[c - nb]);
    P.dim = static_cast<int>(P.reps.size());
    return P;
}

}  // namespace detail

// exact homology of a sliced complex at every position, with cycle
// representatives and the data backing project_to_homology
inline std::map<int, HomPosition> homology_with_reps(const SlicedComplex& S) {
    // composition must vanish
    for (const auto& [h, d] : S.diffs) {
        auto up = S.diffs.find(h + 1);
        if (up == S.diffs.end()) continue;
        for (int c = 0; c < up->second.cols(); ++c) {
            SparseVec col;
            for (int r = 0; r < up->second.rows(); ++r)
                for (const auto& [cc, v] : up->second.row(r))
                    if (cc == c) col.emplace_back(r, v);
            if (!d.apply(col).empty())
                throw std::invalid_argument("homology_with_reps: input is not a complex");
        }
    }
    std::map<int, HomPosition> out;
    for (const auto& [h, basis] : S.bases) {
        auto dout = S.diffs.find(h);
        auto din = S.diffs.find(h + 1);
        out.emplace(h, detail::homology_at(dout == S.diffs.end() ? nullptr : &dout->second,
                                           din == S.diffs.end() ? nullptr : &din->second,
                                           basis.dim()));
    }
    return out;
}

// ----- trigraded tables -----

struct TrigradedDims {
    std::map<std::tuple<int, int, int>, long long> entries;  // (q, h, t) -> dim
    int qmax_used = 0;

    void add(int q, int h, int t, long long dim) {
        if (dim != 0) entries[{q, h, t}] += dim;
    }

    long long total_rank() const {
        long long n = 0;
        for (const auto& [k, d] : entries) n += d;
        return n;
    }

    bool operator==(const TrigradedDims& o) const { return entries == o.entries; }
    bool operator!=(const TrigradedDims& o) const { return !(*this == o); }
};

inline std::string poincare(const TrigradedDims& D) {
    if (D.entries.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, dim] : D.entries) {
        auto [q, h, t] = key;
        if (!first) os << " + ";
        std::ostringstream mono;
        bool any = false;
        if (q != 0) {
            mono << "q^" << q;
            any = true;
        }
        if (h != 0) {
            mono << (any ? "*" : "") << "a" << (h != 1 ? "^" + std::to_string(h) : "");
            any = true;
        }
        if (t != 0) {
            mono << (any ? "*" : "") << "t" << (t != 1 ? "^" + std::to_string(t) : "");
            any = true;
        }
        if (!any)
            os << dim;
        else if (dim == 1)
            os << mono.str();
        else
            os << dim << "*" << mono.str();
        first = false;
    }
    return os.str();
}

// substitute t = -1; variables (q, a)
inline Laurent2 euler(const TrigradedDims& D) {
    Laurent2 chi;
    for (const auto& [key, dim] : D.entries) {
        auto [q, h, t] = key;
        int sign = (t % 2 == 0) ? 1 : -1;
        chi.add_term(q, h, rat(sign * dim));
    }
    return chi;
}

// unique uniform shift with D2 = D1 shifted, for finite tables
inline std::optional<std::array<int, 3>> compare_up_to_shift(const TrigradedDims& D1,
                                                             const TrigradedDims& D2) {
    if (D1.entries.empty() && D2.entries.empty()) return std::array<int, 3>{0, 0, 0};
    if (D1.entries.empty() || D2.entries.empty()) return std::nullopt;
    if (D1.entries.size() != D2.entries.size()) return std::nullopt;
    auto [q1, h1, t1] = D1.entries.begin()->first;
    auto [q2, h2, t2] = D2.entries.begin()->first;
    std::array<int, 3> d{q2 - q1, h2 - h1, t2 - t1};
    for (const auto& [key, dim] : D1.entries) {
        auto [q, h, t] = key;
        auto it = D2.entries.find({q + d[0], h + d[1], t + d[2]});
        if (it == D2.entries.end() || it->second != dim) return std::nullopt;
    }
    return d;
}

// the same comparison restricted to the window both truncations cover;
// needed when the closure is a link and the q-support is infinite
inline std::optional<std::array<int, 3>> compare_up_to_shift_truncated(const TrigradedDims& D1,
                                                                       const TrigradedDims& D2) {
    if (D1.entries.empty() && D2.entries.empty()) return std::array<int, 3>{0, 0, 0};
    if (D1.entries.empty() || D2.entries.empty()) return std::nullopt;
    auto [q1, h1, t1] = D1.entries.begin()->first;
    auto [q2, h2, t2] = D2.entries.begin()->first;
    std::array<int, 3> d{q2 - q1, h2 - h1, t2 - t1};
    for (const auto& [key, dim] : D1.entries) {
        auto [q, h, t] = key;
        if (q > D1.qmax_used || q + d[0] > D2.qmax_used) continue;
        auto it = D2.entries.find({q + d[0], h + d[1], t + d[2]});
        if (it == D2.entries.end() || it->second != dim) return std::nullopt;
    }
    for (const auto& [key, dim] : D2.entries) {
        auto [q, h, t] = key;
        if (q > D2.qmax_used || q - d[0] > D1.qmax_used) continue;
        auto it = D1.entries.find({q - d[0], h - d[1], t - d[2]});
        if (it == D1.entries.end() || it->second != dim) return std::nullopt;
    }
    return d;
}

// ----- the pipeline -----

namespace detail {

struct TermHom {
    std::map<int, SliceBasis> bases;  // per Hochschild degree
    std::map<int, HomPosition> hom;
};

struct HhhContext {
    std::map<const GradedBimodule*, FreeComplex> koszul;
    std::mutex mtx;
    std::map<std::pair<const GradedBimodule*, int>, std::shared_ptr<const TermHom>> cache;

    const FreeComplex& koszul_of(const GradedBimodule* mod) const { return koszul.at(mod); }

    std::shared_ptr<const TermHom> term_hom(const GradedBimodule* mod, int q) {
        {
            std::lock_guard<std::mutex> lock(mtx);
            auto it = cache.find({mod, q});
            if (it != cache.end()) return it->second;
        }
        auto th = std::make_shared<TermHom>();
        SlicedComplex S = degree_slice(koszul_of(mod), q);
        for (auto& [h, basis] : S.bases) {
            auto dout = S.diffs.find(h);
            auto din = S.diffs.find(h + 1);
            th->hom.emplace(h, homology_at(dout == S.diffs.end() ? nullptr : &dout->second,
                                           din == S.diffs.end() ? nullptr : &din->second,
                                           basis.dim()));
        }
        th->bases = std::move(S.bases);
        std::lock_guard<std::mutex> lock(mtx);
        return cache.emplace(std::make_pair(mod, q), std::move(th)).first->second;
    }
};

// image of the source representatives under the chain map induced by the
// block F between two summands, sliced at (q, h); the block acts as one
// copy of F per Koszul subset
inline std::vector<SparseVec> apply_block(const PolyMatrix& F, int src_rank, int tgt_rank,
                                          const SliceBasis& src, const SliceBasis& tgt,
                                          const std::vector<SparseVec>& vecs) {
    std::vector<SparseVec> out;
    out.reserve(vecs.size());
    Monomial prod;
    for (const auto& vec : vecs) {
        std::map<int, Rational> acc;
        for (const auto& [k, coeff] : vec) {
            const auto& [flat, mono] = src.elems[k];
            int subset = flat / src_rank, g = flat % src_rank;
            for (int r = 0; r < tgt_rank; ++r) {
                const Poly& p = F.at(r, g);
                if (p.is_zero_poly()) continue;
                for (const auto& [pm, c] : p.terms()) {
                    prod = pm;
                    for (size_t i = 0; i < prod.size(); ++i) prod[i] += mono[i];
                    auto it = tgt.index.find({subset * tgt_rank + r, prod});
                    if (it == tgt.index.end()) continue;
                    acc[it->second] += coeff * c;
                }
            }
        }
        SparseVec v;
        for (const auto& [i, c] : acc)
            if (!is_zero(c)) v.emplace_back(i, c);
        out.push_back(std::move(v));
    }
    return out;
}

struct QSliceResult {
    std::vector<std::tuple<int, int, int, long long>> entries;  // (q, h, t, dim)
};

inline QSliceResult hhh_q_slice(const BimoduleComplex& C, HhhContext& ctx, int q) {
    QSliceResult res;
    const int v = C.strands - 1;

    // per (t, summand) homology data
    std::map<int, std::vector<std::shared_ptr<const TermHom>>> data;
    for (const auto& [t, list] : C.terms) {
        auto& vec = data[t];
        for (const auto& s : list) vec.push_back(ctx.term_hom(s.module.get(), q));
    }

    for (int h = 0; h <= v; ++h) {
        // offsets of each summand inside the induced complex at level t
        std::map<int, std::vector<int>> offset;
        std::map<int, int> total;
        for (const auto& [t, vec] : data) {
            int off = 0;
            auto& offs = offset[t];
            for (const auto& th : vec) {
                offs.push_back(off);
                off += th->hom.at(h).dim;
            }
            total[t] = off;
        }

        // induced maps on Hochschild homology via representatives
        std::map<int, SparseMatrix> induced;
        for (const auto& [t, blocks] : C.diffs) {
            if (total.at(t) == 0 || total.at(t + 1) == 0) continue;
            SparseMatrix ind(total.at(t + 1), total.at(t));
            for (const auto& [key, F] : blocks) {
                const auto& src_th = *data.at(t)[key.second];
                const auto& tgt_th = *data.at(t + 1)[key.first];
                const HomPosition& srcH = src_th.hom.at(h);
                const HomPosition& tgtH = tgt_th.hom.at(h);
                if (srcH.dim == 0 || tgtH.dim == 0) continue;
                const Summand& ssrc = C.terms.at(t)[key.second];
                const Summand& stgt = C.terms.at(t + 1)[key.first];
                auto images = apply_block(F, ssrc.module->rank(), stgt.module->rank(),
                                          src_th.bases.at(h), tgt_th.bases.at(h), srcH.reps);
                auto proj = project_to_homology(tgtH, images);
                int roff = offset.at(t + 1)[key.first];
                int coff = offset.at(t)[key.second];
                for (int j = 0; j < srcH.dim; ++j)
                    for (const auto& [i, val] : proj.hom_coords[j]) ind.add(roff + i, coff + j, val);
            }
            induced.emplace(t, std::move(ind));
        }

        std::map<int, int> rk;
        for (const auto& [t, m] : induced) rk[t] = rank(m);
        for (const auto& [t, n] : total) {
            auto out_it = rk.find(t);
            auto in_it = rk.find(t - 1);
            long long dim = n - (out_it == rk.end() ? 0 : out_it->second) -
                            (in_it == rk.end() ? 0 : in_it->second);
            if (dim < 0) throw std::logic_error("hhh: negative homology dimension");
            if (dim > 0) res.entries.emplace_back(q, h, t, dim);
        }
    }
    return res;
}

}  // namespace detail

// homology table of a fixed complex for all even q up to qmax
inline TrigradedDims hhh_of_complex(const BimoduleComplex& C, int qmax, int jobs = 1) {
    detail::HhhContext ctx;
    int qmin = 0;
    for (const auto& [t, list] : C.terms)
        for (const auto& s : list) {
            if (!ctx.koszul.count(s.module.get()))
                ctx.koszul.emplace(s.module.get(), koszul_hh_complex(s.module));
            for (int d : s.module->degrees()) qmin = std::min(qmin, d);
        }
    if (qmin % 2 != 0) --qmin;

    std::vector<int> qs;
    for (int q = qmin; q <= qmax; q += 2) qs.push_back(q);

    std::vector<detail::QSliceResult> results(qs.size());
    if (jobs <= 1 || qs.size() <= 1) {
        for (size_t i = 0; i < qs.size(); ++i) results[i] = detail::hhh_q_slice(C, ctx, qs[i]);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= qs.size()) return;
                results[i] = detail::hhh_q_slice(C, ctx, qs[i]);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    TrigradedDims D;
    D.qmax_used = qmax;
    for (const auto& r : results)
        for (const auto& [q, h, t, dim] : r.entries) D.add(q, h, t, dim);
    return D;
}

// the full pipeline for a braid word
inline TrigradedDims hhh(const BraidWord& w, int qmax, bool reduce = true, int jobs = 1) {
    if (qmax < 0 || qmax % 2 != 0) throw std::invalid_argument("hhh: qmax must be even and >= 0");
    BimoduleComplex C = reduce ? reduced_braid_complex(w) : braid_complex(w);
    return hhh_of_complex(C, qmax, jobs);
}

inline int default_qmax(const BraidWord& w) {
    return 4 * (static_cast<int>(w.letters.size()) + w.strands);
}

}  // namespace hhh
