#pragma once

/*
 * Soergel bimodules over the reduced ring R = Q[y_1..y_{m-1}], stored as
 * graded free left R-modules carrying commuting right-action matrices, one
 * per variable.  The right action of an arbitrary polynomial is evaluation
 * of that polynomial at the action matrices, which is well defined because
 * they commute.  Bimodule maps are left-linear matrices over R constrained
 * to intertwine the right actions.
 *
 * hom_space solves the intertwining equations exactly: homogeneity bounds
 * the monomial support of every matrix entry, so the system is a finite
 * rational one.  split_idempotent peels a graded-free direct summand off a
 * degree-zero idempotent (graded Nakayama: minimal homogeneous generators
 * of the image form a free basis).
 */

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "laurent.hpp"
#include "linalg.hpp"
#include "poly.hpp"

namespace hhh {

class PolyMatrix {
  public:
    PolyMatrix(int rows, int cols, int vars)
        : rows_(rows), cols_(cols), vars_(vars), a_(static_cast<size_t>(rows) * cols, Poly(vars)) {}

    static PolyMatrix identity(int n, int vars) {
        PolyMatrix m(n, n, vars);
        for (int i = 0; i < n; ++i) m.at(i, i) = Poly::one(vars);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int vars() const { return vars_; }

    Poly& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Poly& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    bool is_zero() const {
        for (const auto& p : a_)
            if (!p.is_zero_poly()) return false;
        return true;
    }

    bool operator==(const PolyMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

    PolyMatrix& operator+=(const PolyMatrix& o) {
        check_shape(o);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    PolyMatrix& operator-=(const PolyMatrix& o) {
        check_shape(o);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
    friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }

    PolyMatrix operator*(const Rational& s) const {
        PolyMatrix r = *this;
        for (auto& p : r.a_) p = p * s;
        return r;
    }

    PolyMatrix operator*(const Poly& s) const {
        PolyMatrix r = *this;
        for (auto& p : r.a_) p = p * s;
        return r;
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("PolyMatrix: shape mismatch");
        PolyMatrix r(a.rows_, b.cols_, a.vars_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const Poly& aik = a.at(i, k);
                if (aik.is_zero_poly()) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    const Poly& bkj = b.at(k, j);
                    if (!bkj.is_zero_poly()) r.at(i, j) += aik * bkj;
                }
            }
        return r;
    }

    std::string str() const {
        std::ostringstream os;
        for (int r = 0; r < rows_; ++r) {
            os << "[";
            for (int c = 0; c < cols_; ++c) {
                if (c) os << ", ";
                os << at(r, c).str();
            }
            os << "]";
            if (r + 1 < rows_) os << "\n";
        }
        return os.str();
    }

  private:
    void check_shape(const PolyMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("PolyMatrix: shape mismatch");
    }

    int rows_, cols_, vars_;
    std::vector<Poly> a_;
};

class GradedBimodule;
using BimodulePtr = std::shared_ptr<const GradedBimodule>;

class GradedBimodule {
  public:
    GradedBimodule(int strands, std::vector<int> degrees, std::vector<PolyMatrix> actions)
        : strands_(strands), degrees_(std::move(degrees)), actions_(std::move(actions)) {
        if (strands_ < 1) throw std::invalid_argument("GradedBimodule: strands < 1");
        if (static_cast<int>(actions_.size()) != vars())
            throw std::invalid_argument("GradedBimodule: wrong number of action matrices");
        for (const auto& a : actions_)
            if (a.rows() != rank() || a.cols() != rank())
                throw std::invalid_argument("GradedBimodule: action shape mismatch");
    }

    int strands() const { return strands_; }
    int vars() const { return strands_ - 1; }
    int rank() const { return static_cast<int>(degrees_.size()); }
    const std::vector<int>& degrees() const { return degrees_; }
    int degree(int g) const { return degrees_[g]; }
    const PolyMatrix& action(int j) const {  // 1-based variable index
        if (j < 1 || j > vars()) throw std::out_of_range("action: variable out of range");
        return actions_[j - 1];
    }

    // right action of an arbitrary polynomial: evaluate at the commuting
    // action matrices (power-cached; safe under concurrent callers)
    PolyMatrix eval(const Poly& p) const {
        if (p.vars() != vars()) throw std::invalid_argument("eval: variable-count mismatch");
        PolyMatrix out(rank(), rank(), vars());
        for (const auto& [m, c] : p.terms()) {
            PolyMatrix term = PolyMatrix::identity(rank(), vars()) * c;
            for (int j = 1; j <= vars(); ++j)
                if (m[j - 1] > 0) term = term * power(j, m[j - 1]);
            out += term;
        }
        return out;
    }

    Laurent graded_rank() const {
        Laurent g;
        for (int d : degrees_) g.add_term(d, rat(1));
        return g;
    }

    // pairwise commutation of the right actions and homogeneity of every
    // entry; empty optional means the invariants hold
    std::optional<std::string> invariant_violation() const {
        for (int j = 1; j <= vars(); ++j)
            for (int r = 0; r < rank(); ++r)
                for (int c = 0; c < rank(); ++c) {
                    int want = 2 + degrees_[c] - degrees_[r];
                    if (!action(j).at(r, c).is_homogeneous_of_degree(want)) {
                        std::ostringstream os;
                        os << "action " << j << " entry (" << r << "," << c
                           << ") not homogeneous of degree " << want;
                        return os.str();
                    }
                }
        for (int j = 1; j <= vars(); ++j)
            for (int k = j + 1; k <= vars(); ++k)
                if (action(j) * action(k) != action(k) * action(j)) {
                    std::ostringstream os;
                    os << "actions " << j << " and " << k << " do not commute";
                    return os.str();
                }
        return std::nullopt;
    }

  private:
    const PolyMatrix& power(int j, int e) const {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto key = std::make_pair(j, e);
        auto it = power_cache_.find(key);
        if (it != power_cache_.end()) return it->second;
        PolyMatrix p = (e == 1) ? action(j) : power_unlocked(j, e);
        return power_cache_.emplace(key, std::move(p)).first->second;
    }
    PolyMatrix power_unlocked(int j, int e) const {
        PolyMatrix p = actions_[j - 1];
        for (int k = 1; k < e; ++k) p = p * actions_[j - 1];
        return p;
    }

    int strands_;
    std::vector<int> degrees_;
    std::vector<PolyMatrix> actions_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<int, int>, PolyMatrix> power_cache_;
};

// deterministic text dump: generator degrees plus rendered action matrices
inline std::string dump_bimodule(const GradedBimodule& M) {
    std::ostringstream os;
    os << "strands " << M.strands() << " degrees [";
    for (int i = 0; i < M.rank(); ++i) os << (i ? " " : "") << M.degree(i);
    os << "]\n";
    for (int j = 1; j <= M.vars(); ++j) os << "y" << j << " action:\n" << M.action(j).str() << "\n";
    return os.str();
}

inline BimodulePtr regular_bimodule(int m) {
    if (m < 1) throw std::invalid_argument("regular_bimodule: m < 1");
    std::vector<PolyMatrix> actions;
    for (int j = 1; j <= m - 1; ++j) {
        PolyMatrix a(1, 1, m - 1);
        a.at(0, 0) = Poly::variable(m - 1, j);
        actions.push_back(std::move(a));
    }
    return std::make_shared<GradedBimodule>(m, std::vector<int>{0}, std::move(actions));
}

// B_i, free of rank 2 with generators 1(x)1 in degree 0 and 1(x)y_i in
// degree 2; the action columns come from the Demazure splitting of y_j
inline BimodulePtr elementary_bimodule(int m, int i) {
    int v = m - 1;
    if (i < 1 || i > v) throw std::out_of_range("elementary_bimodule: index out of range");
    Poly yi = Poly::variable(v, i);
    Poly yi2 = yi * yi;
    std::vector<PolyMatrix> actions;
    for (int j = 1; j <= v; ++j) {
        auto [a, b] = demazure_split(i, Poly::variable(v, j));
        PolyMatrix act(2, 2, v);
        act.at(0, 0) = a;
        act.at(1, 0) = b;
        act.at(0, 1) = b * yi2;
        act.at(1, 1) = a;
        actions.push_back(std::move(act));
    }
    return std::make_shared<GradedBimodule>(m, std::vector<int>{0, 2}, std::move(actions));
}

inline BimodulePtr shift(const BimodulePtr& M, int k) {
    std::vector<int> degs = M->degrees();
    for (int& d : degs) d += k;
    std::vector<PolyMatrix> actions;
    for (int j = 1; j <= M->vars(); ++j) actions.push_back(M->action(j));
    return std::make_shared<GradedBimodule>(M->strands(), std::move(degs), std::move(actions));
}

// generators are pairs (a,b), flattened a-major, so iterated tensors flatten
// associatively with no reindexing
inline BimodulePtr tensor_bimodule(const BimodulePtr& M, const BimodulePtr& N) {
    if (M->strands() != N->strands())
        throw std::invalid_argument("tensor_bimodule: strand mismatch");
    const int rm = M->rank(), rn = N->rank(), v = M->vars();
    std::vector<int> degs(static_cast<size_t>(rm) * rn);
    for (int a = 0; a < rm; ++a)
        for (int b = 0; b < rn; ++b) degs[a * rn + b] = M->degree(a) + N->degree(b);
    std::vector<PolyMatrix> actions;
    for (int j = 1; j <= v; ++j) {
        PolyMatrix T(rm * rn, rm * rn, v);
        const PolyMatrix& AN = N->action(j);
        for (int b = 0; b < rn; ++b)
            for (int c = 0; c < rn; ++c) {
                const Poly& p = AN.at(c, b);  // e_b*y_j has coefficient p on e_c
                if (p.is_zero_poly()) continue;
                PolyMatrix E = M->eval(p);  // the coefficient crosses the tensor factor
                for (int a = 0; a < rm; ++a)
                    for (int a2 = 0; a2 < rm; ++a2) {
                        const Poly& e = E.at(a2, a);
                        if (!e.is_zero_poly()) T.at(a2 * rn + c, a * rn + b) += e;
                    }
            }
        actions.push_back(std::move(T));
    }
    return std::make_shared<GradedBimodule>(M->strands(), std::move(degs), std::move(actions));
}

inline BimodulePtr direct_sum(const BimodulePtr& M, const BimodulePtr& N) {
    if (M->strands() != N->strands()) throw std::invalid_argument("direct_sum: strand mismatch");
    const int rm = M->rank(), rn = N->rank(), v = M->vars();
    std::vector<int> degs = M->degrees();
    degs.insert(degs.end(), N->degrees().begin(), N->degrees().end());
    std::vector<PolyMatrix> actions;
    for (int j = 1; j <= v; ++j) {
        PolyMatrix a(rm + rn, rm + rn, v);
        for (int r = 0; r < rm; ++r)
            for (int c = 0; c < rm; ++c) a.at(r, c) = M->action(j).at(r, c);
        for (int r = 0; r < rn; ++r)
            for (int c = 0; c < rn; ++c) a.at(rm + r, rm + c) = N->action(j).at(r, c);
        actions.push_back(std::move(a));
    }
    return std::make_shared<GradedBimodule>(M->strands(), std::move(degs), std::move(actions));
}

struct BimoduleMap {
    BimodulePtr source;
    BimodulePtr target;
    PolyMatrix matrix;  // target.rank x source.rank
    int q_degree = 0;

    bool is_zero() const { return matrix.is_zero(); }

    // homogeneity of every entry plus the intertwining equations
    std::optional<std::string> violation() const {
        if (matrix.rows() != target->rank() || matrix.cols() != source->rank())
            return "matrix shape does not match source/target ranks";
        for (int r = 0; r < target->rank(); ++r)
            for (int c = 0; c < source->rank(); ++c) {
                int want = q_degree + source->degree(c) - target->degree(r);
                if (!matrix.at(r, c).is_homogeneous_of_degree(want)) {
                    std::ostringstream os;
                    os << "entry (" << r << "," << c << ") not homogeneous of degree " << want;
                    return os.str();
                }
            }
        for (int j = 1; j <= source->vars(); ++j)
            if (matrix * source->action(j) != target->action(j) * matrix) {
                std::ostringstream os;
                os << "does not intertwine the action of y" << j;
                return os.str();
            }
        return std::nullopt;
    }
};

inline BimoduleMap identity_map(const BimodulePtr& M) {
    return {M, M, PolyMatrix::identity(M->rank(), M->vars()), 0};
}

inline BimoduleMap zero_map(const BimodulePtr& src, const BimodulePtr& tgt, int q_degree = 0) {
    return {src, tgt, PolyMatrix(tgt->rank(), src->rank(), src->vars()), q_degree};
}

inline BimoduleMap compose(const BimoduleMap& f, const BimoduleMap& g) {  // f after g
    if (f.source.get() != g.target.get() && f.source->degrees() != g.target->degrees())
        throw std::invalid_argument("compose: source/target mismatch");
    return {g.source, f.target, f.matrix * g.matrix, f.q_degree + g.q_degree};
}

// (f(x)g)(a(x)b) = f(a)(x)g(b); the coefficients of g cross the left factor
// as a right action, i.e. via evaluation at the target module of f
inline BimoduleMap tensor_map(const BimoduleMap& f, const BimoduleMap& g,
                              const BimodulePtr& src, const BimodulePtr& tgt) {
    const int rn = g.source->rank(), rn2 = g.target->rank();
    const int rm = f.source->rank(), rm2 = f.target->rank();
    PolyMatrix T(rm2 * rn2, rm * rn, f.matrix.vars());
    for (int b = 0; b < rn; ++b)
        for (int b2 = 0; b2 < rn2; ++b2) {
            const Poly& G = g.matrix.at(b2, b);
            if (G.is_zero_poly()) continue;
            PolyMatrix block = f.target->eval(G) * f.matrix;  // rm2 x rm
            for (int a = 0; a < rm; ++a)
                for (int a2 = 0; a2 < rm2; ++a2) {
                    const Poly& e = block.at(a2, a);
                    if (!e.is_zero_poly()) T.at(a2 * rn2 + b2, a * rn + b) += e;
                }
        }
    return {src, tgt, std::move(T), f.q_degree + g.q_degree};
}

inline BimoduleMap tensor_map(const BimoduleMap& f, const BimoduleMap& g) {
    if (f.source->strands() != g.source->strands())
        throw std::invalid_argument("tensor_map: strand mismatch");
    return tensor_map(f, g, tensor_bimodule(f.source, g.source),
                      tensor_bimodule(f.target, g.target));
}

// f (x) id_N, block diagonal in the right index
inline BimoduleMap tensor_map_right_id(const BimoduleMap& f, const BimodulePtr& N,
                                       const BimodulePtr& src, const BimodulePtr& tgt) {
    const int rn = N->rank(), rm = f.source->rank(), rm2 = f.target->rank();
    PolyMatrix T(rm2 * rn, rm * rn, f.matrix.vars());
    for (int a = 0; a < rm; ++a)
        for (int a2 = 0; a2 < rm2; ++a2) {
            const Poly& e = f.matrix.at(a2, a);
            if (e.is_zero_poly()) continue;
            for (int b = 0; b < rn; ++b) T.at(a2 * rn + b, a * rn + b) = e;
        }
    return {src, tgt, std::move(T), f.q_degree};
}

// id_M (x) g; the polynomial entries of g cross M as right actions
inline BimoduleMap tensor_map_left_id(const BimodulePtr& M, const BimoduleMap& g,
                                      const BimodulePtr& src, const BimodulePtr& tgt) {
    const int rm = M->rank(), rn = g.source->rank(), rn2 = g.target->rank();
    PolyMatrix T(rm * rn2, rm * rn, g.matrix.vars());
    for (int b = 0; b < rn; ++b)
        for (int b2 = 0; b2 < rn2; ++b2) {
            const Poly& G = g.matrix.at(b2, b);
            if (G.is_zero_poly()) continue;
            PolyMatrix E = M->eval(G);
            for (int a = 0; a < rm; ++a)
                for (int a2 = 0; a2 < rm; ++a2) {
                    const Poly& e = E.at(a2, a);
                    if (!e.is_zero_poly()) T.at(a2 * rn2 + b2, a * rn + b) += e;
                }
        }
    return {src, tgt, std::move(T), g.q_degree};
}

// br: B_i -> R (multiplication) and rb: R -> B_i of q-degree 2
inline std::pair<BimoduleMap, BimoduleMap> elementary_maps(int m, int i) {
    BimodulePtr B = elementary_bimodule(m, i);
    BimodulePtr R = regular_bimodule(m);
    int v = m - 1;
    PolyMatrix br(1, 2, v);
    br.at(0, 0) = Poly::one(v);
    br.at(0, 1) = Poly::variable(v, i);
    PolyMatrix rb(2, 1, v);
    rb.at(0, 0) = Poly::variable(v, i);
    rb.at(1, 0) = Poly::one(v);
    return {BimoduleMap{B, R, std::move(br), 0}, BimoduleMap{R, B, std::move(rb), 2}};
}

/*
 * Linear systems whose unknowns are homogeneous polynomials of forced
 * degree.  Expanding the unknowns against their (finite) monomial bases
 * turns everything into one exact rational system.
 */
class PolySystem {
  public:
    explicit PolySystem(int vars) : vars_(vars) {}

    int add_unknown(int degree) {
        unknown_monos_.push_back(degree >= 0 && degree % 2 == 0
                                     ? monomials_of_degree(vars_, degree)
                                     : std::vector<Monomial>{});
        col_offset_.push_back(ncols_);
        ncols_ += static_cast<int>(unknown_monos_.back().size());
        return static_cast<int>(unknown_monos_.size()) - 1;
    }

    int new_equation() { return neq_++; }

    // equation eq accumulates mult * u_k on the left-hand side
    void add_term(int eq, int unknown, const Poly& mult) {
        if (mult.is_zero_poly()) return;
        terms_.push_back({eq, unknown, mult});
    }

    // and rhs on the right-hand side
    void add_rhs(int eq, const Poly& value) {
        if (value.is_zero_poly()) return;
        rhs_.push_back({eq, value});
    }

    struct Solution {
        bool consistent = false;
        std::vector<Poly> particular;               // per unknown
        std::vector<std::vector<Poly>> nullspace;   // basis vectors, each per unknown
    };

    Solution solve() const {
        std::map<std::pair<int, Monomial>, int> row_of;
        auto row = [&](int eq, const Monomial& m) {
            auto key = std::make_pair(eq, m);
            auto it = row_of.find(key);
            if (it == row_of.end()) it = row_of.emplace(key, static_cast<int>(row_of.size())).first;
            return it->second;
        };
        struct Entry {
            int r, c;
            Rational v;
        };
        std::vector<Entry> entries;
        Monomial prod;
        for (const auto& t : terms_) {
            const auto& monos = unknown_monos_[t.unknown];
            for (size_t k = 0; k < monos.size(); ++k) {
                int col = col_offset_[t.unknown] + static_cast<int>(k);
                for (const auto& [mm, mc] : t.mult.terms()) {
                    prod = mm;
                    for (int i = 0; i < vars_; ++i) prod[i] += monos[k][i];
                    entries.push_back({row(t.eq, prod), col, mc});
                }
            }
        }
        std::vector<std::pair<int, Rational>> bvec;
        for (const auto& [eq, value] : rhs_)
            for (const auto& [m, c] : value.terms()) bvec.emplace_back(row(eq, m), c);

        SparseMatrix A(static_cast<int>(row_of.size()), ncols_);
        for (const auto& e : entries) A.add(e.r, e.c, e.v);
        SparseVec b;
        {
            std::map<int, Rational> acc;
            for (const auto& [r, c] : bvec) {
                acc[r] += c;
            }
            for (const auto& [r, c] : acc)
                if (!is_zero(c)) b.emplace_back(r, c);
        }

        Solution out;
        auto sols = solve_columns(A, {b});
        if (!sols.has_value()) return out;
        out.consistent = true;
        out.particular = unpack((*sols)[0]);
        for (const auto& k : kernel_basis(A)) out.nullspace.push_back(unpack(k));
        return out;
    }

  private:
    std::vector<Poly> unpack(const SparseVec& x) const {
        std::vector<Poly> vals;
        vals.reserve(unknown_monos_.size());
        for (size_t u = 0; u < unknown_monos_.size(); ++u) vals.emplace_back(vars_);
        for (const auto& [col, v] : x) {
            // locate the unknown owning this column
            size_t u = 0;
            while (u + 1 < col_offset_.size() && col_offset_[u + 1] <= col) ++u;
            vals[u].add_term(unknown_monos_[u][col - col_offset_[u]], v);
        }
        return vals;
    }

    struct Term {
        int eq;
        int unknown;
        Poly mult;
    };

    int vars_;
    int ncols_ = 0;
    int neq_ = 0;
    std::vector<std::vector<Monomial>> unknown_monos_;
    std::vector<int> col_offset_;
    std::vector<Term> terms_;
    std::vector<std::pair<int, Poly>> rhs_;
};

// basis over Q of the bimodule maps M -> N homogeneous of q-degree d
inline std::vector<BimoduleMap> hom_space(const BimodulePtr& M, const BimodulePtr& N, int d) {
    if (M->strands() != N->strands()) throw std::invalid_argument("hom_space: strand mismatch");
    const int v = M->vars(), rm = M->rank(), rn = N->rank();
    PolySystem sys(v);
    std::vector<int> unk(static_cast<size_t>(rn) * rm);
    for (int r = 0; r < rn; ++r)
        for (int c = 0; c < rm; ++c)
            unk[r * rm + c] = sys.add_unknown(d + M->degree(c) - N->degree(r));
    for (int j = 1; j <= v; ++j) {
        const PolyMatrix& AM = M->action(j);
        const PolyMatrix& AN = N->action(j);
        for (int r = 0; r < rn; ++r)
            for (int c = 0; c < rm; ++c) {
                int eq = sys.new_equation();
                // (F*AM - AN*F)[r,c] = 0
                for (int b = 0; b < rm; ++b) sys.add_term(eq, unk[r * rm + b], AM.at(b, c));
                for (int s = 0; s < rn; ++s)
                    sys.add_term(eq, unk[s * rm + c], -AN.at(r, s));
            }
    }
    auto sol = sys.solve();
    std::vector<BimoduleMap> maps;
    for (const auto& vec : sol.nullspace) {
        PolyMatrix F(rn, rm, v);
        for (int r = 0; r < rn; ++r)
            for (int c = 0; c < rm; ++c) F.at(r, c) = vec[unk[r * rm + c]];
        maps.push_back({M, N, std::move(F), d});
    }
    return maps;
}

// does v (a homogeneous element of M, coordinates per generator) lie in the
// left R-span of the given columns?  returns the coefficients if so
inline std::optional<std::vector<Poly>> span_membership(const BimodulePtr& M,
                                                        const std::vector<std::vector<Poly>>& gens,
                                                        const std::vector<int>& gen_deg,
                                                        const std::vector<Poly>& target,
                                                        int target_deg) {
    PolySystem sys(M->vars());
    std::vector<int> unk;
    for (int g = 0; g < static_cast<int>(gens.size()); ++g)
        unk.push_back(sys.add_unknown(target_deg - gen_deg[g]));
    for (int r = 0; r < M->rank(); ++r) {
        int eq = sys.new_equation();
        for (int g = 0; g < static_cast<int>(gens.size()); ++g)
            sys.add_term(eq, unk[g], gens[g][r]);
        sys.add_rhs(eq, target[r]);
    }
    auto sol = sys.solve();
    if (!sol.consistent) return std::nullopt;
    return sol.particular;
}

struct SplitSummand {
    BimodulePtr module;
    BimoduleMap incl;  // module -> ambient
    BimoduleMap proj;  // ambient -> module
};

// split a degree-0 idempotent: the image is graded free; its minimal
// homogeneous generators (greedy by degree, membership-tested against the
// part already chosen) form the basis
inline SplitSummand split_idempotent(const BimodulePtr& M, const BimoduleMap& e) {
    if (e.q_degree != 0) throw std::invalid_argument("split_idempotent: q-degree must be 0");
    if (e.matrix * e.matrix != e.matrix)
        throw std::invalid_argument("split_idempotent: map is not idempotent");
    const int r = M->rank(), v = M->vars();

    struct Cand {
        std::vector<Poly> col;
        int deg;
        int orig;
    };
    std::vector<Cand> cands;
    for (int c = 0; c < r; ++c) {
        std::vector<Poly> col;
        bool zero = true;
        for (int row = 0; row < r; ++row) {
            col.push_back(e.matrix.at(row, c));
            if (!col.back().is_zero_poly()) zero = false;
        }
        if (!zero) cands.push_back({std::move(col), M->degree(c), c});
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Cand& a, const Cand& b) { return a.deg < b.deg; });

    std::vector<std::vector<Poly>> basis;
    std::vector<int> basis_deg;
    for (const auto& cand : cands) {
        if (span_membership(M, basis, basis_deg, cand.col, cand.deg).has_value()) continue;
        basis.push_back(cand.col);
        basis_deg.push_back(cand.deg);
    }

    const int s = static_cast<int>(basis.size());
    PolyMatrix incl(r, s, v);
    for (int c = 0; c < s; ++c)
        for (int row = 0; row < r; ++row) incl.at(row, c) = basis[c][row];

    // proj solves incl * P = e column by column
    PolyMatrix proj(s, r, v);
    for (int c = 0; c < r; ++c) {
        std::vector<Poly> col;
        for (int row = 0; row < r; ++row) col.push_back(e.matrix.at(row, c));
        auto coeffs = span_membership(M, basis, basis_deg, col, M->degree(c));
        if (!coeffs.has_value())
            throw std::logic_error("split_idempotent: generators do not span the image");
        for (int g = 0; g < s; ++g) proj.at(g, c) = (*coeffs)[g];
    }

    std::vector<PolyMatrix> actions;
    for (int j = 1; j <= v; ++j) actions.push_back(proj * M->action(j) * incl);
    auto S = std::make_shared<GradedBimodule>(M->strands(), basis_deg, std::move(actions));

    // postconditions of the split
    if (proj * incl != PolyMatrix::identity(s, v))
        throw std::logic_error("split_idempotent: proj*incl is not the identity");
    if (incl * proj != e.matrix)
        throw std::logic_error("split_idempotent: incl*proj does not recover the idempotent");

    return {S, BimoduleMap{S, M, std::move(incl), 0}, BimoduleMap{BimodulePtr(M), S, std::move(proj), 0}};
}

namespace detail {

// deterministic coefficient patterns for witness searches: singletons first,
// then pseudorandom small combinations
inline std::vector<std::vector<Rational>> combo_patterns(size_t n, int extra) {
    std::vector<std::vector<Rational>> out;
    for (size_t i = 0; i < n; ++i) {
        std::vector<Rational> v(n, Rational(0));
        v[i] = rat(1);
        out.push_back(std::move(v));
    }
    std::mt19937 rng(0x5eed);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int t = 0; t < extra; ++t) {
        std::vector<Rational> v(n);
        bool all_zero = true;
        for (auto& c : v) {
            c = rat(coef(rng));
            if (!is_zero(c)) all_zero = false;
        }
        if (!all_zero) out.push_back(std::move(v));
    }
    return out;
}

// solve sum_j y_j * basis_j = want for rational y_j, where the basis and the
// target are polynomial matrices of identical shape
inline std::optional<std::vector<Rational>> rational_combination(
    const std::vector<PolyMatrix>& basis, const PolyMatrix& want, int vars) {
    PolySystem sys(vars);
    std::vector<int> unk;
    for (size_t j = 0; j < basis.size(); ++j) unk.push_back(sys.add_unknown(0));
    for (int r = 0; r < want.rows(); ++r)
        for (int c = 0; c < want.cols(); ++c) {
            int eq = sys.new_equation();
            for (size_t j = 0; j < basis.size(); ++j)
                sys.add_term(eq, unk[j], basis[j].at(r, c));
            sys.add_rhs(eq, want.at(r, c));
        }
    auto sol = sys.solve();
    if (!sol.consistent) return std::nullopt;
    std::vector<Rational> ys;
    for (size_t j = 0; j < basis.size(); ++j) {
        const Poly& p = sol.particular[unk[j]];
        ys.push_back(p.is_zero_poly() ? Rational(0) : p.terms().begin()->second);
    }
    return ys;
}

}  // namespace detail

// search for mutually inverse degree-0 maps; a found witness pair is exact,
// absence after the deterministic trial set means no isomorphism was found
inline std::optional<std::pair<BimoduleMap, BimoduleMap>> is_isomorphic(const BimodulePtr& M,
                                                                        const BimodulePtr& N) {
    if (M->strands() != N->strands()) throw std::invalid_argument("is_isomorphic: strand mismatch");
    if (M->graded_rank() != N->graded_rank()) return std::nullopt;
    if (M->rank() == 0) return std::make_pair(zero_map(M, N), zero_map(N, M));

    auto F = hom_space(M, N, 0);
    auto G = hom_space(N, M, 0);
    if (F.empty() || G.empty()) return std::nullopt;
    const int v = M->vars();

    for (const auto& coefs : detail::combo_patterns(F.size(), 12)) {
        PolyMatrix phi(N->rank(), M->rank(), v);
        for (size_t j = 0; j < F.size(); ++j)
            if (!is_zero(coefs[j])) phi += F[j].matrix * coefs[j];
        if (phi.is_zero()) continue;

        // psi is linear for fixed phi: psi*phi = id_M and phi*psi = id_N
        std::vector<PolyMatrix> lhs;
        lhs.reserve(G.size());
        std::vector<PolyMatrix> lhs2;
        for (const auto& g : G) {
            lhs.push_back(g.matrix * phi);
            lhs2.push_back(phi * g.matrix);
        }
        PolySystem sys(v);
        std::vector<int> unk;
        for (size_t j = 0; j < G.size(); ++j) unk.push_back(sys.add_unknown(0));
        auto add_block = [&](const std::vector<PolyMatrix>& blocks, const PolyMatrix& id) {
            for (int r = 0; r < id.rows(); ++r)
                for (int c = 0; c < id.cols(); ++c) {
                    int eq = sys.new_equation();
                    for (size_t j = 0; j < blocks.size(); ++j)
                        sys.add_term(eq, unk[j], blocks[j].at(r, c));
                    sys.add_rhs(eq, id.at(r, c));
                }
        };
        add_block(lhs, PolyMatrix::identity(M->rank(), v));
        add_block(lhs2, PolyMatrix::identity(N->rank(), v));
        auto sol = sys.solve();
        if (!sol.consistent) continue;

        PolyMatrix psi(M->rank(), N->rank(), v);
        for (size_t j = 0; j < G.size(); ++j) {
            const Poly& p = sol.particular[unk[j]];
            if (!p.is_zero_poly()) psi += G[j].matrix * p.terms().begin()->second;
        }
        return std::make_pair(BimoduleMap{M, N, std::move(phi), 0},
                              BimoduleMap{N, M, std::move(psi), 0});
    }
    return std::nullopt;
}

// degree-0 split pair sub -> big -> sub composing to the identity of sub
inline std::optional<std::pair<BimoduleMap, BimoduleMap>> find_split_pair(const BimodulePtr& sub,
                                                                          const BimodulePtr& big) {
    auto I = hom_space(sub, big, 0);
    auto P = hom_space(big, sub, 0);
    if (I.empty() || P.empty()) return std::nullopt;
    const int v = sub->vars();
    for (const auto& coefs : detail::combo_patterns(I.size(), 8)) {
        PolyMatrix incl(big->rank(), sub->rank(), v);
        for (size_t j = 0; j < I.size(); ++j)
            if (!is_zero(coefs[j])) incl += I[j].matrix * coefs[j];
        if (incl.is_zero()) continue;
        std::vector<PolyMatrix> lhs;
        for (const auto& p : P) lhs.push_back(p.matrix * incl);
        auto ys = detail::rational_combination(lhs, PolyMatrix::identity(sub->rank(), v), v);
        if (!ys.has_value()) continue;
        PolyMatrix proj(sub->rank(), big->rank(), v);
        for (size_t j = 0; j < P.size(); ++j)
            if (!is_zero((*ys)[j])) proj += P[j].matrix * (*ys)[j];
        return std::make_pair(BimoduleMap{sub, big, std::move(incl), 0},
                              BimoduleMap{big, sub, std::move(proj), 0});
    }
    return std::nullopt;
}

}  // namespace hhh
