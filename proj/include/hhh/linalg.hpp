#pragma once

/*
 * Exact sparse linear algebra over the rationals: reduced row echelon form
 * with sparsity-aware pivoting, kernel bases, and multi-right-hand-side
 * solving.  Everything downstream (hom-space solving, homology of degree
 * slices) reduces to these three.
 *
 * Rows are kept integral and content-normalized during elimination to
 * control coefficient growth; pivots are rescaled to 1 only when a row is
 * retired to the echelon.
 */

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace hhh {

// sorted (index, nonzero coefficient) pairs
using SparseVec = std::vector<std::pair<int, Rational>>;

inline SparseVec sparse_unit(int i) { return SparseVec{{i, rat(1)}}; }

// y + c*x, both sorted
inline SparseVec sparse_axpy(const Rational& c, const SparseVec& x, const SparseVec& y) {
    SparseVec r;
    r.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i].first < y[j].first) {
            r.emplace_back(x[i].first, c * x[i].second);
            ++i;
        } else if (x[i].first > y[j].first) {
            r.push_back(y[j]);
            ++j;
        } else {
            Rational v = y[j].second + c * x[i].second;
            if (!is_zero(v)) r.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    for (; i < x.size(); ++i) r.emplace_back(x[i].first, c * x[i].second);
    for (; j < y.size(); ++j) r.push_back(y[j]);
    return r;
}

inline SparseVec sparse_scale(const Rational& c, const SparseVec& x) {
    SparseVec r;
    if (is_zero(c)) return r;
    r.reserve(x.size());
    for (const auto& [i, v] : x) r.emplace_back(i, c * v);
    return r;
}

// divide the row by the gcd of numerators over the lcm of denominators,
// making entries coprime integers with positive leading sign
inline void sparse_normalize_content(SparseVec& row) {
    if (row.empty()) return;
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [i, v] : row) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den().get_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (sgn(row.front().second) < 0) scale = -scale;
    if (scale == 1) return;
    for (auto& [i, v] : row) v *= scale;
}

class SparseMatrix {
  public:
    SparseMatrix(int rows, int cols) : cols_(cols), rows_(rows) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("SparseMatrix: negative shape");
    }

    int rows() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }
    const SparseVec& row(int r) const { return rows_[r]; }

    void add(int r, int c, const Rational& v) {
        if (is_zero(v)) return;
        SparseVec& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& p, int col) { return p.first < col; });
        if (it != row.end() && it->first == c) {
            it->second += v;
            if (is_zero(it->second)) row.erase(it);
        } else {
            row.emplace(it, c, v);
        }
    }

    void set_row(int r, SparseVec v) { rows_[r] = std::move(v); }

    // append the columns of another matrix on the right
    void augment(const SparseMatrix& o) {
        if (o.rows() != rows()) throw std::invalid_argument("augment: row mismatch");
        for (int r = 0; r < rows(); ++r)
            for (const auto& [c, v] : o.rows_[r]) rows_[r].emplace_back(c + cols_, v);
        cols_ += o.cols_;
    }

    static SparseMatrix from_columns(int nrows, const std::vector<SparseVec>& cols) {
        SparseMatrix m(nrows, static_cast<int>(cols.size()));
        for (int c = 0; c < static_cast<int>(cols.size()); ++c)
            for (const auto& [r, v] : cols[c]) m.rows_[r].emplace_back(c, v);
        for (auto& row : m.rows_) std::sort(row.begin(), row.end());
        return m;
    }

    SparseVec apply(const SparseVec& x) const {  // matrix * column vector
        SparseVec out;
        for (int r = 0; r < rows(); ++r) {
            Rational acc(0);
            const SparseVec& row = rows_[r];
            size_t i = 0, j = 0;
            while (i < row.size() && j < x.size()) {
                if (row[i].first < x[j].first)
                    ++i;
                else if (row[i].first > x[j].first)
                    ++j;
                else {
                    acc += row[i].second * x[j].second;
                    ++i;
                    ++j;
                }
            }
            if (!is_zero(acc)) out.emplace_back(r, std::move(acc));
        }
        return out;
    }

    long long nnz() const {
        long long n = 0;
        for (const auto& r : rows_) n += static_cast<long long>(r.size());
        return n;
    }

  private:
    int cols_;
    std::vector<SparseVec> rows_;
};

struct Rref {
    std::vector<SparseVec> rows;  // echelon rows, pivot entries = 1, fully reduced
    std::vector<int> pivot_col;   // per echelon row, strictly increasing
    int cols = 0;
    int rank() const { return static_cast<int>(pivot_col.size()); }
    bool is_pivot(int c) const {
        return std::binary_search(pivot_col.begin(), pivot_col.end(), c);
    }
};

inline Rref rref(const SparseMatrix& m) {
    std::vector<SparseVec> pending;
    pending.reserve(m.rows());
    for (int r = 0; r < m.rows(); ++r)
        if (!m.row(r).empty()) {
            pending.push_back(m.row(r));
            sparse_normalize_content(pending.back());
        }

    std::vector<SparseVec> done;
    std::vector<int> done_col;
    while (!pending.empty()) {
        // pivot: smallest leading column, then fewest nonzeros
        size_t best = 0;
        for (size_t i = 1; i < pending.size(); ++i) {
            int lc = pending[i].front().first, bc = pending[best].front().first;
            if (lc < bc || (lc == bc && pending[i].size() < pending[best].size())) best = i;
        }
        SparseVec piv = std::move(pending[best]);
        pending[best] = std::move(pending.back());
        pending.pop_back();
        int col = piv.front().first;
        // rescale pivot to 1
        if (piv.front().second != 1) {
            Rational inv = 1 / piv.front().second;
            for (auto& [c, v] : piv) v *= inv;
        }
        // eliminate in pending rows
        for (auto& row : pending) {
            if (row.front().first != col) continue;
            row = sparse_axpy(-row.front().second, piv, row);
            sparse_normalize_content(row);
        }
        pending.erase(std::remove_if(pending.begin(), pending.end(),
                                     [](const SparseVec& r) { return r.empty(); }),
                      pending.end());
        // back-substitute into retired rows (full reduction)
        for (auto& row : done) {
            auto it = std::lower_bound(row.begin(), row.end(), col,
                                       [](const auto& p, int c) { return p.first < c; });
            if (it != row.end() && it->first == col) row = sparse_axpy(-it->second, piv, row);
        }
        done.push_back(std::move(piv));
        done_col.push_back(col);
    }
    // order echelon rows by pivot column
    std::vector<size_t> order(done.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return done_col[a] < done_col[b]; });
    Rref out;
    out.cols = m.cols();
    out.rows.reserve(done.size());
    out.pivot_col.reserve(done.size());
    for (size_t i : order) {
        out.rows.push_back(std::move(done[i]));
        out.pivot_col.push_back(done_col[i]);
    }
    return out;
}

inline int rank(const SparseMatrix& m) { return rref(m).rank(); }

// basis of {x : m*x = 0}, one sparse column per free column
inline std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
    Rref r = rref(m);
    std::vector<SparseVec> out;
    for (int c = 0; c < m.cols(); ++c) {
        if (r.is_pivot(c)) continue;
        SparseVec v;
        for (size_t i = 0; i < r.rows.size(); ++i) {
            auto it = std::lower_bound(r.rows[i].begin(), r.rows[i].end(), c,
                                       [](const auto& p, int col) { return p.first < col; });
            if (it != r.rows[i].end() && it->first == c)
                v.emplace_back(r.pivot_col[i], -it->second);
        }
        v.emplace_back(c, rat(1));
        std::sort(v.begin(), v.end());
        out.push_back(std::move(v));
    }
    return out;
}

// solve a*x = b for each column b of rhs; nullopt if any system is
// inconsistent.  Solutions set free variables to zero.
inline std::optional<std::vector<SparseVec>> solve_columns(const SparseMatrix& a,
                                                           const std::vector<SparseVec>& rhs) {
    SparseMatrix aug = a;
    aug.augment(SparseMatrix::from_columns(a.rows(), rhs));
    Rref r = rref(aug);
    const int n = a.cols();
    for (int c : r.pivot_col)
        if (c >= n) return std::nullopt;
    std::vector<SparseVec> sols(rhs.size());
    for (size_t i = 0; i < r.rows.size(); ++i) {
        for (const auto& [c, v] : r.rows[i]) {
            if (c >= n) sols[c - n].emplace_back(r.pivot_col[i], v);
        }
    }
    for (auto& s : sols) std::sort(s.begin(), s.end());
    return sols;
}

}  // namespace hhh
