#pragma once

// Dense matrices over an exact scalar with deterministic Gauss-Jordan
// elimination. Pivot selection is always the first nonzero entry in column
// order, so reduced forms (and everything derived from them downstream:
// canonical subspace bases, quotient bases, certificates) are reproducible.

#include <cstddef>
#include <optional>
#include <vector>

#include "qh/scalar.hpp"
#include "qh/util.hpp"

namespace qh {

template <ScalarField K>
using Vec = std::vector<K>;

template <ScalarField K>
class Matrix {
  public:
    Matrix() : fld_(), rows_(0), cols_(0) {}
    Matrix(Field<K> fld, size_t rows, size_t cols)
        : fld_(fld), rows_(rows), cols_(cols), a_(rows * cols, fld.zero()) {}

    static Matrix identity(Field<K> fld, size_t n) {
        Matrix m(fld, n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = fld.one();
        return m;
    }

    static Matrix from_rows(Field<K> fld, size_t cols, const std::vector<Vec<K>>& rows) {
        Matrix m(fld, rows.size(), cols);
        for (size_t i = 0; i < rows.size(); ++i) {
            require(rows[i].size() == cols, "Matrix: row length mismatch");
            for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const Field<K>& field() const { return fld_; }

    K& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const K& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    Vec<K> row(size_t i) const {
        Vec<K> r(a_.begin() + static_cast<long>(i * cols_),
                 a_.begin() + static_cast<long>((i + 1) * cols_));
        return r;
    }

    Matrix transpose() const {
        Matrix t(fld_, cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        require(cols_ == o.rows_, "Matrix: dimension mismatch in product");
        Matrix r(fld_, rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const K& x = (*this)(i, k);
                if (x.is_zero()) continue;
                for (size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "Matrix: shape mismatch in sum");
        Matrix r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }

    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (size_t i = 0; i < a_.size(); ++i)
            if (!(a_[i] == o.a_[i])) return false;
        return true;
    }

    bool is_zero() const {
        for (const K& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    K trace() const {
        require(rows_ == cols_, "Matrix: trace of non-square matrix");
        K t = fld_.zero();
        for (size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

  private:
    Field<K> fld_;
    size_t rows_, cols_;
    std::vector<K> a_;
};

// row-vector times matrix
template <ScalarField K>
Vec<K> vec_mat(const Vec<K>& v, const Matrix<K>& m) {
    require(v.size() == m.rows(), "vec_mat: dimension mismatch");
    Vec<K> r(m.cols(), m.field().zero());
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        for (size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m(i, j);
    }
    return r;
}

template <ScalarField K>
Vec<K> vec_add(Vec<K> a, const Vec<K>& b) {
    require(a.size() == b.size(), "vec_add: length mismatch");
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

template <ScalarField K>
Vec<K> vec_sub(Vec<K> a, const Vec<K>& b) {
    require(a.size() == b.size(), "vec_sub: length mismatch");
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

template <ScalarField K>
Vec<K> vec_scale(Vec<K> a, const K& c) {
    for (K& x : a) x *= c;
    return a;
}

template <ScalarField K>
bool vec_is_zero(const Vec<K>& a) {
    for (const K& x : a)
        if (!x.is_zero()) return false;
    return true;
}

template <ScalarField K>
Vec<K> zero_vec(const Field<K>& f, size_t n) {
    return Vec<K>(n, f.zero());
}

template <ScalarField K>
Vec<K> unit_vec(const Field<K>& f, size_t n, size_t i) {
    Vec<K> v(n, f.zero());
    v[i] = f.one();
    return v;
}

template <ScalarField K>
struct RrefResult {
    Matrix<K> rref;
    size_t rank;
    std::vector<size_t> pivots;  // pivot column of each of the first `rank` rows
};

/// Unique reduced row echelon form; pivots are the first nonzero entry per
/// column, scanned left to right.
template <ScalarField K>
RrefResult<K> rref(Matrix<K> m) {
    size_t rank = 0;
    std::vector<size_t> pivots;
    for (size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        size_t sel = rank;
        while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != rank)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(rank, j));
        K piv = m(rank, col).inv();
        for (size_t j = col; j < m.cols(); ++j) m(rank, j) *= piv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == rank || m(i, col).is_zero()) continue;
            K c = m(i, col);
            for (size_t j = col; j < m.cols(); ++j) m(i, j) -= c * m(rank, j);
        }
        pivots.push_back(col);
        ++rank;
    }
    return {std::move(m), rank, std::move(pivots)};
}

/// Basis of {x : M x^T = 0} (i.e. of the kernel of the map v -> M v), one row
/// per free column of rref(M), itself in reduced row echelon form.
template <ScalarField K>
Matrix<K> kernel_basis(const Matrix<K>& m) {
    RrefResult<K> r = rref(m);
    const Field<K>& f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : r.pivots) is_pivot[p] = true;
    std::vector<Vec<K>> rows;
    for (size_t j = 0; j < m.cols(); ++j) {
        if (is_pivot[j]) continue;
        Vec<K> v(m.cols(), f.zero());
        v[j] = f.one();
        for (size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.rref(i, j);
        rows.push_back(std::move(v));
    }
    // rows are independent; reduce once more for the canonical form
    return rref(Matrix<K>::from_rows(f, m.cols(), rows)).rref;
}

template <ScalarField K>
size_t rank_of(const Matrix<K>& m) {
    return rref(m).rank;
}

/// One solution of M x = b (column convention), free variables set to zero;
/// nullopt when inconsistent.
template <ScalarField K>
std::optional<Vec<K>> solve(const Matrix<K>& m, const Vec<K>& b) {
    require(b.size() == m.rows(), "solve: rhs length mismatch");
    const Field<K>& f = m.field();
    Matrix<K> aug(f, m.rows(), m.cols() + 1);
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    RrefResult<K> r = rref(aug);
    for (size_t i = 0; i < r.rank; ++i)
        if (r.pivots[i] == m.cols()) return std::nullopt;  // 0 = 1 row
    Vec<K> x(m.cols(), f.zero());
    for (size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.rref(i, m.cols());
    return x;
}

}  // namespace qh
