#pragma once

// Subspaces of a coordinate space, stored as a reduced-row-echelon basis with
// strictly increasing pivots. Two equal subspaces therefore have identical
// stored bases, which makes every downstream construction canonical.

#include <functional>
#include <optional>
#include <vector>

#include "qh/matrix.hpp"

namespace qh {

template <ScalarField K>
class Subspace {
  public:
    Subspace(Field<K> fld, size_t ambient)
        : fld_(fld), ambient_(ambient), basis_(fld, 0, ambient), pivots_() {}

    static Subspace zero(Field<K> fld, size_t ambient) { return Subspace(fld, ambient); }

    static Subspace span(Field<K> fld, size_t ambient, const std::vector<Vec<K>>& vectors) {
        Subspace s(fld, ambient);
        for (const auto& v : vectors) s.insert(v);
        return s;
    }

    static Subspace full(Field<K> fld, size_t ambient) {
        Subspace s(fld, ambient);
        s.basis_ = Matrix<K>::identity(fld, ambient);
        s.pivots_.resize(ambient);
        for (size_t i = 0; i < ambient; ++i) s.pivots_[i] = i;
        return s;
    }

    size_t ambient_dim() const { return ambient_; }
    size_t dim() const { return basis_.rows(); }
    const Matrix<K>& basis() const { return basis_; }
    const Field<K>& field() const { return fld_; }
    Vec<K> basis_vector(size_t i) const { return basis_.row(i); }

    /// Residual of v after elimination against the basis; zero iff v lies in
    /// the subspace.
    Vec<K> reduce(Vec<K> v) const {
        require(v.size() == ambient_, "Subspace: ambient dimension mismatch");
        for (size_t i = 0; i < basis_.rows(); ++i) {
            const K& c = v[pivots_[i]];
            if (c.is_zero()) continue;
            K coef = c;  // pivot entries are 1
            for (size_t j = pivots_[i]; j < ambient_; ++j) v[j] -= coef * basis_(i, j);
        }
        return v;
    }

    bool contains(const Vec<K>& v) const { return vec_is_zero(reduce(v)); }

    bool contains(const Subspace& other) const {
        require(other.ambient_ == ambient_, "Subspace: ambient dimension mismatch");
        for (size_t i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_vector(i))) return false;
        return true;
    }

    /// Coefficients of v in the stored basis, or nullopt if v is outside.
    std::optional<Vec<K>> coords_of(const Vec<K>& v) const {
        require(v.size() == ambient_, "Subspace: ambient dimension mismatch");
        Vec<K> w = v;
        Vec<K> coeffs(basis_.rows(), fld_.zero());
        for (size_t i = 0; i < basis_.rows(); ++i) {
            const K& c = w[pivots_[i]];
            if (c.is_zero()) continue;
            coeffs[i] = c;
            for (size_t j = pivots_[i]; j < ambient_; ++j) w[j] -= coeffs[i] * basis_(i, j);
        }
        if (!vec_is_zero(w)) return std::nullopt;
        return coeffs;
    }

    /// Inserts v into the spanning set; returns true if the dimension grew.
    bool insert(const Vec<K>& v) {
        Vec<K> w = reduce(v);
        size_t lead = ambient_;
        for (size_t j = 0; j < ambient_; ++j)
            if (!w[j].is_zero()) {
                lead = j;
                break;
            }
        if (lead == ambient_) return false;
        K inv = w[lead].inv();
        for (size_t j = lead; j < ambient_; ++j) w[j] *= inv;
        // eliminate the new pivot column from existing rows, then insert in
        // pivot order
        for (size_t i = 0; i < basis_.rows(); ++i) {
            const K& c = basis_(i, lead);
            if (c.is_zero()) continue;
            K coef = c;
            for (size_t j = lead; j < ambient_; ++j) basis_(i, j) -= coef * w[j];
        }
        size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
        Matrix<K> nb(fld_, basis_.rows() + 1, ambient_);
        for (size_t i = 0; i < pos; ++i)
            for (size_t j = 0; j < ambient_; ++j) nb(i, j) = basis_(i, j);
        for (size_t j = 0; j < ambient_; ++j) nb(pos, j) = w[j];
        for (size_t i = pos; i < basis_.rows(); ++i)
            for (size_t j = 0; j < ambient_; ++j) nb(i + 1, j) = basis_(i, j);
        basis_ = std::move(nb);
        pivots_.insert(pivots_.begin() + static_cast<long>(pos), lead);
        return true;
    }

    const std::vector<size_t>& pivots() const { return pivots_; }

    Subspace sum(const Subspace& other) const {
        require(other.ambient_ == ambient_, "Subspace: ambient dimension mismatch");
        Subspace s = *this;
        for (size_t i = 0; i < other.dim(); ++i) s.insert(other.basis_vector(i));
        return s;
    }

    Subspace intersect(const Subspace& other) const {
        require(other.ambient_ == ambient_, "Subspace: ambient dimension mismatch");
        // solve a*U + b*V = 0; intersection is spanned by the a*U parts
        size_t p = dim(), q = other.dim();
        Matrix<K> stacked(fld_, ambient_, p + q);
        for (size_t i = 0; i < p; ++i)
            for (size_t j = 0; j < ambient_; ++j) stacked(j, i) = basis_(i, j);
        for (size_t i = 0; i < q; ++i)
            for (size_t j = 0; j < ambient_; ++j) stacked(j, p + i) = other.basis_(i, j);
        Matrix<K> ker = kernel_basis(stacked);
        Subspace result(fld_, ambient_);
        for (size_t r = 0; r < ker.rows(); ++r) {
            Vec<K> v(ambient_, fld_.zero());
            for (size_t i = 0; i < p; ++i) {
                if (ker(r, i).is_zero()) continue;
                for (size_t j = 0; j < ambient_; ++j) v[j] += ker(r, i) * basis_(i, j);
            }
            result.insert(v);
        }
        return result;
    }

    bool operator==(const Subspace& other) const {
        return ambient_ == other.ambient_ && basis_ == other.basis_;
    }

  private:
    Field<K> fld_;
    size_t ambient_;
    Matrix<K> basis_;  // rref rows
    std::vector<size_t> pivots_;
};

/// Smallest subspace containing `seed` and closed under the linear `step`
/// map. Terminates because the dimension grows strictly every round and is
/// bounded by the ambient dimension.
template <ScalarField K>
Subspace<K> span_saturate(Field<K> fld, size_t ambient, const std::vector<Vec<K>>& seed,
                          const std::function<std::vector<Vec<K>>(const Vec<K>&)>& step) {
    Subspace<K> s = Subspace<K>::span(fld, ambient, seed);
    std::vector<Vec<K>> frontier;
    for (size_t i = 0; i < s.dim(); ++i) frontier.push_back(s.basis_vector(i));
    while (!frontier.empty()) {
        std::vector<Vec<K>> next;
        for (const auto& v : frontier)
            for (auto& w : step(v))
                if (s.insert(w)) next.push_back(std::move(w));
        frontier = std::move(next);
    }
    return s;
}

/// Image of a subspace under a row-convention linear map (ambient -> cols of m).
template <ScalarField K>
Subspace<K> image_under(const Subspace<K>& s, const Matrix<K>& m) {
    Subspace<K> out(s.field(), m.cols());
    for (size_t i = 0; i < s.dim(); ++i) out.insert(vec_mat(s.basis_vector(i), m));
    return out;
}

template <ScalarField K>
struct RrefKernelResult {
    Matrix<K> rref;
    size_t rank;
    Subspace<K> kernel;  // {x : M x = 0}, canonical basis
};

/// Reduced row echelon form, rank, and kernel in one call;
/// rank + dim(kernel) = cols.
template <ScalarField K>
RrefKernelResult<K> rref_kernel(const Matrix<K>& m) {
    RrefResult<K> r = rref(m);
    Matrix<K> kb = kernel_basis(m);
    Subspace<K> ker(m.field(), m.cols());
    for (size_t i = 0; i < kb.rows(); ++i) ker.insert(kb.row(i));
    return {std::move(r.rref), r.rank, std::move(ker)};
}

}  // namespace qh
