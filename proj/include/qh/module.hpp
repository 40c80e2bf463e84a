#pragma once

// Right modules over a structure-constant algebra, projectivity via
// projective-cover dimension counting (sound for split basic algebras, which
// validation enforces upstream), balanced tensor products of bimodule slices,
// and the multiplication-map isomorphism checks used by the heredity layer.
//
// Left modules are handled uniformly through the opposite algebra: a left
// A-module is a right module whose action matrices multiply by basis elements
// on the left, used together with opposite(A). There is no separate
// left-module code path.

#include <vector>

#include "qh/algebra.hpp"

namespace qh {

template <ScalarField K>
struct RightModule {
    size_t dim = 0;
    std::vector<Matrix<K>> act;  // per algebra basis element, row convention
};

enum class Side { Right, Left };

template <ScalarField K>
Matrix<K> action_of(const Algebra<K>& a, const RightModule<K>& m, const Vec<K>& x) {
    Matrix<K> out(a.fld, m.dim, m.dim);
    for (size_t b = 0; b < a.dim; ++b) {
        if (x[b].is_zero()) continue;
        for (size_t i = 0; i < m.dim; ++i)
            for (size_t j = 0; j < m.dim; ++j) out(i, j) += x[b] * m.act[b](i, j);
    }
    return out;
}

/// act(a)act(b) = act(a*b) and act(1) = id.
template <ScalarField K>
bool module_action_valid(const Algebra<K>& a, const RightModule<K>& m) {
    if (m.act.size() != a.dim) return false;
    for (const auto& mt : m.act)
        if (mt.rows() != m.dim || mt.cols() != m.dim) return false;
    if (!(action_of(a, m, a.unit) == Matrix<K>::identity(a.fld, m.dim))) return false;
    for (size_t x = 0; x < a.dim; ++x)
        for (size_t y = 0; y < a.dim; ++y)
            if (!(m.act[x] * m.act[y] == action_of(a, m, a.sc[x][y]))) return false;
    return true;
}

/// Module structure on a subspace of A closed under the chosen multiplication
/// side, with the embedding recorded (rows = basis vectors in A coordinates).
template <ScalarField K>
struct EmbeddedModule {
    RightModule<K> mod;
    Matrix<K> emb;
};

template <ScalarField K>
EmbeddedModule<K> module_on_subspace(const Algebra<K>& a, const Subspace<K>& s, Side side) {
    EmbeddedModule<K> out{{s.dim(), {}}, Matrix<K>(a.fld, s.dim(), a.dim)};
    for (size_t i = 0; i < s.dim(); ++i) {
        Vec<K> v = s.basis_vector(i);
        for (size_t j = 0; j < a.dim; ++j) out.emb(i, j) = v[j];
    }
    for (size_t b = 0; b < a.dim; ++b) {
        Matrix<K> mt(a.fld, s.dim(), s.dim());
        Vec<K> eb = unit_vec(a.fld, a.dim, b);
        for (size_t i = 0; i < s.dim(); ++i) {
            Vec<K> w = side == Side::Right ? a.mul(s.basis_vector(i), eb)
                                           : a.mul(eb, s.basis_vector(i));
            auto coords = s.coords_of(w);
            require(coords.has_value(), "module_on_subspace: subspace not closed under action");
            for (size_t j = 0; j < s.dim(); ++j) mt(i, j) = (*coords)[j];
        }
        out.mod.act.push_back(std::move(mt));
    }
    return out;
}

/// An ideal as a right module over A, or as a left module (pair the result
/// with opposite(A) for all right-module operations).
template <ScalarField K>
RightModule<K> module_of_ideal(const Algebra<K>& a, const TwoSidedIdeal<K>& i, Side side) {
    return module_on_subspace(a, i.space, side).mod;
}

template <ScalarField K>
RightModule<K> regular_module(const Algebra<K>& a) {
    RightModule<K> m{a.dim, {}};
    for (size_t b = 0; b < a.dim; ++b) m.act.push_back(a.rmul[b]);
    return m;
}

// ---------------------------------------------------------------------------
// Tops and projectivity
// ---------------------------------------------------------------------------

/// m_i = dim((M/MJ) e_i). The sum over i equals dim(M/MJ).
template <ScalarField K>
std::vector<size_t> top_multiplicities(const Algebra<K>& a, const RightModule<K>& m) {
    require(a.validated && a.radical.has_value(), "top_multiplicities: algebra not validated");
    require(a.split_basic, "top_multiplicities: algebra is not split basic");
    const Field<K>& f = a.fld;
    Subspace<K> mj(f, m.dim);
    for (size_t r = 0; r < a.radical->dim(); ++r) {
        Matrix<K> actj = action_of(a, m, a.radical->basis_vector(r));
        for (size_t i = 0; i < m.dim; ++i) mj.insert(actj.row(i));
    }
    std::vector<bool> is_pivot(m.dim, false);
    for (size_t p : mj.pivots()) is_pivot[p] = true;
    std::vector<size_t> top_coords;
    for (size_t j = 0; j < m.dim; ++j)
        if (!is_pivot[j]) top_coords.push_back(j);
    size_t q = top_coords.size();
    std::vector<size_t> mult(a.n_classes(), 0);
    size_t total = 0;
    for (size_t c = 0; c < a.n_classes(); ++c) {
        Matrix<K> acte = action_of(a, m, a.idems[c]);
        Matrix<K> induced(f, q, q);
        for (size_t u = 0; u < q; ++u) {
            Vec<K> img = mj.reduce(acte.row(top_coords[u]));
            for (size_t v = 0; v < q; ++v) induced(u, v) = img[top_coords[v]];
        }
        mult[c] = rank_of(induced);
        total += mult[c];
    }
    require(total == q, "top_multiplicities: top does not split over the classes");
    return mult;
}

/// Projective cover dimension test: M is projective iff
/// dim M = sum_i m_i * dim(e_i A). The cover always surjects, so equality of
/// dimensions forces the cover map to be an isomorphism.
template <ScalarField K>
bool is_projective(const Algebra<K>& a, const RightModule<K>& m) {
    std::vector<size_t> mult = top_multiplicities(a, m);
    size_t cover = 0;
    for (size_t c = 0; c < a.n_classes(); ++c) cover += mult[c] * a.right_proj_dims[c];
    require(cover >= m.dim, "is_projective: cover smaller than the module (invalid input)");
    return cover == m.dim;
}

/// Membership test: AeA lies in Add(eA) iff it is projective and
/// its top only involves classes appearing in top(eA) (= the support of e for
/// a sub-sum).
struct AddMembership {
    bool right_projective;
    bool in_add;  // meaningful only when right_projective
};

template <ScalarField K>
AddMembership add_membership_check(const Algebra<K>& a, const Vec<K>& e) {
    Subspace<K> aea = ideal_generated(a, {e}).space;
    auto em = module_on_subspace(a, aea, Side::Right);
    bool proj = is_projective(a, em.mod);
    if (!proj) return {false, false};
    // top(eA)
    Subspace<K> ea(a.fld, a.dim);
    for (size_t b = 0; b < a.dim; ++b) ea.insert(a.mul(e, unit_vec(a.fld, a.dim, b)));
    auto eam = module_on_subspace(a, ea, Side::Right);
    std::vector<size_t> top_ea = top_multiplicities(a, eam.mod);
    std::vector<size_t> top_aea = top_multiplicities(a, em.mod);
    for (size_t c = 0; c < a.n_classes(); ++c)
        if (top_aea[c] > 0 && top_ea[c] == 0) return {true, false};
    return {true, true};
}

// ---------------------------------------------------------------------------
// Balanced tensor products
// ---------------------------------------------------------------------------

/// (M tensor_k N) / span{ mc x n - m x cn : c in basis(C) } for a right
/// C-module M and left C-module N, both given by action matrices over C's
/// basis. Coordinates: (i, j) -> i * dim_n + j.
template <ScalarField K>
struct BalancedTensor {
    size_t dim_m = 0, dim_n = 0;
    Subspace<K> balancing;
    size_t dim() const { return dim_m * dim_n - balancing.dim(); }
};

template <ScalarField K>
BalancedTensor<K> tensor_balanced(const Field<K>& f, size_t cdim,
                                  const std::vector<Matrix<K>>& right_act_m, size_t dim_m,
                                  const std::vector<Matrix<K>>& left_act_n, size_t dim_n) {
    require(right_act_m.size() == cdim && left_act_n.size() == cdim,
            "tensor_balanced: action table size mismatch");
    BalancedTensor<K> t{dim_m, dim_n, Subspace<K>(f, dim_m * dim_n)};
    for (size_t c = 0; c < cdim; ++c)
        for (size_t i = 0; i < dim_m; ++i)
            for (size_t j = 0; j < dim_n; ++j) {
                Vec<K> gen(dim_m * dim_n, f.zero());
                for (size_t k = 0; k < dim_m; ++k) {
                    const K& x = right_act_m[c](i, k);
                    if (!x.is_zero()) gen[k * dim_n + j] += x;
                }
                for (size_t l = 0; l < dim_n; ++l) {
                    const K& x = left_act_n[c](j, l);
                    if (!x.is_zero()) gen[i * dim_n + l] -= x;
                }
                t.balancing.insert(gen);
            }
    return t;
}

/// Checks whether a map defined on pure tensors (full_map row (i*dim_n + j) =
/// image of m_i x n_j) kills the balancing subspace and induces a bijection
/// from the balanced tensor product onto its image.
struct MapIsoReport {
    bool iso = false;
    size_t tensor_dim = 0;
    size_t image_dim = 0;
    bool balanced = false;  // balancing subspace mapped to zero
};

template <ScalarField K>
MapIsoReport check_induced_iso(const BalancedTensor<K>& t, const Matrix<K>& full_map) {
    MapIsoReport rep;
    rep.tensor_dim = t.dim();
    rep.balanced = true;
    for (size_t i = 0; i < t.balancing.dim(); ++i)
        if (!vec_is_zero(vec_mat(t.balancing.basis_vector(i), full_map))) rep.balanced = false;
    rep.image_dim = rank_of(full_map);
    rep.iso = rep.balanced && rep.image_dim == rep.tensor_dim;
    return rep;
}

/// Bijectivity of the multiplication map mu: Ae (x)_{eAe} eA -> AeA.
template <ScalarField K>
MapIsoReport mu_map_check(const Algebra<K>& a, const Vec<K>& e) {
    const Field<K>& f = a.fld;
    Subspace<K> ae(f, a.dim), ea(f, a.dim);
    for (size_t b = 0; b < a.dim; ++b) {
        Vec<K> eb = unit_vec(f, a.dim, b);
        ae.insert(a.mul(eb, e));
        ea.insert(a.mul(e, eb));
    }
    Subspace<K> corner_space = peirce(a, e, e);
    size_t cdim = corner_space.dim();
    std::vector<Matrix<K>> ract, lact;
    for (size_t c = 0; c < cdim; ++c) {
        Vec<K> cv = corner_space.basis_vector(c);
        Matrix<K> rm(f, ae.dim(), ae.dim()), lm(f, ea.dim(), ea.dim());
        for (size_t i = 0; i < ae.dim(); ++i) {
            auto coords = ae.coords_of(a.mul(ae.basis_vector(i), cv));
            require(coords.has_value(), "mu_map_check: Ae not closed under eAe");
            for (size_t j = 0; j < ae.dim(); ++j) rm(i, j) = (*coords)[j];
        }
        for (size_t i = 0; i < ea.dim(); ++i) {
            auto coords = ea.coords_of(a.mul(cv, ea.basis_vector(i)));
            require(coords.has_value(), "mu_map_check: eA not closed under eAe");
            for (size_t j = 0; j < ea.dim(); ++j) lm(i, j) = (*coords)[j];
        }
        ract.push_back(std::move(rm));
        lact.push_back(std::move(lm));
    }
    BalancedTensor<K> t = tensor_balanced(f, cdim, ract, ae.dim(), lact, ea.dim());
    Matrix<K> full(f, ae.dim() * ea.dim(), a.dim);
    for (size_t i = 0; i < ae.dim(); ++i)
        for (size_t j = 0; j < ea.dim(); ++j) {
            Vec<K> prod = a.mul(ae.basis_vector(i), ea.basis_vector(j));
            for (size_t kk = 0; kk < a.dim; ++kk) full(i * ea.dim() + j, kk) = prod[kk];
        }
    return check_induced_iso(t, full);
}

/// Bijectivity of the multiplication map nu: AeA (x)_A AfA -> AeAfA.
template <ScalarField K>
MapIsoReport nu_map_check(const Algebra<K>& a, const Vec<K>& e, const Vec<K>& f_idem) {
    const Field<K>& f = a.fld;
    Subspace<K> aea = ideal_generated(a, {e}).space;
    Subspace<K> afa = ideal_generated(a, {f_idem}).space;
    auto m_right = module_on_subspace(a, aea, Side::Right);
    auto n_left = module_on_subspace(a, afa, Side::Left);
    BalancedTensor<K> t =
        tensor_balanced(f, a.dim, m_right.mod.act, aea.dim(), n_left.mod.act, afa.dim());
    Matrix<K> full(f, aea.dim() * afa.dim(), a.dim);
    for (size_t i = 0; i < aea.dim(); ++i)
        for (size_t j = 0; j < afa.dim(); ++j) {
            Vec<K> prod = a.mul(aea.basis_vector(i), afa.basis_vector(j));
            for (size_t kk = 0; kk < a.dim; ++kk) full(i * afa.dim() + j, kk) = prod[kk];
        }
    return check_induced_iso(t, full);
}

}  // namespace qh
