#pragma once

// Finite-dimensional unital associative algebras presented by structure
// constants, together with a distinguished complete set of primitive
// orthogonal idempotents. Radical computations follow the trace-form
// criterion, valid in characteristic 0 and in characteristic p > dim; inputs
// outside that range must supply the radical (bound quiver compilation does)
// or are rejected rather than risking a wrong answer.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "qh/subspace.hpp"

namespace qh {

template <ScalarField K>
struct Algebra {
    Field<K> fld;
    size_t dim = 0;
    std::vector<std::string> labels;
    // sc[a][b] = coordinate vector of basis_a * basis_b
    std::vector<std::vector<Vec<K>>> sc;
    Vec<K> unit;
    std::vector<Vec<K>> idems;

    // filled by finalize()/validate_algebra()
    std::optional<Subspace<K>> radical;
    bool validated = false;
    bool split_basic = false;
    std::vector<Matrix<K>> lmul;           // e_a * x == x * lmul[a]
    std::vector<Matrix<K>> rmul;           // x * e_b == x * rmul[b]
    std::vector<size_t> right_proj_dims;   // dim(e_i A) per class
    std::vector<size_t> left_proj_dims;    // dim(A e_i) per class

    size_t n_classes() const { return idems.size(); }

    Vec<K> mul(const Vec<K>& x, const Vec<K>& y) const {
        Vec<K> out(dim, fld.zero());
        for (size_t a = 0; a < dim; ++a) {
            if (x[a].is_zero()) continue;
            for (size_t b = 0; b < dim; ++b) {
                if (y[b].is_zero()) continue;
                K c = x[a] * y[b];
                const Vec<K>& s = sc[a][b];
                for (size_t j = 0; j < dim; ++j)
                    if (!s[j].is_zero()) out[j] += c * s[j];
            }
        }
        return out;
    }

    Vec<K> class_idem(size_t i) const { return idems[i]; }

    /// Sum of the primitive idempotents with indices in `support`.
    Vec<K> sub_sum(const std::vector<int>& support) const {
        Vec<K> v(dim, fld.zero());
        for (int i : support) {
            require(i >= 0 && static_cast<size_t>(i) < idems.size(), "sub_sum: bad class index");
            v = vec_add(std::move(v), idems[static_cast<size_t>(i)]);
        }
        return v;
    }

    std::string scalar_str(const K& x) const { return fld.str(x); }

    std::string vec_str(const Vec<K>& v) const {
        std::vector<std::string> parts;
        for (const K& x : v) parts.push_back(fld.str(x));
        return "(" + join(parts, ",") + ")";
    }

    /// Deterministic content hash over field, dimension, structure constants,
    /// unit and idempotents (labels excluded).
    std::string hash() const {
        std::string s = std::to_string(fld.characteristic()) + "|" + std::to_string(dim) + "|";
        for (size_t a = 0; a < dim; ++a)
            for (size_t b = 0; b < dim; ++b) s += vec_str(sc[a][b]);
        s += "|" + vec_str(unit) + "|";
        for (const auto& e : idems) s += vec_str(e);
        return hex64(fnv1a(s));
    }

    /// Rebuilds multiplication caches and per-class projective dimensions.
    void finalize() {
        require(sc.size() == dim, "Algebra: structure constant table has wrong size");
        for (auto& row : sc) {
            require(row.size() == dim, "Algebra: structure constant table has wrong size");
            for (auto& v : row) require(v.size() == dim, "Algebra: structure constant vector length");
        }
        require(unit.size() == dim, "Algebra: unit vector length");
        lmul.clear();
        rmul.clear();
        for (size_t a = 0; a < dim; ++a) {
            Matrix<K> lm(fld, dim, dim), rm(fld, dim, dim);
            for (size_t i = 0; i < dim; ++i)
                for (size_t j = 0; j < dim; ++j) {
                    lm(i, j) = sc[a][i][j];
                    rm(i, j) = sc[i][a][j];
                }
            lmul.push_back(std::move(lm));
            rmul.push_back(std::move(rm));
        }
        right_proj_dims.assign(idems.size(), 0);
        left_proj_dims.assign(idems.size(), 0);
        for (size_t i = 0; i < idems.size(); ++i) {
            Subspace<K> r(fld, dim), l(fld, dim);
            for (size_t b = 0; b < dim; ++b) {
                r.insert(mul(idems[i], unit_vec(fld, dim, b)));
                l.insert(mul(unit_vec(fld, dim, b), idems[i]));
            }
            right_proj_dims[i] = r.dim();
            left_proj_dims[i] = l.dim();
        }
    }
};

template <ScalarField K>
struct TwoSidedIdeal {
    Subspace<K> space;
};

template <ScalarField K>
struct Idempotent {
    Vec<K> vec;
    std::optional<std::vector<int>> support;  // set when e is a sub-sum

    static Idempotent sub_sum(const Algebra<K>& a, std::vector<int> classes) {
        std::sort(classes.begin(), classes.end());
        return Idempotent{a.sub_sum(classes), classes};
    }
    static Idempotent one(const Algebra<K>& a) {
        std::vector<int> all(a.n_classes());
        for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        return sub_sum(a, all);
    }
};

template <ScalarField K>
bool is_idempotent_element(const Algebra<K>& a, const Vec<K>& e) {
    return a.mul(e, e) == e;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct ValidationReport {
    struct Item {
        std::string check;
        bool pass;
        std::string detail;
    };
    std::vector<Item> items;

    bool ok() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
    void add(const std::string& check, bool pass, const std::string& detail = "") {
        items.push_back({check, pass, detail});
    }
    std::string summary() const {
        std::string s;
        for (const auto& it : items) {
            s += (it.pass ? "[pass] " : "[FAIL] ") + it.check;
            if (!it.detail.empty()) s += ": " + it.detail;
            s += "\n";
        }
        return s;
    }
};

template <ScalarField K>
bool subspace_is_ideal(const Algebra<K>& a, const Subspace<K>& s) {
    for (size_t i = 0; i < s.dim(); ++i) {
        Vec<K> v = s.basis_vector(i);
        for (size_t b = 0; b < a.dim; ++b) {
            if (!s.contains(vec_mat(v, a.lmul[b]))) return false;
            if (!s.contains(vec_mat(v, a.rmul[b]))) return false;
        }
    }
    return true;
}

template <ScalarField K>
bool subspace_is_nilpotent(const Algebra<K>& a, const Subspace<K>& s, size_t* steps = nullptr) {
    Subspace<K> cur = s;
    size_t k = 1;
    while (cur.dim() > 0) {
        if (k > a.dim + 1) return false;
        Subspace<K> next(a.fld, a.dim);
        for (size_t i = 0; i < cur.dim(); ++i)
            for (size_t j = 0; j < s.dim(); ++j)
                next.insert(a.mul(cur.basis_vector(i), s.basis_vector(j)));
        if (next.dim() >= cur.dim()) return false;  // stalled: not nilpotent
        cur = std::move(next);
        ++k;
    }
    if (steps) *steps = k;
    return true;
}

// forward declarations used by validation internals
template <ScalarField K>
Subspace<K> radical_by_trace(const Algebra<K>& a);

namespace detail {

/// Quotient structure constants on the canonical rref-complement basis,
/// without any validation; used inside validate_algebra before the parent is
/// marked valid.
template <ScalarField K>
struct RawQuotient {
    Algebra<K> alg;
    Matrix<K> proj;               // dim(A) x dim(Q), row convention
    std::vector<size_t> coords;   // surviving parent coordinates
};

template <ScalarField K>
RawQuotient<K> quotient_raw(const Algebra<K>& a, const Subspace<K>& ideal) {
    const Field<K>& f = a.fld;
    std::vector<bool> is_pivot(a.dim, false);
    for (size_t p : ideal.pivots()) is_pivot[p] = true;
    std::vector<size_t> coords;
    for (size_t j = 0; j < a.dim; ++j)
        if (!is_pivot[j]) coords.push_back(j);
    size_t q = coords.size();
    Matrix<K> proj(f, a.dim, q);
    for (size_t i = 0; i < a.dim; ++i) {
        Vec<K> red = ideal.reduce(unit_vec(f, a.dim, i));
        for (size_t k = 0; k < q; ++k) proj(i, k) = red[coords[k]];
    }
    Algebra<K> out;
    out.fld = f;
    out.dim = q;
    for (size_t k = 0; k < q; ++k) out.labels.push_back(a.labels[coords[k]]);
    out.sc.assign(q, std::vector<Vec<K>>(q, zero_vec(f, q)));
    for (size_t x = 0; x < q; ++x)
        for (size_t y = 0; y < q; ++y)
            out.sc[x][y] = vec_mat(a.sc[coords[x]][coords[y]], proj);
    out.unit = vec_mat(a.unit, proj);
    return {std::move(out), std::move(proj), std::move(coords)};
}

}  // namespace detail

/// Full axiom check: associativity, unit law, idempotent axioms,
/// split-primitivity, radical postconditions. On success the algebra is
/// finalized (caches, radical, flags); a failed report leaves it unusable for
/// downstream operations.
template <ScalarField K>
ValidationReport validate_algebra(Algebra<K>& a) {
    ValidationReport rep;
    a.validated = false;
    a.split_basic = false;

    bool shape_ok = a.sc.size() == a.dim && a.unit.size() == a.dim;
    for (const auto& row : a.sc) {
        shape_ok = shape_ok && row.size() == a.dim;
        for (const auto& v : row) shape_ok = shape_ok && v.size() == a.dim;
    }
    for (const auto& e : a.idems) shape_ok = shape_ok && e.size() == a.dim;
    rep.add("shape", shape_ok, shape_ok ? "" : "table/vector sizes inconsistent");
    if (!shape_ok) return rep;

    a.finalize();

    // unit law on basis elements
    {
        bool ok = true;
        std::string wit;
        for (size_t b = 0; b < a.dim && ok; ++b) {
            Vec<K> eb = unit_vec(a.fld, a.dim, b);
            if (a.mul(a.unit, eb) != eb || a.mul(eb, a.unit) != eb) {
                ok = false;
                wit = "unit fails on basis element " + std::to_string(b);
            }
        }
        rep.add("unit", ok, wit);
        if (!ok) return rep;
    }

    // associativity with witness triple
    {
        bool ok = true;
        std::string wit;
        for (size_t x = 0; x < a.dim && ok; ++x)
            for (size_t y = 0; y < a.dim && ok; ++y)
                for (size_t z = 0; z < a.dim && ok; ++z) {
                    Vec<K> left = a.mul(a.sc[x][y], unit_vec(a.fld, a.dim, z));
                    Vec<K> right = a.mul(unit_vec(a.fld, a.dim, x), a.sc[y][z]);
                    if (left != right) {
                        ok = false;
                        wit = "witness triple (" + std::to_string(x) + "," + std::to_string(y) +
                              "," + std::to_string(z) + ")";
                    }
                }
        rep.add("associativity", ok, wit);
        if (!ok) return rep;
    }

    // idempotent axioms: e_i^2 = e_i, e_i e_j = 0, sum = 1
    {
        bool ok = true;
        std::string wit;
        Vec<K> total(a.dim, a.fld.zero());
        for (size_t i = 0; i < a.idems.size() && ok; ++i) {
            if (a.mul(a.idems[i], a.idems[i]) != a.idems[i]) {
                ok = false;
                wit = "e_" + std::to_string(i) + " is not idempotent";
            }
            for (size_t j = 0; j < a.idems.size() && ok; ++j) {
                if (i == j) continue;
                if (!vec_is_zero(a.mul(a.idems[i], a.idems[j]))) {
                    ok = false;
                    wit = "e_" + std::to_string(i) + " e_" + std::to_string(j) + " != 0";
                }
            }
            total = vec_add(std::move(total), a.idems[i]);
        }
        if (ok && total != a.unit) {
            ok = false;
            wit = "idempotents do not sum to the unit";
        }
        rep.add("idempotents", ok, wit);
        if (!ok) return rep;
    }

    // radical: use the provided one (e.g. arrow ideal of a bound quiver) and
    // cross-check by trace when the characteristic permits, else compute
    long long p = a.fld.characteristic();
    bool trace_valid = (p == 0) || (static_cast<size_t>(p) > a.dim);
    {
        bool ok = true;
        std::string wit;
        if (a.radical) {
            if (trace_valid && !(radical_by_trace(a) == *a.radical)) {
                ok = false;
                wit = "provided radical disagrees with the trace criterion";
            }
        } else if (trace_valid) {
            a.radical = radical_by_trace(a);
        } else {
            ok = false;
            wit = "characteristic " + std::to_string(p) + " <= dim " + std::to_string(a.dim) +
                  ": trace criterion unavailable and no radical supplied";
        }
        if (ok && !subspace_is_ideal(a, *a.radical)) {
            ok = false;
            wit = "radical candidate is not a two-sided ideal";
        }
        if (ok && !subspace_is_nilpotent(a, *a.radical)) {
            ok = false;
            wit = "radical candidate is not nilpotent";
        }
        if (ok && trace_valid) {
            // the trace form of A/J must be nondegenerate
            auto rq = detail::quotient_raw(a, *a.radical);
            rq.alg.idems = {};
            rq.alg.finalize();
            Matrix<K> gram(a.fld, rq.alg.dim, rq.alg.dim);
            for (size_t x = 0; x < rq.alg.dim; ++x)
                for (size_t y = x; y < rq.alg.dim; ++y) {
                    K t = a.fld.zero();
                    for (size_t i = 0; i < rq.alg.dim; ++i)
                        for (size_t jj = 0; jj < rq.alg.dim; ++jj)
                            t += rq.alg.lmul[x](i, jj) * rq.alg.lmul[y](jj, i);
                    gram(x, y) = t;
                    gram(y, x) = t;
                }
            if (rank_of(gram) != rq.alg.dim) {
                ok = false;
                wit = "trace form on A/J is degenerate";
            }
        }
        rep.add("radical", ok, wit);
        if (!ok) return rep;
    }

    // split basic: images of the e_i in A/J must satisfy
    // dim e_i (A/J) e_j = delta_ij  (1-dimensional tops, pairwise distinct)
    {
        bool ok = true;
        std::string wit;
        auto rq = detail::quotient_raw(a, *a.radical);
        size_t total = 0;
        for (size_t i = 0; i < a.idems.size() && ok; ++i)
            for (size_t j = 0; j < a.idems.size() && ok; ++j) {
                Vec<K> ei = vec_mat(a.idems[i], rq.proj), ej = vec_mat(a.idems[j], rq.proj);
                Subspace<K> sp(a.fld, rq.alg.dim);
                for (size_t b = 0; b < rq.alg.dim; ++b)
                    sp.insert(rq.alg.mul(rq.alg.mul(ei, unit_vec(a.fld, rq.alg.dim, b)), ej));
                size_t d = sp.dim();
                total += d;
                if (i == j && d != 1) {
                    ok = false;
                    wit = "dim e_" + std::to_string(i) + "(A/J)e_" + std::to_string(i) + " = " +
                          std::to_string(d) + " (expected 1)";
                }
                if (i != j && d != 0) {
                    ok = false;
                    wit = "dim e_" + std::to_string(i) + "(A/J)e_" + std::to_string(j) + " = " +
                          std::to_string(d) + " (expected 0)";
                }
            }
        if (ok && total != rq.alg.dim) {
            ok = false;
            wit = "A/J is larger than the span of its Peirce components over the given classes";
        }
        rep.add("split_basic", ok, wit);
        a.split_basic = ok;
    }

    a.validated = rep.ok();
    return rep;
}

/// J(A) = { x : trace(L_x L_y) = 0 for all y }, the radical of the trace
/// form of the left regular representation. Requires characteristic 0 or
/// p > dim(A); callers outside that range get an error, never a wrong answer.
template <ScalarField K>
Subspace<K> radical_by_trace(const Algebra<K>& a) {
    long long p = a.fld.characteristic();
    require(p == 0 || static_cast<size_t>(p) > a.dim,
            "radical: characteristic too small for the trace criterion (p <= dim)");
    require(!a.lmul.empty() || a.dim == 0, "radical: algebra caches not built");
    Matrix<K> gram(a.fld, a.dim, a.dim);
    for (size_t x = 0; x < a.dim; ++x)
        for (size_t y = x; y < a.dim; ++y) {
            K t = a.fld.zero();
            for (size_t i = 0; i < a.dim; ++i)
                for (size_t j = 0; j < a.dim; ++j) t += a.lmul[x](i, j) * a.lmul[y](j, i);
            gram(x, y) = t;
            gram(y, x) = t;
        }
    Matrix<K> ker = kernel_basis(gram);
    Subspace<K> s(a.fld, a.dim);
    for (size_t i = 0; i < ker.rows(); ++i) s.insert(ker.row(i));
    return s;
}

/// Cached radical as a two-sided ideal (computing it on first use).
template <ScalarField K>
TwoSidedIdeal<K> radical_ideal(const Algebra<K>& a) {
    require(a.radical.has_value(), "radical: not available (algebra not validated)");
    return TwoSidedIdeal<K>{*a.radical};
}

// ---------------------------------------------------------------------------
// Constructions: opposite, generated ideals, quotients, corners, Peirce
// ---------------------------------------------------------------------------

template <ScalarField K>
Algebra<K> opposite(const Algebra<K>& a) {
    Algebra<K> op;
    op.fld = a.fld;
    op.dim = a.dim;
    op.labels = a.labels;
    op.sc.assign(a.dim, std::vector<Vec<K>>(a.dim, zero_vec(a.fld, a.dim)));
    for (size_t x = 0; x < a.dim; ++x)
        for (size_t y = 0; y < a.dim; ++y) op.sc[x][y] = a.sc[y][x];
    op.unit = a.unit;
    op.idems = a.idems;
    op.radical = a.radical;  // same subspace
    op.finalize();
    op.validated = a.validated;
    op.split_basic = a.split_basic;
    return op;
}

/// Smallest two-sided ideal containing the generators (closure by left/right
/// basis multiplications).
template <ScalarField K>
TwoSidedIdeal<K> ideal_generated(const Algebra<K>& a, const std::vector<Vec<K>>& gens) {
    auto step = [&a](const Vec<K>& v) {
        std::vector<Vec<K>> out;
        out.reserve(2 * a.dim);
        for (size_t b = 0; b < a.dim; ++b) {
            out.push_back(vec_mat(v, a.lmul[b]));
            out.push_back(vec_mat(v, a.rmul[b]));
        }
        return out;
    };
    return TwoSidedIdeal<K>{span_saturate<K>(a.fld, a.dim, gens, step)};
}

/// Span of pairwise products of ideal basis vectors (I*J as an ideal when I,
/// J are ideals).
template <ScalarField K>
Subspace<K> ideal_product(const Algebra<K>& a, const Subspace<K>& x, const Subspace<K>& y) {
    Subspace<K> out(a.fld, a.dim);
    for (size_t i = 0; i < x.dim(); ++i)
        for (size_t j = 0; j < y.dim(); ++j) out.insert(a.mul(x.basis_vector(i), y.basis_vector(j)));
    return out;
}

template <ScalarField K>
bool is_idempotent_ideal(const Algebra<K>& a, const TwoSidedIdeal<K>& i) {
    return ideal_product(a, i.space, i.space) == i.space;
}

template <ScalarField K>
struct QuotientResult {
    Algebra<K> alg;
    Matrix<K> proj;              // parent coords -> quotient coords (rows = parent dim)
    std::vector<int> class_map;  // quotient class -> parent class
};

/// A/I on the canonical rref-complement basis. Images of the parent
/// idempotents with nonzero image form the quotient's complete class set.
template <ScalarField K>
QuotientResult<K> quotient(const Algebra<K>& a, const TwoSidedIdeal<K>& ideal) {
    require(a.validated, "quotient: parent algebra not validated");
    require(subspace_is_ideal(a, ideal.space), "quotient: subspace is not a two-sided ideal");
    auto rq = detail::quotient_raw(a, ideal.space);
    Algebra<K> q = std::move(rq.alg);
    std::vector<int> class_map;
    for (size_t i = 0; i < a.idems.size(); ++i) {
        Vec<K> img = vec_mat(a.idems[i], rq.proj);
        if (vec_is_zero(img)) continue;
        q.idems.push_back(std::move(img));
        class_map.push_back(static_cast<int>(i));
    }
    require(a.radical.has_value(), "quotient: parent radical unavailable");
    Subspace<K> jq(q.fld, q.dim);
    for (size_t i = 0; i < a.radical->dim(); ++i)
        jq.insert(vec_mat(a.radical->basis_vector(i), rq.proj));
    q.radical = std::move(jq);
    q.finalize();
    q.validated = true;
    q.split_basic = a.split_basic;
    return {std::move(q), std::move(rq.proj), std::move(class_map)};
}

template <ScalarField K>
struct CornerResult {
    Algebra<K> alg;
    Matrix<K> incl;              // corner basis rows in parent coordinates
    std::vector<int> class_map;  // corner class -> parent class
};

/// Corner algebra eAe with unit e. The idempotent must be a sub-sum of the
/// distinguished complete set so the corner inherits canonical classes.
template <ScalarField K>
CornerResult<K> corner(const Algebra<K>& a, const Idempotent<K>& e) {
    require(a.validated, "corner: parent algebra not validated");
    require(!vec_is_zero(e.vec), "corner: e = 0");
    require(is_idempotent_element(a, e.vec), "corner: e is not idempotent");
    require(e.support.has_value(), "corner: idempotent must be a sub-sum of the complete set");
    Subspace<K> sp(a.fld, a.dim);
    for (size_t b = 0; b < a.dim; ++b)
        sp.insert(a.mul(a.mul(e.vec, unit_vec(a.fld, a.dim, b)), e.vec));
    size_t c = sp.dim();
    Algebra<K> out;
    out.fld = a.fld;
    out.dim = c;
    Matrix<K> incl(a.fld, c, a.dim);
    for (size_t i = 0; i < c; ++i) {
        Vec<K> bi = sp.basis_vector(i);
        for (size_t j = 0; j < a.dim; ++j) incl(i, j) = bi[j];
        out.labels.push_back(a.labels[sp.pivots()[i]]);
    }
    auto expr = [&sp](const Vec<K>& v) {
        auto coords = sp.coords_of(v);
        require(coords.has_value(), "corner: product escaped the Peirce component");
        return *coords;
    };
    out.sc.assign(c, std::vector<Vec<K>>(c, zero_vec(a.fld, c)));
    for (size_t x = 0; x < c; ++x)
        for (size_t y = 0; y < c; ++y)
            out.sc[x][y] = expr(a.mul(sp.basis_vector(x), sp.basis_vector(y)));
    out.unit = expr(e.vec);
    std::vector<int> cmap;
    for (int i : *e.support) {
        out.idems.push_back(expr(a.idems[static_cast<size_t>(i)]));
        cmap.push_back(i);
    }
    require(a.radical.has_value(), "corner: parent radical unavailable");
    Subspace<K> jc(a.fld, c);
    for (size_t i = 0; i < a.radical->dim(); ++i) {
        Vec<K> eje = a.mul(a.mul(e.vec, a.radical->basis_vector(i)), e.vec);
        auto coords = sp.coords_of(eje);
        require(coords.has_value(), "corner: eJe escaped the Peirce component");
        jc.insert(*coords);
    }
    out.radical = std::move(jc);
    out.finalize();
    out.validated = true;
    out.split_basic = a.split_basic;
    return {std::move(out), std::move(incl), std::move(cmap)};
}

/// Peirce component eAf.
template <ScalarField K>
Subspace<K> peirce(const Algebra<K>& a, const Vec<K>& e, const Vec<K>& f) {
    Subspace<K> sp(a.fld, a.dim);
    for (size_t b = 0; b < a.dim; ++b)
        sp.insert(a.mul(a.mul(e, unit_vec(a.fld, a.dim, b)), f));
    return sp;
}

template <ScalarField K>
bool structurally_equal(const Algebra<K>& a, const Algebra<K>& b) {
    if (!(a.fld == b.fld) || a.dim != b.dim || a.idems.size() != b.idems.size()) return false;
    for (size_t x = 0; x < a.dim; ++x)
        for (size_t y = 0; y < a.dim; ++y)
            if (!(a.sc[x][y] == b.sc[x][y])) return false;
    if (!(a.unit == b.unit)) return false;
    for (size_t i = 0; i < a.idems.size(); ++i)
        if (!(a.idems[i] == b.idems[i])) return false;
    return true;
}

}  // namespace qh
