#pragma once

// Bound quiver compilation: quiver + relations -> validated structure
// constant algebra. Paths compose left to right (p: x->y followed by
// q: y->z gives pq: x->z). The caller supplies a truncation bound L; the
// compiler works in the span of paths of length <= L and verifies that every
// path of length exactly L lies in the relation ideal, which for admissible
// ideals proves (arrow ideal)^L = 0 in the compiled algebra.

#include <map>
#include <string>
#include <vector>

#include "qh/algebra.hpp"

namespace qh {

struct QuiverPresentation {
    struct Arrow {
        std::string label, source, target;
    };
    struct RelTerm {
        std::string coeff;               // exact scalar literal
        std::vector<std::string> path;   // arrow labels, composition left to right
    };
    struct Relation {
        std::vector<RelTerm> terms;
    };

    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;
    size_t truncation = 1;  // L
};

namespace detail {

struct PathRec {
    int src, tgt;
    std::vector<int> arrows;  // indices into the label-sorted arrow list
};

}  // namespace detail

template <ScalarField K>
Algebra<K> compile_bound_quiver(const QuiverPresentation& q, Field<K> fld) {
    require(!q.vertices.empty(), "quiver: no vertices");
    require(q.truncation >= 1, "quiver: truncation bound must be >= 1");
    const size_t L = q.truncation;

    std::map<std::string, int> vindex;
    for (size_t i = 0; i < q.vertices.size(); ++i) {
        require(!vindex.count(q.vertices[i]), "quiver: duplicate vertex label");
        vindex[q.vertices[i]] = static_cast<int>(i);
    }
    // arrows sorted by label: lexicographic path order below reduces to
    // index-sequence order
    std::vector<QuiverPresentation::Arrow> arrows = q.arrows;
    std::sort(arrows.begin(), arrows.end(),
              [](const auto& x, const auto& y) { return x.label < y.label; });
    std::map<std::string, int> aindex;
    for (size_t i = 0; i < arrows.size(); ++i) {
        require(!aindex.count(arrows[i].label), "quiver: duplicate arrow label");
        require(vindex.count(arrows[i].source) && vindex.count(arrows[i].target),
                "quiver: arrow endpoint is not a vertex");
        aindex[arrows[i].label] = static_cast<int>(i);
    }

    // enumerate paths of length <= L, by length then lexicographically
    std::vector<detail::PathRec> paths;
    std::map<std::vector<int>, size_t> path_index;  // key nonempty arrow seq
    std::vector<size_t> trivial_of_vertex;
    for (size_t v = 0; v < q.vertices.size(); ++v) {
        trivial_of_vertex.push_back(paths.size());
        paths.push_back({static_cast<int>(v), static_cast<int>(v), {}});
    }
    size_t level_begin = 0, level_end = paths.size();
    for (size_t len = 1; len <= L; ++len) {
        for (size_t p = level_begin; p < level_end; ++p)
            for (size_t a = 0; a < arrows.size(); ++a) {
                if (paths[p].tgt != vindex[arrows[a].source]) continue;
                detail::PathRec np = paths[p];
                np.tgt = vindex[arrows[a].target];
                np.arrows.push_back(static_cast<int>(a));
                path_index[np.arrows] = paths.size();
                paths.push_back(std::move(np));
            }
        level_begin = level_end;
        level_end = paths.size();
    }
    const size_t n = paths.size();

    auto path_label = [&](size_t idx) {
        const auto& p = paths[idx];
        if (p.arrows.empty()) return "e_" + q.vertices[static_cast<size_t>(p.src)];
        std::vector<std::string> ls;
        for (int a : p.arrows) ls.push_back(arrows[static_cast<size_t>(a)].label);
        return join(ls, "*");
    };

    // relation vectors in the truncated path space
    std::vector<Vec<K>> rel_vecs;
    for (const auto& rel : q.relations) {
        require(!rel.terms.empty(), "quiver: empty relation");
        Vec<K> v(n, fld.zero());
        int src = -1, tgt = -1;
        for (const auto& term : rel.terms) {
            require(term.path.size() >= 2,
                    "quiver: inadmissible relation (term of length < 2)");
            require(term.path.size() <= L,
                    "quiver: relation term longer than the truncation bound");
            std::vector<int> seq;
            int cur = -1, start = -1;
            for (const auto& lbl : term.path) {
                auto it = aindex.find(lbl);
                require(it != aindex.end(), "quiver: unknown arrow '" + lbl + "' in relation");
                const auto& ar = arrows[static_cast<size_t>(it->second)];
                int s = vindex[ar.source], t = vindex[ar.target];
                if (cur == -1)
                    start = s;
                else
                    require(cur == s, "quiver: relation term is not a composable path");
                cur = t;
                seq.push_back(it->second);
            }
            if (src == -1) {
                src = start;
                tgt = cur;
            } else {
                require(src == start && tgt == cur,
                        "quiver: relation terms are not parallel paths");
            }
            K c = fld.parse(term.coeff);
            require(!c.is_zero(), "quiver: zero coefficient in relation");
            v[path_index.at(seq)] += c;
        }
        rel_vecs.push_back(std::move(v));
    }

    // saturate under left/right arrow multiplication with truncation drop
    auto one_arrow_mul = [&](const Vec<K>& v, size_t a, bool left) {
        Vec<K> out(n, fld.zero());
        const auto& ar = arrows[a];
        int as = vindex[ar.source], at = vindex[ar.target];
        for (size_t p = 0; p < n; ++p) {
            if (v[p].is_zero()) continue;
            const auto& pr = paths[p];
            if (pr.arrows.size() + 1 > L) continue;
            std::vector<int> seq;
            if (left) {
                if (at != pr.src) continue;
                seq.push_back(static_cast<int>(a));
                seq.insert(seq.end(), pr.arrows.begin(), pr.arrows.end());
            } else {
                if (pr.tgt != as) continue;
                seq = pr.arrows;
                seq.push_back(static_cast<int>(a));
            }
            out[path_index.at(seq)] += v[p];
        }
        return out;
    };
    auto step = [&](const Vec<K>& v) {
        std::vector<Vec<K>> out;
        for (size_t a = 0; a < arrows.size(); ++a) {
            out.push_back(one_arrow_mul(v, a, true));
            out.push_back(one_arrow_mul(v, a, false));
        }
        return out;
    };
    Subspace<K> ideal = span_saturate<K>(fld, n, rel_vecs, step);

    // every length-L path must die, otherwise the bound is too small
    for (size_t p = 0; p < n; ++p) {
        if (paths[p].arrows.size() != L) continue;
        require(ideal.contains(unit_vec(fld, n, p)),
                "quiver: truncation bound too small ((arrow ideal)^L != 0), offending path " +
                    path_label(p));
    }

    // canonical complement basis = surviving path monomials
    std::vector<bool> is_pivot(n, false);
    for (size_t p : ideal.pivots()) is_pivot[p] = true;
    std::vector<size_t> survivors;
    for (size_t p = 0; p < n; ++p)
        if (!is_pivot[p]) survivors.push_back(p);
    std::vector<size_t> coord_of(n, SIZE_MAX);
    for (size_t k = 0; k < survivors.size(); ++k) coord_of[survivors[k]] = k;
    const size_t dim = survivors.size();

    auto project = [&](const Vec<K>& v) {
        Vec<K> red = ideal.reduce(v);
        Vec<K> out(dim, fld.zero());
        for (size_t k = 0; k < dim; ++k) out[k] = red[survivors[k]];
        return out;
    };

    Algebra<K> alg;
    alg.fld = fld;
    alg.dim = dim;
    for (size_t k = 0; k < dim; ++k) alg.labels.push_back(path_label(survivors[k]));
    alg.sc.assign(dim, std::vector<Vec<K>>(dim, zero_vec(fld, dim)));
    for (size_t x = 0; x < dim; ++x)
        for (size_t y = 0; y < dim; ++y) {
            const auto& px = paths[survivors[x]];
            const auto& py = paths[survivors[y]];
            if (px.tgt != py.src) continue;
            if (px.arrows.size() + py.arrows.size() > L) continue;  // lies in (arrow)^L
            std::vector<int> seq = px.arrows;
            seq.insert(seq.end(), py.arrows.begin(), py.arrows.end());
            size_t prod =
                seq.empty() ? trivial_of_vertex[static_cast<size_t>(px.src)] : path_index.at(seq);
            alg.sc[x][y] = project(unit_vec(fld, n, prod));
        }
    alg.unit = zero_vec(fld, dim);
    for (size_t v = 0; v < q.vertices.size(); ++v) {
        size_t k = coord_of[trivial_of_vertex[v]];
        require(k != SIZE_MAX, "quiver: a trivial path vanished (relations are not admissible)");
        alg.unit[k] = fld.one();
        alg.idems.push_back(unit_vec(fld, dim, k));
    }
    // arrow ideal image = span of the non-trivial surviving monomials
    Subspace<K> rad(fld, dim);
    for (size_t k = 0; k < dim; ++k)
        if (!paths[survivors[k]].arrows.empty()) rad.insert(unit_vec(fld, dim, k));
    alg.radical = std::move(rad);

    ValidationReport rep = validate_algebra(alg);
    require(rep.ok(), "quiver: compiled algebra failed validation:\n" + rep.summary());
    require(subspace_is_nilpotent(alg, *alg.radical), "quiver: arrow ideal image not nilpotent");
    // (arrow ideal)^L = 0 in the compiled algebra
    Subspace<K> power = *alg.radical;
    for (size_t k = 1; k < L && power.dim() > 0; ++k)
        power = ideal_product(alg, power, *alg.radical);
    require(power.dim() == 0, "quiver: J^L != 0 after compilation");
    return alg;
}

/// The bound quiver presentation used throughout the documentation and the
/// CLI's worked example: a 3-cycle 1 -a-> 2 -b-> 3 -c-> 1 with the two zero
/// relations a*b*c*a and c*a*b.
inline QuiverPresentation bound_cycle_example() {
    QuiverPresentation q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "1"}};
    q.relations = {
        {{{"1", {"a", "b", "c", "a"}}}},
        {{{"1", {"c", "a", "b"}}}},
    };
    q.truncation = 4;
    return q;
}

}  // namespace qh
