#pragma once

// Shared fixture algebras for the test suites. Everything is built through
// the public quiver/algebra interfaces so the fixtures double as smoke tests.

#include "qh/algebra.hpp"
#include "qh/quiver.hpp"

namespace fixtures {

using namespace qh;

/// The ground field as a 1-dimensional algebra.
template <ScalarField K>
Algebra<K> field_algebra(Field<K> F) {
    Algebra<K> a;
    a.fld = F;
    a.dim = 1;
    a.labels = {"1"};
    a.sc = {{{F.one()}}};
    a.unit = {F.one()};
    a.idems = {{F.one()}};
    auto rep = validate_algebra(a);
    require(rep.ok(), "field_algebra fixture invalid");
    return a;
}

/// k x k (semisimple, two classes).
template <ScalarField K>
Algebra<K> product_kk(Field<K> F) {
    Algebra<K> a;
    a.fld = F;
    a.dim = 2;
    a.labels = {"u", "v"};
    a.sc.assign(2, std::vector<Vec<K>>(2, zero_vec(F, 2)));
    a.sc[0][0] = unit_vec(F, 2, 0);
    a.sc[1][1] = unit_vec(F, 2, 1);
    a.unit = {F.one(), F.one()};
    a.idems = {unit_vec(F, 2, 0), unit_vec(F, 2, 1)};
    auto rep = validate_algebra(a);
    require(rep.ok(), "product_kk fixture invalid");
    return a;
}

/// k[x]/(x^2): one vertex, one loop, relation x*x.
template <ScalarField K>
Algebra<K> dual_numbers(Field<K> F) {
    QuiverPresentation q;
    q.vertices = {"1"};
    q.arrows = {{"x", "1", "1"}};
    q.relations = {{{{"1", {"x", "x"}}}}};
    q.truncation = 2;
    return compile_bound_quiver(q, F);
}

/// Path algebra of 1 -a-> 2 (equivalently 2x2 upper triangular matrices).
template <ScalarField K>
Algebra<K> path_a2(Field<K> F) {
    QuiverPresentation q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", "1", "2"}};
    q.truncation = 2;
    return compile_bound_quiver(q, F);
}

/// The documentation's worked example: 3-cycle with relations a*b*c*a, c*a*b
/// (dimension 11, not quasi-hereditary).
template <ScalarField K>
Algebra<K> cycle_example(Field<K> F) {
    return compile_bound_quiver(bound_cycle_example(), F);
}

/// Two-vertex 2-cycle 1 <-> 2 with a*b = 0 and b*a surviving (dimension 5,
/// quasi-hereditary, has both off-diagonal Peirce components nonzero).
template <ScalarField K>
Algebra<K> two_cycle(Field<K> F) {
    QuiverPresentation q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", "1", "2"}, {"b", "2", "1"}};
    q.relations = {{{{"1", {"a", "b"}}}}};
    q.truncation = 3;
    return compile_bound_quiver(q, F);
}

/// Acyclic 3-vertex bound quiver 1 -a-> 2 -b-> 3 with a*b = 0 (dimension 5).
template <ScalarField K>
Algebra<K> acyclic_three(Field<K> F) {
    QuiverPresentation q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {{"a", "1", "2"}, {"b", "2", "3"}};
    q.relations = {{{{"1", {"a", "b"}}}}};
    q.truncation = 2;
    return compile_bound_quiver(q, F);
}

}  // namespace fixtures
