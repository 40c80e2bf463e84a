#include <random>

#include "doctest.h"
#include "qh/matrix.hpp"
#include "qh/subspace.hpp"

using namespace qh;

TEST_CASE("rational arithmetic is exact and canonical") {
    Field<Rat> F;
    Rat a = F.parse("-3/6");
    CHECK(a.str() == "-1/2");
    CHECK((a + (-a)).is_zero());
    CHECK(a * a.inv() == F.one());
    CHECK(F.parse("4/2") == F.parse("2"));
    CHECK((F.parse("1/3") + F.parse("1/6")).str() == "1/2");
    CHECK_THROWS_AS(F.parse("1/0"), Error);
    CHECK_THROWS_AS(F.parse("abc"), Error);
    CHECK_THROWS_AS(F.zero().inv(), Error);
}

TEST_CASE("prime field arithmetic, canonical representatives") {
    Field<Fp> F(5);
    CHECK(F.parse("7").value() == 2);
    CHECK(F.parse("-1").value() == 4);
    Fp a = F.from_long(3);
    CHECK((a + (-a)).is_zero());
    CHECK(a * a.inv() == F.one());
    CHECK((a * F.from_long(4)).value() == 2);
    CHECK_THROWS_AS(Field<Fp>(6), Error);   // composite modulus rejected
    CHECK_THROWS_AS(Field<Fp>(1), Error);
    // modulus-free zero adopts the other operand
    Fp z;
    CHECK((z + a) == a);
    CHECK((z * a).is_zero());
}

TEST_CASE("rref_kernel: frozen example values") {
    SUBCASE("2x2 identity over F_5 -> rank 2, kernel dim 0") {
        Field<Fp> F(5);
        auto m = Matrix<Fp>::identity(F, 2);
        auto r = rref(m);
        CHECK(r.rank == 2);
        CHECK(kernel_basis(m).rows() == 0);
    }
    SUBCASE("zero 3x3 -> rank 0, kernel dim 3") {
        Field<Rat> F;
        Matrix<Rat> m(F, 3, 3);
        CHECK(rref(m).rank == 0);
        CHECK(kernel_basis(m).rows() == 3);
    }
    SUBCASE("[[1,2],[2,4]] over Q -> rank 1, kernel = rref-normalized (-2,1)") {
        // hand elimination: row2 - 2*row1 = 0; kernel spanned by (-2,1),
        // which normalizes to (1,-1/2) in reduced echelon form
        Field<Rat> F;
        Matrix<Rat> m(F, 2, 2);
        m(0, 0) = Rat(1);
        m(0, 1) = Rat(2);
        m(1, 0) = Rat(2);
        m(1, 1) = Rat(4);
        auto r = rref(m);
        CHECK(r.rank == 1);
        auto ker = kernel_basis(m);
        REQUIRE(ker.rows() == 1);
        CHECK(ker(0, 0) == Rat(1));
        CHECK(ker(0, 1) == Rat(-1, 2));
        CHECK(r.rank + ker.rows() == m.cols());  // rank + nullity
    }
}

TEST_CASE("rref_kernel triple is consistent") {
    Field<Rat> F;
    Matrix<Rat> m(F, 2, 3);
    m(0, 0) = Rat(1);
    m(0, 1) = Rat(2);
    m(0, 2) = Rat(3);
    m(1, 0) = Rat(2);
    m(1, 1) = Rat(4);
    m(1, 2) = Rat(6);
    auto r = rref_kernel(m);
    CHECK(r.rank == 1);
    CHECK(r.kernel.dim() == 2);
    CHECK(r.rank + r.kernel.dim() == m.cols());
    // every kernel basis vector is annihilated by M
    for (size_t i = 0; i < r.kernel.dim(); ++i) {
        Vec<Rat> x = r.kernel.basis_vector(i);
        for (size_t row = 0; row < m.rows(); ++row) {
            Rat acc;
            for (size_t c = 0; c < m.cols(); ++c) acc += m(row, c) * x[c];
            CHECK(acc.is_zero());
        }
    }
}

TEST_CASE("subspace sum/intersection/containment") {
    Field<Rat> F;
    SUBCASE("U = V") {
        auto u = Subspace<Rat>::span(F, 3, {{Rat(1), Rat(2), Rat(0)}, {Rat(0), Rat(0), Rat(1)}});
        auto s = u.sum(u);
        auto i = u.intersect(u);
        CHECK(s == u);
        CHECK(i == u);
        CHECK(u.contains(u));
    }
    SUBCASE("span(e1) vs span(e2) in dim 2") {
        auto u = Subspace<Rat>::span(F, 2, {unit_vec(F, 2, 0)});
        auto v = Subspace<Rat>::span(F, 2, {unit_vec(F, 2, 1)});
        CHECK(u.sum(v).dim() == 2);
        CHECK(u.intersect(v).dim() == 0);
        CHECK(!u.contains(v));
    }
    SUBCASE("span(e1+e2) inside span(e1,e2) in dim 3") {
        auto u = Subspace<Rat>::span(F, 3, {{Rat(1), Rat(1), Rat(0)}});
        auto v = Subspace<Rat>::span(F, 3, {unit_vec(F, 3, 0), unit_vec(F, 3, 1)});
        CHECK(v.contains(u));
        CHECK(u.intersect(v) == u);
        CHECK(u.sum(v) == v);
    }
    SUBCASE("ambient mismatch is an error") {
        auto u = Subspace<Rat>::zero(F, 2);
        auto v = Subspace<Rat>::zero(F, 3);
        CHECK_THROWS_AS(u.sum(v), Error);
    }
}

TEST_CASE("span_saturate") {
    Field<Rat> F;
    SUBCASE("seed {0} -> zero subspace") {
        auto s = span_saturate<Rat>(F, 4, {zero_vec(F, 4)},
                                    [](const Vec<Rat>& v) { return std::vector<Vec<Rat>>{v}; });
        CHECK(s.dim() == 0);
    }
    SUBCASE("cyclic shift closure of e1 in dim 3 is the full space") {
        auto shift = [&F](const Vec<Rat>& v) {
            Vec<Rat> w(3, F.zero());
            w[0] = v[2];
            w[1] = v[0];
            w[2] = v[1];
            return std::vector<Vec<Rat>>{w};
        };
        auto s = span_saturate<Rat>(F, 3, {unit_vec(F, 3, 0)}, shift);
        CHECK(s.dim() == 3);
    }
    SUBCASE("identity step leaves span(e1)") {
        auto s = span_saturate<Rat>(F, 3, {unit_vec(F, 3, 0)},
                                    [](const Vec<Rat>& v) { return std::vector<Vec<Rat>>{v}; });
        CHECK(s.dim() == 1);
        CHECK(s.contains(unit_vec(F, 3, 0)));
    }
}

namespace {

template <class K>
Matrix<K> random_matrix(Field<K> F, size_t rows, size_t cols, std::mt19937& rng) {
    std::uniform_int_distribution<long> d(-4, 4);
    Matrix<K> m(F, rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m(i, j) = F.from_long(d(rng));
    return m;
}

template <class K>
void check_rref_properties(Field<K> F) {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 40; ++trial) {
        size_t rows = 1 + static_cast<size_t>(rng() % 6), cols = 1 + static_cast<size_t>(rng() % 6);
        Matrix<K> m = random_matrix(F, rows, cols, rng);
        auto r1 = rref(m);
        auto r2 = rref(r1.rref);
        CHECK(r1.rref == r2.rref);  // idempotence
        CHECK(r1.rank + kernel_basis(m).rows() == cols);  // rank-nullity
        CHECK(r1.rank <= std::min(rows, cols));
    }
}

}  // namespace

TEST_CASE("rref idempotence and rank-nullity on random matrices") {
    check_rref_properties(Field<Rat>{});
    check_rref_properties(Field<Fp>(7));
    check_rref_properties(Field<Fp>(101));
}

TEST_CASE("subspace canonicalization: spanning order does not matter") {
    Field<Rat> F;
    std::mt19937 rng(999);
    std::uniform_int_distribution<long> d(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        size_t ambient = 4 + rng() % 3;
        std::vector<Vec<Rat>> vecs;
        for (int i = 0; i < 4; ++i) {
            Vec<Rat> v(ambient, F.zero());
            for (auto& x : v) x = F.from_long(d(rng));
            vecs.push_back(v);
        }
        auto a = Subspace<Rat>::span(F, ambient, vecs);
        std::vector<Vec<Rat>> shuffled = {vecs[2], vecs[0], vecs[3], vecs[1]};
        // also mix in linear combinations of the same span
        shuffled.push_back(vec_add(vec_scale(vecs[0], Rat(3)), vecs[1]));
        auto b = Subspace<Rat>::span(F, ambient, shuffled);
        CHECK(a == b);
        CHECK(a.basis() == b.basis());  // structurally identical stored bases
    }
}
