// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria are fixture- and property-based; tolerances are exact
// (integer dimensions and boolean verdicts) except for the two wall-clock
// budgets, which are asserted with std::chrono.

#include <chrono>
#include <functional>
#include <iostream>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "qh/block.hpp"
#include "qh/json_io.hpp"

using namespace qh;
using namespace fixtures;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void check(bool cond, const std::string& what) {
        if (!cond && pass) {
            pass = false;
            detail = what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <ScalarField K>
std::vector<std::vector<int>> all_subsets(const Algebra<K>& a) {
    std::vector<std::vector<int>> out;
    size_t n = a.n_classes();
    for (size_t mask = 1; mask < (size_t(1) << n); ++mask) {
        std::vector<int> s;
        for (size_t i = 0; i < n; ++i)
            if (mask & (size_t(1) << i)) s.push_back(static_cast<int>(i));
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<std::vector<int>> compositions_up_to(size_t parts, int total) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(parts, 1);
    std::function<void(size_t, int)> go = [&](size_t idx, int remaining) {
        if (idx == parts) {
            out.push_back(cur);
            return;
        }
        for (int v = 1; v <= remaining - static_cast<int>(parts - idx - 1); ++v) {
            cur[idx] = v;
            go(idx + 1, remaining - v);
        }
    };
    if (static_cast<int>(parts) <= total) go(0, total);
    return out;
}

template <ScalarField K>
ChainCertificate must_cert(const Algebra<K>& a, Outcome& o, const std::string& what) {
    auto r = decide_qh(a);
    if (!std::holds_alternative<ChainCertificate>(r)) {
        o.check(false, what + ": expected quasi-hereditary");
        return ChainCertificate{a.hash(), {}};
    }
    return std::get<ChainCertificate>(r);
}

// -------------------------------------------------------------------------
// criterion 1: the worked 3-cycle example
// -------------------------------------------------------------------------
Outcome criterion1() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    Field<Rat> F;
    auto a = cycle_example(F);
    o.check(a.dim == 11, "compiled dimension != 11");
    o.check(std::holds_alternative<RefusalReport>(decide_qh(a)), "expected not quasi-hereditary");
    auto e = Idempotent<Rat>::sub_sum(a, {0, 2});
    auto ideal = ideal_generated(a, {e.vec});
    o.check(is_projective(a, module_of_ideal(a, ideal, Side::Right)),
            "AeA should be right projective");
    auto op = opposite(a);
    o.check(!is_projective(op, module_of_ideal(a, ideal, Side::Left)),
            "AeA should not be left projective");
    auto q = quotient(a, ideal);
    o.check(std::holds_alternative<ChainCertificate>(decide_qh(q.alg)),
            "A/AeA should be quasi-hereditary");
    auto c = corner(a, e);
    o.check(std::holds_alternative<ChainCertificate>(decide_qh(c.alg)),
            "eAe should be quasi-hereditary");
    double secs = seconds_since(t0);
    o.check(secs < 1.0, "runtime " + std::to_string(secs) + "s exceeds 1s");
    return o;
}

// -------------------------------------------------------------------------
// criterion 2: chain assembly from quotient + corner certificates at every
// biprojective idempotent ideal with certified quotient and corner
// -------------------------------------------------------------------------
Outcome criterion2() {
    Outcome o;
    Field<Rat> F;
    std::vector<Algebra<Rat>> algebras = {product_kk(F),   path_a2(F),
                                          two_cycle(F),    acyclic_three(F),
                                          cycle_example(F)};
    algebras.push_back(build_triangular(field_algebra(F), 3).alg);
    size_t found = 0;
    for (const auto& a : algebras) {
        auto op = opposite(a);
        for (const auto& sup : all_subsets(a)) {
            auto e = Idempotent<Rat>::sub_sum(a, sup);
            auto ideal = ideal_generated(a, {e.vec});
            if (!is_projective(a, module_of_ideal(a, ideal, Side::Right))) continue;  // (b)
            if (!is_projective(op, module_of_ideal(a, ideal, Side::Left))) continue;  // (c)
            auto q = quotient(a, ideal);
            auto cq = decide_qh(q.alg);
            if (!std::holds_alternative<ChainCertificate>(cq)) continue;  // (a)
            auto c = corner(a, e);
            auto cc = decide_qh(c.alg);
            if (!std::holds_alternative<ChainCertificate>(cc)) continue;  // (a)
            ++found;
            auto res = assemble_chain_theorem1(a, e, std::get<ChainCertificate>(cq),
                                               std::get<ChainCertificate>(cc));
            if (!std::holds_alternative<ChainCertificate>(res)) {
                o.check(false, "assembly refused a pair satisfying (a)(b)(c)");
                continue;
            }
            o.check(verify_chain(a, std::get<ChainCertificate>(res)),
                    "assembled chain failed verification");
        }
    }
    o.check(found >= 10, "too few fixture pairs satisfied (a)(b)(c): " + std::to_string(found));
    return o;
}

// -------------------------------------------------------------------------
// criterion 3: Morita context ring suite
// -------------------------------------------------------------------------
Outcome criterion3() {
    Outcome o;
    Field<Fp> F(101);
    size_t passing = 0;
    auto run_positive = [&](const MoritaContext<Fp>& mc, const std::string& name) {
        auto hyp = check_theorem2_hypotheses(mc);
        o.check(hyp.all(), name + ": hypotheses (a)-(d) expected to hold, first failure " +
                               hyp.first_failure());
        auto res = morita_qh_chain(mc);
        if (!std::holds_alternative<ChainCertificate>(res.outcome)) {
            o.check(false, name + ": no chain produced");
            return;
        }
        o.check(verify_chain(res.ring.alg, std::get<ChainCertificate>(res.outcome)),
                name + ": chain failed verification");
        ++passing;
    };

    std::vector<std::pair<Algebra<Fp>, Algebra<Fp>>> zero_pairs = {
        {field_algebra(F), field_algebra(F)}, {field_algebra(F), product_kk(F)},
        {product_kk(F), field_algebra(F)},    {path_a2(F), field_algebra(F)},
        {field_algebra(F), path_a2(F)},       {two_cycle(F), product_kk(F)},
        {path_a2(F), path_a2(F)},             {acyclic_three(F), field_algebra(F)}};
    for (size_t i = 0; i < zero_pairs.size(); ++i)
        run_positive(MoritaContext<Fp>::zero_context(zero_pairs[i].first, zero_pairs[i].second),
                     "zero context " + std::to_string(i));

    // triangular contexts (T_{s-1}(R), R, M, 0, 0, 0)
    for (int s = 2; s <= 4; ++s)
        run_positive(
            triangular_step_context(build_triangular(field_algebra(F), s - 1), field_algebra(F), s),
            "triangular context over k, size " + std::to_string(s));
    run_positive(triangular_step_context(build_triangular(path_a2(F), 1), path_a2(F), 2),
                 "triangular context over the path algebra, size 2");

    std::vector<std::pair<Algebra<Fp>, std::vector<int>>> block_bases = {
        {path_a2(F), {1, 1}},          {path_a2(F), {2, 1}},
        {path_a2(F), {1, 2}},          {two_cycle(F), {1, 1}},
        {two_cycle(F), {2, 1}},        {two_cycle(F), {1, 2}},
        {two_cycle(F), {2, 2}},        {acyclic_three(F), {1, 1, 1}},
        {acyclic_three(F), {2, 1, 1}}};
    size_t nonzero_pairing_contexts = 0;
    for (size_t i = 0; i < block_bases.size(); ++i) {
        const auto& [base, sizes] = block_bases[i];
        auto cert = must_cert(base, o, "criterion3 base");
        if (cert.layers.empty()) continue;
        auto b = build_block_extension(BlockSpec<Fp>{base, sizes});
        auto split = block_split_context(b, cert.layers[cert.layers.size() - 2]);
        bool phi_nonzero = false;
        for (const auto& row : split.mc.phi)
            for (const auto& v : row)
                if (!vec_is_zero(v)) phi_nonzero = true;
        if (phi_nonzero) ++nonzero_pairing_contexts;
        run_positive(split.mc, "block split context " + std::to_string(i));
    }
    o.check(nonzero_pairing_contexts >= 3,
            "expected several block-split contexts with nonzero pairing");
    o.check(passing >= 20, "fewer than 20 passing contexts: " + std::to_string(passing));

    // the sufficient condition (d) is not vacuous: both pairings vanish on
    // 1-dimensional bimodules over (k, k), (d) fails, and the ring is
    // independently not quasi-hereditary
    MoritaContext<Fp> mc;
    mc.r = field_algebra(F);
    mc.s = field_algebra(F);
    mc.dim_m = mc.dim_n = 1;
    mc.m_left = {Matrix<Fp>::identity(F, 1)};
    mc.m_right = {Matrix<Fp>::identity(F, 1)};
    mc.n_left = {Matrix<Fp>::identity(F, 1)};
    mc.n_right = {Matrix<Fp>::identity(F, 1)};
    mc.phi = {{zero_vec(F, 1)}};
    mc.psi = {{zero_vec(F, 1)}};
    auto hyp = check_theorem2_hypotheses(mc);
    o.check(hyp.cond_a && hyp.cond_b && hyp.cond_c && !hyp.cond_d,
            "(k,k,k,k,0,0) should fail exactly (d)");
    auto ring = build_morita_ring(mc);
    o.check(std::holds_alternative<RefusalReport>(decide_qh(ring.alg)),
            "(k,k,k,k,0,0) ring should be verified not quasi-hereditary");
    return o;
}

// -------------------------------------------------------------------------
// criterion 4: block extension suite, all size vectors with sum <= 6
// -------------------------------------------------------------------------
Outcome criterion4() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    Field<Fp> F(101);
    std::vector<Algebra<Fp>> bases = {field_algebra(F), product_kk(F),
                                      build_triangular(field_algebra(F), 2).alg, path_a2(F),
                                      acyclic_three(F)};
    size_t cases = 0;
    for (const auto& base : bases) {
        auto cert = must_cert(base, o, "criterion4 base");
        if (cert.layers.empty()) continue;
        for (const auto& sizes : compositions_up_to(base.n_classes(), 6)) {
            ++cases;
            auto bc = block_extension_chain(BlockSpec<Fp>{base, sizes}, cert);
            o.check(verify_chain(bc.bext.alg, bc.cert), "constructed block chain fails to verify");
            o.check(std::holds_alternative<ChainCertificate>(decide_qh(bc.bext.alg)),
                    "independent decision disagrees on a block extension");
        }
    }
    o.check(cases >= 60, "unexpectedly few block cases: " + std::to_string(cases));
    double secs = seconds_since(t0);
    o.check(secs < 60.0, "runtime " + std::to_string(secs) + "s exceeds 60s");
    return o;
}

// -------------------------------------------------------------------------
// criterion 5: multiplication-map suite at every right-projective AeA
// -------------------------------------------------------------------------
Outcome criterion5() {
    Outcome o;
    Field<Rat> F;
    std::vector<Algebra<Rat>> algebras = {field_algebra(F), product_kk(F), path_a2(F),
                                          two_cycle(F),     acyclic_three(F), cycle_example(F)};
    size_t checked = 0;
    for (const auto& a : algebras) {
        for (const auto& sup : all_subsets(a)) {
            auto e = Idempotent<Rat>::sub_sum(a, sup);
            auto ideal = ideal_generated(a, {e.vec});
            if (!is_projective(a, module_of_ideal(a, ideal, Side::Right))) continue;
            ++checked;
            o.check(mu_map_check(a, e.vec).iso, "mu is not an isomorphism");
            auto add = add_membership_check(a, e.vec);
            o.check(add.right_projective && add.in_add, "AeA not in Add(eA)");
            for (const auto& fsup : all_subsets(a))
                o.check(nu_map_check(a, e.vec, a.sub_sum(fsup)).iso, "nu is not an isomorphism");
            // corner projectivity: Ae projective over eAe
            auto c = corner(a, e);
            Subspace<Rat> ae(F, a.dim);
            for (size_t b = 0; b < a.dim; ++b)
                ae.insert(a.mul(unit_vec(F, a.dim, b), e.vec));
            RightModule<Rat> m{ae.dim(), {}};
            bool closed = true;
            for (size_t cb = 0; cb < c.alg.dim; ++cb) {
                Vec<Rat> cv(a.dim, F.zero());
                for (size_t jj = 0; jj < a.dim; ++jj) cv[jj] = c.incl(cb, jj);
                Matrix<Rat> mb(F, ae.dim(), ae.dim());
                for (size_t rr = 0; rr < ae.dim(); ++rr) {
                    auto coords = ae.coords_of(a.mul(ae.basis_vector(rr), cv));
                    if (!coords) {
                        closed = false;
                        break;
                    }
                    for (size_t jj = 0; jj < ae.dim(); ++jj) mb(rr, jj) = (*coords)[jj];
                }
                if (!closed) break;
                m.act.push_back(std::move(mb));
            }
            o.check(closed, "Ae not closed under the corner action");
            if (closed) o.check(is_projective(c.alg, m), "Ae not projective over eAe");
        }
    }
    o.check(checked >= 15, "too few right-projective pairs: " + std::to_string(checked));
    return o;
}

// -------------------------------------------------------------------------
// criterion 6: factor-ring isomorphism for every block fixture and class
// -------------------------------------------------------------------------
Outcome criterion6() {
    Outcome o;
    Field<Fp> F(101);
    std::vector<std::pair<Algebra<Fp>, std::vector<int>>> specs = {
        {field_algebra(F), {2}},        {field_algebra(F), {3}},
        {product_kk(F), {1, 2}},        {product_kk(F), {2, 2}},
        {path_a2(F), {1, 1}},           {path_a2(F), {2, 1}},
        {path_a2(F), {1, 2}},           {two_cycle(F), {2, 1}},
        {two_cycle(F), {1, 2}},         {two_cycle(F), {2, 2}},
        {acyclic_three(F), {1, 1, 1}},  {acyclic_three(F), {1, 2, 1}},
        {acyclic_three(F), {2, 1, 1}}};
    for (const auto& [base, sizes] : specs) {
        // dimension formula, recomputed here against the built basis count
        auto b = build_block_extension(BlockSpec<Fp>{base, sizes});
        size_t expect = 0;
        for (size_t i = 0; i < base.n_classes(); ++i) {
            size_t li = static_cast<size_t>(sizes[i]);
            size_t ri = peirce(base, base.idems[i], base.idems[i]).dim();
            Subspace<Fp> ji(F, base.dim);
            for (size_t k = 0; k < base.radical->dim(); ++k)
                ji.insert(base.mul(base.mul(base.idems[i], base.radical->basis_vector(k)),
                                   base.idems[i]));
            expect += li * (li + 1) / 2 * ri + li * (li - 1) / 2 * ji.dim();
            for (size_t s = 0; s < base.n_classes(); ++s)
                if (s != i)
                    expect += li * static_cast<size_t>(sizes[s]) *
                              peirce(base, base.idems[i], base.idems[s]).dim();
        }
        o.check(expect == b.alg.dim, "dimension formula mismatch");
        for (size_t i = 0; i < base.n_classes(); ++i) {
            auto iso = check_fac_ring_iso(BlockSpec<Fp>{base, sizes}, static_cast<int>(i));
            o.check(iso.iso, "factor-ring isomorphism failed");
            o.check(iso.quotient_dim == iso.reduced_dim, "factor-ring dimensions differ");
        }
    }
    return o;
}

// -------------------------------------------------------------------------
// criterion 7: oracle equivalence on every suite algebra with <= 4 classes
// -------------------------------------------------------------------------
Outcome criterion7() {
    Outcome o;
    Field<Rat> F;
    std::vector<Algebra<Rat>> algebras = {field_algebra(F), product_kk(F), dual_numbers(F),
                                          path_a2(F),       two_cycle(F),  acyclic_three(F),
                                          cycle_example(F)};
    algebras.push_back(build_triangular(field_algebra(F), 2).alg);
    algebras.push_back(build_triangular(field_algebra(F), 3).alg);
    algebras.push_back(build_triangular(path_a2(F), 2).alg);
    algebras.push_back(build_block_extension(BlockSpec<Rat>{path_a2(F), {2, 1}}).alg);
    algebras.push_back(build_block_extension(BlockSpec<Rat>{two_cycle(F), {1, 2}}).alg);
    algebras.push_back(build_block_extension(BlockSpec<Rat>{field_algebra(F), {4}}).alg);
    {   // quotient and corner fixtures along a certified chain
        auto a = two_cycle(F);
        auto cert = must_cert(a, o, "criterion7 fixture");
        if (!cert.layers.empty()) {
            algebras.push_back(
                quotient(a, ideal_generated(a, {a.sub_sum(cert.layers[1])})).alg);
            algebras.push_back(corner(a, Idempotent<Rat>::sub_sum(a, cert.layers[1])).alg);
        }
    }
    size_t ran = 0;
    for (const auto& a : algebras) {
        if (a.n_classes() > 4 || a.dim > 30) continue;
        ++ran;
        bool fast = std::holds_alternative<ChainCertificate>(decide_qh(a));
        bool slow = test_oracle::oracle_qh(a);
        o.check(fast == slow, "decision disagrees with the all-orderings enumerator");
    }
    o.check(ran >= 12, "too few oracle fixtures: " + std::to_string(ran));
    return o;
}

// -------------------------------------------------------------------------
// criterion 8: byte-identical artifacts across repeated runs and threads
// -------------------------------------------------------------------------
Outcome criterion8() {
    Outcome o;
    Field<Rat> F;
    auto serialize_decision = [&](const Algebra<Rat>& a, unsigned threads) {
        auto res = decide_qh(a, threads);
        json j = std::holds_alternative<ChainCertificate>(res)
                     ? certificate_to_json(a, std::get<ChainCertificate>(res))
                     : refusal_to_json(std::get<RefusalReport>(res));
        return dump_canonical(j);
    };
    for (const Algebra<Rat>& a :
         {two_cycle(F), cycle_example(F),
          build_block_extension(BlockSpec<Rat>{path_a2(F), {2, 1}}).alg}) {
        std::string s1 = serialize_decision(a, 1);
        std::string s2 = serialize_decision(a, 1);
        std::string s4 = serialize_decision(a, 4);
        std::string s7 = serialize_decision(a, 7);
        o.check(s1 == s2, "repeated runs differ");
        o.check(s1 == s4 && s1 == s7, "thread counts change the artifact");
    }
    // serialization round trip is bit-exact
    auto a = cycle_example(F);
    json j = algebra_to_json(a);
    auto back = algebra_from_json(Field<Rat>{}, j);
    o.check(dump_canonical(j) == dump_canonical(algebra_to_json(back)),
            "algebra serialization round trip not byte-identical");
    return o;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    std::vector<Entry> criteria = {
        {1, "worked 3-cycle example: dim 11, four documented properties, < 1 s", criterion1},
        {2, "chain assembly at every biprojective certified pair", criterion2},
        {3, "Morita context suite: >= 20 passing contexts + non-vacuous (d)", criterion3},
        {4, "block extension suite: all size vectors with sum <= 6, < 60 s", criterion4},
        {5, "multiplication maps mu/nu, Add membership, corner projectivity", criterion5},
        {6, "factor-ring isomorphisms and exact dimension formula", criterion6},
        {7, "oracle equivalence on all <= 4-class suite algebras", criterion7},
        {8, "byte-identical certificates and reports across runs and threads", criterion8},
    };
    bool all = true;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        all = all && o.pass;
        std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.name;
        if (!o.pass) std::cout << " -- " << o.detail;
        std::cout << "\n";
    }
    std::cout << (all ? "acceptance: all criteria passed" : "acceptance: FAILURES present")
              << "\n";
    return all ? 0 : 1;
}
