#pragma once

// Heredity ideals, the exhaustive quasi-heredity decision procedure with
// independently re-checkable certificates, and the constructive chain
// operations (lifting a chain through a quotient, transporting one from a
// corner, and assembling both halves at a biprojective idempotent ideal).
//
// A certificate is an ordered list of idempotent supports
//   S_0 > S_1 > ... > S_m = {}    (S_0 = all classes)
// over the algebra's distinguished complete set; layer i asserts that
// H_i/H_{i+1} is a heredity ideal of A/H_{i+1}, where H_i is the two-sided
// ideal generated by the sub-sum over S_i. Nested sub-sums automatically
// satisfy eps_i eps_j = eps_j eps_i = eps_j for i <= j.

#include <atomic>
#include <future>
#include <map>
#include <variant>

#include "qh/module.hpp"

namespace qh {

struct ChainCertificate {
    std::string algebra_hash;
    std::vector<std::vector<int>> layers;
};

struct PartialChain {
    std::vector<std::vector<int>> supports;
};

struct HeredityDiagnostics {
    bool nonzero = false;
    bool eje_zero = false;
    bool right_projective = false;
    size_t ideal_dim = 0;
    size_t eje_dim = 0;

    bool ok() const { return nonzero && eje_zero && right_projective; }
    std::string reason() const {
        if (!nonzero) return "idempotent is zero";
        if (!eje_zero) return "e J e != 0 (dim " + std::to_string(eje_dim) + ")";
        if (!right_projective)
            return "A e A (dim " + std::to_string(ideal_dim) + ") is not right projective";
        return "heredity ideal";
    }
};

/// Heredity test for the ideal AeA: e != 0, eJ(A)e = 0, AeA right projective.
/// Idempotency of AeA holds automatically for idempotent-generated ideals.
template <ScalarField K>
HeredityDiagnostics is_heredity_ideal(const Algebra<K>& a, const Vec<K>& e) {
    require(a.validated && a.split_basic, "is_heredity_ideal: algebra must be validated split basic");
    require(is_idempotent_element(a, e), "is_heredity_ideal: e is not idempotent");
    HeredityDiagnostics d;
    d.nonzero = !vec_is_zero(e);
    Subspace<K> eje(a.fld, a.dim);
    for (size_t r = 0; r < a.radical->dim(); ++r)
        eje.insert(a.mul(a.mul(e, a.radical->basis_vector(r)), e));
    d.eje_dim = eje.dim();
    d.eje_zero = d.eje_dim == 0;
    auto ideal = ideal_generated(a, {e});
    d.ideal_dim = ideal.space.dim();
    d.right_projective = is_projective(a, module_of_ideal(a, ideal, Side::Right));
    return d;
}

// ---------------------------------------------------------------------------
// Decision procedure
// ---------------------------------------------------------------------------

struct RefusalReport {
    std::string algebra_hash;
    struct Attempt {
        std::vector<int> subset;
        std::string reason;
    };
    struct Entry {
        std::vector<int> survivors;
        std::vector<Attempt> attempts;
    };
    std::vector<Entry> entries;
};

using DecideResult = std::variant<ChainCertificate, RefusalReport>;

namespace detail {

/// Nonempty subsets of `elems` in lexicographic order with every proper
/// extension preceding its prefix: {0,1,2}, {0,1}, {0,2}, {0}, {1,2}, ...
/// With this order a semisimple algebra certifies with the one-layer chain
/// and the path algebra of 1->2 picks {e_1} as its first layer.
inline std::vector<std::vector<int>> lex_subsets(const std::vector<int>& elems) {
    std::vector<std::vector<int>> out;
    std::vector<int> prefix;
    std::function<void(size_t)> dfs = [&](size_t start) {
        for (size_t i = start; i < elems.size(); ++i) {
            prefix.push_back(elems[i]);
            dfs(i + 1);
            out.push_back(prefix);
            prefix.pop_back();
        }
    };
    dfs(0);
    return out;
}

template <ScalarField K>
struct DecideCtx {
    const Algebra<K>& a;
    unsigned threads;

    struct Level {
        Algebra<K> q;
        std::vector<int> classes;  // original class of each quotient class
        std::string qhash;
        bool computed = false;
        std::optional<std::vector<std::vector<int>>> chain;  // supports in original labels
        std::vector<RefusalReport::Attempt> attempts;
    };
    std::map<std::vector<int>, Level> memo;

    Level& level(const std::vector<int>& survivors) {
        auto it = memo.find(survivors);
        if (it != memo.end()) return it->second;
        std::vector<int> kill;
        for (size_t i = 0; i < a.n_classes(); ++i)
            if (std::find(survivors.begin(), survivors.end(), static_cast<int>(i)) ==
                survivors.end())
                kill.push_back(static_cast<int>(i));
        auto qr = quotient(a, ideal_generated(a, {a.sub_sum(kill)}));
        Level lv;
        // the memo key is the surviving class set; quotients reached along
        // different orders agree because the kill ideal depends only on the
        // complement, and class collapse cannot occur over a basic algebra
        require(qr.class_map == survivors,
                "decide: unexpected class collapse in a quotient of a basic algebra");
        lv.qhash = qr.alg.hash();
        lv.classes = qr.class_map;
        lv.q = std::move(qr.alg);
        std::string qhash = lv.qhash;
        auto [pos, inserted] = memo.emplace(survivors, std::move(lv));
        require(inserted || pos->second.qhash == qhash,
                "decide: memo hash mismatch for identical survivor set");
        return pos->second;
    }

    const std::vector<std::vector<int>>* decide(const std::vector<int>& survivors) {
        Level& lv = level(survivors);
        if (lv.computed) return lv.chain ? &*lv.chain : nullptr;
        if (survivors.empty()) {
            lv.chain = std::vector<std::vector<int>>{{}};
            lv.computed = true;
            return &*lv.chain;
        }
        auto subsets = lex_subsets(survivors);
        // heredity tests are pure in the quotient algebra; evaluate them for
        // all candidate layers up front (optionally in parallel), then walk
        // candidates in the fixed lexicographic order
        std::vector<HeredityDiagnostics> diags(subsets.size());
        auto eval = [&](size_t i) {
            std::vector<int> local;
            for (int orig : subsets[i]) {
                auto it = std::find(lv.classes.begin(), lv.classes.end(), orig);
                local.push_back(static_cast<int>(it - lv.classes.begin()));
            }
            diags[i] = is_heredity_ideal(lv.q, lv.q.sub_sum(local));
        };
        if (threads > 1 && subsets.size() > 1) {
            std::vector<std::future<void>> futs;
            std::atomic<size_t> next{0};
            unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(subsets.size()));
            for (unsigned w = 0; w < workers; ++w)
                futs.push_back(std::async(std::launch::async, [&]() {
                    for (size_t i = next.fetch_add(1); i < subsets.size(); i = next.fetch_add(1))
                        eval(i);
                }));
            for (auto& f : futs) f.get();
        } else {
            for (size_t i = 0; i < subsets.size(); ++i) eval(i);
        }
        for (size_t si = 0; si < subsets.size(); ++si) {
            const auto& t = subsets[si];
            if (!diags[si].ok()) {
                lv.attempts.push_back({t, diags[si].reason()});
                continue;
            }
            std::vector<int> rest;
            for (int c : survivors)
                if (std::find(t.begin(), t.end(), c) == t.end()) rest.push_back(c);
            const auto* sub = decide(rest);
            if (!sub) {
                lv.attempts.push_back({t, "quotient by the layer is not quasi-hereditary"});
                continue;
            }
            std::vector<std::vector<int>> chain;
            for (const auto& s : *sub) {
                std::vector<int> lifted = s;
                lifted.insert(lifted.end(), t.begin(), t.end());
                std::sort(lifted.begin(), lifted.end());
                chain.push_back(std::move(lifted));
            }
            chain.push_back({});
            // re-fetch: recursion may have rehashed the memo
            Level& lv2 = memo.at(survivors);
            lv2.chain = std::move(chain);
            lv2.computed = true;
            return &*lv2.chain;
        }
        Level& lv2 = memo.at(survivors);
        lv2.computed = true;
        lv2.chain = std::nullopt;
        return nullptr;
    }
};

}  // namespace detail

template <ScalarField K>
bool verify_chain(const Algebra<K>& a, const ChainCertificate& cert, std::string* why = nullptr);

/// Exhaustive decision with memoization on surviving class sets. Subsets are
/// tried in lexicographic order, so identical inputs yield identical
/// certificates. Returns either a certificate (which always re-verifies) or a
/// refusal report recording why every subset failed at every reachable
/// survivor set.
template <ScalarField K>
DecideResult decide_qh(const Algebra<K>& a, unsigned threads = 1) {
    require(a.validated, "decide_qh: algebra not validated");
    require(a.split_basic, "decide_qh: algebra is not split basic");
    detail::DecideCtx<K> ctx{a, threads, {}};
    std::vector<int> all;
    for (size_t i = 0; i < a.n_classes(); ++i) all.push_back(static_cast<int>(i));
    const auto* chain = ctx.decide(all);
    if (chain) {
        ChainCertificate cert{a.hash(), *chain};
        std::string why;
        require(verify_chain(a, cert, &why), "decide_qh: emitted certificate failed to verify: " + why);
        return cert;
    }
    RefusalReport rep;
    rep.algebra_hash = a.hash();
    for (const auto& [key, lv] : ctx.memo) {
        if (lv.attempts.empty()) continue;
        rep.entries.push_back({key, lv.attempts});
    }
    return rep;
}

/// Independent re-check of a certificate: supports strictly decrease from the
/// full class set to the empty set, every chain ideal is an idempotent ideal
/// of A itself, ideal dimensions strictly decrease, and every consecutive
/// quotient H_i/H_{i+1} is a heredity ideal of A/H_{i+1}.
template <ScalarField K>
bool verify_chain(const Algebra<K>& a, const ChainCertificate& cert, std::string* why) {
    auto fail_with = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    require(cert.algebra_hash == a.hash(), "verify_chain: certificate refers to a different algebra");
    require(a.validated && a.split_basic, "verify_chain: algebra must be validated split basic");
    const auto& ls = cert.layers;
    if (ls.empty()) return fail_with("no layers");
    std::vector<int> all;
    for (size_t i = 0; i < a.n_classes(); ++i) all.push_back(static_cast<int>(i));
    if (ls.front() != all) return fail_with("first support must be the full class set");
    if (!ls.back().empty()) return fail_with("last support must be empty");
    if (a.dim == 0) return ls.size() == 1 ? true : fail_with("zero algebra has the empty chain");
    if (ls.size() < 2) return fail_with("nonzero algebra needs at least two supports");
    for (size_t i = 0; i + 1 < ls.size(); ++i) {
        const auto& cur = ls[i];
        const auto& nxt = ls[i + 1];
        if (nxt.size() >= cur.size()) return fail_with("supports do not strictly decrease");
        for (int c : nxt)
            if (std::find(cur.begin(), cur.end(), c) == cur.end())
                return fail_with("supports are not nested");
        for (int c : cur)
            if (c < 0 || static_cast<size_t>(c) >= a.n_classes())
                return fail_with("support contains an unknown class");
    }
    std::vector<TwoSidedIdeal<K>> ideals;
    for (const auto& s : ls) ideals.push_back(ideal_generated(a, {a.sub_sum(s)}));
    for (size_t i = 0; i + 1 < ls.size(); ++i) {
        if (ideals[i].space.dim() <= ideals[i + 1].space.dim())
            return fail_with("ideal dimensions do not strictly decrease at layer " +
                             std::to_string(i));
        if (!is_idempotent_ideal(a, ideals[i]))
            return fail_with("chain ideal " + std::to_string(i) + " is not idempotent in A");
    }
    if (ideals.front().space.dim() != a.dim) return fail_with("top ideal is not the whole algebra");
    for (size_t i = 0; i + 1 < ls.size(); ++i) {
        auto q = quotient(a, ideals[i + 1]);
        Vec<K> eps_bar = vec_mat(a.sub_sum(ls[i]), q.proj);
        HeredityDiagnostics d = is_heredity_ideal(q.alg, eps_bar);
        if (!d.ok())
            return fail_with("layer " + std::to_string(i) + ": " + d.reason());
        if (d.ideal_dim != ideals[i].space.dim() - ideals[i + 1].space.dim())
            return fail_with("layer " + std::to_string(i) + ": image ideal dimension mismatch");
    }
    return true;
}

/// Slow reference decision: depth-first over every strictly decreasing
/// support chain, checking each layer directly against the definition. No
/// memoization; exponential in the class count. Used for cross-checks below
/// a configured dimension bound.
template <ScalarField K>
bool exhaustive_chain_search(const Algebra<K>& a) {
    require(a.validated && a.split_basic, "exhaustive_chain_search: algebra must be split basic");
    if (a.dim == 0) return true;
    std::vector<int> all;
    for (size_t i = 0; i < a.n_classes(); ++i) all.push_back(static_cast<int>(i));
    std::function<bool(const std::vector<int>&)> go = [&](const std::vector<int>& cur) -> bool {
        size_t n = cur.size();
        for (size_t mask = 0; mask + 1 < (size_t(1) << n); ++mask) {
            std::vector<int> next;
            for (size_t i = 0; i < n; ++i)
                if (mask & (size_t(1) << i)) next.push_back(cur[i]);
            auto q = quotient(a, ideal_generated(a, {a.sub_sum(next)}));
            if (!is_heredity_ideal(q.alg, vec_mat(a.sub_sum(cur), q.proj)).ok()) continue;
            if (next.empty() || go(next)) return true;
        }
        return false;
    };
    return go(all);
}

// ---------------------------------------------------------------------------
// Constructive chain operations
// ---------------------------------------------------------------------------

/// Lifts a heredity chain of A/AeA to a partial chain of A running from A
/// down to AeA, by adjoining e's support to every layer. Each lifted layer is
/// re-verified.
template <ScalarField K>
PartialChain lift_chain_from_quotient(const Algebra<K>& a, const Idempotent<K>& e,
                                      const ChainCertificate& cert_quotient) {
    require(e.support.has_value(), "lift_chain: idempotent must be a sub-sum");
    auto ideal = ideal_generated(a, {e.vec});
    auto q = quotient(a, ideal);
    require(cert_quotient.algebra_hash == q.alg.hash(),
            "lift_chain: certificate does not match the canonical quotient A/AeA");
    std::string why;
    require(verify_chain(q.alg, cert_quotient, &why),
            "lift_chain: quotient certificate is invalid: " + why);
    PartialChain out;
    for (const auto& layer : cert_quotient.layers) {
        std::vector<int> lifted = *e.support;
        for (int c : layer) lifted.push_back(q.class_map[static_cast<size_t>(c)]);
        std::sort(lifted.begin(), lifted.end());
        out.supports.push_back(std::move(lifted));
    }
    // sanity: the lift runs from A down to AeA
    require(ideal_generated(a, {a.sub_sum(out.supports.front())}).space.dim() == a.dim,
            "lift_chain: top of the lifted chain is not the whole algebra");
    require(ideal_generated(a, {a.sub_sum(out.supports.back())}).space == ideal.space,
            "lift_chain: bottom of the lifted chain is not AeA");
    for (size_t i = 0; i + 1 < out.supports.size(); ++i) {
        auto lower = ideal_generated(a, {a.sub_sum(out.supports[i + 1])});
        auto qq = quotient(a, lower);
        Vec<K> eps_bar = vec_mat(a.sub_sum(out.supports[i]), qq.proj);
        HeredityDiagnostics d = is_heredity_ideal(qq.alg, eps_bar);
        require(d.ok(), "lift_chain: lifted layer " + std::to_string(i) +
                            " failed verification: " + d.reason());
    }
    return out;
}

/// Transports a heredity chain of the corner eAe to a partial chain of A
/// running from AeA down to 0. Requires AeA projective on both sides.
template <ScalarField K>
PartialChain transport_chain_from_corner(const Algebra<K>& a, const Idempotent<K>& e,
                                         const ChainCertificate& cert_corner) {
    require(e.support.has_value() && !vec_is_zero(e.vec),
            "transport_chain: idempotent must be a nonzero sub-sum");
    auto ideal = ideal_generated(a, {e.vec});
    require(is_projective(a, module_of_ideal(a, ideal, Side::Right)),
            "transport_chain: precondition failed: AeA is not right projective");
    auto op = opposite(a);
    require(is_projective(op, module_of_ideal(a, ideal, Side::Left)),
            "transport_chain: precondition failed: AeA is not left projective");
    auto c = corner(a, e);
    require(cert_corner.algebra_hash == c.alg.hash(),
            "transport_chain: certificate does not match the canonical corner eAe");
    std::string why;
    require(verify_chain(c.alg, cert_corner, &why),
            "transport_chain: corner certificate is invalid: " + why);
    PartialChain out;
    for (const auto& layer : cert_corner.layers) {
        std::vector<int> s;
        for (int cc : layer) s.push_back(c.class_map[static_cast<size_t>(cc)]);
        std::sort(s.begin(), s.end());
        out.supports.push_back(std::move(s));
    }
    require(out.supports.front() == *e.support,
            "transport_chain: corner chain does not start at the full corner class set");
    for (size_t i = 0; i + 1 < out.supports.size(); ++i) {
        auto lower = ideal_generated(a, {a.sub_sum(out.supports[i + 1])});
        auto qq = quotient(a, lower);
        Vec<K> eps_bar = vec_mat(a.sub_sum(out.supports[i]), qq.proj);
        HeredityDiagnostics d = is_heredity_ideal(qq.alg, eps_bar);
        require(d.ok(), "transport_chain: transported layer " + std::to_string(i) +
                            " failed verification: " + d.reason());
    }
    return out;
}

struct TheoremHypothesisFailure {
    std::string condition;  // "(a)", "(b)" or "(c)"
    std::string detail;
};

using AssembleResult = std::variant<ChainCertificate, TheoremHypothesisFailure>;

/// Builds a full heredity chain of A from a chain of A/AeA and a chain of
/// eAe, provided AeA is projective on both sides: the lifted quotient chain
/// runs from A to AeA and the transported corner chain continues from AeA to
/// zero. All hypotheses are re-checked; the concatenated certificate is
/// verified before it is returned.
template <ScalarField K>
AssembleResult assemble_chain_theorem1(const Algebra<K>& a, const Idempotent<K>& e,
                                       const ChainCertificate& cert_quotient,
                                       const ChainCertificate& cert_corner) {
    require(e.support.has_value(), "assemble_chain: idempotent must be a sub-sum");
    auto ideal = ideal_generated(a, {e.vec});
    if (!is_projective(a, module_of_ideal(a, ideal, Side::Right)))
        return TheoremHypothesisFailure{"(b)", "AeA is not a projective right module"};
    auto op = opposite(a);
    if (!is_projective(op, module_of_ideal(a, ideal, Side::Left)))
        return TheoremHypothesisFailure{"(c)", "AeA is not a projective left module"};
    PartialChain top, bottom;
    try {
        top = lift_chain_from_quotient(a, e, cert_quotient);
    } catch (const Error& err) {
        return TheoremHypothesisFailure{"(a)", std::string("quotient chain: ") + err.what()};
    }
    try {
        bottom = transport_chain_from_corner(a, e, cert_corner);
    } catch (const Error& err) {
        return TheoremHypothesisFailure{"(a)", std::string("corner chain: ") + err.what()};
    }
    ChainCertificate cert;
    cert.algebra_hash = a.hash();
    cert.layers = top.supports;
    require(!bottom.supports.empty() && cert.layers.back() == bottom.supports.front(),
            "assemble_chain: chain halves do not meet at AeA");
    for (size_t i = 1; i < bottom.supports.size(); ++i) cert.layers.push_back(bottom.supports[i]);
    std::string why;
    require(verify_chain(a, cert, &why), "assemble_chain: assembled chain failed to verify: " + why);
    return cert;
}

}  // namespace qh
