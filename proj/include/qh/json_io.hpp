#pragma once

// JSON interchange for every artifact the CLI reads or writes. Scalars are
// serialized as exact decimal strings over prime fields and as "a/b" strings
// over the rationals; there are no binary floats in any format. Round trips
// are bit-exact, and object keys are emitted in sorted order so identical
// inputs produce byte-identical files.

#include <string>

#include "json.hpp"
#include "qh/block.hpp"
#include "qh/quiver.hpp"

namespace qh {

using nlohmann::json;

inline json field_to_json(const Field<Rat>&) { return json{{"characteristic", 0}}; }
inline json field_to_json(const Field<Fp>& f) { return json{{"characteristic", f.p}}; }

template <ScalarField K>
json vec_to_json(const Field<K>& f, const Vec<K>& v) {
    json out = json::array();
    for (const K& x : v) out.push_back(f.str(x));
    return out;
}

template <ScalarField K>
Vec<K> vec_from_json(const Field<K>& f, const json& j, size_t expect) {
    require(j.is_array() && j.size() == expect, "json: scalar vector of wrong length");
    Vec<K> v;
    for (const auto& x : j) {
        require(x.is_string(), "json: scalars must be strings");
        v.push_back(f.parse(x.get<std::string>()));
    }
    return v;
}

template <ScalarField K>
json matrix_to_json(const Matrix<K>& m) {
    json out = json::array();
    for (size_t i = 0; i < m.rows(); ++i) out.push_back(vec_to_json(m.field(), m.row(i)));
    return out;
}

template <ScalarField K>
Matrix<K> matrix_from_json(const Field<K>& f, const json& j, size_t rows, size_t cols) {
    require(j.is_array() && j.size() == rows, "json: matrix with wrong row count");
    Matrix<K> m(f, rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        Vec<K> r = vec_from_json(f, j[i], cols);
        for (size_t c = 0; c < cols; ++c) m(i, c) = r[c];
    }
    return m;
}

// ---------------------------------------------------------------------------
// Algebra
// ---------------------------------------------------------------------------

template <ScalarField K>
json algebra_to_json(const Algebra<K>& a) {
    json j;
    j["kind"] = "algebra";
    j["field"] = field_to_json(a.fld);
    j["dim"] = a.dim;
    j["labels"] = a.labels;
    json sc = json::array();
    for (size_t x = 0; x < a.dim; ++x) {
        json row = json::array();
        for (size_t y = 0; y < a.dim; ++y) row.push_back(vec_to_json(a.fld, a.sc[x][y]));
        sc.push_back(std::move(row));
    }
    j["structure"] = std::move(sc);
    j["unit"] = vec_to_json(a.fld, a.unit);
    json idems = json::array();
    for (const auto& e : a.idems) idems.push_back(vec_to_json(a.fld, e));
    j["idempotents"] = std::move(idems);
    if (a.radical) {
        // optional: lets algebras whose characteristic is too small for the
        // trace criterion round-trip; validation re-checks the candidate
        json rad = json::array();
        for (size_t i = 0; i < a.radical->dim(); ++i)
            rad.push_back(vec_to_json(a.fld, a.radical->basis_vector(i)));
        j["radical"] = std::move(rad);
    }
    return j;
}

/// Parses without validating; callers decide whether to validate or to
/// require validity.
template <ScalarField K>
Algebra<K> algebra_from_json(const Field<K>& f, const json& j) {
    require(j.is_object() && j.value("kind", "") == "algebra", "json: not an algebra object");
    Algebra<K> a;
    a.fld = f;
    a.dim = j.at("dim").get<size_t>();
    if (j.contains("labels"))
        a.labels = j.at("labels").get<std::vector<std::string>>();
    else
        for (size_t i = 0; i < a.dim; ++i) a.labels.push_back("x" + std::to_string(i));
    require(a.labels.size() == a.dim, "json: label count mismatch");
    const json& sc = j.at("structure");
    require(sc.is_array() && sc.size() == a.dim, "json: structure table has wrong size");
    a.sc.assign(a.dim, std::vector<Vec<K>>(a.dim, zero_vec(f, a.dim)));
    for (size_t x = 0; x < a.dim; ++x) {
        require(sc[x].is_array() && sc[x].size() == a.dim, "json: structure table has wrong size");
        for (size_t y = 0; y < a.dim; ++y) a.sc[x][y] = vec_from_json(f, sc[x][y], a.dim);
    }
    a.unit = vec_from_json(f, j.at("unit"), a.dim);
    for (const auto& e : j.at("idempotents")) a.idems.push_back(vec_from_json(f, e, a.dim));
    if (j.contains("radical")) {
        Subspace<K> rad(f, a.dim);
        for (const auto& v : j.at("radical")) rad.insert(vec_from_json(f, v, a.dim));
        a.radical = std::move(rad);
    }
    return a;
}

// ---------------------------------------------------------------------------
// Quiver presentation
// ---------------------------------------------------------------------------

inline json quiver_to_json(const QuiverPresentation& q) {
    json j;
    j["kind"] = "quiver";
    j["vertices"] = q.vertices;
    json arrows = json::array();
    for (const auto& a : q.arrows)
        arrows.push_back(json{{"label", a.label}, {"source", a.source}, {"target", a.target}});
    j["arrows"] = std::move(arrows);
    json rels = json::array();
    for (const auto& r : q.relations) {
        json terms = json::array();
        for (const auto& t : r.terms) terms.push_back(json{{"coeff", t.coeff}, {"path", t.path}});
        rels.push_back(json{{"terms", std::move(terms)}});
    }
    j["relations"] = std::move(rels);
    j["truncation"] = q.truncation;
    return j;
}

inline QuiverPresentation quiver_from_json(const json& j) {
    require(j.is_object() && j.value("kind", "") == "quiver", "json: not a quiver object");
    QuiverPresentation q;
    q.vertices = j.at("vertices").get<std::vector<std::string>>();
    for (const auto& a : j.at("arrows"))
        q.arrows.push_back({a.at("label").get<std::string>(), a.at("source").get<std::string>(),
                            a.at("target").get<std::string>()});
    if (j.contains("relations"))
        for (const auto& r : j.at("relations")) {
            QuiverPresentation::Relation rel;
            for (const auto& t : r.at("terms"))
                rel.terms.push_back({t.at("coeff").get<std::string>(),
                                     t.at("path").get<std::vector<std::string>>()});
            q.relations.push_back(std::move(rel));
        }
    q.truncation = j.at("truncation").get<size_t>();
    return q;
}

// ---------------------------------------------------------------------------
// Right modules
// ---------------------------------------------------------------------------

template <ScalarField K>
json module_to_json(const Algebra<K>& a, const RightModule<K>& m) {
    json j;
    j["kind"] = "module";
    j["algebra_hash"] = a.hash();
    j["dim"] = m.dim;
    json act = json::array();
    for (const auto& mt : m.act) act.push_back(matrix_to_json(mt));
    j["action"] = std::move(act);
    return j;
}

template <ScalarField K>
RightModule<K> module_from_json(const Algebra<K>& a, const json& j) {
    require(j.is_object() && j.value("kind", "") == "module", "json: not a module object");
    require(j.at("algebra_hash").get<std::string>() == a.hash(),
            "json: module refers to a different algebra");
    RightModule<K> m{j.at("dim").get<size_t>(), {}};
    const json& act = j.at("action");
    require(act.is_array() && act.size() == a.dim, "json: module action table has wrong size");
    for (size_t b = 0; b < a.dim; ++b) m.act.push_back(matrix_from_json(a.fld, act[b], m.dim, m.dim));
    require(module_action_valid(a, m), "json: module action does not respect the algebra");
    return m;
}

// ---------------------------------------------------------------------------
// Morita contexts and block specs
// ---------------------------------------------------------------------------

template <ScalarField K>
json context_to_json(const MoritaContext<K>& mc) {
    const Field<K>& f = mc.r.fld;
    json j;
    j["kind"] = "morita_context";
    j["r"] = algebra_to_json(mc.r);
    j["s"] = algebra_to_json(mc.s);
    auto acts = [&](const std::vector<Matrix<K>>& v) {
        json out = json::array();
        for (const auto& m : v) out.push_back(matrix_to_json(m));
        return out;
    };
    j["m"] = json{{"dim", mc.dim_m}, {"left", acts(mc.m_left)}, {"right", acts(mc.m_right)}};
    j["n"] = json{{"dim", mc.dim_n}, {"left", acts(mc.n_left)}, {"right", acts(mc.n_right)}};
    json phi = json::array();
    for (const auto& row : mc.phi) {
        json r = json::array();
        for (const auto& v : row) r.push_back(vec_to_json(f, v));
        phi.push_back(std::move(r));
    }
    j["phi"] = std::move(phi);
    json psi = json::array();
    for (const auto& row : mc.psi) {
        json r = json::array();
        for (const auto& v : row) r.push_back(vec_to_json(f, v));
        psi.push_back(std::move(r));
    }
    j["psi"] = std::move(psi);
    return j;
}

template <ScalarField K>
MoritaContext<K> context_from_json(const Field<K>& f, const json& j) {
    require(j.is_object() && j.value("kind", "") == "morita_context",
            "json: not a morita_context object");
    MoritaContext<K> mc;
    mc.r = algebra_from_json(f, j.at("r"));
    mc.s = algebra_from_json(f, j.at("s"));
    auto rep_r = validate_algebra(mc.r);
    require(rep_r.ok(), "json: context algebra R invalid:\n" + rep_r.summary());
    auto rep_s = validate_algebra(mc.s);
    require(rep_s.ok(), "json: context algebra S invalid:\n" + rep_s.summary());
    mc.dim_m = j.at("m").at("dim").get<size_t>();
    mc.dim_n = j.at("n").at("dim").get<size_t>();
    auto acts = [&](const json& arr, size_t count, size_t dim) {
        require(arr.is_array() && arr.size() == count, "json: action table has wrong size");
        std::vector<Matrix<K>> out;
        for (size_t i = 0; i < count; ++i) out.push_back(matrix_from_json(f, arr[i], dim, dim));
        return out;
    };
    mc.m_left = acts(j.at("m").at("left"), mc.r.dim, mc.dim_m);
    mc.m_right = acts(j.at("m").at("right"), mc.s.dim, mc.dim_m);
    mc.n_left = acts(j.at("n").at("left"), mc.s.dim, mc.dim_n);
    mc.n_right = acts(j.at("n").at("right"), mc.r.dim, mc.dim_n);
    const json& phi = j.at("phi");
    require(phi.is_array() && phi.size() == mc.dim_m, "json: phi table has wrong size");
    for (size_t i = 0; i < mc.dim_m; ++i) {
        require(phi[i].is_array() && phi[i].size() == mc.dim_n, "json: phi table has wrong size");
        std::vector<Vec<K>> row;
        for (size_t jj = 0; jj < mc.dim_n; ++jj) row.push_back(vec_from_json(f, phi[i][jj], mc.r.dim));
        mc.phi.push_back(std::move(row));
    }
    const json& psi = j.at("psi");
    require(psi.is_array() && psi.size() == mc.dim_n, "json: psi table has wrong size");
    for (size_t i = 0; i < mc.dim_n; ++i) {
        require(psi[i].is_array() && psi[i].size() == mc.dim_m, "json: psi table has wrong size");
        std::vector<Vec<K>> row;
        for (size_t jj = 0; jj < mc.dim_m; ++jj) row.push_back(vec_from_json(f, psi[i][jj], mc.s.dim));
        mc.psi.push_back(std::move(row));
    }
    return mc;
}

template <ScalarField K>
json block_spec_to_json(const BlockSpec<K>& spec) {
    json j;
    j["kind"] = "block_spec";
    j["base"] = algebra_to_json(spec.base);
    j["sizes"] = spec.sizes;
    return j;
}

template <ScalarField K>
BlockSpec<K> block_spec_from_json(const Field<K>& f, const json& j) {
    require(j.is_object() && j.value("kind", "") == "block_spec", "json: not a block_spec object");
    BlockSpec<K> spec{algebra_from_json(f, j.at("base")), j.at("sizes").get<std::vector<int>>()};
    auto rep = validate_algebra(spec.base);
    require(rep.ok(), "json: block spec base algebra invalid:\n" + rep.summary());
    return spec;
}

// ---------------------------------------------------------------------------
// Certificates and refusal reports
// ---------------------------------------------------------------------------

/// Certificates carry per-layer diagnostics for human inspection; verify
/// consumes only the hash and the layer supports.
template <ScalarField K>
json certificate_to_json(const Algebra<K>& a, const ChainCertificate& cert) {
    json j;
    j["kind"] = "certificate";
    j["algebra_hash"] = cert.algebra_hash;
    j["layers"] = cert.layers;
    json diags = json::array();
    for (size_t i = 0; i + 1 < cert.layers.size(); ++i) {
        auto hi = ideal_generated(a, {a.sub_sum(cert.layers[i])});
        auto lo = ideal_generated(a, {a.sub_sum(cert.layers[i + 1])});
        diags.push_back(json{{"layer", i},
                             {"support", cert.layers[i]},
                             {"ideal_dim", hi.space.dim()},
                             {"next_ideal_dim", lo.space.dim()}});
    }
    j["diagnostics"] = std::move(diags);
    return j;
}

inline ChainCertificate certificate_from_json(const json& j) {
    require(j.is_object() && j.value("kind", "") == "certificate", "json: not a certificate");
    ChainCertificate cert;
    cert.algebra_hash = j.at("algebra_hash").get<std::string>();
    cert.layers = j.at("layers").get<std::vector<std::vector<int>>>();
    return cert;
}

inline json refusal_to_json(const RefusalReport& rep) {
    json j;
    j["kind"] = "refusal";
    j["algebra_hash"] = rep.algebra_hash;
    json entries = json::array();
    for (const auto& e : rep.entries) {
        json attempts = json::array();
        for (const auto& at : e.attempts)
            attempts.push_back(json{{"subset", at.subset}, {"reason", at.reason}});
        entries.push_back(json{{"survivors", e.survivors}, {"attempts", std::move(attempts)}});
    }
    j["entries"] = std::move(entries);
    return j;
}

inline json validation_to_json(const ValidationReport& rep) {
    json items = json::array();
    for (const auto& it : rep.items)
        items.push_back(json{{"check", it.check}, {"pass", it.pass}, {"detail", it.detail}});
    return json{{"ok", rep.ok()}, {"items", std::move(items)}};
}

/// Canonical dump: sorted keys (nlohmann's object is ordered), two-space
/// indent, trailing newline. Identical inputs give byte-identical files.
inline std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

}  // namespace qh
