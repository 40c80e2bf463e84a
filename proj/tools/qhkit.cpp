// qhkit: batch tool for deciding quasi-heredity of finite-dimensional
// algebras with verifiable heredity-chain certificates, and for the ring
// constructions (upper triangular rings, Morita context rings, block
// extensions) that preserve quasi-heredity.
//
// Exit status: 0 = success / quasi-hereditary, 1 = verified negative
// (not quasi-hereditary, failed validation, failed verification),
// 2 = input or precondition error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qh/json_io.hpp"

using namespace qh;

namespace {

struct Options {
    std::string field = "q";
    size_t oracle_bound = 0;
    std::string out;
};

unsigned env_threads() {
    const char* v = std::getenv("QH_THREADS");
    if (!v) return 1;
    long n = std::strtol(v, nullptr, 10);
    if (n < 1) return 1;
    if (n > 64) return 64;
    return static_cast<unsigned>(n);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot open input file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail("cannot parse '" + path + "' as JSON: " + e.what());
    }
    return j;
}

void write_artifact(const Options& opt, const json& j) {
    if (opt.out.empty()) return;
    std::ofstream out(opt.out, std::ios::binary);
    require(out.good(), "cannot open output file '" + opt.out + "'");
    out << dump_canonical(j);
}

bool is_rational_field(const std::string& s) { return s == "q" || s == "Q" || s == "0"; }

long long field_char(const std::string& s) {
    if (is_rational_field(s)) return 0;
    try {
        size_t pos = 0;
        long long p = std::stoll(s, &pos);
        require(pos == s.size() && p >= 2, "bad --field value '" + s + "'");
        return p;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail("bad --field value '" + s + "'");
    }
}

/// Runs fn with the scalar field selected by `characteristic`.
template <class Fn>
int with_char(long long characteristic, Fn&& fn) {
    if (characteristic == 0) return fn(Field<Rat>{});
    return fn(Field<Fp>(characteristic));
}

/// Field characteristic for an input file: algebra-like objects carry their
/// own field; quivers use the --field flag. A conflicting explicit flag is an
/// error.
long long resolve_char(const json& j, const Options& opt, bool flag_given) {
    std::string kind = j.value("kind", "");
    if (kind == "quiver") return field_char(opt.field);
    long long file_char = -1;
    if (j.contains("field"))
        file_char = j.at("field").at("characteristic").get<long long>();
    else if (j.contains("base"))
        file_char = j.at("base").at("field").at("characteristic").get<long long>();
    else if (j.contains("r"))
        file_char = j.at("r").at("field").at("characteristic").get<long long>();
    require(file_char >= 0, "input carries no field descriptor");
    if (flag_given)
        require(field_char(opt.field) == file_char,
                "--field conflicts with the field recorded in the input file");
    return file_char;
}

/// Loads an algebra from an algebra or quiver object and validates it.
template <ScalarField K>
Algebra<K> load_algebra(const Field<K>& f, const json& j) {
    std::string kind = j.value("kind", "");
    if (kind == "quiver") return compile_bound_quiver(quiver_from_json(j), f);
    Algebra<K> a = algebra_from_json(f, j);
    ValidationReport rep = validate_algebra(a);
    require(rep.ok(), "input algebra failed validation:\n" + rep.summary());
    return a;
}

template <ScalarField K>
json qh_outcome_json(const Algebra<K>& a, const DecideResult& res) {
    if (std::holds_alternative<ChainCertificate>(res))
        return certificate_to_json(a, std::get<ChainCertificate>(res));
    return refusal_to_json(std::get<RefusalReport>(res));
}

template <ScalarField K>
void oracle_cross_check(const Algebra<K>& a, const DecideResult& res, size_t bound) {
    if (bound == 0 || a.dim > bound) return;
    bool fast = std::holds_alternative<ChainCertificate>(res);
    bool slow = exhaustive_chain_search(a);
    require(fast == slow, "internal: decision disagrees with the exhaustive reference search");
    std::cout << "oracle cross-check (dim " << a.dim << " <= " << bound << "): agreed\n";
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path, const Options& opt, bool flag_given) {
    json j = read_json_file(path);
    std::string kind = j.value("kind", "");
    if (kind == "algebra") {
        return with_char(resolve_char(j, opt, flag_given), [&](auto f) {
            auto a = algebra_from_json(f, j);
            ValidationReport rep = validate_algebra(a);
            std::cout << rep.summary();
            json out = validation_to_json(rep);
            out["kind"] = "validation_report";
            out["hash"] = a.hash();
            write_artifact(opt, out);
            return rep.ok() ? 0 : 1;
        });
    }
    if (kind == "quiver") {
        return with_char(field_char(opt.field), [&](auto f) {
            try {
                auto a = compile_bound_quiver(quiver_from_json(j), f);
                std::cout << "[pass] compiled bound quiver algebra: dim " << a.dim << ", "
                          << a.n_classes() << " classes\n";
                json out{{"kind", "validation_report"},
                         {"ok", true},
                         {"dim", a.dim},
                         {"hash", a.hash()}};
                write_artifact(opt, out);
                return 0;
            } catch (const Error& e) {
                std::cout << "[FAIL] " << e.what() << "\n";
                write_artifact(opt, json{{"kind", "validation_report"},
                                         {"ok", false},
                                         {"error", e.what()}});
                return 1;
            }
        });
    }
    if (kind == "morita_context") {
        return with_char(resolve_char(j, opt, flag_given), [&](auto f) {
            auto mc = context_from_json(f, j);
            ValidationReport rep = validate_morita_context(mc);
            std::cout << rep.summary();
            json out = validation_to_json(rep);
            out["kind"] = "validation_report";
            write_artifact(opt, out);
            return rep.ok() ? 0 : 1;
        });
    }
    if (kind == "block_spec") {
        return with_char(resolve_char(j, opt, flag_given), [&](auto f) {
            auto spec = block_spec_from_json(f, j);
            try {
                auto b = build_block_extension(spec);
                std::cout << "[pass] block extension builds: dim " << b.alg.dim << ", "
                          << b.l_total << " classes\n";
                write_artifact(opt, json{{"kind", "validation_report"},
                                         {"ok", true},
                                         {"dim", b.alg.dim}});
                return 0;
            } catch (const Error& e) {
                std::cout << "[FAIL] " << e.what() << "\n";
                write_artifact(opt, json{{"kind", "validation_report"},
                                         {"ok", false},
                                         {"error", e.what()}});
                return 1;
            }
        });
    }
    fail("validate: unsupported input kind '" + kind + "'");
}

int cmd_radical(const std::string& path, const Options& opt, bool flag_given) {
    json j = read_json_file(path);
    return with_char(resolve_char(j, opt, flag_given), [&](auto f) {
        auto a = load_algebra(f, j);
        const auto& rad = *a.radical;
        std::cout << "radical dimension " << rad.dim() << " (algebra dim " << a.dim << ")\n";
        json basis = json::array();
        for (size_t i = 0; i < rad.dim(); ++i)
            basis.push_back(vec_to_json(a.fld, rad.basis_vector(i)));
        write_artifact(opt, json{{"kind", "radical"},
                                 {"algebra_hash", a.hash()},
                                 {"dim", rad.dim()},
                                 {"basis", std::move(basis)}});
        return 0;
    });
}

int cmd_qh_check(const std::string& path, const Options& opt, bool flag_given, bool certify) {
    json j = read_json_file(path);
    return with_char(resolve_char(j, opt, flag_given), [&](auto f) {
        auto a = load_algebra(f, j);
        auto res = decide_qh(a, env_threads());
        oracle_cross_check(a, res, opt.oracle_bound);
        bool is_qh = std::holds_alternative<ChainCertificate>(res);
        if (is_qh) {
            const auto& cert = std::get<ChainCertificate>(res);
            std::cout << "quasi-hereditary: chain of length " << cert.layers.size() - 1 << "\n";
            for (const auto& layer : cert.layers) {
                std::cout << "  [";
                for (size_t i = 0; i < layer.size(); ++i)
                    std::cout << (i ? "," : "") << layer[i];
                std::cout << "]\n";
            }
        } else {
            std::cout << "not quasi-hereditary (exhaustive search over idempotent layers)\n";
        }
        if (certify || !opt.out.empty()) write_artifact(opt, qh_outcome_json(a, res));
        return is_qh ? 0 : 1;
    });
}

int cmd_qh_verify(const std::string& cert_path, const std::string& alg_path, const Options& opt,
                  bool flag_given) {
    json cj = read_json_file(cert_path);
    json aj = read_json_file(alg_path);
    return with_char(resolve_char(aj, opt, flag_given), [&](auto f) {
        auto a = load_algebra(f, aj);
        ChainCertificate cert = certificate_from_json(cj);
        std::string why;
        bool ok = verify_chain(a, cert, &why);
        if (ok)
            std::cout << "certificate verifies: " << cert.layers.size() - 1 << " layers\n";
        else
            std::cout << "certificate REJECTED: " << why << "\n";
        write_artifact(opt, json{{"kind", "verification"},
                                 {"ok", ok},
                                 {"detail", why},
                                 {"algebra_hash", a.hash()}});
        return ok ? 0 : 1;
    });
}

int cmd_construct_triangular(const std::string& path, int size, const Options& opt,
                             bool flag_given) {
    json j = read_json_file(path);
    return with_char(resolve_char(j, opt, flag_given), [&](auto f) {
        auto a = load_algebra(f, j);
        auto t = build_triangular(a, size);
        std::cout << "upper triangular ring of size " << size << ": dim " << t.alg.dim << ", "
                  << t.alg.n_classes() << " classes\n";
        write_artifact(opt, algebra_to_json(t.alg));
        return 0;
    });
}

int cmd_construct_morita(const std::string& path, const Options& opt, bool flag_given) {
    json j = read_json_file(path);
    return with_char(resolve_char(j, opt, flag_given), [&](auto f) {
        auto mc = context_from_json(f, j);
        auto ring = build_morita_ring(mc);
        std::cout << "Morita context ring: dim " << ring.alg.dim << ", " << ring.alg.n_classes()
                  << " classes\n";
        write_artifact(opt, algebra_to_json(ring.alg));
        return 0;
    });
}

int cmd_construct_block(const std::string& path, const Options& opt, bool flag_given) {
    json j = read_json_file(path);
    return with_char(resolve_char(j, opt, flag_given), [&](auto f) {
        auto spec = block_spec_from_json(f, j);
        auto b = build_block_extension(spec);
        std::cout << "block extension: dim " << b.alg.dim << ", " << b.l_total << " classes\n";
        write_artifact(opt, algebra_to_json(b.alg));
        return 0;
    });
}

int cmd_paper_example(const Options& opt) {
    return with_char(field_char(opt.field), [&](auto f) {
        using KK = decltype(f.zero());
        auto a = compile_bound_quiver(bound_cycle_example(), f);
        std::cout << "worked example: bound 3-cycle algebra, dim " << a.dim << "\n";
        bool dim_ok = a.dim == 11;

        auto res = decide_qh(a, env_threads());
        bool not_qh = std::holds_alternative<RefusalReport>(res);
        std::cout << "  not quasi-hereditary: " << (not_qh ? "confirmed" : "VIOLATED") << "\n";

        auto e = Idempotent<KK>::sub_sum(a, {0, 2});
        auto ideal = ideal_generated(a, {e.vec});
        bool right_proj = is_projective(a, module_of_ideal(a, ideal, Side::Right));
        std::cout << "  AeA right projective (e = e_1 + e_3): "
                  << (right_proj ? "confirmed" : "VIOLATED") << "\n";
        auto op = opposite(a);
        bool left_proj = is_projective(op, module_of_ideal(a, ideal, Side::Left));
        std::cout << "  AeA left projective: " << (!left_proj ? "false, confirmed" : "VIOLATED")
                  << "\n";

        auto q = quotient(a, ideal);
        bool quot_qh = std::holds_alternative<ChainCertificate>(decide_qh(q.alg, env_threads()));
        auto c = corner(a, e);
        bool corner_qh = std::holds_alternative<ChainCertificate>(decide_qh(c.alg, env_threads()));
        std::cout << "  A/AeA quasi-hereditary: " << (quot_qh ? "confirmed" : "VIOLATED") << "\n";
        std::cout << "  eAe quasi-hereditary: " << (corner_qh ? "confirmed" : "VIOLATED") << "\n";

        bool all = dim_ok && not_qh && right_proj && !left_proj && quot_qh && corner_qh;
        json out{{"kind", "report"},
                 {"example", "bound_cycle"},
                 {"dim", a.dim},
                 {"algebra_hash", a.hash()},
                 {"not_quasi_hereditary", not_qh},
                 {"aea_right_projective", right_proj},
                 {"aea_left_projective", left_proj},
                 {"quotient_quasi_hereditary", quot_qh},
                 {"corner_quasi_hereditary", corner_qh}};
        write_artifact(opt, out);
        require(all, "worked example properties did not all hold");
        return 0;
    });
}

int cmd_report(const std::string& path, const Options& opt, bool flag_given) {
    json j = read_json_file(path);
    return with_char(resolve_char(j, opt, flag_given), [&](auto f) {
        auto a = load_algebra(f, j);
        json out{{"kind", "report"}, {"algebra_hash", a.hash()}, {"dim", a.dim}};
        out["field"] = field_to_json(a.fld);
        out["classes"] = a.n_classes();
        out["labels"] = a.labels;
        out["radical_dim"] = a.radical->dim();
        json peirce_dims = json::array();
        for (size_t i = 0; i < a.n_classes(); ++i) {
            json row = json::array();
            for (size_t s = 0; s < a.n_classes(); ++s)
                row.push_back(peirce(a, a.idems[i], a.idems[s]).dim());
            peirce_dims.push_back(std::move(row));
        }
        out["peirce_dims"] = std::move(peirce_dims);
        json projs = json::array();
        for (size_t i = 0; i < a.n_classes(); ++i) projs.push_back(a.right_proj_dims[i]);
        out["projective_dims"] = std::move(projs);
        auto res = decide_qh(a, env_threads());
        oracle_cross_check(a, res, opt.oracle_bound);
        bool is_qh = std::holds_alternative<ChainCertificate>(res);
        out["quasi_hereditary"] = is_qh;
        out["decision"] = qh_outcome_json(a, res);
        std::cout << "dim " << a.dim << ", " << a.n_classes() << " classes, radical dim "
                  << a.radical->dim() << "\n"
                  << (is_qh ? "quasi-hereditary" : "not quasi-hereditary") << "\n";
        write_artifact(opt, out);
        return is_qh ? 0 : 1;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact decision of quasi-heredity with verifiable chain certificates"};
    app.require_subcommand(1);

    Options opt;
    std::string input, cert_path, alg_path;
    int size = 1;

    auto add_common = [&](CLI::App* cmd, bool with_oracle = false) {
        cmd->add_option("--field", opt.field, "scalar field: q (rationals) or a prime p");
        cmd->add_option("--out", opt.out, "write the JSON artifact here");
        if (with_oracle)
            cmd->add_option("--oracle-bound", opt.oracle_bound,
                            "cross-check the decision exhaustively up to this dimension");
    };

    auto* validate = app.add_subcommand("validate", "check an algebra/quiver/context/block spec");
    validate->add_option("input", input, "input JSON file")->required();
    add_common(validate);

    auto* radical = app.add_subcommand("radical", "compute the Jacobson radical");
    radical->add_option("input", input)->required();
    add_common(radical);

    auto* qh_group = app.add_subcommand("qh", "quasi-heredity decisions and certificates");
    qh_group->require_subcommand(1);
    auto* check = qh_group->add_subcommand("check", "decide quasi-heredity (verdict only)");
    check->add_option("input", input)->required();
    add_common(check, true);
    auto* certify = qh_group->add_subcommand("certify", "decide and emit a certificate");
    certify->add_option("input", input)->required();
    add_common(certify, true);
    auto* verify = qh_group->add_subcommand("verify", "re-check an emitted certificate");
    verify->add_option("certificate", cert_path, "certificate JSON file")->required();
    verify->add_option("--algebra", alg_path, "algebra or quiver the certificate refers to")
        ->required();
    add_common(verify);

    auto* construct = app.add_subcommand("construct", "ring constructions");
    construct->require_subcommand(1);
    auto* tri = construct->add_subcommand("triangular", "upper triangular matrix ring");
    tri->add_option("input", input)->required();
    tri->add_option("--size", size, "matrix size")->required();
    add_common(tri);
    auto* morita = construct->add_subcommand("morita", "Morita context ring");
    morita->add_option("input", input)->required();
    add_common(morita);
    auto* block = construct->add_subcommand("block-ext", "block extension");
    block->add_option("input", input)->required();
    add_common(block);

    auto* example = app.add_subcommand(
        "paper-example", "build the worked 3-cycle example and report its properties");
    add_common(example);

    auto* report = app.add_subcommand("report", "full diagnostic bundle for an algebra");
    report->add_option("input", input)->required();
    add_common(report, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(validate))
            return cmd_validate(input, opt, validate->count("--field") > 0);
        if (app.got_subcommand(radical))
            return cmd_radical(input, opt, radical->count("--field") > 0);
        if (app.got_subcommand(qh_group)) {
            if (qh_group->got_subcommand(check))
                return cmd_qh_check(input, opt, check->count("--field") > 0, false);
            if (qh_group->got_subcommand(certify)) {
                require(!opt.out.empty(), "qh certify requires --out");
                return cmd_qh_check(input, opt, certify->count("--field") > 0, true);
            }
            return cmd_qh_verify(cert_path, alg_path, opt, verify->count("--field") > 0);
        }
        if (app.got_subcommand(construct)) {
            if (construct->got_subcommand(tri))
                return cmd_construct_triangular(input, size, opt, tri->count("--field") > 0);
            if (construct->got_subcommand(morita))
                return cmd_construct_morita(input, opt, morita->count("--field") > 0);
            return cmd_construct_block(input, opt, block->count("--field") > 0);
        }
        if (app.got_subcommand(example)) return cmd_paper_example(opt);
        if (app.got_subcommand(report))
            return cmd_report(input, opt, report->count("--field") > 0);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
