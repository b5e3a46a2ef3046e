// Command-line front end: analyze access structures, build and verify
// schemes, encode secrets into shares, stack shares back together.
//
// Exit codes: 0 success, 2 verification failure, 3 input/output error,
// 4 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "xvcs/builder2n.hpp"
#include "xvcs/existence.hpp"
#include "xvcs/gf2solve.hpp"
#include "xvcs/image.hpp"
#include "xvcs/json_io.hpp"
#include "xvcs/oracle.hpp"

namespace {

using namespace xvcs;

struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ParsedStructure load_structure(const std::string& path) { return parse_structure(read_file(path)); }

LoadedScheme load_scheme(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return scheme_from_json(j);
}

// Antichain of minimal elements among the scheme's qualified rows; the
// forbidden family follows from those when no structure file is supplied.
AccessStructure structure_from_rows(int n, const std::vector<Subset>& rows) {
    std::vector<Subset> minimal;
    for (const Subset& a : rows) {
        bool dominated = false;
        for (const Subset& b : rows) {
            if (a != b && std::includes(a.begin(), a.end(), b.begin(), b.end())) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            minimal.push_back(a);
        }
    }
    return AccessStructure(n, std::move(minimal));
}

// Resolves the access structure a scheme is judged against: the supplied
// structure file if any, else the scheme's own qualified rows.
struct Judged {
    LinearScheme scheme;
    AccessStructure structure;
};

Judged judge_against(LinearScheme scheme, const std::string& structure_path) {
    if (structure_path.empty()) {
        AccessStructure s = structure_from_rows(scheme.n(), scheme.qualified.row_sets);
        return {std::move(scheme), std::move(s)};
    }
    ParsedStructure parsed = load_structure(structure_path);
    if (parsed.structure.n() != scheme.n()) {
        throw VerificationFailure("structure file has n=" + std::to_string(parsed.structure.n()) +
                                  " but scheme has n=" + std::to_string(scheme.n()));
    }
    scheme.declared = parsed.structure.declared_qualified();
    return {std::move(scheme), std::move(parsed.structure)};
}

void emit(const nlohmann::ordered_json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) {
            throw std::runtime_error("cannot open " + out_path + " for writing");
        }
        out << j.dump(2) << "\n";
    }
}

int cmd_analyze(const std::string& structure_path, bool json_out) {
    ParsedStructure parsed = load_structure(structure_path);
    const AccessStructure& s = parsed.structure;

    std::optional<ExistenceVerdict> e1;
    std::string e1_refusal;
    try {
        e1 = exists_expansion_one(s);
    } catch (const std::invalid_argument& e) {
        e1_refusal = e.what();
    }
    std::optional<ExistenceVerdict> sx;
    std::string sx_refusal;
    try {
        sx = exists_sxvcs(s);
    } catch (const std::invalid_argument& e) {
        sx_refusal = e.what();
    }

    nlohmann::ordered_json report =
        analyze_report(s, parsed.warnings, e1 ? &*e1 : nullptr, e1_refusal,
                       sx ? &*sx : nullptr, sx_refusal);
    if (json_out) {
        std::cout << report.dump(2) << "\n";
        return 0;
    }
    std::cout << "participants: " << s.n() << "\n";
    for (const std::string& w : parsed.warnings) {
        std::cout << "warning: " << w << "\n";
    }
    std::cout << "minimal qualified:";
    for (const Subset& q : s.minimal_qualified()) {
        std::cout << " " << subset_string(q);
    }
    std::cout << "\nmaximal forbidden:";
    ForbiddenFamily fam = forbidden_family(s);
    for (const Subset& f : fam.maximal_forbidden()) {
        std::cout << " " << subset_string(f);
    }
    std::cout << "\nexpansion-1 scheme: ";
    if (e1) {
        std::cout << (e1->exists ? "exists" : "does not exist") << " (" << e1->reason << ")\n";
    } else {
        std::cout << "refused: " << e1_refusal << "\n";
    }
    std::cout << "noise-free scheme:  ";
    if (sx) {
        if (sx->exists) {
            std::cout << "exists, minimal m = " << *sx->minimal_m
                      << (sx->minimal_m_is_exact ? "" : " (upper bound)") << "\n";
            for (int r = 0; r < sx->certificate->rows(); ++r) {
                std::cout << "  certificate row " << r + 1 << ": "
                          << sx->certificate->row_string(r) << "\n";
            }
        } else {
            std::cout << "does not exist (" << sx->reason << ")\n";
        }
    } else {
        std::cout << "refused: " << sx_refusal << "\n";
    }
    return 0;
}

void print_verification(const LinearScheme& scheme, const ContrastReport& contrast,
                        const SecurityReport& security, const SchemeClass& cls) {
    std::cout << "class: " << cls.str() << "\n";
    if (!cls.diagnostic.empty()) {
        std::cout << "failure: " << cls.diagnostic << "\n";
    }
    if (contrast.pass) {
        std::cout << "average contrast: " << contrast.average.str()
                  << "  min contrast: " << contrast.min_alpha.str() << "\n";
        if (scheme.declared.size() <= 32) {
            for (const PerQContrast& pq : contrast.per_q) {
                std::cout << "  " << subset_string(pq.q) << ": alpha=" << pq.alpha.str();
                if (pq.is_static) {
                    std::cout << "  stacks " << pq.e0.front().row_string(0) << " / "
                              << pq.e1.front().row_string(0);
                }
                std::cout << "\n";
            }
        }
    }
    if (!security.pass && security.failure) {
        std::cout << "security failure at F=" << subset_string(security.failure->f) << ": "
                  << security.failure->detail << "\n";
    }
}

int verify_and_emit(const Judged& judged, const SchemeClass& expected_class, bool have_expected,
                    bool json_out, bool brute, const std::string& out_path) {
    const LinearScheme& scheme = judged.scheme;
    ForbiddenFamily fam = forbidden_family(judged.structure);
    ContrastReport contrast = check_contrast(scheme, scheme.declared.size() <= 4096);
    SecurityReport security = check_security(scheme, fam);
    SchemeClass cls = classify(scheme, fam);

    std::string brute_note;
    if (brute) {
        std::vector<BitMatrix> c0, c1;
        for (const SolveResult& r : scheme.white) {
            for (const BitMatrix& x : enumerate_solutions(r)) {
                c0.push_back(x);
            }
        }
        for (const SolveResult& r : scheme.black) {
            for (const BitMatrix& x : enumerate_solutions(r)) {
                c1.push_back(x);
            }
        }
        AccessStructure declared_structure(judged.structure.n(),
                                           judged.structure.minimal_qualified(), scheme.declared);
        OracleVerdict v = oracle_classify(c0, c1, declared_structure);
        bool agree = v.xvcs == (cls.kind != SchemeKind::NotAScheme) &&
                     (!v.xvcs || v.sxvcs == (cls.kind == SchemeKind::Sxvcs));
        brute_note = std::string("brute-force: xvcs=") + (v.xvcs ? "yes" : "no") +
                     " sxvcs=" + (v.sxvcs ? "yes" : "no") + (agree ? " (agrees)" : " (DISAGREES)");
        if (!agree) {
            throw VerificationFailure("brute-force verdict disagrees with linear-algebra verdict");
        }
    }

    bool ok = cls.kind != SchemeKind::NotAScheme;
    bool class_matches = !have_expected || (cls.kind == expected_class.kind &&
                                            cls.perfect_white == expected_class.perfect_white);
    if (json_out) {
        nlohmann::ordered_json j;
        j["class"] = cls.str();
        if (!cls.diagnostic.empty()) {
            j["failure"] = cls.diagnostic;
        }
        j["contrast"] = contrast_to_json(contrast);
        if (!security.pass && security.failure) {
            j["security_failure"] = "F=" + subset_string(security.failure->f) + ": " +
                                    security.failure->detail;
        }
        if (have_expected) {
            j["declared_class"] = expected_class.str();
            j["declared_class_matches"] = class_matches;
        }
        if (!brute_note.empty()) {
            j["brute_force"] = brute_note;
        }
        emit(j, out_path);
    } else {
        print_verification(scheme, contrast, security, cls);
        if (!brute_note.empty()) {
            std::cout << brute_note << "\n";
        }
        if (have_expected && !class_matches) {
            std::cout << "declared class " << expected_class.str() << " does not match\n";
        }
    }
    if (!ok) {
        return 2;
    }
    if (!class_matches) {
        std::cerr << "error: scheme re-verifies as " << cls.str() << " but declares "
                  << expected_class.str() << "\n";
        return 2;
    }
    return 0;
}

int cmd_build2n(int n, bool json_out, const std::string& out_path) {
    LinearScheme scheme = build_optimal_2n(n);
    ForbiddenFamily fam = forbidden_family(threshold_structure(2, n));
    SchemeClass cls = classify(scheme, fam);
    if (cls.kind != SchemeKind::Sxvcs || !cls.perfect_white) {
        throw VerificationFailure("constructed scheme failed verification: " + cls.diagnostic);
    }
    ContrastReport contrast = check_contrast(scheme, /*with_details=*/false);
    if (!json_out) {
        std::cerr << "n=" << n << " m=" << scheme.m << " class=" << cls.str()
                  << " average_contrast=" << contrast.average.str()
                  << " min_contrast=" << contrast.min_alpha.str() << "\n";
    }
    emit(scheme_to_json(scheme, cls), out_path);
    return 0;
}

int cmd_build(const std::string& structure_path, int m, const std::string& b1_rows,
              bool exhaustive, bool json_out, const std::string& out_path) {
    ParsedStructure parsed = load_structure(structure_path);
    const AccessStructure& s = parsed.structure;
    QualifiedMatrix q = s.qualified_matrix();
    const int t = q.t();

    BitMatrix b1;
    if (!b1_rows.empty()) {
        std::vector<std::string> rows;
        std::string cur;
        for (char c : b1_rows) {
            if (c == ',') {
                rows.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        rows.push_back(cur);
        b1 = BitMatrix::from_rows(rows);
        if (b1.rows() != t) {
            throw std::invalid_argument("--b1 must have one row per qualified set (" +
                                        std::to_string(t) + ")");
        }
        if (m > 0 && b1.cols() != m) {
            throw std::invalid_argument("--b1 width disagrees with --m");
        }
        m = b1.cols();
    } else if (exhaustive) {
        if (m < 1) {
            throw std::invalid_argument("--m is required");
        }
        if (static_cast<std::int64_t>(t) * m > 20) {
            throw std::invalid_argument("--exhaustive search capped at t*m <= 20");
        }
        ForbiddenFamily fam = forbidden_family(s);
        bool found = false;
        const std::uint64_t total = std::uint64_t(1) << (t * m);
        for (std::uint64_t bits = 0; bits < total && !found; ++bits) {
            BitMatrix cand(t, m);
            for (int r = 0; r < t; ++r) {
                for (int c = 0; c < m; ++c) {
                    if ((bits >> (r * m + c)) & 1u) {
                        cand.set(r, c, true);
                    }
                }
            }
            bool nonzero_rows = true;
            for (int r = 0; r < t; ++r) {
                nonzero_rows = nonzero_rows && !cand.row_is_zero(r);
            }
            if (!nonzero_rows) {
                continue;
            }
            LinearScheme trial = make_scheme(q, {BitMatrix(t, m)}, {cand});
            if (trial.well_formed && check_security(trial, fam).pass) {
                b1 = cand;
                found = true;
            }
        }
        if (!found) {
            throw VerificationFailure("exhaustive search found no valid black target at m=" +
                                      std::to_string(m));
        }
    } else {
        if (m < 1) {
            throw std::invalid_argument("--m is required");
        }
        ExistenceVerdict verdict = exists_sxvcs(s);
        if (!verdict.exists) {
            throw VerificationFailure("no noise-free scheme exists: " + verdict.reason);
        }
        if (*verdict.minimal_m > m) {
            throw VerificationFailure("no valid black target at m=" + std::to_string(m) +
                                      " (minimal m is " + std::to_string(*verdict.minimal_m) +
                                      ")");
        }
        // pad the certificate by cycling its columns up to the requested width
        const BitMatrix& cert = *verdict.certificate;
        b1 = BitMatrix(t, m);
        for (int c = 0; c < m; ++c) {
            for (int r = 0; r < t; ++r) {
                if (cert.get(r, c % cert.cols())) {
                    b1.set(r, c, true);
                }
            }
        }
    }

    LinearScheme scheme =
        make_scheme(q, {BitMatrix(t, m)}, {std::move(b1)}, s.declared_qualified());
    ForbiddenFamily fam = forbidden_family(s);
    SchemeClass cls = classify(scheme, fam);
    if (cls.kind == SchemeKind::NotAScheme) {
        throw VerificationFailure("constructed scheme failed verification: " + cls.diagnostic);
    }
    if (!json_out) {
        ContrastReport contrast = check_contrast(scheme, /*with_details=*/false);
        std::cerr << "m=" << scheme.m << " class=" << cls.str()
                  << " average_contrast=" << contrast.average.str() << "\n";
    }
    emit(scheme_to_json(scheme, cls), out_path);
    return 0;
}

int cmd_encode(const std::string& scheme_path, const std::string& secret_path,
               const std::string& structure_path, std::uint64_t seed,
               const std::string& layout_name, const std::string& out_dir) {
    LoadedScheme loaded = load_scheme(scheme_path);
    if (!structure_path.empty()) {
        Judged judged = judge_against(loaded.scheme, structure_path);
        SchemeClass cls = classify(judged.scheme, forbidden_family(judged.structure));
        if (cls.kind == SchemeKind::NotAScheme) {
            throw VerificationFailure("scheme fails verification: " + cls.diagnostic);
        }
        loaded.scheme = std::move(judged.scheme);
    } else {
        if (!loaded.scheme.well_formed) {
            throw VerificationFailure("scheme is not well formed: " + loaded.scheme.defect);
        }
        ContrastReport contrast = check_contrast(loaded.scheme, /*with_details=*/false);
        if (!contrast.pass) {
            throw VerificationFailure("scheme fails contrast: " + contrast.failure->detail);
        }
    }
    ShareImage secret = read_pbm(std::filesystem::path(secret_path));
    SubpixelLayout layout = layout_name == "block" ? SubpixelLayout::block_for(loaded.scheme.m)
                                                   : SubpixelLayout::strip();
    std::vector<ShareImage> shares = encode(secret, loaded.scheme, layout, seed);
    std::filesystem::path dir(out_dir.empty() ? "." : out_dir);
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < shares.size(); ++i) {
        write_pbm(dir / ("share_" + std::to_string(i + 1) + ".pbm"), shares[i]);
    }
    std::cout << "wrote " << shares.size() << " shares (" << shares.front().width() << "x"
              << shares.front().height() << ") to " << dir.string() << "\n";
    return 0;
}

int cmd_stack(const std::vector<std::string>& share_paths, const std::string& out_path) {
    std::vector<ShareImage> shares;
    for (const std::string& p : share_paths) {
        shares.push_back(read_pbm(std::filesystem::path(p)));
    }
    ShareImage out = stack_images(shares);
    write_pbm(std::filesystem::path(out_path), out);
    std::cout << "wrote " << out_path << " (" << out.width() << "x" << out.height() << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"XOR-based visual cryptography toolkit"};
    app.require_subcommand(1);

    std::string structure_path, scheme_path, secret_path, out_path, out_dir, b1_rows;
    std::string layout_name = "strip";
    int m = 0, n = 0;
    std::uint64_t seed = 0;
    bool json_out = false, brute = false, exhaustive = false;
    std::vector<std::string> share_paths;

    CLI::App* analyze = app.add_subcommand("analyze", "existence report for an access structure");
    analyze->add_option("structure", structure_path, "structure file")->required();
    analyze->add_flag("--json", json_out, "machine-readable output");

    CLI::App* build = app.add_subcommand("build", "build a perfect-white noise-free scheme");
    build->add_option("--structure", structure_path, "structure file")->required();
    build->add_option("--m", m, "pixel expansion");
    build->add_option("--b1", b1_rows, "explicit black target rows, comma-separated bit strings");
    build->add_flag("--exhaustive", exhaustive, "raw search over all black targets");
    build->add_option("--out", out_path, "output scheme JSON path (default stdout)");
    build->add_flag("--json", json_out, "suppress the human summary line");

    CLI::App* build2n = app.add_subcommand("build2n", "optimal pairwise scheme on n participants");
    build2n->add_option("--n", n, "participant count")->required();
    build2n->add_option("--out", out_path, "output scheme JSON path (default stdout)");
    build2n->add_flag("--json", json_out, "suppress the human summary line");

    CLI::App* encode_cmd = app.add_subcommand("encode", "encode a secret image into shares");
    encode_cmd->add_option("scheme", scheme_path, "scheme JSON")->required();
    encode_cmd->add_option("secret", secret_path, "secret image (PBM)")->required();
    encode_cmd->add_option("--structure", structure_path,
                           "access structure for full verification before encoding");
    encode_cmd->add_option("--seed", seed, "encoding seed")->required();
    encode_cmd->add_option("--layout", layout_name, "strip|block")
        ->check(CLI::IsMember({"strip", "block"}));
    encode_cmd->add_option("--out-dir", out_dir, "output directory (default .)");

    CLI::App* stack_cmd = app.add_subcommand("stack", "XOR shares together");
    stack_cmd->add_option("shares", share_paths, "share images (PBM)")->required();
    stack_cmd->add_option("--out", out_path, "output image path")->required();

    CLI::App* verify = app.add_subcommand("verify", "re-verify a scheme JSON");
    verify->add_option("scheme", scheme_path, "scheme JSON")->required();
    verify->add_option("--structure", structure_path,
                       "access structure to judge against (default: derived from rows)");
    verify->add_flag("--brute-force", brute, "cross-check against enumerated collections");
    verify->add_flag("--json", json_out, "machine-readable output");
    verify->add_option("--out", out_path, "output path for --json (default stdout)");

    try {
        app.parse(argc, argv);
        if (analyze->parsed()) {
            return cmd_analyze(structure_path, json_out);
        }
        if (build->parsed()) {
            return cmd_build(structure_path, m, b1_rows, exhaustive, json_out, out_path);
        }
        if (build2n->parsed()) {
            return cmd_build2n(n, json_out, out_path);
        }
        if (encode_cmd->parsed()) {
            return cmd_encode(scheme_path, secret_path, structure_path, seed, layout_name,
                              out_dir);
        }
        if (stack_cmd->parsed()) {
            return cmd_stack(share_paths, out_path);
        }
        if (verify->parsed()) {
            LoadedScheme loaded = load_scheme(scheme_path);
            Judged judged = judge_against(std::move(loaded.scheme), structure_path);
            return verify_and_emit(judged, loaded.declared_class, true, json_out, brute,
                                   out_path);
        }
        return 4;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 4;
    } catch (const VerificationFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
