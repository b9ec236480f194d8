#include "rankin/cli_commands.hpp"
#include "rankin/hecke.hpp"
#include "rankin/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

int write_out(const std::string& path, const std::string& text) {
    if (path.empty()) return 0;
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "cannot open output file " << path << "\n";
        return 1;
    }
    os << text;
    return 0;
}

int emit(const rankin::CommandOutput& result, const std::string& out_path) {
    std::cout << result.text;
    if (int rc = write_out(out_path, result.text)) return rc;
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for Rankin-Eisenstein computations"};
    app.require_subcommand(1);
    app.fallthrough();

    rankin::GlobalOptions g;
    if (const char* env = std::getenv("RANKIN_DATA_DIR")) g.data_dir = env;
    app.add_option("--p", g.p, "prime p");
    app.add_option("--prec", g.prec, "p-adic precision exponent r");
    app.add_option("--qprec", g.qprec, "q-expansion truncation T");
    app.add_option("--seed", g.seed, "seed for randomized property tests");
    app.add_option("--out", g.out, "write the report/output to this file");

    auto* verify = app.add_subcommand("verify", "run the registered identity checks");
    std::vector<std::string> only;
    bool negative_controls = false;
    bool transcript = false;
    verify->add_option("--only", only, "run only the named check ids");
    verify->add_flag("--negative-controls", negative_controls,
                     "run designed perturbations (they must fail; exit 0 iff exactly they do)");
    verify->add_flag("--transcript", transcript,
                     "print the expansion transcript of the Hecke-algebra identities and exit");

    auto* eis = app.add_subcommand("eisenstein", "print an Eisenstein q-expansion");
    long e_weight = 1, e_t = 0, e_N = 1;
    std::string e_chi1 = "chi(1; 0)", e_chi2 = "chi(1; 0)";
    eis->add_option("--weight", e_weight, "weight k >= 1")->required();
    eis->add_option("--t", e_t, "residue t");
    eis->add_option("--N", e_N, "modulus N")->required();
    eis->add_option("--chi1", e_chi1, "first character, chi(N; v1,v2,...)");
    eis->add_option("--chi2", e_chi2, "second character, chi(N; v1,v2,...)");

    auto* pl = app.add_subcommand("padic-l", "ordinary-projection p-adic L-value");
    std::string f_path, g_path, g_a0 = "0";
    long j = 0, aux_level = 0;
    pl->add_option("--f", f_path, "newform file for f")->required();
    pl->add_option("--g", g_path, "newform file for g")->required();
    pl->add_option("--j", j, "critical twist j")->required();
    pl->add_option("--aux-level", aux_level, "auxiliary level N")->required();
    pl->add_option("--g-a0", g_a0, "constant term of g (rational), for Eisenstein g");

    auto* bl = app.add_subcommand("big-log", "Perrin-Riou big logarithm demo run");
    std::string phi_path;
    long pi_prec = 0;
    bl->add_option("--phi", phi_path, "Frobenius matrix file (row-major integers)")->required();
    bl->add_option("--pi-prec", pi_prec, "pi-adic truncation T_pi")->required();

    auto* pc = app.add_subcommand("pairing-check", "Weil pairing / isogeny law on one curve");
    long q = 0, a = 0, b = 0, n = 0, ell = 0;
    pc->add_option("--q", q, "field characteristic")->required();
    pc->add_option("--a", a, "curve coefficient a")->required();
    pc->add_option("--b", b, "curve coefficient b")->required();
    pc->add_option("--n", n, "pairing torsion order n")->required();
    pc->add_option("--ell", ell, "isogeny degree")->required();

    auto* mz = app.add_subcommand("mazur-zeta", "regularized p-adic zeta element");
    long mz_t = 1, mz_N = 1, mz_d = 7, mz_m = 1;
    mz->add_option("--t", mz_t, "residue t");
    mz->add_option("--N", mz_N, "tame modulus N");
    mz->add_option("--d", mz_d, "regulator d, coprime to 6pN")->required();
    mz->add_option("--m", mz_m, "group level exponent m");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            if (transcript) {
                std::string text = rankin::hecke_transcript();
                std::cout << text;
                if (int rc = write_out(g.out, text)) return rc;
                return 0;
            }
            rankin::VerifyConfig cfg;
            cfg.seed = g.seed;
            cfg.only = only;
            cfg.negative_controls = negative_controls;
            cfg.data_dir = g.data_dir;
            auto results = rankin::run_verification_suite(cfg);
            std::cout << rankin::format_report(results, cfg, /*zero_ms=*/false);
            if (!g.out.empty()) {
                if (int rc = write_out(g.out, rankin::format_report(results, cfg, /*zero_ms=*/true)))
                    return rc;
            }
            return rankin::report_exit_code(results, negative_controls);
        }
        if (eis->parsed()) return emit(rankin::cli_eisenstein(g, e_weight, e_t, e_N, e_chi1, e_chi2), g.out);
        if (pl->parsed()) return emit(rankin::cli_padic_l(g, f_path, g_path, j, aux_level, g_a0), g.out);
        if (bl->parsed()) return emit(rankin::cli_big_log(g, phi_path, pi_prec), g.out);
        if (pc->parsed()) return emit(rankin::cli_pairing_check(g, q, a, b, n, ell), g.out);
        if (mz->parsed()) return emit(rankin::cli_mazur_zeta(g, mz_t, mz_N, mz_d, mz_m), g.out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
