#pragma once

#include <string>
#include <vector>

namespace rankin {

// Each handler returns the report text (also the CLI's stdout) and an exit code.
struct CommandOutput {
    std::string text;
    int exit_code = 0;
};

struct GlobalOptions {
    long p = 0;
    long prec = 0;
    long qprec = 0;
    unsigned long seed = 1;
    std::string out;
    std::string data_dir;
};

CommandOutput cli_eisenstein(const GlobalOptions& g, long weight, long t, long N,
                             const std::string& chi1, const std::string& chi2);
CommandOutput cli_padic_l(const GlobalOptions& g, const std::string& f_path,
                          const std::string& g_path, long j, long aux_level,
                          const std::string& g_a0);
CommandOutput cli_big_log(const GlobalOptions& g, const std::string& phi_path, long pi_prec);
CommandOutput cli_pairing_check(const GlobalOptions& g, long q, long a, long b, long n, long ell);
CommandOutput cli_mazur_zeta(const GlobalOptions& g, long t, long N, long d, long m);

}  // namespace rankin
