#pragma once

#include <string>

namespace rankin {

// One registered identity check each; `negative` runs the designed perturbed
// variant (used by the negative-control mode, expected to fail).
bool check_hecke_lstab(bool negative, unsigned long seed, const std::string& data_dir);
bool check_hecke_lstab_sigma1(bool negative, unsigned long seed, const std::string& data_dir);
bool check_hecke_lstab_eigen(bool negative, unsigned long seed, const std::string& data_dir);
bool check_hecke_cyclonorm(bool negative, unsigned long seed, const std::string& data_dir);
bool check_hecke_qvp_closed(bool negative, unsigned long seed, const std::string& data_dir);
bool check_hecke_qvp_mod(bool negative, unsigned long seed, const std::string& data_dir);
bool check_tsym_moment_square(bool negative, unsigned long seed, const std::string& data_dir);
bool check_tsym_mom_identity(bool negative, unsigned long seed, const std::string& data_dir);
bool check_tsym_twist_proj(bool negative, unsigned long seed, const std::string& data_dir);
bool check_modforms_eis_naturality(bool negative, unsigned long seed, const std::string& data_dir);
bool check_modforms_atkin_lehner(bool negative, unsigned long seed, const std::string& data_dir);
bool check_modforms_ordinary_projector(bool negative, unsigned long seed,
                                       const std::string& data_dir);
bool check_iwasawa_mazur(bool negative, unsigned long seed, const std::string& data_dir);
bool check_lfunction_aux_stability(bool negative, unsigned long seed, const std::string& data_dir);
bool check_pr_exact_sequence(bool negative, unsigned long seed, const std::string& data_dir);
bool check_pairing_isogeny_law(bool negative, unsigned long seed, const std::string& data_dir);

}  // namespace rankin
