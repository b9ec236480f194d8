#include "rankin/verify.hpp"

#include "rankin/checks.hpp"
#include "rankin/util.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

namespace rankin {

namespace {

struct CheckEntry {
    const char* id;
    const char* anchor;
    // negative = true runs the designed perturbed variant (must fail)
    bool (*fn)(bool negative, unsigned long seed, const std::string& data_dir);
};

const std::vector<CheckEntry>& registry() {
    static const std::vector<CheckEntry> table = {
        {"hecke.cyclonorm", "norm-relations/distribution-relation", check_hecke_cyclonorm},
        {"hecke.lstab", "norm-relations/l-stabilisation-column", check_hecke_lstab},
        {"hecke.lstab_eigen", "norm-relations/eigen-collapse", check_hecke_lstab_eigen},
        {"hecke.lstab_sigma1", "norm-relations/ungraded-specialisation", check_hecke_lstab_sigma1},
        {"hecke.qvp_closed", "euler-factors/q-vs-p-closed-form", check_hecke_qvp_closed},
        {"hecke.qvp_mod_lminus1", "euler-factors/q-vs-p-congruence", check_hecke_qvp_mod},
        {"iwasawa.mazur_interp", "mazur-measure/character-interpolation", check_iwasawa_mazur},
        {"lfunction.aux_stability", "p-adic-l/aux-level-stability", check_lfunction_aux_stability},
        {"modforms.atkin_lehner", "level-structures/atkin-lehner-relations", check_modforms_atkin_lehner},
        {"modforms.eis_naturality", "eisenstein-family/specialisation-naturality", check_modforms_eis_naturality},
        {"modforms.ordinary_projector", "ordinary-projector/idempotent", check_modforms_ordinary_projector},
        {"pairing.isogeny_law", "weil-pairing/isogeny-degree-law", check_pairing_isogeny_law},
        {"pr.exact_sequence", "big-logarithm/four-term-exactness", check_pr_exact_sequence},
        {"tsym.mom_identity", "moment-maps/binomial-collapse", check_tsym_mom_identity},
        {"tsym.moment_square", "moment-maps/clebsch-gordan-square", check_tsym_moment_square},
        {"tsym.twist_proj", "moment-maps/cyclotomic-twist-coefficient", check_tsym_twist_proj},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& negative_control_ids() {
    static const std::vector<std::string> ids = {"hecke.cyclonorm", "hecke.lstab",
                                                 "hecke.qvp_closed"};
    return ids;
}

std::vector<CheckResult> run_verification_suite(const VerifyConfig& cfg) {
    std::vector<CheckResult> out;
    const auto& controls = negative_control_ids();
    for (const auto& entry : registry()) {
        if (!cfg.only.empty() &&
            std::find(cfg.only.begin(), cfg.only.end(), entry.id) == cfg.only.end())
            continue;
        bool negative = cfg.negative_controls &&
                        std::find(controls.begin(), controls.end(), entry.id) != controls.end();
        CheckResult res;
        res.id = entry.id;
        res.anchor = entry.anchor;
        auto t0 = std::chrono::steady_clock::now();
        try {
            res.pass = entry.fn(negative, cfg.seed, cfg.data_dir);
        } catch (const std::exception&) {
            res.pass = false;
        }
        auto t1 = std::chrono::steady_clock::now();
        res.ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        out.push_back(std::move(res));
    }
    std::sort(out.begin(), out.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
    return out;
}

std::string format_report(const std::vector<CheckResult>& results, const VerifyConfig& cfg,
                          bool zero_ms) {
    std::ostringstream os;
    os << "# rankin verify report\n";
    os << "# seed " << cfg.seed << "\n";
    os << "# data " << (cfg.data_dir.empty() ? "-" : cfg.data_dir) << "\n";
    os << "# negative-controls " << (cfg.negative_controls ? "on" : "off") << "\n";
    os << "# checks " << results.size() << "\n";
    for (const auto& r : results) {
        std::string id = r.id;
        id.resize(std::max<size_t>(id.size(), 28), ' ');
        std::string anchor = r.anchor;
        anchor.resize(std::max<size_t>(anchor.size(), 46), ' ');
        os << (r.pass ? "PASS" : "FAIL") << "  " << id << "  " << anchor << "  "
           << (zero_ms ? 0L : r.ms) << "\n";
    }
    return os.str();
}

int report_exit_code(const std::vector<CheckResult>& results, bool negative_controls) {
    if (!negative_controls) {
        for (const auto& r : results)
            if (!r.pass) return 1;
        return 0;
    }
    const auto& controls = negative_control_ids();
    for (const auto& r : results) {
        bool is_control =
            std::find(controls.begin(), controls.end(), r.id) != controls.end();
        if (is_control == r.pass) return 1;  // controls must fail, others must pass
    }
    return 0;
}

}  // namespace rankin
