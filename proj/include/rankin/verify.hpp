#pragma once

#include <string>
#include <vector>

namespace rankin {

struct CheckResult {
    std::string id;
    std::string anchor;
    bool pass = false;
    long ms = 0;
};

struct VerifyConfig {
    unsigned long seed = 1;
    std::vector<std::string> only;  // empty = run everything
    bool negative_controls = false;
    std::string data_dir;
};

std::vector<CheckResult> run_verification_suite(const VerifyConfig& cfg);

// zero_ms: write the elapsed column as 0 (deterministic byte output for golden files)
std::string format_report(const std::vector<CheckResult>& results, const VerifyConfig& cfg,
                          bool zero_ms);

// 0 iff all pass; under negative_controls, 0 iff exactly the designed controls fail
int report_exit_code(const std::vector<CheckResult>& results, bool negative_controls);

const std::vector<std::string>& negative_control_ids();

}  // namespace rankin
