#include "rankin/cli_commands.hpp"

namespace rankin {

// Placeholder handlers, replaced as the backing modules land.

static CommandOutput not_ready(const char* name) {
    return {std::string(name) + ": not implemented\n", 2};
}

CommandOutput cli_eisenstein(const GlobalOptions&, long, long, long, const std::string&,
                             const std::string&) {
    return not_ready("eisenstein");
}
CommandOutput cli_padic_l(const GlobalOptions&, const std::string&, const std::string&, long, long,
                          const std::string&) {
    return not_ready("padic-l");
}
CommandOutput cli_big_log(const GlobalOptions&, const std::string&, long) {
    return not_ready("big-log");
}
CommandOutput cli_pairing_check(const GlobalOptions&, long, long, long, long, long) {
    return not_ready("pairing-check");
}
CommandOutput cli_mazur_zeta(const GlobalOptions&, long, long, long, long) {
    return not_ready("mazur-zeta");
}

}  // namespace rankin
