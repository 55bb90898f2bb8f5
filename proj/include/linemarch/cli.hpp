#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace linemarch::cli {

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kValidationError = 2 };

struct CliInvocation {
    std::string command;  // run | compare | validate | list-scenarios
    std::string scenario;
    std::string output_dir;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    double tol = 0.05;
};

int cmd_run(const CliInvocation& inv, std::ostream& out, std::ostream& err);
int cmd_compare(const CliInvocation& inv, std::ostream& out, std::ostream& err);
int cmd_validate(const CliInvocation& inv, std::ostream& out, std::ostream& err);
int cmd_list_scenarios(std::ostream& out);

/// Parses argv and dispatches. LINEMARCH_OUT supplies the default --out.
int main_entry(int argc, char** argv);

}  // namespace linemarch::cli
