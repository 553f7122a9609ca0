#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace tma {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitUsage = 2;

/// Runs `tma-sched` with the given arguments (argv[0] included). Never throws;
/// diagnostics go to `err`, tables and reports to `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string_view>& args, std::ostream& out, std::ostream& err);

/// "1..5", "3,7,9" or a mix such as "1..3,10". Throws std::invalid_argument.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

}  // namespace tma
