#ifndef TFP_CLI_HPP
#define TFP_CLI_HPP

#include <iosfwd>

namespace tfp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// Subcommands: validate, solve, evaluate, stress, report.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tfp

#endif  // TFP_CLI_HPP
