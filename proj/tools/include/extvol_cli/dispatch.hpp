#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace extvol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitVerificationFailed = 2;

struct CommandInfo {
  std::string path;                     // e.g. "torus mu"
  std::vector<std::string> operations;  // library operations owned by the command
  bool stochastic = false;              // needs --seed
  bool takes_tolerance = false;
};

const std::vector<CommandInfo>& command_table();

/// Runs one command line (without the program name). Results go to `out`, diagnostics to
/// `err`; the return value is the process exit status.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace extvol::cli
