#ifndef HOMRES_CLI_HPP
#define HOMRES_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "homres/error.hpp"
#include "homres/workspace.hpp"

namespace homres {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitHypothesis = 3;
inline constexpr int kExitInternal = 4;

int exit_code_for(ErrorKind kind);

struct RunOptions {
  std::optional<std::size_t> bound;
  std::optional<std::uint64_t> seed;
  /// Directory for cached task reports; caching is off when empty.
  std::optional<std::filesystem::path> cache_dir;
};

/// Report for one task; `code` receives the exit code it implies.
json run_task(const Workspace& ws, const json& task, std::size_t index, const RunOptions& opt, int& code);

/// Dossier for the workspace's suite entry (A, T, M and optional GP list).
json verification_suite(const Workspace& ws, const RunOptions& opt, int& code);

/// homres <command> --workspace <file> [--task <name>] [--bound N] [--seed N]
///        [--out <file>] [--cache]
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace homres

#endif  // HOMRES_CLI_HPP
