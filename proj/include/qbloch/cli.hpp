#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace qbloch {

enum class Command { solve, bloch, cv, seq, sing, check, selftest };

struct RunConfig {
  Command command = Command::selftest;
  std::string input_path;
  std::int64_t n_max = 0;  // 0: per-command default (seq 100, sing/check 1000)
  double tol = 1e-10;      // Newton tolerance
  int starts = 200;
  std::uint64_t seed = 7;
  std::string mode = "numeric";  // exact | numeric
  std::string output;            // empty: stdout
  std::string format = "json";   // json | csv (csv only for seq)
  std::string data_dir;          // selftest; empty: ./data, then the source tree

  /// Throws ConfigError when a field required by the command is missing or invalid.
  void validate() const;
};

Command parse_command(const std::string& name);

/// Executes one command. Artifacts go to cfg.output (written atomically) or
/// `out`; errors go to `err` as JSON {"error", "message", "issues"}.
/// Returns 0 on success, 1 on validation errors, 2 on numerical failures
/// (including a solve that finds no critical point).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace qbloch
