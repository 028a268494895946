#pragma once

#include <string>
#include <vector>

namespace lprl {

struct SubprocessResult {
  int exit_code = -1;
  bool timed_out = false;
  bool spawn_failed = false;
  std::string log_tail;  // last chunk of the child's combined stdout/stderr
};

/// Runs `command arg1 arg2 ...` through /bin/sh with a wall-clock timeout.
/// The child's output is redirected to log_path (captured into log_tail for
/// diagnostics). On timeout the child is killed with SIGKILL.
SubprocessResult run_command(const std::string& command,
                             const std::vector<std::string>& args,
                             double timeout_seconds,
                             const std::string& log_path);

}  // namespace lprl
