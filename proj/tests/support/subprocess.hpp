#pragma once

// Drives the command-line binary from inside a test: the binary's location
// arrives as "--cli PATH" on the test's own command line, commands run
// through the shell, and stdout plus the exit status come back.

#include <sys/wait.h>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace testsupport {

inline std::string& cli_path() {
  static std::string path;
  return path;
}

// Pulls "--cli PATH" out of argv (the test framework must not see it);
// returns the shrunken argc.
inline int strip_cli_flag(int argc, char** argv) {
  int kept = 0;
  for (int k = 0; k < argc; ++k) {
    if (std::string_view(argv[k]) == "--cli" && k + 1 < argc) {
      cli_path() = argv[++k];
      continue;
    }
    argv[kept++] = argv[k];
  }
  return kept;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs `command` through the shell and captures stdout. Stderr is dropped:
// expected-failure diagnostics would only pollute the test log.
inline RunResult run(const std::string& command) {
  RunResult result;
  FILE* pipe = ::popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + command);
  char buffer[4096];
  std::size_t got;
  while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0)
    result.out.append(buffer, got);
  int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

inline RunResult run_cli(const std::string& args) {
  if (cli_path().empty())
    throw std::runtime_error("CLI path not set; run the test with --cli <path>");
  return run(cli_path() + " " + args);
}

}  // namespace testsupport
