#ifndef CUE_TEST_CLI_RUNNER_HPP
#define CUE_TEST_CLI_RUNNER_HPP

#include <sys/wait.h>

#include <cstdio>
#include <string>

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the built cue_sff binary with `args`; stderr is discarded.
inline CliRun run_cli_binary(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" CUE_TEST_CLI "\" " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

#endif  // CUE_TEST_CLI_RUNNER_HPP
