#pragma once

// Minimal subprocess capture for CLI tests.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace testsupport {

struct CommandResult {
  int exit_code = -1;
  std::string output;
  std::string error;
};

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Runs `command` through the shell, capturing stdout, stderr and the exit
/// code.
inline CommandResult run_command(const std::string& command) {
  namespace fs = std::filesystem;
  static int counter = 0;
  const auto base = fs::temp_directory_path() /
                    ("scg-test-" + std::to_string(::getpid()) + "-" +
                     std::to_string(counter++));
  const auto out_path = base.string() + ".out";
  const auto err_path = base.string() + ".err";

  const std::string full =
      command + " >" + out_path + " 2>" + err_path;
  const int status = std::system(full.c_str());

  CommandResult result;
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  }
  result.output = slurp(out_path);
  result.error = slurp(err_path);
  fs::remove(out_path);
  fs::remove(err_path);
  return result;
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace testsupport
