#pragma once

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cli_util {

inline int run(const std::string& args) {
  const std::string cmd = std::string(CAHNLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::filesystem::path fresh_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("cahnlab_cli_" + name);
  std::filesystem::remove_all(p);
  return p;
}

// Runs the same invocation twice into the same directory and compares every
// listed file byte for byte.
inline bool reproducible(const std::string& name, const std::string& args, const std::vector<std::string>& files,
                         std::string* detail = nullptr) {
  const auto dir = fresh_dir(name);
  const std::string cmd = args + " -o " + dir.string();
  if (const int code = run(cmd); code != 0) {
    if (detail) *detail = "exit code " + std::to_string(code);
    return false;
  }
  std::vector<std::string> first;
  for (const auto& f : files) {
    if (!std::filesystem::exists(dir / f)) {
      if (detail) *detail = f + " missing";
      return false;
    }
    first.push_back(slurp(dir / f));
  }
  std::filesystem::remove_all(dir);
  if (const int code = run(cmd); code != 0) {
    if (detail) *detail = "second exit code " + std::to_string(code);
    return false;
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (slurp(dir / files[i]) != first[i]) {
      if (detail) *detail = files[i] + " differs";
      return false;
    }
  }
  return true;
}

}  // namespace cli_util
