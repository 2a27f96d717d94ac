#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "munu/common.hpp"

namespace munu::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kPropertyFailed = 1;
inline constexpr int kUsageError = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckOptions {
  int depth = 1;
  std::size_t oracle_depth = 4;
  std::uint64_t seed = 1;
  std::size_t samples = 200;
};

// Every oracle property over the .lat, .ty and .tbl files of a directory, in
// file-name order. Subjects are "<file>:<name>".
std::vector<PrincipleReport> check_all(const std::filesystem::path& dir, const CheckOptions& opts);

}  // namespace munu::cli
