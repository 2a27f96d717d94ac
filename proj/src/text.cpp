#include <fstream>
#include <sstream>
#include <stdexcept>

#include "munu/text.hpp"

namespace munu::text {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace munu::text
