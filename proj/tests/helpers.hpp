#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace test_helpers {

inline std::string fixture_path(const std::string& name) {
  return std::string(IDEALSCAN_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace test_helpers
