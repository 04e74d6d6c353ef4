#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lpc/lpc.hpp"

namespace testutil {

inline std::string source_path(const std::string& rel) { return std::string(LPC_SOURCE_DIR) + "/" + rel; }

inline std::string read_text(const std::string& rel) {
  std::ifstream in(source_path(rel), std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Non-empty lines of a golden file, each one s-expression.
inline std::vector<lpc::Formula> read_golden(const std::string& rel) {
  std::istringstream in(read_text(rel));
  std::vector<lpc::Formula> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(lpc::parse_sexpr(line));
  return out;
}

inline lpc::SearchConfig all_solutions(int depth = 40) {
  lpc::SearchConfig c;
  c.max_depth = depth;
  c.max_solutions = 0;
  return c;
}

}  // namespace testutil
