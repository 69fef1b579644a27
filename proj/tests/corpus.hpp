// Test machine corpus, loaded from the data directory baked in at build time.
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fo2sp/ca.hpp"

namespace corpus {

inline std::string data_dir() { return FO2SP_TEST_DATA_DIR; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open test data file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline fo2sp::ca::CounterMachine load_machine(const std::string& name) {
  return fo2sp::ca::parse_machine(read_file(data_dir() + "/" + name + ".ca"));
}

// Machines with nonempty language. M1 is the two-step blue bump, M4 uses
// every operation on both counters, M5 needs class size three.
inline std::vector<std::string> nonempty_names() { return {"M1", "M4", "M5", "M6", "M7", "M8"}; }

// Machines with empty language.
inline std::vector<std::string> empty_names() { return {"M2", "M3"}; }

}  // namespace corpus
