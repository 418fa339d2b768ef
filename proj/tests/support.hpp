#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "bsfh/diagram.hpp"

namespace bsfh::test {

inline std::string fixture_path(const std::string& name) {
  return std::string(BSFH_FIXTURES) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline HeegaardDiagram load_fixture(const std::string& name) {
  return load_heegaard(fixture_path(name + ".hd"));
}

}  // namespace bsfh::test
