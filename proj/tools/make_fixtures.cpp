// Regenerates the Heegaard diagram fixtures from their planar layouts.
#include <fstream>
#include <iostream>

#include "bsfh/fixtures.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <fixtures-dir>\n";
    return 2;
  }
  const std::string dir = argv[1];
  try {
    for (const auto& n : bsfh::fixture_names()) {
      auto h = bsfh::build_planar(bsfh::fixture_spec(n, dir));
      std::ofstream(dir + "/" + n + ".hd") << bsfh::format_heegaard(h);
      std::cout << n << ": " << h.num_regions() << " regions, " << bsfh::generators(h).size()
                << " generators\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
