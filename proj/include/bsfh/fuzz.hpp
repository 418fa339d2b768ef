#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "bsfh/diagram.hpp"

namespace bsfh {

// Rectangle with vertical alpha arcs and rectangular beta circles. The boundary is split
// into one or two parts with random segment breaks. Rejects until check() passes, the
// diagram is nice and provincially admissible and has a generator.
HeegaardDiagram random_nice_diagram(std::mt19937_64& rng, int max_betas, int max_tries = 20000);

struct FuzzReport {
  bool ok = true;
  int diagrams = 0;
  int structures = 0;
  int two_part = 0;
  int ambiguous = 0;  // diagrams skipped because a disc had undetermined chord heights
  int operations = 0;
  std::string witness;
};

// Computes bsd, bsa and (for two parts) bsda of `count` random diagrams and checks the
// structure relations and the grading law of every structure.
FuzzReport run_fuzz(int count, std::uint64_t seed, int max_betas = 3);

}  // namespace bsfh
