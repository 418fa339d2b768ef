#pragma once

#include <string>
#include <vector>

#include "bsfh/strands.hpp"

namespace bsfh {

struct AxiomReport {
  long long generators = 0;
  long long checks = 0;
  long long violations = 0;
  std::string witness;
};

// Exhaustive d^2 = 0, Leibniz and associativity on A(n_1..n_l).
AxiomReport check_strand_axioms(const std::vector<int>& sizes);
// All compositions of every total n <= max_total into at most max_parts positive parts.
std::vector<std::vector<int>> segment_compositions(int max_total, int max_parts);

}  // namespace bsfh
