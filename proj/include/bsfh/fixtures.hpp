#pragma once

#include <string>
#include <vector>

#include "bsfh/planar.hpp"

namespace bsfh {

// Planar layouts of the shipped Heegaard diagrams: M1, M2, M3, T, P, W.
std::vector<std::string> fixture_names();
PlanarSpec fixture_spec(const std::string& name, const std::string& fixtures_dir);

}  // namespace bsfh
