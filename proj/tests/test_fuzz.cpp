#include "bsfh/fuzz.hpp"
#include "doctest.h"

using namespace bsfh;

TEST_CASE("random nice diagrams satisfy the structure relations and grading laws") {
  for (std::uint64_t seed : {1, 2}) {
    CAPTURE(seed);
    auto rep = run_fuzz(200, seed, 3);
    CHECK_MESSAGE(rep.ok, rep.witness);
    CHECK(rep.diagrams == 200);
    CHECK(rep.two_part > 0);
    CHECK(rep.operations > 0);
  }
}

TEST_CASE("random diagrams are nice and admissible") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    auto h = random_nice_diagram(rng, 3);
    CHECK(check(h).ok);
    CHECK(is_nice(h).nice);
    CHECK(admissibility(h).provincial);
    CHECK(!generators(h).empty());
  }
}
