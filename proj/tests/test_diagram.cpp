#include <algorithm>
#include <set>

#include "bsfh/fixtures.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bsfh;
using namespace bsfh::test;

namespace {

std::vector<std::string> names(const HeegaardDiagram& h, const std::vector<Generator>& gs) {
  std::vector<std::string> out;
  for (auto& g : gs) out.push_back(generator_name(h, g));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::string>> class_names(const HeegaardDiagram& h) {
  auto gens = generators(h);
  std::vector<std::vector<std::string>> out;
  for (auto& c : spinc_partition(h, gens)) {
    std::vector<Generator> m;
    for (int i : c.members) m.push_back(gens[i]);
    out.push_back(names(h, m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("fixtures match their planar layouts and round trip") {
  for (const auto& n : fixture_names()) {
    CAPTURE(n);
    const std::string text = read_fixture(n + ".hd");
    CHECK(format_heegaard(build_planar(fixture_spec(n, BSFH_FIXTURES))) == text);
    CHECK(format_heegaard(parse_heegaard(text, BSFH_FIXTURES)) == text);
    CHECK(check(load_fixture(n)).ok);
  }
}

TEST_CASE("admissibility and niceness of the fixtures") {
  const std::set<std::string> nice = {"M1", "P"};
  for (const auto& n : fixture_names()) {
    CAPTURE(n);
    auto h = load_fixture(n);
    auto adm = admissibility(h);
    CHECK(adm.provincial);
    CHECK(adm.full);
    CHECK(is_nice(h).nice == (nice.count(n) > 0));
  }
}

TEST_CASE("M1 generators and the rectangle between them") {
  auto h = load_fixture("M1");
  auto gens = generators(h);
  REQUIRE(names(h, gens) == std::vector<std::string>{"x", "y"});
  auto x = gens[0], y = gens[1];
  if (generator_name(h, x) != "x") std::swap(x, y);
  CHECK(occupied(h, x) == PairSet(1) << 1);
  CHECK(occupied(h, y) == PairSet(1) << 2);
  auto ds = domains(h, y, x);
  REQUIRE(ds.has_value());
  const Domain& d = ds->particular;
  for (int r = 0; r < h.num_regions(); ++r) CHECK(d[r] == (h.regions[r].name == "R" ? 1 : 0));
  CHECK(euler_measure4(h, d) == 0);
  CHECK(point_measures4(h, d, y, x) == std::pair<int, int>{1, 1});
}

TEST_CASE("spin-c classes") {
  CHECK(class_names(load_fixture("M3")) ==
        std::vector<std::vector<std::string>>{
            {"ace"},
            {"ach", "agd", "age", "fbd", "fbe", "fce"},
            {"agh", "fbh", "fch", "fgd", "fge"},
            {"fgh"}});
  CHECK(class_names(load_fixture("T")) ==
        std::vector<std::vector<std::string>>{
            {"abc"}, {"abf", "aec", "dbc"}, {"aef", "dbf", "dec"}, {"def"}});
  CHECK(class_names(load_fixture("P")) == std::vector<std::vector<std::string>>{{"abc"}});
}

TEST_CASE("gluing is a fiber product of generators") {
  auto m3 = load_fixture("M3"), m1 = load_fixture("M1");
  auto g = glue(m3, m1, m3.parts[1].oriented());
  CHECK(check(g).ok);
  CHECK(admissibility(g).provincial);
  std::set<Generator> images;
  for (auto& a : generators(m3))
    for (auto& b : generators(m1))
      if (auto y = glued_generator(g, m3, a, m1, b)) {
        CHECK(is_generator(g, *y));
        images.insert(*y);
      }
  auto all = generators(g);
  CHECK(std::set<Generator>(all.begin(), all.end()) == images);
}

TEST_CASE("malformed diagrams are rejected") {
  const std::string t = read_fixture("M1.hd");
  CHECK_THROWS_WITH(parse_heegaard(t + "region Q: zz+\n", BSFH_FIXTURES),
                    doctest::Contains("unknown edge"));
  std::string s = t;
  s.erase(s.find("region R4: f4+ A1.1-"), 20);
  CHECK_THROWS_WITH(parse_heegaard(s, BSFH_FIXTURES), doctest::Contains("bordered exactly once"));
  s = t;
  s.replace(s.find("kind=z from=W4.a3"), 17, "kind=z from=W4.a1");
  CHECK_THROWS(parse_heegaard(s, BSFH_FIXTURES));
  auto m3 = load_fixture("M3"), m1 = load_fixture("M1");
  CHECK_THROWS_WITH(glue(m3, m1, m3.parts[0].oriented()), doctest::Contains("no matching"));
}
