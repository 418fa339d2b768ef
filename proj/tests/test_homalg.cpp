#include "bsfh/homalg.hpp"
#include "bsfh/invariants.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bsfh;
using namespace bsfh::test;

namespace {

DAStructure complex_of(const std::vector<std::string>& gens,
                       const std::vector<std::pair<std::string, std::string>>& arrows) {
  auto k = trivial_algebra();
  DAStructure c(k, k);
  for (auto& g : gens) c.add_gen(g, 0, 0);
  for (auto& [a, b] : arrows) c.toggle(c.gen_index(a), {}, 0, c.gen_index(b));
  return c;
}

}  // namespace

TEST_CASE("chain complexes: relations, homology, reduction") {
  auto c = complex_of({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
  CHECK(c.is_complex());
  CHECK(check_relations(c).ok);
  CHECK(is_bounded(c));
  CHECK(homology_rank(c) == 0);
  CHECK(reduce(c).size() == 0);
  CHECK(reduce(c, true).size() == 0);

  auto e = complex_of({"a", "b", "c"}, {{"a", "b"}});
  CHECK(homology_rank(e) == 1);
  auto r = reduce(e);
  REQUIRE(r.size() == 1);
  CHECK(r.gens[0].name == "c");

  auto bad = complex_of({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK_FALSE(check_relations(bad).ok);
  auto cyc = complex_of({"a", "b"}, {{"a", "b"}, {"b", "a"}});
  CHECK_FALSE(is_bounded(cyc));
}

TEST_CASE("toggle works modulo two") {
  auto c = complex_of({"a", "b"}, {{"a", "b"}, {"a", "b"}});
  CHECK(c.ops.empty());
}

TEST_CASE("cancellation preconditions") {
  auto h = load_fixture("M1");
  auto d = compute_invariant(h, InvariantKind::BSD).s;
  // The coefficient r''2 is not an idempotent.
  CHECK_THROWS(cancel(d, d.gen_index("y"), d.gen_index("x")));
  auto a = compute_invariant(h, InvariantKind::BSA).s;
  CHECK_THROWS(cancel(a, a.gen_index("y"), a.gen_index("x")));
}

TEST_CASE("identity bimodule is a unit for the box tensor product") {
  for (auto name : {"M1", "M2"}) {
    CAPTURE(name);
    auto d = compute_invariant(load_fixture(name), InvariantKind::BSD).s;
    auto id = identity_da(d.A->diagram());
    auto rel = check_relations(id);
    CHECK_MESSAGE(rel.ok, rel.witness);
    auto box = box_da(id, d);
    CHECK(check_relations(box).ok);
    CHECK(isomorphism(box, d).has_value());
  }
}

TEST_CASE("operation tables round trip") {
  auto h = load_fixture("M3");
  auto s = compute_invariant(h, InvariantKind::BSDA, spinc_generators(h, 2)).s;
  const std::string text = format_ops(s, "M3 class 2");
  auto back = parse_ops(text, s.A, s.B);
  CHECK(format_ops(back, "M3 class 2") == text);
  CHECK(back.ops == s.ops);
  CHECK_THROWS_WITH(parse_ops(text + "bogus\n", s.A, s.B), doctest::Contains("unknown directive"));
  CHECK_THROWS_WITH(parse_ops(text + "m3 fbh | r''1 -> I12 agh\n", s.A, s.B),
                    doctest::Contains("arity"));
  CHECK_THROWS_WITH(parse_ops(text, s.B, s.A), doctest::Contains("algebra mismatch"));
}

TEST_CASE("type D coaction iterates") {
  auto d = compute_invariant(load_fixture("M2"), InvariantKind::BSD).s;
  auto d1 = delta_k(d, d.gen_index("u"), 1);
  CHECK(d1.size() == 1);
  CHECK(delta_k(d, d.gen_index("u"), 2).empty());
  CHECK(delta_k(d, d.gen_index("v"), 1).empty());
}
