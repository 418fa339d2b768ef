#include "bsfh/invariants.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bsfh;
using namespace bsfh::test;

namespace {

void check_laws(const HeegaardDiagram& h, const Invariant& inv) {
  auto rel = check_relations(inv.s);
  CHECK_MESSAGE(rel.ok, rel.witness);
  for (bool reduced : {false, true}) {
    auto g = check_grading_law(h, inv, reduced, 8);
    CHECK_MESSAGE(g.ok, g.witness);
  }
  CHECK(inv.escaped == 0);
}

// The stored table parses over the computed algebras and equals the computed one.
void check_expected(const DAStructure& s, const std::string& file) {
  CAPTURE(file);
  auto expected = parse_ops(read_fixture(file), s.A, s.B);
  CHECK(expected.ops == s.ops);
  REQUIRE(expected.size() == s.size());
  for (int i = 0; i < s.size(); ++i) {
    CHECK(expected.gens[i].name == s.gens[i].name);
    CHECK(expected.gens[i].left == s.gens[i].left);
    CHECK(expected.gens[i].right == s.gens[i].right);
  }
}

}  // namespace

TEST_CASE("M1 and M2 tables") {
  auto m1 = load_fixture("M1"), m2 = load_fixture("M2");
  auto d1 = compute_invariant(m1, InvariantKind::BSD);
  auto a1 = compute_invariant(m1, InvariantKind::BSA);
  auto d2 = compute_invariant(m2, InvariantKind::BSD);
  auto a2 = compute_invariant(m2, InvariantKind::BSA);
  CHECK(pretty(d1.s) == "d (y) = r''2 (x)\n");
  CHECK(pretty(a1.s) == "m2 ((y), -r'2) = (x)\n");
  CHECK(pretty(d2.s) == "d (u) = s''2s''1 (v)\n");
  CHECK(pretty(a2.s) == "m3 ((u), -s'2, -s'1) = (v)\n");
  CHECK(d1.s.gens[d1.s.gen_index("x")].left == ((PairSet(1) << 0) | (PairSet(1) << 2)));
  CHECK(d1.s.gens[d1.s.gen_index("y")].left == ((PairSet(1) << 0) | (PairSet(1) << 1)));
  for (auto* inv : {&d1, &a1}) check_laws(m1, *inv);
  for (auto* inv : {&d2, &a2}) check_laws(m2, *inv);
  check_expected(d1.s, "M1.bsd.ops");
  check_expected(a1.s, "M1.bsa.ops");
  check_expected(d2.s, "M2.bsd.ops");
  check_expected(a2.s, "M2.bsa.ops");
}

TEST_CASE("M3 bimodule by spin-c class") {
  auto h = load_fixture("M3");
  auto s2 = compute_invariant(h, InvariantKind::BSDA, spinc_generators(h, 2));
  CHECK(pretty(s2.s) ==
        "m1 ((fbh)) = s''2 (fch)\n"
        "m2 ((fbh), r''1) = I12 (agh)\n"
        "m1 ((fgd)) = s''1 (fge)\n"
        "m2 ((fgd), r''2) = I13 (fch)\n");
  check_laws(h, s2);
  check_expected(s2.s, "M3.bsda.s2.ops");
  for (int c : {0, 3}) {
    CAPTURE(c);
    auto inv = compute_invariant(h, InvariantKind::BSDA, spinc_generators(h, c));
    CHECK(inv.s.size() == 1);
    CHECK(inv.s.ops.empty());
    check_laws(h, inv);
    check_expected(inv.s, "M3.bsda.s" + std::to_string(c) + ".ops");
  }
}

TEST_CASE("box tensor of M3 with M1 reduces to M2") {
  auto m1 = load_fixture("M1"), m2 = load_fixture("M2"), m3 = load_fixture("M3");
  auto box = box_da(compute_invariant(m3, InvariantKind::BSDA, spinc_generators(m3, 2)).s,
                    compute_invariant(m1, InvariantKind::BSD).s);
  CHECK(box.size() == 4);
  CHECK(check_relations(box).ok);
  check_expected(box, "M3xM1.bsd.ops");
  auto target = compute_invariant(m2, InvariantKind::BSD).s;
  for (bool rev : {false, true}) {
    auto red = reduce(box, rev);
    CHECK(red.size() == 2);
    CHECK(isomorphism(red, target).has_value());
  }
  check_expected(reduce(box), "M3xM1.reduced.ops");
}

TEST_CASE("chain level pairing agrees with the glued diagram") {
  auto m1 = load_fixture("M1"), m3 = load_fixture("M3");
  for (int c = 0; c < 4; ++c) {
    CAPTURE(c);
    auto p = chain_level_pairing(m3, spinc_generators(m3, c), m1, generators(m1),
                                 m3.parts[1].oriented());
    CHECK(p.iso.has_value());
    CHECK(p.invariant.escaped == 0);
    CHECK(p.box.size() == (c == 2 ? 4 : 0));
  }
  auto w = load_fixture("W");
  for (auto name : {"T", "P"}) {
    CAPTURE(name);
    auto t = load_fixture(name);
    auto ts = spinc_generators(t, 0);
    REQUIRE(ts.size() == 1);
    const PairSet want = ((PairSet(1) << t.num_pairs()) - 1) & ~occupied(t, ts[0]);
    std::vector<Generator> ws;
    for (auto& g : generators(w))
      if (occupied(w, g) == want) ws.push_back(g);
    auto p = chain_level_pairing(w, ws, t, ts, w.parts[0].oriented());
    CHECK(p.box.size() == 2);
    CHECK(p.box.ops.size() == 1);
    CHECK(p.iso.has_value());
    CHECK(p.invariant.escaped == 0);
    CHECK(p.invariant.kind == InvariantKind::SFC);
    CHECK(homology_rank(p.invariant.s) == 0);
  }
}

TEST_CASE("tube fixtures") {
  auto t = load_fixture("T"), p = load_fixture("P");
  auto dt = compute_invariant(t, InvariantKind::BSD, spinc_generators(t, 0));
  auto dp = compute_invariant(p, InvariantKind::BSD);
  for (auto* inv : {&dt, &dp}) {
    CHECK(inv->s.size() == 1);
    CHECK(inv->s.ops.empty());
    CHECK(inv->s.gens[0].name == "abc");
  }
  CHECK(isomorphism(dt.s, dp.s).has_value());
  check_laws(t, dt);
  check_laws(p, dp);
  CHECK_THROWS_WITH(compute_invariant(t, InvariantKind::BSD), doctest::Contains("ambiguous"));
  CHECK_THROWS_WITH(compute_invariant(load_fixture("M3"), InvariantKind::SFC), doctest::Contains("sfc"));
}
