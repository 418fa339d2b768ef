#include <functional>
#include <set>

#include "bsfh/arc_diagram.hpp"
#include "doctest.h"

using namespace bsfh;

namespace {

ArcDiagram fixture(const std::string& name) {
  return load_arc_diagram(std::string(BSFH_FIXTURES) + "/" + name);
}

// Walks the surgered boundary forward from every segment start; pieces never reached
// lie on closed components.
bool tracer_nondegenerate(const ArcDiagram& d) {
  const int n = d.num_points();
  // Piece j = the stretch of Z leaving point j to the right; piece n+s = start of segment s.
  std::vector<bool> seen(n, false);
  for (int s = 0; s < d.num_segments(); ++s) {
    int first = -1;
    for (int p = 0; p < n; ++p)
      if (d.segment_of[p] == s) {
        first = p;
        break;
      }
    int p = first;
    while (p >= 0) {
      int q = d.partner(p);
      if (seen[q]) break;
      seen[q] = true;
      p = (q + 1 < n && d.segment_of[q + 1] == d.segment_of[q]) ? q + 1 : -1;
    }
  }
  for (int p = 0; p < n; ++p)
    if (!seen[p]) return false;
  return true;
}

}  // namespace

TEST_CASE("W4 is valid and V4 is valid") {
  CHECK(validate(fixture("W4.arc")).ok);
  CHECK(validate(fixture("V4.arc")).ok);
  CHECK(fixture("W4.arc").num_pairs() == 3);
}

TEST_CASE("empty diagram is valid") {
  ArcDiagram e;
  CHECK(validate(e).ok);
}

TEST_CASE("single segment with one matched pair is degenerate") {
  auto d = parse_arc_diagram("segment Z\npoint a\npoint b\nmatch a b\n", "t");
  auto r = validate(d);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.malformed);
  REQUIRE(r.closed_cycles.size() == 1);
  CHECK(r.closed_cycles[0] == std::vector<int>{0});
}

TEST_CASE("pair of the wrong size is a structural error") {
  ArcDiagram d = bare_segments({3});
  d.matching = {0, 0, 0};
  auto r = validate(d);
  CHECK_FALSE(r.ok);
  CHECK(r.malformed);
  CHECK_THROWS(parse_arc_diagram("segment Z\npoint a\npoint b\nmatch a b\nmatch a b\n"));
}

TEST_CASE("reverse flips point order and is an involution") {
  auto w = fixture("W4.arc");
  auto rw = reverse(w);
  CHECK(rw.point_names[0] == "a3");
  CHECK(rw.point_names[1] == "a2");
  CHECK(rw.point_names[2] == "a1");
  auto v = fixture("V4.arc");
  CHECK(reverse(reverse(v)) == v);
  ReebChord rho1{0, 1};
  auto c = reverse_chord(w, rho1);
  CHECK(rw.point_names[c.from] == "a2");
  CHECK(rw.point_names[c.to] == "a1");
  CHECK(validate(rw).ok);
}

TEST_CASE("union concatenates and offsets matchings") {
  auto w = fixture("W4.arc");
  auto v = fixture("V4.arc");
  ArcDiagram e;
  CHECK(arc_union(e, w) == w);
  auto u = arc_union(reverse(v), w);
  CHECK(u.num_points() == v.num_points() + w.num_points());
  CHECK(u.num_pairs() == 6);
  CHECK(validate(u).ok);
  auto a = arc_union(arc_union(v, w), v);
  auto b = arc_union(v, arc_union(w, v));
  CHECK(a.segment_of == b.segment_of);
  CHECK(a.matching == b.matching);
}

TEST_CASE("text format round trip") {
  auto w = fixture("W4.arc");
  auto again = parse_arc_diagram(format_arc_diagram(w), "W4");
  CHECK(again == w);
  CHECK(again.aliases.size() == w.aliases.size());
}

TEST_CASE("validate agrees with the forward tracer on all small diagrams") {
  long long count = 0;
  for (int segs = 1; segs <= 4; ++segs)
    for (int k = 0; 2 * k <= 6; ++k) {
      const int n = 2 * k;
      // Distribute n points over segs segments.
      std::vector<int> sizes(segs, 0);
      std::function<void(int, int)> dist = [&](int s, int left) {
        if (s == segs - 1) {
          sizes[s] = left;
          ArcDiagram d = bare_segments(sizes);
          // All perfect matchings of n points.
          std::vector<int> m(n, -1);
          std::function<void(int)> match = [&](int pair) {
            int p = 0;
            while (p < n && m[p] >= 0) ++p;
            if (p == n) {
              d.matching = m;
              ++count;
              CHECK(validate(d).ok == tracer_nondegenerate(d));
              return;
            }
            for (int q = p + 1; q < n; ++q)
              if (m[q] < 0) {
                m[p] = m[q] = pair;
                match(pair + 1);
                m[p] = m[q] = -1;
              }
          };
          match(0);
          return;
        }
        for (int v = 0; v <= left; ++v) {
          sizes[s] = v;
          dist(s + 1, left - v);
        }
      };
      dist(0, n);
    }
  CHECK(count > 1000);
}
