#include "bsfh/fixtures.hpp"

namespace bsfh {

namespace {

BoundaryPart file_part(const std::string& dir, const std::string& file, bool reversed, char side) {
  BoundaryPart p;
  p.source = file;
  p.base = load_arc_diagram(dir + "/" + file);
  p.label = p.base.name;
  p.reversed = reversed;
  p.side = side;
  return p;
}

// W4 followed by -W4 as a single boundary component.
BoundaryPart doubled_part(const std::string& dir, bool reversed) {
  BoundaryPart p;
  ArcDiagram w = load_arc_diagram(dir + "/W4.arc");
  p.base = arc_union(w, reverse(w));
  p.base.name = "WW";
  p.label = "Z";
  p.reversed = reversed;
  p.side = 'D';
  return p;
}

PlanarCurve segment_curve(const std::string& name, EdgeKind k, std::vector<Pt> pts) {
  return {name, k, std::move(pts), false};
}

PlanarCurve circle_curve(const std::string& name, EdgeKind k, Pt c, double r) {
  return {name, k, circle_points(c, r, 96, 1.7), true};
}

Pt mirror(Pt p, bool m) { return m ? Pt{p.x, -p.y} : p; }
double mirror_deg(double a, bool m) { return m ? -a : a; }

PlanarSpec m1(const std::string& dir) {
  PlanarSpec s;
  s.name = "M1";
  s.parts = {file_part(dir, "W4.arc", true, 'D')};
  Pt o{0, 0};
  s.boundaries.push_back(circle_boundary(o, 4, true, {{"W4.a4", 150}, {"W4.a5", 90}}));
  s.boundaries.push_back(circle_boundary(
      o, 1, false, {{"W4.a3", 150}, {"W4.a2", 90}, {"W4.a1", 30}, {"W4.a6", 270}}));
  s.curves.push_back(segment_curve("A3", EdgeKind::AlphaArc, {polar(o, 1, 150), polar(o, 4, 150)}));
  s.curves.push_back(segment_curve("A2", EdgeKind::AlphaArc, {polar(o, 1, 90), polar(o, 4, 90)}));
  auto loop = arc_points(o, 1.5, 30, -90);
  loop.insert(loop.begin(), polar(o, 1, 30));
  loop.push_back(polar(o, 1, 270));
  s.curves.push_back(segment_curve("A1", EdgeKind::AlphaArc, loop));
  s.curves.push_back(circle_curve("B", EdgeKind::Beta, o, 2));
  s.vertex_names = {{"x", polar(o, 2, 90)}, {"y", polar(o, 2, 150)}};
  s.region_names = {{"R", polar(o, 1.5, 120)}};
  return s;
}

PlanarSpec m2(const std::string& dir) {
  PlanarSpec s;
  s.name = "M2";
  s.parts = {file_part(dir, "V4.arc", true, 'D')};
  Pt o{0, 0};
  s.boundaries.push_back(circle_boundary(o, 4, true, {{"V4.a6", 170}, {"V4.a1", 10}}));
  s.boundaries.push_back(circle_boundary(
      o, 1, false, {{"V4.a5", 170}, {"V4.a4", 130}, {"V4.a3", 50}, {"V4.a2", 10}}));
  s.curves.push_back(segment_curve("A3", EdgeKind::AlphaArc, {polar(o, 1, 170), polar(o, 4, 170)}));
  s.curves.push_back(segment_curve("A1", EdgeKind::AlphaArc, {polar(o, 1, 10), polar(o, 4, 10)}));
  auto loop = arc_points(o, 1.5, 130, 50);
  loop.insert(loop.begin(), polar(o, 1, 130));
  loop.push_back(polar(o, 1, 50));
  s.curves.push_back(segment_curve("A2", EdgeKind::AlphaArc, loop));
  s.curves.push_back(circle_curve("B", EdgeKind::Beta, o, 2));
  s.vertex_names = {{"u", polar(o, 2, 170)}, {"v", polar(o, 2, 10)}};
  s.region_names = {{"R", polar(o, 1.5, 90)}};
  return s;
}

PlanarSpec m3(const std::string& dir) {
  PlanarSpec s;
  s.name = "M3";
  s.parts = {file_part(dir, "V4.arc", true, 'D'), file_part(dir, "W4.arc", false, 'A')};
  Pt c0{3, 0}, h1{6, 0}, h2{3, 0}, h3{0, 0};
  const double hr = 0.5, br = 1.0, R = 6;
  s.boundaries.push_back(circle_boundary(
      c0, R, true, {{"W4.a1", 60}, {"W4.a2", 90}, {"W4.a3", 115}, {"V4.a1", 135}}));
  s.boundaries.push_back(circle_boundary(h1, hr, false, {{"W4.a6", 90}, {"V4.a6", 225}}));
  s.boundaries.push_back(
      circle_boundary(h2, hr, false, {{"W4.a5", 90}, {"V4.a5", 315}, {"V4.a4", 225}}));
  s.boundaries.push_back(
      circle_boundary(h3, hr, false, {{"W4.a4", 60}, {"V4.a2", 120}, {"V4.a3", 315}}));
  s.curves.push_back(segment_curve("W1", EdgeKind::AlphaArc, {polar(h1, hr, 90), polar(c0, R, 60)}));
  s.curves.push_back(segment_curve("W2", EdgeKind::AlphaArc, {polar(h2, hr, 90), polar(c0, R, 90)}));
  s.curves.push_back(segment_curve("W3", EdgeKind::AlphaArc, {polar(h3, hr, 60), polar(c0, R, 115)}));
  s.curves.push_back(segment_curve("V1", EdgeKind::AlphaArc, {polar(h3, hr, 120), polar(c0, R, 135)}));
  s.curves.push_back(segment_curve(
      "V3", EdgeKind::AlphaArc,
      {polar(h2, hr, 315), {3.9, -1.5}, {5.1, -1.5}, polar(h1, hr, 225)}));
  s.curves.push_back(segment_curve(
      "V2", EdgeKind::AlphaArc,
      {polar(h3, hr, 315), {0.9, -1.5}, {2.1, -1.5}, polar(h2, hr, 225)}));
  s.curves.push_back(circle_curve("B1", EdgeKind::Beta, h1, br));
  s.curves.push_back(circle_curve("B2", EdgeKind::Beta, h2, br));
  s.curves.push_back(circle_curve("B3", EdgeKind::Beta, h3, br));
  s.vertex_names = {{"f", {6, 1}},         {"a", {5.35, -0.75}}, {"g", {3, 1}},
                    {"b", {3.65, -0.75}},  {"c", {2.35, -0.75}}, {"h", {0.28, 0.96}},
                    {"e", {-0.36, 0.93}},  {"d", {0.65, -0.75}}};
  return s;
}

// Three holes right to left with beta circles and alpha fans to the outer circle.
// The top fans carry W4, the bottom carries -W4 (fans, or nested arcs when caps is set).
PlanarSpec tube(const std::string& dir, const std::string& name, bool caps, bool mirrored) {
  PlanarSpec s;
  s.name = name;
  s.parts = {doubled_part(dir, mirrored)};
  Pt c0{3, 0};
  const double hr = 0.5, br = 1.0, R = 6;
  Pt holes[3] = {{6, 0}, {3, 0}, {0, 0}};
  const double top_deg[3] = {60, 90, 120};
  const double bot_deg[3] = {300, 270, 240};
  auto M = [&](Pt p) { return mirror(p, mirrored); };
  auto MD = [&](double a) { return mirror_deg(a, mirrored); };
  std::vector<std::pair<std::string, double>> outer;
  for (int i = 0; i < 3; ++i) outer.push_back({"Z.W4.a" + std::to_string(i + 1), MD(top_deg[i])});
  if (!caps) {
    for (int i = 0; i < 3; ++i)
      outer.push_back({"Z.-W4.a" + std::to_string(i + 1), MD(bot_deg[i])});
  } else {
    const double cap_deg[6] = {310, 295, 280, 260, 245, 230};  // -W4 a1..a6
    for (int i = 0; i < 6; ++i) outer.push_back({"Z.-W4.a" + std::to_string(i + 1), MD(cap_deg[i])});
    const double height[3] = {-2.5, -3.5, -4.5};
    for (int i = 0; i < 3; ++i) {
      Pt a = polar(c0, R, cap_deg[5 - i]), b = polar(c0, R, cap_deg[i]);
      s.curves.push_back(segment_curve(
          "U" + std::to_string(i + 1), EdgeKind::AlphaArc,
          {M(a), M({a.x, height[i]}), M({b.x, height[i]}), M(b)}));
    }
  }
  s.boundaries.push_back(circle_boundary(c0, R, true, outer));
  const char* top_names[3] = {"a", "b", "c"};
  const char* bot_names[3] = {"d", "e", "f"};
  for (int i = 0; i < 3; ++i) {
    Pt h = M(holes[i]);
    std::vector<std::pair<std::string, double>> marks = {
        {"Z.W4.a" + std::to_string(6 - i), MD(90)}};
    if (!caps) marks.push_back({"Z.-W4.a" + std::to_string(6 - i), MD(270)});
    s.boundaries.push_back(circle_boundary(h, hr, false, marks));
    s.curves.push_back(segment_curve("T" + std::to_string(i + 1), EdgeKind::AlphaArc,
                                     {polar(h, hr, MD(90)), polar(c0, R, MD(top_deg[i]))}));
    if (!caps)
      s.curves.push_back(segment_curve("D" + std::to_string(i + 1), EdgeKind::AlphaArc,
                                       {polar(h, hr, MD(270)), polar(c0, R, MD(bot_deg[i]))}));
    s.curves.push_back(circle_curve("B" + std::to_string(i + 1), EdgeKind::Beta, h, br));
    s.vertex_names.push_back({top_names[i], polar(h, br, MD(90))});
    if (!caps) s.vertex_names.push_back({bot_names[i], polar(h, br, MD(270))});
  }
  return s;
}

PlanarSpec w_fixture(const std::string& dir) {
  PlanarSpec s = tube(dir, "W", false, true);
  Pt h4{1.0, 3.0}, h5{2.0, 3.0};
  s.boundaries.push_back(circle_boundary(h4, 0.25, false, {}));
  s.boundaries.push_back(circle_boundary(h5, 0.25, false, {}));
  s.curves.push_back(circle_curve("B4", EdgeKind::Beta, h4, 0.65));
  s.curves.push_back(circle_curve("C", EdgeKind::AlphaCircle, h5, 0.65));
  s.vertex_names.push_back({"p", {1.5, 3.4}});
  s.vertex_names.push_back({"q", {1.5, 2.6}});
  s.region_names.push_back({"L", {1.5, 3.0}});
  return s;
}

}  // namespace

std::vector<std::string> fixture_names() { return {"M1", "M2", "M3", "T", "P", "W"}; }

PlanarSpec fixture_spec(const std::string& name, const std::string& dir) {
  if (name == "M1") return m1(dir);
  if (name == "M2") return m2(dir);
  if (name == "M3") return m3(dir);
  if (name == "T") return tube(dir, "T", false, false);
  if (name == "P") return tube(dir, "P", true, false);
  if (name == "W") return w_fixture(dir);
  throw Error("unknown fixture " + name);
}

}  // namespace bsfh
