#include "bsfh/planar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace bsfh {

namespace {

constexpr double kEps = 1e-9;
constexpr double kPi = 3.14159265358979323846;

Pt operator-(Pt a, Pt b) { return {a.x - b.x, a.y - b.y}; }
Pt operator+(Pt a, Pt b) { return {a.x + b.x, a.y + b.y}; }
Pt operator*(double s, Pt a) { return {s * a.x, s * a.y}; }
double cross(Pt a, Pt b) { return a.x * b.y - a.y * b.x; }
double dot(Pt a, Pt b) { return a.x * b.x + a.y * b.y; }
double dist(Pt a, Pt b) { return std::hypot(a.x - b.x, a.y - b.y); }

double signed_area(const std::vector<Pt>& poly) {
  double a = 0;
  for (size_t i = 0; i < poly.size(); ++i) a += cross(poly[i], poly[(i + 1) % poly.size()]);
  return a / 2;
}

bool point_in_polygon(Pt p, const std::vector<Pt>& poly) {
  bool in = false;
  for (size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Pt& a = poly[i];
    const Pt& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x)
      in = !in;
  }
  return in;
}

double dist_to_segment(Pt p, Pt a, Pt b) {
  Pt ab = b - a;
  double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
  return dist(p, a + t * ab);
}

// Proper or endpoint intersection of [p, p2] and [q, q2]; parameters on both.
bool intersect(Pt p, Pt p2, Pt q, Pt q2, double& t, double& u) {
  Pt r = p2 - p, s = q2 - q;
  double den = cross(r, s);
  if (std::abs(den) < 1e-14) {
    if (std::abs(cross(q - p, r)) > 1e-12) return false;
    double rr = dot(r, r);
    double t0 = dot(q - p, r) / rr, t1 = dot(q2 - p, r) / rr;
    if (std::max(t0, t1) < -kEps || std::min(t0, t1) > 1 + kEps) return false;
    throw Error("overlapping collinear curve segments");
  }
  t = cross(q - p, s) / den;
  u = cross(q - p, r) / den;
  return t > -kEps && t < 1 + kEps && u > -kEps && u < 1 + kEps;
}

struct CurveGeom {
  std::vector<Pt> pts;
  bool closed = false;
  int segments() const { return static_cast<int>(pts.size()) - (closed ? 0 : 1); }
  Pt seg_a(int i) const { return pts[i]; }
  Pt seg_b(int i) const { return pts[(i + 1) % pts.size()]; }
  Pt at(double s) const {
    int i = std::min(static_cast<int>(std::floor(s)), segments() - 1);
    double t = s - i;
    return seg_a(i) + t * (seg_b(i) - seg_a(i));
  }
  // Polyline from parameter a to b (b > a; may exceed segments() when closed).
  std::vector<Pt> between(double a, double b) const {
    std::vector<Pt> out{at(wrap(a))};
    for (int k = static_cast<int>(std::floor(a)) + 1; k < b - kEps; ++k)
      if (k > a + kEps) out.push_back(pts[k % pts.size()]);
    out.push_back(at(wrap(b)));
    return out;
  }
  double wrap(double s) const {
    if (!closed) return s;
    double n = segments();
    while (s >= n - 1e-12) s -= n;
    return std::max(s, 0.0);
  }
};

struct Dart {
  int edge;
  bool forward;
};

}  // namespace

Pt polar(Pt c, double r, double deg) {
  double a = deg * kPi / 180.0;
  return {c.x + r * std::cos(a), c.y + r * std::sin(a)};
}

std::vector<Pt> circle_points(Pt c, double r, int samples, double start_deg) {
  std::vector<Pt> out;
  for (int i = 0; i < samples; ++i) out.push_back(polar(c, r, start_deg + 360.0 * i / samples));
  return out;
}

std::vector<Pt> arc_points(Pt c, double r, double from_deg, double to_deg, int samples) {
  std::vector<Pt> out;
  for (int i = 0; i <= samples; ++i)
    out.push_back(polar(c, r, from_deg + (to_deg - from_deg) * i / samples));
  return out;
}

PlanarBoundary circle_boundary(Pt c, double r, bool outer,
                               const std::vector<std::pair<std::string, double>>& marks_deg,
                               int samples) {
  PlanarBoundary b;
  b.outer = outer;
  std::set<double> angles;
  for (int i = 0; i < samples; ++i) angles.insert(360.0 * i / samples);
  for (auto& [n, a] : marks_deg) {
    double aa = std::fmod(std::fmod(a, 360.0) + 360.0, 360.0);
    angles.insert(aa);
    b.marks.push_back({n, polar(c, r, aa)});
  }
  for (double a : angles) b.polygon.push_back(polar(c, r, a));
  return b;
}

HeegaardDiagram build_planar(const PlanarSpec& spec) {
  HeegaardDiagram h;
  h.name = spec.name;
  h.parts = spec.parts;

  // Z_H point numbering, as in finalize.
  std::map<std::string, int> point_of;
  std::vector<int> segment_of;
  int seg_base = 0;
  for (auto& part : h.parts) {
    ArcDiagram o = part.oriented();
    for (int p = 0; p < o.num_points(); ++p) {
      point_of[part.label + "." + o.point_names[p]] = static_cast<int>(segment_of.size());
      segment_of.push_back(seg_base + o.segment_of[p]);
    }
    seg_base += o.num_segments();
  }
  auto vertex = [&](const std::string& n) {
    int v = h.vertex_index(n);
    for (int i = 0; i < static_cast<int>(h.vertices.size()); ++i)
      if (h.vertices[i].name == n) v = i;
    if (v < 0) {
      h.vertices.push_back({n, VertexKind::Plain, -1});
      v = static_cast<int>(h.vertices.size()) - 1;
    }
    return v;
  };
  std::vector<Pt> vpos;
  auto add_vertex = [&](const std::string& n, Pt p) {
    for (auto& v : h.vertices)
      if (v.name == n) throw Error("duplicate vertex " + n);
    int v = vertex(n);
    vpos.resize(h.vertices.size());
    vpos[v] = p;
    return v;
  };

  std::vector<std::vector<Pt>> edge_poly;
  auto add_edge = [&](const std::string& n, EdgeKind k, const std::string& curve, int from,
                      int to, std::vector<Pt> poly) {
    HEdge e;
    e.name = n;
    e.kind = k;
    e.curve_name = curve;
    e.from = from;
    e.to = to;
    h.edges.push_back(e);
    edge_poly.push_back(std::move(poly));
  };

  // Boundaries.
  std::vector<CurveGeom> bgeom;
  std::map<std::string, int> mark_vertex;
  int nz = 0, nf = 0;
  for (size_t bi = 0; bi < spec.boundaries.size(); ++bi) {
    auto poly = spec.boundaries[bi].polygon;
    bool ccw = signed_area(poly) > 0;
    if (ccw != spec.boundaries[bi].outer) std::reverse(poly.begin(), poly.end());
    // Insert marks.
    std::vector<std::pair<double, std::string>> at;  // polygon parameter of each mark
    for (auto& m : spec.boundaries[bi].marks) {
      bool placed = false;
      for (size_t i = 0; i < poly.size() && !placed; ++i) {
        Pt a = poly[i], b = poly[(i + 1) % poly.size()];
        if (dist_to_segment(m.at, a, b) < 1e-7) {
          double t = dot(m.at - a, b - a) / dot(b - a, b - a);
          at.push_back({i + std::clamp(t, 0.0, 1.0 - 1e-12), m.name});
          placed = true;
        }
      }
      if (!placed) throw Error("mark " + m.name + " is not on its boundary");
      if (!point_of.count(m.name)) throw Error("mark " + m.name + " is not a boundary point");
    }
    std::sort(at.begin(), at.end());
    CurveGeom g{poly, true};
    bgeom.push_back(g);
    if (at.empty()) {
      int v = add_vertex("o" + std::to_string(bi + 1), poly[0]);
      add_edge("f" + std::to_string(++nf), EdgeKind::Free, "", v, v, g.between(0, g.segments()));
      continue;
    }
    std::vector<int> vs;
    for (auto& [s, n] : at) {
      vs.push_back(add_vertex(n, g.at(s)));
      mark_vertex[n] = vs.back();
    }
    for (size_t i = 0; i < at.size(); ++i) {
      size_t j = (i + 1) % at.size();
      double a = at[i].first, b = at[j].first;
      if (j == 0) b += g.segments();
      int p = point_of[at[i].second], q = point_of[at[j].second];
      bool z = q == p + 1 && segment_of[p] == segment_of[q];
      if (z)
        add_edge("z" + std::to_string(++nz), EdgeKind::Z, "", vs[i], vs[j], g.between(a, b));
      else
        add_edge("f" + std::to_string(++nf), EdgeKind::Free, "", vs[i], vs[j], g.between(a, b));
    }
  }

  // Curve intersections.
  const int nc = static_cast<int>(spec.curves.size());
  std::vector<CurveGeom> cg;
  for (auto& c : spec.curves) cg.push_back({c.pts, c.closed});
  std::vector<std::vector<std::pair<double, int>>> on_curve(nc);  // (param, vertex)
  for (int i = 0; i < nc; ++i) {
    const auto& c = spec.curves[i];
    if (c.kind == EdgeKind::AlphaArc) {
      int va = -1, vb = -1;
      for (auto& [n, v] : mark_vertex) {
        if (dist(vpos[v], c.pts.front()) < 1e-7) va = v;
        if (dist(vpos[v], c.pts.back()) < 1e-7) vb = v;
      }
      if (va < 0 || vb < 0) throw Error("alpha arc " + c.name + " does not end on marks");
      on_curve[i].push_back({0.0, va});
      on_curve[i].push_back({static_cast<double>(cg[i].segments()), vb});
    } else if (c.closed != true) {
      throw Error("curve " + c.name + " must be closed");
    }
  }
  struct Cross {
    Pt p;
    int c1, c2;
    double s1, s2;
  };
  std::vector<Cross> crossings;
  for (int i = 0; i < nc; ++i)
    for (int j = i; j < nc; ++j)
      for (int a = 0; a < cg[i].segments(); ++a)
        for (int b = (i == j ? a + 1 : 0); b < cg[j].segments(); ++b) {
          double t, u;
          if (!intersect(cg[i].seg_a(a), cg[i].seg_b(a), cg[j].seg_a(b), cg[j].seg_b(b), t, u))
            continue;
          if (i == j) {
            int n = cg[i].segments();
            bool adjacent = b == a + 1 || (cg[i].closed && a == 0 && b == n - 1);
            if (adjacent) continue;
            throw Error("curve " + spec.curves[i].name + " intersects itself");
          }
          Pt p = cg[i].seg_a(a) + t * (cg[i].seg_b(a) - cg[i].seg_a(a));
          bool dup = false;
          for (auto& c : crossings)
            if (c.c1 == i && c.c2 == j && dist(c.p, p) < 1e-7) dup = true;
          if (dup) continue;
          bool ai = is_alpha(spec.curves[i].kind), aj = is_alpha(spec.curves[j].kind);
          if (ai == aj)
            throw Error("curves " + spec.curves[i].name + " and " + spec.curves[j].name +
                        " of one family intersect");
          crossings.push_back({p, i, j, a + t, b + u});
        }
  // Curves must avoid the boundary except at arc ends.
  for (int i = 0; i < nc; ++i)
    for (auto& g : bgeom)
      for (int a = 0; a < cg[i].segments(); ++a)
        for (int b = 0; b < g.segments(); ++b) {
          double t, u;
          if (!intersect(cg[i].seg_a(a), cg[i].seg_b(a), g.seg_a(b), g.seg_b(b), t, u)) continue;
          double s = a + t;
          bool at_end = spec.curves[i].kind == EdgeKind::AlphaArc &&
                        (s < 1e-6 || s > cg[i].segments() - 1e-6);
          if (!at_end) throw Error("curve " + spec.curves[i].name + " meets the boundary");
        }
  int auto_name = 0;
  std::vector<std::string> cross_names(crossings.size());
  std::set<size_t> named;
  for (auto& [n, p] : spec.vertex_names) {
    size_t best = crossings.size();
    double bd = std::numeric_limits<double>::max();
    for (size_t k = 0; k < crossings.size(); ++k)
      if (dist(crossings[k].p, p) < bd) {
        bd = dist(crossings[k].p, p);
        best = k;
      }
    if (best == crossings.size() || named.count(best)) throw Error("cannot place name " + n);
    cross_names[best] = n;
    named.insert(best);
  }
  for (size_t k = 0; k < crossings.size(); ++k) {
    if (cross_names[k].empty()) cross_names[k] = "x" + std::to_string(++auto_name);
    int v = add_vertex(cross_names[k], crossings[k].p);
    on_curve[crossings[k].c1].push_back({crossings[k].s1, v});
    on_curve[crossings[k].c2].push_back({crossings[k].s2, v});
  }
  for (int i = 0; i < nc; ++i) {
    auto& oc = on_curve[i];
    const auto& c = spec.curves[i];
    if (oc.empty()) oc.push_back({0.0, add_vertex(c.name + ".o", cg[i].at(0))});
    std::sort(oc.begin(), oc.end());
    int k = 0;
    size_t m = oc.size();
    size_t last = c.closed ? m : m - 1;
    for (size_t j = 0; j < last; ++j) {
      double a = oc[j].first, b = j + 1 < m ? oc[j + 1].first : oc[0].first + cg[i].segments();
      int to = j + 1 < m ? oc[j + 1].second : oc[0].second;
      add_edge(c.name + "." + std::to_string(++k), c.kind, c.name, oc[j].second, to,
               cg[i].between(a, b));
    }
  }

  // Rotation system and face tracing.
  const int ne = static_cast<int>(h.edges.size());
  const int nv = static_cast<int>(h.vertices.size());
  std::vector<std::vector<std::pair<double, int>>> rot(nv);
  for (int e = 0; e < ne; ++e) {
    const auto& poly = edge_poly[e];
    Pt d0 = poly[1] - poly[0];
    Pt d1 = poly[poly.size() - 2] - poly.back();
    rot[h.edges[e].from].push_back({std::atan2(d0.y, d0.x), 2 * e});
    rot[h.edges[e].to].push_back({std::atan2(d1.y, d1.x), 2 * e + 1});
  }
  std::vector<int> pos(2 * ne), vert_of(2 * ne);
  for (int v = 0; v < nv; ++v) {
    std::sort(rot[v].begin(), rot[v].end());
    for (size_t i = 0; i < rot[v].size(); ++i) {
      pos[rot[v][i].second] = static_cast<int>(i);
      vert_of[rot[v][i].second] = v;
    }
  }
  auto head = [&](int d) { return d % 2 == 0 ? h.edges[d / 2].to : h.edges[d / 2].from; };
  auto next = [&](int d) {
    int v = head(d);
    int r = d ^ 1;
    const auto& L = rot[v];
    return L[(pos[r] + L.size() - 1) % L.size()].second;
  };
  std::vector<bool> used(2 * ne, false);
  struct Cycle {
    std::vector<int> darts;
    std::vector<Pt> poly;
    double area;
  };
  std::vector<Cycle> outer, inner;
  for (int d0 = 0; d0 < 2 * ne; ++d0) {
    if (used[d0]) continue;
    Cycle c;
    int d = d0;
    bool outside = false;
    do {
      used[d] = true;
      c.darts.push_back(d);
      const auto& poly = edge_poly[d / 2];
      if (d % 2 == 0) c.poly.insert(c.poly.end(), poly.begin(), poly.end() - 1);
      else c.poly.insert(c.poly.end(), poly.rbegin(), poly.rend() - 1);
      if (d % 2 == 1 && is_boundary(h.edges[d / 2].kind)) outside = true;
      d = next(d);
    } while (d != d0);
    if (outside) {
      for (int x : c.darts)
        if (!(x % 2 == 1 && is_boundary(h.edges[x / 2].kind)))
          throw Error("curve leaves the surface near edge " + h.edges[x / 2].name);
      continue;
    }
    c.area = signed_area(c.poly);
    (c.area > 0 ? outer : inner).push_back(std::move(c));
  }
  std::vector<std::vector<const Cycle*>> regions(outer.size());
  for (size_t i = 0; i < outer.size(); ++i) regions[i].push_back(&outer[i]);
  for (auto& c : inner) {
    int best = -1;
    for (size_t i = 0; i < outer.size(); ++i)
      if (point_in_polygon(c.poly[0], outer[i].poly) &&
          (best < 0 || outer[i].area < outer[best].area))
        best = static_cast<int>(i);
    if (best < 0) throw Error("inner boundary cycle outside every region");
    regions[best].push_back(&c);
  }
  auto contains = [&](size_t r, Pt p) {
    if (!point_in_polygon(p, regions[r][0]->poly)) return false;
    for (size_t k = 1; k < regions[r].size(); ++k)
      if (point_in_polygon(p, regions[r][k]->poly)) return false;
    return true;
  };
  std::vector<std::string> rnames(regions.size());
  for (auto& [n, p] : spec.region_names) {
    bool found = false;
    for (size_t r = 0; r < regions.size(); ++r)
      if (contains(r, p)) {
        if (!rnames[r].empty()) throw Error("two names for one region: " + n);
        rnames[r] = n;
        found = true;
      }
    if (!found) throw Error("region name " + n + " is outside the surface");
  }
  int auto_region = 0;
  for (size_t r = 0; r < regions.size(); ++r) {
    HRegion R;
    R.name = rnames[r].empty() ? "R" + std::to_string(++auto_region) : rnames[r];
    for (auto* c : regions[r]) {
      std::vector<Side> sides;
      for (int d : c->darts) sides.push_back({d / 2, d % 2 == 0});
      auto m = std::min_element(sides.begin(), sides.end(), [](const Side& a, const Side& b) {
        return std::pair(a.edge, !a.forward) < std::pair(b.edge, !b.forward);
      });
      std::rotate(sides.begin(), m, sides.end());
      R.cycles.push_back(sides);
    }
    h.regions.push_back(R);
  }
  h.finalize();
  return h;
}

}  // namespace bsfh
