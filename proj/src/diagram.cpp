#include "bsfh/diagram.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace bsfh {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

EdgeKind parse_kind(const std::string& k) {
  if (k == "alpha-arc") return EdgeKind::AlphaArc;
  if (k == "alpha-circle") return EdgeKind::AlphaCircle;
  if (k == "beta") return EdgeKind::Beta;
  if (k == "z") return EdgeKind::Z;
  if (k == "free") return EdgeKind::Free;
  throw Error("unknown edge kind '" + k + "'");
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

int vertex_or_add(HeegaardDiagram& h, std::map<std::string, int>& idx, const std::string& n) {
  auto it = idx.find(n);
  if (it != idx.end()) return it->second;
  int v = static_cast<int>(h.vertices.size());
  h.vertices.push_back({n, VertexKind::Plain, -1});
  idx[n] = v;
  return v;
}

}  // namespace

std::string edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::AlphaArc: return "alpha-arc";
    case EdgeKind::AlphaCircle: return "alpha-circle";
    case EdgeKind::Beta: return "beta";
    case EdgeKind::Z: return "z";
    case EdgeKind::Free: return "free";
  }
  return "?";
}

int HeegaardDiagram::chi(int r) const {
  return 2 - 2 * regions[r].genus - static_cast<int>(regions[r].cycles.size());
}

int HeegaardDiagram::vertex_index(const std::string& n) const {
  auto it = vertex_by_name_.find(n);
  return it == vertex_by_name_.end() ? -1 : it->second;
}

int HeegaardDiagram::edge_index(const std::string& n) const {
  auto it = edge_by_name_.find(n);
  return it == edge_by_name_.end() ? -1 : it->second;
}

int HeegaardDiagram::part_of_pair(int pair) const {
  for (int i = static_cast<int>(parts.size()) - 1; i >= 0; --i)
    if (pair >= parts[i].pair_offset) return i;
  return -1;
}

int HeegaardDiagram::part_of_point(int p) const {
  for (int i = static_cast<int>(parts.size()) - 1; i >= 0; --i)
    if (p >= parts[i].point_offset) return i;
  return -1;
}

PairSet HeegaardDiagram::side_pairs(char side) const {
  PairSet s = 0;
  for (const auto& part : parts)
    if (part.side == side)
      for (int j = 0; j < part.base.num_pairs(); ++j) s |= PairSet(1) << (part.pair_offset + j);
  return s;
}

void HeegaardDiagram::finalize() {
  // Z_H and point lookup.
  ArcDiagram u;
  std::map<std::string, int> point_by_name;
  std::set<std::string> labels;
  for (auto& part : parts) {
    if (!labels.insert(part.label).second) throw Error("duplicate boundary label " + part.label);
    require_valid(part.base);
    part.point_offset = u.num_points();
    part.pair_offset = u.num_pairs();
    ArcDiagram o = part.oriented();
    for (int p = 0; p < o.num_points(); ++p)
      point_by_name[part.label + "." + o.point_names[p]] = part.point_offset + p;
    u = arc_union(u, o);
  }
  if (parts.size() == 1) u = parts[0].oriented();
  zh_ = std::make_shared<const ArcDiagram>(u);
  const int nv = static_cast<int>(vertices.size());
  const int ne = static_cast<int>(edges.size());
  const int nr = static_cast<int>(regions.size());
  vertex_by_name_.clear();
  edge_by_name_.clear();
  for (int v = 0; v < nv; ++v) {
    if (!vertex_by_name_.emplace(vertices[v].name, v).second)
      throw Error("duplicate vertex " + vertices[v].name);
    auto it = point_by_name.find(vertices[v].name);
    vertices[v].point = it == point_by_name.end() ? -1 : it->second;
    vertices[v].kind = it == point_by_name.end() ? VertexKind::Plain : VertexKind::ZPoint;
  }
  for (int e = 0; e < ne; ++e)
    if (!edge_by_name_.emplace(edges[e].name, e).second)
      throw Error("duplicate edge " + edges[e].name);
  std::vector<int> point_vertex(u.num_points(), -1);
  for (int v = 0; v < nv; ++v)
    if (vertices[v].point >= 0) point_vertex[vertices[v].point] = v;
  for (int p = 0; p < u.num_points(); ++p)
    if (point_vertex[p] < 0) throw Error("boundary point without a vertex");

  // Edge endpoints and Z intervals.
  std::vector<int> interval_edge(u.num_intervals(), -1);
  for (int e = 0; e < ne; ++e) {
    auto& E = edges[e];
    if (E.from < 0 || E.to < 0 || E.from >= nv || E.to >= nv)
      throw Error("edge " + E.name + " has a missing endpoint");
    if (E.kind == EdgeKind::Z) {
      int p = vertices[E.from].point, q = vertices[E.to].point;
      if (p < 0 || q < 0 || q != p + 1 || !u.same_segment(p, q))
        throw Error("z edge " + E.name + " does not join consecutive boundary points");
      E.interval = u.interval_after(p);
      if (interval_edge[E.interval] >= 0) throw Error("interval covered twice by " + E.name);
      interval_edge[E.interval] = e;
    } else {
      E.interval = -1;
    }
    if (is_boundary(E.kind)) E.curve = -1;
  }
  for (int iv = 0; iv < u.num_intervals(); ++iv)
    if (interval_edge[iv] < 0) throw Error("boundary interval without a z edge");

  // Curves.
  num_alpha_arcs = u.num_pairs();
  alpha_names.assign(num_alpha_arcs, "");
  beta_names.clear();
  std::map<std::string, std::vector<int>> curve_edges;
  std::map<std::string, EdgeKind> curve_kind;
  std::vector<std::string> order;
  for (int e = 0; e < ne; ++e) {
    auto& E = edges[e];
    if (is_boundary(E.kind)) continue;
    if (E.curve_name.empty()) throw Error("edge " + E.name + " has no curve");
    auto [it, fresh] = curve_kind.emplace(E.curve_name, E.kind);
    if (!fresh && it->second != E.kind) throw Error("curve " + E.curve_name + " has mixed kinds");
    if (fresh) order.push_back(E.curve_name);
    curve_edges[E.curve_name].push_back(e);
  }
  std::map<std::string, int> curve_index;
  for (auto& c : order) {
    auto& es = curve_edges[c];
    // Connectivity and degrees along the curve.
    std::map<int, int> deg;
    UnionFind uf(nv);
    for (int e : es) {
      deg[edges[e].from]++;
      deg[edges[e].to]++;
      uf.unite(edges[e].from, edges[e].to);
    }
    std::vector<int> ends;
    for (auto [v, d] : deg) {
      if (uf.find(v) != uf.find(deg.begin()->first)) throw Error("curve " + c + " is disconnected");
      if (d == 1) ends.push_back(v);
      else if (d != 2) throw Error("curve " + c + " branches at " + vertices[v].name);
    }
    if (curve_kind[c] == EdgeKind::AlphaArc) {
      if (ends.size() != 2 || vertices[ends[0]].point < 0 || vertices[ends[1]].point < 0)
        throw Error("alpha arc " + c + " must run between two boundary points");
      int p = vertices[ends[0]].point, q = vertices[ends[1]].point;
      if (u.matching[p] != u.matching[q]) throw Error("alpha arc " + c + " joins unmatched points");
      int pair = u.matching[p];
      if (!alpha_names[pair].empty()) throw Error("two alpha arcs on one matched pair");
      alpha_names[pair] = c;
      curve_index[c] = pair;
    } else if (!ends.empty()) {
      throw Error("curve " + c + " is not closed");
    }
  }
  for (int pair = 0; pair < num_alpha_arcs; ++pair)
    if (alpha_names[pair].empty()) throw Error("matched pair without an alpha arc");
  for (auto& c : order)
    if (curve_kind[c] == EdgeKind::AlphaCircle) {
      curve_index[c] = static_cast<int>(alpha_names.size());
      alpha_names.push_back(c);
    }
  for (auto& c : order)
    if (curve_kind[c] == EdgeKind::Beta) {
      curve_index[c] = static_cast<int>(beta_names.size());
      beta_names.push_back(c);
    }
  for (auto& E : edges)
    if (!is_boundary(E.kind)) E.curve = curve_index[E.curve_name];

  // Region sides.
  left_.assign(ne, -1);
  right_.assign(ne, -1);
  for (int r = 0; r < nr; ++r) {
    if (regions[r].cycles.empty()) throw Error("region " + regions[r].name + " has no boundary");
    for (auto& cyc : regions[r].cycles) {
      if (cyc.empty()) throw Error("empty cycle in region " + regions[r].name);
      for (size_t i = 0; i < cyc.size(); ++i) {
        const Side& s = cyc[i];
        auto& slot = s.forward ? left_[s.edge] : right_[s.edge];
        if (slot >= 0) throw Error("edge " + edges[s.edge].name + " bordered twice on one side");
        slot = r;
        const Side& n = cyc[(i + 1) % cyc.size()];
        if (side_end(s) != side_start(n))
          throw Error("region " + regions[r].name + " is not a closed cycle at " +
                      edges[s.edge].name);
      }
    }
  }
  for (int e = 0; e < ne; ++e) {
    bool bd = is_boundary(edges[e].kind);
    if (left_[e] < 0 || (bd ? right_[e] >= 0 : right_[e] < 0))
      throw Error("edge " + edges[e].name + " is not bordered exactly " +
                  (bd ? "once" : "twice with opposite directions"));
  }

  // Vertex incidence.
  alpha_at_.assign(nv, -1);
  beta_at_.assign(nv, -1);
  struct Inc {
    int alpha = 0, beta = 0, arc = 0, in = 0, out = 0, acurve = -1, bcurve = -1;
    bool mixed = false;
    int in_edge = -1, out_edge = -1;
  };
  std::vector<Inc> inc(nv);
  for (int e = 0; e < ne; ++e) {
    const auto& E = edges[e];
    for (int v : {E.from, E.to}) {
      auto& I = inc[v];
      if (is_alpha(E.kind)) {
        ++I.alpha;
        if (E.kind == EdgeKind::AlphaArc) ++I.arc;
        if (I.acurve >= 0 && I.acurve != E.curve) I.mixed = true;
        I.acurve = E.curve;
      } else if (E.kind == EdgeKind::Beta) {
        ++I.beta;
        if (I.bcurve >= 0 && I.bcurve != E.curve) I.mixed = true;
        I.bcurve = E.curve;
      }
    }
    if (is_boundary(E.kind)) {
      ++inc[E.to].in;
      ++inc[E.from].out;
      inc[E.to].in_edge = e;
      inc[E.from].out_edge = e;
    }
  }
  crossings_.clear();
  on_beta_.assign(beta_names.size(), {});
  for (int v = 0; v < nv; ++v) {
    auto& I = inc[v];
    auto& V = vertices[v];
    if (V.kind == VertexKind::ZPoint) {
      if (I.alpha != 1 || I.arc != 1 || I.beta != 0 || I.in != 1 || I.out != 1)
        throw Error("boundary point " + V.name + " must meet one alpha arc and the boundary");
      int p = V.point;
      bool first = p == 0 || !u.same_segment(p - 1, p);
      bool last = p + 1 == u.num_points() || !u.same_segment(p, p + 1);
      if ((edges[I.in_edge].kind == EdgeKind::Z) == first ||
          (edges[I.out_edge].kind == EdgeKind::Z) == last)
        throw Error("boundary edges at " + V.name + " disagree with the arc diagram");
      alpha_at_[v] = I.acurve;
    } else if (I.alpha > 0 && I.beta > 0) {
      if (I.alpha != 2 || I.beta != 2 || I.mixed || I.in || I.out)
        throw Error("crossing " + V.name + " must meet one alpha and one beta transversally");
      V.kind = VertexKind::Crossing;
      alpha_at_[v] = I.acurve;
      beta_at_[v] = I.bcurve;
      crossings_.push_back(v);
      on_beta_[I.bcurve].push_back(v);
    } else {
      if (I.mixed || (I.alpha != 0 && I.alpha != 2) || (I.beta != 0 && I.beta != 2) ||
          I.in != I.out || (I.in > 0 && I.beta > 0) || (I.in > 1 && I.alpha == 0) ||
          I.alpha + I.beta + I.in == 0)
        throw Error("vertex " + V.name + " has an invalid neighbourhood");
      V.kind = VertexKind::Plain;
      if (I.alpha) alpha_at_[v] = I.acurve;
    }
  }

  // Corners, visits, Euler measures.
  corners_.assign(nr, {});
  visits_.assign(nv, {});
  euler4_.assign(nr, 0);
  boundary_region_.assign(nr, false);
  for (int r = 0; r < nr; ++r) {
    int ncorners = 0;
    for (int c = 0; c < static_cast<int>(regions[r].cycles.size()); ++c) {
      const auto& cyc = regions[r].cycles[c];
      for (int i = 0; i < static_cast<int>(cyc.size()); ++i) {
        const auto& a = edges[cyc[i].edge];
        const auto& b = edges[cyc[(i + 1) % cyc.size()].edge];
        if (a.kind == EdgeKind::Free) boundary_region_[r] = true;
        int v = side_end(cyc[i]);
        Corner k{v, c, i, Corner::None};
        if (vertices[v].kind == VertexKind::Crossing) {
          if (a.kind == EdgeKind::Beta && is_alpha(b.kind)) k.kind = Corner::Out;
          if (is_alpha(a.kind) && b.kind == EdgeKind::Beta) k.kind = Corner::In;
          visits_[v].push_back(r);
        } else if (vertices[v].kind == VertexKind::ZPoint &&
                   is_alpha(a.kind) != is_alpha(b.kind)) {
          k.kind = Corner::Boundary;
        }
        if (k.kind != Corner::None) ++ncorners;
        corners_[r].push_back(k);
      }
    }
    euler4_[r] = 4 * chi(r) - ncorners;
  }
}

// ---------------------------------------------------------------------------
// Text format.

HeegaardDiagram parse_heegaard(const std::string& text, const std::string& base_dir) {
  HeegaardDiagram h;
  std::map<std::string, int> vidx;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error("line " + std::to_string(lineno) + ": " + msg);
  };
  struct PendingRegion {
    std::string name;
    std::vector<std::vector<std::pair<std::string, bool>>> cycles;
    int genus = 0;
    int line = 0;
  };
  std::vector<PendingRegion> pending;
  auto part_options = [&](BoundaryPart& part, const std::vector<std::string>& t, size_t from) {
    for (size_t i = from; i < t.size(); ++i) {
      if (t[i] == "reversed") part.reversed = true;
      else if (t[i] == "side=D" || t[i] == "side=A") part.side = t[i][5];
      else if (t[i].rfind("label=", 0) == 0 || t[i].rfind("as=", 0) == 0)
        part.label = t[i].substr(t[i].find('=') + 1);
      else fail("unknown boundary option '" + t[i] + "'");
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto t = tokens(line);
    if (t.empty()) continue;
    if (t[0] == "name") {
      if (t.size() != 2) fail("expected 'name <id>'");
      h.name = t[1];
    } else if (t[0] == "boundary") {
      if (t.size() < 2) fail("expected 'boundary <file> [reversed] [side=D|A] [label=<id>]'");
      BoundaryPart part;
      part.source = t[1];
      std::filesystem::path p(t[1]);
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      try {
        part.base = load_arc_diagram(p.string());
      } catch (const Error& e) {
        fail(e.what());
      }
      part.label = part.base.name;
      part_options(part, t, 2);
      h.parts.push_back(std::move(part));
    } else if (t[0] == "boundary-begin") {
      BoundaryPart part;
      part_options(part, t, 1);
      std::string body;
      int start = lineno;
      bool closed = false;
      while (std::getline(in, line)) {
        ++lineno;
        if (tokens(line) == std::vector<std::string>{"boundary-end"}) {
          closed = true;
          break;
        }
        body += line + "\n";
      }
      if (!closed) {
        lineno = start;
        fail("unterminated boundary-begin");
      }
      part.base = parse_arc_diagram(body, part.label);
      if (part.label.empty()) part.label = part.base.name;
      h.parts.push_back(std::move(part));
    } else if (t[0] == "edge") {
      if (t.size() < 3) fail("expected 'edge <name> kind=<kind> ...'");
      HEdge e;
      e.name = t[1];
      std::string chord;
      bool have_kind = false;
      for (size_t i = 2; i < t.size(); ++i) {
        auto eq = t[i].find('=');
        if (eq == std::string::npos) fail("expected key=value, got '" + t[i] + "'");
        auto key = t[i].substr(0, eq), val = t[i].substr(eq + 1);
        if (key == "kind") {
          try {
            e.kind = parse_kind(val);
          } catch (const Error& err) {
            fail(err.what());
          }
          have_kind = true;
        } else if (key == "curve" || key == "arc") {
          e.curve_name = val;
        } else if (key == "from") {
          e.from = vertex_or_add(h, vidx, val);
        } else if (key == "to") {
          e.to = vertex_or_add(h, vidx, val);
        } else if (key == "chord") {
          chord = val;
        } else {
          fail("unknown edge attribute '" + key + "'");
        }
      }
      if (!have_kind) fail("edge " + e.name + " has no kind");
      if (e.from < 0 || e.to < 0) fail("edge " + e.name + " needs from= and to=");
      if (!chord.empty()) {
        auto dots = chord.find("..");
        if (e.kind != EdgeKind::Z || dots == std::string::npos) fail("malformed chord=");
        auto label = h.vertices[e.from].name;
        auto prefix = label.substr(0, label.rfind('.') + 1);
        if (prefix + chord.substr(0, dots) != h.vertices[e.from].name ||
            prefix + chord.substr(dots + 2) != h.vertices[e.to].name)
          fail("chord= disagrees with the endpoints of " + e.name);
      }
      h.edges.push_back(e);
    } else if (t[0] == "region") {
      auto colon = line.find(':');
      if (colon == std::string::npos) fail("expected 'region <name>: <sides>'");
      auto head = tokens(line.substr(0, colon));
      if (head.size() != 2) fail("expected 'region <name>:'");
      PendingRegion pr;
      pr.name = head[1];
      pr.line = lineno;
      pr.cycles.emplace_back();
      for (auto& tok : tokens(line.substr(colon + 1))) {
        if (tok == "|") {
          pr.cycles.emplace_back();
        } else if (tok.rfind("genus=", 0) == 0) {
          pr.genus = std::stoi(tok.substr(6));
        } else {
          char sgn = tok.back();
          if ((sgn != '+' && sgn != '-') || tok.size() < 2) fail("side '" + tok + "' needs +/-");
          pr.cycles.back().push_back({tok.substr(0, tok.size() - 1), sgn == '+'});
        }
      }
      pending.push_back(pr);
    } else {
      fail("unknown directive '" + t[0] + "'");
    }
  }
  std::map<std::string, int> eidx;
  for (int e = 0; e < static_cast<int>(h.edges.size()); ++e) eidx[h.edges[e].name] = e;
  for (auto& pr : pending) {
    lineno = pr.line;
    HRegion r;
    r.name = pr.name;
    r.genus = pr.genus;
    for (auto& cyc : pr.cycles) {
      std::vector<Side> sides;
      for (auto& [n, fwd] : cyc) {
        auto it = eidx.find(n);
        if (it == eidx.end()) fail("unknown edge '" + n + "'");
        sides.push_back({it->second, fwd});
      }
      // Cyclic rotation normal form: start at the least edge index.
      if (!sides.empty()) {
        auto m = std::min_element(sides.begin(), sides.end(), [](const Side& a, const Side& b) {
          return std::pair(a.edge, !a.forward) < std::pair(b.edge, !b.forward);
        });
        std::rotate(sides.begin(), m, sides.end());
      }
      r.cycles.push_back(sides);
    }
    h.regions.push_back(r);
  }
  h.finalize();
  return h;
}

HeegaardDiagram load_heegaard(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  auto dir = std::filesystem::path(path).parent_path().string();
  auto h = parse_heegaard(ss.str(), dir.empty() ? "." : dir);
  if (h.name.empty()) h.name = std::filesystem::path(path).stem().string();
  return h;
}

std::string format_heegaard(const HeegaardDiagram& h) {
  std::ostringstream out;
  out << "name " << h.name << "\n";
  for (const auto& p : h.parts) {
    std::string opts = std::string(p.reversed ? " reversed" : "") + " side=" + p.side +
                       " label=" + p.label;
    if (!p.source.empty()) {
      out << "boundary " << p.source << opts << "\n";
    } else {
      out << "boundary-begin" << opts << "\n" << format_arc_diagram(p.base) << "boundary-end\n";
    }
  }
  for (const auto& e : h.edges) {
    out << "edge " << e.name << " kind=" << edge_kind_name(e.kind);
    if (!is_boundary(e.kind)) out << " curve=" << e.curve_name;
    out << " from=" << h.vertices[e.from].name << " to=" << h.vertices[e.to].name << "\n";
  }
  for (const auto& r : h.regions) {
    out << "region " << r.name << ":";
    for (size_t c = 0; c < r.cycles.size(); ++c) {
      if (c) out << " |";
      for (auto& s : r.cycles[c]) out << " " << h.edges[s.edge].name << (s.forward ? '+' : '-');
    }
    if (r.genus) out << " genus=" << r.genus;
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Checks.

CheckReport check(const HeegaardDiagram& h) {
  CheckReport rep;
  auto problem = [&](const std::string& m) {
    rep.ok = false;
    rep.problems.push_back(m);
  };
  auto v = validate(*h.zh());
  if (!v.ok) problem("boundary arc diagram is degenerate: " + v.message);
  bool any_free = false;
  for (auto& e : h.edges)
    if (e.kind == EdgeKind::Free) any_free = true;
  if (!any_free) problem("no boundary outside Z");
  const int nr = h.num_regions();
  // Components of the complement of beta (resp. alpha) must reach free boundary.
  for (bool cut_beta : {true, false}) {
    UnionFind uf(nr);
    for (int e = 0; e < static_cast<int>(h.edges.size()); ++e) {
      auto k = h.edges[e].kind;
      if (is_boundary(k)) continue;
      bool is_cut = cut_beta ? k == EdgeKind::Beta : is_alpha(k);
      if (!is_cut) uf.unite(h.left_region(e), h.right_region(e));
    }
    std::set<int> reached;
    for (int r = 0; r < nr; ++r)
      if (h.boundary_region(r)) reached.insert(uf.find(r));
    std::set<int> reported;
    for (int r = 0; r < nr; ++r)
      if (!reached.count(uf.find(r)) && reported.insert(uf.find(r)).second)
        problem(std::string("component of the complement of ") + (cut_beta ? "beta" : "alpha") +
                " containing region " + h.regions[r].name + " misses the free boundary");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Generators.

std::vector<Generator> generators(const HeegaardDiagram& h) {
  const int nb = h.num_betas();
  std::vector<Generator> out;
  std::vector<bool> used(h.alpha_names.size(), false);
  Generator cur;
  std::function<void(int)> rec = [&](int b) {
    if (b == nb) {
      for (int a = h.num_alpha_arcs; a < static_cast<int>(used.size()); ++a)
        if (!used[a]) return;
      out.push_back(cur);
      return;
    }
    for (int v : h.crossings_on_beta(b)) {
      int a = h.alpha_of(v);
      if (used[a]) continue;
      used[a] = true;
      cur.points.push_back(v);
      rec(b + 1);
      cur.points.pop_back();
      used[a] = false;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [&](const Generator& a, const Generator& b) {
    return generator_name(h, a) < generator_name(h, b);
  });
  return out;
}

bool is_generator(const HeegaardDiagram& h, const Generator& x) {
  if (static_cast<int>(x.points.size()) != h.num_betas()) return false;
  std::vector<bool> used(h.alpha_names.size(), false);
  for (int b = 0; b < h.num_betas(); ++b) {
    int v = x.points[b];
    if (v < 0 || v >= static_cast<int>(h.vertices.size()) ||
        h.vertices[v].kind != VertexKind::Crossing || h.beta_of(v) != b || used[h.alpha_of(v)])
      return false;
    used[h.alpha_of(v)] = true;
  }
  for (int a = h.num_alpha_arcs; a < static_cast<int>(used.size()); ++a)
    if (!used[a]) return false;
  return true;
}

PairSet occupied(const HeegaardDiagram& h, const Generator& x) {
  PairSet s = 0;
  for (int v : x.points)
    if (h.alpha_of(v) < h.num_alpha_arcs) s |= PairSet(1) << h.alpha_of(v);
  return s;
}

std::string generator_name(const HeegaardDiagram& h, const Generator& x) {
  bool long_names = false;
  for (int v : x.points)
    if (h.vertices[v].name.size() != 1) long_names = true;
  std::string s;
  for (size_t i = 0; i < x.points.size(); ++i) {
    if (i && long_names) s += ",";
    s += h.vertices[x.points[i]].name;
  }
  return s.empty() ? "()" : s;
}

// ---------------------------------------------------------------------------
// Domains.

DomainSystem::DomainSystem(const HeegaardDiagram& h, bool provincial) : h_(&h) {
  std::vector<int> col_of(h.num_regions(), -1);
  for (int r = 0; r < h.num_regions(); ++r)
    if (!h.boundary_region(r)) {
      col_of[r] = static_cast<int>(cols_.size());
      cols_.push_back(r);
    }
  const int nc = static_cast<int>(cols_.size());
  row_of_vertex_.assign(h.vertices.size(), -1);
  for (int v = 0; v < static_cast<int>(h.vertices.size()); ++v)
    if (h.vertices[v].kind != VertexKind::ZPoint && h.alpha_of(v) >= 0) {
      row_of_vertex_[v] = static_cast<int>(A_.size());
      A_.push_back(IntVec(nc, 0));
    }
  for (int e = 0; e < static_cast<int>(h.edges.size()); ++e) {
    const auto& E = h.edges[e];
    if (!is_alpha(E.kind)) continue;
    for (auto [v, sgn] : {std::pair{E.to, 1}, std::pair{E.from, -1}}) {
      int row = row_of_vertex_[v];
      if (row < 0) continue;
      if (int c = col_of[h.left_region(e)]; c >= 0) A_[row][c] += sgn;
      if (int c = col_of[h.right_region(e)]; c >= 0) A_[row][c] -= sgn;
    }
  }
  if (provincial)
    for (int e = 0; e < static_cast<int>(h.edges.size()); ++e)
      if (h.edges[e].kind == EdgeKind::Z)
        if (int c = col_of[h.left_region(e)]; c >= 0) {
          A_.push_back(IntVec(nc, 0));
          A_.back()[c] = 1;
        }
  ce_ = column_echelon(A_, nc);
  for (int c = ce_.rank; c < nc; ++c) {
    IntVec k(nc);
    for (int i = 0; i < nc; ++i) k[i] = ce_.U[i][c];
    periodic_.push_back(expand(k));
  }
}

Domain DomainSystem::expand(const IntVec& v) const {
  Domain d(h_->num_regions(), 0);
  for (size_t i = 0; i < cols_.size(); ++i) d[cols_[i]] = v[i];
  return d;
}

std::optional<Domain> DomainSystem::solve(const Generator& x, const Generator& y) const {
  const int nc = static_cast<int>(cols_.size());
  const int rows = static_cast<int>(A_.size());
  IntVec resid(rows, 0);
  for (int v : y.points) resid[row_of_vertex_[v]] += 1;
  for (int v : x.points) resid[row_of_vertex_[v]] -= 1;
  IntVec z(nc, 0);
  for (int c = 0; c < ce_.rank; ++c) {
    int r = ce_.pivot_row[c];
    if (resid[r] % ce_.H[r][c] != 0) return std::nullopt;
    z[c] = resid[r] / ce_.H[r][c];
    for (int i = 0; i < rows; ++i) resid[i] -= ce_.H[i][c] * z[c];
  }
  for (long long v : resid)
    if (v != 0) return std::nullopt;
  IntVec sol(nc, 0);
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j) sol[i] += ce_.U[i][j] * z[j];
  return expand(sol);
}

std::optional<DomainSet> domains(const HeegaardDiagram& h, const Generator& x,
                                 const Generator& y) {
  DomainSystem sys(h);
  auto p = sys.solve(x, y);
  if (!p) return std::nullopt;
  return DomainSet{*p, sys.periodic()};
}

HomologyClass boundary_class(const HeegaardDiagram& h, const Domain& d) {
  HomologyClass c(h.zh()->num_intervals(), 0);
  for (int e = 0; e < static_cast<int>(h.edges.size()); ++e)
    if (h.edges[e].kind == EdgeKind::Z)
      c[h.edges[e].interval] += static_cast<int>(d[h.left_region(e)]);
  return c;
}

std::vector<SpincClass> spinc_partition(const HeegaardDiagram& h,
                                        const std::vector<Generator>& gens, bool provincial) {
  DomainSystem sys(h, provincial);
  std::vector<SpincClass> out;
  for (int i = 0; i < static_cast<int>(gens.size()); ++i) {
    bool placed = false;
    for (auto& c : out)
      if (sys.solve(gens[c.members.front()], gens[i])) {
        c.members.push_back(i);
        placed = true;
        break;
      }
    if (!placed) {
      SpincClass c;
      c.members.push_back(i);
      PairSet o = occupied(h, gens[i]);
      for (auto& part : h.parts) {
        int n = 0;
        for (int j = 0; j < part.base.num_pairs(); ++j)
          if (o >> (part.pair_offset + j) & 1) ++n;
        c.profile.push_back(n);
      }
      out.push_back(c);
    }
  }
  return out;
}

Admissibility admissibility(const HeegaardDiagram& h) {
  Admissibility a;
  const int nr = h.num_regions();
  for (bool prov : {false, true}) {
    DomainSystem sys(h, prov);
    auto w = nonnegative_combination(sys.periodic(), nr);
    (prov ? a.provincial : a.full) = !w.has_value();
    (prov ? a.provincial_witness : a.full_witness) = w;
  }
  return a;
}

NiceReport is_nice(const HeegaardDiagram& h) {
  NiceReport rep;
  for (int r = 0; r < h.num_regions(); ++r) {
    if (h.boundary_region(r)) continue;
    int corners = 0;
    for (auto& c : h.corners(r))
      if (c.kind != Corner::None) ++corners;
    if (h.regions[r].cycles.size() != 1 || h.regions[r].genus != 0 || corners > 4) {
      rep.nice = false;
      rep.offending.push_back(r);
    }
  }
  return rep;
}

int euler_measure4(const HeegaardDiagram& h, const Domain& d) {
  long long s = 0;
  for (int r = 0; r < h.num_regions(); ++r) s += d[r] * h.euler4(r);
  return static_cast<int>(s);
}

std::pair<int, int> point_measures4(const HeegaardDiagram& h, const Domain& d, const Generator& x,
                                    const Generator& y) {
  auto n = [&](const Generator& g) {
    long long s = 0;
    for (int v : g.points)
      for (int r : h.visits(v)) s += d[r];
    return static_cast<int>(s);
  };
  return {n(x), n(y)};
}

GradingElement domain_grading(const HeegaardDiagram& h, const GradingGroup& G, const Domain& d,
                              const Generator& x, const Generator& y) {
  int e4 = euler_measure4(h, d);
  auto [nx4, ny4] = point_measures4(h, d, x, y);
  int total4 = -e4 - nx4 - ny4;
  if (total4 % 2) throw Error("domain grading is not a half-integer");
  if (G.dim() != h.zh()->num_intervals()) throw Error("grading group does not match Z_H");
  return {total4 / 2, boundary_class(h, d)};
}

GradingCoset generator_grading(const HeegaardDiagram& h, const GradingGroup& G,
                               const Generator& x, const Generator& base) {
  DomainSystem sys(h);
  auto b = sys.solve(base, x);
  if (!b) throw Error("generators lie in different spin-c classes");
  GradingCoset c{domain_grading(h, G, *b, base, x), {}};
  for (auto& p : sys.periodic()) c.stabilizer.push_back(domain_grading(h, G, p, base, base));
  return c;
}

// ---------------------------------------------------------------------------
// Gluing.

namespace {

int find_part(const HeegaardDiagram& h, const ArcDiagram& d) {
  for (int i = 0; i < static_cast<int>(h.parts.size()); ++i)
    if (h.parts[i].oriented() == d) return i;
  return -1;
}

struct GlueNames {
  std::set<std::string> h1_vertices, h1_edges, h1_curves, h1_regions, h1_labels;
  explicit GlueNames(const HeegaardDiagram& h1) {
    for (auto& v : h1.vertices) h1_vertices.insert(v.name);
    for (auto& e : h1.edges) {
      h1_edges.insert(e.name);
      if (!e.curve_name.empty()) h1_curves.insert(e.curve_name);
    }
    for (auto& r : h1.regions) h1_regions.insert(r.name);
    for (auto& p : h1.parts) h1_labels.insert(p.label);
  }
  static std::string fresh(const std::set<std::string>& taken, const std::string& n) {
    return taken.count(n) ? n + "'" : n;
  }
};

std::string glued_vertex_name(const std::string& n) {
  std::string s = n;
  std::replace(s.begin(), s.end(), '.', '_');
  return s;
}

}  // namespace

HeegaardDiagram glue(const HeegaardDiagram& h1, const HeegaardDiagram& h2,
                     const ArcDiagram& along) {
  const bool trivial = along.num_points() == 0;
  int i1 = trivial ? -1 : find_part(h1, along);
  int i2 = trivial ? -1 : find_part(h2, reverse(along));
  if (!trivial && (i1 < 0 || i2 < 0))
    throw Error("chord-interval mismatch: no matching boundary parts to glue along");
  GlueNames names(h1);
  HeegaardDiagram g;
  g.name = h1.name + "+" + h2.name;
  std::map<std::string, std::string> h2_label;
  for (int i = 0; i < static_cast<int>(h1.parts.size()); ++i)
    if (i != i1) g.parts.push_back(h1.parts[i]);
  for (int i = 0; i < static_cast<int>(h2.parts.size()); ++i) {
    auto l = GlueNames::fresh(names.h1_labels, h2.parts[i].label);
    h2_label[h2.parts[i].label] = l;
    if (i == i2) continue;
    g.parts.push_back(h2.parts[i]);
    g.parts.back().label = l;
  }

  auto glued_point = [&](const HeegaardDiagram& h, int part, int v) {
    int p = h.vertices[v].point;
    return p >= 0 && h.part_of_point(p) == part ? p - h.parts[part].point_offset : -1;
  };
  // Vertices.
  std::vector<int> v1(h1.vertices.size()), v2(h2.vertices.size());
  std::map<int, int> h1_point_vertex;  // local point of the glued part -> new vertex
  std::set<std::string> used;
  auto add_vertex = [&](const std::string& n) {
    if (!used.insert(n).second) throw Error("vertex name collision while gluing: " + n);
    g.vertices.push_back({n, VertexKind::Plain, -1});
    return static_cast<int>(g.vertices.size()) - 1;
  };
  for (int v = 0; v < static_cast<int>(h1.vertices.size()); ++v) {
    int lp = glued_point(h1, i1, v);
    v1[v] = add_vertex(lp >= 0 ? glued_vertex_name(h1.vertices[v].name) : h1.vertices[v].name);
    if (lp >= 0) h1_point_vertex[lp] = v1[v];
  }
  for (int v = 0; v < static_cast<int>(h2.vertices.size()); ++v) {
    int lp = glued_point(h2, i2, v);
    if (lp >= 0) {
      v2[v] = h1_point_vertex.at(reversed_point(reverse(along), lp));
      continue;
    }
    const auto& n = h2.vertices[v].name;
    std::string nn;
    if (h2.vertices[v].point >= 0) {
      auto dot = n.find('.');
      nn = h2_label.at(n.substr(0, dot)) + n.substr(dot);
    } else {
      nn = GlueNames::fresh(names.h1_vertices, n);
    }
    v2[v] = add_vertex(nn);
  }

  // Curves: glued alpha arcs become circles.
  auto local_pair = [&](const HeegaardDiagram& h, int part, int curve) {
    if (part < 0 || curve >= h.num_alpha_arcs) return -1;
    int q = h.part_of_pair(curve);
    return q == part ? curve - h.parts[part].pair_offset : -1;
  };
  const ArcDiagram rev = reverse(along);
  std::map<int, std::string> circle_of_pair;  // local pair of along
  for (int j = 0; j < along.num_pairs(); ++j) {
    int p = along.pair_points(j)[0];
    int q = rev.matching[reversed_point(along, p)];
    circle_of_pair[j] = h1.alpha_names[h1.parts[i1].pair_offset + j] + "+" +
                        GlueNames::fresh(names.h1_curves,
                                         h2.alpha_names[h2.parts[i2].pair_offset + q]);
  }
  std::map<int, int> h2_pair_to_along;
  for (int j = 0; j < along.num_pairs(); ++j) {
    int p = along.pair_points(j)[0];
    h2_pair_to_along[rev.matching[reversed_point(along, p)]] = j;
  }

  // Edges.
  std::vector<int> e1(h1.edges.size(), -1), e2(h2.edges.size(), -1);
  std::set<std::string> used_edges;
  auto add_edge = [&](const HeegaardDiagram& h, int part, int e, const std::vector<int>& vm,
                      bool second) {
    const auto& E = h.edges[e];
    if (E.kind == EdgeKind::Z && glued_point(h, part, E.from) >= 0) return -1;
    HEdge n = E;
    n.name = second ? GlueNames::fresh(names.h1_edges, E.name) : E.name;
    if (!used_edges.insert(n.name).second) throw Error("edge name collision while gluing");
    n.from = vm[E.from];
    n.to = vm[E.to];
    if (!is_boundary(E.kind)) {
      int lp = E.kind == EdgeKind::AlphaArc ? local_pair(h, part, E.curve) : -1;
      if (lp >= 0) {
        n.kind = EdgeKind::AlphaCircle;
        n.curve_name = circle_of_pair.at(second ? h2_pair_to_along.at(lp) : lp);
      } else if (second) {
        n.curve_name = GlueNames::fresh(names.h1_curves, E.curve_name);
      }
    }
    g.edges.push_back(n);
    return static_cast<int>(g.edges.size()) - 1;
  };
  for (int e = 0; e < static_cast<int>(h1.edges.size()); ++e) e1[e] = add_edge(h1, i1, e, v1, false);
  for (int e = 0; e < static_cast<int>(h2.edges.size()); ++e) e2[e] = add_edge(h2, i2, e, v2, true);

  // Region boundary items, with virtual stretches at segment ends.
  struct Item {
    int diag, region, edge;
    bool forward;
    bool glued;
    int partner = -1;
  };
  std::vector<Item> items;
  std::vector<std::vector<int>> cycles;  // item ids
  std::map<std::tuple<int, int, int>, int> key;  // (diag, kind, local point) -> item
  // kind 0: z edge starting at point, 1: stretch at a first point, 2: stretch at a last point
  const HeegaardDiagram* hs[2] = {&h1, &h2};
  const int parts_glued[2] = {i1, i2};
  for (int d = 0; d < 2; ++d) {
    const auto& h = *hs[d];
    for (int r = 0; r < h.num_regions(); ++r)
      for (auto& cyc : h.regions[r].cycles) {
        std::vector<int> ids;
        for (size_t i = 0; i < cyc.size(); ++i) {
          const auto& s = cyc[i];
          const auto& E = h.edges[s.edge];
          bool gl = E.kind == EdgeKind::Z && glued_point(h, parts_glued[d], E.from) >= 0;
          ids.push_back(static_cast<int>(items.size()));
          items.push_back({d, r, s.edge, s.forward, gl});
          if (gl) key[{d, 0, glued_point(h, parts_glued[d], E.from)}] = ids.back();
          int v = h.side_end(s);
          int lp = glued_point(h, parts_glued[d], v);
          if (lp < 0) continue;
          auto nk = h.edges[cyc[(i + 1) % cyc.size()].edge].kind;
          int kind = 0;
          if (E.kind == EdgeKind::Free && is_alpha(nk)) kind = 1;
          if (is_alpha(E.kind) && nk == EdgeKind::Free) kind = 2;
          if (!kind) continue;
          ids.push_back(static_cast<int>(items.size()));
          items.push_back({d, r, -1, true, true});
          key[{d, kind, lp}] = ids.back();
        }
        cycles.push_back(ids);
      }
  }
  const int n1 = h1.num_regions();
  UnionFind uf(n1 + h2.num_regions());
  auto gid = [&](const Item& it) { return it.diag == 0 ? it.region : n1 + it.region; };
  std::vector<int> glued_pairs_at(n1, 0);
  for (auto& [k, id] : key) {
    auto [d, kind, lp] = k;
    if (d != 0) continue;
    std::tuple<int, int, int> other;
    if (kind == 0) other = {1, 0, reversed_point(along, lp + 1)};
    else other = {1, kind == 1 ? 2 : 1, reversed_point(along, lp)};
    auto it = key.find(other);
    if (it == key.end()) throw Error("glued boundaries do not match along " + along.name);
    items[id].partner = it->second;
    items[it->second].partner = id;
    uf.unite(gid(items[id]), gid(items[it->second]));
  }
  for (auto& it : items)
    if (it.glued && it.partner < 0) throw Error("unmatched boundary piece while gluing");
  std::vector<int> pos(items.size()), cyc_of(items.size());
  for (int c = 0; c < static_cast<int>(cycles.size()); ++c)
    for (int i = 0; i < static_cast<int>(cycles[c].size()); ++i) {
      pos[cycles[c][i]] = i;
      cyc_of[cycles[c][i]] = c;
    }
  auto succ = [&](int id) {
    const auto& c = cycles[cyc_of[id]];
    return c[(pos[id] + 1) % c.size()];
  };
  std::map<int, std::vector<std::vector<Side>>> merged_cycles;
  std::vector<bool> seen(items.size(), false);
  for (int start = 0; start < static_cast<int>(items.size()); ++start) {
    if (items[start].glued || seen[start]) continue;
    std::vector<Side> out;
    int cur = start;
    for (size_t guard = 0; guard <= items.size(); ++guard) {
      seen[cur] = true;
      const auto& it = items[cur];
      out.push_back({it.diag == 0 ? e1[it.edge] : e2[it.edge], it.forward});
      int n = succ(cur);
      size_t jumps = 0;
      while (items[n].glued) {
        n = succ(items[n].partner);
        if (++jumps > items.size()) throw Error("gluing produced a boundaryless cycle");
      }
      if (n == start) break;
      cur = n;
    }
    merged_cycles[uf.find(gid(items[start]))].push_back(out);
  }
  // Euler characteristics of merged regions.
  std::map<int, int> chi, members_glued;
  std::map<int, std::vector<std::string>> member_names;
  for (int d = 0; d < 2; ++d)
    for (int r = 0; r < hs[d]->num_regions(); ++r) {
      int root = uf.find(d == 0 ? r : n1 + r);
      chi[root] += hs[d]->chi(r);
      auto nm = d == 0 ? hs[d]->regions[r].name
                       : GlueNames::fresh(names.h1_regions, hs[d]->regions[r].name);
      member_names[root].push_back(nm);
    }
  for (auto& it : items)
    if (it.diag == 0 && it.glued) chi[uf.find(gid(it))] -= 1;
  for (auto& [root, c] : chi) {
    auto& cyc = merged_cycles[root];
    if (cyc.empty()) throw Error("gluing closed off a region");
    int b = static_cast<int>(cyc.size());
    int twice_genus = 2 - c - b;
    if (twice_genus < 0 || twice_genus % 2) throw Error("inconsistent Euler characteristic");
    HRegion R;
    for (size_t i = 0; i < member_names[root].size(); ++i)
      R.name += (i ? "+" : "") + member_names[root][i];
    R.genus = twice_genus / 2;
    for (auto& cy : cyc) {
      auto m = std::min_element(cy.begin(), cy.end(), [](const Side& a, const Side& b) {
        return std::pair(a.edge, !a.forward) < std::pair(b.edge, !b.forward);
      });
      std::rotate(cy.begin(), m, cy.end());
    }
    R.cycles = cyc;
    g.regions.push_back(R);
  }
  std::stable_sort(g.regions.begin(), g.regions.end(), [](const HRegion& a, const HRegion& b) {
    return a.cycles.front().front().edge < b.cycles.front().front().edge;
  });
  g.finalize();
  return g;
}

std::optional<Generator> glued_generator(const HeegaardDiagram& glued, const HeegaardDiagram& h1,
                                         const Generator& x1, const HeegaardDiagram& h2,
                                         const Generator& x2) {
  GlueNames names(h1);
  std::vector<int> pts;
  for (int v : x1.points) pts.push_back(glued.vertex_index(h1.vertices[v].name));
  for (int v : x2.points)
    pts.push_back(glued.vertex_index(GlueNames::fresh(names.h1_vertices, h2.vertices[v].name)));
  for (int v : pts)
    if (v < 0 || glued.vertices[v].kind != VertexKind::Crossing) return std::nullopt;
  std::sort(pts.begin(), pts.end(),
            [&](int a, int b) { return glued.beta_of(a) < glued.beta_of(b); });
  Generator x{pts};
  if (!is_generator(glued, x)) return std::nullopt;
  return x;
}

}  // namespace bsfh
