#include "bsfh/arc_diagram.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace bsfh {

int ArcDiagram::num_pairs() const {
  int k = 0;
  for (int m : matching) k = std::max(k, m + 1);
  return k;
}

std::vector<int> ArcDiagram::pair_points(int pair) const {
  std::vector<int> out;
  for (int p = 0; p < num_points(); ++p)
    if (matching[p] == pair) out.push_back(p);
  return out;
}

int ArcDiagram::partner(int p) const {
  for (int q = 0; q < num_points(); ++q)
    if (q != p && matching[q] == matching[p]) return q;
  return -1;
}

int ArcDiagram::point_index(const std::string& n) const {
  for (int p = 0; p < num_points(); ++p)
    if (point_names[p] == n) return p;
  return -1;
}

int ArcDiagram::num_segments_with_points() const {
  std::set<int> s(segment_of.begin(), segment_of.end());
  return static_cast<int>(s.size());
}

int ArcDiagram::interval_after(int p) const {
  if (p + 1 >= num_points() || segment_of[p + 1] != segment_of[p]) return -1;
  int breaks = 0;
  for (int q = 0; q < p; ++q)
    if (segment_of[q + 1] != segment_of[q]) ++breaks;
  return p - breaks;
}

int ArcDiagram::interval_start(int iv) const {
  for (int p = 0; p < num_points(); ++p)
    if (interval_after(p) == iv) return p;
  throw Error("interval index out of range");
}

ArcDiagram bare_segments(const std::vector<int>& sizes) {
  ArcDiagram d;
  d.name = "bare";
  for (size_t s = 0; s < sizes.size(); ++s) {
    d.segments.push_back("Z" + std::to_string(s + 1));
    for (int j = 0; j < sizes[s]; ++j) {
      d.point_names.push_back("p" + std::to_string(d.point_names.size() + 1));
      d.segment_of.push_back(static_cast<int>(s));
    }
  }
  return d;
}

ValidationReport validate(const ArcDiagram& d) {
  ValidationReport r;
  const int n = d.num_points();
  if (static_cast<int>(d.matching.size()) != n) {
    r.ok = false;
    r.malformed = true;
    r.message = "matching does not cover every point";
    return r;
  }
  for (int p = 0; p + 1 < n; ++p)
    if (d.segment_of[p] > d.segment_of[p + 1]) {
      r.ok = false;
      r.malformed = true;
      r.message = "points not ordered by segment";
      return r;
    }
  const int k = d.num_pairs();
  for (int i = 0; i < k; ++i)
    if (d.pair_points(i).size() != 2) {
      r.ok = false;
      r.malformed = true;
      r.message = "matched pair " + std::to_string(i + 1) + " has " +
                  std::to_string(d.pair_points(i).size()) + " points";
      return r;
    }

  // Nodes: 2p = left end at p, 2p+1 = right end at p, 2n+2s = start of s, 2n+2s+1 = end of s.
  const int ls = d.num_segments();
  const int nodes = 2 * n + 2 * ls;
  std::vector<std::vector<int>> adj(nodes);
  auto link = [&](int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (int s = 0; s < ls; ++s) {
    std::vector<int> pts;
    for (int p = 0; p < n; ++p)
      if (d.segment_of[p] == s) pts.push_back(p);
    int prev = 2 * n + 2 * s;
    for (int p : pts) {
      link(prev, 2 * p);
      prev = 2 * p + 1;
    }
    link(prev, 2 * n + 2 * s + 1);
  }
  for (int i = 0; i < k; ++i) {
    auto pq = d.pair_points(i);
    int p = pq[0], q = pq[1];
    link(2 * p, 2 * q + 1);
    link(2 * q, 2 * p + 1);
  }
  std::vector<int> comp(nodes, -1);
  int nc = 0;
  for (int v = 0; v < nodes; ++v) {
    if (comp[v] >= 0) continue;
    std::vector<int> stack{v};
    comp[v] = nc;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (comp[w] < 0) {
          comp[w] = nc;
          stack.push_back(w);
        }
    }
    ++nc;
  }
  std::vector<bool> open(nc, false);
  for (int v = 2 * n; v < nodes; ++v) open[comp[v]] = true;
  for (int c = 0; c < nc; ++c) {
    if (open[c]) continue;
    std::set<int> pairs;
    for (int p = 0; p < n; ++p)
      if (comp[2 * p] == c || comp[2 * p + 1] == c) pairs.insert(d.matching[p]);
    r.closed_cycles.emplace_back(pairs.begin(), pairs.end());
  }
  if (!r.closed_cycles.empty()) {
    r.ok = false;
    r.message = "degenerate: surgery produces " + std::to_string(r.closed_cycles.size()) +
                " closed component(s)";
  }
  return r;
}

void require_valid(const ArcDiagram& d) {
  auto r = validate(d);
  if (!r.ok) throw Error("arc diagram " + d.name + ": " + r.message);
}

int reversed_point(const ArcDiagram& d, int p) {
  int s = d.segment_of[p];
  int first = p, last = p;
  while (first > 0 && d.segment_of[first - 1] == s) --first;
  while (last + 1 < d.num_points() && d.segment_of[last + 1] == s) ++last;
  return first + (last - p);
}

ArcDiagram reverse(const ArcDiagram& d) {
  ArcDiagram r = d;
  r.name = d.name.empty() ? "" : (d.name[0] == '-' ? d.name.substr(1) : "-" + d.name);
  for (int p = 0; p < d.num_points(); ++p) {
    int q = reversed_point(d, p);
    r.point_names[q] = d.point_names[p];
    if (!d.matching.empty()) r.matching[q] = d.matching[p];
  }
  for (auto& a : r.aliases) {
    a.name = (!a.name.empty() && a.name[0] == '-') ? a.name.substr(1) : "-" + a.name;
    for (auto& c : a.chords) c = reverse_chord(d, c);
  }
  return r;
}

ReebChord reverse_chord(const ArcDiagram& d, const ReebChord& c) {
  return {reversed_point(d, c.to), reversed_point(d, c.from)};
}

ArcDiagram arc_union(const ArcDiagram& a, const ArcDiagram& b) {
  ArcDiagram u = a;
  u.aliases.clear();
  u.name = a.name.empty() ? b.name : (b.name.empty() ? a.name : a.name + "+" + b.name);
  const int ls = a.num_segments();
  const int k = a.num_pairs();
  bool clash = false;
  for (const auto& p : b.point_names)
    if (a.point_index(p) >= 0) clash = true;
  for (const auto& s : b.segments)
    if (std::find(a.segments.begin(), a.segments.end(), s) != a.segments.end()) clash = true;
  auto qualify = [&](const ArcDiagram& src, const std::string& n) {
    return clash ? src.name + "." + n : n;
  };
  if (clash) {
    for (auto& s : u.segments) s = qualify(a, s);
    for (auto& p : u.point_names) p = qualify(a, p);
  }
  for (const auto& s : b.segments) u.segments.push_back(qualify(b, s));
  for (int p = 0; p < b.num_points(); ++p) {
    u.point_names.push_back(qualify(b, b.point_names[p]));
    u.segment_of.push_back(b.segment_of[p] + ls);
    if (!b.matching.empty()) u.matching.push_back(b.matching[p] + k);
  }
  return u;
}

ArcDiagram parse_arc_diagram(const std::string& text, const std::string& name) {
  ArcDiagram d;
  d.name = name;
  std::vector<std::pair<std::string, std::string>> matches;
  std::vector<std::pair<int, std::vector<std::string>>> alias_lines;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  // Points are collected per segment, then laid out in segment order.
  std::vector<std::vector<std::string>> per_seg;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    auto fail = [&](const std::string& m) {
      throw Error(name + ":" + std::to_string(lineno) + ":1: " + m);
    };
    if (kw == "name") {
      ls >> d.name;
    } else if (kw == "segment") {
      std::string s;
      if (!(ls >> s)) fail("segment needs a name");
      d.segments.push_back(s);
      per_seg.emplace_back();
    } else if (kw == "point") {
      std::string p;
      if (!(ls >> p)) fail("point needs a name");
      if (per_seg.empty()) fail("point before any segment");
      per_seg.back().push_back(p);
    } else if (kw == "match") {
      std::string a, b;
      if (!(ls >> a >> b)) fail("match needs two point names");
      matches.emplace_back(a, b);
    } else if (kw == "alias") {
      std::vector<std::string> toks;
      std::string t;
      while (ls >> t) toks.push_back(t);
      if (toks.empty()) fail("alias needs a name");
      alias_lines.emplace_back(lineno, toks);
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  for (size_t s = 0; s < per_seg.size(); ++s)
    for (const auto& p : per_seg[s]) {
      if (d.point_index(p) >= 0) throw Error(name + ": duplicate point " + p);
      d.point_names.push_back(p);
      d.segment_of.push_back(static_cast<int>(s));
    }
  d.matching.assign(d.num_points(), -1);
  int pair = 0;
  for (const auto& [a, b] : matches) {
    int pa = d.point_index(a), pb = d.point_index(b);
    if (pa < 0 || pb < 0) throw Error(name + ": match names unknown point");
    if (d.matching[pa] >= 0 || d.matching[pb] >= 0 || pa == pb)
      throw Error(name + ": malformed matching at pair " + std::to_string(pair + 1));
    d.matching[pa] = d.matching[pb] = pair++;
  }
  for (int p = 0; p < d.num_points(); ++p)
    if (d.matching[p] < 0) throw Error(name + ": point " + d.point_names[p] + " is unmatched");
  // alias <name> <p>..<q> ... [/ <pair> ...]
  for (const auto& [ln, toks] : alias_lines) {
    AliasSpec a;
    a.name = toks[0];
    bool after_slash = false;
    for (size_t i = 1; i < toks.size(); ++i) {
      const auto& t = toks[i];
      auto fail = [&](const std::string& m) {
        throw Error(name + ":" + std::to_string(ln) + ":1: " + m);
      };
      if (t == "/") {
        after_slash = true;
      } else if (after_slash) {
        int pr = std::stoi(t) - 1;
        if (pr < 0 || pr >= d.num_pairs()) fail("alias completion pair out of range");
        a.completion |= 1u << pr;
      } else {
        auto dots = t.find("..");
        if (dots == std::string::npos) fail("alias chord must be <p>..<q>");
        int p = d.point_index(t.substr(0, dots)), q = d.point_index(t.substr(dots + 2));
        if (p < 0 || q < 0 || !d.same_segment(p, q) || p >= q)
          fail("alias chord " + t + " is not a Reeb chord");
        a.chords.push_back({p, q});
      }
    }
    d.aliases.push_back(a);
  }
  return d;
}

ArcDiagram load_arc_diagram(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::string stem = path.substr(path.find_last_of('/') + 1);
  stem = stem.substr(0, stem.find('.'));
  return parse_arc_diagram(ss.str(), stem);
}

std::string format_arc_diagram(const ArcDiagram& d) {
  std::ostringstream out;
  if (!d.name.empty()) out << "name " << d.name << "\n";
  for (int s = 0; s < d.num_segments(); ++s) {
    out << "segment " << d.segments[s] << "\n";
    for (int p = 0; p < d.num_points(); ++p)
      if (d.segment_of[p] == s) out << "point " << d.point_names[p] << "\n";
  }
  for (int i = 0; i < d.num_pairs(); ++i) {
    auto pq = d.pair_points(i);
    out << "match " << d.point_names[pq[0]] << " " << d.point_names[pq[1]] << "\n";
  }
  for (const auto& a : d.aliases) {
    out << "alias " << a.name;
    for (const auto& c : a.chords)
      out << " " << d.point_names[c.from] << ".." << d.point_names[c.to];
    if (a.completion) {
      out << " /";
      for (int i = 0; i < 32; ++i)
        if (a.completion >> i & 1u) out << " " << i + 1;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace bsfh
