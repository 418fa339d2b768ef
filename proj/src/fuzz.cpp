#include "bsfh/fuzz.hpp"

#include "bsfh/invariants.hpp"
#include "bsfh/planar.hpp"

namespace bsfh {

namespace {

struct Rect {
  double x1, x2, y1, y2;
};

bool compatible(const Rect& a, const Rect& b) {
  return a.x2 + 0.1 < b.x1 || b.x2 + 0.1 < a.x1 || a.y2 + 0.1 < b.y1 || b.y2 + 0.1 < a.y1;
}

PlanarSpec random_spec(std::mt19937_64& rng, int max_betas) {
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  const int n = pick(2, 4);
  const double H = 8, W = 2.0 * n + 2;
  std::vector<int> cuts{0};
  if (n >= 2 && coin(0.5)) cuts.push_back(pick(1, n - 1));
  cuts.push_back(n);

  PlanarSpec s;
  s.name = "fuzz";
  PlanarBoundary outer;
  outer.outer = true;
  outer.polygon = {{0, 0}, {W, 0}, {W, H}, {0, H}};
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    const int lo = cuts[k], hi = cuts[k + 1];
    BoundaryPart part;
    part.label = "P" + std::to_string(k);
    part.side = k == 0 ? 'D' : 'A';
    ArcDiagram& d = part.base;
    d.name = "F" + std::to_string(k);
    // Parallel arcs need a segment break above or below each gap.
    std::vector<bool> break_bottom(hi - lo, false), break_top(hi - lo, false);
    for (int j = 1; j < hi - lo; ++j) {
      int c = pick(0, 2);
      break_bottom[j] = c != 1;
      break_top[j] = c != 0;
    }
    auto add_points = [&](const std::string& prefix, const std::vector<int>& idx,
                          const std::vector<bool>& brk) {
      d.segments.push_back(prefix + std::to_string(d.segments.size()));
      for (size_t j = 0; j < idx.size(); ++j) {
        if (j > 0 && brk[j]) d.segments.push_back(prefix + std::to_string(d.segments.size()));
        d.point_names.push_back(prefix + std::to_string(idx[j]));
        d.segment_of.push_back(d.num_segments() - 1);
      }
    };
    std::vector<int> bottom, top;
    std::vector<bool> top_breaks(hi - lo, false);
    for (int i = lo; i < hi; ++i) bottom.push_back(i + 1);
    for (int i = hi - 1; i >= lo; --i) top.push_back(i + 1);
    // Top points run right to left, so gap j sits before top position hi - lo - j.
    for (int j = 1; j < hi - lo; ++j) top_breaks[hi - lo - j] = break_top[j];
    add_points("b", bottom, break_bottom);
    add_points("t", top, top_breaks);
    d.matching.assign(d.num_points(), 0);
    for (int i = lo; i < hi; ++i) {
      d.matching[d.point_index("b" + std::to_string(i + 1))] = i - lo;
      d.matching[d.point_index("t" + std::to_string(i + 1))] = i - lo;
    }
    for (int i = lo; i < hi; ++i) {
      double x = 2.0 * (i + 1);
      outer.marks.push_back({part.label + ".b" + std::to_string(i + 1), {x, 0}});
      outer.marks.push_back({part.label + ".t" + std::to_string(i + 1), {x, H}});
      s.curves.push_back({"A" + std::to_string(i + 1), EdgeKind::AlphaArc, {{x, 0}, {x, H}}, false});
    }
    s.parts.push_back(part);
  }
  s.boundaries.push_back(outer);

  const int nb = pick(1, max_betas);
  std::vector<Rect> rects;
  for (int tries = 0; static_cast<int>(rects.size()) < nb && tries < 200; ++tries) {
    int sl = pick(0, n - 1), sr = pick(sl + 1, n);
    Rect r{2.0 * sl + uni(0.5, 1.5), 2.0 * sr + uni(0.5, 1.5), uni(0.5, 7.5), uni(0.5, 7.5)};
    if (r.y1 > r.y2) std::swap(r.y1, r.y2);
    if (r.y2 - r.y1 < 0.3) continue;
    bool ok = true;
    for (auto& o : rects) ok = ok && compatible(r, o);
    if (ok) rects.push_back(r);
  }
  for (size_t i = 0; i < rects.size(); ++i) {
    auto& r = rects[i];
    // A hole inside each beta, clear of the alpha arcs.
    int sl = static_cast<int>(r.x1 / 2), sr = static_cast<int>(r.x2 / 2);
    double cx, hw;
    if (sr - sl >= 2) {
      int st = pick(sl + 1, sr - 1);
      cx = 2.0 * st + 1;
      hw = 0.3;
    } else {
      cx = (r.x1 + 2.0 * sl + 2) / 2;
      hw = (2.0 * sl + 2 - r.x1) / 4;
    }
    double cy = (r.y1 + r.y2) / 2, hh = std::min(0.2, (r.y2 - r.y1) / 4);
    PlanarBoundary hole;
    hole.polygon = {{cx - hw, cy - hh}, {cx + hw, cy - hh}, {cx + hw, cy + hh}, {cx - hw, cy + hh}};
    s.boundaries.push_back(hole);
    s.curves.push_back({"B" + std::to_string(i + 1), EdgeKind::Beta,
                        {{r.x1, r.y1}, {r.x2, r.y1}, {r.x2, r.y2}, {r.x1, r.y2}}, true});
  }
  return s;
}

}  // namespace

HeegaardDiagram random_nice_diagram(std::mt19937_64& rng, int max_betas, int max_tries) {
  for (int t = 0; t < max_tries; ++t) {
    PlanarSpec spec = random_spec(rng, max_betas);
    HeegaardDiagram h;
    try {
      h = build_planar(spec);
    } catch (const Error&) {
      continue;
    }
    if (!check(h).ok || !is_nice(h).nice || generators(h).empty()) continue;
    if (!admissibility(h).provincial) continue;
    return h;
  }
  throw Error("no nice diagram found");
}

FuzzReport run_fuzz(int count, std::uint64_t seed, int max_betas) {
  FuzzReport rep;
  std::mt19937_64 rng(seed);
  auto fail = [&](const std::string& w) {
    if (rep.ok) rep.witness = w;
    rep.ok = false;
  };
  while (rep.diagrams < count) {
    HeegaardDiagram h = random_nice_diagram(rng, max_betas);
    std::vector<InvariantKind> kinds{InvariantKind::BSD, InvariantKind::BSA};
    if (h.parts.size() == 2) kinds.push_back(InvariantKind::BSDA);
    std::vector<Invariant> invs;
    try {
      for (auto k : kinds) invs.push_back(compute_invariant(h, k));
    } catch (const Error& e) {
      if (std::string(e.what()).find("ambiguous") == std::string::npos) throw;
      ++rep.ambiguous;
      continue;
    }
    ++rep.diagrams;
    if (h.parts.size() == 2) ++rep.two_part;
    for (auto& inv : invs) {
      ++rep.structures;
      for (auto& [k, v] : inv.s.ops) rep.operations += static_cast<int>(v.size());
      auto r = check_relations(inv.s);
      if (!r.ok) fail(invariant_kind_name(inv.kind) + ": " + r.witness + "\n" + format_heegaard(h));
      auto g = check_grading_law(h, inv, true);
      if (!g.ok) fail(invariant_kind_name(inv.kind) + " grading: " + g.witness + "\n" + format_heegaard(h));
    }
  }
  return rep;
}

}  // namespace bsfh
