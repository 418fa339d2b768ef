#include "bsfh/invariants.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace bsfh {

InvariantKind parse_invariant_kind(const std::string& s) {
  if (s == "bsd") return InvariantKind::BSD;
  if (s == "bsa") return InvariantKind::BSA;
  if (s == "bsda") return InvariantKind::BSDA;
  if (s == "sfc") return InvariantKind::SFC;
  throw Error("unknown invariant '" + s + "' (bsd, bsa, bsda, sfc)");
}

std::string invariant_kind_name(InvariantKind k) {
  switch (k) {
    case InvariantKind::BSD: return "bsd";
    case InvariantKind::BSA: return "bsa";
    case InvariantKind::BSDA: return "bsda";
    case InvariantKind::SFC: return "sfc";
  }
  return "?";
}

namespace {

char part_side(const BoundaryPart& p, InvariantKind k) {
  switch (k) {
    case InvariantKind::BSD: return 'D';
    case InvariantKind::BSA: return 'A';
    default: return p.side;
  }
}

SideData make_side(const HeegaardDiagram& h, InvariantKind kind, char side) {
  SideData s;
  const ArcDiagram& zh = *h.zh();
  s.point.assign(zh.num_points(), -1);
  s.pair.assign(zh.num_pairs(), -1);
  std::vector<const BoundaryPart*> chosen;
  for (auto& p : h.parts)
    if (part_side(p, kind) == side) chosen.push_back(&p);
  if (chosen.size() == 1) {
    s.z = chosen[0]->oriented();
  } else {
    for (size_t i = 0; i < chosen.size(); ++i)
      s.z = i ? arc_union(s.z, chosen[i]->oriented()) : chosen[i]->oriented();
  }
  int po = 0, ko = 0;
  for (auto* p : chosen) {
    for (int j = 0; j < p->base.num_points(); ++j) s.point[p->point_offset + j] = po + j;
    for (int j = 0; j < p->base.num_pairs(); ++j) s.pair[p->pair_offset + j] = ko + j;
    po += p->base.num_points();
    ko += p->base.num_pairs();
  }
  s.zh_interval.assign(s.z.num_intervals(), -1);
  for (int hp = 0; hp < zh.num_points(); ++hp) {
    int p = s.point[hp];
    if (p < 0) continue;
    int iv = s.z.interval_after(p);
    if (iv >= 0) s.zh_interval[iv] = zh.interval_after(hp);
  }
  return s;
}

PairSet side_occupied(const SideData& s, PairSet zh_occ) {
  PairSet out = 0;
  for (int i : pairset_members(zh_occ))
    if (s.pair[i] >= 0) out |= PairSet(1) << s.pair[i];
  return out;
}

PairSet side_all(const SideData& s) {
  return s.num_pairs() ? (PairSet(1) << s.num_pairs()) - 1 : 0;
}

// Combinatorial data of an embedded disc made of distinct regions.
struct Disc {
  std::vector<int> regions;
  Domain domain;
  int e4 = 0;
  std::vector<int> out_corners, in_corners;
  bool cyclic = false;
  // Chords of Z_H in height order along each alpha path, split by side.
  std::vector<std::vector<ReebChord>> d_paths, a_paths;
  std::set<int> vertices;
  std::set<int> alphas, betas;  // curves on the boundary
  int d_count() const {
    int n = 0;
    for (auto& p : d_paths) n += static_cast<int>(p.size());
    return n;
  }
  int a_count() const {
    int n = 0;
    for (auto& p : a_paths) n += static_cast<int>(p.size());
    return n;
  }
};

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

std::optional<Disc> analyze(const HeegaardDiagram& h, InvariantKind kind,
                            const std::vector<int>& S) {
  std::vector<bool> in(h.num_regions(), false);
  for (int r : S) in[r] = true;
  struct Occ {
    int region, cycle, index;
    Side side;
  };
  std::vector<Occ> occ;
  std::map<std::tuple<int, int, int>, int> occ_id;
  for (int r : S)
    for (int c = 0; c < static_cast<int>(h.regions[r].cycles.size()); ++c)
      for (int i = 0; i < static_cast<int>(h.regions[r].cycles[c].size()); ++i) {
        occ_id[{r, c, i}] = static_cast<int>(occ.size());
        occ.push_back({r, c, i, h.regions[r].cycles[c][i]});
      }
  const int n = static_cast<int>(occ.size());
  auto start = [](int k) { return 2 * k; };
  auto end = [](int k) { return 2 * k + 1; };
  auto next_in_cycle = [&](int k) {
    const auto& cyc = h.regions[occ[k].region].cycles[occ[k].cycle];
    return occ_id.at({occ[k].region, occ[k].cycle,
                      (occ[k].index + 1) % static_cast<int>(cyc.size())});
  };
  UnionFind uf(2 * n);
  for (int k = 0; k < n; ++k) uf.unite(end(k), start(next_in_cycle(k)));
  // Interior edges: both traversals inside S.
  std::map<int, std::pair<int, int>> by_edge;  // edge -> (forward occ, backward occ)
  for (int k = 0; k < n; ++k) {
    auto& e = by_edge.try_emplace(occ[k].side.edge, -1, -1).first->second;
    (occ[k].side.forward ? e.first : e.second) = k;
  }
  std::vector<bool> boundary(n, true);
  int edges_x = 0;
  for (auto& [e, fb] : by_edge) {
    if (fb.first >= 0 && fb.second >= 0) {
      boundary[fb.first] = boundary[fb.second] = false;
      uf.unite(start(fb.first), end(fb.second));
      uf.unite(end(fb.first), start(fb.second));
      ++edges_x;
    } else {
      ++edges_x;
    }
  }
  std::set<int> classes;
  for (int i = 0; i < 2 * n; ++i) classes.insert(uf.find(i));
  int chi = static_cast<int>(classes.size()) - edges_x;
  for (int r : S) chi += h.chi(r);
  if (chi != 1) return std::nullopt;
  // Embedded: vertex classes map injectively to vertices.
  std::map<int, int> vertex_of_class;
  std::set<int> seen_vertices;
  for (int k = 0; k < n; ++k) {
    int c = uf.find(start(k));
    int v = h.side_start(occ[k].side);
    if (vertex_of_class.emplace(c, v).second && !seen_vertices.insert(v).second) return std::nullopt;
  }
  // Single boundary cycle.
  std::map<int, std::vector<int>> starting;
  std::vector<int> bsides;
  for (int k = 0; k < n; ++k)
    if (boundary[k]) {
      starting[uf.find(start(k))].push_back(k);
      bsides.push_back(k);
    }
  if (bsides.empty()) return std::nullopt;
  for (auto& [c, v] : starting)
    if (v.size() != 1) return std::nullopt;
  std::vector<int> cycle;
  {
    int k = bsides[0];
    do {
      cycle.push_back(k);
      auto it = starting.find(uf.find(end(k)));
      if (it == starting.end()) return std::nullopt;
      k = it->second[0];
    } while (k != bsides[0] && cycle.size() <= bsides.size());
    if (cycle.size() != bsides.size()) return std::nullopt;
  }
  // Region corners per vertex inside S.
  std::map<int, int> coverage;
  for (int k = 0; k < n; ++k) ++coverage[h.side_end(occ[k].side)];

  Disc d;
  d.regions = S;
  d.domain.assign(h.num_regions(), 0);
  for (int r : S) {
    d.domain[r] = 1;
    d.e4 += h.euler4(r);
  }
  for (int k = 0; k < n; ++k) {
    const auto& E = h.edges[occ[k].side.edge];
    d.vertices.insert(E.from);
    d.vertices.insert(E.to);
    if (!boundary[k]) continue;
    if (is_alpha(E.kind)) d.alphas.insert(E.curve);
    if (E.kind == EdgeKind::Beta) d.betas.insert(E.curve);
  }

  const int m = static_cast<int>(cycle.size());
  std::vector<Corner::Kind> junction(m, Corner::None);
  for (int j = 0; j < m; ++j) {
    const auto& a = h.edges[occ[cycle[j]].side.edge];
    const auto& b = h.edges[occ[cycle[(j + 1) % m]].side.edge];
    int v = h.side_end(occ[cycle[j]].side);
    int cov = coverage[v];
    auto vk = h.vertices[v].kind;
    if (vk == VertexKind::Crossing) {
      bool turn = (a.kind == EdgeKind::Beta) != (b.kind == EdgeKind::Beta);
      if (!turn) {
        if (cov != 2) return std::nullopt;
      } else {
        if (cov != 1) return std::nullopt;
        junction[j] = a.kind == EdgeKind::Beta ? Corner::Out : Corner::In;
        (junction[j] == Corner::Out ? d.out_corners : d.in_corners).push_back(v);
      }
    } else if (vk == VertexKind::ZPoint) {
      bool za = a.kind == EdgeKind::Z, zb = b.kind == EdgeKind::Z;
      if (za && zb) {
        if (cov != 2) return std::nullopt;
      } else if (za != zb) {
        if (cov != 1) return std::nullopt;
        junction[j] = Corner::Boundary;
      } else {
        return std::nullopt;
      }
    }
  }
  if (d.out_corners.size() != d.in_corners.size()) return std::nullopt;

  // Start just after an out corner, or after a non-Z side when there are none.
  int first = -1;
  for (int j = 0; j < m && first < 0; ++j)
    if (junction[j] == Corner::Out) first = (j + 1) % m;
  d.cyclic = first < 0;
  if (d.cyclic)
    for (int j = 0; j < m && first < 0; ++j)
      if (h.edges[occ[cycle[j]].side.edge].kind != EdgeKind::Z) first = (j + 1) % m;
  if (first < 0) return std::nullopt;

  d.d_paths.assign(1, {});
  d.a_paths.assign(1, {});
  bool on_alpha = true;  // path state: after an out corner until the next in corner
  int run_from = -1, run_to = -1;
  auto flush = [&]() {
    if (run_from < 0) return;
    int part = h.part_of_point(run_from);
    char side = part_side(h.parts[part], kind);
    (side == 'D' ? d.d_paths : d.a_paths).back().push_back({run_from, run_to});
    run_from = -1;
  };
  for (int s = 0; s < m; ++s) {
    int j = (first + s) % m;
    const auto& E = h.edges[occ[cycle[j]].side.edge];
    if (E.kind == EdgeKind::Z) {
      if (!on_alpha) return std::nullopt;
      int p = h.vertices[E.from].point, q = h.vertices[E.to].point;
      if (run_from < 0) run_from = p;
      run_to = q;
    } else {
      flush();
      if ((E.kind == EdgeKind::Beta) == on_alpha) return std::nullopt;
    }
    if (junction[j] == Corner::In) {
      flush();
      if (!on_alpha) return std::nullopt;
      on_alpha = false;
    } else if (junction[j] == Corner::Out) {
      flush();
      if (on_alpha) return std::nullopt;
      on_alpha = true;
      d.d_paths.push_back({});
      d.a_paths.push_back({});
    }
  }
  flush();
  auto prune = [](std::vector<std::vector<ReebChord>>& paths) {
    paths.erase(std::remove_if(paths.begin(), paths.end(), [](auto& p) { return p.empty(); }),
                paths.end());
  };
  prune(d.d_paths);
  prune(d.a_paths);
  return d;
}

// All connected sets of non-boundary regions up to the given size.
std::vector<std::vector<int>> connected_sets(const HeegaardDiagram& h, int max_size,
                                             size_t limit) {
  const int nr = h.num_regions();
  std::vector<std::set<int>> adj(nr);
  for (int e = 0; e < static_cast<int>(h.edges.size()); ++e) {
    if (is_boundary(h.edges[e].kind)) continue;
    int l = h.left_region(e), r = h.right_region(e);
    if (l == r || h.boundary_region(l) || h.boundary_region(r)) continue;
    adj[l].insert(r);
    adj[r].insert(l);
  }
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> out;
  std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& cur) {
    if (!seen.insert(cur).second) return;
    if (seen.size() > limit) throw Error("too many candidate domains");
    out.push_back(cur);
    if (static_cast<int>(cur.size()) >= max_size) return;
    std::set<int> nb;
    for (int r : cur)
      for (int s : adj[r])
        if (s > cur.front() && !std::binary_search(cur.begin(), cur.end(), s)) nb.insert(s);
    for (int s : nb) {
      std::vector<int> next = cur;
      next.insert(std::upper_bound(next.begin(), next.end(), s), s);
      grow(next);
    }
  };
  for (int r = 0; r < nr; ++r)
    if (!h.boundary_region(r)) {
      std::vector<int> cur{r};
      grow(cur);
    }
  return out;
}

// All merges of the given chains that keep each chain in order.
void interleavings(const std::vector<std::vector<ReebChord>>& chains,
                   const std::function<void(const std::vector<ReebChord>&)>& f) {
  std::vector<size_t> pos(chains.size(), 0);
  std::vector<ReebChord> cur;
  size_t total = 0;
  for (auto& c : chains) total += c.size();
  std::function<void()> rec = [&]() {
    if (cur.size() == total) {
      f(cur);
      return;
    }
    for (size_t i = 0; i < chains.size(); ++i)
      if (pos[i] < chains[i].size()) {
        cur.push_back(chains[i][pos[i]++]);
        rec();
        --pos[i];
        cur.pop_back();
      }
  };
  rec();
}

}  // namespace

std::vector<Generator> spinc_generators(const HeegaardDiagram& h, int cls) {
  auto gens = generators(h);
  auto classes = spinc_partition(h, gens);
  if (cls < 0 || cls >= static_cast<int>(classes.size()))
    throw Error("spin-c class " + std::to_string(cls) + " out of range (" +
                std::to_string(classes.size()) + " classes)");
  std::vector<Generator> out;
  for (int i : classes[cls].members) out.push_back(gens[i]);
  return out;
}

Invariant compute_invariant(const HeegaardDiagram& h, InvariantKind kind,
                            const std::optional<std::vector<Generator>>& subset) {
  if (kind == InvariantKind::SFC && h.zh()->num_points() > 0)
    throw Error("sfc needs a diagram without bordered boundary");
  if (!admissibility(h).provincial) throw Error("diagram is not provincially admissible");

  Invariant inv;
  inv.kind = kind;
  inv.d = make_side(h, kind, 'D');
  inv.a = make_side(h, kind, 'A');
  const ArcDiagram zd_rev = reverse(inv.d.z);
  AlgebraPtr Dalg = inv.d.z.num_points() ? make_algebra(zd_rev) : trivial_algebra();
  AlgebraPtr Aalg = inv.a.z.num_points() ? make_algebra(inv.a.z) : trivial_algebra();
  inv.s = DAStructure(Dalg, Aalg);
  inv.gens = subset ? *subset : generators(h);

  std::map<Generator, int> gen_index;
  std::vector<PairSet> occ(inv.gens.size());
  for (size_t i = 0; i < inv.gens.size(); ++i) {
    occ[i] = occupied(h, inv.gens[i]);
    gen_index[inv.gens[i]] = static_cast<int>(i);
    inv.s.add_gen(generator_name(h, inv.gens[i]),
                  side_all(inv.d) & ~side_occupied(inv.d, occ[i]), side_occupied(inv.a, occ[i]));
  }

  GradingGroup G(h.zh());
  const ArcPtr& Dd = Dalg->diagram();
  const ArcPtr& Ad = Aalg->diagram();
  auto to_d = [&](const ReebChord& c) {
    return reverse_chord(inv.d.z, {inv.d.point[c.from], inv.d.point[c.to]});
  };
  auto to_a = [&](const ReebChord& c) { return ReebChord{inv.a.point[c.from], inv.a.point[c.to]}; };

  // Replaces out corners by in corners.
  auto move = [&](const Generator& x, const std::vector<int>& outs,
                  const std::vector<int>& ins) -> std::optional<Generator> {
    Generator y = x;
    std::vector<bool> vacated(h.num_betas(), false);
    for (int v : outs) {
      int b = h.beta_of(v);
      if (x.points[b] != v) return std::nullopt;
      vacated[b] = true;
    }
    for (int v : ins) {
      int b = h.beta_of(v);
      if (!vacated[b]) return std::nullopt;
      vacated[b] = false;
      y.points[b] = v;
    }
    if (!is_generator(h, y)) return std::nullopt;
    return y;
  };
  // Index of a target; targets outside the listed generators are counted and dropped.
  auto target = [&](const Generator& y) -> std::optional<int> {
    auto it = gen_index.find(y);
    if (it == gen_index.end()) {
      ++inv.escaped;
      return std::nullopt;
    }
    return it->second;
  };
  auto index4 = [&](const Domain& dom, const Generator& x, const Generator& y, int e4,
                    const std::vector<std::vector<ReebChord>>& sets) {
    auto [nx, ny] = point_measures4(h, dom, x, y);
    GradingElement g = G.identity();
    for (auto& s : sets) g = G.mul(g, G.gr_chords(s));
    return e4 + nx + ny + 4 * static_cast<int>(sets.size()) + 2 * g.maslov2;
  };
  auto singletons = [](const std::vector<ReebChord>& seq) {
    std::vector<std::vector<ReebChord>> out;
    for (auto& c : seq) out.push_back({c});
    return out;
  };
  // D output for the chord sequence, or nullopt when the product vanishes.
  auto d_output = [&](int xi, int yi, const std::vector<ReebChord>& seq) -> std::optional<std::vector<int>> {
    AlgElement e = idempotent(Dd, inv.s.gens[xi].left);
    for (auto& c : seq) e = e * chord_total(Dd, {to_d(c)});
    e = e * idempotent(Dd, inv.s.gens[yi].left);
    if (e.is_zero()) return std::nullopt;
    return Dalg->decompose(e);
  };
  // Sequential A inputs, one chord set each.
  auto a_inputs = [&](int xi, int yi, const std::vector<std::vector<ReebChord>>& sets)
      -> std::optional<std::vector<int>> {
    PairSet cur = inv.s.gens[xi].right;
    std::vector<int> out;
    for (auto& s : sets) {
      std::vector<ReebChord> mapped;
      for (auto& c : s) mapped.push_back(to_a(c));
      AlgElement e = idempotent(Ad, cur) * chord_total(Ad, mapped);
      if (e.is_zero()) return std::nullopt;
      int i = Aalg->index_of(e);
      if (i < 0) throw Error("A-infinity input is not a basis element");
      out.push_back(i);
      cur = Aalg->right(i);
    }
    if (cur != inv.s.gens[yi].right) return std::nullopt;
    return out;
  };
  auto record = [&](int xi, int yi, const Domain& dom, const std::vector<int>& inputs,
                    const std::vector<int>& output) {
    for (int b : output) inv.s.toggle(xi, inputs, b, yi);
    inv.contributions.push_back({xi, yi, dom, inputs, output});
  };

  std::vector<Disc> discs;
  for (auto& S : connected_sets(h, 12, 200000))
    if (auto d = analyze(h, kind, S)) discs.push_back(std::move(*d));

  std::vector<const Disc*> pieces;  // single A chord, no D chord
  for (auto& d : discs)
    if (d.d_count() == 0 && d.a_count() == 1) pieces.push_back(&d);

  for (int xi = 0; xi < static_cast<int>(inv.gens.size()); ++xi) {
    const Generator& x = inv.gens[xi];
    for (auto& d : discs) {
      auto ym = move(x, d.out_corners, d.in_corners);
      if (!ym) continue;
      const Generator& y = *ym;
      bool amb_d = d.d_paths.size() > 1 || (d.cyclic && d.d_count() > 1);
      bool amb_a = d.a_paths.size() > 1 || (d.cyclic && d.a_count() > 1);
      if (amb_d || amb_a) {
        std::vector<std::vector<ReebChord>> chains = d.d_paths;
        chains.insert(chains.end(), d.a_paths.begin(), d.a_paths.end());
        bool index_one = false;
        interleavings(chains, [&](const std::vector<ReebChord>& seq) {
          if (index4(d.domain, x, y, d.e4, singletons(seq)) == 4) index_one = true;
        });
        if (index_one)
          throw Error("ambiguous chord heights in a domain from " + inv.s.gens[xi].name + " to " +
                      generator_name(h, y));
        continue;
      }
      std::vector<ReebChord> dseq = d.d_paths.empty() ? std::vector<ReebChord>{} : d.d_paths[0];
      std::vector<ReebChord> aseq = d.a_paths.empty() ? std::vector<ReebChord>{} : d.a_paths[0];
      auto sets = singletons(dseq);
      for (auto& s : singletons(aseq)) sets.push_back(s);
      if (index4(d.domain, x, y, d.e4, sets) != 4) continue;
      auto yi = target(y);
      if (!yi) continue;
      auto out = d_output(xi, *yi, dseq);
      auto ins = a_inputs(xi, *yi, singletons(aseq));
      if (!out || !ins) continue;
      record(xi, *yi, d.domain, *ins, *out);
    }

    // Disjoint single-chord discs with one simultaneous input.
    std::vector<const Disc*> usable;
    for (auto* p : pieces) {
      bool ok = true;
      for (int v : p->out_corners)
        if (x.points[h.beta_of(v)] != v) ok = false;
      if (ok) usable.push_back(p);
    }
    std::vector<const Disc*> chosen;
    // Simultaneous pieces may share alpha arcs (at different heights) but no regions,
    // beta circles or alpha circles.
    auto disjoint = [&](const Disc* a, const Disc* b) {
      auto meet = [](const std::set<int>& s, const std::set<int>& t) {
        for (int v : s)
          if (t.count(v)) return true;
        return false;
      };
      std::set<int> ra(a->regions.begin(), a->regions.end()), rb(b->regions.begin(), b->regions.end());
      std::set<int> ca, cb;
      for (int c : a->alphas)
        if (c >= h.num_alpha_arcs) ca.insert(c);
      for (int c : b->alphas)
        if (c >= h.num_alpha_arcs) cb.insert(c);
      return !meet(ra, rb) && !meet(a->betas, b->betas) && !meet(ca, cb);
    };
    std::function<void(size_t)> rec = [&](size_t from) {
      if (chosen.size() >= 2) {
        std::vector<int> outs, ins;
        std::vector<ReebChord> set;
        Domain dom(h.num_regions(), 0);
        int e4 = 0;
        for (auto* p : chosen) {
          outs.insert(outs.end(), p->out_corners.begin(), p->out_corners.end());
          ins.insert(ins.end(), p->in_corners.begin(), p->in_corners.end());
          set.push_back(p->a_paths[0][0]);
          for (int r = 0; r < h.num_regions(); ++r) dom[r] += p->domain[r];
          e4 += p->e4;
        }
        std::sort(set.begin(), set.end());
        auto ym = move(x, outs, ins);
        std::optional<int> yi;
        if (ym && index4(dom, x, *ym, e4, {set}) == 4) yi = target(*ym);
        if (yi) {
          auto out = d_output(xi, *yi, {});
          auto in_el = a_inputs(xi, *yi, {set});
          if (out && in_el) record(xi, *yi, dom, *in_el, *out);
        }
      }
      for (size_t i = from; i < usable.size(); ++i) {
        bool ok = true;
        for (auto* c : chosen)
          if (!disjoint(c, usable[i])) ok = false;
        if (!ok) continue;
        chosen.push_back(usable[i]);
        rec(i + 1);
        chosen.pop_back();
      }
    };
    rec(0);
  }
  return inv;
}

GradingLawReport check_grading_law(const HeegaardDiagram& h, const Invariant& inv, bool reduced,
                                   int depth) {
  GradingLawReport rep;
  GradingGroup G(h.zh());
  std::optional<GradingReduction> red;
  if (reduced) red.emplace(G);
  const DAStructure& s = inv.s;

  auto embed = [&](const SideData& side, const GradingElement& g) {
    GradingElement out = G.identity();
    out.maslov2 = g.maslov2;
    for (size_t iv = 0; iv < g.h.size(); ++iv) out.h[side.zh_interval[iv]] += g.h[iv];
    return out;
  };
  std::optional<GradingGroup> GD, GA;
  if (!s.A->trivial()) GD.emplace(s.A->diagram());
  if (!s.B->trivial()) GA.emplace(s.B->diagram());
  auto gr_out = [&](int b) {
    if (s.A->trivial()) return G.identity();
    GradingElement g = GD->gr(s.A->element(b));
    return embed(inv.d, reverse_grading(*s.A->diagram(), g));
  };
  auto gr_in = [&](int a) { return embed(inv.a, GA->gr(s.B->element(a))); };

  // Generator gradings relative to the first member of each spin-c class.
  auto classes = spinc_partition(h, inv.gens);
  std::vector<GradingCoset> gr(inv.gens.size());
  std::vector<int> base_of(inv.gens.size());
  for (auto& c : classes)
    for (int i : c.members) {
      gr[i] = generator_grading(h, G, inv.gens[i], inv.gens[c.members.front()]);
      base_of[i] = c.members.front();
    }

  std::vector<PairSet> occ(inv.gens.size());
  for (size_t i = 0; i < inv.gens.size(); ++i) occ[i] = occupied(h, inv.gens[i]);
  PairSet d_mask = 0;
  for (int p = 0; p < static_cast<int>(inv.d.pair.size()); ++p)
    if (inv.d.pair[p] >= 0) d_mask |= PairSet(1) << p;

  for (auto& c : inv.contributions) {
    for (int b : c.output) {
      ++rep.checked;
      GradingElement lhs = G.mul(gr[c.y].rep, gr_out(b));
      GradingElement rhs = gr[c.x].rep;
      for (int a : c.inputs) rhs = G.mul(rhs, gr_in(a));
      rhs = G.mul(rhs, G.lambda(static_cast<int>(c.inputs.size()) - 1));
      std::vector<GradingElement> stab = gr[c.x].stabilizer;
      if (reduced) {
        // r0 (.) r(o_D(x) u o_A(y))^-1 on both sides, stabilizer conjugated by r0.
        const GradingElement& r0 = red->r(occ[base_of[c.x]]);
        PairSet mid = (occ[c.x] & d_mask) | (occ[c.y] & ~d_mask);
        GradingElement rt = G.inv(red->r(mid));
        GradingElement ybar = G.mul(G.mul(r0, gr[c.y].rep), G.inv(red->r(occ[c.y])));
        GradingElement xbar = G.mul(G.mul(r0, gr[c.x].rep), G.inv(red->r(occ[c.x])));
        GradingElement bbar = G.mul(G.mul(red->r(occ[c.y]), gr_out(b)), rt);
        GradingElement abar = red->r(occ[c.x]);
        for (int a : c.inputs) abar = G.mul(abar, gr_in(a));
        abar = G.mul(abar, rt);
        lhs = G.mul(ybar, bbar);
        rhs = G.mul(G.mul(xbar, abar), G.lambda(static_cast<int>(c.inputs.size()) - 1));
        for (auto& p : stab) p = G.mul(G.mul(r0, p), G.inv(r0));
      }
      GradingCoset L{lhs, stab}, R{rhs, stab};
      bool lattice = coset_equal(G, L, R);
      bool words = coset_equal_bruteforce(G, L, R, depth);
      if (!lattice || !words) {
        if (rep.ok)
          rep.witness = "term " + s.A->name(b) + " (" + s.gens[c.y].name + ") in m(" +
                        s.gens[c.x].name + ", " + std::to_string(c.inputs.size()) +
                        " inputs): lhs " + grading_string(lhs) + ", rhs " + grading_string(rhs) +
                        (lattice ? "" : " [lattice]") + (words ? "" : " [words]");
        rep.ok = false;
      }
    }
  }
  return rep;
}

HeegaardDiagram with_roles(const HeegaardDiagram& h, const ArcDiagram& part, char role) {
  HeegaardDiagram out = h;
  bool found = false;
  for (auto& p : out.parts) {
    if (!found && p.oriented() == part) {
      p.side = role;
      found = true;
    } else {
      p.side = role == 'A' ? 'D' : 'A';
    }
  }
  if (!found) throw Error(h.name + " has no boundary part " + part.name);
  return out;
}

Pairing chain_level_pairing(const HeegaardDiagram& a_side, const std::vector<Generator>& a_gens,
                            const HeegaardDiagram& d_side, const std::vector<Generator>& d_gens,
                            const ArcDiagram& along) {
  const HeegaardDiagram ha = with_roles(a_side, along, 'A');
  const HeegaardDiagram hd = with_roles(d_side, reverse(along), 'D');
  Invariant a = compute_invariant(ha, InvariantKind::BSDA, a_gens);
  Invariant d = compute_invariant(hd, InvariantKind::BSDA, d_gens);
  Pairing out;
  out.box = box_da(a.s, d.s);
  out.glued = glue(ha, hd, along);
  std::vector<Generator> gens;
  for (auto& x : a_gens)
    for (auto& y : d_gens)
      if (auto g = glued_generator(out.glued, ha, x, hd, y)) gens.push_back(*g);
  const InvariantKind kind = out.glued.parts.empty() ? InvariantKind::SFC : InvariantKind::BSDA;
  out.invariant = compute_invariant(out.glued, kind, gens);
  out.iso = isomorphism(out.box, out.invariant.s);
  return out;
}

}  // namespace bsfh
