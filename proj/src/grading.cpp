#include "bsfh/grading.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>

#include "bsfh/linalg.hpp"

namespace bsfh {

std::string half_string(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

std::string grading_string(const GradingElement& g) {
  std::string out = "(" + half_string(g.maslov2) + ";";
  for (size_t i = 0; i < g.h.size(); ++i) out += (i ? "," : "") + std::to_string(g.h[i]);
  return out + ")";
}

GradingGroup::GradingGroup(ArcPtr d) : d_(std::move(d)) {
  for (int p = 0; p < d_->num_points(); ++p)
    if (d_->interval_after(p) >= 0) start_.push_back(p);
}

int GradingGroup::m_pair2(int point, const HomologyClass& a) const {
  int s = 0;
  for (int i = 0; i < dim(); ++i)
    if (point == start_[i] || point == start_[i] + 1) s += a[i];
  return s;
}

int GradingGroup::m_pair2(const std::vector<int>& chain0, const HomologyClass& a) const {
  int s = 0;
  for (int p = 0; p < static_cast<int>(chain0.size()); ++p)
    if (chain0[p]) s += chain0[p] * m_pair2(p, a);
  return s;
}

std::vector<int> GradingGroup::boundary(const HomologyClass& a) const {
  std::vector<int> c(d_->num_points(), 0);
  for (int i = 0; i < dim(); ++i) {
    c[start_[i] + 1] += a[i];
    c[start_[i]] -= a[i];
  }
  return c;
}

std::vector<int> GradingGroup::boundary_prime(const HomologyClass& a) const {
  std::vector<int> e(d_->num_pairs(), 0);
  auto c = boundary(a);
  for (int p = 0; p < d_->num_points(); ++p) e[d_->matching[p]] += c[p];
  return e;
}

int GradingGroup::L2(const HomologyClass& a, const HomologyClass& b) const {
  return m_pair2(boundary(a), b);
}

HomologyClass GradingGroup::interval_class(int p, int q) const {
  HomologyClass h(dim(), 0);
  for (int i = 0; i < dim(); ++i)
    if (start_[i] >= p && start_[i] < q) h[i] = 1;
  return h;
}

GradingElement GradingGroup::mul(const GradingElement& a, const GradingElement& b) const {
  GradingElement c;
  c.maslov2 = a.maslov2 + b.maslov2 + L2(a.h, b.h);
  c.h.resize(dim());
  for (int i = 0; i < dim(); ++i) c.h[i] = a.h[i] + b.h[i];
  return c;
}

GradingElement GradingGroup::inv(const GradingElement& a) const {
  GradingElement c;
  c.maslov2 = -a.maslov2 + L2(a.h, a.h);
  c.h.resize(dim());
  for (int i = 0; i < dim(); ++i) c.h[i] = -a.h[i];
  return c;
}

GradingElement GradingGroup::pow(const GradingElement& a, long long n) const {
  GradingElement base = n < 0 ? inv(a) : a;
  GradingElement out = identity();
  for (long long i = 0; i < (n < 0 ? -n : n); ++i) out = mul(out, base);
  return out;
}

GradingElement GradingGroup::gr(const StrandDiagram& a) const {
  GradingElement g;
  g.h = homology_class(*d_, a);
  std::vector<int> S(d_->num_points(), 0);
  for (auto& [x, y] : a) S[x] = 1;
  g.maslov2 = 2 * inversions(a) - m_pair2(S, g.h);
  return g;
}

GradingElement GradingGroup::gr(const AlgElement& a) const {
  if (a.is_zero()) throw Error("grading of zero element");
  GradingElement g = gr(a.terms().front());
  for (auto& t : a.terms())
    if (!(gr(t) == g)) throw Error("inhomogeneous element " + element_string(a));
  return g;
}

GradingElement GradingGroup::gr_chords(const std::vector<ReebChord>& rho) const {
  GradingElement g = identity();
  std::vector<HomologyClass> cls;
  for (auto& c : rho) cls.push_back(interval_class(c.from, c.to));
  g.maslov2 = -static_cast<int>(rho.size());
  for (size_t i = 0; i < cls.size(); ++i) {
    for (size_t iv = 0; iv < g.h.size(); ++iv) g.h[iv] += cls[i][iv];
    for (size_t j = i + 1; j < cls.size(); ++j) g.maslov2 -= std::abs(L2(cls[i], cls[j]));
  }
  return g;
}

HomologyClass reverse_class(const ArcDiagram& d, const HomologyClass& h) {
  HomologyClass out(h.size(), 0);
  for (int p = 0; p < d.num_points(); ++p) {
    int iv = d.interval_after(p);
    if (iv < 0) continue;
    int q = reversed_point(d, p + 1);  // [r(p+1), r(p)] in -Z
    out[d.interval_after(q)] = -h[iv];
  }
  return out;
}

GradingElement reverse_grading(const ArcDiagram& d, const GradingElement& g) {
  return {g.maslov2, reverse_class(d, g.h)};
}

GradingReduction::GradingReduction(const GradingGroup& G) {
  const ArcDiagram& d = *G.diagram();
  const int k = d.num_pairs();
  // Pair graph: one edge per elementary interval.
  struct Edge {
    int from, to, iv;
  };
  std::vector<Edge> edges;
  for (int p = 0; p < d.num_points(); ++p) {
    int iv = d.interval_after(p);
    if (iv >= 0) edges.push_back({d.matching[p], d.matching[p + 1], iv});
  }
  component_of_pair.assign(k, -1);
  int nc = 0;
  for (int i = 0; i < k; ++i) {
    if (component_of_pair[i] >= 0) continue;
    std::deque<int> q{i};
    component_of_pair[i] = nc;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (auto& e : edges)
        for (int w : {e.from == u ? e.to : -1, e.to == u ? e.from : -1})
          if (w >= 0 && component_of_pair[w] < 0) {
            component_of_pair[w] = nc;
            q.push_back(w);
          }
    }
    ++nc;
  }
  // Shortest signed path of intervals from pair u to pair v.
  auto path = [&](int u, int v) {
    std::vector<int> prev_edge(k, -1), prev(k, -1);
    std::vector<bool> seen(k, false);
    std::deque<int> q{u};
    seen[u] = true;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (size_t j = 0; j < edges.size(); ++j) {
        auto& e = edges[j];
        int w = e.from == x ? e.to : (e.to == x ? e.from : -1);
        if (w < 0 || seen[w]) continue;
        seen[w] = true;
        prev[w] = x;
        prev_edge[w] = static_cast<int>(j);
        q.push_back(w);
      }
    }
    HomologyClass h(G.dim(), 0);
    for (int x = v; x != u; x = prev[x]) {
      auto& e = edges[prev_edge[x]];
      // Traversing from -> to has boundary' e_to - e_from.
      h[e.iv] += (e.to == x && e.from == prev[x]) ? 1 : -1;
    }
    return h;
  };
  for (PairSet s = 0; s < (1u << k); ++s) {
    // Base: lexicographically least set with the same count per component.
    std::vector<int> count(nc, 0);
    for (int i : pairset_members(s)) ++count[component_of_pair[i]];
    PairSet b = 0;
    for (int i = 0; i < k; ++i)
      if (count[component_of_pair[i]] > 0) {
        b |= 1u << i;
        --count[component_of_pair[i]];
      }
    base_.emplace_back(s, b);
    std::vector<int> from, to;
    for (int i : pairset_members(b & ~s)) from.push_back(i);
    for (int i : pairset_members(s & ~b)) to.push_back(i);
    // Match within components in order.
    HomologyClass h(G.dim(), 0);
    std::vector<bool> used(to.size(), false);
    for (int u : from)
      for (size_t j = 0; j < to.size(); ++j)
        if (!used[j] && component_of_pair[to[j]] == component_of_pair[u]) {
          used[j] = true;
          auto ph = path(u, to[j]);
          for (int i = 0; i < G.dim(); ++i) h[i] += ph[i];
          break;
        }
    table_.emplace_back(s, GradingElement{0, h});
  }
}

GradingReduction GradingReduction::complementary(const GradingGroup& G, const GradingGroup& Grev,
                                                 const GradingReduction& r) {
  GradingReduction out;
  out.component_of_pair = r.component_of_pair;
  const int k = G.diagram()->num_pairs();
  const PairSet all = k ? ((1u << k) - 1) : 0;
  (void)Grev;
  for (size_t i = 0; i < r.table_.size(); ++i) {
    PairSet s = r.table_[i].first;
    out.table_.emplace_back(all & ~s,
                            reverse_grading(*G.diagram(), G.inv(r.table_[i].second)));
    out.base_.emplace_back(all & ~s, all & ~r.base_[i].second);
  }
  return out;
}

bool GradingReduction::in_domain(PairSet s) const {
  for (auto& [t, g] : table_)
    if (t == s) return true;
  return false;
}

PairSet GradingReduction::base(PairSet s) const {
  for (auto& [t, b] : base_)
    if (t == s) return b;
  throw Error("idempotent outside the grading reduction");
}

const GradingElement& GradingReduction::r(PairSet s) const {
  for (auto& [t, g] : table_)
    if (t == s) return g;
  throw Error("idempotent outside the grading reduction");
}

GradingElement GradingReduction::reduce(const GradingGroup& G, const GradingElement& g,
                                        PairSet start, PairSet end) const {
  if (base(start) != base(end)) throw Error("idempotents in different components");
  return G.mul(G.mul(r(start), g), G.inv(r(end)));
}

GradingElement GradingReduction::reduce(const GradingGroup& G, const AlgElement& a) const {
  return reduce(G, G.gr(a), a.left_idempotent(), a.right_idempotent());
}

long long ribbon_intersection(const ArcDiagram& d, const HomologyClass& a,
                              const HomologyClass& b) {
  // Edges: intervals (index iv, from p to p+1) then arcs (pair i, from lower to higher point).
  const int n = d.num_points();
  const int k = d.num_pairs();
  GradingGroup G(std::make_shared<const ArcDiagram>(d));
  const int ni = G.dim();
  auto full = [&](const HomologyClass& h) {
    std::vector<long long> c(ni + k, 0);
    for (int i = 0; i < ni; ++i) c[i] = h[i];
    auto bd = G.boundary(h);
    for (int i = 0; i < k; ++i) {
      auto pq = d.pair_points(i);
      c[ni + i] = bd[pq[0]];
    }
    return c;
  };
  auto ca = full(a), cb = full(b);
  long long total = 0;
  for (int v = 0; v < n; ++v) {
    // Half-edges at v in counterclockwise order: incoming Z, arc, outgoing Z.
    struct Half {
      int edge;
      bool outward;  // edge oriented away from v
    };
    std::vector<Half> hs;
    if (v > 0 && d.interval_after(v - 1) >= 0) hs.push_back({d.interval_after(v - 1), false});
    {
      int pr = d.matching[v];
      auto pq = d.pair_points(pr);
      hs.push_back({ni + pr, pq[0] == v});
    }
    int ivo = d.interval_after(v);
    if (ivo >= 0) hs.push_back({ivo, true});
    const int m = static_cast<int>(hs.size());
    // Flow of b leaving v along each half-edge.
    std::vector<long long> ins, outs;
    std::vector<int> in_idx, out_idx;
    for (int h = 0; h < m; ++h) {
      long long f = hs[h].outward ? cb[hs[h].edge] : -cb[hs[h].edge];
      if (f > 0) {
        outs.push_back(f);
        out_idx.push_back(h);
      } else if (f < 0) {
        ins.push_back(-f);
        in_idx.push_back(h);
      }
    }
    size_t i = 0, o = 0;
    while (i < ins.size() && o < outs.size()) {
      long long amt = std::min(ins[i], outs[o]);
      // Pushed copy runs clockwise from the incoming half-edge to the outgoing one.
      for (int h = (in_idx[i] - 1 + m) % m; h != out_idx[o]; h = (h - 1 + m) % m) {
        long long sign = hs[h].outward ? -1 : 1;
        total += amt * sign * ca[hs[h].edge];
      }
      ins[i] -= amt;
      outs[o] -= amt;
      if (!ins[i]) ++i;
      if (!outs[o]) ++o;
    }
  }
  return total;
}

std::vector<HomologyClass> cycle_basis(const GradingGroup& G) {
  const ArcDiagram& d = *G.diagram();
  IntMat A(d.num_pairs(), IntVec(G.dim(), 0));
  for (int i = 0; i < G.dim(); ++i) {
    HomologyClass e(G.dim(), 0);
    e[i] = 1;
    auto bp = G.boundary_prime(e);
    for (int r = 0; r < d.num_pairs(); ++r) A[r][i] = bp[r];
  }
  std::vector<HomologyClass> out;
  for (auto& v : integer_kernel(A, G.dim())) out.emplace_back(v.begin(), v.end());
  return out;
}

static long long gcdll(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

bool subgroup_member(const GradingGroup& G, const std::vector<GradingElement>& gens,
                     const GradingElement& h) {
  const int m = static_cast<int>(gens.size());
  const int dim = G.dim();
  if (m == 0) return h == G.identity();
  IntMat A(dim, IntVec(m, 0));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < dim; ++i) A[i][j] = gens[j].h[i];
  IntVec b(h.h.begin(), h.h.end());
  auto n = solve_integer(A, m, b);
  if (!n) return false;
  auto ordered = [&](const IntVec& e) {
    GradingElement g = G.identity();
    for (int j = 0; j < m; ++j) g = G.mul(g, G.pow(gens[j], e[j]));
    return g;
  };
  long long lattice = 0;
  for (auto& k : integer_kernel(A, m)) lattice = gcdll(lattice, ordered(k).maslov2);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      lattice = gcdll(lattice, G.L2(gens[i].h, gens[j].h) - G.L2(gens[j].h, gens[i].h));
  long long diff = h.maslov2 - ordered(*n).maslov2;
  return lattice == 0 ? diff == 0 : diff % lattice == 0;
}

bool subgroup_member_bruteforce(const GradingGroup& G, const std::vector<GradingElement>& gens,
                                const GradingElement& h, int depth) {
  std::set<GradingElement> seen{G.identity()};
  std::vector<GradingElement> frontier{G.identity()};
  std::vector<GradingElement> steps;
  for (auto& g : gens) {
    steps.push_back(g);
    steps.push_back(G.inv(g));
  }
  if (h == G.identity()) return true;
  for (int len = 0; len < depth; ++len) {
    std::vector<GradingElement> next;
    for (auto& f : frontier)
      for (auto& s : steps) {
        auto g = G.mul(f, s);
        if (seen.insert(g).second) {
          if (g == h) return true;
          next.push_back(g);
        }
      }
    frontier = std::move(next);
  }
  return false;
}

bool coset_equal(const GradingGroup& G, const GradingCoset& a, const GradingCoset& b) {
  if (a.stabilizer != b.stabilizer) throw Error("stabilizer mismatch");
  return subgroup_member(G, a.stabilizer, G.mul(b.rep, G.inv(a.rep)));
}

bool coset_equal_bruteforce(const GradingGroup& G, const GradingCoset& a, const GradingCoset& b,
                            int depth) {
  if (a.stabilizer != b.stabilizer) throw Error("stabilizer mismatch");
  return subgroup_member_bruteforce(G, a.stabilizer, G.mul(b.rep, G.inv(a.rep)), depth);
}

}  // namespace bsfh
