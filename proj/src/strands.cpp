#include "bsfh/strands.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace bsfh {

std::string pairset_string(PairSet s) {
  std::string out;
  bool wide = s >> 9;
  for (int i = 0; i < 32; ++i)
    if (s >> i & 1u) {
      if (wide && !out.empty()) out += ",";
      out += std::to_string(i + 1);
    }
  return out;
}

std::vector<int> pairset_members(PairSet s) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (s >> i & 1u) out.push_back(i);
  return out;
}

int inversions(const StrandDiagram& a) {
  int n = 0;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      if (a[i].second > a[j].second) ++n;
  return n;
}

std::vector<int> sources(const StrandDiagram& a) {
  std::vector<int> s;
  for (auto& [x, y] : a) s.push_back(x);
  return s;
}

std::vector<int> targets(const StrandDiagram& a) {
  std::vector<int> t;
  for (auto& [x, y] : a) t.push_back(y);
  std::sort(t.begin(), t.end());
  return t;
}

bool is_idempotent(const StrandDiagram& a) {
  for (auto& [x, y] : a)
    if (x != y) return false;
  return true;
}

std::optional<StrandDiagram> multiply(const StrandDiagram& a, const StrandDiagram& b) {
  if (a.size() != b.size()) return std::nullopt;
  if (targets(a) != sources(b)) return std::nullopt;
  StrandDiagram c;
  c.reserve(a.size());
  for (auto& [x, y] : a) {
    auto it = std::lower_bound(b.begin(), b.end(), std::make_pair(y, -1));
    c.emplace_back(x, it->second);
  }
  if (inversions(a) + inversions(b) != inversions(c)) return std::nullopt;
  return c;
}

std::vector<StrandDiagram> differential(const StrandDiagram& a) {
  std::vector<StrandDiagram> out;
  const int base = inversions(a);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j) {
      if (a[i].second <= a[j].second) continue;
      StrandDiagram b = a;
      std::swap(b[i].second, b[j].second);
      if (inversions(b) == base - 1) out.push_back(b);
    }
  std::sort(out.begin(), out.end());
  return out;
}

static void enumerate_strands(const ArcDiagram& d, int k, int p, StrandDiagram& cur,
                              std::vector<bool>& used, std::vector<StrandDiagram>& out) {
  const int n = d.num_points();
  if (k >= 0 && static_cast<int>(cur.size()) > k) return;
  if (p == n) {
    if (k < 0 || static_cast<int>(cur.size()) == k) out.push_back(cur);
    return;
  }
  enumerate_strands(d, k, p + 1, cur, used, out);
  for (int q = p; q < n && d.segment_of[q] == d.segment_of[p]; ++q) {
    if (used[q]) continue;
    used[q] = true;
    cur.emplace_back(p, q);
    enumerate_strands(d, k, p + 1, cur, used, out);
    cur.pop_back();
    used[q] = false;
  }
}

std::vector<StrandDiagram> all_strand_diagrams(const ArcDiagram& d, int k) {
  std::vector<StrandDiagram> out;
  StrandDiagram cur;
  std::vector<bool> used(d.num_points(), false);
  enumerate_strands(d, k, 0, cur, used, out);
  return out;
}

std::vector<StrandDiagram> all_strand_diagrams(const ArcDiagram& d) {
  return all_strand_diagrams(d, -1);
}

static std::vector<int> interval_table(const ArcDiagram& d) {
  std::vector<int> t(d.num_points(), -1);
  int iv = 0;
  for (int p = 0; p + 1 < d.num_points(); ++p)
    if (d.segment_of[p + 1] == d.segment_of[p]) t[p] = iv++;
  return t;
}

HomologyClass homology_class(const ArcDiagram& d, const StrandDiagram& a) {
  HomologyClass h(d.num_intervals(), 0);
  auto t = interval_table(d);
  for (auto& [x, y] : a)
    for (int q = x; q < y; ++q) ++h[t[q]];
  return h;
}

HomologyClass chord_class(const ArcDiagram& d, const std::vector<ReebChord>& rho) {
  HomologyClass h(d.num_intervals(), 0);
  auto t = interval_table(d);
  for (auto& c : rho)
    for (int q = c.from; q < c.to; ++q) ++h[t[q]];
  return h;
}

AlgElement::AlgElement(ArcPtr d, std::vector<StrandDiagram> terms) : d_(std::move(d)) {
  std::sort(terms.begin(), terms.end());
  for (size_t i = 0; i < terms.size();) {
    size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) % 2) terms_.push_back(terms[i]);
    i = j;
  }
}

void AlgElement::add_term(const StrandDiagram& t) {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), t);
  if (it != terms_.end() && *it == t)
    terms_.erase(it);
  else
    terms_.insert(it, t);
}

void check_same_ambient(const AlgElement& a, const AlgElement& b) {
  if (a.ambient() && b.ambient() && a.ambient() != b.ambient() &&
      !(*a.ambient() == *b.ambient()))
    throw Error("algebra elements over different arc diagrams");
}

AlgElement& AlgElement::operator+=(const AlgElement& o) {
  check_same_ambient(*this, o);
  if (!d_) d_ = o.d_;
  std::vector<StrandDiagram> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  std::set_symmetric_difference(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
                                std::back_inserter(merged));
  terms_ = std::move(merged);
  return *this;
}

AlgElement AlgElement::operator*(const AlgElement& o) const {
  check_same_ambient(*this, o);
  std::vector<StrandDiagram> out;
  for (auto& a : terms_)
    for (auto& b : o.terms_)
      if (auto c = multiply(a, b)) out.push_back(*c);
  return AlgElement(d_ ? d_ : o.d_, std::move(out));
}

AlgElement AlgElement::d() const {
  std::vector<StrandDiagram> out;
  for (auto& a : terms_)
    for (auto& b : differential(a)) out.push_back(b);
  return AlgElement(d_, std::move(out));
}

static PairSet pairs_of(const ArcDiagram& d, const std::vector<int>& pts) {
  PairSet s = 0;
  for (int p : pts) s |= 1u << d.matching[p];
  return s;
}

PairSet AlgElement::left_idempotent() const {
  if (terms_.empty()) throw Error("idempotent of zero element");
  return pairs_of(*d_, sources(terms_.front()));
}

PairSet AlgElement::right_idempotent() const {
  if (terms_.empty()) throw Error("idempotent of zero element");
  return pairs_of(*d_, targets(terms_.front()));
}

// All sections of s: one point from each pair.
static std::vector<std::vector<int>> sections(const ArcDiagram& d, PairSet s) {
  std::vector<std::vector<int>> out{{}};
  for (int pr : pairset_members(s)) {
    auto pts = d.pair_points(pr);
    std::vector<std::vector<int>> next;
    for (auto& sec : out)
      for (int p : pts) {
        auto t = sec;
        t.push_back(p);
        next.push_back(t);
      }
    out = std::move(next);
  }
  return out;
}

AlgElement idempotent(const ArcPtr& d, PairSet s) {
  std::vector<StrandDiagram> terms;
  for (auto& sec : sections(*d, s)) {
    StrandDiagram t;
    for (int p : sec) t.emplace_back(p, p);
    std::sort(t.begin(), t.end());
    terms.push_back(t);
  }
  return AlgElement(d, terms);
}

static bool chords_admissible(const ArcDiagram& d, const std::vector<ReebChord>& rho) {
  PairSet lo = 0, hi = 0;
  for (auto& c : rho) {
    if (c.from == c.to || !d.same_segment(c.from, c.to) || c.from > c.to) return false;
    PairSet a = 1u << d.matching[c.from], b = 1u << d.matching[c.to];
    if ((lo & a) || (hi & b)) return false;
    lo |= a;
    hi |= b;
  }
  return true;
}

static PairSet chord_pairs(const ArcDiagram& d, const std::vector<ReebChord>& rho) {
  PairSet s = 0;
  for (auto& c : rho) s |= (1u << d.matching[c.from]) | (1u << d.matching[c.to]);
  return s;
}

bool completable(const ArcDiagram& d, const std::vector<ReebChord>& rho, int p) {
  if (!chords_admissible(d, rho)) return false;
  int n = static_cast<int>(rho.size());
  return p >= n && popcount(chord_pairs(d, rho)) <= d.num_pairs() - (p - n);
}

AlgElement chord_element(const ArcPtr& d, const std::vector<ReebChord>& rho, PairSet s) {
  if (!chords_admissible(*d, rho)) return AlgElement(d);
  if (s & chord_pairs(*d, rho)) throw Error("completion meets the chord endpoints");
  std::vector<StrandDiagram> terms;
  for (auto& sec : sections(*d, s)) {
    StrandDiagram t;
    for (auto& c : rho) t.emplace_back(c.from, c.to);
    for (int p : sec) t.emplace_back(p, p);
    std::sort(t.begin(), t.end());
    terms.push_back(t);
  }
  return AlgElement(d, terms);
}

AlgElement chord_sum(const ArcPtr& d, const std::vector<ReebChord>& rho, int p) {
  AlgElement out(d);
  if (!completable(*d, rho, p)) return out;
  const int need = p - static_cast<int>(rho.size());
  const PairSet used = chord_pairs(*d, rho);
  const int k = d->num_pairs();
  for (PairSet s = 0; s < (1u << k); ++s)
    if (!(s & used) && popcount(s) == need) out += chord_element(d, rho, s);
  return out;
}

AlgElement chord_total(const ArcPtr& d, const std::vector<ReebChord>& rho) {
  AlgElement out(d);
  for (int p = 0; p <= d->num_pairs(); ++p) out += chord_sum(d, rho, p);
  return out;
}

namespace {

// Incremental Z/2 row reduction over strand-diagram coordinates.
class Span {
 public:
  bool add(const AlgElement& e) {
    auto r = reduce(e.terms());
    if (r.empty()) return false;
    rows_.emplace(r.front(), r);
    return true;
  }
  bool contains(const AlgElement& e) const { return reduce(e.terms()).empty(); }

 private:
  std::vector<StrandDiagram> reduce(std::vector<StrandDiagram> v) const {
    // Row pivots are their least terms, so xoring a row never disturbs smaller terms.
    for (size_t i = 0; i < v.size();) {
      auto it = rows_.find(v[i]);
      if (it == rows_.end()) {
        ++i;
        continue;
      }
      std::vector<StrandDiagram> m;
      std::set_symmetric_difference(v.begin(), v.end(), it->second.begin(), it->second.end(),
                                    std::back_inserter(m));
      v = std::move(m);
    }
    return v;
  }
  std::map<StrandDiagram, std::vector<StrandDiagram>> rows_;
};

bool injective_on(const ArcDiagram& d, const std::vector<int>& pts) {
  PairSet s = 0;
  for (int p : pts) {
    PairSet b = 1u << d.matching[p];
    if (s & b) return false;
    s |= b;
  }
  return true;
}

}  // namespace

std::vector<AlgElement> basis(const ArcPtr& d, int i) {
  require_valid(*d);
  // Group diagrams by (moving strands, M(S), M(T)); moving strands must not cross.
  std::map<std::tuple<StrandDiagram, PairSet, PairSet>, std::vector<StrandDiagram>> groups;
  for (auto& t : all_strand_diagrams(*d, i)) {
    StrandDiagram mov;
    for (auto& st : t)
      if (st.first != st.second) mov.push_back(st);
    if (inversions(mov) != 0) continue;
    auto S = sources(t), T = targets(t);
    if (!injective_on(*d, S) || !injective_on(*d, T)) continue;
    // Horizontal strands must avoid the moving endpoints.
    bool ok = true;
    for (auto& st : t)
      if (st.first == st.second)
        for (auto& m : mov)
          if (m.first == st.first || m.second == st.first) ok = false;
    if (!ok) continue;
    groups[{mov, pairs_of(*d, S), pairs_of(*d, T)}].push_back(t);
  }
  std::vector<AlgElement> gens;
  Span span;
  for (auto& [key, terms] : groups) {
    AlgElement e(d, terms);
    if (span.add(e)) gens.push_back(e);
  }
  // Saturate under products and differential.
  std::vector<AlgElement> all = gens;
  for (size_t idx = 0; idx < all.size(); ++idx) {
    std::vector<AlgElement> cand;
    cand.push_back(all[idx].d());
    for (auto& g : gens) {
      cand.push_back(all[idx] * g);
      cand.push_back(g * all[idx]);
    }
    for (auto& c : cand)
      if (!c.is_zero() && span.add(c)) all.push_back(c);
  }
  return all;
}

std::vector<AlgElement> full_basis(const ArcPtr& d) {
  std::vector<AlgElement> out;
  for (int i = 0; i <= d->num_pairs(); ++i)
    for (auto& e : basis(d, i)) out.push_back(e);
  return out;
}

std::pair<AlgElement, AlgElement> tensor_split(const AlgElement& e, const ArcPtr& d1,
                                               const ArcPtr& d2) {
  const int n1 = d1->num_points();
  std::set<StrandDiagram> left, right;
  for (auto& t : e.terms()) {
    StrandDiagram a, b;
    for (auto& [x, y] : t) {
      if (x < n1)
        a.emplace_back(x, y);
      else
        b.emplace_back(x - n1, y - n1);
    }
    left.insert(a);
    right.insert(b);
  }
  AlgElement l(d1, {left.begin(), left.end()}), r(d2, {right.begin(), right.end()});
  if (!(tensor_join(l, r, e.ambient()) == e)) throw Error("element does not factor as a tensor");
  return {l, r};
}

AlgElement tensor_join(const AlgElement& a, const AlgElement& b, const ArcPtr& u) {
  const int n1 = a.ambient()->num_points();
  std::vector<StrandDiagram> out;
  for (auto& s : a.terms())
    for (auto& t : b.terms()) {
      StrandDiagram c = s;
      for (auto& [x, y] : t) c.emplace_back(x + n1, y + n1);
      out.push_back(c);
    }
  return AlgElement(u, out);
}

std::string strand_string(const ArcDiagram& d, const StrandDiagram& a) {
  std::string out = "{";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) out += ",";
    out += d.point_names[a[i].first];
    if (a[i].second != a[i].first) out += "->" + d.point_names[a[i].second];
  }
  return out + "}";
}

std::string element_string(const AlgElement& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (auto& t : e.terms()) {
    if (!out.empty()) out += "+";
    out += strand_string(*e.ambient(), t);
  }
  return out;
}

std::optional<std::string> AliasTable::name_of(const AlgElement& e) const {
  for (auto& [n, v] : entries)
    if (v == e) return n;
  return std::nullopt;
}

std::optional<AlgElement> AliasTable::lookup(const std::string& name) const {
  for (auto& [n, v] : entries)
    if (n == name) return v;
  return std::nullopt;
}

Algebra::Algebra(ArcPtr d) : d_(std::move(d)) {
  basis_ = full_basis(d_);
  for (size_t i = 0; i < basis_.size(); ++i)
    for (auto& t : basis_[i].terms()) {
      if (owner_.count(t)) throw Error("basis elements share a strand diagram");
      owner_[t] = static_cast<int>(i);
    }
  const int n = size();
  for (auto& b : basis_) {
    idem_.push_back(std::all_of(b.terms().begin(), b.terms().end(),
                                [](const StrandDiagram& t) { return bsfh::is_idempotent(t); }));
    left_.push_back(b.left_idempotent());
    right_.push_back(b.right_idempotent());
  }
  prod_.assign(n, std::vector<std::vector<int>>(n));
  fact_.assign(n, {});
  dpre_.assign(n, {});
  diff_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    diff_[i] = decompose(basis_[i].d());
    for (int c : diff_[i]) dpre_[c].push_back(i);
    for (int j = 0; j < n; ++j) {
      if (right_[i] != left_[j]) continue;
      prod_[i][j] = decompose(basis_[i] * basis_[j]);
      for (int c : prod_[i][j]) fact_[c].emplace_back(i, j);
    }
  }
  for (auto& a : d_->aliases) {
    auto e = chord_element(d_, a.chords, a.completion);
    if (!e.is_zero()) aliases.entries.emplace_back(a.name, e);
  }
}

int Algebra::idempotent_index(PairSet s) const {
  for (int i = 0; i < size(); ++i)
    if (idem_[i] && left_[i] == s) return i;
  return -1;
}

std::vector<PairSet> Algebra::idempotents() const {
  std::vector<PairSet> out;
  for (int i = 0; i < size(); ++i)
    if (idem_[i]) out.push_back(left_[i]);
  return out;
}

std::vector<int> Algebra::decompose(const AlgElement& e) const {
  std::set<int> idx;
  for (auto& t : e.terms()) {
    auto it = owner_.find(t);
    if (it == owner_.end()) throw Error("element outside A(Z): " + element_string(e));
    idx.insert(it->second);
  }
  AlgElement sum(d_);
  for (int i : idx) sum += basis_[i];
  if (!(sum == e)) throw Error("element is not a sum of basis elements: " + element_string(e));
  return {idx.begin(), idx.end()};
}

int Algebra::index_of(const AlgElement& e) const {
  if (e.is_zero()) return -1;
  auto it = owner_.find(e.terms().front());
  if (it == owner_.end() || !(basis_[it->second] == e)) return -1;
  return it->second;
}

std::string Algebra::name(int i) const {
  if (auto n = aliases.name_of(basis_[i])) return *n;
  if (idem_[i]) return "I" + (left_[i] ? pairset_string(left_[i]) : std::string("0"));
  return element_string(basis_[i]);
}

std::string Algebra::name(const AlgElement& e) const {
  if (e.is_zero()) return "0";
  if (auto n = aliases.name_of(e)) return *n;
  std::string out;
  for (int i : decompose(e)) {
    if (!out.empty()) out += "+";
    out += name(i);
  }
  return out;
}

static std::vector<std::string> split_plus(const std::string& s) {
  // Split on '+' outside braces.
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (c == '+' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

AlgElement Algebra::parse_element(const std::string& token) const {
  AlgElement out(d_);
  if (token == "0") return out;
  if (auto a = aliases.lookup(token)) return *a;
  for (auto& part : split_plus(token)) {
    if (auto a = aliases.lookup(part)) {
      out += *a;
      continue;
    }
    bool found = false;
    for (int i = 0; i < size(); ++i)
      if (name(i) == part) {
        out += basis_[i];
        found = true;
        break;
      }
    if (found) continue;
    if (part.size() < 2 || part.front() != '{' || part.back() != '}')
      throw Error("unknown algebra element '" + part + "'");
    StrandDiagram t;
    std::stringstream ss(part.substr(1, part.size() - 2));
    std::string strand;
    while (std::getline(ss, strand, ',')) {
      auto arrow = strand.find("->");
      std::string a = strand.substr(0, arrow);
      std::string b = arrow == std::string::npos ? a : strand.substr(arrow + 2);
      int p = d_->point_index(a), q = d_->point_index(b);
      if (p < 0 || q < 0) throw Error("unknown point in '" + part + "'");
      t.emplace_back(p, q);
    }
    std::sort(t.begin(), t.end());
    out += AlgElement(d_, {t});
  }
  return out;
}

AlgebraPtr make_algebra(const ArcDiagram& d) {
  return std::make_shared<const Algebra>(std::make_shared<const ArcDiagram>(d));
}

AlgebraPtr trivial_algebra() {
  static AlgebraPtr triv = [] {
    ArcDiagram e;
    e.name = "empty";
    return make_algebra(e);
  }();
  return triv;
}

}  // namespace bsfh
