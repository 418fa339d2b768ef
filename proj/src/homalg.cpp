#include "bsfh/homalg.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace bsfh {

namespace {

using TermCount = std::map<DATerm, int>;

void flip(TermCount& t, int a, int y) {
  if (++t[{a, y}] % 2 == 0) t.erase({a, y});
}

std::string idem_name(PairSet s) { return "I" + (s ? pairset_string(s) : std::string("0")); }

PairSet parse_idem(const std::string& tok) {
  if (tok.size() < 2 || tok[0] != 'I') throw Error("bad idempotent '" + tok + "'");
  PairSet s = 0;
  if (tok == "I0") return s;
  for (size_t i = 1; i < tok.size(); ++i) {
    if (tok[i] < '1' || tok[i] > '9') throw Error("bad idempotent '" + tok + "'");
    s |= PairSet(1) << (tok[i] - '1');
  }
  return s;
}

std::string algebra_label(const AlgebraPtr& a) { return a->trivial() ? "1" : a->diagram()->name; }

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a == b || *a->diagram() == *b->diagram();
}

std::string seq_string(const Algebra& B, const std::vector<int>& seq) {
  std::string s;
  for (int b : seq) s += " " + B.name(b);
  return s;
}

}  // namespace

int DAStructure::add_gen(const std::string& name, PairSet left, PairSet right) {
  if (gen_index(name) >= 0) throw Error("duplicate generator " + name);
  gens.push_back({name, left, right});
  return size() - 1;
}

int DAStructure::gen_index(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (gens[i].name == name) return i;
  return -1;
}

void DAStructure::toggle(int x, const std::vector<int>& in, int a, int y) {
  auto& v = ops[{x, in}];
  DATerm t{a, y};
  auto it = std::lower_bound(v.begin(), v.end(), t);
  if (it != v.end() && *it == t)
    v.erase(it);
  else
    v.insert(it, t);
  if (v.empty()) ops.erase({x, in});
}

const std::vector<DATerm>& DAStructure::op(int x, const std::vector<int>& in) const {
  static const std::vector<DATerm> none;
  auto it = ops.find({x, in});
  return it == ops.end() ? none : it->second;
}

int DAStructure::max_inputs() const {
  int m = 0;
  for (auto& [k, v] : ops) m = std::max(m, static_cast<int>(k.second.size()));
  return m;
}

int DAStructure::unit_of(int x) const {
  int i = A->idempotent_index(gens[x].left);
  if (i < 0) throw Error("generator " + gens[x].name + " has no output idempotent");
  return i;
}

std::string DAStructure::kind() const {
  if (is_complex()) return "complex";
  if (is_type_d()) return "D";
  if (is_module()) return "A";
  return "DA";
}

RelationReport check_relations(const DAStructure& s) {
  RelationReport rep;
  const Algebra& A = *s.A;
  const Algebra& B = *s.B;
  auto fail = [&](const std::string& w) {
    if (rep.ok) rep.witness = w;
    rep.ok = false;
  };

  for (auto& [key, terms] : s.ops) {
    auto& [x, seq] = key;
    PairSet cur = s.gens[x].right;
    for (int b : seq) {
      if (B.is_idempotent(b)) fail("idempotent input at " + s.gens[x].name);
      if (B.left(b) != cur) fail("input idempotents do not chain at " + s.gens[x].name);
      cur = B.right(b);
    }
    for (auto& [a, y] : terms) {
      ++rep.checked;
      if (cur != s.gens[y].right || A.left(a) != s.gens[x].left || A.right(a) != s.gens[y].left)
        fail("idempotent mismatch in m(" + s.gens[x].name + seq_string(B, seq) + ") -> " +
             A.name(a) + " " + s.gens[y].name);
    }
  }
  if (!rep.ok) return rep;

  std::set<DAKey> cands;
  for (auto& [key, terms] : s.ops) {
    auto& [x, seq] = key;
    cands.insert(key);
    for (auto& [a, z] : terms)
      for (auto it = s.ops.lower_bound({z, {}}); it != s.ops.end() && it->first.first == z; ++it) {
        std::vector<int> cat = seq;
        cat.insert(cat.end(), it->first.second.begin(), it->first.second.end());
        cands.insert({x, cat});
      }
    for (size_t j = 0; j < seq.size(); ++j) {
      for (int p : B.diff_preimages(seq[j])) {
        auto t = seq;
        t[j] = p;
        cands.insert({x, t});
      }
      for (auto& [p, q] : B.factorizations(seq[j])) {
        if (B.is_idempotent(p) || B.is_idempotent(q)) continue;
        auto t = seq;
        t[j] = p;
        t.insert(t.begin() + j + 1, q);
        cands.insert({x, t});
      }
    }
  }

  for (auto& [x, seq] : cands) {
    ++rep.checked;
    TermCount acc;
    const size_t n = seq.size();
    for (auto& [a, y] : s.op(x, seq))
      for (int d : A.diff(a)) flip(acc, d, y);
    for (size_t i = 0; i <= n; ++i) {
      std::vector<int> head(seq.begin(), seq.begin() + i), tail(seq.begin() + i, seq.end());
      for (auto& [a, z] : s.op(x, head))
        for (auto& [a2, w] : s.op(z, tail))
          for (int p : A.product(a, a2)) flip(acc, p, w);
    }
    for (size_t j = 0; j < n; ++j)
      for (int c : B.diff(seq[j])) {
        if (B.is_idempotent(c)) continue;
        auto t = seq;
        t[j] = c;
        for (auto& [a, y] : s.op(x, t)) flip(acc, a, y);
      }
    for (size_t j = 0; j + 1 < n; ++j)
      for (int c : B.product(seq[j], seq[j + 1])) {
        auto t = seq;
        t[j] = c;
        t.erase(t.begin() + j + 1);
        for (auto& [a, y] : s.op(x, t)) flip(acc, a, y);
      }
    if (!acc.empty()) {
      auto [a, y] = acc.begin()->first;
      fail("relation fails on (" + s.gens[x].name + seq_string(B, seq) + "): term " + A.name(a) +
           " " + s.gens[y].name);
    }
  }
  return rep;
}

std::map<std::pair<std::vector<int>, int>, int> delta_k(const DAStructure& s, int x, int k) {
  std::map<std::pair<std::vector<int>, int>, int> cur{{{{}, x}, 1}};
  for (int step = 0; step < k; ++step) {
    std::map<std::pair<std::vector<int>, int>, int> next;
    for (auto& [key, par] : cur) {
      if (par % 2 == 0) continue;
      for (auto& [a, y] : s.op(key.second, {})) {
        auto seq = key.first;
        seq.push_back(a);
        next[{seq, y}] ^= 1;
      }
    }
    cur.clear();
    for (auto& [key, par] : next)
      if (par) cur[key] = 1;
  }
  return cur;
}

bool is_bounded(const DAStructure& s) {
  std::vector<int> state(s.size(), 0);
  std::function<bool(int)> acyclic = [&](int x) {
    state[x] = 1;
    for (auto& [a, y] : s.op(x, {})) {
      if (state[y] == 1) return false;
      if (state[y] == 0 && !acyclic(y)) return false;
    }
    state[x] = 2;
    return true;
  };
  for (int x = 0; x < s.size(); ++x)
    if (state[x] == 0 && !acyclic(x)) return false;
  return true;
}

DAStructure box_da(const DAStructure& m, const DAStructure& n) {
  if (!same_algebra(m.B, n.A)) throw Error("box tensor: algebras do not match");
  if (!is_bounded(m) && !is_bounded(n)) throw Error("box tensor: neither factor is bounded");
  DAStructure out(m.A, n.B);
  std::map<std::pair<int, int>, int> index;
  for (int x = 0; x < m.size(); ++x)
    for (int y = 0; y < n.size(); ++y)
      if (m.gens[x].right == n.gens[y].left) {
        index[{x, y}] = out.add_gen(m.gens[x].name + "⊠" + n.gens[y].name, m.gens[x].left,
                                    n.gens[y].right);
      }
  const int arity = std::max(1, m.max_inputs());
  const Algebra& MB = *m.B;

  // Chains of n-operations from y; each step consumes one input block and emits one element.
  struct Frame {
    int y;
    std::vector<int> consumed, emitted;
  };
  for (auto& [xy, g] : index) {
    auto [x, y0] = xy;
    std::vector<Frame> stack{{y0, {}, {}}};
    while (!stack.empty()) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      auto target = [&](int xm, int yn) {
        auto it = index.find({xm, yn});
        if (it == index.end()) throw Error("box tensor: idempotents do not match");
        return it->second;
      };
      bool has_idem = std::any_of(f.emitted.begin(), f.emitted.end(),
                                  [&](int b) { return MB.is_idempotent(b); });
      if (has_idem) {
        if (f.emitted.size() == 1) out.toggle(g, f.consumed, m.unit_of(x), target(x, f.y));
      } else {
        for (auto& [a, x2] : m.op(x, f.emitted)) out.toggle(g, f.consumed, a, target(x2, f.y));
      }
      if (has_idem || static_cast<int>(f.emitted.size()) >= arity) continue;
      for (auto it = n.ops.lower_bound({f.y, {}}); it != n.ops.end() && it->first.first == f.y;
           ++it)
        for (auto& [b, y2] : it->second) {
          Frame nf{y2, f.consumed, f.emitted};
          nf.consumed.insert(nf.consumed.end(), it->first.second.begin(), it->first.second.end());
          nf.emitted.push_back(b);
          stack.push_back(std::move(nf));
        }
    }
  }
  return out;
}

DAStructure identity_da(const ArcPtr& z) {
  AlgebraPtr a = make_algebra(*z);
  DAStructure out(a, a);
  std::map<PairSet, int> gen;
  for (PairSet s : a->idempotents()) gen[s] = out.add_gen(idem_name(s), s, s);
  for (int i = 0; i < a->size(); ++i)
    if (!a->is_idempotent(i)) out.toggle(gen.at(a->left(i)), {i}, i, gen.at(a->right(i)));
  return out;
}

DAStructure cancel(const DAStructure& s, int from, int to) {
  if (!s.B->trivial()) throw Error("cancellation needs a type D structure or a complex");
  if (from == to) throw Error("cannot cancel a generator against itself");
  const Algebra& A = *s.A;
  std::vector<int> to_terms;
  for (auto& [a, y] : s.op(from, {}))
    if (y == to) to_terms.push_back(a);
  if (to_terms.size() != 1 || !A.is_idempotent(to_terms[0]))
    throw Error("coefficient of " + s.gens[to].name + " in d(" + s.gens[from].name +
                ") is not an idempotent");
  DAStructure out(s.A, s.B);
  std::vector<int> remap(s.size(), -1);
  for (int x = 0; x < s.size(); ++x)
    if (x != from && x != to) remap[x] = out.add_gen(s.gens[x].name, s.gens[x].left, s.gens[x].right);
  for (int w = 0; w < s.size(); ++w) {
    if (remap[w] < 0) continue;
    for (auto& [a, y] : s.op(w, {})) {
      if (y == to) {
        for (auto& [b, z] : s.op(from, {})) {
          if (z == to || z == from) continue;
          for (int p : A.product(a, b)) out.toggle(remap[w], {}, p, remap[z]);
        }
      } else if (y != from) {
        out.toggle(remap[w], {}, a, remap[y]);
      }
    }
  }
  return out;
}

DAStructure reduce(const DAStructure& s, bool reverse_order) {
  DAStructure cur = s;
  for (;;) {
    bool done = true;
    for (int k = 0; k < cur.size() && done; ++k) {
      int x = reverse_order ? cur.size() - 1 - k : k;
      std::map<int, std::vector<int>> by_target;
      for (auto& [a, y] : cur.op(x, {})) by_target[y].push_back(a);
      for (auto& [y, as] : by_target)
        if (y != x && as.size() == 1 && cur.A->is_idempotent(as[0])) {
          cur = cancel(cur, x, y);
          done = false;
          break;
        }
    }
    if (done) return cur;
  }
}

int homology_rank(const DAStructure& c) {
  if (!c.is_complex()) throw Error("homology needs a chain complex");
  const int n = c.size();
  std::vector<std::vector<char>> rows;
  for (int x = 0; x < n; ++x) {
    std::vector<char> r(n, 0);
    for (auto& [a, y] : c.op(x, {})) r[y] ^= 1;
    rows.push_back(r);
  }
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (rows[r][col]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    for (int r = 0; r < n; ++r)
      if (r != rank && rows[r][col])
        for (int k = 0; k < n; ++k) rows[r][k] ^= rows[rank][k];
    ++rank;
  }
  return n - 2 * rank;
}

std::optional<std::vector<int>> isomorphism(const DAStructure& a, const DAStructure& b) {
  if (a.size() != b.size() || a.ops.size() != b.ops.size()) return std::nullopt;
  if (!same_algebra(a.A, b.A) || !same_algebra(a.B, b.B)) return std::nullopt;
  const int n = a.size();
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  auto matches = [&]() {
    for (auto& [key, terms] : a.ops) {
      std::vector<DATerm> mapped;
      for (auto& [x, y] : terms) mapped.push_back({x, map[y]});
      std::sort(mapped.begin(), mapped.end());
      if (b.op(map[key.first], key.second) != mapped) return false;
    }
    return true;
  };
  std::function<bool(int)> go = [&](int i) {
    if (i == n) return matches();
    for (int j = 0; j < n; ++j) {
      if (used[j] || a.gens[i].left != b.gens[j].left || a.gens[i].right != b.gens[j].right)
        continue;
      map[i] = j;
      used[j] = true;
      if (go(i + 1)) return true;
      used[j] = false;
    }
    map[i] = -1;
    return false;
  };
  if (go(0)) return map;
  return std::nullopt;
}

std::string format_ops(const DAStructure& s, const std::string& title) {
  std::ostringstream os;
  if (!title.empty()) os << "# " << title << "\n";
  os << "type " << s.kind() << "\n";
  os << "out " << algebra_label(s.A) << "\n";
  os << "in " << algebra_label(s.B) << "\n";
  for (auto& g : s.gens) os << "gen " << g.name << " " << idem_name(g.left) << " " << idem_name(g.right) << "\n";
  for (auto& [key, terms] : s.ops)
    for (auto& [a, y] : terms) {
      os << "m" << key.second.size() + 1 << " " << s.gens[key.first].name << " |";
      for (int b : key.second) os << " " << s.B->name(b);
      os << " -> " << s.A->name(a) << " " << s.gens[y].name << "\n";
    }
  return os.str();
}

DAStructure parse_ops(const std::string& text, AlgebraPtr A, AlgebraPtr B) {
  DAStructure s(A, B);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto index = [&](const Algebra& alg, const std::string& tok) {
    int i = alg.index_of(alg.parse_element(tok));
    if (i < 0) throw Error("line " + std::to_string(lineno) + ": '" + tok + "' is not a basis element");
    return i;
  };
  auto gen = [&](const std::string& name) {
    int i = s.gen_index(name);
    if (i < 0) throw Error("line " + std::to_string(lineno) + ": unknown generator " + name);
    return i;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& head = tok[0];
    if (head == "type") continue;
    if (head == "out" || head == "in") {
      const AlgebraPtr& alg = head == "out" ? A : B;
      if (tok.size() != 2 || tok[1] != algebra_label(alg))
        throw Error("line " + std::to_string(lineno) + ": algebra mismatch, expected " + algebra_label(alg));
    } else if (head == "gen") {
      if (tok.size() != 4) throw Error("line " + std::to_string(lineno) + ": gen <name> <left> <right>");
      s.add_gen(tok[1], parse_idem(tok[2]), parse_idem(tok[3]));
    } else if (head.size() > 1 && head[0] == 'm') {
      auto bar = std::find(tok.begin(), tok.end(), "|");
      auto arrow = std::find(tok.begin(), tok.end(), "->");
      if (tok.size() < 3 || bar != tok.begin() + 2 || arrow == tok.end() || tok.end() - arrow != 3)
        throw Error("line " + std::to_string(lineno) + ": m<k> <gen> | <inputs> -> <output> <gen>");
      std::vector<int> inputs;
      for (auto it = bar + 1; it != arrow; ++it) inputs.push_back(index(*B, *it));
      if (std::stoi(head.substr(1)) != static_cast<int>(inputs.size()) + 1)
        throw Error("line " + std::to_string(lineno) + ": arity does not match " + head);
      s.toggle(gen(tok[1]), inputs, index(*A, arrow[1]), gen(arrow[2]));
    } else {
      throw Error("line " + std::to_string(lineno) + ": unknown directive " + head);
    }
  }
  return s;
}

std::string pretty(const DAStructure& s) {
  std::ostringstream os;
  for (auto it = s.ops.begin(); it != s.ops.end(); ++it) {
    auto& [x, seq] = it->first;
    if (seq.empty() && s.B->trivial()) {
      os << "d (" << s.gens[x].name << ") = ";
    } else {
      os << "m" << seq.size() + 1 << " ((" << s.gens[x].name << ")";
      for (int b : seq) os << ", " << s.B->name(b);
      os << ") = ";
    }
    bool first = true;
    for (auto& [a, y] : it->second) {
      if (!first) os << " + ";
      first = false;
      if (!s.A->trivial()) os << s.A->name(a) << " ";
      os << "(" << s.gens[y].name << ")";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace bsfh
