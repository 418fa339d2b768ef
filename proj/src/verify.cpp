#include "bsfh/verify.hpp"

#include <map>

namespace bsfh {

namespace {

using Sum = std::vector<StrandDiagram>;

Sum normal(Sum v) {
  std::sort(v.begin(), v.end());
  Sum out;
  for (size_t i = 0; i < v.size();) {
    size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2) out.push_back(v[i]);
    i = j;
  }
  return out;
}

Sum mul(const Sum& a, const Sum& b) {
  Sum out;
  for (auto& x : a)
    for (auto& y : b)
      if (auto z = multiply(x, y)) out.push_back(*z);
  return normal(out);
}

Sum d(const Sum& a) {
  Sum out;
  for (auto& x : a)
    for (auto& y : differential(x)) out.push_back(y);
  return normal(out);
}

Sum plus(Sum a, const Sum& b) {
  a.insert(a.end(), b.begin(), b.end());
  return normal(a);
}

}  // namespace

AxiomReport check_strand_axioms(const std::vector<int>& sizes) {
  ArcDiagram amb = bare_segments(sizes);
  auto gens = all_strand_diagrams(amb);
  AxiomReport r;
  r.generators = static_cast<long long>(gens.size());
  std::map<std::vector<int>, std::vector<int>> by_source;
  for (size_t i = 0; i < gens.size(); ++i) by_source[sources(gens[i])].push_back(static_cast<int>(i));
  auto fail = [&](const std::string& what, const StrandDiagram& a) {
    if (r.violations++ == 0) r.witness = what + " at " + strand_string(amb, a);
  };
  for (auto& a : gens) {
    Sum sa{a};
    ++r.checks;
    if (!d(d(sa)).empty()) fail("d^2 != 0", a);
    for (int j : by_source[targets(a)]) {
      Sum sb{gens[j]};
      Sum ab = mul(sa, sb);
      ++r.checks;
      if (d(ab) != plus(mul(d(sa), sb), mul(sa, d(sb)))) fail("Leibniz", a);
      for (int k : by_source[targets(gens[j])]) {
        Sum sc{gens[k]};
        ++r.checks;
        if (mul(ab, sc) != mul(sa, mul(sb, sc))) fail("associativity", a);
      }
    }
  }
  return r;
}

static void compose(int remaining, int parts_left, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (!cur.empty()) out.push_back(cur);
  if (parts_left == 0) return;
  for (int v = 1; v <= remaining; ++v) {
    cur.push_back(v);
    compose(remaining - v, parts_left - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> segment_compositions(int max_total, int max_parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  compose(max_total, max_parts, cur, out);
  return out;
}

}  // namespace bsfh
