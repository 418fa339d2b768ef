#include "bsfh/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>

#include "bsfh/fuzz.hpp"
#include "bsfh/invariants.hpp"
#include "bsfh/verify.hpp"

namespace bsfh {

namespace {

struct Fail {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Fail{what};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Fixtures {
  std::string dir;
  HeegaardDiagram load(const std::string& n) const { return load_heegaard(dir + "/" + n + ".hd"); }
  ArcPtr arc(const std::string& n) const {
    return std::make_shared<const ArcDiagram>(load_arc_diagram(dir + "/" + n + ".arc"));
  }
  // Same generators, idempotents and operations as the stored table.
  void expect(const DAStructure& s, const std::string& file) const {
    DAStructure e = parse_ops(read_file(dir + "/" + file), s.A, s.B);
    bool same = e.size() == s.size() && e.ops == s.ops;
    for (int i = 0; same && i < s.size(); ++i)
      same = e.gens[i].name == s.gens[i].name && e.gens[i].left == s.gens[i].left &&
             e.gens[i].right == s.gens[i].right;
    require(same, file + " differs from the computed table:\n" + format_ops(s));
  }
};

// The class of T whose generator occupies the same arcs as the generator of P.
int matching_class(const HeegaardDiagram& t, const HeegaardDiagram& p) {
  auto pg = generators(p);
  require(pg.size() == 1, "P has " + std::to_string(pg.size()) + " generators");
  auto gens = generators(t);
  auto classes = spinc_partition(t, gens);
  for (size_t c = 0; c < classes.size(); ++c)
    if (occupied(t, gens[classes[c].members.front()]) == occupied(p, pg[0]))
      return static_cast<int>(c);
  throw Fail{"no class of T matches the occupancy of P"};
}

// W generators occupying the arcs left free by the single generator of a tube class.
std::vector<Generator> w_partners(const HeegaardDiagram& w, const HeegaardDiagram& t,
                                  const Generator& x) {
  const PairSet want = ((PairSet(1) << t.num_pairs()) - 1) & ~occupied(t, x);
  std::vector<Generator> out;
  for (auto& g : generators(w))
    if (occupied(w, g) == want) out.push_back(g);
  return out;
}

struct Named {
  std::string name;
  const HeegaardDiagram* h = nullptr;  // set for computed invariants
  Invariant inv;
  DAStructure s;
};

// Every structure of the fixture suite: computed, tensored, reduced and glued.
std::vector<Named> fixture_structures(const Fixtures& fx, std::deque<HeegaardDiagram>& store) {
  store.clear();
  for (auto n : {"M1", "M2", "M3", "T", "P", "W"}) store.push_back(fx.load(n));
  const HeegaardDiagram &m1 = store[0], &m2 = store[1], &m3 = store[2], &t = store[3],
                        &p = store[4], &w = store[5];
  std::vector<Named> out;
  auto add = [&](const std::string& name, const HeegaardDiagram& h, Invariant inv) {
    DAStructure s = inv.s;
    out.push_back({name, &h, std::move(inv), std::move(s)});
  };
  auto add_plain = [&](const std::string& name, DAStructure s) {
    out.push_back({name, nullptr, Invariant{}, std::move(s)});
  };
  add("bsd(M1)", m1, compute_invariant(m1, InvariantKind::BSD));
  add("bsa(M1)", m1, compute_invariant(m1, InvariantKind::BSA));
  add("bsd(M2)", m2, compute_invariant(m2, InvariantKind::BSD));
  add("bsa(M2)", m2, compute_invariant(m2, InvariantKind::BSA));
  add("bsd(M3)", m3, compute_invariant(m3, InvariantKind::BSD));
  add("bsa(M3)", m3, compute_invariant(m3, InvariantKind::BSA));
  for (int c = 0; c < 4; ++c)
    add("bsda(M3,s" + std::to_string(c) + ")", m3,
        compute_invariant(m3, InvariantKind::BSDA, spinc_generators(m3, c)));
  add("bsd(P)", p, compute_invariant(p, InvariantKind::BSD));
  for (int c : {0, 3})
    add("bsd(T,s" + std::to_string(c) + ")", t,
        compute_invariant(t, InvariantKind::BSD, spinc_generators(t, c)));
  add_plain("identity(W4)", identity_da(fx.arc("W4")));
  add_plain("identity(V4)", identity_da(fx.arc("V4")));

  auto find = [&](const std::string& name) -> const DAStructure& {
    for (auto& n : out)
      if (n.name == name) return n.s;
    throw Error("no structure " + name);
  };
  DAStructure box = box_da(find("bsda(M3,s2)"), find("bsd(M1)"));
  add_plain("bsda(M3,s2) box bsd(M1)", box);
  add_plain("reduced bsda(M3,s2) box bsd(M1)", reduce(box));
  for (int c = 0; c < 4; ++c) {
    auto pr = chain_level_pairing(m3, spinc_generators(m3, c), m1, generators(m1),
                                  m3.parts[1].oriented());
    store.push_back(pr.glued);
    add("bsd(M3 u M1,s" + std::to_string(c) + ")", store.back(), std::move(pr.invariant));
  }
  for (const HeegaardDiagram* tube : {&t, &p}) {
    auto tg = spinc_generators(*tube, 0);
    auto wg = w_partners(w, *tube, tg[0]);
    add("bsa(W) over " + tube->name, w, compute_invariant(w, InvariantKind::BSA, wg));
    auto pr = chain_level_pairing(w, wg, *tube, tg, w.parts[0].oriented());
    add_plain("bsa(W) box bsd(" + tube->name + ")", pr.box);
    store.push_back(pr.glued);
    add("sfc(W u " + tube->name + ")", store.back(), std::move(pr.invariant));
  }
  return out;
}

std::string criterion1(const Fixtures&) {
  auto t0 = std::chrono::steady_clock::now();
  long long gens = 0, checks = 0;
  auto comps = segment_compositions(5, 5);
  for (auto& sizes : comps) {
    AxiomReport r = check_strand_axioms(sizes);
    require(r.violations == 0, r.witness);
    gens += r.generators;
    checks += r.checks;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(secs < 60, "took " + std::to_string(secs) + " s");
  std::ostringstream os;
  os << comps.size() << " algebras, " << gens << " generators, " << checks << " checks, "
     << static_cast<int>(secs * 1000) << " ms";
  return os.str();
}

std::string criterion2(const Fixtures& fx) {
  auto dims = [](const ArcPtr& d) {
    std::vector<size_t> v;
    for (int i = 0; i <= d->num_pairs(); ++i) v.push_back(basis(d, i).size());
    return v;
  };
  auto w = fx.arc("W4"), v = fx.arc("V4");
  require(dims(w) == std::vector<size_t>{1, 6, 7, 1}, "A(W4) summand dimensions");
  require(dims(v) == std::vector<size_t>{1, 5, 6, 1}, "A(V4) summand dimensions");
  Algebra A(w);
  auto alias = [&](const std::string& n) {
    auto e = A.aliases.lookup(n);
    require(e.has_value(), "missing alias " + n);
    return *e;
  };
  require(alias("r'1") * alias("r'2") == alias("r'12"), "r'1 r'2 != r'12");
  require(alias("r''12").d() == alias("r''2") * alias("r''1"), "d r''12 != r''2 r''1");
  for (auto& b : full_basis(v)) require(b.d().is_zero(), "A(V4) has a differential");
  return "A(W4) 1,6,7,1; A(V4) 1,5,6,1; product and differential match";
}

std::string criterion3(const Fixtures& fx) {
  auto m1 = fx.load("M1"), m3 = fx.load("M3");
  auto d1 = compute_invariant(m1, InvariantKind::BSD).s;
  auto a1 = compute_invariant(m1, InvariantKind::BSA).s;
  require(pretty(d1) == "d (y) = r''2 (x)\n", "bsd(M1):\n" + pretty(d1));
  require(pretty(a1) == "m2 ((y), -r'2) = (x)\n", "bsa(M1):\n" + pretty(a1));
  fx.expect(d1, "M1.bsd.ops");
  fx.expect(a1, "M1.bsa.ops");
  for (int c : {0, 2, 3}) {
    auto s = compute_invariant(m3, InvariantKind::BSDA, spinc_generators(m3, c)).s;
    if (c != 2) require(s.size() == 1 && s.ops.empty(), "bsda(M3,s" + std::to_string(c) + ")");
    fx.expect(s, "M3.bsda.s" + std::to_string(c) + ".ops");
  }
  return "bsd(M1), bsa(M1), bsda(M3,s0|s2|s3) match";
}

std::string criterion4(const Fixtures& fx) {
  auto m1 = fx.load("M1"), m2 = fx.load("M2"), m3 = fx.load("M3");
  auto box = box_da(compute_invariant(m3, InvariantKind::BSDA, spinc_generators(m3, 2)).s,
                    compute_invariant(m1, InvariantKind::BSD).s);
  require(box.size() == 4, "box has " + std::to_string(box.size()) + " generators");
  fx.expect(box, "M3xM1.bsd.ops");
  auto red = reduce(box);
  auto target = compute_invariant(m2, InvariantKind::BSD).s;
  require(pretty(target) == "d (u) = s''2s''1 (v)\n", "bsd(M2):\n" + pretty(target));
  require(isomorphism(red, target).has_value(), "reduced box is not isomorphic to bsd(M2)");
  return "4 generators; reduced box isomorphic to bsd(M2)";
}

std::string criterion5(const Fixtures& fx, const AcceptanceOptions& opt) {
  std::deque<HeegaardDiagram> store;
  auto all = fixture_structures(fx, store);
  long long checked = 0;
  for (auto& n : all) {
    auto r = check_relations(n.s);
    require(r.ok, n.name + ": " + r.witness);
    checked += r.checked;
  }
  require(all.size() >= 10, "only " + std::to_string(all.size()) + " structures");
  auto f = run_fuzz(opt.fuzz_count, opt.fuzz_seed, 3);
  require(f.ok, "fuzz: " + f.witness);
  require(f.diagrams == opt.fuzz_count, "fuzz produced " + std::to_string(f.diagrams) + " diagrams");
  std::ostringstream os;
  os << all.size() << " fixture structures (" << checked << " relation instances); "
     << f.diagrams << " random diagrams, " << f.structures << " structures, " << f.operations
     << " operations";
  if (f.ambiguous) os << ", " << f.ambiguous << " skipped as ambiguous";
  return os.str();
}

std::string criterion6(const Fixtures& fx) {
  auto w = fx.load("W");
  int terms = 0;
  for (auto name : {"T", "P"}) {
    auto t = fx.load(name);
    auto tg = spinc_generators(t, matching_class(t, fx.load("P")));
    auto pr = chain_level_pairing(w, w_partners(w, t, tg[0]), t, tg, w.parts[0].oriented());
    require(pr.invariant.kind == InvariantKind::SFC, std::string("W u ") + name + " is not closed");
    require(pr.invariant.escaped == 0, std::string("W u ") + name + ": terms leave the class");
    require(pr.box.size() > 0 && pr.iso.has_value(),
            std::string("W u ") + name + ":\nbox\n" + pretty(pr.box) + "sfc\n" + pretty(pr.invariant.s));
    // Term for term under the canonical bijection x (x) y -> glued generator.
    for (auto& [key, ts] : pr.box.ops)
      for (auto& [a, y] : ts) {
        (void)a;
        auto& img = pr.invariant.s.op((*pr.iso)[key.first], {});
        require(std::count(img.begin(), img.end(), DATerm{0, (*pr.iso)[y]}) == 1,
                std::string("W u ") + name + ": missing term");
        ++terms;
      }
  }
  auto m1 = fx.load("M1"), m3 = fx.load("M3");
  for (int c = 0; c < 4; ++c) {
    auto pr = chain_level_pairing(m3, spinc_generators(m3, c), m1, generators(m1),
                                  m3.parts[1].oriented());
    require(pr.iso.has_value() && pr.invariant.escaped == 0,
            "M3 u M1 class " + std::to_string(c) + ":\n" + pretty(pr.box) + pretty(pr.invariant.s));
  }
  return "W u T and W u P agree with the box tensor (" + std::to_string(terms) +
         " terms); M3 u M1 agrees in all classes";
}

std::string criterion7(const Fixtures& fx) {
  std::deque<HeegaardDiagram> store;
  auto all = fixture_structures(fx, store);
  int terms = 0, structures = 0;
  for (auto& n : all) {
    if (!n.h) continue;
    ++structures;
    for (bool reduced : {false, true}) {
      auto r = check_grading_law(*n.h, n.inv, reduced, 8);
      require(r.ok, n.name + (reduced ? " (reduced): " : ": ") + r.witness);
      if (reduced) terms += r.checked;
    }
  }
  return std::to_string(terms) + " terms in " + std::to_string(structures) +
         " computed structures, plain and reduced, lattice and depth 8 search";
}

std::string criterion8(const Fixtures& fx) {
  auto t = fx.load("T"), p = fx.load("P");
  int k = matching_class(t, p);
  auto dt = compute_invariant(t, InvariantKind::BSD, spinc_generators(t, k)).s;
  auto dp = compute_invariant(p, InvariantKind::BSD).s;
  require(dt.size() == 1 && dt.ops.empty(), "bsd(T,s" + std::to_string(k) + "):\n" + format_ops(dt));
  require(dp.size() == 1 && dp.ops.empty(), "bsd(P):\n" + format_ops(dp));
  require(isomorphism(dt, dp).has_value(), "bsd(P) and bsd(T) are not isomorphic");
  return "bsd(P) and bsd(T,s" + std::to_string(k) + ") have one generator each and agree";
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  const Fixtures fx{opt.fixtures_dir};
  const std::vector<std::pair<std::string, std::function<std::string()>>> items = {
      {"strands algebra axioms", [&] { return criterion1(fx); }},
      {"algebra tables", [&] { return criterion2(fx); }},
      {"invariants of M1 and M3", [&] { return criterion3(fx); }},
      {"box tensor of M3 and M1 reduces to M2", [&] { return criterion4(fx); }},
      {"structure relations", [&] { return criterion5(fx, opt); }},
      {"chain level pairing", [&] { return criterion6(fx); }},
      {"grading laws", [&] { return criterion7(fx); }},
      {"bsd(P) and bsd(T, s_k)", [&] { return criterion8(fx); }},
  };
  auto run = [&](size_t i) {
    CriterionResult r;
    r.id = static_cast<int>(i) + 1;
    r.title = items[i].first;
    try {
      r.detail = items[i].second();
      r.pass = true;
    } catch (const Fail& f) {
      r.detail = f.what;
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    return r;
  };
  std::vector<CriterionResult> out(items.size());
  if (opt.jobs > 1) {
    std::vector<std::future<CriterionResult>> fut;
    for (size_t i = 0; i < items.size(); ++i) fut.push_back(std::async(std::launch::async, run, i));
    for (size_t i = 0; i < items.size(); ++i) out[i] = fut[i].get();
  } else {
    for (size_t i = 0; i < items.size(); ++i) out[i] = run(i);
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  return "criterion " + std::to_string(r.id) + ": " + (r.pass ? "PASS " : "FAIL ") + r.title +
         " (" + r.detail + ")";
}

}  // namespace bsfh
