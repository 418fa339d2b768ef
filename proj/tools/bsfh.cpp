// Command line front end.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "bsfh/acceptance.hpp"
#include "bsfh/fuzz.hpp"
#include "bsfh/invariants.hpp"

using namespace bsfh;

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string idem_string(PairSet s) { return "I" + (s ? pairset_string(s) : std::string("0")); }

std::optional<std::vector<Generator>> class_generators(const HeegaardDiagram& h, int spinc) {
  if (spinc < 0) return std::nullopt;
  auto n = spinc_partition(h, generators(h)).size();
  if (spinc >= static_cast<int>(n))
    throw Error("spin-c class " + std::to_string(spinc) + " out of range (" + std::to_string(n) +
                " classes)");
  return spinc_generators(h, spinc);
}

void export_ops(const std::string& path, const DAStructure& s, const std::string& title) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << format_ops(s, title);
}

// The part of a named `along` (by label), or the first part of a whose reverse is a part of d.
ArcDiagram gluing_part(const HeegaardDiagram& a, const HeegaardDiagram& d, const std::string& along) {
  for (auto& p : a.parts) {
    if (!along.empty()) {
      if (p.label == along) return p.oriented();
      continue;
    }
    for (auto& q : d.parts)
      if (q.oriented() == reverse(p.oriented())) return p.oriented();
  }
  throw Error(along.empty() ? "no pair of opposite boundary parts to glue along"
                            : "no boundary part labelled " + along + " in " + a.name);
}

int cmd_check(const std::string& path) {
  if (ends_with(path, ".arc")) {
    ArcDiagram d = load_arc_diagram(path);
    auto r = validate(d);
    std::cout << d.name << ": " << d.num_points() << " points, " << d.num_pairs() << " pairs\n";
    std::cout << (r.ok ? "valid" : "invalid: " + r.message) << "\n";
    return r.ok ? 0 : 1;
  }
  HeegaardDiagram h = load_heegaard(path);
  auto r = check(h);
  auto adm = admissibility(h);
  auto nice = is_nice(h);
  std::cout << h.name << ": " << h.num_regions() << " regions, " << h.num_pairs() << " alpha arcs, "
            << h.num_alpha_circles() << " alpha circles, " << h.num_betas() << " beta circles, "
            << generators(h).size() << " generators\n";
  for (auto& p : r.problems) std::cout << "problem: " << p << "\n";
  std::cout << "check: " << (r.ok ? "ok" : "failed") << "\n";
  std::cout << "provincially admissible: " << (adm.provincial ? "yes" : "no") << "\n";
  std::cout << "admissible: " << (adm.full ? "yes" : "no") << "\n";
  std::cout << "nice: " << (nice.nice ? "yes" : "no");
  if (!nice.nice) {
    std::cout << " (";
    for (size_t i = 0; i < nice.offending.size(); ++i)
      std::cout << (i ? " " : "") << h.regions[nice.offending[i]].name;
    std::cout << ")";
  }
  std::cout << "\n";
  return r.ok && adm.provincial ? 0 : 1;
}

int cmd_generators(const std::string& path, int spinc) {
  HeegaardDiagram h = load_heegaard(path);
  auto gens = generators(h);
  auto classes = spinc_partition(h, gens);
  for (size_t c = 0; c < classes.size(); ++c) {
    if (spinc >= 0 && static_cast<int>(c) != spinc) continue;
    std::cout << "s" << c << ":";
    for (int i : classes[c].members)
      std::cout << " " << generator_name(h, gens[i]) << "[" << idem_string(occupied(h, gens[i])) << "]";
    std::cout << "\n";
  }
  return 0;
}

int cmd_invariant(const std::string& kind_name, const std::string& path, int spinc,
                  const std::string& out, bool check_laws) {
  HeegaardDiagram h = load_heegaard(path);
  InvariantKind kind = parse_invariant_kind(kind_name);
  Invariant inv = compute_invariant(h, kind, class_generators(h, spinc));
  std::cout << pretty(inv.s);
  std::string title = invariant_kind_name(kind) + " of " + h.name;
  if (spinc >= 0) title += " in spin-c class s" + std::to_string(spinc);
  export_ops(out, inv.s, title);
  if (!check_laws) return 0;
  auto rel = check_relations(inv.s);
  auto gr = check_grading_law(h, inv, true, 8);
  std::cout << "relations: " << (rel.ok ? "ok" : "failed: " + rel.witness) << "\n";
  std::cout << "grading law: " << (gr.ok ? "ok" : "failed: " + gr.witness) << "\n";
  return rel.ok && gr.ok ? 0 : 1;
}

DAStructure tensor(const std::string& a_path, const std::string& d_path, const std::string& along,
                   int spinc_a, int spinc_d) {
  HeegaardDiagram a = load_heegaard(a_path), d = load_heegaard(d_path);
  ArcDiagram part = gluing_part(a, d, along);
  HeegaardDiagram ha = with_roles(a, part, 'A'), hd = with_roles(d, reverse(part), 'D');
  auto ia = compute_invariant(ha, InvariantKind::BSDA, class_generators(ha, spinc_a));
  auto id = compute_invariant(hd, InvariantKind::BSDA, class_generators(hd, spinc_d));
  return box_da(ia.s, id.s);
}

int cmd_glue(const std::string& a_path, const std::string& d_path, const std::string& along,
             const std::string& output, bool pairing, int spinc_a, int spinc_d) {
  HeegaardDiagram a = load_heegaard(a_path), d = load_heegaard(d_path);
  ArcDiagram part = gluing_part(a, d, along);
  if (!pairing) {
    HeegaardDiagram g = glue(a, d, part);
    if (output.empty()) {
      std::cout << format_heegaard(g);
    } else {
      std::ofstream(output) << format_heegaard(g);
      std::cout << g.name << ": " << g.num_regions() << " regions, " << generators(g).size()
                << " generators\n";
    }
    return 0;
  }
  auto ga = class_generators(a, spinc_a), gd = class_generators(d, spinc_d);
  auto pr = chain_level_pairing(a, ga ? *ga : generators(a), d, gd ? *gd : generators(d), part);
  if (!output.empty()) std::ofstream(output) << format_heegaard(pr.glued);
  std::cout << "box tensor:\n" << pretty(pr.box);
  std::cout << "glued diagram:\n" << pretty(pr.invariant.s);
  std::cout << "generators: " << pr.box.size() << " and " << pr.invariant.s.size() << "\n";
  if (pr.invariant.escaped) std::cout << "terms leaving the generator set: " << pr.invariant.escaped << "\n";
  const bool ok = pr.iso.has_value() && pr.invariant.escaped == 0;
  std::cout << "pairing: " << (ok ? "agrees" : "differs") << "\n";
  return ok ? 0 : 1;
}

int cmd_grading(const std::string& path, int spinc) {
  if (ends_with(path, ".arc")) {
    auto d = std::make_shared<const ArcDiagram>(load_arc_diagram(path));
    Algebra A(d);
    GradingGroup G(d);
    for (int i = 0; i < A.size(); ++i) std::cout << A.name(i) << " " << grading_string(G.gr(A.element(i))) << "\n";
    return 0;
  }
  HeegaardDiagram h = load_heegaard(path);
  GradingGroup G(h.zh());
  auto gens = generators(h);
  auto classes = spinc_partition(h, gens);
  for (size_t c = 0; c < classes.size(); ++c) {
    if (spinc >= 0 && static_cast<int>(c) != spinc) continue;
    const Generator& base = gens[classes[c].members.front()];
    std::cout << "s" << c << " base " << generator_name(h, base) << "\n";
    bool first = true;
    for (int i : classes[c].members) {
      GradingCoset g = generator_grading(h, G, gens[i], base);
      if (first) {
        std::cout << "  stabilizer:";
        if (g.stabilizer.empty()) std::cout << " trivial";
        for (auto& s : g.stabilizer) std::cout << " " << grading_string(s);
        std::cout << "\n";
        first = false;
      }
      std::cout << "  " << generator_name(h, gens[i]) << " " << grading_string(g.rep) << "\n";
    }
  }
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& fixtures, const std::string& kind,
               int spinc, int count, unsigned long long seed, int jobs) {
  if (suite == "paper-examples") {
    AcceptanceOptions opt;
    opt.fixtures_dir = fixtures;
    opt.fuzz_count = count;
    opt.fuzz_seed = seed;
    opt.jobs = jobs;
    bool ok = true;
    for (auto& r : run_acceptance(opt)) {
      std::cout << format_result(r) << "\n";
      ok = ok && r.pass;
    }
    return ok ? 0 : 1;
  }
  if (suite == "fuzz") {
    auto r = run_fuzz(count, seed, 3);
    std::cout << r.diagrams << " diagrams, " << r.structures << " structures, " << r.operations
              << " operations, " << r.ambiguous << " skipped\n";
    if (!r.ok) std::cout << "violation: " << r.witness << "\n";
    return r.ok ? 0 : 1;
  }
  if (kind.empty()) throw Error("verify " + suite + " needs --kind");
  HeegaardDiagram h = load_heegaard(suite);
  Invariant inv = compute_invariant(h, parse_invariant_kind(kind), class_generators(h, spinc));
  auto rel = check_relations(inv.s);
  std::cout << "relations: " << rel.checked << " instances, " << (rel.ok ? "ok" : "violated") << "\n";
  bool ok = rel.ok;
  if (!rel.ok) std::cout << "witness: " << rel.witness << "\n";
  for (bool reduced : {false, true}) {
    auto g = check_grading_law(h, inv, reduced, 8);
    std::cout << (reduced ? "reduced " : "") << "grading law: " << g.checked << " terms, "
              << (g.ok ? "ok" : "violated") << "\n";
    if (!g.ok) std::cout << "witness: " << g.witness << "\n";
    ok = ok && g.ok;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bordered sutured Floer homology of nice diagrams"};
  app.require_subcommand(1);

  std::string path, path2, kind, out, along, fixtures = "fixtures";
  int spinc = -1, spinc_a = -1, spinc_d = -1, count = 200, jobs = 1;
  unsigned long long seed = 1;
  bool laws = false, do_reduce = false, pairing = false;

  auto* check = app.add_subcommand("check", "Validate an arc diagram (.arc) or Heegaard diagram (.hd)");
  check->add_option("path", path, "Diagram file")->required();

  auto* gens = app.add_subcommand("generators", "List generators by spin-c class");
  gens->add_option("diagram", path, "Heegaard diagram")->required();
  gens->add_option("--spinc", spinc, "Only this class");

  auto* inv = app.add_subcommand("invariant", "Compute bsd, bsa, bsda or sfc");
  inv->add_option("kind", kind, "bsd|bsa|bsda|sfc")->required();
  inv->add_option("diagram", path, "Heegaard diagram")->required();
  inv->add_option("--spinc", spinc, "Restrict to a spin-c class");
  inv->add_option("--export", out, "Write the operations file");
  inv->add_flag("--check", laws, "Also check the structure relations and the grading law");

  auto* ten = app.add_subcommand("tensor", "Box tensor product of the invariants of two diagrams");
  ten->add_option("a-side", path, "Diagram contributing the A-infinity side")->required();
  ten->add_option("d-side", path2, "Diagram contributing the type D side")->required();
  ten->add_option("--along", along, "Label of the boundary part of a-side to pair");
  ten->add_option("--spinc-a", spinc_a, "Spin-c class of a-side");
  ten->add_option("--spinc-d", spinc_d, "Spin-c class of d-side");
  ten->add_flag("--reduce", do_reduce, "Cancel idempotent terms afterwards");
  ten->add_option("--export", out, "Write the operations file");

  auto* red = app.add_subcommand("reduce", "Reduce a type D invariant or a chain complex");
  red->add_option("kind", kind, "bsd|sfc")->required();
  red->add_option("diagram", path, "Heegaard diagram")->required();
  red->add_option("--spinc", spinc, "Restrict to a spin-c class");
  red->add_option("--export", out, "Write the operations file");

  auto* glu = app.add_subcommand("glue", "Glue two diagrams along opposite boundary parts");
  glu->add_option("a-side", path, "First diagram")->required();
  glu->add_option("d-side", path2, "Second diagram")->required();
  glu->add_option("--along", along, "Label of the boundary part of the first diagram");
  glu->add_option("--output", out, "Write the glued diagram here");
  glu->add_flag("--pairing", pairing, "Compare the glued invariant with the box tensor product");
  glu->add_option("--spinc-a", spinc_a, "Spin-c class of the first diagram");
  glu->add_option("--spinc-d", spinc_d, "Spin-c class of the second diagram");

  auto* gra = app.add_subcommand("grading", "Gradings of algebra elements (.arc) or generators (.hd)");
  gra->add_option("path", path, "Diagram file")->required();
  gra->add_option("--spinc", spinc, "Only this class");

  auto* ver = app.add_subcommand("verify", "Run a check suite: paper-examples, fuzz, or a diagram file");
  ver->add_option("suite", path, "paper-examples | fuzz | <diagram.hd>")->required();
  ver->add_option("--fixtures", fixtures, "Fixture directory");
  ver->add_option("--kind", kind, "Invariant to check for a diagram file");
  ver->add_option("--spinc", spinc, "Restrict to a spin-c class");
  ver->add_option("--count", count, "Random diagrams");
  ver->add_option("--seed", seed, "Random seed");
  ver->add_option("--jobs", jobs, "Evaluate criteria concurrently");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return cmd_check(path);
    if (*gens) return cmd_generators(path, spinc);
    if (*inv) return cmd_invariant(kind, path, spinc, out, laws);
    if (*ten) {
      DAStructure s = tensor(path, path2, along, spinc_a, spinc_d);
      if (do_reduce) s = reduce(s);
      std::cout << pretty(s);
      export_ops(out, s, do_reduce ? "reduced box tensor" : "box tensor");
      return 0;
    }
    if (*red) {
      HeegaardDiagram h = load_heegaard(path);
      Invariant i = compute_invariant(h, parse_invariant_kind(kind), class_generators(h, spinc));
      DAStructure s = reduce(i.s);
      std::cout << pretty(s);
      export_ops(out, s, "reduced " + kind + " of " + h.name);
      return 0;
    }
    if (*glu) return cmd_glue(path, path2, along, out, pairing, spinc_a, spinc_d);
    if (*gra) return cmd_grading(path, spinc);
    if (*ver) return cmd_verify(path, fixtures, kind, spinc, count, seed, jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
