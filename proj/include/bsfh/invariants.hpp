#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsfh/diagram.hpp"
#include "bsfh/homalg.hpp"

namespace bsfh {

enum class InvariantKind { BSD, BSA, BSDA, SFC };

InvariantKind parse_invariant_kind(const std::string& s);
std::string invariant_kind_name(InvariantKind k);

// Boundary parts assigned to one side, with the induced arc diagram and index maps.
struct SideData {
  ArcDiagram z;                 // union of the oriented parts on this side
  std::vector<int> point;       // Z_H point -> point of z, or -1
  std::vector<int> pair;        // Z_H pair -> pair of z, or -1
  std::vector<int> zh_interval;  // interval of z -> interval of Z_H
  int num_pairs() const { return z.num_pairs(); }
};

// One counted domain: a term of m(x, inputs) = output (x) y.
struct Contribution {
  int x = -1, y = -1;  // indices into Invariant::gens
  Domain domain;
  std::vector<int> inputs;  // basis indices of the input algebra
  std::vector<int> output;  // basis indices of the output algebra
};

struct Invariant {
  InvariantKind kind = InvariantKind::BSD;
  SideData d, a;  // type D side (algebra over -z) and A-infinity side
  std::vector<Generator> gens;
  DAStructure s;
  std::vector<Contribution> contributions;
  int escaped = 0;  // index one terms whose target is outside the generator list
};

// Counts embedded index one discs, and sets of single-chord discs at one height on the
// A-infinity side. Restricts to `subset` when given. Throws on inadmissible
// diagrams and on discs whose chord heights are not determined combinatorially.
Invariant compute_invariant(const HeegaardDiagram& h, InvariantKind kind,
                            const std::optional<std::vector<Generator>>& subset = std::nullopt);

// Generators of the spin-c class with the given index in spinc_partition order.
std::vector<Generator> spinc_generators(const HeegaardDiagram& h, int cls);

struct GradingLawReport {
  bool ok = true;
  int checked = 0;
  std::string witness;
};

// For every contribution: gr(y) phi(gr b) = gr(x) prod gr(a_i) lambda^(n-1) in P\Gr(Z_H),
// checked by the lattice decision and by word search at the given depth. With `reduced`
// both sides are conjugated by the grading reduction of Z_H.
GradingLawReport check_grading_law(const HeegaardDiagram& h, const Invariant& inv,
                                   bool reduced, int depth = 8);

// Copy of h in which `part` has the given side and every other part the opposite one.
HeegaardDiagram with_roles(const HeegaardDiagram& h, const ArcDiagram& part, char role);

// Box tensor product of the invariants of two diagrams against the invariant of the diagram
// glued along `along` (a part of a_side whose reverse is a part of d_side). The A side
// contributes its A-infinity structure on `along`, the D side its type D structure.
struct Pairing {
  DAStructure box;
  HeegaardDiagram glued;
  Invariant invariant;  // of the glued diagram, restricted to the glued generators
  std::optional<std::vector<int>> iso;  // generators of box -> invariant
};
Pairing chain_level_pairing(const HeegaardDiagram& a_side, const std::vector<Generator>& a_gens,
                            const HeegaardDiagram& d_side, const std::vector<Generator>& d_gens,
                            const ArcDiagram& along);

}  // namespace bsfh
