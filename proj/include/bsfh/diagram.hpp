#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bsfh/arc_diagram.hpp"
#include "bsfh/grading.hpp"
#include "bsfh/linalg.hpp"
#include "bsfh/strands.hpp"

namespace bsfh {

enum class EdgeKind { AlphaArc, AlphaCircle, Beta, Z, Free };
enum class VertexKind { Crossing, ZPoint, Plain };

std::string edge_kind_name(EdgeKind k);
inline bool is_alpha(EdgeKind k) { return k == EdgeKind::AlphaArc || k == EdgeKind::AlphaCircle; }
inline bool is_boundary(EdgeKind k) { return k == EdgeKind::Z || k == EdgeKind::Free; }

struct HVertex {
  std::string name;
  VertexKind kind = VertexKind::Plain;
  int point = -1;  // Z_H point for ZPoint vertices
};

struct HEdge {
  std::string name;
  EdgeKind kind = EdgeKind::Free;
  std::string curve_name;  // alpha or beta curve this edge lies on
  int curve = -1;  // alpha curve index (arcs first, then circles) or beta index
  int from = -1;
  int to = -1;
  int interval = -1;  // Z_H interval for Z edges
};

// One traversal of an edge by a region boundary; forward means the region is on the left.
struct Side {
  int edge = -1;
  bool forward = true;
  bool operator==(const Side&) const = default;
};

struct HRegion {
  std::string name;
  std::vector<std::vector<Side>> cycles;
  int genus = 0;
};

// A component of Z_H. The diagram carries reverse(base) when reversed is set.
struct BoundaryPart {
  std::string label;
  std::string source;  // arc file as written, empty for inline parts
  ArcDiagram base;
  bool reversed = false;
  char side = 'D';
  int point_offset = 0;
  int pair_offset = 0;
  ArcDiagram oriented() const { return reversed ? reverse(base) : base; }
};

// Corner of a region boundary cycle: the junction between consecutive sides.
struct Corner {
  int vertex = -1;
  int cycle = 0;
  int index = 0;  // junction after side `index`
  enum Kind { None, Out, In, Boundary } kind = None;
};

class HeegaardDiagram {
 public:
  std::string name;
  std::vector<BoundaryPart> parts;
  std::vector<HVertex> vertices;
  std::vector<HEdge> edges;
  std::vector<HRegion> regions;
  std::vector<std::string> alpha_names;  // arcs (indexed by Z_H pair) then circles
  std::vector<std::string> beta_names;
  int num_alpha_arcs = 0;

  // Builds Z_H, derived tables and validates the combinatorial map; throws Error.
  void finalize();

  const ArcPtr& zh() const { return zh_; }
  int num_pairs() const { return num_alpha_arcs; }
  int num_alpha_circles() const { return static_cast<int>(alpha_names.size()) - num_alpha_arcs; }
  int num_betas() const { return static_cast<int>(beta_names.size()); }
  int num_regions() const { return static_cast<int>(regions.size()); }

  bool boundary_region(int r) const { return boundary_region_[r]; }
  int left_region(int e) const { return left_[e]; }
  int right_region(int e) const { return right_[e]; }
  int alpha_of(int v) const { return alpha_at_[v]; }
  int beta_of(int v) const { return beta_at_[v]; }
  const std::vector<int>& crossings() const { return crossings_; }
  const std::vector<int>& crossings_on_beta(int b) const { return on_beta_[b]; }
  const std::vector<Corner>& corners(int r) const { return corners_[r]; }
  // Regions meeting vertex v, once per corner visit.
  const std::vector<int>& visits(int v) const { return visits_[v]; }
  int euler4(int r) const { return euler4_[r]; }  // 4 e(R)
  int chi(int r) const;
  int side_start(const Side& s) const { return s.forward ? edges[s.edge].from : edges[s.edge].to; }
  int side_end(const Side& s) const { return s.forward ? edges[s.edge].to : edges[s.edge].from; }

  int vertex_index(const std::string& n) const;
  int edge_index(const std::string& n) const;
  int part_of_pair(int pair) const;
  int part_of_point(int p) const;
  // Z_H pairs on parts marked with the given side.
  PairSet side_pairs(char side) const;

 private:
  ArcPtr zh_;
  std::vector<bool> boundary_region_;
  std::vector<int> left_, right_, alpha_at_, beta_at_, crossings_, euler4_;
  std::vector<std::vector<int>> on_beta_, visits_;
  std::vector<std::vector<Corner>> corners_;
  std::map<std::string, int> vertex_by_name_, edge_by_name_;
};

HeegaardDiagram parse_heegaard(const std::string& text, const std::string& base_dir = ".");
HeegaardDiagram load_heegaard(const std::string& path);
std::string format_heegaard(const HeegaardDiagram& h);

struct CheckReport {
  bool ok = true;
  std::vector<std::string> problems;
};

// Non-degeneracy of Z_H, free boundary present, homological linear independence.
CheckReport check(const HeegaardDiagram& h);

// One crossing per beta, in beta order.
struct Generator {
  std::vector<int> points;
  auto operator<=>(const Generator&) const = default;
};

std::vector<Generator> generators(const HeegaardDiagram& h);
bool is_generator(const HeegaardDiagram& h, const Generator& x);
PairSet occupied(const HeegaardDiagram& h, const Generator& x);
std::string generator_name(const HeegaardDiagram& h, const Generator& x);

// Multiplicity per region; boundary regions are always zero.
using Domain = IntVec;

struct DomainSet {
  Domain particular;
  std::vector<Domain> periodic;
};

// Integer system for pi_2(x, y). The provincial version also forces the boundary class to 0.
class DomainSystem {
 public:
  DomainSystem(const HeegaardDiagram& h, bool provincial = false);
  std::optional<Domain> solve(const Generator& x, const Generator& y) const;
  const std::vector<Domain>& periodic() const { return periodic_; }

 private:
  const HeegaardDiagram* h_;
  std::vector<int> cols_;  // region per column
  std::vector<int> row_of_vertex_;
  IntMat A_;
  ColumnEchelon ce_;
  std::vector<Domain> periodic_;
  Domain expand(const IntVec& v) const;
};

std::optional<DomainSet> domains(const HeegaardDiagram& h, const Generator& x,
                                 const Generator& y);
HomologyClass boundary_class(const HeegaardDiagram& h, const Domain& d);

struct SpincClass {
  std::vector<int> members;  // indices into the generator list
  std::vector<int> profile;  // occupied arcs per boundary part of the first member
};

std::vector<SpincClass> spinc_partition(const HeegaardDiagram& h,
                                        const std::vector<Generator>& gens,
                                        bool provincial = false);

struct Admissibility {
  bool provincial = true;
  bool full = true;
  std::optional<Domain> provincial_witness;
  std::optional<Domain> full_witness;
};

Admissibility admissibility(const HeegaardDiagram& h);

struct NiceReport {
  bool nice = true;
  std::vector<int> offending;
};

NiceReport is_nice(const HeegaardDiagram& h);

// Quarter units: 4 e(B), and (4 n_x, 4 n_y).
int euler_measure4(const HeegaardDiagram& h, const Domain& d);
std::pair<int, int> point_measures4(const HeegaardDiagram& h, const Domain& d, const Generator& x,
                                    const Generator& y);

// gr(B) = (-e - n_x - n_y, boundary class) in Gr(Z_H).
GradingElement domain_grading(const HeegaardDiagram& h, const GradingGroup& G, const Domain& d,
                              const Generator& x, const Generator& y);
// P(base) gr(B) for some B in pi_2(base, x).
GradingCoset generator_grading(const HeegaardDiagram& h, const GradingGroup& G,
                               const Generator& x, const Generator& base);

// Glues the part of h1 equal to `along` to the part of h2 equal to reverse(along).
HeegaardDiagram glue(const HeegaardDiagram& h1, const HeegaardDiagram& h2,
                     const ArcDiagram& along);

// Generator of the glued diagram made of x1 and x2, if they occupy complementary arcs.
std::optional<Generator> glued_generator(const HeegaardDiagram& glued, const HeegaardDiagram& h1,
                                         const Generator& x1, const HeegaardDiagram& h2,
                                         const Generator& x2);

}  // namespace bsfh
