#pragma once

#include <string>
#include <vector>

#include "bsfh/strands.hpp"

namespace bsfh {

// Maslov component stored doubled so half-integers stay exact.
struct GradingElement {
  int maslov2 = 0;
  HomologyClass h;
  bool operator==(const GradingElement&) const = default;
  auto operator<=>(const GradingElement&) const = default;
};

std::string half_string(int twice);
std::string grading_string(const GradingElement& g);

// Gr(Z): the central extension of H_1(Z, a) by half-integers.
class GradingGroup {
 public:
  explicit GradingGroup(ArcPtr d);
  const ArcPtr& diagram() const { return d_; }
  int dim() const { return static_cast<int>(start_.size()); }

  GradingElement identity() const { return {0, HomologyClass(dim(), 0)}; }
  GradingElement lambda(int n = 1) const { return {2 * n, HomologyClass(dim(), 0)}; }
  GradingElement mul(const GradingElement& a, const GradingElement& b) const;
  GradingElement inv(const GradingElement& a) const;
  GradingElement pow(const GradingElement& a, long long n) const;

  // Doubled values of m and L.
  int m_pair2(int point, const HomologyClass& a) const;
  int m_pair2(const std::vector<int>& chain0, const HomologyClass& a) const;
  int L2(const HomologyClass& a, const HomologyClass& b) const;
  std::vector<int> boundary(const HomologyClass& a) const;  // 0-chain on points
  std::vector<int> boundary_prime(const HomologyClass& a) const;  // on matched pairs
  HomologyClass interval_class(int p, int q) const;  // [a_p, a_q] on one segment

  GradingElement gr(const StrandDiagram& a) const;
  GradingElement gr(const AlgElement& a) const;  // throws if inhomogeneous
  // Grading of a set of chords at one height.
  GradingElement gr_chords(const std::vector<ReebChord>& rho) const;

 private:
  ArcPtr d_;
  std::vector<int> start_;  // start point of each interval
};

// Identification H_1(Z) = H_1(-Z): same geometric chain, reversed basis with sign.
HomologyClass reverse_class(const ArcDiagram& d, const HomologyClass& h);
GradingElement reverse_grading(const ArcDiagram& d, const GradingElement& g);

// Grading reduction: base idempotent per component and r(I) with Maslov part 0.
class GradingReduction {
 public:
  explicit GradingReduction(const GradingGroup& G);
  // Induced reduction on -Z: r'(complement of s) = phi(r(s)^-1).
  static GradingReduction complementary(const GradingGroup& G, const GradingGroup& Grev,
                                        const GradingReduction& r);
  bool in_domain(PairSet s) const;
  PairSet base(PairSet s) const;
  const GradingElement& r(PairSet s) const;
  GradingElement reduce(const GradingGroup& G, const GradingElement& g, PairSet start,
                        PairSet end) const;
  GradingElement reduce(const GradingGroup& G, const AlgElement& a) const;
  std::vector<int> component_of_pair;  // connected component of F per matched pair

 private:
  GradingReduction() = default;
  std::vector<std::pair<PairSet, GradingElement>> table_;
  std::vector<std::pair<PairSet, PairSet>> base_;
};

// Signed intersection of cycles on F(Z), computed by pushing the second cycle off
// the ribbon graph Z + arcs to its left.
long long ribbon_intersection(const ArcDiagram& d, const HomologyClass& a,
                              const HomologyClass& b);
// Integer basis of ker(boundary') = H_1(F).
std::vector<HomologyClass> cycle_basis(const GradingGroup& G);

// Right cosets P\Gr for P generated by the stabilizer list.
struct GradingCoset {
  GradingElement rep;
  std::vector<GradingElement> stabilizer;
};

// Lattice decision of h in <stabilizer>.
bool subgroup_member(const GradingGroup& G, const std::vector<GradingElement>& gens,
                     const GradingElement& h);
// Word search over gens^{+-1} up to the given length.
bool subgroup_member_bruteforce(const GradingGroup& G, const std::vector<GradingElement>& gens,
                                const GradingElement& h, int depth);
bool coset_equal(const GradingGroup& G, const GradingCoset& a, const GradingCoset& b);
bool coset_equal_bruteforce(const GradingGroup& G, const GradingCoset& a, const GradingCoset& b,
                            int depth = 8);

}  // namespace bsfh
