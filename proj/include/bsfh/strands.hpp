#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsfh/arc_diagram.hpp"

namespace bsfh {

// Set of matched pairs, bit i = pair i.
using PairSet = std::uint32_t;

std::string pairset_string(PairSet s);  // "13" style, 1-based
std::vector<int> pairset_members(PairSet s);
inline int popcount(PairSet s) { return __builtin_popcount(s); }

// (S, T, phi) stored as (s, phi(s)) sorted by s.
using StrandDiagram = std::vector<std::pair<int, int>>;

int inversions(const StrandDiagram& a);
std::optional<StrandDiagram> multiply(const StrandDiagram& a, const StrandDiagram& b);
std::vector<StrandDiagram> differential(const StrandDiagram& a);
std::vector<int> sources(const StrandDiagram& a);
std::vector<int> targets(const StrandDiagram& a);
bool is_idempotent(const StrandDiagram& a);

// All generators of the extended algebra A(n_1..n_l) over segment structure d.
std::vector<StrandDiagram> all_strand_diagrams(const ArcDiagram& d);
std::vector<StrandDiagram> all_strand_diagrams(const ArcDiagram& d, int k);

// Multiplicity per elementary interval.
using HomologyClass = std::vector<int>;
HomologyClass homology_class(const ArcDiagram& d, const StrandDiagram& a);
HomologyClass chord_class(const ArcDiagram& d, const std::vector<ReebChord>& rho);

// Z/2 sum of strand diagrams in normal form (sorted, no repeats).
class AlgElement {
 public:
  AlgElement() = default;
  explicit AlgElement(ArcPtr d) : d_(std::move(d)) {}
  AlgElement(ArcPtr d, std::vector<StrandDiagram> terms);

  const ArcPtr& ambient() const { return d_; }
  const std::vector<StrandDiagram>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  AlgElement& operator+=(const AlgElement& o);
  AlgElement operator+(const AlgElement& o) const {
    AlgElement r = *this;
    r += o;
    return r;
  }
  AlgElement operator*(const AlgElement& o) const;
  AlgElement d() const;

  bool operator==(const AlgElement& o) const { return terms_ == o.terms_; }
  bool operator<(const AlgElement& o) const { return terms_ < o.terms_; }

  // For elements of A(Z): matched pairs occupied at start and end.
  PairSet left_idempotent() const;
  PairSet right_idempotent() const;

  void add_term(const StrandDiagram& t);

 private:
  ArcPtr d_;
  std::vector<StrandDiagram> terms_;
};

void check_same_ambient(const AlgElement& a, const AlgElement& b);

AlgElement idempotent(const ArcPtr& d, PairSet s);
// a(rho, s); zero if rho is not completable by s. Throws if s meets M(rho+-).
AlgElement chord_element(const ArcPtr& d, const std::vector<ReebChord>& rho, PairSet s);
// a_p(rho), and the total a(rho).
AlgElement chord_sum(const ArcPtr& d, const std::vector<ReebChord>& rho, int p);
AlgElement chord_total(const ArcPtr& d, const std::vector<ReebChord>& rho);
bool completable(const ArcDiagram& d, const std::vector<ReebChord>& rho, int p);

// Basis of A(Z, i) by closure.
std::vector<AlgElement> basis(const ArcPtr& d, int i);
std::vector<AlgElement> full_basis(const ArcPtr& d);

// Split over union(d1, d2): elements whose terms factor as a single product.
std::pair<AlgElement, AlgElement> tensor_split(const AlgElement& e, const ArcPtr& d1,
                                               const ArcPtr& d2);
AlgElement tensor_join(const AlgElement& a, const AlgElement& b, const ArcPtr& u);

// Transport along the reversal anti-isomorphism of point sets: each strand p->q
// of d becomes r(q)->r(p) in reverse(d). Only used for chord-level translation.
std::string strand_string(const ArcDiagram& d, const StrandDiagram& a);
std::string element_string(const AlgElement& e);

// Named elements of an algebra, resolved by exact equality.
struct AliasTable {
  std::vector<std::pair<std::string, AlgElement>> entries;
  std::optional<std::string> name_of(const AlgElement& e) const;
  std::optional<AlgElement> lookup(const std::string& name) const;
};

// Finite Z/2 basis of A(Z) with decomposition and product tables.
class Algebra {
 public:
  explicit Algebra(ArcPtr d);
  const ArcPtr& diagram() const { return d_; }
  int size() const { return static_cast<int>(basis_.size()); }
  const AlgElement& element(int i) const { return basis_[i]; }
  bool is_idempotent(int i) const { return idem_[i]; }
  PairSet left(int i) const { return left_[i]; }
  PairSet right(int i) const { return right_[i]; }
  int idempotent_index(PairSet s) const;  // -1 if s is not an idempotent of A(Z)
  std::vector<PairSet> idempotents() const;
  // Basis indices whose sum is e; throws if e is outside the span.
  std::vector<int> decompose(const AlgElement& e) const;
  int index_of(const AlgElement& e) const;  // -1 if not a basis element
  const std::vector<int>& product(int i, int j) const { return prod_[i][j]; }
  const std::vector<int>& diff(int i) const { return diff_[i]; }
  // Pairs (i, j) whose product contains basis element c.
  const std::vector<std::pair<int, int>>& factorizations(int c) const { return fact_[c]; }
  // Basis elements whose differential contains c.
  const std::vector<int>& diff_preimages(int c) const { return dpre_[c]; }
  AliasTable aliases;
  std::string name(int i) const;
  std::string name(const AlgElement& e) const;
  AlgElement parse_element(const std::string& token) const;
  bool trivial() const { return d_->num_points() == 0; }

 private:
  ArcPtr d_;
  std::vector<AlgElement> basis_;
  std::vector<bool> idem_;
  std::vector<PairSet> left_, right_;
  std::map<StrandDiagram, int> owner_;
  std::vector<std::vector<std::vector<int>>> prod_;
  std::vector<std::vector<int>> diff_;
  std::vector<std::vector<std::pair<int, int>>> fact_;
  std::vector<std::vector<int>> dpre_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

AlgebraPtr make_algebra(const ArcDiagram& d);
AlgebraPtr trivial_algebra();

}  // namespace bsfh
