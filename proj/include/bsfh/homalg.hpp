#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsfh/strands.hpp"

namespace bsfh {

struct DAGen {
  std::string name;
  PairSet left = 0;   // idempotent of the output (type D) algebra
  PairSet right = 0;  // idempotent of the input (A-infinity) algebra
};

// Term a (x) y of an operation: output algebra basis index and generator.
using DATerm = std::pair<int, int>;
using DAKey = std::pair<int, std::vector<int>>;  // generator, input basis indices

// Type DA structure over (A, B) with Z/2 coefficients: m(x, b1..bn) = sum a (x) y.
// Type D structures have B trivial, A-infinity modules have A trivial, chain complexes both.
class DAStructure {
 public:
  AlgebraPtr A, B;
  std::vector<DAGen> gens;
  std::map<DAKey, std::vector<DATerm>> ops;  // sorted, no repeats, no empty entries

  DAStructure() = default;
  DAStructure(AlgebraPtr a, AlgebraPtr b) : A(std::move(a)), B(std::move(b)) {}

  int size() const { return static_cast<int>(gens.size()); }
  int add_gen(const std::string& name, PairSet left, PairSet right);
  int gen_index(const std::string& name) const;
  // Adds a term modulo 2.
  void toggle(int x, const std::vector<int>& in, int a, int y);
  const std::vector<DATerm>& op(int x, const std::vector<int>& in) const;
  int max_inputs() const;
  bool is_type_d() const { return B->trivial(); }
  bool is_module() const { return A->trivial(); }
  bool is_complex() const { return A->trivial() && B->trivial(); }
  int unit_of(int x) const;  // output-algebra idempotent of x
  std::string kind() const;
};

struct RelationReport {
  bool ok = true;
  long long checked = 0;
  std::string witness;
};

// Idempotent coherence plus the structure relation on every input sequence that can
// carry a nonzero term.
RelationReport check_relations(const DAStructure& s);

// Iterated coaction delta_k as Z/2 tensor terms, for type D structures.
std::map<std::pair<std::vector<int>, int>, int> delta_k(const DAStructure& s, int x, int k);
// The graph of operations without inputs is acyclic.
bool is_bounded(const DAStructure& s);

DAStructure box_da(const DAStructure& m, const DAStructure& n);
DAStructure identity_da(const ArcPtr& z);

// Cancels the term I (x) to in delta(from); type D structures and complexes only.
DAStructure cancel(const DAStructure& s, int from, int to);
// Cancels idempotent terms until none remain, scanning generators in order.
DAStructure reduce(const DAStructure& s, bool reverse_order = false);
// Total homology rank of a chain complex.
int homology_rank(const DAStructure& c);

// Bijection of generators respecting idempotents that carries one table to the other.
std::optional<std::vector<int>> isomorphism(const DAStructure& a, const DAStructure& b);

// Operation tables.
std::string format_ops(const DAStructure& s, const std::string& title = "");
DAStructure parse_ops(const std::string& text, AlgebraPtr A, AlgebraPtr B);
// Human readable table, e.g. "d (y) = r''2 (x)".
std::string pretty(const DAStructure& s);

}  // namespace bsfh
