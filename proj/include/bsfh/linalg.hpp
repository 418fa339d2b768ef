#pragma once

#include <optional>
#include <vector>

namespace bsfh {

using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>;  // row-major, rows x cols

// Column echelon decomposition A * U = H with U unimodular.
struct ColumnEchelon {
  IntMat H;
  IntMat U;
  int rank = 0;
  std::vector<int> pivot_row;  // pivot row of each nonzero column of H
};

ColumnEchelon column_echelon(const IntMat& A, int cols);

// Some integer x with A x = b, or none.
std::optional<IntVec> solve_integer(const IntMat& A, int cols, const IntVec& b);
// Basis of the integer kernel {x : A x = 0}.
IntMat integer_kernel(const IntMat& A, int cols);
// Invariant factors of A.
std::vector<long long> smith_invariants(const IntMat& A, int cols);

// Exact rational feasibility: a nonzero x >= 0 in the rational span of the rows of K,
// scaled to an integer vector.
std::optional<IntVec> nonnegative_combination(const IntMat& K, int dim);
// Bounded search over integer combinations with coefficients in [-bound, bound].
std::optional<IntVec> nonnegative_combination_bounded(const IntMat& K, int dim, int bound);

IntVec mat_vec(const IntMat& A, const IntVec& x);

}  // namespace bsfh
