#include "bsfh/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace bsfh {

namespace {

void col_swap(IntMat& M, int a, int b) {
  for (auto& row : M) std::swap(row[a], row[b]);
}

// col[a] += f * col[b]
void col_addmul(IntMat& M, int a, int b, long long f) {
  for (auto& row : M) row[a] += f * row[b];
}

void col_neg(IntMat& M, int a) {
  for (auto& row : M) row[a] = -row[a];
}

}  // namespace

ColumnEchelon column_echelon(const IntMat& A, int cols) {
  ColumnEchelon ce;
  ce.H = A;
  const int rows = static_cast<int>(A.size());
  ce.U.assign(cols, IntVec(cols, 0));
  for (int i = 0; i < cols; ++i) ce.U[i][i] = 1;
  int c = 0;
  for (int r = 0; r < rows && c < cols; ++r) {
    // Euclid across columns c..cols-1 on row r.
    while (true) {
      int best = -1;
      for (int j = c; j < cols; ++j)
        if (ce.H[r][j] != 0 && (best < 0 || std::llabs(ce.H[r][j]) < std::llabs(ce.H[r][best])))
          best = j;
      if (best < 0) break;
      if (best != c) {
        col_swap(ce.H, best, c);
        col_swap(ce.U, best, c);
      }
      bool done = true;
      for (int j = c + 1; j < cols; ++j) {
        if (ce.H[r][j] == 0) continue;
        long long q = ce.H[r][j] / ce.H[r][c];
        col_addmul(ce.H, j, c, -q);
        col_addmul(ce.U, j, c, -q);
        if (ce.H[r][j] != 0) done = false;
      }
      if (done) break;
    }
    if (c < cols && ce.H[r][c] != 0) {
      if (ce.H[r][c] < 0) {
        col_neg(ce.H, c);
        col_neg(ce.U, c);
      }
      ce.pivot_row.push_back(r);
      ++c;
    }
  }
  ce.rank = c;
  return ce;
}

std::optional<IntVec> solve_integer(const IntMat& A, int cols, const IntVec& b) {
  auto ce = column_echelon(A, cols);
  const int rows = static_cast<int>(A.size());
  IntVec y(cols, 0);
  IntVec resid = b;
  for (int c = 0; c < ce.rank; ++c) {
    int r = ce.pivot_row[c];
    // Rows above r with no pivot must already be satisfied.
    if (resid[r] % ce.H[r][c] != 0) return std::nullopt;
    y[c] = resid[r] / ce.H[r][c];
    for (int i = 0; i < rows; ++i) resid[i] -= ce.H[i][c] * y[c];
  }
  for (long long v : resid)
    if (v != 0) return std::nullopt;
  IntVec x(cols, 0);
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < cols; ++j) x[i] += ce.U[i][j] * y[j];
  return x;
}

IntMat integer_kernel(const IntMat& A, int cols) {
  auto ce = column_echelon(A, cols);
  IntMat K;
  for (int c = ce.rank; c < cols; ++c) {
    IntVec v(cols);
    for (int i = 0; i < cols; ++i) v[i] = ce.U[i][c];
    K.push_back(v);
  }
  return K;
}

std::vector<long long> smith_invariants(const IntMat& A, int cols) {
  IntMat M = A;
  const int rows = static_cast<int>(M.size());
  std::vector<long long> inv;
  int t = 0;
  while (t < rows && t < cols) {
    int pr = -1, pc = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (M[i][j] != 0 && (pr < 0 || std::llabs(M[i][j]) < std::llabs(M[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    std::swap(M[t], M[pr]);
    for (auto& row : M) std::swap(row[t], row[pc]);
    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      long long q = M[i][t] / M[t][t];
      for (int j = t; j < cols; ++j) M[i][j] -= q * M[t][j];
      if (M[i][t]) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      long long q = M[t][j] / M[t][t];
      for (int i = t; i < rows; ++i) M[i][j] -= q * M[i][t];
      if (M[t][j]) clean = false;
    }
    if (!clean) continue;
    bool divides = true;
    for (int i = t + 1; i < rows && divides; ++i)
      for (int j = t + 1; j < cols; ++j)
        if (M[i][j] % M[t][t]) {
          for (int k = t; k < cols; ++k) M[t][k] += M[i][k];
          divides = false;
          break;
        }
    if (!divides) continue;
    inv.push_back(std::llabs(M[t][t]));
    ++t;
  }
  return inv;
}

IntVec mat_vec(const IntMat& A, const IntVec& x) {
  IntVec out(A.size(), 0);
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) out[i] += A[i][j] * x[j];
  return out;
}

namespace {

struct Frac {
  __int128 n = 0, d = 1;
  Frac() = default;
  Frac(long long v) : n(v), d(1) {}
  Frac(__int128 a, __int128 b) : n(a), d(b) { norm(); }
  static __int128 gcd(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
      auto t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  void norm() {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    auto g = gcd(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
  }
  Frac operator+(const Frac& o) const { return Frac(n * o.d + o.n * d, d * o.d); }
  Frac operator-(const Frac& o) const { return Frac(n * o.d - o.n * d, d * o.d); }
  Frac operator*(const Frac& o) const { return Frac(n * o.n, d * o.d); }
  Frac operator/(const Frac& o) const { return Frac(n * o.d, d * o.n); }
  bool zero() const { return n == 0; }
  bool pos() const { return n > 0; }
  bool operator<(const Frac& o) const { return n * o.d < o.n * d; }
};

// Phase-one simplex with Bland's rule: find x >= 0 with A x = b.
std::optional<std::vector<Frac>> feasible(std::vector<std::vector<Frac>> A, std::vector<Frac> b) {
  const int m = static_cast<int>(A.size());
  const int n = m ? static_cast<int>(A[0].size()) : 0;
  for (int i = 0; i < m; ++i)
    if (b[i] < Frac(0)) {
      for (auto& v : A[i]) v = Frac(0) - v;
      b[i] = Frac(0) - b[i];
    }
  // Tableau columns: n originals, m artificials.
  const int N = n + m;
  std::vector<std::vector<Frac>> T(m, std::vector<Frac>(N + 1));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = Frac(1);
    T[i][N] = b[i];
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;
  // Objective: minimize sum of artificials; reduced costs row.
  auto reduced = [&](int j) {
    Frac c = j >= n ? Frac(1) : Frac(0);
    for (int i = 0; i < m; ++i)
      if (basis[i] >= n) c = c - T[i][j];
    return c;
  };
  for (int iter = 0; iter < 10000; ++iter) {
    int enter = -1;
    for (int j = 0; j < N; ++j)
      if (reduced(j) < Frac(0)) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Frac best;
    for (int i = 0; i < m; ++i)
      if (T[i][enter].pos()) {
        Frac r = T[i][N] / T[i][enter];
        if (leave < 0 || r < best || (!(best < r) && basis[i] < basis[leave])) {
          leave = i;
          best = r;
        }
      }
    if (leave < 0) break;
    Frac piv = T[leave][enter];
    for (auto& v : T[leave]) v = v / piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || T[i][enter].zero()) continue;
      Frac f = T[i][enter];
      for (int j = 0; j <= N; ++j) T[i][j] = T[i][j] - f * T[leave][j];
    }
    basis[leave] = enter;
  }
  for (int i = 0; i < m; ++i)
    if (basis[i] >= n && !T[i][N].zero()) return std::nullopt;
  std::vector<Frac> x(n, Frac(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = T[i][N];
  return x;
}

}  // namespace

std::optional<IntVec> nonnegative_combination(const IntMat& K, int dim) {
  const int g = static_cast<int>(K.size());
  if (g == 0) return std::nullopt;
  // Variables: y+ (g), y- (g), s (dim). Rows: K^T(y+ - y-) - s = 0 and sum(s) = 1.
  const int n = 2 * g + dim;
  std::vector<std::vector<Frac>> A(dim + 1, std::vector<Frac>(n, Frac(0)));
  std::vector<Frac> b(dim + 1, Frac(0));
  for (int r = 0; r < dim; ++r) {
    for (int j = 0; j < g; ++j) {
      A[r][j] = Frac(K[j][r]);
      A[r][g + j] = Frac(-K[j][r]);
    }
    A[r][2 * g + r] = Frac(-1);
  }
  for (int r = 0; r < dim; ++r) A[dim][2 * g + r] = Frac(1);
  b[dim] = Frac(1);
  auto sol = feasible(A, b);
  if (!sol) return std::nullopt;
  __int128 l = 1;
  for (int j = 0; j < 2 * g; ++j) {
    auto d = (*sol)[j].d;
    l = l / Frac::gcd(l, d) * d;
  }
  IntVec y(g);
  for (int j = 0; j < g; ++j) {
    Frac v = (*sol)[j] - (*sol)[g + j];
    y[j] = static_cast<long long>(v.n * (l / v.d));
  }
  IntVec x(dim, 0);
  for (int j = 0; j < g; ++j)
    for (int r = 0; r < dim; ++r) x[r] += y[j] * K[j][r];
  return x;
}

std::optional<IntVec> nonnegative_combination_bounded(const IntMat& K, int dim, int bound) {
  const int g = static_cast<int>(K.size());
  IntVec y(g, -bound);
  if (g == 0) return std::nullopt;
  while (true) {
    IntVec x(dim, 0);
    bool nonzero = false, nonneg = true;
    for (int j = 0; j < g; ++j)
      for (int r = 0; r < dim; ++r) x[r] += y[j] * K[j][r];
    for (auto v : x) {
      if (v < 0) nonneg = false;
      if (v) nonzero = true;
    }
    if (nonneg && nonzero) return x;
    int j = 0;
    while (j < g && y[j] == bound) y[j++] = -bound;
    if (j == g) return std::nullopt;
    ++y[j];
  }
}

}  // namespace bsfh
