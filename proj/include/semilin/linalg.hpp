#pragma once

#include <utility>
#include <vector>

#include "semilin/ratfunc.hpp"

namespace semilin {

template <class F>
struct LinSolution {
  int rank = 0;
  bool consistent = true;              // of Ax = b; always true when b omitted
  std::vector<std::vector<F>> nullspace;
  std::vector<F> particular;           // empty when inconsistent or b omitted
};

// Plain Gauss-Jordan over any exact field type (needs +,-,*,/ and is_zero()).
// Deliberately naive: it doubles as the cross-check oracle for the
// fraction-free solver below.
template <class F>
LinSolution<F> gauss_solve(std::vector<std::vector<F>> A, std::vector<F> b, const F& zero,
                           const F& one, bool want_vectors = true) {
  const int m = (int)A.size();
  const int n = m ? (int)A[0].size() : 0;
  const bool with_rhs = !b.empty();
  if (with_rhs && (int)b.size() != m) throw Error("rhs size mismatch");

  LinSolution<F> out;
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int pr = -1;
    for (int i = row; i < m; ++i)
      if (!A[i][col].is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(A[row], A[pr]);
    if (with_rhs) std::swap(b[row], b[pr]);
    F inv = A[row][col];
    for (int j = col; j < n; ++j) A[row][j] = A[row][j] / inv;
    if (with_rhs) b[row] = b[row] / inv;
    for (int i = 0; i < m; ++i) {
      if (i == row || A[i][col].is_zero()) continue;
      F f = A[i][col];
      for (int j = col; j < n; ++j) A[i][j] = A[i][j] - f * A[row][j];
      if (with_rhs) b[i] = b[i] - f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  out.rank = row;
  if (with_rhs)
    for (int i = row; i < m; ++i)
      if (!b[i].is_zero()) out.consistent = false;
  if (!want_vectors) return out;

  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<F> v(n, zero);
    v[f] = one;
    for (int r = 0; r < (int)pivot_col.size(); ++r) v[pivot_col[r]] = zero - A[r][f];
    out.nullspace.push_back(std::move(v));
  }
  if (with_rhs && out.consistent) {
    out.particular.assign(n, zero);
    for (int r = 0; r < (int)pivot_col.size(); ++r) out.particular[pivot_col[r]] = b[r];
  }
  return out;
}

using RMat = std::vector<std::vector<RatFunc>>;

namespace detail {

inline RingPtr first_ring(const RMat& A, const std::vector<RatFunc>& b) {
  for (const auto& row : A)
    for (const auto& e : row)
      if (e.ring()) return e.ring();
  for (const auto& e : b)
    if (e.ring()) return e.ring();
  throw Error("cannot infer the ring of an empty matrix");
}

// Fraction-free (Bareiss) elimination on a polynomial matrix with full
// pivoting.  Intermediate entries are exact minors, so every division below is
// exact; rows are pre-scaled by their denominators which leaves solution sets
// untouched.
struct BareissState {
  std::vector<std::vector<Poly>> P;  // m x n coefficient part, triangularized
  std::vector<Poly> rhs;             // carried through the same row operations
  std::vector<int> colmap;           // elimination column j holds original colmap[j]
  int rank = 0;
};

inline BareissState bareiss_eliminate(const RMat& A, const std::vector<RatFunc>& b) {
  const int m = (int)A.size();
  const int n = m ? (int)A[0].size() : 0;
  if (m == 0 || n == 0) {
    BareissState s;
    s.colmap.resize(n);
    for (int j = 0; j < n; ++j) s.colmap[j] = j;
    return s;
  }
  const RingPtr& R = first_ring(A, b);
  BareissState s;
  s.P.assign(m, std::vector<Poly>(n, Poly::zero(R)));
  s.rhs.assign(m, Poly::zero(R));
  s.colmap.resize(n);
  for (int j = 0; j < n; ++j) s.colmap[j] = j;
  for (int i = 0; i < m; ++i) {
    Poly scale = Poly::one(R);
    for (int j = 0; j < n; ++j) scale = lcm(scale, A[i][j].den());
    if (!b.empty()) scale = lcm(scale, b[i].den());
    for (int j = 0; j < n; ++j)
      s.P[i][j] = A[i][j].num() * divexact(scale, A[i][j].den());
    if (!b.empty()) s.rhs[i] = b[i].num() * divexact(scale, b[i].den());
  }

  Poly prev = Poly::one(R);
  int k = 0;
  while (k < std::min(m, n)) {
    // pick the sparsest available pivot (deterministic tie-break on position)
    int pr = -1, pc = -1;
    size_t best = 0;
    for (int i = k; i < m; ++i)
      for (int j = k; j < n; ++j) {
        if (s.P[i][j].is_zero()) continue;
        size_t t = s.P[i][j].num_terms();
        if (pr < 0 || t < best) {
          pr = i;
          pc = j;
          best = t;
        }
      }
    if (pr < 0) break;
    std::swap(s.P[k], s.P[pr]);
    std::swap(s.rhs[k], s.rhs[pr]);
    if (pc != k) {
      for (int i = 0; i < m; ++i) std::swap(s.P[i][k], s.P[i][pc]);
      std::swap(s.colmap[k], s.colmap[pc]);
    }
    for (int i = k + 1; i < m; ++i) {
      for (int j = k + 1; j < n; ++j)
        s.P[i][j] = divexact(s.P[k][k] * s.P[i][j] - s.P[i][k] * s.P[k][j], prev);
      s.rhs[i] = divexact(s.P[k][k] * s.rhs[i] - s.P[i][k] * s.rhs[k], prev);
      s.P[i][k] = Poly::zero(R);
    }
    prev = s.P[k][k];
    ++k;
  }
  s.rank = k;
  return s;
}

}  // namespace detail

// Exact rank / nullspace / particular solution over a rational function field.
inline LinSolution<RatFunc> solve_linear(const RMat& A, const std::vector<RatFunc>& b = {},
                                         bool want_vectors = true) {
  const int m = (int)A.size();
  const int n = m ? (int)A[0].size() : 0;
  const bool with_rhs = !b.empty();
  if (with_rhs && (int)b.size() != m) throw Error("rhs size mismatch");
  LinSolution<RatFunc> out;
  if (m == 0 || n == 0) {
    out.rank = 0;
    if (with_rhs)
      for (const auto& e : b)
        if (!e.is_zero()) out.consistent = false;
    return out;
  }
  const RingPtr& R = detail::first_ring(A, b);
  detail::BareissState s = detail::bareiss_eliminate(A, b);
  out.rank = s.rank;
  for (int i = s.rank; i < m; ++i)
    if (with_rhs && !s.rhs[i].is_zero()) out.consistent = false;
  if (!want_vectors) return out;

  auto back_solve = [&](const std::vector<RatFunc>& fixed_tail,
                        const std::vector<Poly>* rhs) {
    // solve the triangular system for the pivot unknowns given the free ones
    std::vector<RatFunc> x(n, RatFunc::zero(R));
    for (int j = s.rank; j < n; ++j) x[j] = fixed_tail[j - s.rank];
    for (int r = s.rank - 1; r >= 0; --r) {
      RatFunc acc = rhs ? RatFunc((*rhs)[r]) : RatFunc::zero(R);
      for (int j = r + 1; j < n; ++j)
        if (!s.P[r][j].is_zero() && !x[j].is_zero()) acc = acc - RatFunc(s.P[r][j]) * x[j];
      x[r] = acc / RatFunc(s.P[r][r]);
    }
    std::vector<RatFunc> orig(n, RatFunc::zero(R));
    for (int j = 0; j < n; ++j) orig[s.colmap[j]] = x[j];
    return orig;
  };

  for (int f = 0; f < n - s.rank; ++f) {
    std::vector<RatFunc> tail(n - s.rank, RatFunc::zero(R));
    tail[f] = RatFunc::one(R);
    out.nullspace.push_back(back_solve(tail, nullptr));
  }
  if (with_rhs && out.consistent) {
    std::vector<RatFunc> tail(n - s.rank, RatFunc::zero(R));
    out.particular = back_solve(tail, &s.rhs);
  }
  return out;
}

inline int rank_of(const RMat& A) { return solve_linear(A, {}, false).rank; }

// matrix helpers used across the test-style checks
inline RMat mat_mul(const RMat& A, const RMat& B) {
  if (A.empty() || B.empty()) return {};
  int m = (int)A.size(), k = (int)B.size(), n = (int)B[0].size();
  const RingPtr& R = detail::first_ring(A, {});
  RMat C(m, std::vector<RatFunc>(n, RatFunc::zero(R)));
  for (int i = 0; i < m; ++i)
    for (int l = 0; l < k; ++l) {
      if (A[i][l].is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!B[l][j].is_zero()) C[i][j] = C[i][j] + A[i][l] * B[l][j];
    }
  return C;
}

inline std::vector<RatFunc> mat_apply(const RMat& A, const std::vector<RatFunc>& v) {
  const RingPtr& R = detail::first_ring(A, v);
  std::vector<RatFunc> out(A.size(), RatFunc::zero(R));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (!A[i][j].is_zero() && !v[j].is_zero()) out[i] = out[i] + A[i][j] * v[j];
  return out;
}

// ---- plain rational matrices ----
// Constant-coefficient computations (orbit bookkeeping, quotient dimensions)
// do not need the function-field machinery above; raw mpq rows are an order
// of magnitude faster there.

using QMat = std::vector<std::vector<mpq_class>>;

inline int qmat_rank(QMat A) {
  int m = (int)A.size(), n = m ? (int)A[0].size() : 0, rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int pr = -1;
    for (int i = rank; i < m; ++i)
      if (A[i][col] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(A[rank], A[pr]);
    for (int i = rank + 1; i < m; ++i) {
      if (A[i][col] == 0) continue;
      mpq_class f = A[i][col] / A[rank][col];
      for (int j = col; j < n; ++j) A[i][j] -= f * A[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Projection of Q^D onto a complement of the column space of A: project()
// reduces a vector by the echelonized columns and returns its entries at the
// non-pivot rows, so the kernel of project() is exactly the column space.
struct ColSpaceProjector {
  int D = 0;
  std::vector<int> pivot_row;  // pivot_row[k]: leading row of echelon column k
  QMat ech;                    // echelon columns (normalized, fully reduced)
  std::vector<int> free_rows;

  int rank() const { return (int)pivot_row.size(); }
  int codim() const { return (int)free_rows.size(); }

  static ColSpaceProjector make(const QMat& A) {
    ColSpaceProjector P;
    P.D = (int)A.size();
    int cols = P.D ? (int)A[0].size() : 0;
    for (int c = 0; c < cols; ++c) {
      std::vector<mpq_class> v(P.D);
      for (int i = 0; i < P.D; ++i) v[i] = A[i][c];
      for (size_t k = 0; k < P.ech.size(); ++k) {
        const mpq_class& f = v[P.pivot_row[k]];
        if (f == 0) continue;
        mpq_class g = f;
        for (int i = 0; i < P.D; ++i) v[i] -= g * P.ech[k][i];
      }
      int p = -1;
      for (int i = 0; i < P.D; ++i)
        if (v[i] != 0) {
          p = i;
          break;
        }
      if (p < 0) continue;
      mpq_class lead = v[p];
      for (int i = 0; i < P.D; ++i) v[i] /= lead;
      for (size_t k = 0; k < P.ech.size(); ++k) {
        const mpq_class& f = P.ech[k][p];
        if (f == 0) continue;
        mpq_class g = f;
        for (int i = 0; i < P.D; ++i) P.ech[k][i] -= g * v[i];
      }
      P.pivot_row.push_back(p);
      P.ech.push_back(std::move(v));
    }
    std::vector<bool> is_pivot(P.D, false);
    for (int p : P.pivot_row) is_pivot[p] = true;
    for (int i = 0; i < P.D; ++i)
      if (!is_pivot[i]) P.free_rows.push_back(i);
    return P;
  }

  std::vector<mpq_class> project(std::vector<mpq_class> v) const {
    for (size_t k = 0; k < ech.size(); ++k) {
      const mpq_class& f = v[pivot_row[k]];
      if (f == 0) continue;
      mpq_class g = f;
      for (int i = 0; i < D; ++i) v[i] -= g * ech[k][i];
    }
    std::vector<mpq_class> out;
    out.reserve(free_rows.size());
    for (int i : free_rows) out.push_back(v[i]);
    return out;
  }
};

}  // namespace semilin
