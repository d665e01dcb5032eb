#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "semilin/binpoly.hpp"
#include "semilin/numeric.hpp"

namespace semilin {

// Dense integer matrices, just big enough for lattice normal forms.
using ZMat = std::vector<std::vector<mpz_class>>;

inline ZMat zmat_identity(size_t n) {
  ZMat I(n, std::vector<mpz_class>(n, 0));
  for (size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

inline ZMat zmat_mul(const ZMat& a, const ZMat& b) {
  size_t n = a.size(), m = n ? a[0].size() : 0, p = b.empty() ? 0 : b[0].size();
  if (m != b.size()) throw Error("matrix shape mismatch");
  ZMat c(n, std::vector<mpz_class>(p, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < m; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < p; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

// Fraction-free determinant (Bareiss); every division below is exact.
inline mpz_class zmat_det(ZMat a) {
  size_t n = a.size();
  if (n == 0) return 1;
  if (a[0].size() != n) throw Error("determinant of a non-square matrix");
  mpz_class sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t i = k + 1;
      while (i < n && a[i][k] == 0) ++i;
      if (i == n) return 0;
      std::swap(a[k], a[i]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

struct SmithNormalForm {
  ZMat U, D, V;  // U * A * V = D, U and V unimodular, D diagonal with d_i | d_{i+1}
};

// Classical elementary-operations reduction.  The pivot is always the entry of
// minimal absolute value in the active submatrix; ties break to the smallest
// row index, then the smallest column index, so runs are reproducible.
inline SmithNormalForm smith_normal_form(const ZMat& A_in) {
  size_t rows = A_in.size(), cols = rows ? A_in[0].size() : 0;
  for (const auto& r : A_in)
    if (r.size() != cols) throw Error("ragged matrix");
  ZMat A = A_in, U = zmat_identity(rows), V = zmat_identity(cols);

  auto row_sub = [&](size_t i, size_t k, const mpz_class& q) {  // row_i -= q*row_k
    for (size_t j = 0; j < cols; ++j) A[i][j] -= q * A[k][j];
    for (size_t j = 0; j < rows; ++j) U[i][j] -= q * U[k][j];
  };
  auto col_sub = [&](size_t j, size_t k, const mpz_class& q) {  // col_j -= q*col_k
    for (size_t i = 0; i < rows; ++i) A[i][j] -= q * A[i][k];
    for (size_t i = 0; i < cols; ++i) V[i][j] -= q * V[i][k];
  };

  size_t bound = rows < cols ? rows : cols;
  for (size_t k = 0; k < bound; ++k) {
    bool any = true;
    for (;;) {
      // pivot: minimal |entry|, first by row then by column
      bool found = false;
      size_t pi = k, pj = k;
      mpz_class best;
      for (size_t i = k; i < rows; ++i)
        for (size_t j = k; j < cols; ++j)
          if (A[i][j] != 0) {
            mpz_class a = abs(A[i][j]);
            if (!found || a < best) {
              found = true;
              best = a;
              pi = i;
              pj = j;
            }
          }
      if (!found) {
        any = false;
        break;
      }
      if (pi != k) {
        std::swap(A[k], A[pi]);
        std::swap(U[k], U[pi]);
      }
      if (pj != k) {
        for (size_t i = 0; i < rows; ++i) std::swap(A[i][k], A[i][pj]);
        for (size_t i = 0; i < cols; ++i) std::swap(V[i][k], V[i][pj]);
      }
      bool clean = true;
      for (size_t i = k + 1; i < rows; ++i)
        if (A[i][k] != 0) {
          row_sub(i, k, A[i][k] / A[k][k]);
          if (A[i][k] != 0) clean = false;
        }
      for (size_t j = k + 1; j < cols; ++j)
        if (A[k][j] != 0) {
          col_sub(j, k, A[k][j] / A[k][k]);
          if (A[k][j] != 0) clean = false;
        }
      if (!clean) continue;
      // pull a non-multiple into the working row so the pivot can shrink to
      // the gcd; this is what makes the divisibility chain come out
      bool fixed = false;
      for (size_t i = k + 1; i < rows && !fixed; ++i)
        for (size_t j = k + 1; j < cols && !fixed; ++j)
          if (A[i][j] % A[k][k] != 0) {
            for (size_t c = 0; c < cols; ++c) A[k][c] += A[i][c];
            for (size_t c = 0; c < rows; ++c) U[k][c] += U[i][c];
            fixed = true;
          }
      if (!fixed) break;
    }
    if (!any) break;
    if (A[k][k] < 0) {
      for (size_t j = 0; j < cols; ++j) A[k][j] = -A[k][j];
      for (size_t j = 0; j < rows; ++j) U[k][j] = -U[k][j];
    }
  }

  if (abs(zmat_det(U)) != 1 || abs(zmat_det(V)) != 1)
    throw Error("basis change lost unimodularity");
  for (size_t k = 0; k + 1 < bound; ++k)
    if (A[k][k] != 0 && A[k + 1][k + 1] % A[k][k] != 0)
      throw Error("divisibility chain broken");
  return {U, A, V};
}

// The quotient Z^S / (row span of the generators), presented through a Smith
// basis: in coordinates w = v * V the subgroup becomes the span of m(s)*e_s,
// so a canonical representative folds each w_s into [0, m(s)) when m(s) > 0
// and leaves it alone when m(s) = 0 (a free direction).
struct GammaPerp {
  long S = 0;
  ZMat V;
  std::vector<mpz_class> m;

  bool operator==(const GammaPerp& o) const { return S == o.S && V == o.V && m == o.m; }
  bool operator!=(const GammaPerp& o) const { return !(*this == o); }

  std::vector<mpz_class> fold(std::vector<mpz_class> w) const {
    if ((long)w.size() != S) throw Error("vector length mismatch");
    for (long s = 0; s < S; ++s)
      if (m[s] != 0) {
        w[s] %= m[s];
        if (w[s] < 0) w[s] += m[s];
      }
    return w;
  }

  // ambient coordinates -> canonical representative
  std::vector<mpz_class> reduce(const std::vector<mpz_class>& v) const {
    if ((long)v.size() != S) throw Error("vector length mismatch");
    std::vector<mpz_class> w(S, 0);
    for (long i = 0; i < S; ++i) {
      if (v[i] == 0) continue;
      for (long j = 0; j < S; ++j) w[j] += v[i] * V[i][j];
    }
    return fold(std::move(w));
  }

  long free_rank() const {
    long r = 0;
    for (const auto& ms : m)
      if (ms == 0) ++r;
    return r;
  }
  bool finite() const { return free_rank() == 0; }

  // group order; 0 stands for infinite
  mpz_class order() const {
    if (!finite()) return 0;
    mpz_class n = 1;
    for (const auto& ms : m) n *= ms;
    return n;
  }

  std::vector<std::vector<mpz_class>> representatives() const {
    if (!finite()) throw Error("infinitely many representatives");
    std::vector<std::vector<mpz_class>> out{std::vector<mpz_class>(S, 0)};
    for (long s = 0; s < S; ++s) {
      std::vector<std::vector<mpz_class>> next;
      for (const auto& v : out)
        for (mpz_class r = 0; r < m[s]; ++r) {
          auto w = v;
          w[s] = r;
          next.push_back(std::move(w));
        }
      out = std::move(next);
    }
    return out;
  }

  std::string describe() const {
    std::string box;
    for (const auto& ms : m)
      if (ms != 0) box += (box.empty() ? "" : "x") + ms.get_str();
    long fr = free_rank();
    if (box.empty() && fr == 0) return "trivial";
    std::string out = box.empty() ? "" : "box " + box;
    if (fr > 0) out += (out.empty() ? "" : " + ") + std::string("Z^") + std::to_string(fr);
    return out;
  }
};

inline GammaPerp gamma_perp(const ZMat& generators, long S) {
  if (S < 0) throw Error("negative rank");
  for (const auto& g : generators)
    if ((long)g.size() != S) throw Error("generator length mismatch");
  GammaPerp gp;
  gp.S = S;
  if (generators.empty()) {
    gp.V = zmat_identity((size_t)S);
    gp.m.assign((size_t)S, 0);
    return gp;
  }
  auto snf = smith_normal_form(generators);
  gp.V = snf.V;
  gp.m.assign((size_t)S, 0);
  size_t bound = generators.size() < (size_t)S ? generators.size() : (size_t)S;
  for (size_t s = 0; s < bound; ++s) gp.m[s] = snf.D[s][s];
  return gp;
}

// Integer group ring of Z^S / Gamma; keys are canonical representatives.
class GroupRingElt {
 public:
  explicit GroupRingElt(GammaPerp gp) : gp_(std::move(gp)) {}

  static GroupRingElt zero(const GammaPerp& gp) { return GroupRingElt(gp); }
  // the basis element [v] for an ambient vector v
  static GroupRingElt basis(const GammaPerp& gp, const std::vector<mpz_class>& v) {
    GroupRingElt e(gp);
    e.t_[gp.reduce(v)] = 1;
    return e;
  }

  const GammaPerp& group() const { return gp_; }
  const std::map<std::vector<mpz_class>, mpz_class>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  // augmentation: the sum of the multiplicities
  mpz_class eps() const {
    mpz_class s = 0;
    for (const auto& [k, c] : t_) {
      (void)k;
      s += c;
    }
    return s;
  }

  GroupRingElt operator+(const GroupRingElt& o) const {
    check(o);
    GroupRingElt r(gp_);
    r.t_ = t_;
    for (const auto& [k, c] : o.t_) add_term(r.t_, k, c);
    return r;
  }
  GroupRingElt operator-() const {
    GroupRingElt r(gp_);
    for (const auto& [k, c] : t_) r.t_[k] = -c;
    return r;
  }
  GroupRingElt operator-(const GroupRingElt& o) const { return *this + (-o); }

  GroupRingElt operator*(const mpz_class& c) const {
    GroupRingElt r(gp_);
    if (c != 0)
      for (const auto& [k, v] : t_) r.t_[k] = v * c;
    return r;
  }

  // convolution with key addition in the quotient group
  GroupRingElt operator*(const GroupRingElt& o) const {
    check(o);
    GroupRingElt r(gp_);
    for (const auto& [ka, ca] : t_)
      for (const auto& [kb, cb] : o.t_) {
        std::vector<mpz_class> key(ka);
        for (size_t i = 0; i < key.size(); ++i) key[i] += kb[i];
        add_term(r.t_, gp_.fold(std::move(key)), ca * cb);
      }
    return r;
  }

  bool operator==(const GroupRingElt& o) const { return gp_ == o.gp_ && t_ == o.t_; }
  bool operator!=(const GroupRingElt& o) const { return !(*this == o); }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : t_) {
      mpz_class mag = abs(c);
      if (out.empty())
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      if (mag != 1) out += mag.get_str() + "*";
      out += "[";
      for (size_t i = 0; i < k.size(); ++i) out += (i ? "," : "") + k[i].get_str();
      out += "]";
    }
    return out;
  }

 private:
  void check(const GroupRingElt& o) const {
    if (gp_ != o.gp_) throw Error("ambient groups differ");
  }
  static void add_term(std::map<std::vector<mpz_class>, mpz_class>& t,
                       const std::vector<mpz_class>& k, const mpz_class& c) {
    auto it = t.find(k);
    if (it == t.end()) {
      if (c != 0) t.emplace(k, c);
      return;
    }
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
  GammaPerp gp_;
  std::map<std::vector<mpz_class>, mpz_class> t_;
};

// An element (P, alpha) with P integer-valued and alpha of augmentation zero.
struct K0Class {
  BinPoly poly;
  GroupRingElt aug;

  K0Class(BinPoly p, GroupRingElt a) : poly(std::move(p)), aug(std::move(a)) {
    if (aug.eps() != 0) throw Error("augmentation part must have epsilon zero");
  }

  bool operator==(const K0Class& o) const { return poly == o.poly && aug == o.aug; }
  bool operator!=(const K0Class& o) const { return !(*this == o); }
};

inline K0Class k0a_one(const GammaPerp& gp) {
  return K0Class(BinPoly::constant(1), GroupRingElt::zero(gp));
}

// (P, alpha)(Q, beta) = (PQ, Q(0) alpha + P(0) beta + alpha beta)
inline K0Class k0a_mul(const K0Class& a, const K0Class& b) {
  GroupRingElt aug =
      a.aug * b.poly.eval(0) + b.aug * a.poly.eval(0) + a.aug * b.aug;
  if (aug.eps() != 0) throw Error("product left the augmentation kernel");
  return K0Class(binpoly_mul(a.poly, b.poly), std::move(aug));
}

}  // namespace semilin
