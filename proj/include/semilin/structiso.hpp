#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semilin/linalg.hpp"
#include "semilin/symgroup.hpp"
#include "semilin/truncfield.hpp"

namespace semilin {

constexpr int kIsoBound = 8;  // truncation cap for the isomorphism checks

// ---- univariate polynomials in a distinguished variable t, with
//      rational-function coefficients in the remaining variables ----

using TPoly = std::vector<RatFunc>;  // index = t-degree; entries free of t

inline void tp_trim(TPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline int tp_deg(const TPoly& a) { return (int)a.size() - 1; }

inline TPoly tp_add(const TPoly& a, const TPoly& b) {
  TPoly r = a.size() >= b.size() ? a : b;
  const TPoly& s = a.size() >= b.size() ? b : a;
  for (size_t i = 0; i < s.size(); ++i) r[i] = r[i] + s[i];
  tp_trim(r);
  return r;
}

inline TPoly tp_scale(const TPoly& a, const RatFunc& c) {
  TPoly r = a;
  for (auto& x : r) x = x * c;
  tp_trim(r);
  return r;
}

inline TPoly tp_mul(const RingPtr& R, const TPoly& a, const TPoly& b) {
  if (a.empty() || b.empty()) return {};
  TPoly r(a.size() + b.size() - 1, RatFunc::zero(R));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  }
  tp_trim(r);
  return r;
}

inline TPoly tp_pow(const RingPtr& R, TPoly a, int e) {
  TPoly r{RatFunc::one(R)};
  for (int i = 0; i < e; ++i) r = tp_mul(R, r, a);
  return r;
}

inline std::pair<TPoly, TPoly> tp_divmod(const RingPtr& R, TPoly a, const TPoly& b) {
  if (b.empty()) throw DivisionByZeroError("division by the zero polynomial");
  TPoly q;
  RatFunc lead = b.back();
  while (tp_deg(a) >= tp_deg(b)) {
    int shift = tp_deg(a) - tp_deg(b);
    RatFunc c = a.back() / lead;
    if ((int)q.size() <= shift) q.resize(shift + 1, RatFunc::zero(R));
    q[shift] = q[shift] + c;
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] = a[i + shift] - c * b[i];
    a.pop_back();
    tp_trim(a);
  }
  tp_trim(q);
  return {q, a};
}

// u*a + v*b = 1 for coprime a, b
inline std::pair<TPoly, TPoly> tp_bezout(const RingPtr& R, const TPoly& a, const TPoly& b) {
  TPoly r0 = a, r1 = b;
  TPoly u0{RatFunc::one(R)}, u1, v0, v1{RatFunc::one(R)};
  while (!r1.empty()) {
    auto [q, r] = tp_divmod(R, r0, r1);
    TPoly u2 = tp_add(u0, tp_scale(tp_mul(R, q, u1), -RatFunc::one(R)));
    TPoly v2 = tp_add(v0, tp_scale(tp_mul(R, q, v1), -RatFunc::one(R)));
    r0 = std::move(r1);
    r1 = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  if (tp_deg(r0) != 0) throw Error("denominator factors are not coprime");
  RatFunc inv = RatFunc::one(R) / r0[0];
  return {tp_scale(u0, inv), tp_scale(v0, inv)};
}

inline TPoly tp_from_poly(const Poly& P, int tv) {
  TPoly out;
  for (const auto& [d, c] : P.coeffs_in(tv)) {
    if ((int)out.size() <= d) out.resize((size_t)d + 1, RatFunc::zero(P.ring()));
    out[(size_t)d] = RatFunc(c);
  }
  tp_trim(out);
  return out;
}

inline RatFunc tp_assemble(const RingPtr& R, int tv, const TPoly& a) {
  RatFunc t = RatFunc::var(R, tv), out = RatFunc::zero(R), m = RatFunc::one(R);
  for (const auto& c : a) {
    out = out + c * m;
    m = m * t;
  }
  return out;
}

// ---- partial fractions in M(t): Laurent part plus pole terms over
//      irreducible factors normalized to Q(0) = 1 ----

struct PFTerm {
  RatFunc Q;          // irreducible in t with Q(0) = 1
  int power = 1;      // the term is numerator / Q^power
  RatFunc numerator;  // t-degree < deg Q
};

struct PFDecomposition {
  RingPtr R;
  int tv = 0;
  std::map<long, RatFunc> laurent;        // n -> coefficient of t^n, n may be negative
  std::vector<PFTerm> poles;
  std::vector<std::vector<size_t>> orbits;  // pole indices grouped under the action

  RatFunc reassemble() const {
    RatFunc t = RatFunc::var(R, tv), out = RatFunc::zero(R);
    for (const auto& [n, c] : laurent) out = out + c * t.pow(n);
    for (const auto& P : poles) out = out + P.numerator / P.Q.pow(P.power);
    return out;
  }
};

namespace detail_pf {

// distinct factors of degree <= 2 over the constants, or nothing doing
inline std::vector<TPoly> auto_factor(const RingPtr& R, TPoly B) {
  for (const auto& c : B)
    if (!c.is_constant())
      throw Error("automatic factorization needs a constant-coefficient denominator");
  const FieldCtxPtr& K = R->K;
  if (K->is_extension()) throw Error("automatic factorization over an extension field is out of scope");

  // repeated factors are out of scope for the automatic path
  TPoly Bp;
  for (size_t j = 1; j < B.size(); ++j)
    Bp.push_back(B[j] * RatFunc::constant(R, mpq_class((long)j)));
  tp_trim(Bp);
  TPoly g0 = B, g1 = Bp;
  while (!g1.empty()) {
    auto [q, r] = tp_divmod(R, g0, g1);
    (void)q;
    g0 = std::move(g1);
    g1 = std::move(r);
  }
  if (tp_deg(g0) > 0) throw Error("repeated factors need a supplied factor list");

  std::vector<TPoly> out;
  TPoly rem = B;
  auto try_root = [&](const FieldElem& c) {
    TPoly lin{RatFunc::constant(R, -FieldElem(c)), RatFunc::one(R)};  // t - c
    auto [q, r] = tp_divmod(R, rem, lin);
    if (r.empty()) {
      out.push_back(lin);
      rem = q;
    }
  };
  if (K->p) {
    for (unsigned long c = 1; c < K->p; ++c) try_root(FieldElem(K, mpq_class((long)c)));
    if (tp_deg(rem) >= 2) {
      // scan monic quadratics with nonzero constant term
      for (unsigned long b = 0; b < K->p && tp_deg(rem) >= 2; ++b)
        for (unsigned long c = 1; c < K->p && tp_deg(rem) >= 2; ++c) {
          TPoly quad{RatFunc::constant(R, mpq_class((long)c)),
                     RatFunc::constant(R, mpq_class((long)b)), RatFunc::one(R)};
          bool has_root = false;
          for (unsigned long r0 = 0; r0 < K->p && !has_root; ++r0) {
            FieldElem v(K, mpq_class((long)r0));
            if ((v * v + FieldElem(K, mpq_class((long)b)) * v + FieldElem(K, mpq_class((long)c)))
                    .is_zero())
              has_root = true;
          }
          if (has_root) continue;
          auto [q, r] = tp_divmod(R, rem, quad);
          if (r.empty()) {
            out.push_back(quad);
            rem = q;
          }
        }
    }
  } else {
    // rational roots via the integer root bound
    mpz_class lcm_den = 1;
    for (const auto& c : B)
      lcm_den = lcm_den / gcd(lcm_den, c.constant_value().comps()[0].get_den()) *
                c.constant_value().comps()[0].get_den();
    std::vector<mpz_class> ic;
    for (const auto& c : B) {
      mpq_class q = c.constant_value().comps()[0] * mpq_class(lcm_den);
      ic.push_back(q.get_num());
    }
    mpz_class a0 = abs(ic.front()), ad = abs(ic.back());
    if (a0 > 1000000000000L || ad > 1000000000000L)
      throw Error("denominator coefficients too large for automatic factorization");
    auto divisors = [](const mpz_class& v) {
      std::vector<mpz_class> ds;
      for (mpz_class d = 1; d * d <= v; ++d)
        if (v % d == 0) {
          ds.push_back(d);
          ds.push_back(v / d);
        }
      return ds;
    };
    for (const auto& num : divisors(a0))
      for (const auto& den : divisors(ad))
        for (int sign : {1, -1}) {
          if (tp_deg(rem) < 1) break;
          mpq_class cand(sign * num, den);
          cand.canonicalize();
          try_root(FieldElem(R->K, cand));
        }
    if (tp_deg(rem) == 2) {
      // no rational roots left, so the quadratic remainder is irreducible
      out.push_back(rem);
      rem = {RatFunc::one(R)};
    }
  }
  if (tp_deg(rem) > 0) throw Error("denominator factorization out of scope");
  return out;
}

}  // namespace detail_pf

inline PFDecomposition partial_fraction(const RatFunc& f, int tv,
                                        const std::vector<RatFunc>& supplied = {},
                                        const std::vector<std::vector<int>>& actions = {}) {
  const RingPtr& R = f.ring();
  PFDecomposition out;
  out.R = R;
  out.tv = tv;
  if (f.is_zero()) return out;

  TPoly A = tp_from_poly(f.num(), tv);
  TPoly B = tp_from_poly(f.den(), tv);

  // pure t-powers in the denominator feed the Laurent part
  size_t k = 0;
  while (k < B.size() && B[k].is_zero()) ++k;
  B.erase(B.begin(), B.begin() + (long)k);

  // irreducible factors, normalized to Q(0) = 1
  std::vector<TPoly> irred;
  if (supplied.empty()) {
    irred = detail_pf::auto_factor(R, B);
  } else {
    for (const auto& s : supplied) {
      if (!s.is_polynomial()) throw Error("factors must be polynomial in t");
      TPoly q = tp_from_poly(s.num(), tv);
      size_t j = 0;
      while (j < q.size() && q[j].is_zero()) ++j;  // t-power factors ride the Laurent part
      q.erase(q.begin(), q.begin() + (long)j);
      if (tp_deg(q) < 1) continue;
      irred.push_back(q);
    }
  }
  struct Factor {
    TPoly q;
    int mult;
    RatFunc assembled;
  };
  std::vector<Factor> facs;
  TPoly rem = B;
  for (auto& q : irred) {
    TPoly qn = tp_scale(q, RatFunc::one(R) / q[0]);  // Q(0) = 1
    bool dup = false;
    for (const auto& F : facs)
      if (F.q == qn) dup = true;
    if (dup) continue;
    int m = 0;
    while (true) {
      auto [quo, r] = tp_divmod(R, rem, qn);
      if (!r.empty()) break;
      rem = quo;
      ++m;
    }
    if (m) facs.push_back({qn, m, tp_assemble(R, tv, qn)});
  }
  if (tp_deg(rem) != 0)
    throw Error("denominator factorization out of scope: unfactored part of degree " +
                std::to_string(tp_deg(rem)));
  A = tp_scale(A, RatFunc::one(R) / rem[0]);

  // blocks: t^k plus each Q^m; split with Bezout cofactors
  std::vector<TPoly> blocks;
  if (k) {
    TPoly tk(k + 1, RatFunc::zero(R));
    tk[k] = RatFunc::one(R);
    blocks.push_back(tk);
  }
  for (const auto& F : facs) blocks.push_back(tp_pow(R, F.q, F.mult));

  TPoly S;  // polynomial part
  std::vector<TPoly> residues(blocks.size());
  TPoly cur = A;
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (i + 1 == blocks.size()) {
      auto [q, r] = tp_divmod(R, cur, blocks[i]);
      S = tp_add(S, q);
      residues[i] = r;
    } else {
      TPoly E{RatFunc::one(R)};
      for (size_t j = i + 1; j < blocks.size(); ++j) E = tp_mul(R, E, blocks[j]);
      auto [u, v] = tp_bezout(R, blocks[i], E);
      auto [q, r] = tp_divmod(R, tp_mul(R, cur, v), blocks[i]);
      S = tp_add(S, q);
      residues[i] = r;
      cur = tp_mul(R, cur, u);
    }
  }
  if (blocks.empty()) S = cur;

  auto add_laurent = [&](long n, const RatFunc& c) {
    if (c.is_zero()) return;
    auto it = out.laurent.find(n);
    if (it == out.laurent.end())
      out.laurent.emplace(n, c);
    else {
      it->second = it->second + c;
      if (it->second.is_zero()) out.laurent.erase(it);
    }
  };
  for (size_t j = 0; j < S.size(); ++j) add_laurent((long)j, S[j]);

  size_t bi = 0;
  if (k) {
    for (size_t j = 0; j < residues[0].size(); ++j) add_laurent((long)j - (long)k, residues[0][j]);
    bi = 1;
  }
  for (const auto& F : facs) {
    TPoly r = residues[bi++];
    for (int l = 0; !r.empty(); ++l) {
      auto [q, digit] = tp_divmod(R, r, F.q);
      if (!digit.empty())
        out.poles.push_back({F.assembled, F.mult - l, tp_assemble(R, tv, digit)});
      r = q;
    }
  }

  // orbit grouping under the supplied relabelings (closed only within this set)
  std::vector<size_t> parent(out.poles.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t a) {
    return parent[a] == a ? a : parent[a] = find(parent[a]);
  };
  for (const auto& dest : actions)
    for (size_t i = 0; i < out.poles.size(); ++i) {
      RatFunc img = out.poles[i].Q.relabeled(dest);
      for (size_t j = 0; j < out.poles.size(); ++j)
        if (out.poles[j].power == out.poles[i].power && out.poles[j].Q == img)
          parent[find(i)] = find(j);
    }
  std::map<size_t, std::vector<size_t>> groups;
  for (size_t i = 0; i < parent.size(); ++i) groups[find(i)].push_back(i);
  for (auto& [root, members] : groups) out.orbits.push_back(members);

  return out;
}

// ---- shared report for the isomorphism checks ----

struct IsoReport {
  bool pass = false;
  bool refused = false;
  long dim_src = 0;
  long dim_dst = 0;
  long rank = 0;
  std::string witness;
};

// ---- wedge powers of the tautological module ----

inline RatFunc vandermonde_product(const TruncatedField& F, const std::vector<int>& seq) {
  RatFunc v = RatFunc::one(F.ring());
  for (size_t i = 0; i < seq.size(); ++i)
    for (size_t j = i + 1; j < seq.size(); ++j) v = v * (F.x(seq[i]) - F.x(seq[j]));
  return v;
}

// The map  [s1] ^ ... ^ [sN]  |->  prod_{i<j}(s_i - s_j) {s1..sN},  read in the
// twisted target basis: coefficients are the Vandermonde products divided by
// (x0 - x1)^binom(N,2), and a permutation acts on the target with the extra
// cocycle ((x0^g - x1^g)/(x0 - x1))^binom(N,2).
inline IsoReport vandermonde_wedge_check(int N, int n, const TruncatedField& F) {
  if (N < 1 || N > n) throw Error("need 1 <= N <= n");
  if (n > kIsoBound || n != F.n()) throw Error("truncation bound exceeded");
  const RingPtr& R = F.ring();
  const int C2 = N * (N - 1) / 2;
  RatFunc xy = F.x(0) - F.x(1);

  auto subsets = domain_elements(Domain::subsets_of(N), n);
  std::map<std::vector<int>, size_t> index;
  for (size_t i = 0; i < subsets.size(); ++i) index.emplace(subsets[i], i);

  IsoReport rep;
  rep.dim_src = rep.dim_dst = (long)subsets.size();

  std::vector<RatFunc> diag;
  for (const auto& S : subsets) diag.push_back(vandermonde_product(F, S) / xy.pow(C2));

  // the wedge sign matches the sign of the product under slot swaps
  for (const auto& S : subsets)
    for (int l = 0; l + 1 < N; ++l) {
      std::vector<int> seq = S;
      std::swap(seq[l], seq[l + 1]);
      if (vandermonde_product(F, seq) != -vandermonde_product(F, S)) {
        rep.witness = "slot swap does not flip the sign";
        return rep;
      }
    }

  // equivariance with the declared cocycle, on every generating transposition
  for (int m = 0; m + 1 < n; ++m) {
    Perm g = Perm::transposition(n, m, m + 1);
    RatFunc cg = ((F.x(g(0)) - F.x(g(1))) / xy).pow(C2);
    for (size_t si = 0; si < subsets.size(); ++si) {
      std::vector<int> img;
      for (int s : subsets[si]) img.push_back(g(s));
      long inv = 0;
      for (size_t i = 0; i < img.size(); ++i)
        for (size_t j = i + 1; j < img.size(); ++j)
          if (img[i] > img[j]) ++inv;
      std::vector<int> sorted = img;
      std::sort(sorted.begin(), sorted.end());
      RatFunc sign = inv % 2 ? -RatFunc::one(R) : RatFunc::one(R);
      if (F.apply(g, diag[si]) * cg != sign * diag[index.at(sorted)]) {
        rep.witness = "equivariance fails at transposition " + g.to_string();
        return rep;
      }
    }
  }

  // bijectivity: the matrix is diagonal, so its determinant is the product of
  // the entries, nonzero exactly when every entry is (the function field has
  // no zero divisors -- no need to expand the product)
  rep.rank = 0;
  for (const auto& d : diag)
    if (!d.is_zero()) ++rep.rank;
  rep.pass = rep.rank == rep.dim_src;
  if (!rep.pass) rep.witness = "vanishing diagonal entry";
  return rep;
}

// ---- the elementary-symmetric alpha map ----

namespace detail_iso {

// elementary symmetric polynomials e_0..e_m of the variables indexed by `set`
inline std::vector<Poly> elem_sym(const RingPtr& R, const std::vector<int>& set) {
  std::vector<Poly> e{Poly::one(R)};
  for (int a : set) {
    e.push_back(Poly::zero(R));
    for (size_t s = e.size() - 1; s >= 1; --s)
      e[s] = e[s] + Poly::var(R, a) * e[s - 1];
  }
  return e;
}

}  // namespace detail_iso

// alpha sends [S]_s to sum_{t in S} e_s(S-t) [S,t] and [T]_s to
// sum_{t in T} e_s(T-t) [T-t,t]; bijective because the elementary symmetric
// polynomials are algebraically independent.  Verified at truncation by an
// exact rank computation (symbolic for small sizes, an exact rational
// specialization certificate above that: a full-rank specialization bounds the
// generic rank from below).
inline IsoReport alpha_map_check(int N, int n) {
  if (N < 0 || N + 1 > n) throw Error("need N + 1 <= n");
  if (n > kIsoBound) throw Error("truncation bound exceeded");
  auto R = PolyRing::make(FieldCtx::rationals(), [&] {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back("x" + std::to_string(i));
    return v;
  }());

  auto subsN = domain_elements(Domain::subsets_of(N), n);
  auto subsN1 = domain_elements(Domain::subsets_of(N + 1), n);
  std::map<std::vector<int>, size_t> idxN;
  for (size_t i = 0; i < subsN.size(); ++i) idxN.emplace(subsN[i], i);

  const long cols1 = (long)subsN.size() * N;
  const long cols = cols1 + (long)subsN1.size() * (N + 1);
  const long rows = (long)subsN.size() * n;

  IsoReport rep;
  rep.dim_src = cols;
  rep.dim_dst = rows;
  if (cols != rows) {
    rep.witness = "dimension identity fails";
    return rep;
  }

  auto dst = [&](size_t iS, int t) { return (long)iS * n + t; };
  std::vector<std::vector<std::pair<long, Poly>>> col((size_t)cols);
  for (size_t iS = 0; iS < subsN.size(); ++iS) {
    for (int s = 0; s < N; ++s) {
      auto& c = col[iS * (size_t)N + (size_t)s];
      for (int t : subsN[iS]) {
        std::vector<int> rest;
        for (int u : subsN[iS])
          if (u != t) rest.push_back(u);
        c.emplace_back(dst(iS, t), detail_iso::elem_sym(R, rest)[(size_t)s]);
      }
    }
  }
  for (size_t iT = 0; iT < subsN1.size(); ++iT)
    for (int s = 0; s <= N; ++s) {
      auto& c = col[(size_t)cols1 + iT * (size_t)(N + 1) + (size_t)s];
      for (int t : subsN1[iT]) {
        std::vector<int> rest;
        for (int u : subsN1[iT])
          if (u != t) rest.push_back(u);
        c.emplace_back(dst(idxN.at(rest), t), detail_iso::elem_sym(R, rest)[(size_t)s]);
      }
    }

  // equivariance on generators: applying g to a column equals the column of
  // the permuted basis vector with permuted target indices
  for (int m = 0; m + 1 < n; ++m) {
    Perm g = Perm::transposition(n, m, m + 1);
    std::vector<int> destv(n);
    for (int i = 0; i < n; ++i) destv[i] = g(i);
    auto permuted_dst = [&](long d) {
      size_t iS = (size_t)(d / n);
      int t = (int)(d % n);
      std::vector<int> img;
      for (int s : subsN[iS]) img.push_back(g(s));
      std::sort(img.begin(), img.end());
      return dst(idxN.at(img), g(t));
    };
    auto column_of = [&](size_t iS, int s, bool second) -> const std::vector<std::pair<long, Poly>>& {
      return second ? col[(size_t)cols1 + iS * (size_t)(N + 1) + (size_t)s]
                    : col[iS * (size_t)N + (size_t)s];
    };
    auto check_block = [&](const std::vector<std::vector<int>>& subs, int smax, bool second,
                           const std::map<std::vector<int>, size_t>& idx) {
      for (size_t iS = 0; iS < subs.size(); ++iS)
        for (int s = 0; s < smax; ++s) {
          std::vector<int> img;
          for (int u : subs[iS]) img.push_back(g(u));
          std::sort(img.begin(), img.end());
          std::map<long, Poly> lhs, rhs;
          for (const auto& [d, p] : column_of(idx.at(img), s, second)) lhs.emplace(d, p);
          for (const auto& [d, p] : column_of(iS, s, second))
            rhs.emplace(permuted_dst(d), p.relabeled(destv));
          if (lhs.size() != rhs.size()) return false;
          for (const auto& [d, p] : lhs) {
            auto it = rhs.find(d);
            if (it == rhs.end() || !(it->second == p)) return false;
          }
        }
      return true;
    };
    std::map<std::vector<int>, size_t> idxN1;
    for (size_t i = 0; i < subsN1.size(); ++i) idxN1.emplace(subsN1[i], i);
    if (!check_block(subsN, N, false, idxN) || !check_block(subsN1, N + 1, true, idxN1)) {
      rep.witness = "equivariance fails at transposition " + g.to_string();
      return rep;
    }
  }

  if (rows <= 12) {
    RMat M((size_t)rows, std::vector<RatFunc>((size_t)cols, RatFunc::zero(R)));
    for (size_t c = 0; c < col.size(); ++c)
      for (const auto& [d, p] : col[c]) M[(size_t)d][c] = RatFunc(p);
    rep.rank = rank_of(M);
  } else {
    Rng rng(4242);
    for (int attempt = 0; attempt < 3 && rep.rank != rows; ++attempt) {
      std::set<unsigned long> used;
      std::vector<FieldElem> pt;
      for (int i = 0; i < n; ++i) {
        unsigned long v;
        do v = 2 + rng.below(10000); while (!used.insert(v).second);
        pt.push_back(FieldElem(R->K, mpq_class((long)v)));
      }
      QMat M((size_t)rows, std::vector<mpq_class>((size_t)cols, 0));
      for (size_t c = 0; c < col.size(); ++c)
        for (const auto& [d, p] : col[c]) M[(size_t)d][c] = p.eval(pt).comps()[0];
      rep.rank = qmat_rank(M);
    }
  }
  rep.pass = rep.rank == rows;
  if (!rep.pass) rep.witness = "rank deficit: " + std::to_string(rep.rank);
  return rep;
}

// ---- the finite-index splitting rho ----

namespace detail_iso {

// a permutation sending T[i] to img[i] and filling the rest in order
inline Perm extend_to_perm(int n, const std::vector<int>& T, const std::vector<int>& img) {
  std::vector<int> dest(n, -1), taken(n, 0);
  for (size_t i = 0; i < T.size(); ++i) {
    dest[(size_t)T[i]] = img[i];
    taken[(size_t)img[i]] = 1;
  }
  int next = 0;
  for (int i = 0; i < n; ++i)
    if (dest[i] < 0) {
      while (taken[next]) ++next;
      dest[(size_t)i] = next;
      taken[next] = 1;
    }
  return Perm(dest);
}

}  // namespace detail_iso

// rho: K<G/H> (x)_{K^H} K^U -> K<G/U>,  [S] (x) f  |->  sum_{xi over S} xi(f) [xi],
// for H the setwise and U the pointwise stabilizer of T (U = H degenerates to
// the identity).  The M-element basis of K^U over K^H is picked as powers of a
// U-invariant moved by H; if no invariant in the probe pool moves, the
// faithfulness precondition fails and the check refuses with the pair.
inline IsoReport rho_split_check(int n, const std::vector<int>& T, bool u_pointwise,
                                 const TruncatedField& F) {
  if (n != F.n() || n > kIsoBound) throw Error("truncation bound exceeded");
  auto H = SubgroupSpec::setwise(n, T);
  auto U = u_pointwise ? SubgroupSpec::pointwise(n, T) : H;
  long m = mpz_class(H.order() / U.order()).get_si();
  const RingPtr& R = F.ring();

  IsoReport rep;

  // probe pool: style generators, their pairwise sums and products, filtered
  // down to U-invariants
  std::vector<RatFunc> pool;
  {
    auto gens = F.generators();
    std::vector<RatFunc> raw = gens;
    for (size_t i = 0; i < gens.size() && i < 24; ++i)
      for (size_t j = i; j < gens.size() && j < 24; ++j) {
        raw.push_back(gens[i] + gens[j]);
        raw.push_back(gens[i] * gens[j]);
      }
    // a probe certifies a genuine invariant only if it would stay invariant at
    // every larger truncation.  Reserve the highest variable outside T as a
    // fresh point: a probe that avoids it yet is fixed by the whole truncated
    // tail group can only depend on the T-variables (moving any other variable
    // it touched onto the fresh point would change it), so its invariance is
    // truncation-independent.  Without this, products like
    // (x_0-x_2)(x_0-x_3) sneak in as false witnesses.
    int fresh = -1;
    if (u_pointwise)
      for (int v = n - 1; v >= 0; --v)
        if (std::find(T.begin(), T.end(), v) == T.end()) {
          fresh = v;
          break;
        }
    auto ug = U.generators();
    for (const auto& c : raw) {
      if (fresh >= 0 && (c.num().degree_in(fresh) > 0 || c.den().degree_in(fresh) > 0)) continue;
      bool inv = true;
      for (const auto& u : ug)
        if (F.apply(u, c) != c) {
          inv = false;
          break;
        }
      if (inv) pool.push_back(c);
    }
  }

  RatFunc theta = RatFunc::one(R);
  if (m > 1) {
    auto h_elems = H.enumerate();
    std::vector<Perm> transversal;
    for (const auto& h : h_elems) {
      bool seen = false;
      for (const auto& t : transversal)
        if (U.contains(t.inverse() * h)) seen = true;
      if (!seen) transversal.push_back(h);
    }
    bool found_all = true;
    for (const auto& h : transversal) {
      if (U.contains(h)) continue;
      bool moved = false;
      for (const auto& c : pool)
        if (F.apply(h, c) != c) {
          moved = true;
          if (theta.is_one()) theta = c;
          break;
        }
      if (!moved) found_all = false;
    }
    if (!found_all) {
      rep.refused = true;
      rep.witness = "refused: H/U acts trivially on the probed " + F.style_name() +
                    " invariants for U = pointwise, H = setwise stabilizer of the chosen set";
      return rep;
    }
  }

  std::vector<RatFunc> fs;
  for (long j = 0; j < m; ++j) fs.push_back(theta.pow(j));

  auto subsets = domain_elements(Domain::subsets_of((int)T.size()), n);
  auto targets = u_pointwise ? domain_elements(Domain::injections_of((int)T.size()), n) : subsets;
  std::map<std::vector<int>, size_t> tindex;
  for (size_t i = 0; i < targets.size(); ++i) tindex.emplace(targets[i], i);

  rep.dim_src = (long)subsets.size() * m;
  rep.dim_dst = (long)targets.size();

  std::vector<Perm> xi;  // coset representative per target element
  for (const auto& tgt : targets) xi.push_back(detail_iso::extend_to_perm(n, T, tgt));

  // representative independence: xi * u gives the same coefficient
  for (size_t i = 0; i < targets.size() && i < 4; ++i)
    for (const auto& u : U.generators())
      for (const auto& f : fs)
        if (F.apply(xi[i] * u, f) != F.apply(xi[i], f)) {
          rep.witness = "coefficient depends on the coset representative";
          return rep;
        }

  RMat M((size_t)rep.dim_dst, std::vector<RatFunc>((size_t)rep.dim_src, RatFunc::zero(R)));
  auto set_of = [&](const std::vector<int>& tuple) {
    std::vector<int> s = tuple;
    std::sort(s.begin(), s.end());
    return s;
  };
  std::map<std::vector<int>, size_t> sindex;
  for (size_t i = 0; i < subsets.size(); ++i) sindex.emplace(subsets[i], i);
  for (size_t ti = 0; ti < targets.size(); ++ti) {
    size_t si = sindex.at(set_of(targets[ti]));
    for (long j = 0; j < m; ++j) M[ti][si * (size_t)m + (size_t)j] = F.apply(xi[ti], fs[(size_t)j]);
  }

  // equivariance: g . rho([S] (x) f) = rho([gS] (x) f)
  for (int g0 = 0; g0 + 1 < n; ++g0) {
    Perm g = Perm::transposition(n, g0, g0 + 1);
    for (size_t si = 0; si < subsets.size(); ++si)
      for (long j = 0; j < m; ++j) {
        std::vector<int> imgS;
        for (int s : subsets[si]) imgS.push_back(g(s));
        std::sort(imgS.begin(), imgS.end());
        size_t si2 = sindex.at(imgS);
        for (size_t ti = 0; ti < targets.size(); ++ti) {
          std::vector<int> imgT;
          for (int t : targets[ti]) imgT.push_back(g(t));
          if (!u_pointwise) std::sort(imgT.begin(), imgT.end());
          size_t ti2 = tindex.at(imgT);
          if (F.apply(g, M[ti][si * (size_t)m + (size_t)j]) !=
              M[ti2][si2 * (size_t)m + (size_t)j]) {
            rep.witness = "equivariance fails at transposition " + g.to_string();
            return rep;
          }
        }
      }
  }

  if (rep.dim_src != rep.dim_dst) {
    rep.witness = "dimension mismatch";
    return rep;
  }
  rep.rank = rank_of(M);
  rep.pass = rep.rank == rep.dim_dst;
  if (!rep.pass) rep.witness = "rank deficit: " + std::to_string(rep.rank);
  return rep;
}

// ---- splitting of a product of two subset modules into disjoint triples ----

inline IsoReport triple_split_check(int np, int s, int n) {
  if (np < 0 || s < 0 || n < np + s) throw Error("truncation below s_left + s_right");
  if (n > kIsoBound + 1) throw Error("truncation bound exceeded");
  auto left = domain_elements(Domain::subsets_of(np), n);
  auto right = domain_elements(Domain::subsets_of(s), n);

  // triples of disjoint subsets of sizes (j, np - j, s - j)
  std::vector<std::vector<std::vector<int>>> triples;  // {A, B, C}
  std::map<std::vector<std::vector<int>>, size_t> tidx;
  for (int j = 0; j <= std::min(np, s); ++j)
    for (const auto& A : domain_elements(Domain::subsets_of(j), n))
      for (const auto& B : domain_elements(Domain::subsets_of(np - j), n)) {
        bool dis = true;
        for (int b : B)
          if (std::binary_search(A.begin(), A.end(), b)) dis = false;
        if (!dis) continue;
        for (const auto& C : domain_elements(Domain::subsets_of(s - j), n)) {
          bool ok = true;
          for (int c : C)
            if (std::binary_search(A.begin(), A.end(), c) ||
                std::binary_search(B.begin(), B.end(), c))
              ok = false;
          if (!ok) continue;
          tidx.emplace(std::vector<std::vector<int>>{A, B, C}, triples.size());
          triples.push_back({A, B, C});
        }
      }

  IsoReport rep;
  rep.dim_src = (long)left.size() * (long)right.size();
  rep.dim_dst = (long)triples.size();

  auto split = [&](const std::vector<int>& I, const std::vector<int>& J) {
    std::vector<int> A, B, C;
    for (int i : I)
      (std::binary_search(J.begin(), J.end(), i) ? A : B).push_back(i);
    for (int j : J)
      if (!std::binary_search(I.begin(), I.end(), j)) C.push_back(j);
    return std::vector<std::vector<int>>{A, B, C};
  };

  std::vector<int> hit(triples.size(), 0);
  for (const auto& I : left)
    for (const auto& J : right) {
      auto t = tidx.find(split(I, J));
      if (t == tidx.end()) {
        rep.witness = "image outside the target set";
        return rep;
      }
      ++hit[t->second];
    }
  for (int h : hit)
    if (h != 1) {
      rep.witness = "not a bijection";
      return rep;
    }
  if (rep.dim_src != rep.dim_dst) {
    rep.witness = "count mismatch";
    return rep;
  }

  // equivariance under generators
  for (int m = 0; m + 1 < n; ++m) {
    Perm g = Perm::transposition(n, m, m + 1);
    auto act = [&](const std::vector<int>& S) {
      std::vector<int> r;
      for (int x : S) r.push_back(g(x));
      std::sort(r.begin(), r.end());
      return r;
    };
    for (const auto& I : left)
      for (const auto& J : right) {
        auto lhs = split(act(I), act(J));
        auto t = split(I, J);
        std::vector<std::vector<int>> rhs{act(t[0]), act(t[1]), act(t[2])};
        if (lhs != rhs) {
          rep.witness = "equivariance fails at transposition " + g.to_string();
          return rep;
        }
      }
  }

  rep.rank = rep.dim_dst;
  rep.pass = true;
  return rep;
}

// ---- double-coset count against the injection sum ----

inline IsoReport coinduction_count_check(const std::vector<int>& J, const std::vector<int>& T,
                                         int n) {
  auto dcs = double_cosets(SubgroupSpec::pointwise(n, J), SubgroupSpec::pointwise(n, T));
  mpz_class expect = injection_count_sum((int)J.size(), (int)T.size());
  IsoReport rep;
  rep.dim_src = (long)dcs.count();
  rep.dim_dst = expect.get_si();
  rep.pass = rep.dim_src == rep.dim_dst;
  rep.rank = rep.dim_src;
  if (n < (int)(J.size() + T.size()))
    rep.witness = "truncation below |J| + |T|: counts " + std::to_string(rep.dim_src) + " vs " +
                  std::to_string(rep.dim_dst);
  else if (!rep.pass)
    rep.witness = "count mismatch";
  return rep;
}

// ---- density of K<G> in End_k(K) for a finite Galois datum ----

namespace detail_iso {

inline FieldElem apply_aut(const FieldElem& v, const FieldElem& gen_image) {
  const FieldCtxPtr& K = v.ctx();
  FieldElem out = FieldElem::zero(K);
  FieldElem pw = FieldElem::one(K);
  for (const auto& c : v.comps()) {
    out = out + FieldElem(K, c) * pw;
    pw = pw * gen_image;
  }
  return out;
}

}  // namespace detail_iso

// K<G> -> End_k(K), a [g] |-> (v |-> a g(v)): injective by independence of
// characters, surjective by density; here both sides have k-dimension d^2 and
// the assembled matrix must have full rank.
inline IsoReport hilbert90_finite_check(const FieldCtxPtr& K,
                                        const std::vector<FieldElem>& aut_gen_images) {
  const int d = K->deg();
  if ((int)aut_gen_images.size() != d)
    throw Error("non-Galois datum: automorphism count differs from the degree");

  IsoReport rep;
  rep.dim_src = rep.dim_dst = (long)d * d;

  if (d > 1) {
    // each image must solve the modulus, and the set must be a group
    for (const auto& im : aut_gen_images) {
      FieldElem acc = FieldElem::zero(K), pw = FieldElem::one(K);
      for (const auto& c : K->minpoly) {
        acc = acc + FieldElem(K, c) * pw;
        pw = pw * im;
      }
      if (!acc.is_zero()) throw Error("non-Galois datum: image is not a root of the modulus");
    }
    for (const auto& a : aut_gen_images)
      for (const auto& b : aut_gen_images) {
        FieldElem comp = detail_iso::apply_aut(b, a);  // (g_a g_b)(gen)
        bool found = false;
        for (const auto& c : aut_gen_images)
          if (c == comp) found = true;
        if (!found) throw Error("non-Galois datum: automorphisms do not close under composition");
      }
  }

  // base-field matrix of all operators  v |-> gen^l * g(v)
  auto base = K->p ? FieldCtx::prime_field(K->p) : FieldCtx::rationals();
  std::vector<std::vector<FieldElem>> M((size_t)(d * d),
                                        std::vector<FieldElem>((size_t)(d * d),
                                                               FieldElem::zero(base)));
  FieldElem gen = d > 1 ? FieldElem::generator(K) : FieldElem::one(K);
  for (int g = 0; g < d; ++g)
    for (int l = 0; l < d; ++l)
      for (int j = 0; j < d; ++j) {
        std::vector<mpq_class> ej((size_t)d, 0);
        ej[(size_t)j] = 1;
        FieldElem img = d > 1 ? detail_iso::apply_aut(FieldElem(K, ej), aut_gen_images[(size_t)g])
                              : FieldElem::one(K);
        img = img * gen.pow(l);
        for (int i = 0; i < d; ++i)
          M[(size_t)(i * d + j)][(size_t)(g * d + l)] = FieldElem(base, img.comps()[(size_t)i]);
      }
  auto sol = gauss_solve<FieldElem>(M, {}, FieldElem::zero(base), FieldElem::one(base), false);
  rep.rank = sol.rank;
  rep.pass = rep.rank == rep.dim_dst;
  if (!rep.pass) rep.witness = "rank deficit: " + std::to_string(rep.rank);
  return rep;
}

}  // namespace semilin
