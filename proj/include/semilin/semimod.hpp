#pragma once

#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "semilin/binpoly.hpp"
#include "semilin/linalg.hpp"
#include "semilin/symgroup.hpp"
#include "semilin/truncfield.hpp"

namespace semilin {

// ---- basis descriptors ----
//
// A finite symmetric-group set given structurally, so the same descriptor can
// be instantiated at any truncation: a point, the s-subsets, the s-tuples,
// products of two bases (diagonal action) and finite direct sums.  Elements
// are encoded as int vectors; sums prepend a summand tag.
class BasisSpec {
 public:
  enum Kind { point, subsets, tuples, product, direct_sum };

  static BasisSpec trivial() { return BasisSpec(point, 0); }

  static BasisSpec subsets_of(int s) {
    if (s < 0) throw Error("negative subset size");
    return BasisSpec(subsets, s);
  }

  static BasisSpec tuples_of(int s) {
    if (s < 0) throw Error("negative tuple length");
    return BasisSpec(tuples, s);
  }

  static BasisSpec product_of(BasisSpec a, BasisSpec b) {
    if (a.elem_len() < 0 || b.elem_len() < 0)
      throw Error("product factors must have fixed element length");
    BasisSpec r(product, 0);
    r.parts_ = {std::move(a), std::move(b)};
    return r;
  }

  static BasisSpec sum_of(std::vector<BasisSpec> parts) {
    if (parts.empty()) throw Error("empty direct sum");
    BasisSpec r(direct_sum, 0);
    r.parts_ = std::move(parts);
    return r;
  }

  Kind kind() const { return kind_; }
  const std::vector<BasisSpec>& parts() const { return parts_; }

  // largest number of truncation points an element can touch; the stability
  // headroom n >= |T| + degree + 1 is phrased in terms of this
  int degree() const {
    switch (kind_) {
      case point:
        return 0;
      case subsets:
      case tuples:
        return s_;
      case product:
        return parts_[0].degree() + parts_[1].degree();
      case direct_sum: {
        int d = 0;
        for (const auto& p : parts_) d = std::max(d, p.degree());
        return d;
      }
    }
    throw Error("unreachable");
  }

  // encoded length, or -1 when it varies (direct sums)
  int elem_len() const {
    switch (kind_) {
      case point:
        return 0;
      case subsets:
      case tuples:
        return s_;
      case product:
        return parts_[0].elem_len() + parts_[1].elem_len();
      case direct_sum:
        return -1;
    }
    throw Error("unreachable");
  }

  std::vector<std::vector<int>> elements(int n) const {
    std::vector<std::vector<int>> out;
    switch (kind_) {
      case point:
        out.push_back({});
        break;
      case subsets:
        return domain_elements(Domain::subsets_of(s_), n);
      case tuples:
        return domain_elements(Domain::tuples_of(s_), n);
      case product:
        for (const auto& a : parts_[0].elements(n))
          for (const auto& b : parts_[1].elements(n)) {
            std::vector<int> e = a;
            e.insert(e.end(), b.begin(), b.end());
            out.push_back(std::move(e));
          }
        break;
      case direct_sum:
        for (size_t tag = 0; tag < parts_.size(); ++tag)
          for (const auto& a : parts_[tag].elements(n)) {
            std::vector<int> e{(int)tag};
            e.insert(e.end(), a.begin(), a.end());
            out.push_back(std::move(e));
          }
        break;
    }
    return out;
  }

  std::vector<int> act(const Perm& g, const std::vector<int>& e) const {
    switch (kind_) {
      case point:
        return e;
      case subsets:
        return act_on_element(Domain::subsets_of(s_), g, e);
      case tuples:
        return act_on_element(Domain::tuples_of(s_), g, e);
      case product: {
        int la = parts_[0].elem_len();
        std::vector<int> a(e.begin(), e.begin() + la), b(e.begin() + la, e.end());
        std::vector<int> r = parts_[0].act(g, a), rb = parts_[1].act(g, b);
        r.insert(r.end(), rb.begin(), rb.end());
        return r;
      }
      case direct_sum: {
        std::vector<int> a(e.begin() + 1, e.end());
        std::vector<int> r{e[0]};
        std::vector<int> ra = parts_[(size_t)e[0]].act(g, a);
        r.insert(r.end(), ra.begin(), ra.end());
        return r;
      }
    }
    throw Error("unreachable");
  }

  std::string describe() const {
    switch (kind_) {
      case point:
        return "1";
      case subsets:
        return s_ == 1 ? "psi" : "binom:" + std::to_string(s_);
      case tuples:
        return "tuples:" + std::to_string(s_);
      case product:
        return "(" + parts_[0].describe() + ")x(" + parts_[1].describe() + ")";
      case direct_sum: {
        std::string r;
        for (const auto& p : parts_) r += (r.empty() ? "" : "+") + p.describe();
        return r;
      }
    }
    return "?";
  }

 private:
  BasisSpec(Kind k, int s) : kind_(k), s_(s) {}
  Kind kind_;
  int s_;
  std::vector<BasisSpec> parts_;
};

// ---- modules ----

struct SemiModule {
  TruncatedField F;
  BasisSpec basis;
  std::vector<std::vector<int>> elems;
  std::map<std::vector<int>, int> index;

  static SemiModule make(TruncatedField field, BasisSpec spec) {
    SemiModule M{std::move(field), std::move(spec), {}, {}};
    M.elems = M.basis.elements(M.F.n());
    for (size_t i = 0; i < M.elems.size(); ++i) M.index.emplace(M.elems[i], (int)i);
    return M;
  }

  int dim() const { return (int)elems.size(); }

  int act_index(const Perm& g, int i) const {
    return index.at(basis.act(g, elems[(size_t)i]));
  }

  std::vector<RatFunc> zero_vec() const {
    return std::vector<RatFunc>((size_t)dim(), RatFunc::zero(F.ring()));
  }

  std::vector<RatFunc> unit(int i) const {
    auto v = zero_vec();
    v[(size_t)i] = RatFunc::one(F.ring());
    return v;
  }

  // semilinear action: permutes basis positions and twists coefficients
  std::vector<RatFunc> act(const Perm& g, const std::vector<RatFunc>& v) const {
    if ((int)v.size() != dim()) throw Error("vector length does not match the basis");
    auto out = zero_vec();
    for (int i = 0; i < dim(); ++i)
      if (!v[(size_t)i].is_zero()) out[(size_t)act_index(g, i)] = F.apply(g, v[(size_t)i]);
    return out;
  }
};

inline std::vector<std::vector<int>> basis_orbit_blocks(const SemiModule& M,
                                                        const SubgroupSpec& U) {
  auto gens = U.generators();
  return orbit_partition(M.dim(), (int)gens.size(), [&](int g, int e) {
    return M.index.at(M.basis.act(gens[(size_t)g], M.elems[(size_t)e]));
  });
}

// Dimension over the U-invariant subfield of the smooth fixed space, where U
// permutes everything outside T and fixes T pointwise.  Orbits whose size
// still grows when one fresh point is added are truncation artifacts of the
// infinite orbits and are skipped; each surviving orbit contributes the index
// [U : Stab] (= its size).
inline long fixed_dim(const SemiModule& M, const std::vector<int>& T) {
  int n = M.F.n();
  int deg = M.basis.degree();
  for (int t : T)
    if (t < 0 || t >= n) throw Error("fixed set outside the truncation");
  if (n < (int)T.size() + deg + 1)
    throw Error("truncation too small for stability detection: need n >= |T| + " +
                std::to_string(deg) + " + 1");
  auto U = SubgroupSpec::pointwise(n, T);
  M.F.require_faithful_on(U.complement());

  auto blocks = basis_orbit_blocks(M, U);
  SemiModule M1 =
      SemiModule::make(TruncatedField::make(M.F.constants(), n + 1, M.F.style()), M.basis);
  auto blocks1 = basis_orbit_blocks(M1, SubgroupSpec::pointwise(n + 1, T));
  std::vector<size_t> block_of(M1.elems.size());
  for (size_t b = 0; b < blocks1.size(); ++b)
    for (int e : blocks1[b]) block_of[(size_t)e] = b;

  long total = 0;
  for (const auto& blk : blocks) {
    const auto& rep = M.elems[(size_t)blk.front()];
    size_t size_next = blocks1[block_of[(size_t)M1.index.at(rep)]].size();
    if (blk.size() == size_next) total += (long)blk.size();
  }
  return total;
}

inline std::vector<int> front_segment(long m) {
  std::vector<int> T((size_t)m);
  std::iota(T.begin(), T.end(), 0);
  return T;
}

// Interpolates fixed_dim through the given |T| values; the last size is held
// out by fit_binpoly as a consistency check.
inline BinPoly growth_fit(const SemiModule& M, const std::vector<long>& sizes) {
  std::vector<std::pair<long, mpz_class>> pts;
  for (long m : sizes) pts.emplace_back(m, fixed_dim(M, front_segment(m)));
  return fit_binpoly(pts);
}

inline std::vector<long> default_growth_sizes(const BasisSpec& b) {
  long s = b.degree();
  return {s + 1, s + 2, s + 3, s + 4, s + 5};
}

// smallest truncation at which growth_fit over `sizes` is defined
inline int truncation_for(const BasisSpec& b, const std::vector<long>& sizes) {
  long top = 0;
  for (long m : sizes) top = std::max(top, m);
  return (int)top + b.degree() + 1;
}

inline int level(const SemiModule& M) {
  int d = growth_fit(M, default_growth_sizes(M.basis)).degree();
  return d < 0 ? 0 : d;
}

// ---- equivariant maps ----

struct SemiMap {
  SemiModule src, dst;
  std::vector<std::vector<RatFunc>> cols;  // cols[j] = image of source element j

  RMat matrix() const {
    RMat A((size_t)dst.dim(), std::vector<RatFunc>((size_t)src.dim(), RatFunc::zero(src.F.ring())));
    for (int j = 0; j < src.dim(); ++j)
      for (int i = 0; i < dst.dim(); ++i) A[(size_t)i][(size_t)j] = cols[(size_t)j][(size_t)i];
    return A;
  }

  bool is_zero() const {
    for (const auto& col : cols)
      for (const auto& e : col)
        if (!e.is_zero()) return false;
    return true;
  }

  // phi(sigma v) == sigma phi(v) on every basis vector and generator
  bool commutes_with_action() const {
    int n = src.F.n();
    for (int i = 0; i + 1 < n; ++i) {
      Perm t = Perm::transposition(n, i, i + 1);
      for (int j = 0; j < src.dim(); ++j)
        if (dst.act(t, cols[(size_t)j]) != cols[(size_t)src.act_index(t, j)]) return false;
    }
    return true;
  }
};

// Builds the equivariant extension of `rep_images`, which assigns an image to
// the lexicographically least element of each source orbit under the full
// symmetric group.  Well-definedness is checked through Schreier generators
// of each representative's stabilizer; a violating permutation is reported.
inline SemiMap make_semimap(
    SemiModule src, SemiModule dst,
    const std::map<std::vector<int>, std::vector<RatFunc>>& rep_images) {
  if (src.F.ring() != dst.F.ring()) throw Error("source and target fields differ");
  int n = src.F.n();
  std::vector<Perm> gens;
  for (int i = 0; i + 1 < n; ++i) gens.push_back(Perm::transposition(n, i, i + 1));
  if (gens.empty()) gens.push_back(Perm::identity(n));

  SemiMap phi{std::move(src), std::move(dst), {}};
  phi.cols.assign((size_t)phi.src.dim(), {});
  std::vector<int> root_of(phi.src.elems.size(), -1);
  std::vector<Perm> trans(phi.src.elems.size(), Perm::identity(n));

  for (int start = 0; start < phi.src.dim(); ++start) {
    if (root_of[(size_t)start] >= 0) continue;
    // elements are listed in lexicographic order, so `start` is the least
    const auto& rep = phi.src.elems[(size_t)start];
    auto it = rep_images.find(rep);
    if (it == rep_images.end())
      throw Error("missing image for orbit representative of the source basis");
    const auto& image = it->second;
    if ((int)image.size() != phi.dst.dim())
      throw Error("image vector length does not match the target basis");

    std::vector<int> queue{start};
    root_of[(size_t)start] = start;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int e = queue[qi];
      for (const auto& g : gens) {
        int f = phi.src.act_index(g, e);
        if (root_of[(size_t)f] < 0) {
          root_of[(size_t)f] = start;
          trans[(size_t)f] = g * trans[(size_t)e];
          queue.push_back(f);
        } else {
          Perm schreier = trans[(size_t)f].inverse() * g * trans[(size_t)e];
          if (schreier.is_identity()) continue;
          if (phi.dst.act(schreier, image) != image)
            throw Error("representative image is not fixed by its stabilizer; certificate " +
                        schreier.to_string());
        }
      }
    }
    for (int e : queue) phi.cols[(size_t)e] = phi.dst.act(trans[(size_t)e], image);
  }
  return phi;
}

struct KernelData {
  int dim = 0;
  std::vector<std::vector<RatFunc>> basis;
};

inline KernelData kernel(const SemiMap& phi) {
  if (phi.src.dim() == 0) return {};
  auto sol = solve_linear(phi.matrix(), {}, true);
  return {(int)sol.nullspace.size(), sol.nullspace};
}

// common kernel of several maps out of the same source
inline KernelData common_kernel(const std::vector<SemiMap>& maps) {
  if (maps.empty()) throw Error("no maps given");
  RMat stacked;
  for (const auto& phi : maps) {
    if (phi.src.dim() != maps.front().src.dim()) throw Error("sources differ");
    for (auto& row : phi.matrix()) stacked.push_back(std::move(row));
  }
  auto sol = solve_linear(stacked, {}, true);
  return {(int)sol.nullspace.size(), sol.nullspace};
}

inline int cokernel_dim(const SemiMap& phi) {
  if (phi.is_zero()) throw Error("zero map has no interesting cokernel here");
  if (phi.src.F.n() < phi.src.basis.degree() + 2)
    throw Error("truncation too small: need n >= s + 2");
  return phi.dst.dim() - rank_of(phi.matrix());
}

// ---- constants-vs-field independence ----

enum class Twist { none, sign };

struct IndependenceReport {
  int rank_constants = 0;
  int rank_field = 0;
  bool consistent = true;
  std::string certificate;  // field-dependency witness when ranks differ
};

// For vectors fixed by the (possibly sign-twisted) action, independence over
// the constant field must imply independence over the function field.  Both
// ranks are computed outright; a discrepancy comes back with the dependency.
inline IndependenceReport check_semilinear_independence(
    const SemiModule& M, const std::vector<std::vector<RatFunc>>& vecs,
    Twist twist = Twist::none) {
  const RingPtr& R = M.F.ring();
  int n = M.F.n();
  for (const auto& v : vecs) {
    if ((int)v.size() != M.dim()) throw Error("vector length does not match the basis");
    for (int i = 0; i + 1 < n; ++i) {
      Perm t = Perm::transposition(n, i, i + 1);
      auto tv = M.act(t, v);
      if (twist == Twist::sign)
        for (auto& e : tv) e = RatFunc::zero(R) - e;
      if (tv != v) throw Error("twist not respected by inputs");
    }
  }

  IndependenceReport rep;
  if (vecs.empty()) return rep;

  // field rank: columns are the vectors
  RMat A((size_t)M.dim(), std::vector<RatFunc>(vecs.size(), RatFunc::zero(R)));
  for (size_t j = 0; j < vecs.size(); ++j)
    for (int i = 0; i < M.dim(); ++i) A[(size_t)i][j] = vecs[j][(size_t)i];
  auto field_sol = solve_linear(A, {}, true);
  rep.rank_field = field_sol.rank;

  // constants rank: clear denominators per position and compare monomialwise
  const FieldCtxPtr& K = R->K;
  std::vector<std::vector<FieldElem>> rows;
  for (int p = 0; p < M.dim(); ++p) {
    Poly den = Poly::one(R);
    for (const auto& v : vecs) den = lcm(den, v[(size_t)p].den());
    std::vector<Poly> cleared;
    for (const auto& v : vecs)
      cleared.push_back(v[(size_t)p].num() * divexact(den, v[(size_t)p].den()));
    std::map<ExpVec, int, GrlexLess> seen;
    for (const auto& c : cleared)
      for (const auto& [e, coef] : c.terms()) seen.emplace(e, 0);
    for (const auto& [e, unused] : seen) {
      std::vector<FieldElem> row;
      for (const auto& c : cleared) {
        auto it = c.terms().find(e);
        row.push_back(it == c.terms().end() ? FieldElem::zero(K) : it->second);
      }
      rows.push_back(std::move(row));
    }
  }
  auto const_sol =
      gauss_solve<FieldElem>(rows, {}, FieldElem::zero(K), FieldElem::one(K), false);
  rep.rank_constants = const_sol.rank;

  rep.consistent = rep.rank_constants == rep.rank_field;
  if (!rep.consistent && !field_sol.nullspace.empty()) {
    std::string cert = "field dependency:";
    for (const auto& c : field_sol.nullspace.front()) cert += " " + c.to_string();
    rep.certificate = cert;
  }
  return rep;
}

// ---- constant-coefficient pattern maps and quotient growth ----

// Equivariant map with constant coefficients sending an s-subset [S] to
// sum_j c_j * sum_{S' in binom(S, tsizes[j])} [S']_j.  Coefficients never
// involve points outside S, so the map commutes with enlarging the
// truncation and quotient fixed spaces can be compared across n and n+1.
struct PatternMap {
  int s = 0;
  std::vector<int> tsizes;   // one target summand per entry, sizes <= s
  std::vector<mpq_class> c;  // matching coefficients

  BasisSpec source_spec() const { return BasisSpec::subsets_of(s); }

  BasisSpec target_spec() const {
    std::vector<BasisSpec> parts;
    for (int t : tsizes) parts.push_back(BasisSpec::subsets_of(t));
    return BasisSpec::sum_of(parts);
  }

  void validate() const {
    if (tsizes.size() != c.size()) throw Error("coefficient count mismatch");
    for (int t : tsizes)
      if (t < 0 || t > s) throw Error("target subset size out of range");
  }
};

// target-by-source matrix over the constants at truncation n
inline QMat pattern_matrix(const PatternMap& pm, int n) {
  pm.validate();
  auto src = pm.source_spec().elements(n);
  auto dst = pm.target_spec().elements(n);
  std::map<std::vector<int>, int> dindex;
  for (size_t i = 0; i < dst.size(); ++i) dindex.emplace(dst[i], (int)i);
  QMat A(dst.size(), std::vector<mpq_class>(src.size(), 0));
  for (size_t j = 0; j < src.size(); ++j) {
    const auto& S = src[j];
    for (size_t part = 0; part < pm.tsizes.size(); ++part) {
      if (pm.c[part] == 0) continue;
      for (const auto& sub : domain_elements(Domain::subsets_of(pm.tsizes[part]), (int)S.size())) {
        std::vector<int> key{(int)part};
        for (int pos : sub) key.push_back(S[(size_t)pos]);
        A[(size_t)dindex.at(key)][j] += pm.c[part];
      }
    }
  }
  return A;
}

inline bool pattern_injective(const PatternMap& pm, int n) {
  auto A = pattern_matrix(pm, n);
  return A.empty() ? true : qmat_rank(A) == (int)A[0].size();
}

// Stable fixed dimension of coker(pattern map) at T = {0..m-1}: vectors in
// the quotient fixed at truncation m+s+1 whose inclusion stays fixed one
// truncation higher.  This never consults the source/target growth
// polynomials, so additivity checks against it are meaningful.
inline long quotient_stable_fixed_dim(const PatternMap& pm, int m) {
  pm.validate();
  int n = m + pm.s + 1;
  auto T = front_segment(m);

  auto build = [&](int nn) {
    struct Layer {
      std::vector<std::vector<int>> elems;
      std::map<std::vector<int>, int> index;
      ColSpaceProjector proj;
      QMat Q;  // projector applied to each unit vector, codim x D
      std::vector<Perm> gens;
    };
    Layer L;
    L.elems = pm.target_spec().elements(nn);
    for (size_t i = 0; i < L.elems.size(); ++i) L.index.emplace(L.elems[i], (int)i);
    L.proj = ColSpaceProjector::make(pattern_matrix(pm, nn));
    int D = (int)L.elems.size();
    L.Q.assign((size_t)L.proj.codim(), std::vector<mpq_class>((size_t)D, 0));
    for (int e = 0; e < D; ++e) {
      std::vector<mpq_class> unit((size_t)D, 0);
      unit[(size_t)e] = 1;
      auto col = L.proj.project(std::move(unit));
      for (size_t r = 0; r < col.size(); ++r) L.Q[r][(size_t)e] = col[r];
    }
    L.gens = SubgroupSpec::pointwise(nn, T).generators();
    return L;
  };

  auto Ln = build(n);
  auto Lup = build(n + 1);
  auto spec = pm.target_spec();
  int D = (int)Ln.elems.size();

  // Unknown: a target vector w at truncation n.  Rows demand that the class
  // of w is fixed by every generator both at n and, after inclusion, at n+1.
  QMat sys;
  auto add_rows = [&](const auto& L) {
    std::vector<int> incl((size_t)D);
    for (int e = 0; e < D; ++e) incl[(size_t)e] = L.index.at(Ln.elems[(size_t)e]);
    for (const auto& g : L.gens) {
      if (g.is_identity()) continue;
      std::vector<int> image((size_t)D);
      for (int e = 0; e < D; ++e)
        image[(size_t)e] = L.index.at(spec.act(g, Ln.elems[(size_t)e]));
      for (size_t r = 0; r < L.Q.size(); ++r) {
        std::vector<mpq_class> row((size_t)D, 0);
        bool nonzero = false;
        for (int e = 0; e < D; ++e) {
          row[(size_t)e] = L.Q[r][(size_t)image[(size_t)e]] - L.Q[r][(size_t)incl[(size_t)e]];
          if (row[(size_t)e] != 0) nonzero = true;
        }
        if (nonzero) sys.push_back(std::move(row));
      }
    }
  };
  add_rows(Ln);
  add_rows(Lup);

  int rank = sys.empty() ? 0 : qmat_rank(sys);
  long w_st = D - rank;
  return w_st - Ln.proj.rank();
}

inline BinPoly quotient_growth_fit(const PatternMap& pm, const std::vector<long>& sizes) {
  std::vector<std::pair<long, mpz_class>> pts;
  for (long m : sizes) pts.emplace_back(m, quotient_stable_fixed_dim(pm, (int)m));
  return fit_binpoly(pts);
}

// "trivial", "psi", "binom:<s>" or "tuples:<s>", optionally joined by '+'
inline BasisSpec parse_basis_descriptor(const std::string& text) {
  std::vector<BasisSpec> parts;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t plus = text.find('+', pos);
    std::string word = text.substr(pos, plus == std::string::npos ? plus : plus - pos);
    auto numeric_suffix = [&](const std::string& prefix) -> int {
      std::string tail = word.substr(prefix.size());
      if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
        throw Error("bad size in basis descriptor: '" + word + "'");
      return std::stoi(tail);
    };
    if (word == "trivial")
      parts.push_back(BasisSpec::trivial());
    else if (word == "psi")
      parts.push_back(BasisSpec::subsets_of(1));
    else if (word.rfind("binom:", 0) == 0)
      parts.push_back(BasisSpec::subsets_of(numeric_suffix("binom:")));
    else if (word.rfind("tuples:", 0) == 0)
      parts.push_back(BasisSpec::tuples_of(numeric_suffix("tuples:")));
    else
      throw Error("unknown basis descriptor: '" + word + "'");
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  if (parts.empty()) throw Error("empty basis descriptor");
  return parts.size() == 1 ? parts.front() : BasisSpec::sum_of(std::move(parts));
}

}  // namespace semilin
