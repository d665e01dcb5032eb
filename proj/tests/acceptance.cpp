// End-to-end verification: ten timed checks over the whole library, one
// PASS/FAIL line each.  Exact arithmetic throughout -- every comparison is
// equality, and each check carries a wall-clock budget that counts as part
// of the verdict.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "semilin/fieldcat.hpp"
#include "semilin/k0ring.hpp"
#include "semilin/semimod.hpp"
#include "semilin/socle.hpp"
#include "semilin/structiso.hpp"

using namespace semilin;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void run(int idx, const char* title, double limit_s, Outcome (*fn)()) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = fn();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    out.ok = false;
    out.detail = "time budget exceeded" + (out.detail.empty() ? "" : "; " + out.detail);
  }
  if (!out.ok) ++failures;
  std::printf("%s  %2d/10  %-36s  %6.2fs of %3.0fs%s%s\n", out.ok ? "PASS" : "FAIL", idx, title,
              secs, limit_s, out.detail.empty() ? "" : "  -- ", out.detail.c_str());
  std::fflush(stdout);
}

// 1: fixed-space growth of the four stock modules fits the expected
// binomial polynomials, with the held-out consistency point.
Outcome growth_polynomials() {
  auto Q = FieldCtx::rationals();
  struct Case {
    const char* desc;
    BinPoly expect;
  };
  std::vector<Case> cases{{"trivial", BinPoly::constant(1)},
                          {"psi", BinPoly::choose(1)},
                          {"binom:2", BinPoly::choose(2)},
                          {"binom:3", BinPoly::choose(3)}};
  for (const auto& c : cases) {
    auto spec = parse_basis_descriptor(c.desc);
    auto sizes = default_growth_sizes(spec);
    auto F = TruncatedField::make(Q, truncation_for(spec, sizes), TruncatedField::free_style);
    BinPoly fit = growth_fit(SemiModule::make(F, spec), sizes);
    if (!(fit == c.expect))
      return {false, std::string(c.desc) + " fitted " + fit.to_string()};
  }
  return {true, "1, C(X,1), C(X,2), C(X,3)"};
}

// 2: source fit + cokernel fit == target fit for randomized injective maps.
Outcome growth_additivity() {
  auto Q = FieldCtx::rationals();
  Rng rng(2024);
  const int wanted = 20;
  int done = 0;
  for (int iter = 0; done < wanted; ++iter) {
    if (iter > 10 * wanted) return {false, "generator kept producing non-injective maps"};
    int s = 1 + (int)rng.below(2);
    PatternMap pm;
    pm.s = s;
    pm.tsizes.push_back(s);
    pm.c.emplace_back(rng.range(1, 3));
    int extra = (int)rng.below(3);
    for (int j = 0; j < extra; ++j) {
      pm.tsizes.push_back((int)rng.below(s + 1));
      pm.c.emplace_back(rng.range(-2, 2));
    }
    if (!pattern_injective(pm, s + 3)) continue;
    ++done;
    std::vector<long> sizes;
    for (long m = s + 1; m <= s + 5; ++m) sizes.push_back(m);
    auto src_spec = pm.source_spec();
    auto dst_spec = pm.target_spec();
    auto fit_of = [&](const BasisSpec& spec) {
      auto F =
          TruncatedField::make(Q, truncation_for(spec, sizes), TruncatedField::free_style);
      return growth_fit(SemiModule::make(F, spec), sizes);
    };
    BinPoly p_src = fit_of(src_spec), p_dst = fit_of(dst_spec);
    BinPoly p_coker = quotient_growth_fit(pm, sizes);
    if (!(p_src + p_coker == p_dst))
      return {false, "additivity broke at trial " + std::to_string(done)};
  }
  return {true, std::to_string(wanted) + " randomized injections"};
}

int brute_rank_mod(std::vector<std::vector<int>> M, int q) {
  int m = (int)M.size(), cols = m ? (int)M[0].size() : 0, rank = 0;
  for (int col = 0; col < cols && rank < m; ++col) {
    int pr = -1;
    for (int i = rank; i < m; ++i)
      if (M[i][col] % q != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(M[rank], M[pr]);
    int inv = 1;
    while ((M[rank][col] * inv) % q != 1) ++inv;
    for (int j = 0; j < cols; ++j) M[rank][j] = (M[rank][j] * inv) % q;
    for (int i = 0; i < m; ++i) {
      if (i == rank || M[i][col] % q == 0) continue;
      int f = M[i][col] % q;
      for (int j = 0; j < cols; ++j) M[i][j] = ((M[i][j] - f * M[rank][j]) % q + q * q) % q;
    }
    ++rank;
  }
  return rank;
}

long brute_embeddings(int q, int n, int N, int v) {
  int dim = N + v;
  long total = 1;
  for (int i = 0; i < dim; ++i) total *= q;
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < v; ++i) {
    std::vector<int> e(dim, 0);
    e[i] = 1;
    rows.push_back(e);
  }
  long count = 0;
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == n) {
      ++count;
      return;
    }
    for (long code = 0; code < total; ++code) {
      std::vector<int> vec(dim);
      long c = code;
      for (int i = 0; i < dim; ++i) {
        vec[i] = (int)(c % q);
        c /= q;
      }
      rows.push_back(vec);
      if (brute_rank_mod(rows, q) == (int)rows.size()) self(self, depth + 1);
      rows.pop_back();
    }
  };
  rec(rec, 0);
  return count;
}

// 3: the closed-form count of independent tuples over a small prime field
// equals exhaustive enumeration.
Outcome q_counting() {
  for (int q : {2, 3})
    for (int v = 0; v <= 1; ++v)
      for (int n = 0; n <= 3; ++n)
        for (int N = n; N <= 3; ++N)
          if (count_subspace_embeddings((unsigned long)q, n, N, v) !=
              brute_embeddings(q, n, N, v))
            return {false, "q=" + std::to_string(q) + " n=" + std::to_string(n) +
                               " N=" + std::to_string(N) + " v=" + std::to_string(v)};
  if (count_subspace_embeddings(1, 2, 4, 0) != 12) return {false, "q=1 path"};
  return {true, "q in {2,3}, n,N <= 3, v in {0,1}"};
}

// 4: digitwise binomials, the divided-power algebra, the twisted-power
// congruence grid, and the rational fixed line.
Outcome socle_machinery() {
  for (unsigned long p : {2ul, 3ul, 5ul})
    for (unsigned long n = 0; n <= 200; ++n)
      for (unsigned long m = 0; m <= n; ++m)
        if (mpz_class((long)lucas(n, m, p)) != binomial(mpz_class(n), m) % (long)p)
          return {false, "digitwise binomial at n=" + std::to_string(n) +
                             " m=" + std::to_string(m) + " p=" + std::to_string(p)};

  for (unsigned long p : {2ul, 3ul}) {
    auto K = FieldCtx::prime_field(p);
    int order = (int)(2 * p * p);
    for (int i = 0; i <= order; ++i)
      for (int j = 0; i + j <= order; ++j) {
        auto prod = DOperator::basis(K, i, order) * DOperator::basis(K, j, order);
        auto expect = DOperator::zero(K, order);
        expect.a[(size_t)(i + j)] =
            FieldElem(K, mpq_class(binomial((long)(i + j), (unsigned long)i)));
        if (prod != expect)
          return {false, "operator relation at p=" + std::to_string(p) +
                             " i=" + std::to_string(i) + " j=" + std::to_string(j)};
      }
    if (!DOperator::basis(K, 1, order).pow((int)p).is_zero())
      return {false, "first operator not nilpotent at p=" + std::to_string(p)};
  }

  auto all_sigma = SubgroupSpec::full_group(4).enumerate();
  for (unsigned long p : {2ul, 3ul})
    for (int n = 0; n <= 16; ++n)
      for (const auto& s : all_sigma) {
        auto r = socle_congruence_check(n, p, s, 4);
        if (!r.pass)
          return {false, "congruence n=" + std::to_string(n) + " p=" + std::to_string(p) +
                             " sigma=" + s.to_string() + ": " + r.witness};
      }

  auto line = fixed_class_check(FieldCtx::rationals(), 4, 4);
  if (line.dim != 1 || !line.line_is_x)
    return {false, "rational fixed space has dimension " + std::to_string(line.dim)};
  return {true, "binomials to 200; operators at 2p^2; powers to 16; fixed line"};
}

// 5: wedge, symmetric-generator, finite-index splitting, triple-splitting
// and coinduction counts -- all bijective at truncation.
Outcome structural_isomorphisms() {
  auto Q = FieldCtx::rationals();
  for (auto [N, n] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 4}, {3, 5}}) {
    auto F = TruncatedField::make(Q, n, TruncatedField::free_style);
    auto r = vandermonde_wedge_check(N, n, F);
    if (!r.pass || r.rank != r.dim_src)
      return {false, "wedge N=" + std::to_string(N) + " n=" + std::to_string(n) + ": " +
                         r.witness};
  }
  for (auto [N, n] : std::vector<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 4}}) {
    auto r = alpha_map_check(N, n);
    if (!r.pass || r.rank != r.dim_src)
      return {false, "symmetric generators N=" + std::to_string(N) +
                         " n=" + std::to_string(n) + ": " + r.witness};
  }
  {
    std::vector<int> T{0, 1};
    auto Fr = TruncatedField::make(Q, 4, TruncatedField::ratios);
    auto rr = rho_split_check(4, T, true, Fr);
    if (!rr.pass || rr.rank != 12) return {false, "ratio splitting: " + rr.witness};
    auto F2d = TruncatedField::make(FieldCtx::prime_field(2), 4, TruncatedField::differences);
    auto refusal = rho_split_check(4, T, true, F2d);
    if (!refusal.refused || refusal.pass)
      return {false, "char-2 difference case was not refused"};
  }
  {
    struct TS {
      int np, s, n;
      long count;
    };
    for (auto [np, s, n, count] : {TS{2, 1, 5, 50}, TS{1, 1, 4, 16}, TS{1, 0, 3, 3}}) {
      auto r = triple_split_check(np, s, n);
      if (!r.pass || r.dim_src != count)
        return {false, "triple split (" + std::to_string(np) + "," + std::to_string(s) + "," +
                           std::to_string(n) + ") counted " + std::to_string(r.dim_src)};
    }
    auto c1 = coinduction_count_check({0, 1}, {0, 1}, 6);
    if (!c1.pass || c1.dim_src != 7) return {false, "coinduction J=T: " + c1.witness};
    auto c2 = coinduction_count_check({0}, {1, 2}, 5);
    if (!c2.pass || c2.dim_src != 3) return {false, "coinduction disjoint: " + c2.witness};
  }
  return {true, "wedge, generators, splittings, counts"};
}

// 6: partial-fraction round-trips reassemble exactly.
Outcome partial_fractions() {
  Rng rng(90210);
  for (unsigned long p : {0ul, 5ul}) {
    auto K = p ? FieldCtx::prime_field(p) : FieldCtx::rationals();
    auto R = PolyRing::make(K, {"t"});
    RatFunc t = RatFunc::var(R, 0), one = RatFunc::one(R);
    std::vector<RatFunc> pool;
    if (p == 0)
      pool = {t - one, t - RatFunc::constant(R, mpq_class(2)),
              t + RatFunc::constant(R, mpq_class(3)), t * t + one,
              t * t + RatFunc::constant(R, mpq_class(2)), t * t + t + one};
    else
      pool = {t - one, t - RatFunc::constant(R, mpq_class(2)),
              t - RatFunc::constant(R, mpq_class(3)),
              t * t - RatFunc::constant(R, mpq_class(2)), t * t + t + one};
    for (int trial = 0; trial < 500; ++trial) {
      RatFunc den = t.pow((long)rng.below(3));
      int nfac = 1 + (int)rng.below(3);
      for (int i = 0; i < nfac; ++i)
        den = den * pool[rng.below(pool.size())].pow(1 + (long)rng.below(2));
      RatFunc num = RatFunc::zero(R);
      for (int d = 0; d <= 6; ++d)
        num = num + RatFunc::constant(R, mpq_class((long)rng.below(11) - 5)) * t.pow(d);
      RatFunc f = num / den;
      if (partial_fraction(f, 0, pool).reassemble() != f)
        return {false, "round-trip failed over " + std::string(p ? "F5" : "Q") +
                           " at trial " + std::to_string(trial)};
    }
  }
  return {true, "500 round-trips each over Q and F5"};
}

// 7: binomial-basis conversion, lambda additivity, the twisted product
// relation, and Smith normal form on random rectangles.
Outcome k0_ring() {
  for (int N = 0; N <= 8; ++N) {
    BinPoly P(power_to_binomial(N));
    for (long x = 0; x <= N + 3; ++x)
      if (P.eval(x) != pow_z(mpz_class(x), (unsigned long)N))
        return {false, "basis conversion at N=" + std::to_string(N)};
  }

  Rng rng(4242);
  auto random_binpoly = [&] {
    std::vector<mpz_class> c;
    int d = (int)rng.below(4);
    for (int i = 0; i <= d; ++i) c.emplace_back((long)rng.below(7) - 3);
    return BinPoly(std::move(c));
  };
  for (int iter = 0; iter < 100; ++iter) {
    BinPoly P = random_binpoly(), Q = random_binpoly();
    int r = (int)rng.below(4);
    BinPoly rhs;
    for (int i = 0; i <= r; ++i)
      rhs = rhs + binpoly_mul(lambda_op(i, P), lambda_op(r - i, Q));
    if (!(lambda_op(r, P + Q) == rhs))
      return {false, "lambda additivity at trial " + std::to_string(iter)};
  }

  auto Z = gamma_perp({}, 1);
  auto d = GroupRingElt::basis(Z, {mpz_class(1)}) - GroupRingElt::basis(Z, {mpz_class(0)});
  for (int s = 1; s <= 3; ++s) {
    auto prod = k0a_mul(K0Class(BinPoly(), d), K0Class(BinPoly::choose(s), GroupRingElt::zero(Z)));
    if (!prod.poly.is_zero() || !prod.aug.is_zero())
      return {false, "annihilation relation at level " + std::to_string(s)};
  }
  auto box = gamma_perp({{2, 0}, {0, 3}}, 2);
  auto zero2 = GroupRingElt::basis(box, {mpz_class(0), mpz_class(0)});
  auto random_k0 = [&] {
    GroupRingElt a = GroupRingElt::zero(box);
    for (int k = 0; k < 3; ++k) {
      std::vector<mpz_class> v{(long)rng.below(11) - 5, (long)rng.below(11) - 5};
      a = a + (GroupRingElt::basis(box, v) - zero2) * mpz_class((long)rng.below(7) - 3);
    }
    return K0Class(random_binpoly(), std::move(a));
  };
  for (int iter = 0; iter < 100; ++iter) {
    K0Class a = random_k0(), b = random_k0(), c = random_k0();
    if (k0a_mul(k0a_mul(a, b), c) != k0a_mul(a, k0a_mul(b, c)))
      return {false, "associativity at trial " + std::to_string(iter)};
  }

  for (int iter = 0; iter < 100; ++iter) {
    ZMat A(3, std::vector<mpz_class>(4));
    for (auto& row : A)
      for (auto& x : row) x = (long)rng.below(41) - 20;
    auto s = smith_normal_form(A);
    if (zmat_mul(zmat_mul(s.U, A), s.V) != s.D)
      return {false, "transform identity at trial " + std::to_string(iter)};
    if (abs(zmat_det(s.U)) != 1 || abs(zmat_det(s.V)) != 1)
      return {false, "non-unimodular transform at trial " + std::to_string(iter)};
    mpz_class prev = -1;
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = 0; j < 4; ++j) {
        if (i != j && s.D[i][j] != 0) return {false, "off-diagonal entry"};
        if (i == j) {
          if (s.D[i][j] < 0) return {false, "negative diagonal entry"};
          if (prev > 0 && s.D[i][j] != 0 && s.D[i][j] % prev != 0)
            return {false, "divisibility chain broken"};
          if (prev == 0 && s.D[i][j] != 0) return {false, "nonzero entry after zero"};
          prev = s.D[i][j];
        }
      }
  }
  return {true, "conversion, lambda, product laws, 100 random forms"};
}

// 8: kernel of the subset-boundary map has the expected dimension.
Outcome incidence_kernels() {
  auto Q = FieldCtx::rationals();
  for (auto [n, t] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {6, 2}, {6, 3}}) {
    auto F = TruncatedField::make(Q, n, TruncatedField::free_style);
    auto src = SemiModule::make(F, BasisSpec::subsets_of(t));
    auto dst = SemiModule::make(F, BasisSpec::subsets_of(t - 1));
    std::vector<int> lead(t);
    std::iota(lead.begin(), lead.end(), 0);
    auto image = dst.zero_vec();
    for (int drop = 0; drop < t; ++drop) {
      std::vector<int> sub;
      for (int i = 0; i < t; ++i)
        if (i != drop) sub.push_back(lead[(size_t)i]);
      for (int k = 0; k < dst.dim(); ++k)
        if (dst.elems[(size_t)k] == sub) {
          image[(size_t)k] = image[(size_t)k] + RatFunc::one(F.ring());
          break;
        }
    }
    auto phi = make_semimap(src, dst, {{lead, image}});
    long want =
        mpz_class(binomial(n, (unsigned long)t) - binomial(n, (unsigned long)(t - 1))).get_si();
    long got = common_kernel({phi}).dim;
    if (got != want)
      return {false, "(" + std::to_string(n) + "," + std::to_string(t) + ") kernel dim " +
                         std::to_string(got) + ", wanted " + std::to_string(want)};
  }
  return {true, "C(n,t) - C(n,t-1) at all four shapes"};
}

// 9: the generator-identity catalog, the two substitution families, and the
// curve-addition reduction.
Outcome identity_catalog() {
  int ids = 0;
  for (const auto& e : field_catalog()) {
    auto r = verify_identity_suite(e);
    ids += (int)r.rows.size();
    if (!r.pass) return {false, "catalog entry " + e.label + ": " + r.witness};
  }
  if (ids < 10) return {false, "catalog carries only " + std::to_string(ids) + " identities"};

  struct DParam {
    int n;
    long a;
    unsigned long p;
  };
  for (auto [n, a, p] : {DParam{3, 1, 0}, DParam{4, 2, 0}, DParam{3, 1, 3}}) {
    auto r = dihedral_check(n, mpq_class(a), p);
    if (!r.pass)
      return {false, "involution (" + std::to_string(n) + "," + std::to_string(a) + "," +
                         std::to_string(p) + "): " + r.witness};
  }
  {
    auto r = dihedral_check(3, 1, 2);
    bool skipped_eigen = false;
    for (const auto& [name, status] : r.rows)
      if (name == "eigenvector" && status.rfind("skipped", 0) == 0) skipped_eigen = true;
    if (!r.pass || !skipped_eigen) return {false, "char-2 eigen skip not honored"};
  }
  {
    auto r = a4_eigen_check();
    if (!r.pass) return {false, "order-3 family: " + r.witness};
  }
  {
    auto sym = elliptic_addition_check();
    if (!sym.pass) return {false, "symbolic addition: " + sym.witness};
    auto num = elliptic_addition_check(0, 1);
    if (!num.pass) return {false, "addition at (0,1): " + num.witness};
  }
  return {true, std::to_string(ids) + " identities plus substitution families"};
}

// 10: the span of semilinear automorphism twists has full matrix rank.
Outcome galois_density() {
  auto Q2 = FieldCtx::extension(0, "r", {-2, 0, 1});
  FieldElem a = FieldElem::generator(Q2);
  auto h1 = hilbert90_finite_check(Q2, {a, -a});
  if (!h1.pass || h1.rank != 4) return {false, "quadratic rational case: " + h1.witness};
  auto F9 = FieldCtx::extension(3, "i", {1, 0, 1});
  FieldElem b = FieldElem::generator(F9);
  auto h2 = hilbert90_finite_check(F9, {b, -b});
  if (!h2.pass || h2.rank != 4) return {false, "nine-element case: " + h2.witness};
  return {true, "both quadratic models at full rank"};
}

}  // namespace

int main() {
  run(1, "growth polynomial fits", 5, growth_polynomials);
  run(2, "growth additivity", 20, growth_additivity);
  run(3, "q-counting vs enumeration", 5, q_counting);
  run(4, "socle machinery", 60, socle_machinery);
  run(5, "structural isomorphisms", 60, structural_isomorphisms);
  run(6, "partial-fraction round-trips", 30, partial_fractions);
  run(7, "lambda-ring and Smith forms", 20, k0_ring);
  run(8, "incidence kernel dimensions", 20, incidence_kernels);
  run(9, "identity catalog", 60, identity_catalog);
  run(10, "Galois density", 2, galois_density);
  std::printf("%d/10 passed\n", 10 - failures);
  return failures ? 1 : 0;
}
