#include <catch2/catch_amalgamated.hpp>

#include "semilin/parser.hpp"
#include "semilin/semimod.hpp"

using namespace semilin;

namespace {

SemiModule make_module(const FieldCtxPtr& k, int n, BasisSpec spec,
                       TruncatedField::Style style = TruncatedField::free_style) {
  return SemiModule::make(TruncatedField::make(k, n, style), std::move(spec));
}

std::vector<RatFunc> constant_vec(const SemiModule& M, const std::vector<mpq_class>& cs) {
  auto v = M.zero_vec();
  for (size_t i = 0; i < cs.size(); ++i) v[i] = RatFunc::constant(M.F.ring(), cs[i]);
  return v;
}

}  // namespace

TEST_CASE("field styles act by relabelling and detect unfaithful truncations") {
  auto Q = FieldCtx::rationals();
  auto F = TruncatedField::make(Q, 3, TruncatedField::ratios);
  Perm t01 = Perm::transposition(3, 0, 1);
  CHECK(F.apply(t01, F.x(0) / F.x(1)) == F.x(1) / F.x(0));
  CHECK(F.faithful_on({0, 1, 2}));
  CHECK(TruncatedField::make(Q, 5, TruncatedField::differences).faithful_on({2, 3, 4}));
  CHECK(TruncatedField::make(Q, 5, TruncatedField::simple_ratios).faithful_on({0, 1}));
  // two points cannot form a simple ratio, so swapping them fixes nothing
  auto F2 = TruncatedField::make(Q, 2, TruncatedField::simple_ratios);
  CHECK_FALSE(F2.faithful_on({0, 1}));
  CHECK_THROWS(F2.require_faithful_on({0, 1}));
  CHECK(F2.faithful_on({0}));  // nothing moves, nothing to distinguish
}

TEST_CASE("module action is semilinear") {
  auto M = make_module(FieldCtx::rationals(), 3, BasisSpec::subsets_of(1));
  auto R = M.F.ring();
  Perm t = Perm::transposition(3, 0, 1);
  std::vector<RatFunc> v{parse_ratfunc(R, "x0^2"), parse_ratfunc(R, "x1 + 1"),
                         parse_ratfunc(R, "x2/x0")};
  RatFunc a = parse_ratfunc(R, "x0/x1");
  auto scaled = v;
  for (auto& e : scaled) e = a * e;
  auto lhs = M.act(t, scaled);
  auto rhs = M.act(t, v);
  RatFunc ta = M.F.apply(t, a);
  for (auto& e : rhs) e = ta * e;
  CHECK(lhs == rhs);
  // positions permute: [x0] goes to position of [x1]
  auto u = M.unit(0);
  CHECK(M.act(t, u) == M.unit(1));
}

TEST_CASE("stable fixed dimensions of the catalog modules") {
  auto Q = FieldCtx::rationals();
  CHECK(fixed_dim(make_module(Q, 7, BasisSpec::subsets_of(2)), {0, 1, 2, 3}) == 6);
  CHECK(fixed_dim(make_module(Q, 5, BasisSpec::trivial()), {0, 1, 2}) == 1);
  CHECK(fixed_dim(make_module(Q, 5, BasisSpec::subsets_of(1)), {0, 1, 2}) == 3);
  for (int s = 0; s <= 3; ++s)
    for (int t = s; t <= 6; ++t) {
      auto M = make_module(Q, t + s + 1, BasisSpec::subsets_of(s));
      CHECK(fixed_dim(M, front_segment(t)) == binomial(t, (unsigned long)s));
    }
  // tuples admit repeats: |T|^2 stable orbits
  CHECK(fixed_dim(make_module(Q, 6, BasisSpec::tuples_of(2)), {0, 1, 2}) == 9);
  // diagonal action on a product multiplies stable counts
  auto P = BasisSpec::product_of(BasisSpec::subsets_of(1), BasisSpec::subsets_of(2));
  CHECK(fixed_dim(make_module(Q, 8, P), {0, 1, 2, 3}) == 24);
  auto S = BasisSpec::sum_of({BasisSpec::subsets_of(1), BasisSpec::trivial()});
  CHECK(fixed_dim(make_module(Q, 5, S), {0, 1, 2}) == 4);
  CHECK_THROWS_WITH(fixed_dim(make_module(Q, 5, BasisSpec::subsets_of(2)), {0, 1, 2, 3}),
                    Catch::Matchers::ContainsSubstring("truncation too small"));
}

TEST_CASE("growth polynomials of permutation bases") {
  auto Q = FieldCtx::rationals();
  CHECK(growth_fit(make_module(Q, 10, BasisSpec::subsets_of(2)), {3, 4, 5, 6, 7}) ==
        BinPoly::choose(2));
  CHECK(growth_fit(make_module(Q, 8, BasisSpec::trivial()), {1, 2, 3, 4, 5, 6}) ==
        BinPoly::constant(1));
  auto S = BasisSpec::sum_of({BasisSpec::subsets_of(1), BasisSpec::trivial()});
  CHECK(growth_fit(make_module(Q, 9, S), {2, 3, 4, 5, 6, 7}) ==
        BinPoly::choose(1) + BinPoly::constant(1));
  auto M3 = make_module(Q, 12, BasisSpec::subsets_of(3));
  CHECK(growth_fit(M3, {4, 5, 6, 7, 8}) == BinPoly::choose(3));
  CHECK(level(M3) == 3);
  CHECK(level(make_module(Q, 7, BasisSpec::trivial())) == 0);
  auto mix = BasisSpec::sum_of({BasisSpec::subsets_of(1), BasisSpec::subsets_of(2)});
  CHECK(level(make_module(Q, 10, mix)) == 2);
}

TEST_CASE("growth of a product basis is the product of the growths") {
  auto Q = FieldCtx::rationals();
  auto A = BasisSpec::subsets_of(1), B = BasisSpec::subsets_of(2);
  auto AB = BasisSpec::product_of(A, B);
  auto sizes = default_growth_sizes(AB);
  auto M = make_module(Q, truncation_for(AB, sizes), AB);
  BinPoly lhs = growth_fit(M, sizes);
  BinPoly pa = growth_fit(make_module(Q, truncation_for(A, sizes), A), sizes);
  BinPoly pb = growth_fit(make_module(Q, truncation_for(B, sizes), B), sizes);
  CHECK(lhs == binpoly_mul(pa, pb));
}

TEST_CASE("equivariant maps extend orbit images and reject bad ones") {
  auto Q = FieldCtx::rationals();
  auto F = TruncatedField::make(Q, 5, TruncatedField::free_style);
  auto src = SemiModule::make(F, BasisSpec::subsets_of(2));
  auto dst = SemiModule::make(F, BasisSpec::subsets_of(1));

  // incidence: {a,b} -> [a] + [b]
  auto image = dst.zero_vec();
  image[0] = RatFunc::one(F.ring());
  image[1] = RatFunc::one(F.ring());
  auto phi = make_semimap(src, dst, {{{0, 1}, image}});
  CHECK(phi.commutes_with_action());
  CHECK(kernel(phi).dim == 5);
  CHECK(common_kernel({phi}).dim == 5);
  CHECK(cokernel_dim(phi) == 0);  // the pair-incidence matrix has full rank over Q

  // asymmetric image is not fixed by the representative's stabilizer
  auto bad = dst.zero_vec();
  bad[0] = RatFunc::one(F.ring());
  CHECK_THROWS_WITH(make_semimap(src, dst, {{{0, 1}, bad}}),
                    Catch::Matchers::ContainsSubstring("certificate"));
}

TEST_CASE("pair incidence drops rank exactly in characteristic two") {
  auto F2 = TruncatedField::make(FieldCtx::prime_field(2), 5, TruncatedField::free_style);
  auto src = SemiModule::make(F2, BasisSpec::subsets_of(2));
  auto dst = SemiModule::make(F2, BasisSpec::subsets_of(1));
  auto image = dst.zero_vec();
  image[0] = RatFunc::one(F2.ring());
  image[1] = RatFunc::one(F2.ring());
  auto phi = make_semimap(src, dst, {{{0, 1}, image}});
  CHECK(rank_of(phi.matrix()) == 4);
  CHECK(cokernel_dim(phi) == 1);  // within the s - 1 bound
}

TEST_CASE("difference-twisted map has the expected cokernel over the rationals") {
  auto Q = FieldCtx::rationals();
  auto F = TruncatedField::make(Q, 5, TruncatedField::differences);
  auto src = SemiModule::make(F, BasisSpec::subsets_of(2));
  auto dst = SemiModule::make(F, BasisSpec::subsets_of(1));
  auto image = dst.zero_vec();
  image[0] = F.x(0) - F.x(1);
  image[1] = F.x(1) - F.x(0);
  auto phi = make_semimap(src, dst, {{{0, 1}, image}});
  CHECK(phi.commutes_with_action());
  CHECK(rank_of(phi.matrix()) == 4);
  CHECK(cokernel_dim(phi) == 1);
}

TEST_CASE("augmentation and identity maps") {
  auto Q = FieldCtx::rationals();
  auto F = TruncatedField::make(Q, 4, TruncatedField::free_style);
  auto psi = SemiModule::make(F, BasisSpec::subsets_of(1));
  auto triv = SemiModule::make(F, BasisSpec::trivial());
  auto one = triv.zero_vec();
  one[0] = RatFunc::one(F.ring());
  auto aug = make_semimap(psi, triv, {{{0}, one}});
  CHECK(kernel(aug).dim == 3);
  CHECK(cokernel_dim(aug) == 0);

  auto ident = make_semimap(psi, psi, {{{0}, psi.unit(0)}});
  CHECK(kernel(ident).dim == 0);
  CHECK_THROWS_WITH(cokernel_dim(make_semimap(psi, triv, {{{0}, triv.zero_vec()}})),
                    Catch::Matchers::ContainsSubstring("zero map"));
}

TEST_CASE("constants-rank versus field-rank of twisted-fixed families") {
  auto Q = FieldCtx::rationals();
  auto spec = BasisSpec::sum_of({BasisSpec::subsets_of(1), BasisSpec::subsets_of(2)});
  auto M = make_module(Q, 4, spec);
  // all-ones over the psi part, all-ones over the pair part
  auto v1 = M.zero_vec();
  auto v2 = M.zero_vec();
  for (int i = 0; i < M.dim(); ++i)
    (M.elems[(size_t)i][0] == 0 ? v1 : v2)[(size_t)i] = RatFunc::one(M.F.ring());
  auto rep = check_semilinear_independence(M, {v1, v2});
  CHECK(rep.rank_constants == 2);
  CHECK(rep.rank_field == 2);
  CHECK(rep.consistent);

  auto single = check_semilinear_independence(M, {v1});
  CHECK(single.rank_constants == 1);
  CHECK(single.rank_field == 1);

  auto dup = check_semilinear_independence(M, {v2, v2});
  CHECK(dup.rank_constants == 1);
  CHECK(dup.rank_field == 1);
  CHECK(dup.consistent);

  auto psi = make_module(Q, 2, BasisSpec::subsets_of(1));
  auto w = constant_vec(psi, {1, -1});  // swaps to its negative
  CHECK_THROWS_WITH(check_semilinear_independence(psi, {w}),
                    Catch::Matchers::ContainsSubstring("twist not respected"));
  auto srep = check_semilinear_independence(psi, {w}, Twist::sign);
  CHECK(srep.rank_field == 1);
}

TEST_CASE("quotient growth of support-nonincreasing maps") {
  PatternMap shift{1, {1, 0}, {1, 1}};  // [i] -> [i] + 1
  CHECK(pattern_injective(shift, 4));
  for (int m = 2; m <= 5; ++m) CHECK(quotient_stable_fixed_dim(shift, m) == 1);
  CHECK(quotient_growth_fit(shift, {2, 3, 4, 5, 6}) == BinPoly::constant(1));

  PatternMap down{2, {2, 1}, {1, 1}};  // [S] -> [S] + sum of its points
  CHECK(pattern_injective(down, 5));
  CHECK(quotient_growth_fit(down, {3, 4, 5, 6, 7}) == BinPoly::choose(1));

  PatternMap wide{2, {2, 1, 0}, {1, 2, -1}};
  CHECK(quotient_growth_fit(wide, {3, 4, 5, 6, 7}) ==
        BinPoly::choose(1) + BinPoly::constant(1));

  PatternMap iso{1, {1}, {3}};  // isomorphism onto the whole target
  CHECK(quotient_growth_fit(iso, {2, 3, 4, 5}).is_zero());

  PatternMap pure_down{2, {1}, {1}};  // loses the pair part entirely
  CHECK_FALSE(pattern_injective(pure_down, 5));
}

TEST_CASE("growth additivity along randomized injections") {
  auto Q = FieldCtx::rationals();
  Rng rng(2024);
  for (int iter = 0; iter < 12; ++iter) {
    int s = 1 + (int)rng.below(2);
    PatternMap pm;
    pm.s = s;
    pm.tsizes.push_back(s);  // keep one full-size part so the map injects
    pm.c.emplace_back(rng.range(1, 3));
    int extra = (int)rng.below(3);
    for (int j = 0; j < extra; ++j) {
      pm.tsizes.push_back((int)rng.below(s + 1));
      pm.c.emplace_back(rng.range(-2, 2));
    }
    REQUIRE(pattern_injective(pm, s + 3));

    std::vector<long> sizes;
    for (long m = s + 1; m <= s + 5; ++m) sizes.push_back(m);
    auto src_spec = pm.source_spec();
    auto dst_spec = pm.target_spec();
    BinPoly p_src =
        growth_fit(make_module(Q, truncation_for(src_spec, sizes), src_spec), sizes);
    BinPoly p_dst =
        growth_fit(make_module(Q, truncation_for(dst_spec, sizes), dst_spec), sizes);
    BinPoly p_coker = quotient_growth_fit(pm, sizes);
    CHECK(p_src + p_coker == p_dst);
  }
}

TEST_CASE("basis descriptors parse into specs") {
  CHECK(parse_basis_descriptor("trivial").degree() == 0);
  CHECK(parse_basis_descriptor("psi").describe() == "psi");
  CHECK(parse_basis_descriptor("binom:3").degree() == 3);
  CHECK(parse_basis_descriptor("tuples:2").elements(3).size() == 9);
  auto s = parse_basis_descriptor("psi+trivial+binom:2");
  CHECK(s.kind() == BasisSpec::direct_sum);
  CHECK(s.elements(4).size() == 4 + 1 + 6);
  CHECK_THROWS(parse_basis_descriptor("binom:x"));
  CHECK_THROWS(parse_basis_descriptor("garbage"));
}
