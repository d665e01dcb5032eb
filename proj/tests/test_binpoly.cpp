#include <catch2/catch_amalgamated.hpp>

#include "semilin/binpoly.hpp"
#include "semilin/poly.hpp"

using namespace semilin;

namespace {

BinPoly random_binpoly(Rng& rng, int max_deg) {
  std::vector<mpz_class> c(rng.below(max_deg + 1) + 1);
  for (auto& k : c) k = rng.range(-5, 5);
  return BinPoly(std::move(c));
}

// expand into Q[X] — a completely separate multiplication path used as oracle
Poly to_power_basis(const BinPoly& P, const RingPtr& R) {
  Poly out = Poly::zero(R);
  Poly X = Poly::var(R, 0);
  for (size_t i = 0; i < P.coeffs().size(); ++i) {
    Poly term = Poly::constant(R, mpq_class(P.coeffs()[i]) / mpq_class(factorial(i)));
    for (size_t j = 0; j < i; ++j) term = term * (X - Poly::constant(R, mpq_class((long)j)));
    out = out + term;
  }
  return out;
}

}  // namespace

TEST_CASE("power-to-binomial change of basis") {
  CHECK(power_to_binomial(0) == std::vector<mpz_class>{1});
  CHECK(power_to_binomial(2) == std::vector<mpz_class>{0, 1, 2});
  CHECK(power_to_binomial(3) == std::vector<mpz_class>{0, 1, 6, 6});
  for (int N = 0; N <= 8; ++N) {
    BinPoly p{power_to_binomial(N)};
    for (long t = 0; t <= N + 3; ++t) CHECK(p.eval(t) == pow_z(t, (unsigned long)N));
  }
}

TEST_CASE("binomial-basis products: pinned expansions") {
  BinPoly X1 = BinPoly::choose(1), X2 = BinPoly::choose(2);
  CHECK(binpoly_mul(X1, X1) == BinPoly({0, 1, 2}));
  CHECK(binpoly_mul(X1, X2) == BinPoly({0, 0, 2, 3}));
  BinPoly P({3, -1, 2});
  CHECK(binpoly_mul(P, BinPoly::constant(1)) == P);
  CHECK(binpoly_mul(P, BinPoly()).is_zero());
}

TEST_CASE("product evaluation matches pointwise products") {
  Rng rng(311);
  for (int iter = 0; iter < 40; ++iter) {
    BinPoly P = random_binpoly(rng, 6), Q = random_binpoly(rng, 6);
    BinPoly PQ = binpoly_mul(P, Q);
    for (long x = -3; x <= P.degree() + Q.degree() + 2; ++x)
      CHECK(PQ.eval(x) == P.eval(x) * Q.eval(x));
  }
}

TEST_CASE("ring axioms in the binomial basis") {
  Rng rng(7u);
  for (int iter = 0; iter < 30; ++iter) {
    BinPoly a = random_binpoly(rng, 5), b = random_binpoly(rng, 5), c = random_binpoly(rng, 4);
    CHECK(binpoly_mul(a, b) == binpoly_mul(b, a));
    CHECK(binpoly_mul(binpoly_mul(a, b), c) == binpoly_mul(a, binpoly_mul(b, c)));
    CHECK(binpoly_mul(a, b + c) == binpoly_mul(a, b) + binpoly_mul(a, c));
  }
}

TEST_CASE("products agree with expansion in Q[X]") {
  auto R = PolyRing::make(FieldCtx::rationals(), {"X"});
  Rng rng(14);
  for (int iter = 0; iter < 20; ++iter) {
    BinPoly P = random_binpoly(rng, 5), Q = random_binpoly(rng, 5);
    CHECK(to_power_basis(binpoly_mul(P, Q), R) == to_power_basis(P, R) * to_power_basis(Q, R));
  }
}

TEST_CASE("lambda operations: pinned values") {
  BinPoly X1 = BinPoly::choose(1);
  CHECK(lambda_op(2, X1) == BinPoly::choose(2));
  BinPoly P({1, 2, -1});
  CHECK(lambda_op(1, P) == P);
  CHECK(lambda_op(0, P) == BinPoly::constant(1));
  CHECK(lambda_op(2, BinPoly({0, 2})) == BinPoly({0, 1, 4}));
  // lambda^r of a constant c is the constant binom(c, r)
  CHECK(lambda_op(3, BinPoly::constant(5)) == BinPoly::constant(10));
}

TEST_CASE("lambda addition axiom") {
  Rng rng(99);
  for (int iter = 0; iter < 25; ++iter) {
    BinPoly P = random_binpoly(rng, 3), Q = random_binpoly(rng, 3);
    for (int r = 0; r <= 3; ++r) {
      BinPoly lhs = lambda_op(r, P + Q);
      BinPoly rhs;
      for (int i = 0; i <= r; ++i)
        rhs = rhs + binpoly_mul(lambda_op(i, P), lambda_op(r - i, Q));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("fitting through sample points with a held-out check") {
  std::vector<std::pair<long, mpz_class>> pts{{3, 3}, {4, 6}, {5, 10}, {6, 15}};
  CHECK(fit_binpoly(pts) == BinPoly::choose(2));

  // constant data
  CHECK(fit_binpoly({{2, 7}, {3, 7}, {4, 7}}) == BinPoly::constant(7));

  // non-consecutive abscissas
  BinPoly target({1, 0, 3});
  std::vector<std::pair<long, mpz_class>> scattered;
  for (long x : {1, 4, 6, 9, 11}) scattered.emplace_back(x, target.eval(x));
  CHECK(fit_binpoly(scattered) == target);

  // held-out point disagrees -> rejected
  pts.back().second = 16;
  CHECK_THROWS_AS(fit_binpoly(pts), FitError);
  CHECK_THROWS_WITH(fit_binpoly(pts), Catch::Matchers::ContainsSubstring("not eventually polynomial"));
  CHECK_THROWS_AS(fit_binpoly({{1, 1}}), FitError);
  CHECK_THROWS_AS(fit_binpoly({{1, 1}, {1, 2}, {2, 2}}), FitError);
}

TEST_CASE("binomial-basis printing") {
  CHECK(BinPoly().to_string() == "0");
  CHECK(BinPoly::constant(-2).to_string() == "-2");
  CHECK(BinPoly({1, 0, 2}).to_string() == "1 + 2*C(X,2)");
  CHECK(BinPoly({0, -1}).to_string() == "-C(X,1)");
  CHECK(BinPoly({3, 1, 0, -4}).to_string() == "3 + C(X,1) - 4*C(X,3)");
}
