#pragma once

#include <string>
#include <utility>
#include <vector>

#include "semilin/linalg.hpp"
#include "semilin/parser.hpp"
#include "semilin/perm.hpp"
#include "semilin/ratfunc.hpp"

namespace semilin {

constexpr int kCongruenceMaxN = 64;

// binom(n, m) mod p by the digitwise product
inline unsigned long lucas(unsigned long n, unsigned long m, unsigned long p) {
  if (!is_prime_ul(p)) throw Error("lucas residue needs a prime modulus");
  unsigned long r = 1;
  while (m || n) {
    unsigned long nd = n % p, md = m % p;
    if (md > nd) return 0;
    mpz_class b = binomial((long)nd, md);
    r = (r * mpz_class(b % (long)p).get_ui()) % p;
    n /= p;
    m /= p;
  }
  return r;
}

// base-p digit sum; p = 0 falls back to the degree itself
inline unsigned long digit_sum(unsigned long n, unsigned long p) {
  if (p == 0) return n;
  if (p < 2) throw Error("digit sum needs base at least 2");
  unsigned long s = 0;
  for (; n; n /= p) s += n % p;
  return s;
}

// m is dominated by n: every base-p digit of m fits under the one of n
// (equivalently p does not divide binom(n, m)); plain <= when p = 0
inline bool dominated(unsigned long m, unsigned long n, unsigned long p) {
  if (p == 0) return m <= n;
  for (; m || n; m /= p, n /= p)
    if (m % p > n % p) return false;
  return true;
}

struct FiltLevel {
  unsigned long p = 0;
  unsigned long s = 0;
  unsigned long d = 0;
  std::vector<unsigned long> exponents;
};

// exponents n <= d whose digit sum is at most s (degrees <= s when p = 0)
inline FiltLevel phi_basis(unsigned long p, unsigned long s, unsigned long d) {
  if (p != 0 && !is_prime_ul(p)) throw Error("filtration base must be prime or zero");
  FiltLevel L{p, s, d, {}};
  for (unsigned long n = 0; n <= d; ++n)
    if (digit_sum(n, p) <= s) L.exponents.push_back(n);
  return L;
}

// ---- the divided-power operator algebra ----

// Truncated element sum_i a_i D^(i) with D^(i) D^(j) = binom(i+j, i) D^(i+j);
// coefficients live in a field context, so binomials reduce modulo its
// characteristic on the way in.
struct DOperator {
  FieldCtxPtr K;
  std::vector<FieldElem> a;  // a[i] multiplies D^(i)

  static DOperator zero(const FieldCtxPtr& K, int order) {
    return {K, std::vector<FieldElem>((size_t)order + 1, FieldElem::zero(K))};
  }

  static DOperator basis(const FieldCtxPtr& K, int i, int order) {
    if (i < 0 || i > order) throw Error("basis index outside the truncation order");
    DOperator D = zero(K, order);
    D.a[(size_t)i] = FieldElem::one(K);
    return D;
  }

  static DOperator identity(const FieldCtxPtr& K, int order) { return basis(K, 0, order); }

  int order() const { return (int)a.size() - 1; }

  bool is_zero() const {
    for (const auto& c : a)
      if (!c.is_zero()) return false;
    return true;
  }

  bool operator==(const DOperator& o) const { return a == o.a; }
  bool operator!=(const DOperator& o) const { return !(*this == o); }

  DOperator operator+(const DOperator& o) const {
    check_compatible(o);
    DOperator r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = r.a[i] + o.a[i];
    return r;
  }

  DOperator operator*(const DOperator& o) const {
    check_compatible(o);
    DOperator r = zero(K, order());
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (size_t j = 0; j + i < a.size(); ++j) {
        if (o.a[j].is_zero()) continue;
        FieldElem b(K, mpq_class(binomial((long)(i + j), (unsigned long)i)));
        r.a[i + j] = r.a[i + j] + a[i] * o.a[j] * b;
      }
    }
    return r;
  }

  DOperator pow(int e) const {
    if (e < 0) throw Error("negative operator power");
    DOperator r = identity(K, order());
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  // action on a polynomial through the distinguished variable xv
  Poly apply(const Poly& f, int xv) const {
    if (f.ring()->K != K) throw Error("operator and polynomial coefficient fields differ");
    Poly out = Poly::zero(f.ring());
    for (size_t i = 0; i < a.size(); ++i)
      if (!a[i].is_zero()) out = out + Poly::constant(f.ring(), a[i]) * apply_d((int)i, f, xv);
    return out;
  }

 private:
  void check_compatible(const DOperator& o) const {
    if (K != o.K) throw Error("operators live over different coefficient fields");
    if (a.size() != o.a.size()) throw Error("truncation mismatch");
  }

 public:
  // D^(i): x^n -> binom(n, i) x^(n-i), extended linearly over everything else
  static Poly apply_d(int i, const Poly& f, int xv) {
    if (i < 0) throw Error("negative operator index");
    const RingPtr& R = f.ring();
    Poly out = Poly::zero(R);
    for (const auto& [e, c] : f.terms()) {
      int n = e[(size_t)xv];
      if (n < i) continue;
      FieldElem b = c * FieldElem(R->K, mpq_class(binomial(n, (unsigned long)i)));
      if (b.is_zero()) continue;
      ExpVec e2 = e;
      e2[(size_t)xv] = n - i;
      out = out + Poly::monomial(R, e2, b);
    }
    return out;
  }
};

inline DOperator compose_d(const DOperator& A, const DOperator& B) { return A * B; }

inline Poly apply_d(int i, const Poly& f, int xv) { return DOperator::apply_d(i, f, xv); }

// ---- congruence of twisted powers ----

struct CongruenceReport {
  bool pass = true;
  std::string witness;  // offending term when the check fails
};

// For t = x/(x-y) and the substitution action of sigma, sigma(t) = A t + B
// with A = (x-y)/(x^s-y^s), B = (x^s-x)/(x^s-y^s).  Verifies, in the
// denominator-cleared form ((x-y) t + (x^s-x))^n over F_p, that the expansion
// of sigma(t)^n has top coefficient A^n, that every other surviving exponent
// m is digit-dominated by n with a strictly smaller digit sum, and that each
// coefficient is the Lucas residue times A^m B^(n-m).
inline CongruenceReport socle_congruence_check(int n, unsigned long p, const Perm& sigma,
                                               int points) {
  if (!is_prime_ul(p)) throw Error("congruence check needs a prime characteristic");
  if (n < 0 || n > kCongruenceMaxN)
    throw Error("exponent outside the supported range 0.." + std::to_string(kCongruenceMaxN));
  if (points < 2 || sigma.n() != points) throw Error("need at least the two moved points");

  std::vector<std::string> names{"t"};
  for (int i = 0; i < points; ++i) names.push_back("x" + std::to_string(i));
  auto R = PolyRing::make(FieldCtx::prime_field(p), names);
  auto xv = [&](int i) { return Poly::var(R, i + 1); };
  auto moved = [&](int i) { return xv(sigma(i)); };

  Poly t = Poly::var(R, 0);
  Poly xmy = xv(0) - xv(1);            // x - y
  Poly xs_my = moved(0) - moved(1);    // x^s - y^s
  Poly xs_mx = moved(0) - xv(0);       // x^s - x

  // one rational-function check that the affine form is the real substitution
  {
    std::vector<int> dest(points + 1);
    dest[0] = 0;
    for (int i = 0; i < points; ++i) dest[i + 1] = sigma(i) + 1;
    RatFunc tau = RatFunc(xv(0)) / RatFunc(xmy);
    RatFunc lhs = tau.relabeled(dest);
    RatFunc A = RatFunc(xmy) / RatFunc(xs_my), B = RatFunc(xs_mx) / RatFunc(xs_my);
    if (lhs != A * tau + B)
      return {false, "affine form of the substitution does not match"};
  }

  Poly expansion = (xmy * t + xs_mx).pow(n);
  for (int m = 0; m <= n; ++m) {
    Poly got = expansion.coeff_of(0, m);
    unsigned long l = lucas((unsigned long)n, (unsigned long)m, p);
    Poly want = Poly::constant(R, mpq_class((long)l)) * xmy.pow(m) * xs_mx.pow(n - m);
    if (got != want)
      return {false, "coefficient of t^" + std::to_string(m) + " differs from the Lucas form"};
    if (got.is_zero() || m == n) continue;
    if (!dominated((unsigned long)m, (unsigned long)n, p))
      return {false, "surviving exponent " + std::to_string(m) + " is not digit-dominated"};
    if (digit_sum((unsigned long)m, p) >= digit_sum((unsigned long)n, p))
      return {false, "no digit-sum drop at exponent " + std::to_string(m)};
  }
  return {true, ""};
}

// ---- fixed classes of the affine substitution action ----

struct FixedLineReport {
  long dim = 0;
  bool line_is_x = false;  // one-dimensional and spanned by the class of x
  std::vector<unsigned long> x_powers;  // exponents a with x^a inside the span
};

// Classes of polynomials in x with difference coefficients, modulo the
// x-free part.  The ansatz runs over x^a d1^b1 d2^b2 d3^b3 with 1 <= a <=
// xcap and b1+b2+b3 <= dcap, and invariance is imposed under the symmetric
// group on one more point than the differences mention: the fresh point
// removes every artifact that is merely symmetric in the truncated
// variables (power sums and friends).  Probability plays no role; the
// nullspace is computed exactly.
inline FixedLineReport fixed_class_check(const FieldCtxPtr& k, int xcap, int dcap) {
  if (xcap < 1 || dcap < 0) throw Error("empty ansatz");
  const int base = 3;  // differences d1..d3 available to the ansatz
  const int points = base + 2;  // fresh point included
  std::vector<std::string> names{"x"};
  for (int i = 1; i <= base + 1; ++i) names.push_back("d" + std::to_string(i));
  auto R = PolyRing::make(k, names);

  // ansatz monomials
  std::vector<ExpVec> mono;
  ExpVec e((size_t)base + 2, 0);
  for (int a = 1; a <= xcap; ++a)
    for (int b1 = 0; b1 <= dcap; ++b1)
      for (int b2 = 0; b1 + b2 <= dcap; ++b2)
        for (int b3 = 0; b1 + b2 + b3 <= dcap; ++b3) {
          e[0] = a;
          e[1] = b1;
          e[2] = b2;
          e[3] = b3;
          e[4] = 0;
          mono.push_back(e);
        }

  // substitution images of the coordinates under a transposition of points:
  // point j carries the coordinate x + d_j (d_0 = 0)
  auto point_coord = [&](int j) {
    Poly c = Poly::var(R, 0);
    if (j > 0) c = c + Poly::var(R, j);
    return c;
  };
  std::vector<std::vector<FieldElem>> rows;
  std::map<ExpVec, size_t, GrlexLess> row_of;
  for (int g = 0; g + 1 < points; ++g) {
    Perm sigma = Perm::transposition(points, g, g + 1);
    // images of x and the d's as polynomials
    std::vector<RatFunc> images;
    images.push_back(RatFunc(point_coord(sigma(0))));
    for (int i = 1; i <= base + 1; ++i)
      images.push_back(RatFunc(point_coord(sigma(i)) - point_coord(sigma(0))));
    for (size_t u = 0; u < mono.size(); ++u) {
      Poly M = Poly::monomial(R, mono[u], FieldElem::one(k));
      Poly diff = RatFunc(M).subst_all(images).num() - M;
      for (const auto& [ex, c] : diff.terms()) {
        if (ex[0] == 0) continue;  // x-free part is quotiented away
        auto it = row_of.find(ex);
        if (it == row_of.end()) {
          it = row_of.emplace(ex, rows.size()).first;
          rows.emplace_back(mono.size(), FieldElem::zero(k));
        }
        rows[it->second][u] = rows[it->second][u] + c;
      }
    }
    row_of.clear();  // rows for distinct generators constrain independently
  }

  auto sol = gauss_solve<FieldElem>(rows, {}, FieldElem::zero(k), FieldElem::one(k), true);
  FixedLineReport rep;
  rep.dim = (long)sol.nullspace.size();

  // which pure powers of x lie in the span
  for (size_t u = 0; u < mono.size(); ++u) {
    bool pure = mono[u][0] >= 1;
    for (int i = 1; i <= base + 1 && pure; ++i) pure = mono[u][(size_t)i] == 0;
    if (!pure) continue;
    // x^a is in the span iff some nullspace vector has it as its only support
    for (const auto& v : sol.nullspace) {
      if (v[u].is_zero()) continue;
      bool only = true;
      for (size_t w = 0; w < v.size() && only; ++w)
        if (w != u && !v[w].is_zero()) only = false;
      if (only) {
        rep.x_powers.push_back((unsigned long)mono[u][0]);
        break;
      }
    }
  }
  rep.line_is_x = rep.dim == 1 && rep.x_powers == std::vector<unsigned long>{1};
  return rep;
}

}  // namespace semilin
