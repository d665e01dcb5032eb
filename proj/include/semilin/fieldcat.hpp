#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "semilin/parser.hpp"
#include "semilin/socle.hpp"

namespace semilin {

// One symbolic identity: both sides are expressions over the entry's symbols.
struct IdentityRecord {
  std::string name, lhs, rhs;
};

// A named family of rational functions together with the identities that make
// its generating set work.  Symbols double as the variable names of the ring
// the expressions are parsed into, so instantiation is fixed by declaration
// order and runs are reproducible.
struct FieldCatalogEntry {
  std::string label;
  std::vector<std::string> symbols;
  std::vector<std::string> generators;
  std::vector<IdentityRecord> identities;
};

struct CheckReport {
  bool pass = false;
  bool refused = false;
  std::string witness;
  std::vector<std::pair<std::string, std::string>> rows;  // (check, status)

  void add(const std::string& name, const std::string& status) { rows.emplace_back(name, status); }
  void finish() {
    pass = !rows.empty();
    for (const auto& [name, status] : rows) {
      (void)name;
      if (status.rfind("fail", 0) == 0) pass = false;
    }
    if (!pass && witness.empty())
      for (const auto& [name, status] : rows)
        if (status.rfind("fail", 0) == 0) {
          witness = name + ": " + status;
          break;
        }
  }
};

// Catalog files are line-based:
//   entry <label>
//   symbols <s1> <s2> ...
//   gen <expression>
//   id <name>: <lhs> == <rhs>
// Blank lines and lines starting with '#' are ignored.
inline std::vector<FieldCatalogEntry> parse_catalog(const std::string& text) {
  std::vector<FieldCatalogEntry> out;
  std::istringstream in(text);
  std::string line;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    size_t sp = line.find(' ');
    std::string key = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp + 1));
    auto need_entry = [&]() -> FieldCatalogEntry& {
      if (out.empty()) throw Error("catalog line " + std::to_string(lineno) + " before any entry");
      return out.back();
    };
    if (key == "entry") {
      if (rest.empty()) throw Error("entry without a label at line " + std::to_string(lineno));
      out.push_back(FieldCatalogEntry{rest, {}, {}, {}});
    } else if (key == "symbols") {
      std::istringstream ss(rest);
      std::string sym;
      while (ss >> sym) need_entry().symbols.push_back(sym);
    } else if (key == "gen") {
      need_entry().generators.push_back(rest);
    } else if (key == "id") {
      size_t colon = rest.find(':');
      size_t eq = rest.find("==");
      if (colon == std::string::npos || eq == std::string::npos || eq < colon)
        throw Error("malformed identity at line " + std::to_string(lineno));
      IdentityRecord rec;
      rec.name = trim(rest.substr(0, colon));
      rec.lhs = trim(rest.substr(colon + 1, eq - colon - 1));
      rec.rhs = trim(rest.substr(eq + 2));
      need_entry().identities.push_back(std::move(rec));
    } else {
      throw Error("unrecognized catalog line " + std::to_string(lineno) + ": " + line);
    }
  }
  return out;
}

// Built-in entries.  Ka works with doubly indexed variables (two slots per
// point), the rest are single-slot families; dihedral and A4 list the
// generating expressions their dedicated checks revolve around.
inline const std::string& builtin_catalog_text() {
  static const std::string text = R"(
# multiplicative family: graded monomials and slice ratios
entry Ka
symbols u0 u1 v0 v1 x0 x1
gen x0^2*x1^-1
gen u0/x0
id power-ratio: (u0^2*u1^-1)/(x0^2*x1^-1) == (u0/x0)^2*(u1/x1)^-1
id slice-ratio: u0/v0 == (u0/x0)/(v0/x0)

# differences
entry Kb
symbols u v x y
gen u - v
id telescoping: u - v == (u - x) - (v - x)
id difference-through-ratios: u - v == (x - y)*((x - v)/(x - y) - (x - u)/(x - y))

# simple ratios of differences
entry Kc
symbols u v w x y z
gen (x - u)/(x - y)
id ratio-through-anchor: (u - v)/(u - w) == ((x - u)/(x - y) - (x - v)/(x - y))/((x - u)/(x - y) - (x - w)/(x - y))
id slice-through-anchor: u/v == (1 - ((x - u)/(x - y))*(1 - y/x))/(1 - ((x - v)/(x - y))*(1 - y/x))
id anchor-change: ((x - u)/(x - z))*((x - y)/(x - z) + (x - u)*(y - z)/((x - z)*(y - u)) - 1) == ((x - u)*(y - z)/((x - z)*(y - u)))*((x - y)/(x - z))

# cross-ratios
entry Kd
symbols t u v w x y z
gen (x - u)*(y - z)/((u - y)*(z - x))
id cross-difference: (x - u)*(y - z)/((u - y)*(z - x)) - (x - v)*(y - z)/((v - y)*(z - x)) == (x - y)*(y - z)*(v - u)/((z - x)*(u - y)*(v - y))
id cross-product-1: (x - y)*(y - z)*(v - u)/((z - x)*(u - y)*(v - y)) * ((z - x)*(w - y)*(v - y))/((x - y)*(y - z)*(v - w)) == (v - u)*(w - y)/((u - y)*(v - w))
id cross-product-2: (v - u)*(w - y)/((u - y)*(v - w)) * ((u - y)*(t - w))/((t - u)*(w - y)) == (v - u)*(t - w)/((t - u)*(v - w))

entry dihedral
symbols x u
gen x^3
gen u/x
id generator-bridge: x^3*(u/x)^3 == u^3

entry A4
symbols x u
gen x^2 + x^-2
gen u/x + x/u
gen (x^2 - x^-2)/(u/x - x/u)
id graded-product: (x^2 - x^-2)/(u/x - x/u)*(u/x - x/u) == x^2 - x^-2
)";
  return text;
}

inline const std::vector<FieldCatalogEntry>& field_catalog() {
  static const std::vector<FieldCatalogEntry> cat = parse_catalog(builtin_catalog_text());
  return cat;
}

inline CheckReport verify_identity_suite(const FieldCatalogEntry& entry) {
  CheckReport rep;
  auto R = PolyRing::make(FieldCtx::rationals(), entry.symbols);
  for (const auto& g : entry.generators) parse_ratfunc(R, g);  // must at least parse
  for (const auto& rec : entry.identities) {
    RatFunc l = parse_ratfunc(R, rec.lhs), r = parse_ratfunc(R, rec.rhs);
    if (l == r)
      rep.add(rec.name, "pass");
    else
      rep.add(rec.name, "fail: difference = " + (l - r).to_string());
  }
  rep.finish();
  return rep;
}

inline CheckReport verify_identity_suite(const std::string& label) {
  for (const auto& e : field_catalog())
    if (e.label == label) return verify_identity_suite(e);
  throw Error("unknown catalog label: " + label);
}

// ---- the involution u -> a/u ----

inline CheckReport dihedral_check(int n, const mpq_class& a, unsigned long p) {
  if (n < 3) throw Error("need n >= 3");
  auto K = p ? FieldCtx::prime_field(p) : FieldCtx::rationals();
  FieldElem A(K, a);
  if (A.is_zero()) throw Error("the constant a must be nonzero");

  auto R = PolyRing::make(K, {"x", "u", "v"});
  RatFunc x = RatFunc::var(R, 0), u = RatFunc::var(R, 1), v = RatFunc::var(R, 2);
  RatFunc Ac = RatFunc::constant(R, A);
  std::vector<RatFunc> iot{Ac / x, Ac / u, Ac / v};
  auto iota = [&](const RatFunc& f) { return f.subst_all(iot); };

  CheckReport rep;

  RatFunc xn_img = iota(x.pow(n));
  RatFunc xn_expect = RatFunc::constant(R, A.pow(n)) * x.pow(-n);
  rep.add("power-image", xn_img == xn_expect
                             ? "pass: x^" + std::to_string(n) + " -> " + xn_img.to_string()
                             : "fail: got " + xn_img.to_string());

  rep.add("ratio-image", iota(u / x) == x / u ? "pass" : "fail: got " + iota(u / x).to_string());

  if (p == 2) {
    rep.add("eigenvector", "skipped: char-2 exception (the fixed line does not split off)");
  } else {
    RatFunc w = x.pow(n) - RatFunc::constant(R, A.pow(n)) * x.pow(-n);
    rep.add("eigenvector", iota(w) == -w ? "pass" : "fail: got " + iota(w).to_string());
  }

  std::vector<RatFunc> probes{x, u / x, x.pow(n) + x, (x + u) / (v - u), (x * u - v) / (x + v)};
  bool inv_ok = true, comm_ok = true;
  for (const auto& f : probes) {
    if (iota(iota(f)) != f) inv_ok = false;
    for (const std::vector<int>& dest : {std::vector<int>{1, 0, 2}, std::vector<int>{0, 2, 1}})
      if (iota(f.relabeled(dest)) != iota(f).relabeled(dest)) comm_ok = false;
  }
  rep.add("involution", inv_ok ? "pass" : "fail");
  rep.add("equivariance", comm_ok ? "pass" : "fail");
  rep.finish();
  return rep;
}

// ---- the order-3 Moebius substitution u -> (u + i)/(u - i) ----

inline CheckReport a4_eigen_check() {
  // one extension carrying both constants: w^4 = w^2 - 1, i = w^3, zeta = w^2 - 1
  auto K = FieldCtx::extension(0, "w", {1, 0, -1, 0, 1});
  FieldElem g = FieldElem::generator(K);
  FieldElem i = g.pow(3), zeta = g * g - FieldElem::one(K);
  FieldElem one = FieldElem::one(K);

  CheckReport rep;
  rep.add("presentation",
          (i * i == -one && zeta * zeta + zeta + one == FieldElem::zero(K)) ? "pass" : "fail");

  // the Moebius matrix of the substitution has a scalar cube
  {
    FieldElem M[2][2] = {{one, i}, {one, -i}};
    FieldElem C[2][2] = {{M[0][0], M[0][1]}, {M[1][0], M[1][1]}};
    for (int step = 0; step < 2; ++step) {
      FieldElem N[2][2] = {{C[0][0] * M[0][0] + C[0][1] * M[1][0], C[0][0] * M[0][1] + C[0][1] * M[1][1]},
                           {C[1][0] * M[0][0] + C[1][1] * M[1][0], C[1][0] * M[0][1] + C[1][1] * M[1][1]}};
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) C[r][c] = N[r][c];
    }
    bool scalar = C[0][1].is_zero() && C[1][0].is_zero() && C[0][0] == C[1][1] && !C[0][0].is_zero();
    rep.add("mobius-cube", scalar ? "pass: scalar cube" : "fail");
  }

  auto R = PolyRing::make(K, {"x", "u", "v", "t"});
  RatFunc x = RatFunc::var(R, 0);
  RatFunc ic = RatFunc::constant(R, i), zc = RatFunc::constant(R, zeta);
  RatFunc c1 = RatFunc::one(R), c2 = RatFunc::constant(R, mpq_class(2)), c4 = RatFunc::constant(R, mpq_class(4));

  std::vector<RatFunc> th;
  for (int k = 0; k < 4; ++k) {
    RatFunc xv = RatFunc::var(R, k);
    th.push_back((xv + ic) / (xv - ic));
  }
  auto theta = [&](const RatFunc& f) { return f.subst_all(th); };

  RatFunc x2 = x * x;
  RatFunc e1 = (x2 - c1).pow(2) / (c4 * x2) - c4 * zc * x2 / (x2 + c1).pow(2) -
               (x2 + c1).pow(2) / (zc * (x2 - c1).pow(2));
  RatFunc e2 = (x2 - c1).pow(2) / (c4 * x2) - c4 * x2 / (zc * (x2 + c1).pow(2)) -
               zc * (x2 + c1).pow(2) / (x2 - c1).pow(2);

  FieldElem ev1 = FieldElem::zero(K), ev2 = FieldElem::zero(K);
  auto eigen_row = [&](const char* name, const RatFunc& e, FieldElem& ev) {
    RatFunc ratio = theta(e) / e;
    if (!ratio.is_constant()) {
      rep.add(name, "fail: ratio is not constant");
      return;
    }
    ev = ratio.constant_value();
    if (ev == one)
      rep.add(name, "pass: eigenvalue 1");
    else if (ev == zeta)
      rep.add(name, "pass: eigenvalue zeta");
    else if (ev == zeta * zeta)
      rep.add(name, "pass: eigenvalue zeta^2");
    else
      rep.add(name, "fail: eigenvalue is not a cube root of unity");
  };
  eigen_row("eigenvector-1", e1, ev1);
  eigen_row("eigenvector-2", e2, ev2);
  rep.add("eigenvalues-distinct", ev1 != ev2 ? "pass" : "fail");

  // the grading chain, as exact identities including the line membership
  RatFunc f0 = x - c1 / x, f1 = -c4 / (x + c1 / x), f2 = -c2 * (x + c1 / x) / (x - c1 / x);
  rep.add("chain-1", ic * theta(f0) == f1 ? "pass" : "fail");
  rep.add("chain-2", theta(f1) == f2 ? "pass" : "fail");
  RatFunc xi = x2 + c1 / x2;
  bool memb = f1 == (x + c1 / x) * (-c4 / (xi + c2)) &&
              f2 == (x2 - c1 / x2) * (-c2 / (xi - c2));
  rep.add("line-membership", memb ? "pass" : "fail");

  std::vector<RatFunc> probes{x, (x - c1) / (x + c2), RatFunc::var(R, 1) / x};
  bool ord_ok = true, comm_ok = true;
  for (const auto& f : probes) {
    if (theta(theta(theta(f))) != f) ord_ok = false;
    for (const std::vector<int>& dest :
         {std::vector<int>{1, 0, 2, 3}, std::vector<int>{0, 2, 1, 3}, std::vector<int>{0, 1, 3, 2}})
      if (theta(f.relabeled(dest)) != theta(f).relabeled(dest)) comm_ok = false;
  }
  rep.add("order-3", ord_ok ? "pass" : "fail");
  rep.add("equivariance", comm_ok ? "pass" : "fail");
  rep.finish();
  return rep;
}

// ---- the curve addition staying on the curve ----

namespace detail_cat {

inline CheckReport elliptic_core(bool degenerate, bool specialize, const mpq_class& av,
                                 const mpq_class& bv) {
  CheckReport rep;
  if (degenerate) {
    rep.refused = true;
    rep.witness = "refused: the addition formula has a pole on the diagonal (equal first coordinates)";
    rep.add("degenerate-guard", "skipped: " + rep.witness);
    return rep;
  }

  std::vector<std::string> names{"gx", "hx", "gy", "hy"};
  if (!specialize) {
    names.push_back("a");
    names.push_back("b");
  }
  auto R = PolyRing::make(FieldCtx::rationals(), names);
  RatFunc gx = RatFunc::var(R, 0), hx = RatFunc::var(R, 1);
  RatFunc gy = RatFunc::var(R, 2), hy = RatFunc::var(R, 3);
  RatFunc a = specialize ? RatFunc::constant(R, av) : RatFunc::var(R, 4);
  RatFunc b = specialize ? RatFunc::constant(R, bv) : RatFunc::var(R, 5);
  RatFunc half = RatFunc::constant(R, mpq_class(1, 2));
  RatFunc c2 = RatFunc::constant(R, mpq_class(2)), c4 = RatFunc::constant(R, mpq_class(4));
  RatFunc c6 = RatFunc::constant(R, mpq_class(6));

  RatFunc W = (half * (hx + hy) / (gx - gy)).pow(2) - gx - gy;
  RatFunc Wp =
      half * (hx + hy) * (((gx - gy) * (c6 * gx * gx + a) - (hx + hy) * hx) / (gx - gy).pow(3)) - hx;
  RatFunc E = Wp * Wp - (c4 * W.pow(3) + c2 * a * W + b);

  Poly N = E.num();
  if ((long)N.terms().size() > 20000) {
    rep.add("term-budget", "fail: cleared numerator too large");
    rep.finish();
    return rep;
  }
  Poly rx = (c4 * gx.pow(3) + c2 * a * gx + b).num();
  Poly ry = (c4 * gy.pow(3) + c2 * a * gy + b).num();

  Poly first = reduce_quadratic(reduce_quadratic(N, 1, rx), 3, ry);
  Poly second = reduce_quadratic(reduce_quadratic(N, 3, ry), 1, rx);
  rep.add("confluence", first == second ? "pass" : "fail: reduction order changes the normal form");
  rep.add("on-curve", first.is_zero() ? "pass" : "fail: remainder " + first.to_string());
  rep.finish();
  return rep;
}

}  // namespace detail_cat

inline CheckReport elliptic_addition_check() {
  return detail_cat::elliptic_core(false, false, 0, 0);
}
inline CheckReport elliptic_addition_check(const mpq_class& a, const mpq_class& b) {
  return detail_cat::elliptic_core(false, true, a, b);
}
inline CheckReport elliptic_addition_degenerate() {
  return detail_cat::elliptic_core(true, false, 0, 0);
}

// binom(p, t) vanishes mod p strictly inside the first row
inline CheckReport lucas_exception_check(unsigned long p, long t) {
  if (!is_prime_ul(p)) throw Error("p must be prime");
  if (t <= 0 || t >= (long)p) throw Error("t out of range");
  CheckReport rep;
  long v = lucas(p, (unsigned long)t, p);
  rep.add("vanishing-binomial",
          v == 0 ? "pass" : "fail: binom(" + std::to_string(p) + "," + std::to_string(t) +
                                ") = " + std::to_string(v) + " mod " + std::to_string(p));
  rep.finish();
  return rep;
}

}  // namespace semilin
