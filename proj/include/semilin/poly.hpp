#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "semilin/field.hpp"

namespace semilin {

struct NotDivisibleError : Error {
  explicit NotDivisibleError(const std::string& msg) : Error(msg) {}
};

struct PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

struct PolyRing {
  FieldCtxPtr K;
  std::vector<std::string> vars;

  int index_of(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return (int)i;
    return -1;
  }

  static RingPtr make(FieldCtxPtr K, std::vector<std::string> vars) {
    for (size_t i = 0; i < vars.size(); ++i)
      for (size_t j = i + 1; j < vars.size(); ++j)
        if (vars[i] == vars[j]) throw Error("duplicate variable name: " + vars[i]);
    auto r = std::make_shared<PolyRing>();
    r->K = std::move(K);
    r->vars = std::move(vars);
    return r;
  }
};

using ExpVec = std::vector<int>;

inline int exp_total(const ExpVec& e) { return std::accumulate(e.begin(), e.end(), 0); }

// graded lexicographic: lower total degree first, ties broken lexicographically,
// so the leading monomial of a polynomial is the map's last key
struct GrlexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    int da = exp_total(a), db = exp_total(b);
    if (da != db) return da < db;
    return a < b;
  }
};

class Poly {
 public:
  using TermMap = std::map<ExpVec, FieldElem, GrlexLess>;

  Poly() = default;
  explicit Poly(RingPtr R) : R_(std::move(R)) {}

  static Poly zero(const RingPtr& R) { return Poly(R); }

  static Poly constant(const RingPtr& R, FieldElem c) {
    Poly p(R);
    if (!c.is_zero()) p.t_.emplace(ExpVec(R->vars.size(), 0), std::move(c));
    return p;
  }

  static Poly constant(const RingPtr& R, const mpq_class& c) {
    return constant(R, FieldElem(R->K, c));
  }

  static Poly one(const RingPtr& R) { return constant(R, mpq_class(1)); }

  static Poly var(const RingPtr& R, int i) {
    if (i < 0 || i >= (int)R->vars.size()) throw Error("variable index out of range");
    ExpVec e(R->vars.size(), 0);
    e[i] = 1;
    Poly p(R);
    p.t_.emplace(std::move(e), FieldElem::one(R->K));
    return p;
  }

  static Poly var(const RingPtr& R, const std::string& name) {
    int i = R->index_of(name);
    if (i < 0) throw Error("unknown variable: " + name);
    return var(R, i);
  }

  static Poly monomial(const RingPtr& R, ExpVec e, FieldElem c) {
    Poly p(R);
    if (!c.is_zero()) p.t_.emplace(std::move(e), std::move(c));
    return p;
  }

  const RingPtr& ring() const { return R_; }
  const TermMap& terms() const { return t_; }
  size_t num_terms() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }

  bool is_constant() const {
    return t_.empty() || (t_.size() == 1 && exp_total(t_.begin()->first) == 0);
  }

  FieldElem constant_value() const {
    if (t_.empty()) return FieldElem::zero(R_->K);
    if (!is_constant()) throw Error("polynomial is not constant");
    return t_.begin()->second;
  }

  bool is_one() const { return is_constant() && !t_.empty() && t_.begin()->second.is_one(); }

  int total_degree() const { return t_.empty() ? -1 : exp_total(t_.rbegin()->first); }

  int degree_in(int v) const {
    int d = 0;
    for (const auto& [e, c] : t_) d = std::max(d, e[v]);
    return t_.empty() ? -1 : d;
  }

  bool occurs(int v) const {
    for (const auto& [e, c] : t_)
      if (e[v] > 0) return true;
    return false;
  }

  const ExpVec& leading_exp() const {
    if (t_.empty()) throw Error("leading term of zero polynomial");
    return t_.rbegin()->first;
  }

  const FieldElem& leading_coeff() const {
    if (t_.empty()) throw Error("leading term of zero polynomial");
    return t_.rbegin()->second;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    a.match(b);
    Poly r = a;
    for (const auto& [e, c] : b.t_) r.add_term(e, c);
    return r;
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    a.match(b);
    Poly r = a;
    for (const auto& [e, c] : b.t_) r.add_term(e, -c);
    return r;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.match(b);
    Poly r(a.R_);
    int n = (int)a.R_->vars.size();
    ExpVec e(n);
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) {
        for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  Poly scaled(const FieldElem& s) const {
    if (s.is_zero()) return Poly(R_);
    Poly r = *this;
    for (auto& [e, c] : r.t_) c = c * s;
    return r;
  }

  Poly pow(long n) const {
    if (n < 0) throw Error("negative power of a polynomial");
    Poly r = one(R_), b = *this;
    unsigned long m = (unsigned long)n;
    while (m) {
      if (m & 1) r = r * b;
      b = b * b;
      m >>= 1;
    }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    a.match(b);
    if (a.t_.size() != b.t_.size()) return false;
    auto ia = a.t_.begin(), ib = b.t_.begin();
    for (; ia != a.t_.end(); ++ia, ++ib)
      if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // total order used for canonical choices (e.g. map keys); grlex on term lists
  friend bool operator<(const Poly& a, const Poly& b) {
    a.match(b);
    auto ia = a.t_.rbegin(), ib = b.t_.rbegin();
    GrlexLess lt;
    for (; ia != a.t_.rend() && ib != b.t_.rend(); ++ia, ++ib) {
      if (ia->first != ib->first) return lt(ia->first, ib->first);
      if (!(ia->second == ib->second)) return ia->second < ib->second;
    }
    return ia == a.t_.rend() && ib != b.t_.rend();
  }

  // exact division; throws NotDivisibleError when the quotient does not exist
  friend Poly divexact(const Poly& a, const Poly& b) {
    a.match(b);
    if (b.is_zero()) throw DivisionByZeroError("division by zero polynomial");
    if (b.is_one()) return a;
    Poly q(a.R_), r = a;
    int n = (int)a.R_->vars.size();
    const ExpVec& lb = b.leading_exp();
    FieldElem lbc_inv = b.leading_coeff().inverse();
    ExpVec e(n);
    while (!r.is_zero()) {
      const ExpVec& lr = r.leading_exp();
      for (int i = 0; i < n; ++i) {
        e[i] = lr[i] - lb[i];
        if (e[i] < 0) throw NotDivisibleError("polynomial division is not exact");
      }
      Poly t = monomial(a.R_, e, r.leading_coeff() * lbc_inv);
      q = q + t;
      r = r - t * b;
    }
    return q;
  }

  friend bool divides(const Poly& b, const Poly& a) {
    try {
      divexact(a, b);
      return true;
    } catch (const NotDivisibleError&) {
      return false;
    }
  }

  // monic w.r.t. the graded-lex leading coefficient
  Poly normalized() const {
    if (is_zero()) return *this;
    return scaled(leading_coeff().inverse());
  }

  // coefficients as polynomials in the other variables, indexed by v-degree
  std::map<int, Poly> coeffs_in(int v) const {
    std::map<int, Poly> out;
    for (const auto& [e, c] : t_) {
      ExpVec f = e;
      int d = f[v];
      f[v] = 0;
      auto it = out.find(d);
      if (it == out.end()) it = out.emplace(d, Poly(R_)).first;
      it->second.add_term(f, c);
    }
    return out;
  }

  Poly coeff_of(int v, int k) const {
    Poly out(R_);
    for (const auto& [e, c] : t_)
      if (e[v] == k) {
        ExpVec f = e;
        f[v] = 0;
        out.add_term(f, c);
      }
    return out;
  }

  static Poly gcd(const Poly& a, const Poly& b);

  // substitute variable i by points[i] for every variable
  FieldElem eval(const std::vector<FieldElem>& pts) const {
    if (pts.size() != R_->vars.size()) throw Error("evaluation point arity mismatch");
    FieldElem acc = FieldElem::zero(R_->K);
    for (const auto& [e, c] : t_) {
      FieldElem term = c;
      for (size_t i = 0; i < pts.size(); ++i)
        if (e[i]) term = term * pts[i].pow(e[i]);
      acc = acc + term;
    }
    return acc;
  }

  // relabel variables: exponent of variable i moves to variable dest[i];
  // dest[i] < 0 is allowed only when variable i does not occur
  Poly relabeled(const std::vector<int>& dest) const {
    Poly out(R_);
    int n = (int)R_->vars.size();
    for (const auto& [e, c] : t_) {
      ExpVec f(n, 0);
      for (int i = 0; i < n; ++i) {
        if (!e[i]) continue;
        if (dest[i] < 0 || dest[i] >= n)
          throw Error("variable " + R_->vars[i] + " is not bound by the permutation");
        f[dest[i]] += e[i];
      }
      out.add_term(f, c);
    }
    return out;
  }

  // replace v^2 by r throughout (r must not involve v); one pass suffices and
  // repeating it is a no-op
  friend Poly reduce_quadratic(const Poly& p, int v, const Poly& r) {
    p.match(r);
    if (r.occurs(v)) throw Error("reduction rule for " + p.R_->vars[v] + "^2 reintroduces it");
    Poly out(p.R_);
    for (const auto& [e, c] : p.t_) {
      int d = e[v];
      if (d < 2) {
        out.add_term(e, c);
        continue;
      }
      ExpVec f = e;
      f[v] = d % 2;
      out = out + monomial(p.R_, f, c) * r.pow(d / 2);
    }
    return out;
  }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      FieldElem c = it->second;
      std::string mono = mono_string(it->first);
      bool neg = c.is_negative_rational();
      if (first) {
        if (neg) {
          os << "-";
          c = -c;
        }
        first = false;
      } else {
        os << (neg ? " - " : " + ");
        if (neg) c = -c;
      }
      if (mono.empty())
        os << (c.needs_parens() ? "(" + c.to_string() + ")" : c.to_string());
      else if (c.is_one())
        os << mono;
      else if (c.needs_parens())
        os << "(" << c.to_string() << ")*" << mono;
      else
        os << c.to_string() << "*" << mono;
    }
    return os.str();
  }

 private:
  void match(const Poly& o) const {
    if (R_.get() != o.R_.get()) throw Error("mixed polynomial rings");
  }

  void add_term(const ExpVec& e, const FieldElem& c) {
    if (c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
      return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) t_.erase(it);
  }

  std::string mono_string(const ExpVec& e) const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!first) os << "*";
      first = false;
      os << R_->vars[i];
      if (e[i] > 1) os << "^" << e[i];
    }
    return os.str();
  }

  RingPtr R_;
  TermMap t_;
};

namespace detail {

// pseudo-remainder of a by b in variable v: lc_v(b)^(deg a - deg b + 1) * a mod b
inline Poly prem(const Poly& a, const Poly& b, int v) {
  int db = b.degree_in(v);
  Poly lb = b.coeff_of(v, db);
  Poly r = a;
  int e = a.degree_in(v) - db + 1;
  while (!r.is_zero() && r.degree_in(v) >= db) {
    int dr = r.degree_in(v);
    Poly lr = r.coeff_of(v, dr);
    Poly shift = Poly::var(r.ring(), v).pow(dr - db);
    r = lb * r - lr * shift * b;
    --e;
  }
  if (e > 0) r = r * lb.pow(e);
  return r;
}

inline int top_var(const Poly& a, const Poly& b) {
  for (int v = (int)a.ring()->vars.size() - 1; v >= 0; --v)
    if (a.occurs(v) || b.occurs(v)) return v;
  return -1;
}

}  // namespace detail

inline Poly Poly::gcd(const Poly& a, const Poly& b) {
  a.match(b);
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  if (a.is_constant() || b.is_constant()) return one(a.R_);
  // the gcd of the monomial contents splits off cheaply and keeps the PRS small
  int n = (int)a.R_->vars.size();
  ExpVec shared(n, std::numeric_limits<int>::max());
  for (const Poly* p : {&a, &b}) {
    ExpVec mc(n, std::numeric_limits<int>::max());
    for (const auto& [e, c] : p->t_)
      for (int i = 0; i < n; ++i) mc[i] = std::min(mc[i], e[i]);
    for (int i = 0; i < n; ++i) shared[i] = std::min(shared[i], mc[i]);
  }
  if (exp_total(shared) > 0) {
    Poly m = monomial(a.R_, shared, FieldElem::one(a.R_->K));
    return (m * gcd(divexact(a, m), divexact(b, m))).normalized();
  }
  if (a.num_terms() == 1 || b.num_terms() == 1) return one(a.R_);
  if (a == b) return a.normalized();
  // mutual-divisibility probes: exact cancellations are the common case when
  // reducing fractions produced by structured eliminations
  if (a.total_degree() >= b.total_degree()) {
    if (divides(b, a)) return b.normalized();
  } else if (divides(a, b)) {
    return a.normalized();
  }

  int v = detail::top_var(a, b);
  // contents and primitive parts w.r.t. v (content recursion only ever sees
  // polynomials free of v, so it terminates)
  auto content_in = [&](const Poly& p) {
    Poly c(p.R_);
    for (const auto& [d, coeff] : p.coeffs_in(v)) {
      c = gcd(c, coeff);
      if (c.is_one()) break;
    }
    return c;
  };
  Poly ca = content_in(a), cb = content_in(b);
  Poly pa = divexact(a, ca), pb = divexact(b, cb);
  Poly c = gcd(ca, cb);
  if (pa.degree_in(v) <= 0 || pb.degree_in(v) <= 0) return c.normalized();

  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  // subresultant polynomial remainder sequence
  Poly g = one(a.R_), h = one(a.R_);
  Poly A = pa, B = pb;
  while (true) {
    int delta = A.degree_in(v) - B.degree_in(v);
    Poly R = detail::prem(A, B, v);
    if (R.is_zero()) break;
    if (R.degree_in(v) == 0) return c.normalized();  // primitive parts coprime
    A = B;
    B = divexact(R, g * h.pow(delta));
    g = A.coeff_of(v, A.degree_in(v));
    if (delta == 1)
      h = g;
    else if (delta > 1)
      h = divexact(g.pow(delta), h.pow(delta - 1));
  }
  Poly cont_B = content_in(B);
  return (c * divexact(B, cont_B)).normalized();
}

inline Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return a.ring() ? Poly::zero(a.ring()) : Poly();
  return divexact(a * b, Poly::gcd(a, b)).normalized();
}

}  // namespace semilin
