#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "semilin/numeric.hpp"

namespace semilin {

// Inverting a nonzero zero-divisor in k[a]/(m) proves m reducible; callers may
// want to catch this specifically.
struct ReducibleModulusError : Error {
  explicit ReducibleModulusError(const std::string& msg) : Error(msg) {}
};

struct DivisionByZeroError : Error {
  explicit DivisionByZeroError(const std::string& msg) : Error(msg) {}
};

struct FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

// A coefficient field: Q, F_p, or a simple extension k[a]/(m(a)) of either.
// Elements are vectors in the power basis 1, a, ..., a^(d-1); for d == 1 the
// vector has a single entry.  In characteristic p every entry is kept as an
// integer in [0, p).
struct FieldCtx {
  unsigned long p = 0;            // 0 means characteristic zero
  std::vector<mpq_class> minpoly; // monic, degree >= 2; empty for base fields
  std::string gen;                // symbol of the extension generator

  int deg() const { return minpoly.empty() ? 1 : (int)minpoly.size() - 1; }
  bool is_extension() const { return deg() > 1; }

  static FieldCtxPtr rationals() { return std::make_shared<FieldCtx>(); }

  static FieldCtxPtr prime_field(unsigned long p) {
    if (!is_prime_ul(p)) throw Error("characteristic must be prime, got " + std::to_string(p));
    auto c = std::make_shared<FieldCtx>();
    c->p = p;
    return c;
  }

  // minpoly given low-to-high including the leading 1.
  static FieldCtxPtr extension(unsigned long p, const std::string& gen,
                               std::vector<mpq_class> minpoly) {
    if (p && !is_prime_ul(p)) throw Error("characteristic must be prime");
    if (minpoly.size() < 3) throw Error("extension modulus must have degree >= 2");
    if (minpoly.back() != 1) throw Error("extension modulus must be monic");
    auto c = std::make_shared<FieldCtx>();
    c->p = p;
    c->gen = gen;
    if (p)
      for (auto& q : minpoly) {
        if (q.get_den() != 1) throw Error("modulus over F_p must have integer coefficients");
        mpz_class r = q.get_num() % (long)p;
        if (r < 0) r += (long)p;
        q = r;
      }
    c->minpoly = std::move(minpoly);
    return c;
  }
};

class FieldElem {
 public:
  FieldElem() = default;

  FieldElem(FieldCtxPtr K, mpq_class v) : K_(std::move(K)), c_(K_->deg(), 0) {
    c_[0] = std::move(v);
    canon();
  }

  // raw components in the power basis (length must equal field degree)
  FieldElem(FieldCtxPtr K, std::vector<mpq_class> comps)
      : K_(std::move(K)), c_(std::move(comps)) {
    if ((int)c_.size() != K_->deg()) throw Error("component count != field degree");
    canon();
  }

  static FieldElem zero(const FieldCtxPtr& K) { return FieldElem(K, mpq_class(0)); }
  static FieldElem one(const FieldCtxPtr& K) { return FieldElem(K, mpq_class(1)); }

  static FieldElem generator(const FieldCtxPtr& K) {
    if (!K->is_extension()) throw Error("base field has no extension generator");
    std::vector<mpq_class> v(K->deg(), 0);
    v[1] = 1;
    return FieldElem(K, std::move(v));
  }

  const FieldCtxPtr& ctx() const { return K_; }
  const std::vector<mpq_class>& comps() const { return c_; }

  bool is_zero() const {
    for (const auto& q : c_)
      if (q != 0) return false;
    return true;
  }

  bool is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  // only meaningful for printing decisions: a plain negative rational
  bool is_negative_rational() const {
    if (K_->is_extension()) {
      // treat as negative only if the single nonzero component is, and it is
      // the constant one (keeps sign extraction unambiguous)
      return false;
    }
    return K_->p == 0 && c_[0] < 0;
  }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    a.match(b);
    FieldElem r(a);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    r.canon();
    return r;
  }

  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    a.match(b);
    FieldElem r(a);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    r.canon();
    return r;
  }

  FieldElem operator-() const {
    FieldElem r(*this);
    for (auto& q : r.c_) q = -q;
    r.canon();
    return r;
  }

  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    a.match(b);
    int d = a.K_->deg();
    if (d == 1) {
      FieldElem r(a);
      r.c_[0] *= b.c_[0];
      r.canon();
      return r;
    }
    std::vector<mpq_class> prod(2 * d - 1, 0);
    for (int i = 0; i < d; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; j < d; ++j) prod[i + j] += a.c_[i] * b.c_[j];
    }
    // reduce modulo the monic modulus
    for (int k = 2 * d - 2; k >= d; --k) {
      if (prod[k] == 0) continue;
      mpq_class lead = prod[k];
      prod[k] = 0;
      for (int j = 0; j < d; ++j) prod[k - d + j] -= lead * a.K_->minpoly[j];
    }
    prod.resize(d);
    return FieldElem(a.K_, std::move(prod));
  }

  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    a.match(b);
    return a.c_ == b.c_;
  }
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
  friend bool operator<(const FieldElem& a, const FieldElem& b) {
    a.match(b);
    for (size_t i = 0; i < a.c_.size(); ++i)
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
  }

  FieldElem inverse() const {
    if (is_zero()) throw DivisionByZeroError("division by zero in coefficient field");
    int d = K_->deg();
    if (d == 1) {
      if (K_->p == 0) {
        FieldElem r(*this);
        r.c_[0] = 1 / r.c_[0];
        return r;
      }
      mpz_class inv, m((long)K_->p);
      if (!mpz_invert(inv.get_mpz_t(), c_[0].get_num().get_mpz_t(), m.get_mpz_t()))
        throw DivisionByZeroError("no inverse modulo p");
      FieldElem r(*this);
      r.c_[0] = inv;
      r.canon();
      return r;
    }
    // extended Euclid on (this, minpoly) over the base field
    std::vector<mpq_class> r0 = K_->minpoly, r1 = c_;
    trim(r1);
    std::vector<mpq_class> s0{0}, s1{1};  // Bezout coefficients for this
    while (!r1.empty()) {
      auto [q, rem] = poly_divmod(r0, r1);
      auto s2 = poly_sub(s0, poly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r0.size() != 1) {
      throw ReducibleModulusError("reducible modulus: gcd with " + to_string() +
                                  " has positive degree");
    }
    // r0[0] * 1 = s0 * this  (mod minpoly)
    mpq_class scale = base_inv(r0[0]);
    std::vector<mpq_class> out(d, 0);
    for (size_t i = 0; i < s0.size() && i < out.size(); ++i) out[i] = s0[i] * scale;
    return FieldElem(K_, std::move(out));
  }

  FieldElem pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElem r = one(K_), b = *this;
    unsigned long m = (unsigned long)e;
    while (m) {
      if (m & 1) r = r * b;
      b = b * b;
      m >>= 1;
    }
    return r;
  }

  // True when printing inside a product requires parentheses.
  bool needs_parens() const {
    int nonzero = 0;
    for (const auto& q : c_)
      if (q != 0) ++nonzero;
    return nonzero > 1;
  }

  std::string to_string() const {
    if (!K_->is_extension()) {
      std::ostringstream os;
      os << c_[0];
      return os.str();
    }
    std::ostringstream os;
    bool first = true;
    for (int i = K_->deg() - 1; i >= 0; --i) {
      if (c_[i] == 0) continue;
      mpq_class v = c_[i];
      if (first) {
        if (v < 0) {
          os << "-";
          v = -v;
        }
        first = false;
      } else {
        os << (v < 0 ? " - " : " + ");
        if (v < 0) v = -v;
      }
      if (i == 0)
        os << v;
      else {
        if (v != 1) os << v << "*";
        os << K_->gen;
        if (i > 1) os << "^" << i;
      }
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  void match(const FieldElem& o) const {
    if (K_.get() != o.K_.get()) throw Error("mixed coefficient fields");
  }

  mpq_class base_inv(const mpq_class& v) const {
    if (K_->p == 0) return 1 / v;
    mpz_class inv, m((long)K_->p);
    if (!mpz_invert(inv.get_mpz_t(), v.get_num().get_mpz_t(), m.get_mpz_t()))
      throw DivisionByZeroError("no inverse modulo p");
    return mpq_class(inv);
  }

  void canon() {
    if (K_->p == 0) {
      for (auto& q : c_) q.canonicalize();
      return;
    }
    for (auto& q : c_) {
      q.canonicalize();
      mpz_class num = q.get_num(), den = q.get_den();
      if (den != 1) {
        mpz_class inv, m((long)K_->p);
        if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()))
          throw DivisionByZeroError("denominator not invertible modulo p");
        num *= inv;
      }
      mpz_class r = num % (long)K_->p;
      if (r < 0) r += (long)K_->p;
      q = r;
    }
  }

  static void trim(std::vector<mpq_class>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  }

  // operations on base-field polynomials (coefficients canonicalized mod p by
  // the caller's context via canon_scalar)
  mpq_class canon_scalar(mpq_class v) const {
    if (K_->p == 0) return v;
    v.canonicalize();
    mpz_class num = v.get_num(), den = v.get_den();
    if (den != 1) {
      mpz_class inv, m((long)K_->p);
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
      num *= inv;
    }
    mpz_class r = num % (long)K_->p;
    if (r < 0) r += (long)K_->p;
    return mpq_class(r);
  }

  std::vector<mpq_class> poly_mul(const std::vector<mpq_class>& a,
                                  const std::vector<mpq_class>& b) const {
    if (a.empty() || b.empty()) return {};
    std::vector<mpq_class> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    for (auto& v : r) v = canon_scalar(v);
    trim(r);
    return r;
  }

  std::vector<mpq_class> poly_sub(const std::vector<mpq_class>& a,
                                  const std::vector<mpq_class>& b) const {
    std::vector<mpq_class> r = a;
    if (b.size() > r.size()) r.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    for (auto& v : r) v = canon_scalar(v);
    trim(r);
    return r;
  }

  std::pair<std::vector<mpq_class>, std::vector<mpq_class>> poly_divmod(
      std::vector<mpq_class> a, const std::vector<mpq_class>& b) const {
    std::vector<mpq_class> q(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, 0);
    mpq_class lead_inv = base_inv(b.back());
    while (a.size() >= b.size()) {
      mpq_class f = canon_scalar(a.back() * lead_inv);
      size_t shift = a.size() - b.size();
      q[shift] = f;
      for (size_t i = 0; i < b.size(); ++i) a[shift + i] = canon_scalar(a[shift + i] - f * b[i]);
      trim(a);
      if (a.size() < b.size()) break;
    }
    trim(q);
    return {q, a};
  }

  FieldCtxPtr K_;
  std::vector<mpq_class> c_;
};

}  // namespace semilin
