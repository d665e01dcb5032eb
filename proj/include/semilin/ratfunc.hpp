#pragma once

#include <string>
#include <utility>
#include <vector>

#include "semilin/poly.hpp"

namespace semilin {

// Reduced rational function: gcd(num, den) = 1 and den is monic in graded-lex.
// Every constructor and operation restores that canonical form, so == is
// coefficientwise equality.
class RatFunc {
 public:
  RatFunc() = default;

  RatFunc(Poly num, Poly den) : n_(std::move(num)), d_(std::move(den)) { normalize(); }

  explicit RatFunc(Poly num) : n_(std::move(num)), d_(Poly::one(n_.ring())) { normalize(); }

  static RatFunc zero(const RingPtr& R) { return RatFunc(Poly::zero(R)); }
  static RatFunc one(const RingPtr& R) { return RatFunc(Poly::one(R)); }
  static RatFunc var(const RingPtr& R, int i) { return RatFunc(Poly::var(R, i)); }
  static RatFunc var(const RingPtr& R, const std::string& s) { return RatFunc(Poly::var(R, s)); }
  static RatFunc constant(const RingPtr& R, const mpq_class& c) {
    return RatFunc(Poly::constant(R, c));
  }
  static RatFunc constant(const RingPtr& R, FieldElem c) {
    return RatFunc(Poly::constant(R, std::move(c)));
  }

  const Poly& num() const { return n_; }
  const Poly& den() const { return d_; }
  const RingPtr& ring() const { return n_.ring(); }

  bool is_zero() const { return n_.is_zero(); }
  bool is_one() const { return n_.is_one() && d_.is_one(); }
  bool is_polynomial() const { return d_.is_one(); }
  bool is_constant() const { return n_.is_constant() && d_.is_one(); }

  FieldElem constant_value() const {
    if (!is_constant()) throw Error("rational function is not constant");
    return n_.constant_value();
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.d_ == b.d_) return RatFunc(a.n_ + b.n_, a.d_);
    Poly g = Poly::gcd(a.d_, b.d_);
    Poly da = divexact(a.d_, g), db = divexact(b.d_, g);
    return RatFunc(a.n_ * db + b.n_ * da, a.d_ * db);
  }

  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.n_ = -r.n_;
    return r;
  }

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return zero(a.ring());
    // cross-reduce before multiplying to keep the gcds small
    Poly g1 = Poly::gcd(a.n_, b.d_), g2 = Poly::gcd(b.n_, a.d_);
    Poly n = divexact(a.n_, g1) * divexact(b.n_, g2);
    Poly d = divexact(a.d_, g2) * divexact(b.d_, g1);
    RatFunc r;
    r.n_ = std::move(n);
    r.d_ = std::move(d);
    r.make_monic();
    return r;
  }

  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DivisionByZeroError("division by the zero rational function");
    RatFunc inv;
    inv.n_ = b.d_;
    inv.d_ = b.n_;
    inv.make_monic();
    return a * inv;
  }

  RatFunc pow(long e) const {
    if (e < 0) {
      if (is_zero()) throw DivisionByZeroError("negative power of zero");
      RatFunc inv;
      inv.n_ = d_;
      inv.d_ = n_;
      inv.make_monic();
      return inv.pow(-e);
    }
    // num and den are coprime, so power them separately (no re-reduction needed)
    RatFunc r;
    r.n_ = n_.pow(e);
    r.d_ = d_.pow(e);
    r.make_monic();
    return r;
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.n_ == b.n_ && a.d_ == b.d_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
  friend bool operator<(const RatFunc& a, const RatFunc& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.d_ < b.d_;
  }

  RatFunc relabeled(const std::vector<int>& dest) const {
    RatFunc r;
    r.n_ = n_.relabeled(dest);
    r.d_ = d_.relabeled(dest);
    r.make_monic();  // relabeling preserves coprimality but may disturb monicity
    return r;
  }

  FieldElem eval(const std::vector<FieldElem>& pts) const {
    FieldElem dv = d_.eval(pts);
    if (dv.is_zero()) throw DivisionByZeroError("evaluation point lies on the denominator");
    return n_.eval(pts) / dv;
  }

  bool defined_at(const std::vector<FieldElem>& pts) const { return !d_.eval(pts).is_zero(); }

  // substitute images[i] for variable i, for every variable simultaneously
  RatFunc subst_all(const std::vector<RatFunc>& images) const {
    const RingPtr& R = ring();
    if (images.size() != R->vars.size()) throw Error("substitution arity mismatch");
    auto apply = [&](const Poly& p) {
      RatFunc acc = zero(R);
      for (const auto& [e, c] : p.terms()) {
        RatFunc term = constant(R, c);
        for (size_t i = 0; i < images.size(); ++i)
          if (e[i]) term = term * images[i].pow(e[i]);
        acc = acc + term;
      }
      return acc;
    };
    RatFunc dn = apply(d_);
    if (dn.is_zero()) throw DivisionByZeroError("substitution maps the denominator to zero");
    return apply(n_) / dn;
  }

  RatFunc subst_var(int v, const RatFunc& image) const {
    std::vector<RatFunc> images;
    images.reserve(ring()->vars.size());
    for (size_t i = 0; i < ring()->vars.size(); ++i)
      images.push_back((int)i == v ? image : var(ring(), (int)i));
    return subst_all(images);
  }

  std::string to_string() const {
    if (d_.is_one()) return n_.to_string();
    return "(" + n_.to_string() + ")/(" + d_.to_string() + ")";
  }

 private:
  void normalize() {
    if (d_.is_zero()) throw DivisionByZeroError("zero denominator");
    if (n_.is_zero()) {
      d_ = Poly::one(n_.ring());
      return;
    }
    Poly g = Poly::gcd(n_, d_);
    if (!g.is_one()) {
      n_ = divexact(n_, g);
      d_ = divexact(d_, g);
    }
    make_monic();
  }

  void make_monic() {
    if (d_.is_zero()) throw DivisionByZeroError("zero denominator");
    if (n_.is_zero()) {
      d_ = Poly::one(n_.ring());
      return;
    }
    FieldElem lc = d_.leading_coeff();
    if (!lc.is_one()) {
      FieldElem inv = lc.inverse();
      n_ = n_.scaled(inv);
      d_ = d_.scaled(inv);
    }
  }

  Poly n_, d_;
};

}  // namespace semilin
