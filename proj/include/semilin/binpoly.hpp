#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "semilin/numeric.hpp"

namespace semilin {

struct FitError : Error {
  explicit FitError(const std::string& msg) : Error(msg) {}
};

// Integer-valued polynomial stored by its coefficients in the basis
// binom(X, i).  Sums, products and binom(P, r) stay inside this class; no
// rational coefficient ever appears in a stored value.
class BinPoly {
 public:
  BinPoly() = default;
  explicit BinPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

  static BinPoly constant(const mpz_class& k) { return BinPoly({k}); }

  // binom(X, i)
  static BinPoly choose(int i) {
    std::vector<mpz_class> c(i + 1, 0);
    c[i] = 1;
    return BinPoly(std::move(c));
  }

  const std::vector<mpz_class>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return (int)c_.size() - 1; }  // -1 for the zero polynomial

  mpz_class eval(const mpz_class& x) const {
    mpz_class r = 0;
    for (size_t i = 0; i < c_.size(); ++i) r += c_[i] * binomial(x, (unsigned long)i);
    return r;
  }

  BinPoly operator+(const BinPoly& o) const {
    std::vector<mpz_class> c(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return BinPoly(std::move(c));
  }

  BinPoly operator-() const {
    std::vector<mpz_class> c(c_);
    for (auto& k : c) k = -k;
    return BinPoly(std::move(c));
  }

  BinPoly operator-(const BinPoly& o) const { return *this + (-o); }

  bool operator==(const BinPoly& o) const { return c_ == o.c_; }
  bool operator!=(const BinPoly& o) const { return c_ != o.c_; }

  // "2 - C(X,1) + 3*C(X,2)"
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      mpz_class a = c_[i];
      if (out.empty()) {
        if (a < 0) out += "-";
      } else {
        out += a < 0 ? " - " : " + ";
      }
      mpz_class mag = abs(a);
      if (i == 0) {
        out += mag.get_str();
      } else {
        if (mag != 1) out += mag.get_str() + "*";
        out += "C(X," + std::to_string(i) + ")";
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<mpz_class> c_;
};

// Coefficients in the binom(X, i) basis of the integer-valued polynomial
// taking the given values at X = 0, 1, 2, ...: iterated forward differences.
inline std::vector<mpz_class> forward_differences(std::vector<mpz_class> vals) {
  std::vector<mpz_class> out;
  while (!vals.empty()) {
    out.push_back(vals.front());
    for (size_t i = 0; i + 1 < vals.size(); ++i) vals[i] = vals[i + 1] - vals[i];
    vals.pop_back();
  }
  return out;
}

// a_{0,N} ... a_{N,N} with t^N = sum_i a_{i,N} * binom(t, i)
inline std::vector<mpz_class> power_to_binomial(int N) {
  if (N < 0) throw Error("negative exponent");
  std::vector<mpz_class> vals;
  for (int t = 0; t <= N; ++t) vals.push_back(pow_z(t, (unsigned long)N));
  return forward_differences(std::move(vals));
}

// Exact product: sample pointwise products on 0..deg P + deg Q and rebuild.
// Products of integer values difference back to integers, so no rational
// intermediate can appear.
inline BinPoly binpoly_mul(const BinPoly& P, const BinPoly& Q) {
  if (P.is_zero() || Q.is_zero()) return BinPoly();
  int d = P.degree() + Q.degree();
  std::vector<mpz_class> vals;
  for (int x = 0; x <= d; ++x) vals.push_back(P.eval(x) * Q.eval(x));
  return BinPoly(forward_differences(std::move(vals)));
}

// binom(P(X), r) re-expanded in the binomial basis.  The degree of the result
// is r * deg P; the rebuild is double-checked at a few extra points so a wrong
// degree bound surfaces as an error rather than a silently truncated answer.
inline BinPoly lambda_op(int r, const BinPoly& P) {
  if (r < 0) throw Error("negative exterior power");
  if (r == 0) return BinPoly::constant(1);
  int d = P.degree() <= 0 ? 0 : r * P.degree();
  std::vector<mpz_class> vals;
  for (int x = 0; x <= d; ++x) vals.push_back(binomial(P.eval(x), (unsigned long)r));
  BinPoly out(forward_differences(std::move(vals)));
  for (int x = d + 1; x <= d + 3; ++x)
    if (out.eval(x) != binomial(P.eval(x), (unsigned long)r))
      throw Error("lambda operation left the polynomial ring");
  return out;
}

// Unique integer-valued polynomial through all but the last sample point,
// with the last point held out as a consistency check.  Sample abscissas must
// be distinct integers; they need not be consecutive.
inline BinPoly fit_binpoly(const std::vector<std::pair<long, mpz_class>>& points) {
  size_t m = points.size();
  if (m < 2) throw FitError("need at least two sample points");
  size_t used = m - 1;
  // Newton divided differences over the rationals on the first m-1 points.
  std::vector<mpq_class> coef;
  for (size_t i = 0; i < used; ++i) coef.emplace_back(points[i].second);
  for (size_t k = 1; k < used; ++k)
    for (size_t i = used - 1; i >= k; --i) {
      long dx = points[i].first - points[i - k].first;
      if (dx == 0) throw FitError("repeated sample abscissa");
      coef[i] = (coef[i] - coef[i - 1]) / dx;
      if (i == k) break;
    }
  auto newton_eval = [&](long t) {
    mpq_class r = coef[used - 1];
    for (size_t i = used - 1; i-- > 0;) r = r * (t - points[i].first) + coef[i];
    return r;
  };
  if (newton_eval(points.back().first) != mpq_class(points.back().second))
    throw FitError("not eventually polynomial at this truncation");
  std::vector<mpz_class> vals;
  for (size_t x = 0; x < used; ++x) {
    mpq_class v = newton_eval((long)x);
    if (v.get_den() != 1) throw FitError("not eventually polynomial at this truncation");
    vals.push_back(v.get_num());
  }
  BinPoly out{forward_differences(std::move(vals))};
  for (const auto& [x, y] : points)
    if (out.eval(x) != y) throw FitError("not eventually polynomial at this truncation");
  return out;
}

}  // namespace semilin
