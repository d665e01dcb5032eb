#pragma once

#include <string>
#include <vector>

#include "semilin/perm.hpp"
#include "semilin/ratfunc.hpp"

namespace semilin {

// A rational function field k(x0..x{n-1}) together with the subfield a
// truncated symmetric group actually acts on, described by a generator style:
//   free          the whole field
//   differences   generated by the x_i - x_j
//   ratios        generated by the x_i / x_j
//   simple_ratios generated by the (x_i - x_j) / (x_i - x_l)
// Permutations act by relabelling variables; elements meant to lie in the
// styled subfield are built from generator expressions by the caller.
class TruncatedField {
 public:
  enum Style { free_style, differences, ratios, simple_ratios };

  static TruncatedField make(const FieldCtxPtr& k, int n, Style style) {
    if (n < 1) throw Error("truncation must contain at least one variable");
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    TruncatedField F;
    F.R_ = PolyRing::make(k, names);
    F.n_ = n;
    F.style_ = style;
    return F;
  }

  const RingPtr& ring() const { return R_; }
  const FieldCtxPtr& constants() const { return R_->K; }
  int n() const { return n_; }
  Style style() const { return style_; }

  RatFunc x(int i) const { return RatFunc::var(R_, i); }

  RatFunc apply(const Perm& g, const RatFunc& f) const {
    if (g.n() != n_) throw Error("permutation size does not match the truncation");
    std::vector<int> dest(n_);
    for (int i = 0; i < n_; ++i) dest[i] = g(i);
    return f.relabeled(dest);
  }

  std::vector<RatFunc> generators() const {
    std::vector<RatFunc> g;
    switch (style_) {
      case free_style:
        for (int i = 0; i < n_; ++i) g.push_back(x(i));
        break;
      case differences:
        for (int i = 0; i < n_; ++i)
          for (int j = i + 1; j < n_; ++j) g.push_back(x(i) - x(j));
        break;
      case ratios:
        for (int i = 0; i < n_; ++i)
          for (int j = i + 1; j < n_; ++j) g.push_back(x(i) / x(j));
        break;
      case simple_ratios:
        for (int i = 0; i < n_; ++i)
          for (int j = 0; j < n_; ++j)
            for (int l = 0; l < n_; ++l) {
              if (i == j || i == l || j == l) continue;
              g.push_back((x(i) - x(j)) / (x(i) - x(l)));
            }
        break;
    }
    return g;
  }

  // Whether the subgroup permuting only `moving` (pointwise stabilizer of the
  // rest) acts faithfully on the styled subfield.  A permutation acts
  // trivially on the subfield exactly when it fixes every generator, and the
  // kernel is a normal subgroup of a symmetric group, so testing one
  // representative of each cycle type that generates a minimal normal
  // subgroup (a transposition, a 3-cycle, a double transposition) decides
  // faithfulness.
  bool faithful_on(const std::vector<int>& moving) const {
    std::vector<Perm> probes;
    size_t m = moving.size();
    if (m >= 2) probes.push_back(Perm::transposition(n_, moving[0], moving[1]));
    if (m >= 3) probes.push_back(Perm::cycle(n_, {moving[0], moving[1], moving[2]}));
    if (m >= 4)
      probes.push_back(Perm::transposition(n_, moving[0], moving[1]) *
                       Perm::transposition(n_, moving[2], moving[3]));
    auto gens = generators();
    for (const auto& p : probes) {
      bool moves_something = false;
      for (const auto& g : gens)
        if (apply(p, g) != g) {
          moves_something = true;
          break;
        }
      if (!moves_something) return false;
    }
    return true;
  }

  void require_faithful_on(const std::vector<int>& moving) const {
    if (!faithful_on(moving))
      throw Error("truncated action is not faithful on the " + style_name() +
                  " generators; index weights would be wrong");
  }

  std::string style_name() const {
    switch (style_) {
      case free_style:
        return "free";
      case differences:
        return "difference";
      case ratios:
        return "ratio";
      case simple_ratios:
        return "simple-ratio";
    }
    return "?";
  }

  std::string describe() const {
    return style_name() + " field on " + std::to_string(n_) + " variables";
  }

 private:
  RingPtr R_;
  int n_ = 0;
  Style style_ = free_style;
};

}  // namespace semilin
