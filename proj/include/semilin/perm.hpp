#pragma once

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "semilin/numeric.hpp"

namespace semilin {

// Permutation of {0, ..., n-1} in one-line notation.  Composition is function
// composition: (a*b)(i) = a(b(i)), so a*b means "apply b first".
struct Perm {
  std::vector<int> img;

  Perm() = default;
  explicit Perm(std::vector<int> one_line) : img(std::move(one_line)) {
    std::vector<bool> seen(img.size(), false);
    for (int v : img) {
      if (v < 0 || v >= (int)img.size() || seen[v]) throw Error("invalid one-line notation");
      seen[v] = true;
    }
  }

  static Perm identity(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return Perm(std::move(v));
  }

  static Perm transposition(int n, int a, int b) {
    Perm p = identity(n);
    std::swap(p.img[a], p.img[b]);
    return p;
  }

  // pts[0] -> pts[1] -> ... -> pts.back() -> pts[0]
  static Perm cycle(int n, const std::vector<int>& pts) {
    Perm p = identity(n);
    for (size_t i = 0; i < pts.size(); ++i) p.img[pts[i]] = pts[(i + 1) % pts.size()];
    return Perm(std::move(p.img));  // revalidate
  }

  int n() const { return (int)img.size(); }
  int operator()(int i) const { return img[i]; }

  Perm operator*(const Perm& b) const {
    if (n() != b.n()) throw Error("composing permutations of different degrees");
    std::vector<int> v(img.size());
    for (int i = 0; i < n(); ++i) v[i] = img[b.img[i]];
    Perm p;
    p.img = std::move(v);
    return p;
  }

  Perm inverse() const {
    std::vector<int> v(img.size());
    for (int i = 0; i < n(); ++i) v[img[i]] = i;
    Perm p;
    p.img = std::move(v);
    return p;
  }

  bool is_identity() const {
    for (int i = 0; i < n(); ++i)
      if (img[i] != i) return false;
    return true;
  }

  int sign() const {
    std::vector<bool> seen(img.size(), false);
    int s = 1;
    for (int i = 0; i < n(); ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int j = i; !seen[j]; j = img[j]) {
        seen[j] = true;
        ++len;
      }
      if (len % 2 == 0) s = -s;
    }
    return s;
  }

  bool operator==(const Perm& o) const { return img == o.img; }
  bool operator!=(const Perm& o) const { return img != o.img; }
  bool operator<(const Perm& o) const { return img < o.img; }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n(); ++i) os << (i ? " " : "") << img[i];
    os << "]";
    return os.str();
  }
};

}  // namespace semilin
