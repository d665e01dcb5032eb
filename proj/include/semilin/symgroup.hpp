#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semilin/perm.hpp"

namespace semilin {

constexpr int kDefaultEnumBound = 9;

struct EnumBoundError : Error {
  explicit EnumBoundError(const std::string& msg) : Error(msg) {}
};

// A subgroup of S_n given extensionally by kind: the whole group, the
// alternating group, or the pointwise/setwise stabilizer of a subset.
struct SubgroupSpec {
  enum Kind { full, alternating, pointwise_stab, setwise_stab };

  Kind kind = full;
  int n = 0;
  std::vector<int> subset;  // sorted; used by the stabilizer kinds

  static SubgroupSpec full_group(int n) { return {full, n, {}}; }
  static SubgroupSpec alt(int n) { return {alternating, n, {}}; }

  static SubgroupSpec pointwise(int n, std::vector<int> T) {
    std::sort(T.begin(), T.end());
    check_subset(n, T);
    return {pointwise_stab, n, std::move(T)};
  }

  static SubgroupSpec setwise(int n, std::vector<int> T) {
    std::sort(T.begin(), T.end());
    check_subset(n, T);
    return {setwise_stab, n, std::move(T)};
  }

  mpz_class order() const {
    switch (kind) {
      case full:
        return factorial(n);
      case alternating:
        return n < 2 ? mpz_class(1) : mpz_class(factorial(n) / 2);
      case pointwise_stab:
        return factorial(n - (int)subset.size());
      case setwise_stab:
        return factorial((int)subset.size()) * factorial(n - (int)subset.size());
    }
    throw Error("unreachable");
  }

  bool contains(const Perm& p) const {
    if (p.n() != n) return false;
    switch (kind) {
      case full:
        return true;
      case alternating:
        return p.sign() == 1;
      case pointwise_stab:
        for (int t : subset)
          if (p(t) != t) return false;
        return true;
      case setwise_stab:
        for (int t : subset)
          if (!std::binary_search(subset.begin(), subset.end(), p(t))) return false;
        return true;
    }
    throw Error("unreachable");
  }

  std::vector<Perm> generators() const {
    std::vector<Perm> g;
    auto others = complement();
    switch (kind) {
      case full:
        for (int i = 0; i + 1 < n; ++i) g.push_back(Perm::transposition(n, i, i + 1));
        break;
      case alternating:
        for (int i = 2; i < n; ++i) g.push_back(Perm::cycle(n, {0, 1, i}));
        break;
      case pointwise_stab:
        for (size_t i = 0; i + 1 < others.size(); ++i)
          g.push_back(Perm::transposition(n, others[i], others[i + 1]));
        break;
      case setwise_stab:
        for (size_t i = 0; i + 1 < subset.size(); ++i)
          g.push_back(Perm::transposition(n, subset[i], subset[i + 1]));
        for (size_t i = 0; i + 1 < others.size(); ++i)
          g.push_back(Perm::transposition(n, others[i], others[i + 1]));
        break;
    }
    if (g.empty()) g.push_back(Perm::identity(n));
    return g;
  }

  // Full element list.  Guarded by the enumeration bound; orbit and stabilizer
  // computations go through generators instead and scale further.
  std::vector<Perm> enumerate(int bound = kDefaultEnumBound) const {
    if (n > bound)
      throw EnumBoundError("enumeration bound exceeded: n = " + std::to_string(n) +
                           " > " + std::to_string(bound));
    std::vector<Perm> out;
    switch (kind) {
      case full:
      case alternating: {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 0);
        do {
          Perm p{std::vector<int>(v)};
          if (kind == full || p.sign() == 1) out.push_back(std::move(p));
        } while (std::next_permutation(v.begin(), v.end()));
        break;
      }
      case pointwise_stab:
      case setwise_stab: {
        auto others = complement();
        std::vector<std::vector<int>> inner;  // permutations of subset (or just one)
        if (kind == setwise_stab) {
          std::vector<int> s = subset;
          do inner.push_back(s);
          while (std::next_permutation(s.begin(), s.end()));
        } else {
          inner.push_back(subset);
        }
        std::vector<int> o = others;
        std::sort(o.begin(), o.end());
        do {
          for (const auto& s : inner) {
            std::vector<int> img(n);
            for (size_t i = 0; i < subset.size(); ++i) img[subset[i]] = s[i];
            for (size_t i = 0; i < others.size(); ++i) img[others[i]] = o[i];
            out.emplace_back(std::move(img));
          }
        } while (std::next_permutation(o.begin(), o.end()));
        break;
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<int> complement() const {
    std::vector<int> o;
    for (int i = 0; i < n; ++i)
      if (!std::binary_search(subset.begin(), subset.end(), i)) o.push_back(i);
    return o;
  }

 private:
  static void check_subset(int n, const std::vector<int>& T) {
    for (size_t i = 0; i < T.size(); ++i) {
      if (T[i] < 0 || T[i] >= n) throw Error("stabilized subset out of range");
      if (i && T[i] == T[i - 1]) throw Error("stabilized subset has repeats");
    }
  }
};

// ---- orbits on combinatorial domains ----

struct Domain {
  enum Kind { subsets, tuples, injections };
  Kind kind;
  int s;  // subset size / tuple length

  static Domain subsets_of(int s) { return {subsets, s}; }
  static Domain tuples_of(int s) { return {tuples, s}; }
  static Domain injections_of(int s) { return {injections, s}; }
};

inline std::vector<std::vector<int>> domain_elements(const Domain& dom, int n) {
  std::vector<std::vector<int>> out;
  if (dom.s < 0) throw Error("domain size must be nonnegative");
  switch (dom.kind) {
    case Domain::subsets: {
      if (dom.s > n) return out;
      std::vector<int> idx(dom.s);
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        out.push_back(idx);
        int i = dom.s - 1;
        while (i >= 0 && idx[i] == n - dom.s + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < dom.s; ++j) idx[j] = idx[j - 1] + 1;
      }
      if (dom.s == 0) out.assign(1, {});
      break;
    }
    case Domain::tuples: {
      std::vector<int> t(dom.s, 0);
      while (true) {
        out.push_back(t);
        int i = dom.s - 1;
        while (i >= 0 && t[i] == n - 1) t[i--] = 0;
        if (i < 0) break;
        ++t[i];
      }
      if (dom.s == 0) out.assign(1, {});
      break;
    }
    case Domain::injections: {
      std::vector<int> t;
      std::vector<bool> used(n, false);
      auto rec = [&](auto&& self) -> void {
        if ((int)t.size() == dom.s) {
          out.push_back(t);
          return;
        }
        for (int v = 0; v < n; ++v) {
          if (used[v]) continue;
          used[v] = true;
          t.push_back(v);
          self(self);
          t.pop_back();
          used[v] = false;
        }
      };
      rec(rec);
      break;
    }
  }
  return out;
}

inline std::vector<int> act_on_element(const Domain& dom, const Perm& g,
                                       const std::vector<int>& e) {
  std::vector<int> r(e.size());
  for (size_t i = 0; i < e.size(); ++i) r[i] = g(e[i]);
  if (dom.kind == Domain::subsets) std::sort(r.begin(), r.end());
  return r;
}

// Generic orbit partition of an indexed element list under generator moves.
// act(gen_index, elem_index) must return the index of the image element.
template <class Act>
std::vector<std::vector<int>> orbit_partition(int num_elems, int num_gens, Act act) {
  std::vector<int> comp(num_elems, -1);
  std::vector<std::vector<int>> blocks;
  for (int start = 0; start < num_elems; ++start) {
    if (comp[start] >= 0) continue;
    int id = (int)blocks.size();
    blocks.emplace_back();
    std::vector<int> stack{start};
    comp[start] = id;
    while (!stack.empty()) {
      int e = stack.back();
      stack.pop_back();
      blocks[id].push_back(e);
      for (int g = 0; g < num_gens; ++g) {
        int f = act(g, e);
        if (comp[f] < 0) {
          comp[f] = id;
          stack.push_back(f);
        }
      }
    }
    std::sort(blocks[id].begin(), blocks[id].end());
  }
  return blocks;
}

struct Orbit {
  std::vector<std::vector<int>> elems;  // sorted canonical encodings
  std::vector<int> rep;                 // lexicographically least element
  size_t size = 0;
  mpz_class stab_order;                 // |G| / orbit size
};

inline std::vector<Orbit> orbits(const SubgroupSpec& G, const Domain& dom) {
  auto elems = domain_elements(dom, G.n);
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], (int)i);
  auto gens = G.generators();
  auto blocks = orbit_partition((int)elems.size(), (int)gens.size(), [&](int g, int e) {
    return index.at(act_on_element(dom, gens[g], elems[e]));
  });
  std::vector<Orbit> out;
  for (const auto& blk : blocks) {
    Orbit o;
    for (int e : blk) o.elems.push_back(elems[e]);
    std::sort(o.elems.begin(), o.elems.end());
    o.rep = o.elems.front();
    o.size = o.elems.size();
    mpz_class ord = G.order();
    if (ord % (long)o.size != 0) throw Error("orbit size does not divide the group order");
    o.stab_order = ord / (long)o.size;
    out.push_back(std::move(o));
  }
  std::sort(out.begin(), out.end(), [](const Orbit& a, const Orbit& b) { return a.rep < b.rep; });
  return out;
}

// ---- double cosets H \ G / U with canonical representatives ----

struct DoubleCosetClass {
  Perm rep;     // lexicographically least member
  size_t size;  // number of group elements in the class
};

struct DoubleCosets {
  std::vector<DoubleCosetClass> classes;  // sorted by representative
  size_t count() const { return classes.size(); }
};

inline DoubleCosets double_cosets(const SubgroupSpec& H, const SubgroupSpec& U,
                                  int bound = kDefaultEnumBound) {
  if (H.n != U.n) throw Error("subgroups live in different symmetric groups");
  auto G = SubgroupSpec::full_group(H.n).enumerate(bound);
  std::map<Perm, int> index;
  for (size_t i = 0; i < G.size(); ++i) index.emplace(G[i], (int)i);
  auto hg = H.generators();
  auto ug = U.generators();
  auto blocks = orbit_partition((int)G.size(), (int)(hg.size() + ug.size()), [&](int g, int e) {
    const Perm& sigma = G[e];
    Perm image = (size_t)g < hg.size() ? hg[g] * sigma : sigma * ug[g - hg.size()];
    return index.at(image);
  });
  DoubleCosets out;
  for (const auto& blk : blocks)
    out.classes.push_back({G[blk.front()], blk.size()});  // blk sorted, G sorted => least
  std::sort(out.classes.begin(), out.classes.end(),
            [](const DoubleCosetClass& a, const DoubleCosetClass& b) { return a.rep < b.rep; });
  return out;
}

// Invariant of the class G_J sigma G_T (pointwise stabilizers): the overlap
// Lambda = J meet sigma(T) together with the injection Lambda -> T sending
// lambda to sigma^{-1}(lambda).
struct MuLabel {
  std::vector<int> lambda;
  std::vector<std::pair<int, int>> inj;  // (lambda, preimage in T), sorted

  bool operator==(const MuLabel& o) const { return lambda == o.lambda && inj == o.inj; }
  bool operator<(const MuLabel& o) const {
    if (lambda != o.lambda) return lambda < o.lambda;
    return inj < o.inj;
  }
};

inline MuLabel mu_label(const Perm& sigma, const std::vector<int>& J,
                        const std::vector<int>& T) {
  MuLabel m;
  Perm inv = sigma.inverse();
  std::set<int> imageT;
  for (int t : T) imageT.insert(sigma(t));
  for (int j : J)
    if (imageT.count(j)) m.lambda.push_back(j);
  std::sort(m.lambda.begin(), m.lambda.end());
  for (int l : m.lambda) m.inj.emplace_back(l, inv(l));
  return m;
}

// Number of injections from subsets of J into T, summed over all subsets:
// sum_k C(|J|, k) * |T|! / (|T|-k)!
inline mpz_class injection_count_sum(int j_size, int t_size) {
  mpz_class total = 0;
  for (int k = 0; k <= std::min(j_size, t_size); ++k) {
    mpz_class inj = 1;
    for (int i = 0; i < k; ++i) inj *= (t_size - i);
    total += binomial(j_size, k) * inj;
  }
  return total;
}

// ---- embedding counts for vector-space analogues ----

// Number of embeddings of an n-dimensional object into an N-dimensional one
// over "F_q", with a v-dimensional part held fixed:
//   q = 1: falling factorial N(N-1)...(N-n+1)    (plain injections)
//   q > 1: q^{vn} * prod_{i=0}^{n-1} (q^N - q^i) (injective linear maps)
inline mpz_class count_subspace_embeddings(unsigned long q, int n, int N, int v) {
  if (n < 0 || N < 0 || v < 0) throw Error("negative dimension");
  if (q == 0) throw Error("q must be at least 1");
  if (q == 1) {
    mpz_class r = 1;
    for (int i = 0; i < n; ++i) r *= (N - i);
    return r;
  }
  if (!prime_power_base(q)) throw Error("q must be 1 or a prime power, got " + std::to_string(q));
  mpz_class qz((long)q);
  mpz_class r = pow_z(qz, (unsigned long)(v * n));
  for (int i = 0; i < n; ++i) r *= pow_z(qz, N) - pow_z(qz, i);
  return r;
}

}  // namespace semilin
