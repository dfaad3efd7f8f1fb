#pragma once

// Brute-force reference computations. Nothing here calls into the library's
// algorithms; only the data types are shared.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "rrbkit/algebra.hpp"
#include "rrbkit/relational.hpp"

namespace oracle {

using rrbkit::Element;
using rrbkit::FiniteAlgebra;
using rrbkit::RelationalStructure;

// Binary product read straight from the table of operation `op`.
inline Element mul(const FiniteAlgebra& a, Element x, Element y, std::size_t op = 0) {
  return a.table(op)[x * a.size() + y];
}

inline bool is_rrb(const FiniteAlgebra& a) {
  const Element n = static_cast<Element>(a.size());
  for (Element x = 0; x < n; ++x) {
    if (mul(a, x, x) != x) return false;
    for (Element y = 0; y < n; ++y) {
      if (mul(a, mul(a, x, y), x) != mul(a, y, x)) return false;
      for (Element z = 0; z < n; ++z)
        if (mul(a, mul(a, x, y), z) != mul(a, x, mul(a, y, z))) return false;
    }
  }
  return true;
}

inline bool is_semilattice(const FiniteAlgebra& a) {
  if (!is_rrb(a)) return false;
  for (Element x = 0; x < a.size(); ++x)
    for (Element y = 0; y < a.size(); ++y)
      if (mul(a, x, y) != mul(a, y, x)) return false;
  return true;
}

// x <= y iff x·y = x
inline bool leq(const FiniteAlgebra& a, Element x, Element y) { return mul(a, x, y) == x; }

// Every set partition of {0..n-1} as a block-label vector (restricted growth).
inline std::vector<std::vector<Element>> set_partitions(std::size_t n) {
  std::vector<std::vector<Element>> out;
  std::vector<Element> rgs(n, 0);
  std::function<void(std::size_t, Element)> go = [&](std::size_t i, Element max) {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (Element b = 0; b <= max + 1; ++b) {
      rgs[i] = b;
      go(i + 1, std::max(max, b));
    }
  };
  if (n == 0) return {{}};
  rgs[0] = 0;
  go(1, 0);
  return out;
}

// Compatibility with every operation of every arity, checked on all pairs of
// argument tuples.
inline bool is_congruence(const FiniteAlgebra& a, const std::vector<Element>& block) {
  const std::size_t n = a.size();
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    const std::size_t k = a.signature()[op].arity;
    const std::size_t count = rrbkit::ipow(n, k);
    for (std::size_t u = 0; u < count; ++u)
      for (std::size_t v = 0; v < count; ++v) {
        bool related = true;
        for (std::size_t i = 0, uu = u, vv = v; i < k; ++i, uu /= n, vv /= n)
          if (block[uu % n] != block[vv % n]) related = false;
        if (related && block[a.table(op)[u]] != block[a.table(op)[v]]) return false;
      }
  }
  return true;
}

// Relation matrix of the least congruence containing the pairs: the
// intersection of every congruence that contains them.
inline std::vector<char> congruence_generated(const FiniteAlgebra& a,
                                              const std::vector<std::pair<Element, Element>>& pairs) {
  const std::size_t n = a.size();
  std::vector<char> rel(n * n, 1);
  for (const auto& block : set_partitions(n)) {
    bool contains = true;
    for (auto [x, y] : pairs)
      if (block[x] != block[y]) contains = false;
    if (!contains || !is_congruence(a, block)) continue;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (block[x] != block[y]) rel[x * n + y] = 0;
  }
  return rel;
}

// Tables under every relabelling, minimum taken lexicographically.
inline std::vector<std::vector<Element>> canonical(const FiniteAlgebra& a) {
  const std::size_t n = a.size();
  std::vector<Element> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<std::vector<std::vector<Element>>> best;
  do {
    std::vector<std::vector<Element>> t;
    for (std::size_t op = 0; op < a.signature().size(); ++op) {
      const std::size_t k = a.signature()[op].arity;
      const std::size_t count = rrbkit::ipow(n, k);
      std::vector<Element> table(count);
      std::vector<Element> args(k);
      for (std::size_t u = 0; u < count; ++u) {
        // table index u lists the arguments of the relabelled algebra; map
        // them back through the inverse permutation
        std::size_t src = 0;
        for (std::size_t i = 0, uu = u; i < k; ++i, uu /= n) args[k - 1 - i] = static_cast<Element>(uu % n);
        for (std::size_t i = 0; i < k; ++i) {
          const auto it = std::find(perm.begin(), perm.end(), args[i]);
          src = src * n + static_cast<std::size_t>(it - perm.begin());
        }
        table[u] = perm[a.table(op)[src]];
      }
      t.push_back(std::move(table));
    }
    if (!best || t < *best) best = std::move(t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best;
}

// All binary tables on n idempotent elements satisfying the RRB laws, up to
// isomorphism. Plain enumeration of the n^(n^2 - n) off-diagonal fillings.
inline std::size_t count_rrbs(std::size_t n) {
  const std::size_t cells = n * n;
  std::vector<Element> t(cells, 0);
  for (std::size_t i = 0; i < n; ++i) t[i * n + i] = static_cast<Element>(i);
  std::vector<std::size_t> free_cells;
  for (std::size_t c = 0; c < cells; ++c)
    if (c / n != c % n) free_cells.push_back(c);
  std::set<std::vector<std::vector<Element>>> seen;
  const auto sig = rrbkit::band_signature();
  while (true) {
    auto m = [&](Element x, Element y) { return t[x * n + y]; };
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x)
      for (Element y = 0; y < n && ok; ++y) {
        if (m(m(x, y), x) != m(y, x)) ok = false;
        for (Element z = 0; z < n && ok; ++z)
          if (m(m(x, y), z) != m(x, m(y, z))) ok = false;
      }
    if (ok) seen.insert(canonical(FiniteAlgebra(sig, n, {t})));
    std::size_t k = 0;
    for (; k < free_cells.size(); ++k) {
      if (++t[free_cells[k]] < n) break;
      t[free_cells[k]] = 0;
    }
    if (k == free_cells.size()) break;
  }
  return seen.size();
}

// Reflexive, antisymmetric, transitive.
inline bool is_partial_order(const RelationalStructure& s) {
  const Element n = static_cast<Element>(s.size());
  for (Element x = 0; x < n; ++x) {
    if (!s.related(x, x)) return false;
    for (Element y = 0; y < n; ++y) {
      if (x != y && s.related(x, y) && s.related(y, x)) return false;
      for (Element z = 0; z < n; ++z)
        if (s.related(x, y) && s.related(y, z) && !s.related(x, z)) return false;
    }
  }
  return true;
}

// Least upper bound by scanning all upper bounds.
inline std::optional<Element> sup(const std::vector<char>& le, std::size_t n, Element x, Element y) {
  std::vector<Element> ub;
  for (Element z = 0; z < n; ++z)
    if (le[x * n + z] && le[y * n + z]) ub.push_back(z);
  for (Element z : ub) {
    bool least = true;
    for (Element w : ub)
      if (!le[z * n + w]) least = false;
    if (least) return z;
  }
  return std::nullopt;
}

// Tuple-preserving maps by full enumeration of n^m candidate maps.
inline std::size_t count_relational_homs(const RelationalStructure& src, const RelationalStructure& dst) {
  const std::size_t m = src.size(), n = dst.size();
  std::size_t count = 0;
  std::vector<Element> f(m, 0);
  while (true) {
    bool ok = true;
    for (const auto& t : src.tuples()) {
      rrbkit::Tuple img;
      for (Element e : t) img.push_back(f[e]);
      if (!dst.contains(img)) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    std::size_t k = 0;
    for (; k < m; ++k) {
      if (++f[k] < n) break;
      f[k] = 0;
    }
    if (k == m) break;
  }
  return count;
}

// Whether some RRB has exactly this order. Comparable cells are forced
// (x <= y gives x·y = y·x = x); every other cell x·y ranges over the down-set
// of y, since a·b <= b in any RRB. Candidates are checked in full.
inline bool has_rrb_with_order(const RelationalStructure& poset) {
  const Element n = static_cast<Element>(poset.size());
  std::vector<Element> t(n * n, 0);
  std::vector<std::size_t> open;
  std::vector<std::vector<Element>> domain;
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      if (poset.related(x, y)) {
        t[x * n + y] = x;
      } else if (poset.related(y, x)) {
        t[x * n + y] = y;
      } else {
        std::vector<Element> d;
        for (Element z = 0; z < n; ++z)
          if (poset.related(z, y)) d.push_back(z);
        open.push_back(x * n + y);
        domain.push_back(std::move(d));
      }
    }
  std::vector<std::size_t> pick(open.size(), 0);
  const auto sig = rrbkit::band_signature();
  while (true) {
    for (std::size_t k = 0; k < open.size(); ++k) t[open[k]] = domain[k][pick[k]];
    const FiniteAlgebra a(sig, n, {t});
    if (is_rrb(a)) {
      bool same = true;
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
          if (leq(a, x, y) != poset.related(x, y)) same = false;
      if (same) return true;
    }
    std::size_t k = 0;
    for (; k < open.size(); ++k) {
      if (++pick[k] < domain[k].size()) break;
      pick[k] = 0;
    }
    if (k == open.size()) return false;
  }
}

// Partial orders on n points up to isomorphism, from all 2^(n^2-n) relations.
inline std::size_t count_posets(std::size_t n) {
  std::vector<std::pair<Element, Element>> cells;
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (x != y) cells.push_back({x, y});
  std::set<std::vector<char>> seen;
  for (std::size_t mask = 0; mask < (std::size_t{1} << cells.size()); ++mask) {
    std::vector<char> le(n * n, 0);
    for (std::size_t x = 0; x < n; ++x) le[x * n + x] = 1;
    for (std::size_t k = 0; k < cells.size(); ++k)
      if ((mask >> k) & 1) le[cells[k].first * n + cells[k].second] = 1;
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y) {
        if (x != y && le[x * n + y] && le[y * n + x]) ok = false;
        for (std::size_t z = 0; z < n && ok; ++z)
          if (le[x * n + y] && le[y * n + z] && !le[x * n + z]) ok = false;
      }
    if (!ok) continue;
    std::vector<Element> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<char> best;
    do {
      std::vector<char> r(n * n);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) r[perm[x] * n + perm[y]] = le[x * n + y];
      if (best.empty() || r < best) best = r;
    } while (std::next_permutation(perm.begin(), perm.end()));
    seen.insert(best);
  }
  return seen.size();
}

}  // namespace oracle
