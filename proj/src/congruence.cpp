#include "rrbkit/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "rrbkit/error.hpp"

namespace rrbkit {

Partition::Partition(std::vector<Element> representative) : rep_(std::move(representative)) {
  if (rep_.empty()) fail(ErrorCode::InvalidArgument, "partition of an empty set");
  for (std::size_t i = 0; i < rep_.size(); ++i) {
    if (rep_[i] > i || rep_[rep_[i]] != rep_[i])
      fail(ErrorCode::InvalidArgument, "representative array is not canonical at " + std::to_string(i));
  }
}

Partition Partition::identity(std::size_t n) {
  std::vector<Element> rep(n);
  std::iota(rep.begin(), rep.end(), 0);
  return Partition(std::move(rep));
}

Partition Partition::full(std::size_t n) { return Partition(std::vector<Element>(n, 0)); }

Partition Partition::from_labels(std::span<const Element> block_of) {
  std::vector<Element> rep(block_of.size());
  std::vector<std::pair<Element, Element>> first;  // label -> least member
  for (std::size_t i = 0; i < block_of.size(); ++i) {
    auto it = std::find_if(first.begin(), first.end(),
                           [&](const auto& p) { return p.first == block_of[i]; });
    if (it == first.end()) {
      first.emplace_back(block_of[i], static_cast<Element>(i));
      rep[i] = static_cast<Element>(i);
    } else {
      rep[i] = it->second;
    }
  }
  return Partition(std::move(rep));
}

Partition Partition::from_blocks(std::size_t n, const std::vector<std::vector<Element>>& blocks) {
  std::vector<Element> label(n, static_cast<Element>(-1));
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (Element e : blocks[b]) {
      if (e >= n || label[e] != static_cast<Element>(-1))
        fail(ErrorCode::InvalidArgument, "blocks do not partition the universe");
      label[e] = static_cast<Element>(b);
    }
  for (Element l : label)
    if (l == static_cast<Element>(-1)) fail(ErrorCode::InvalidArgument, "blocks do not cover the universe");
  return from_labels(label);
}

std::size_t Partition::block_count() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < rep_.size(); ++i) c += rep_[i] == i;
  return c;
}

std::vector<std::vector<Element>> Partition::blocks() const {
  std::vector<std::vector<Element>> out;
  std::vector<std::size_t> slot(rep_.size(), 0);
  for (std::size_t i = 0; i < rep_.size(); ++i) {
    if (rep_[i] == i) {
      slot[i] = out.size();
      out.emplace_back();
    }
    out[slot[rep_[i]]].push_back(static_cast<Element>(i));
  }
  return out;
}

std::vector<Element> Partition::block_of(Element e) const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < rep_.size(); ++i)
    if (rep_[i] == rep_[e]) out.push_back(static_cast<Element>(i));
  return out;
}

bool Partition::refines(const Partition& other) const {
  if (other.size() != size()) return false;
  for (std::size_t i = 0; i < rep_.size(); ++i)
    if (!other.related(static_cast<Element>(i), rep_[i])) return false;
  return true;
}

bool canonical_less(const Partition& a, const Partition& b) {
  const auto ca = a.block_count(), cb = b.block_count();
  if (ca != cb) return ca > cb;
  return a.representatives() < b.representatives();
}

namespace {

void require_same_size(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) fail(ErrorCode::InvalidArgument, "partitions of different sizes");
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  Element find(Element x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  // Keeps the smaller root so roots are least members.
  bool unite(Element a, Element b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  Partition partition() {
    std::vector<Element> rep(parent_.size());
    for (std::size_t i = 0; i < rep.size(); ++i) rep[i] = find(static_cast<Element>(i));
    return Partition(std::move(rep));
  }

 private:
  std::vector<Element> parent_;
};

}  // namespace

Partition meet(const Partition& a, const Partition& b) {
  require_same_size(a, b);
  std::vector<Element> label(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    label[i] = static_cast<Element>(a.representative(i) * a.size() + b.representative(i));
  return Partition::from_labels(label);
}

Partition join(const Partition& a, const Partition& b) {
  require_same_size(a, b);
  UnionFind uf(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    uf.unite(static_cast<Element>(i), a.representative(i));
    uf.unite(static_cast<Element>(i), b.representative(i));
  }
  return uf.partition();
}

bool composes_to_full(const Partition& a, const Partition& b) {
  require_same_size(a, b);
  const std::size_t n = a.size();
  // a∘b is full iff every a-block meets every b-block.
  std::vector<char> meets(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) meets[a.representative(i) * n + b.representative(i)] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (a.representative(i) != i) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (b.representative(j) == j && !meets[i * n + j]) return false;
  }
  return true;
}

CombineResult combine_partitions(const Partition& a, const Partition& b, CombineMode mode) {
  switch (mode) {
    case CombineMode::Meet: return {meet(a, b), false};
    case CombineMode::Join: return {join(a, b), false};
    case CombineMode::Compose: return {std::nullopt, composes_to_full(a, b)};
  }
  fail(ErrorCode::InvalidArgument, "unknown combine mode");
}

bool is_congruence(const FiniteAlgebra& algebra, const Partition& p) {
  if (p.size() != algebra.size()) return false;
  const std::size_t n = algebra.size();
  std::vector<Element> moved;
  for (std::size_t op = 0; op < algebra.signature().size(); ++op) {
    const auto arity = algebra.signature()[op].arity;
    const auto& table = algebra.table(op);
    bool ok = true;
    for_each_tuple(n, arity, [&](std::span<const Element> args) {
      if (!ok) return;
      const Element base = table[table_offset(n, args)];
      moved.assign(args.begin(), args.end());
      // Replacing one argument at a time by its block representative suffices.
      for (std::size_t k = 0; k < arity && ok; ++k) {
        moved[k] = p.representative(args[k]);
        ok = p.related(base, table[table_offset(n, moved)]);
        moved[k] = args[k];
      }
    });
    if (!ok) return false;
  }
  return true;
}

Partition congruence_generated(const FiniteAlgebra& algebra,
                               std::span<const std::pair<Element, Element>> pairs) {
  const std::size_t n = algebra.size();
  UnionFind uf(n);
  std::vector<std::pair<Element, Element>> work;
  for (const auto& [a, b] : pairs) {
    if (a >= n || b >= n) fail(ErrorCode::OutOfRange, "generating pair outside universe");
    if (uf.unite(a, b)) work.emplace_back(a, b);
  }
  std::vector<Element> args_a, args_b;
  while (!work.empty()) {
    const auto [a, b] = work.back();
    work.pop_back();
    for (std::size_t op = 0; op < algebra.signature().size(); ++op) {
      const auto arity = algebra.signature()[op].arity;
      if (arity == 0) continue;
      const auto& table = algebra.table(op);
      for (std::size_t pos = 0; pos < arity; ++pos) {
        for_each_tuple(n, arity - 1, [&](std::span<const Element> ctx) {
          args_a.clear();
          for (std::size_t k = 0, c = 0; k < arity; ++k) args_a.push_back(k == pos ? a : ctx[c++]);
          args_b = args_a;
          args_b[pos] = b;
          const Element x = table[table_offset(n, args_a)];
          const Element y = table[table_offset(n, args_b)];
          if (uf.unite(x, y)) work.emplace_back(x, y);
        });
      }
    }
  }
  return uf.partition();
}

Partition principal_congruence(const FiniteAlgebra& algebra, Element a, Element b) {
  const std::pair<Element, Element> p{a, b};
  return congruence_generated(algebra, std::span(&p, 1));
}

Quotient quotient_algebra(const FiniteAlgebra& algebra, const Partition& congruence) {
  if (congruence.size() != algebra.size())
    fail(ErrorCode::InvalidArgument, "partition size differs from algebra size");
  if (!is_congruence(algebra, congruence))
    fail(ErrorCode::Validation, "partition is not compatible with the operations");
  const std::size_t n = algebra.size();
  std::vector<Element> block_index(n, 0);
  std::vector<Element> reps;
  for (std::size_t i = 0; i < n; ++i) {
    if (congruence.representative(i) == i) {
      block_index[i] = static_cast<Element>(reps.size());
      reps.push_back(static_cast<Element>(i));
    }
  }
  std::vector<Element> proj(n);
  for (std::size_t i = 0; i < n; ++i) proj[i] = block_index[congruence.representative(i)];
  const std::size_t m = reps.size();
  std::vector<std::vector<Element>> tables;
  std::vector<Element> args;
  for (std::size_t op = 0; op < algebra.signature().size(); ++op) {
    const auto arity = algebra.signature()[op].arity;
    std::vector<Element> table(ipow(m, arity));
    args.resize(arity);
    for_each_tuple(m, arity, [&](std::span<const Element> idx) {
      for (std::size_t k = 0; k < arity; ++k) args[k] = reps[idx[k]];
      table[table_offset(m, idx)] = proj[algebra.table(op)[table_offset(n, args)]];
    });
    tables.push_back(std::move(table));
  }
  std::vector<std::string> labels;
  for (Element r : reps) labels.push_back(algebra.label(r));
  FiniteAlgebra q(algebra.signature(), m, std::move(tables), std::move(labels));
  auto projection = make_homomorphism(algebra, q, std::move(proj));
  return Quotient{std::move(q), std::move(projection)};
}

Partition kernel(const Homomorphism& h) { return Partition::from_labels(h.map); }

namespace {

void require_bound(const FiniteAlgebra& algebra, std::size_t bound, const char* what) {
  if (algebra.size() > bound)
    fail(ErrorCode::BoundExceeded, std::string(what) + " is limited to algebras of size <= " +
                                       std::to_string(bound) + " (got " +
                                       std::to_string(algebra.size()) + ")");
}

std::vector<Partition> distinct_principals(const FiniteAlgebra& algebra) {
  std::vector<Partition> out;
  for (Element a = 0; a < algebra.size(); ++a)
    for (Element b = a + 1; b < algebra.size(); ++b) {
      auto p = principal_congruence(algebra, a, b);
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
    }
  return out;
}

}  // namespace

std::vector<Partition> all_congruences(const FiniteAlgebra& algebra) {
  require_bound(algebra, kCongruenceLatticeBound, "congruence enumeration");
  const auto principals = distinct_principals(algebra);
  // Every congruence is a join of principal ones, so closing under joins with
  // principals reaches all of them.
  auto less = [](const Partition& a, const Partition& b) { return canonical_less(a, b); };
  std::set<Partition, decltype(less)> found(less);
  std::vector<Partition> frontier{Partition::identity(algebra.size())};
  found.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<Partition> next;
    for (const auto& c : frontier)
      for (const auto& p : principals) {
        auto j = join(c, p);
        if (found.insert(j).second) next.push_back(std::move(j));
      }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

bool are_complementary_factors(const Partition& theta, const Partition& delta) {
  return theta.size() == delta.size() && meet(theta, delta).is_identity() &&
         composes_to_full(theta, delta) && composes_to_full(delta, theta);
}

std::vector<std::pair<Partition, Partition>> complementary_factor_pairs(const FiniteAlgebra& algebra) {
  const auto cons = all_congruences(algebra);
  std::vector<std::pair<Partition, Partition>> out;
  for (std::size_t i = 0; i < cons.size(); ++i)
    for (std::size_t j = i; j < cons.size(); ++j)
      if (are_complementary_factors(cons[i], cons[j])) out.emplace_back(cons[i], cons[j]);
  return out;
}

MonolithResult monolith(const FiniteAlgebra& algebra) {
  if (algebra.size() < 2)
    fail(ErrorCode::Undefined, "subdirect irreducibility is undefined for the one-element algebra");
  require_bound(algebra, kMonolithBound, "monolith computation");
  Partition acc = Partition::full(algebra.size());
  for (const auto& p : distinct_principals(algebra)) acc = meet(acc, p);
  return MonolithResult{!acc.is_identity(), acc};
}

}  // namespace rrbkit
