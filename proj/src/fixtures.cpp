#include "rrbkit/fixtures.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "band_search.hpp"
#include "rrbkit/constructions.hpp"
#include "rrbkit/error.hpp"

namespace rrbkit {

namespace {

using Leq = std::vector<char>;  // n*n strict-or-equal matrix

// Posets on {0..n-1} in which i < j whenever i is below j: each new element
// is placed above a down-set of the previous ones. Every poset arises this way
// at least once.
void natural_posets(std::size_t n, std::size_t k, Leq& leq, const std::function<void(const Leq&)>& emit) {
  if (k == n) {
    emit(leq);
    return;
  }
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    bool down_closed = true;
    for (std::size_t a = 0; a < k && down_closed; ++a) {
      if (!((mask >> a) & 1u)) continue;
      for (std::size_t b = 0; b < k && down_closed; ++b)
        if (leq[b * n + a] && !((mask >> b) & 1u)) down_closed = false;
    }
    if (!down_closed) continue;
    for (std::size_t a = 0; a < k; ++a) leq[a * n + k] = (mask >> a) & 1u;
    leq[k * n + k] = 1;
    natural_posets(n, k + 1, leq, emit);
    for (std::size_t a = 0; a <= k; ++a) leq[a * n + k] = 0;
  }
}

RelationalStructure order_structure(std::size_t n, const Leq& leq, const IdentityScheme& s,
                                    std::vector<std::string> labels = {}) {
  std::vector<Tuple> tuples;
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (leq[a * n + b]) tuples.push_back({a, b});
  return RelationalStructure(n, s, std::move(tuples), std::move(labels));
}

// Isomorphism-invariant fingerprint of a binary relation.
std::vector<std::pair<std::size_t, std::size_t>> degree_profile(std::size_t n, const Leq& leq) {
  std::vector<std::pair<std::size_t, std::size_t>> out(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (leq[a * n + b]) {
        ++out[a].first;
        ++out[b].second;
      }
  std::sort(out.begin(), out.end());
  return out;
}

class IsoClasses {
 public:
  bool insert(const RelationalStructure& s, std::vector<std::pair<std::size_t, std::size_t>> key) {
    auto& bucket = buckets_[std::move(key)];
    for (std::size_t idx : bucket)
      if (find_relational_isomorphism(items_[idx], s)) return false;
    bucket.push_back(items_.size());
    items_.push_back(s);
    return true;
  }
  const std::vector<RelationalStructure>& items() const { return items_; }

 private:
  std::map<std::vector<std::pair<std::size_t, std::size_t>>, std::vector<std::size_t>> buckets_;
  std::vector<RelationalStructure> items_;
};

}  // namespace

std::vector<RelationalStructure> all_posets(std::size_t n) {
  if (n == 0 || n > 6) fail(ErrorCode::BoundExceeded, "poset fixtures cover sizes 1..6");
  const auto s = scheme("posemigroup-order");
  IsoClasses classes;
  Leq leq(n * n, 0);
  natural_posets(n, 0, leq, [&](const Leq& l) { classes.insert(order_structure(n, l, s), degree_profile(n, l)); });
  return classes.items();
}

std::vector<FiniteAlgebra> all_lattices(std::size_t n) {
  if (n == 0 || n > 9) fail(ErrorCode::BoundExceeded, "lattice fixtures cover sizes 1..9");
  if (n == 1) return {build_lattice(LatticeKind::Chain, 1)};
  const std::size_t mid = n - 2;
  const auto s = scheme("lattice-order");
  std::vector<std::string> labels{"0", "1"};
  for (std::size_t k = 0; k < mid; ++k) labels.push_back("m" + std::to_string(k + 1));
  IsoClasses classes;
  std::vector<FiniteAlgebra> out;
  Leq middle(mid * mid, 0);
  auto emit = [&](const Leq& m) {
    Leq leq(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      leq[a * n + a] = 1;
      leq[0 * n + a] = 1;
      leq[a * n + 1] = 1;
    }
    for (std::size_t a = 0; a < mid; ++a)
      for (std::size_t b = 0; b < mid; ++b)
        if (m[a * mid + b]) leq[(a + 2) * n + (b + 2)] = 1;
    // A bounded finite poset is a lattice iff every pair has a least upper bound.
    for (std::size_t a = 2; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        std::size_t minimal_bounds = 0;
        for (std::size_t z = 0; z < n; ++z) {
          if (!leq[a * n + z] || !leq[b * n + z]) continue;
          bool minimal = true;
          for (std::size_t w = 0; w < n && minimal; ++w)
            if (w != z && leq[a * n + w] && leq[b * n + w] && leq[w * n + z]) minimal = false;
          minimal_bounds += minimal;
        }
        if (minimal_bounds != 1) return;
      }
    auto order = order_structure(n, leq, s, labels);
    if (classes.insert(order, degree_profile(n, leq))) out.push_back(lattice_from_order(order));
  };
  if (mid == 0) {
    emit(middle);
  } else {
    natural_posets(mid, 0, middle, emit);
  }
  return out;
}

std::vector<std::vector<Element>> canonical_tables(const FiniteAlgebra& algebra) {
  const std::size_t n = algebra.size();
  if (n > 8) fail(ErrorCode::BoundExceeded, "canonical form is limited to 8 elements");
  std::vector<Element> perm(n);  // perm[old] = new
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<Element>> best;
  do {
    std::vector<std::vector<Element>> tables;
    for (std::size_t op = 0; op < algebra.signature().size(); ++op) {
      const auto arity = algebra.signature()[op].arity;
      std::vector<Element> t(ipow(n, arity));
      std::vector<Element> mapped(arity);
      for_each_tuple(n, arity, [&](std::span<const Element> args) {
        for (std::size_t k = 0; k < arity; ++k) mapped[k] = perm[args[k]];
        t[table_offset(n, mapped)] = perm[algebra.apply(op, args)];
      });
      tables.push_back(std::move(t));
    }
    if (best.empty() || tables < best) best = std::move(tables);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<FiniteAlgebra> all_rrbs(std::size_t n) {
  if (n == 0 || n > 4) fail(ErrorCode::BoundExceeded, "RRB fixtures cover sizes 1..4");
  std::vector<std::vector<Element>> domains(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      if (a == b) domains[a * n + b] = {a};
      else
        for (Element z = 0; z < n; ++z) domains[a * n + b].push_back(z);
    }
  std::map<std::vector<std::vector<Element>>, FiniteAlgebra> classes;
  detail::search_rrb_tables(n, domains, [&](const std::vector<Element>& table) {
    FiniteAlgebra algebra(band_signature(), n, {table});
    auto key = canonical_tables(algebra);
    if (!classes.count(key)) classes.emplace(key, FiniteAlgebra(band_signature(), n, key));
    return true;
  });
  std::vector<FiniteAlgebra> out;
  for (auto& [key, algebra] : classes) out.push_back(algebra);
  return out;
}

FiniteAlgebra meet_reduct(const FiniteAlgebra& lattice) {
  if (lattice.signature() != lattice_signature())
    fail(ErrorCode::SignatureMismatch, "meet reduct needs a lattice");
  return FiniteAlgebra(band_signature(), lattice.size(), {lattice.table(0)}, lattice.labels());
}

}  // namespace rrbkit
