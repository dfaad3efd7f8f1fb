#include "rrbkit/constructions.hpp"

#include <algorithm>
#include <map>

#include "band_search.hpp"
#include "rrbkit/error.hpp"
#include "rrbkit/fixtures.hpp"
#include "rrbkit/term.hpp"

namespace rrbkit {

namespace detail {

namespace {

struct TableSearch {
  std::size_t n;
  const std::vector<std::vector<Element>>& domains;
  const std::function<bool(const std::vector<Element>&)>& visit;
  std::vector<Element> t;
  Element unset;

  Element at(Element a, Element b) const { return t[a * n + b]; }

  // Every associativity and a·b·a = b·a instance whose cells are all filled.
  bool consistent() const {
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y) {
        const Element xy = at(x, y);
        if (xy == unset) continue;
        const Element yx = at(y, x);
        if (yx != unset) {
          const Element xyx = at(xy, x);
          if (xyx != unset && xyx != yx) return false;
        }
        for (Element z = 0; z < n; ++z) {
          const Element yz = at(y, z);
          if (yz == unset) continue;
          const Element l = at(xy, z), r = at(x, yz);
          if (l != unset && r != unset && l != r) return false;
        }
      }
    return true;
  }

  bool run(std::size_t cell) {
    if (cell == n * n) return visit(t);
    for (Element v : domains[cell]) {
      t[cell] = v;
      if (consistent() && !run(cell + 1)) return false;
    }
    t[cell] = unset;
    return true;
  }
};

}  // namespace

void search_rrb_tables(std::size_t n, const std::vector<std::vector<Element>>& domains,
                       const std::function<bool(const std::vector<Element>&)>& visit) {
  TableSearch s{n, domains, visit, std::vector<Element>(n * n, static_cast<Element>(n)),
                static_cast<Element>(n)};
  s.run(0);
}

}  // namespace detail

SiRrb build_si_rrb(std::size_t x_size) {
  if (x_size < 3) fail(ErrorCode::InvalidArgument, "x-size must be at least 3");
  const auto k = static_cast<Element>(x_size);
  std::vector<SelfMapElement> maps;
  std::vector<std::string> labels;
  for (Element i = 0; i < k; ++i) {
    maps.push_back({std::vector<Element>(k, i), SelfMapTag::Constant, i});
    labels.push_back("a" + std::to_string(i));
  }
  for (Element i = 2; i < k; ++i) {
    std::vector<Element> b(k, 0), c(k, 1);
    b[i] = i;
    c[i] = i;
    maps.push_back({b, SelfMapTag::ToZero, i});
    maps.push_back({c, SelfMapTag::ToOne, i});
    labels.push_back("b" + std::to_string(i));
    labels.push_back("c" + std::to_string(i));
  }
  std::map<std::vector<Element>, Element> index;
  for (std::size_t e = 0; e < maps.size(); ++e) index[maps[e].table] = static_cast<Element>(e);
  const std::size_t m = maps.size();
  std::vector<Element> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      // a·b = b∘a: apply a first.
      std::vector<Element> composed(k);
      for (Element t = 0; t < k; ++t) composed[t] = maps[b].table[maps[a].table[t]];
      auto it = index.find(composed);
      if (it == index.end()) fail(ErrorCode::Internal, "self-map family not closed under composition");
      table[a * m + b] = it->second;
    }
  FiniteAlgebra algebra(band_signature(), m, {std::move(table)}, std::move(labels));
  if (!is_member(algebra, "rrb")) fail(ErrorCode::Internal, "self-map algebra is not an RRB");
  return {std::move(algebra), std::move(maps)};
}

FiniteAlgebra rrb_from_equivalence(const std::vector<std::vector<Element>>& blocks,
                                   std::vector<std::string> labels) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  std::vector<std::size_t> block_of(n, blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].empty()) fail(ErrorCode::InvalidArgument, "empty block");
    for (Element x : blocks[k]) {
      if (x >= n || block_of[x] != blocks.size())
        fail(ErrorCode::InvalidArgument, "blocks must partition 0..n-1");
      block_of[x] = k;
    }
  }
  if (n == 0) fail(ErrorCode::InvalidArgument, "no elements");
  std::vector<Element> table(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      if (block_of[a] == block_of[b]) table[a * n + b] = b;
      else table[a * n + b] = block_of[a] < block_of[b] ? a : b;
    }
  FiniteAlgebra algebra(band_signature(), n, {std::move(table)}, std::move(labels));
  if (!is_member(algebra, "rrb")) fail(ErrorCode::Internal, "ordered sum is not an RRB");
  return algebra;
}

namespace {

FiniteAlgebra lattice_from_leq(std::size_t n, const std::vector<char>& leq, std::vector<std::string> labels) {
  auto le = [&](Element a, Element b) { return leq[a * n + b] != 0; };
  auto extremum = [&](Element a, Element b, bool upper) -> Element {
    std::optional<Element> best;
    for (Element z = 0; z < n; ++z) {
      const bool bound = upper ? (le(a, z) && le(b, z)) : (le(z, a) && le(z, b));
      if (!bound) continue;
      if (!best || (upper ? le(z, *best) : le(*best, z))) best = z;
    }
    if (!best) fail(ErrorCode::Validation, "order is not a lattice");
    for (Element z = 0; z < n; ++z) {
      const bool bound = upper ? (le(a, z) && le(b, z)) : (le(z, a) && le(z, b));
      if (bound && !(upper ? le(*best, z) : le(z, *best)))
        fail(ErrorCode::Validation, "order is not a lattice");
    }
    return *best;
  };
  std::vector<Element> meet_t(n * n), join_t(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      meet_t[a * n + b] = extremum(a, b, false);
      join_t[a * n + b] = extremum(a, b, true);
    }
  Element bot = 0, top = 0;
  for (Element a = 1; a < n; ++a) {
    bot = meet_t[bot * n + a];
    top = join_t[top * n + a];
  }
  return FiniteAlgebra(lattice_signature(), n, {std::move(meet_t), std::move(join_t), {bot}, {top}},
                       std::move(labels));
}

}  // namespace

FiniteAlgebra lattice_from_order(const RelationalStructure& poset) {
  const auto report = validate_structure(poset, StructureKind::Poset);
  if (!report.ok) fail(ErrorCode::Validation, "not a poset: " + report.axiom + " fails");
  const std::size_t n = poset.size();
  std::vector<char> leq(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) leq[a * n + b] = poset.related(a, b);
  return lattice_from_leq(n, leq, poset.labels());
}

FiniteAlgebra build_lattice(LatticeKind kind, std::size_t n, std::size_t m) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "lattice parameter must be at least 1");
  std::vector<std::string> labels{"0", "1"};
  // Chains of middle elements; each chain lies strictly between 0 and 1.
  std::vector<std::vector<Element>> chains;
  auto add_chain = [&](std::size_t len, const std::string& prefix, bool bare_single) {
    std::vector<Element> chain;
    for (std::size_t k = 0; k < len; ++k) {
      chain.push_back(static_cast<Element>(labels.size()));
      labels.push_back(len == 1 && bare_single ? prefix : prefix + std::to_string(k + 1));
    }
    chains.push_back(std::move(chain));
  };
  switch (kind) {
    case LatticeKind::Chain:
      if (n == 1) return FiniteAlgebra(lattice_signature(), 1, {{0}, {0}, {0}, {0}}, {"0"});
      add_chain(n - 2, "x", true);
      break;
    case LatticeKind::M:
      for (std::size_t k = 0; k < n; ++k) add_chain(1, "a" + std::to_string(k + 1), true);
      break;
    case LatticeKind::ParallelSum:
      if (m < 1) fail(ErrorCode::InvalidArgument, "lattice parameter must be at least 1");
      add_chain(n, "l", false);
      add_chain(m, "r", false);
      break;
  }
  const std::size_t size = labels.size();
  std::vector<char> leq(size * size, 0);
  for (Element a = 0; a < size; ++a) {
    leq[a * size + a] = 1;
    leq[0 * size + a] = 1;
    leq[a * size + 1] = 1;
  }
  for (const auto& chain : chains)
    for (std::size_t i = 0; i < chain.size(); ++i)
      for (std::size_t j = i; j < chain.size(); ++j) leq[chain[i] * size + chain[j]] = 1;
  auto lattice = lattice_from_leq(size, leq, std::move(labels));
  if (!is_member(lattice, "bounded-lattice")) fail(ErrorCode::Internal, "built order is not a lattice");
  return lattice;
}

RelationalStructure complement_graph(const FiniteAlgebra& lattice) {
  if (lattice.signature() != lattice_signature() || !is_member(lattice, "bounded-lattice"))
    fail(ErrorCode::Validation, "complement graph needs a bounded lattice");
  const auto u = apply_U(lattice, scheme("complementation"));
  std::vector<Tuple> tuples;
  for (const auto& t : u.tuples())
    if (t[0] != t[1]) tuples.push_back(t);
  return RelationalStructure(u.size(), u.scheme(), std::move(tuples), u.labels());
}

namespace {

std::vector<RelationalStructure> components_of(const RelationalStructure& g,
                                               const std::vector<std::vector<Element>>& comps) {
  std::vector<RelationalStructure> out;
  for (const auto& c : comps) out.push_back(induced_substructure(g, c));
  return out;
}

bool realizes(const RelationalStructure& graph, const RelationalStructure& target, GraphMatch mode) {
  // Set aside the component of the bottom (which is {bot, top}).
  std::vector<Element> rest;
  std::vector<std::vector<Element>> rest_comps;
  for (auto& comp : connected_components(graph)) {
    if (std::find(comp.begin(), comp.end(), Element{0}) != comp.end()) continue;
    rest.insert(rest.end(), comp.begin(), comp.end());
    rest_comps.push_back(std::move(comp));
  }
  if (mode == GraphMatch::Exact) {
    std::sort(rest.begin(), rest.end());
    if (rest.size() != target.size()) return false;
    return find_relational_isomorphism(induced_substructure(graph, rest), target).has_value();
  }
  const auto have = components_of(graph, rest_comps);
  const auto want = components_of(target, connected_components(target));
  // Isomorphism is an equivalence, so matching class by class is exact.
  std::vector<char> used(have.size(), 0);
  for (const auto& w : want) {
    bool matched = false;
    for (std::size_t k = 0; k < have.size() && !matched; ++k) {
      if (used[k] || have[k].size() != w.size() || have[k].tuples().size() != w.tuples().size()) continue;
      if (find_relational_isomorphism(have[k], w)) {
        used[k] = 1;
        matched = true;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace

GraphSearchOutcome search_complement_graph(const RelationalStructure& target, std::size_t max_size,
                                           GraphMatch mode) {
  const auto report = validate_structure(target, StructureKind::Graph);
  if (!report.ok) fail(ErrorCode::Validation, "target is not a graph: " + report.axiom + " fails");
  if (max_size > kGraphSearchBound)
    fail(ErrorCode::BoundExceeded, "lattice search is limited to size " + std::to_string(kGraphSearchBound));
  GraphSearchOutcome outcome;
  for (std::size_t size = 2; size <= max_size; ++size) {
    for (auto& lattice : all_lattices(size)) {
      ++outcome.lattices_examined;
      auto graph = complement_graph(lattice);
      if (realizes(graph, target, mode)) {
        outcome.found = GraphSearchResult{std::move(lattice), std::move(graph)};
        return outcome;
      }
    }
  }
  return outcome;
}

std::optional<FiniteAlgebra> find_rrb_structure(const RelationalStructure& poset) {
  const auto report = validate_structure(poset, StructureKind::Poset);
  if (!report.ok) fail(ErrorCode::Validation, "not a poset: " + report.axiom + " fails");
  const std::size_t n = poset.size();
  if (n > kRrbSearchBound)
    fail(ErrorCode::BoundExceeded, "RRB search is limited to " + std::to_string(kRrbSearchBound) + " elements");
  std::vector<std::vector<Element>> domains(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      auto& d = domains[a * n + b];
      if (poset.related(a, b)) d = {a};       // a <= b forces a·b = a
      else if (poset.related(b, a)) d = {b};  // and b·a = b when b <= a
      else
        for (Element z = 0; z < n; ++z)
          if (poset.related(z, b) && z != a) d.push_back(z);  // a·b <= b, a·b != a
    }
  std::optional<FiniteAlgebra> found;
  detail::search_rrb_tables(n, domains, [&](const std::vector<Element>& table) {
    found = FiniteAlgebra(band_signature(), n, {table}, poset.labels());
    return false;
  });
  if (found) {
    const auto order = apply_U(*found, scheme("posemigroup-order"));
    if (order.tuples() != poset.tuples() || !is_member(*found, "rrb"))
      fail(ErrorCode::Internal, "RRB witness does not reproduce the poset");
  }
  return found;
}

}  // namespace rrbkit
