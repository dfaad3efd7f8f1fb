#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rrbkit/algebra.hpp"
#include "rrbkit/relational.hpp"

namespace rrbkit {

// Self-maps of X = {0..k-1} making up the subdirectly irreducible RRB.
enum class SelfMapTag { Constant, ToZero, ToOne };

struct SelfMapElement {
  std::vector<Element> table;  // X -> X
  SelfMapTag tag;
  Element index;               // i of a_i, b_i or c_i
};

struct SiRrb {
  FiniteAlgebra algebra;  // labels a0..a(k-1), then b2, c2, b3, c3, ...
  std::vector<SelfMapElement> maps;
};

/// Constant maps a_i, and for i >= 2 the maps b_i (fix i, rest to 0) and c_i
/// (fix i, rest to 1), multiplied by a·b = b∘a. Requires k >= 3.
SiRrb build_si_rrb(std::size_t x_size);

/// Ordered sum of right-zero bands: a·b = b inside a block, otherwise the
/// element of the earlier block. Blocks must partition {0..n-1}.
FiniteAlgebra rrb_from_equivalence(const std::vector<std::vector<Element>>& blocks,
                                   std::vector<std::string> labels = {});

enum class LatticeKind { M, Chain, ParallelSum };

/// Bounded lattices over {meet, join, bot, top}; element 0 is the bottom and
/// element 1 the top (except chain(1), a single element).
///   M(n): n atoms a1..an.  Chain(n): n elements in total, middle x or x1..
///   ParallelSum(n, m): chains l1<..<ln and r1<..<rm between fresh bounds.
FiniteAlgebra build_lattice(LatticeKind kind, std::size_t n, std::size_t m = 0);

/// Meet/join/bounds read off a partial order; throws Validation unless the
/// order is a bounded lattice.
FiniteAlgebra lattice_from_order(const RelationalStructure& poset);

/// The complementation relation of a bounded lattice, reflexive tuples dropped.
RelationalStructure complement_graph(const FiniteAlgebra& lattice);

enum class GraphMatch { Exact, Component };

struct GraphSearchResult {
  FiniteAlgebra lattice;
  RelationalStructure graph;
};

/// Searches bounded lattices of size 2..max_size (up to isomorphism, smaller
/// first) for one whose complement graph realizes the target. The component
/// {bot, top} is set aside: Exact requires the remaining graph to be
/// isomorphic to the target, Component requires each target component to be
/// matched by a distinct remaining component.
struct GraphSearchOutcome {
  std::optional<GraphSearchResult> found;
  std::size_t lattices_examined = 0;
};
inline constexpr std::size_t kGraphSearchBound = 9;
GraphSearchOutcome search_complement_graph(const RelationalStructure& target, std::size_t max_size,
                                           GraphMatch mode = GraphMatch::Component);

/// First RRB (in backtracking order) whose underlying order is exactly the
/// given poset, or nothing when the poset is not associative.
inline constexpr std::size_t kRrbSearchBound = 7;
std::optional<FiniteAlgebra> find_rrb_structure(const RelationalStructure& poset);

}  // namespace rrbkit
