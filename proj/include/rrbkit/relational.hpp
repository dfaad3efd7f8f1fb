#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rrbkit/algebra.hpp"
#include "rrbkit/term.hpp"

namespace rrbkit {

/// An n-ary relation defined over a variety by a finite conjunction of
/// identities t_i(x1..xn) = s_i(x1..xn).
struct IdentityScheme {
  Signature base_signature;
  std::size_t arity;
  std::vector<Identity> pairs;
  std::optional<std::string> name;  // set for registry schemes

  /// Throws unless the pair list is nonempty and every pair is well-formed
  /// over the base signature using only x1..x_arity.
  void validate() const;

  bool operator==(const IdentityScheme&) const = default;
};

/// Registry: "posemigroup-order", "mutual-absorption-equivalence",
/// "complementation", and "lattice-order" (meet(x1,x2) = x1).
IdentityScheme scheme(std::string_view name);
std::vector<std::string> registry_schemes();

using Tuple = std::vector<Element>;

class RelationalStructure {
 public:
  /// Tuples are sorted and deduplicated; each must lie in range and have the
  /// scheme's arity.
  RelationalStructure(std::size_t size, IdentityScheme scheme, std::vector<Tuple> tuples,
                      std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return size_; }
  const IdentityScheme& scheme() const noexcept { return scheme_; }
  std::size_t arity() const noexcept { return scheme_.arity; }
  const std::vector<Tuple>& tuples() const noexcept { return tuples_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Element e) const { return labels_[e]; }

  bool contains(const Tuple& t) const;
  /// Binary relations only: related(a, b) iff (a, b) is a tuple.
  bool related(Element a, Element b) const;

  bool operator==(const RelationalStructure&) const = default;

 private:
  std::size_t size_;
  IdentityScheme scheme_;
  std::vector<Tuple> tuples_;
  std::vector<std::string> labels_;
  std::vector<char> matrix_;  // dense relation matrix for binary schemes
};

RelationalStructure apply_U(const FiniteAlgebra& algebra, const IdentityScheme& scheme);

enum class StructureKind { Poset, Equivalence, Graph, IrreflexiveGraph };

struct ValidationReport {
  bool ok = true;
  std::string axiom;  // first violated axiom
  Tuple witness;
};

ValidationReport validate_structure(const RelationalStructure& s, StructureKind kind);

using Edge = std::pair<Element, Element>;

/// Pairs (a, b) with a < b and nothing strictly between.
std::vector<Edge> hasse_cover_edges(const RelationalStructure& poset);

/// All maps sending every source tuple to a target tuple, lexicographic.
std::vector<Homomorphism> enumerate_relational_homomorphisms(const RelationalStructure& source,
                                                             const RelationalStructure& target);
bool preserves_tuples(const RelationalStructure& source, const RelationalStructure& target,
                      std::span<const Element> map);
Homomorphism make_relational_homomorphism(const RelationalStructure& source,
                                          const RelationalStructure& target,
                                          std::vector<Element> map);

/// A bijection preserving and reflecting tuples, if one exists.
std::optional<Homomorphism> find_relational_isomorphism(const RelationalStructure& a,
                                                        const RelationalStructure& b);

/// Components sorted by least member; each component sorted.
std::vector<std::vector<Element>> connected_components(const RelationalStructure& graph);

/// Reflexive-transitive closure of cover pairs; throws Validation if the
/// covers contain a cycle.
RelationalStructure poset_from_covers(std::size_t size, const std::vector<Edge>& covers,
                                      std::vector<std::string> labels = {});
RelationalStructure graph_from_edges(std::size_t size, const std::vector<Edge>& edges,
                                     std::vector<std::string> labels = {});
RelationalStructure equivalence_from_blocks(const std::vector<std::vector<Element>>& blocks,
                                            std::vector<std::string> labels = {});

/// Substructure induced on a subset (re-indexed in the given order).
RelationalStructure induced_substructure(const RelationalStructure& s,
                                         const std::vector<Element>& subset);

}  // namespace rrbkit
