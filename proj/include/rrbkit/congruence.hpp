#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rrbkit/algebra.hpp"

namespace rrbkit {

/// An equivalence relation on {0..n-1} stored as the map from each element to
/// the least member of its block.
class Partition {
 public:
  /// Throws unless rep[rep[i]] == rep[i] and rep[i] <= i.
  explicit Partition(std::vector<Element> representative);

  static Partition identity(std::size_t n);
  static Partition full(std::size_t n);
  /// Any labelling of blocks (e.g. a kernel) is normalized to least members.
  static Partition from_labels(std::span<const Element> block_of);
  static Partition from_blocks(std::size_t n, const std::vector<std::vector<Element>>& blocks);

  std::size_t size() const noexcept { return rep_.size(); }
  Element representative(Element e) const { return rep_[e]; }
  const std::vector<Element>& representatives() const noexcept { return rep_; }
  bool related(Element a, Element b) const { return rep_[a] == rep_[b]; }
  std::size_t block_count() const;
  /// Blocks in order of least member.
  std::vector<std::vector<Element>> blocks() const;
  std::vector<Element> block_of(Element e) const;
  bool is_identity() const { return block_count() == size(); }
  bool is_full() const { return block_count() == 1; }
  /// this ⊆ other as relations
  bool refines(const Partition& other) const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<Element> rep_;
};

/// Canonical order: more blocks first, then representative arrays
/// lexicographically.
bool canonical_less(const Partition& a, const Partition& b);

Partition meet(const Partition& a, const Partition& b);
Partition join(const Partition& a, const Partition& b);
/// True iff a ∘ b relates every pair (every a-block meets every b-block).
bool composes_to_full(const Partition& a, const Partition& b);

enum class CombineMode { Meet, Join, Compose };

struct CombineResult {
  std::optional<Partition> partition;  // meet / join
  bool relates_all = false;            // compose: a∘b = A×A
};

CombineResult combine_partitions(const Partition& a, const Partition& b, CombineMode mode);

bool is_congruence(const FiniteAlgebra& algebra, const Partition& p);

/// Least congruence containing the pairs: union-find seeded with the pairs,
/// closed under every unary translation x ↦ q(..., x, ...) until fixpoint.
Partition congruence_generated(const FiniteAlgebra& algebra,
                               std::span<const std::pair<Element, Element>> pairs);
Partition principal_congruence(const FiniteAlgebra& algebra, Element a, Element b);

struct Quotient {
  FiniteAlgebra algebra;    // blocks indexed by increasing least member
  Homomorphism projection;  // surjective
};

Quotient quotient_algebra(const FiniteAlgebra& algebra, const Partition& congruence);
Partition kernel(const Homomorphism& h);

/// Size bound for all_congruences and complementary_factor_pairs.
inline constexpr std::size_t kCongruenceLatticeBound = 12;
/// Size bound for monolith, which needs principal congruences only.
inline constexpr std::size_t kMonolithBound = 64;

/// Every congruence, sorted canonically. Throws BoundExceeded above the bound.
std::vector<Partition> all_congruences(const FiniteAlgebra& algebra);

/// Unordered pairs (θ, δ) with θ∩δ = identity and θ∘δ = δ∘θ = full; θ
/// precedes δ canonically. Includes (identity, full).
std::vector<std::pair<Partition, Partition>> complementary_factor_pairs(const FiniteAlgebra& algebra);
bool are_complementary_factors(const Partition& theta, const Partition& delta);

struct MonolithResult {
  bool subdirectly_irreducible = false;
  /// Intersection of all non-identity principal congruences.
  Partition intersection;
};

/// Throws ErrorCode::Undefined for the one-element algebra.
MonolithResult monolith(const FiniteAlgebra& algebra);

}  // namespace rrbkit
