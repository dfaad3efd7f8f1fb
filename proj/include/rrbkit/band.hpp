#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rrbkit/algebra.hpp"
#include "rrbkit/congruence.hpp"
#include "rrbkit/relational.hpp"

namespace rrbkit {

/// The order x <= y iff x·y = x of a band, with its partial suprema cached.
class BandOrder {
 public:
  explicit BandOrder(const FiniteAlgebra& band);
  explicit BandOrder(const RelationalStructure& poset);

  std::size_t size() const noexcept { return n_; }
  bool leq(Element a, Element b) const { return leq_[a * n_ + b] != 0; }
  /// Least upper bound of {a, b}, if it exists.
  std::optional<Element> sup(Element a, Element b) const {
    const Element s = sup_[a * n_ + b];
    return s == kNone ? std::nullopt : std::optional<Element>(s);
  }

 private:
  void build();
  static constexpr Element kNone = static_cast<Element>(-1);
  std::size_t n_;
  std::vector<char> leq_;
  std::vector<Element> sup_;
};

/// Least upper bound in a poset; absent when there is none. Throws unless
/// the structure is a poset.
std::optional<Element> partial_sup(const RelationalStructure& poset, Element x, Element y);

/// {c : x·c = c·x for all x}. Throws Validation unless the algebra is an RRB.
std::vector<Element> central_elements(const FiniteAlgebra& algebra);
bool is_central(const FiniteAlgebra& algebra, Element c);

struct PairingCheck {
  bool valid = false;
  bool comm = false, dist = false, p1 = false, p2 = false, prod = false;
  std::string failed;  // first failing axiom, empty when valid
};

/// Whether x = <<x1, x2>>_c. Joins follow the partial-equation reading: an
/// equation passes iff both sides exist and agree, or neither exists.
PairingCheck check_pairing(const FiniteAlgebra& algebra, Element c, Element x1, Element x2, Element x);

struct AxiomOutcome {
  std::string name;
  bool holds = true;
  std::string witness;  // first failing instance
};

struct DecompositionCertificate {
  Element c = 0;
  std::vector<Element> i1, i2;  // sorted
  // Perm Mod1 Mod2 Abs Exi Onto Ori decide validity; Mod2-left follows them
  // for information only (see check_c_direct_product).
  std::vector<AxiomOutcome> axioms;
  bool valid = false;
  /// pairing[k1 * |i2| + k2] = <<i1[k1], i2[k2]>>, filled when valid.
  std::vector<Element> pairing;
  bool bijective = false;
  bool preserves_products = false;

  const AxiomOutcome& axiom(std::string_view name) const;
  /// Positions of x in i1 and i2 under the inverse of the pairing.
  std::pair<Element, Element> components(Element x) const;
};

/// Evaluates the c-direct product axioms. Mod2 is judged on its right
/// equation; the left one is reported separately as Mod2-left because it
/// fails for trivial decompositions. Throws unless the algebra is an
/// RRB, c is central and both sets are subsemigroups.
DecompositionCertificate check_c_direct_product(const FiniteAlgebra& algebra, Element c,
                                                std::vector<Element> i1, std::vector<Element> i2);

/// (I_theta, I_delta) with I_theta = {a : a theta c}.
std::pair<std::vector<Element>, std::vector<Element>> congruences_to_factors(
    const FiniteAlgebra& algebra, Element c, const Partition& theta, const Partition& delta);

/// (ker pi2, ker pi1) for the projections of a valid certificate; so the
/// trivial decomposition (A, {c}) maps to (full, identity).
std::pair<Partition, Partition> factors_to_congruences(const FiniteAlgebra& algebra, Element c,
                                                       const std::vector<Element>& i1,
                                                       const std::vector<Element>& i2);

struct Decomposition {
  Partition theta, delta;
  DecompositionCertificate certificate;
  bool round_trip = false;  // factors_to_congruences gives back (theta, delta)
};

/// One entry per unordered pair of complementary factor congruences.
std::vector<Decomposition> decompose_all(const FiniteAlgebra& algebra, Element c);

/// Every ordered pair of subsemigroups (i1, i2) with a valid certificate,
/// found by exhaustive search; |A| <= 6.
inline constexpr std::size_t kDirectSearchBound = 6;
std::vector<DecompositionCertificate> decompose_direct(const FiniteAlgebra& algebra, Element c);

std::optional<Element> identity_element(const FiniteAlgebra& algebra);
bool is_filter(const FiniteAlgebra& algebra, const std::vector<Element>& subset);

struct IdentityCriterionReport {
  Element one = 0;
  bool perm = false, abs = false, onto = false;
  bool pass = false;
  bool filters = false;           // both factors are filters (checked on pass)
  bool full_certificate = false;  // check_c_direct_product at c = 1
  bool agrees = false;
};

/// Perm, Abs' (x1 ∨ y1·z2 = x1 ∨ y1, both ways) and Onto' (I1·I2 = A) for an
/// RRB with identity. Throws Undefined when there is no identity element.
IdentityCriterionReport check_identity_criterion(const FiniteAlgebra& algebra, std::vector<Element> i1,
                                                 std::vector<Element> i2);

}  // namespace rrbkit
