#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rrbkit/algebra.hpp"
#include "rrbkit/congruence.hpp"
#include "rrbkit/free_algebra.hpp"
#include "rrbkit/relational.hpp"

namespace rrbkit {

/// F applied to a relational structure X: the free algebra on X modulo the
/// congruence theta generated by (t_i, s_i) at every tuple of X.
struct FObjectResult {
  RelationalStructure input;
  FreeAlgebraResult free;
  std::vector<std::pair<Element, Element>> generating_pairs;
  Partition theta;
  FiniteAlgebra algebra;    // the quotient
  Homomorphism projection;  // free.algebra -> algebra
  std::vector<Element> eta; // input element -> element of algebra
};

/// Pairs (t_i(x̄), s_i(x̄)) evaluated in the free algebra at each tuple x̄;
/// trivial pairs are dropped and the rest sorted without repeats.
std::vector<std::pair<Element, Element>> theta_generators(const FreeAlgebraResult& free,
                                                          const RelationalStructure& structure);
Partition build_theta_X(const FreeAlgebraResult& free, const RelationalStructure& structure);

FObjectResult apply_F_object(const RelationalStructure& structure, std::string_view variety);

/// F on a tuple-preserving map X -> Y.
Homomorphism apply_F_morphism(const Homomorphism& f, const FObjectResult& fx, const FObjectResult& fy);

/// g : FX -> A  gives  x ↦ g(η(x)), verified tuple-preserving into U A.
Homomorphism phi_forward(const Homomorphism& g, const FObjectResult& fx, const FiniteAlgebra& a);

/// f : X -> U A  gives the homomorphism FX -> A evaluating representative
/// terms at f. Every member of every block is evaluated and must agree.
Homomorphism phi_inverse(const Homomorphism& f, const FObjectResult& fx, const FiniteAlgebra& a);

struct AdjunctionProbes {
  std::vector<RelationalStructure> structures;  // same scheme as the input
  std::vector<FiniteAlgebra> algebras;          // members of the variety
};

/// Default probes: all posets of size <= 3 for the posemigroup-order scheme
/// and all RRBs of size <= 3 (meet-reducts of chains for semilattices); the
/// inputs themselves are always included.
AdjunctionProbes default_probes(const RelationalStructure& structure, const FiniteAlgebra& a,
                                std::string_view variety);

struct AdjunctionReport {
  bool pass = true;
  std::size_t algebra_homs = 0;     // |Hom(FX, A)|
  std::size_t relational_homs = 0;  // |Hom(X, U A)|
  bool bijection = true;
  bool inverse_round_trip = true;
  bool unit_squares = true;
  bool naturality_algebra = true;
  bool naturality_structure = true;
  std::size_t probes_checked = 0;
  std::vector<std::string> failures;
};

AdjunctionReport verify_adjunction(const RelationalStructure& structure, const FiniteAlgebra& a,
                                   std::string_view variety, const AdjunctionProbes& probes);
AdjunctionReport verify_adjunction(const RelationalStructure& structure, const FiniteAlgebra& a,
                                   std::string_view variety);

}  // namespace rrbkit
