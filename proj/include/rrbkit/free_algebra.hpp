#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rrbkit/algebra.hpp"
#include "rrbkit/term.hpp"

namespace rrbkit {

/// A finite free algebra F_K(X) with generator x_i at generators[i-1].
/// terms[e] is a representative term of element e over variables x1..xn;
/// labels of the algebra are the normal forms.
struct FreeAlgebraResult {
  std::string variety;
  FiniteAlgebra algebra;
  std::vector<Element> generators;
  std::vector<std::string> generator_names;
  std::vector<Term> terms;

  const std::string& normal_form(Element e) const { return algebra.label(e); }
};

/// Largest supported generator count per backend: rrb 5, semilattice 10,
/// bounded-dl 4.
std::size_t free_algebra_bound(std::string_view variety);

/// rrb: injective words, product keeps last occurrences.
/// semilattice: nonempty subsets of X, product is union.
/// bounded-dl: monotone Boolean functions on {0,1}^n (constants included),
///   operations pointwise.
/// Element order: generators first in input order. Generator names default
/// to x, y, z, u, v, w, p, q, r, s. Names given explicitly must pass
/// usable_generator_names, otherwise InvalidArgument.
FreeAlgebraResult free_algebra(std::string_view variety, std::size_t generator_count,
                               std::vector<std::string> generator_names = {});

/// Whether the names keep every normal-form label distinct: nonempty,
/// pairwise distinct, no '.', '&' or '|', and for bounded-dl not 0 or 1.
bool usable_generator_names(std::string_view variety, const std::vector<std::string>& names);

/// Independent construction from syntax. Enumerates all terms of depth <= d,
/// identifies terms related by syntactic instances of the identities (either
/// orientation, both sides inside the enumerated set) and closes the
/// identification under the operations. Elements are the classes; products
/// are computed on representatives of depth < d. Throws BoundExceeded for
/// more than 10^6 terms, and InvalidArgument ("depth insufficient") when
/// some class has no representative of depth < d or the result fails the
/// identities.
FiniteAlgebra free_algebra_oracle(const VarietySpec& variety, std::size_t generator_count,
                                  std::size_t depth);

inline constexpr std::size_t kOracleTermBound = 1'000'000;

/// The unique homomorphism F(X) -> F(Y) sending x to f(x).
Homomorphism extend_to_free_morphism(std::span<const Element> generator_map,
                                     const FreeAlgebraResult& fx, const FreeAlgebraResult& fy);

}  // namespace rrbkit
