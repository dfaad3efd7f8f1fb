#pragma once

#include <vector>

#include "rrbkit/algebra.hpp"
#include "rrbkit/relational.hpp"

namespace rrbkit {

// Small structures up to isomorphism, used as exhaustive test families and as
// default probes.

/// Posets on n elements under the posemigroup-order scheme, n <= 6.
std::vector<RelationalStructure> all_posets(std::size_t n);

/// Right regular bands of size n, n <= 4.
std::vector<FiniteAlgebra> all_rrbs(std::size_t n);

/// Bounded lattices of size n (n <= 9), bottom at 0 and top at 1 when n >= 2.
std::vector<FiniteAlgebra> all_lattices(std::size_t n);

/// A meet-semilattice with top, as an algebra over {mul}: mul = meet.
FiniteAlgebra meet_reduct(const FiniteAlgebra& lattice);

/// Canonical form of a finite algebra under relabelling (minimal table over
/// all permutations); n <= 8.
std::vector<std::vector<Element>> canonical_tables(const FiniteAlgebra& algebra);

}  // namespace rrbkit
