#pragma once

// Backtracking over multiplication tables of right regular bands. Shared by
// the fixture generator and the associative-poset witness search.

#include <functional>
#include <vector>

#include "rrbkit/algebra.hpp"

namespace rrbkit::detail {

/// domains[a * n + b] lists the allowed values of a·b. Calls visit with each
/// complete table that is associative and satisfies a·b·a = b·a, in
/// lexicographic order of the tables; visit returns false to stop.
void search_rrb_tables(std::size_t n, const std::vector<std::vector<Element>>& domains,
                       const std::function<bool(const std::vector<Element>&)>& visit);

}  // namespace rrbkit::detail
