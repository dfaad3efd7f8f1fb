#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rrbkit/algebra.hpp"
#include "rrbkit/relational.hpp"

namespace rrbkit {

using Document = std::variant<FiniteAlgebra, RelationalStructure>;

/// Reads an "algebra", "relational" or "poset-shorthand" document. Syntax
/// errors carry the byte offset; keys outside the schema are ignored.
Document parse_document(std::string_view text);
FiniteAlgebra parse_algebra(std::string_view text);
RelationalStructure parse_relational(std::string_view text);

enum class RenderFormat { Json, Dot, Table };
RenderFormat parse_render_format(std::string_view name);

/// Json: the document form read by parse_document.
/// Dot: Hasse diagram (edges from lower to upper cover) of a poset, of the
///   order of a band (x <= y iff x·y = x) or of a lattice; undirected graph
///   for symmetric relations.
/// Table: operation grids with element labels.
std::string render(const FiniteAlgebra& algebra, RenderFormat format);
std::string render(const RelationalStructure& structure, RenderFormat format);
std::string render(const Document& document, RenderFormat format);

/// Same as the Json rendering, with extra top-level members appended in the
/// given order (each value is a JSON text).
std::string render_json_with(const FiniteAlgebra& algebra,
                             const std::vector<std::pair<std::string, std::string>>& extra);

/// The order relation drawn by the Dot rendering of an algebra.
RelationalStructure display_order(const FiniteAlgebra& algebra);

}  // namespace rrbkit
