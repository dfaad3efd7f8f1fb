#include "rrbkit/document.hpp"

#include <algorithm>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "rrbkit/error.hpp"
#include "rrbkit/term.hpp"

namespace rrbkit {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void schema(const std::string& what) { fail(ErrorCode::InvalidArgument, "schema violation: " + what); }

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, "syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

const json& member(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(std::string("missing \"") + key + "\"");
  return *it;
}

std::size_t as_count(const json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) schema(what + " must be a non-negative integer");
  return v.get<std::size_t>();
}

std::vector<std::string> read_labels(const json& doc, std::size_t size) {
  auto it = doc.find("labels");
  if (it == doc.end()) return default_labels(size);
  if (!it->is_array() || it->size() != size) schema("\"labels\" must list one string per element");
  std::vector<std::string> labels;
  for (const auto& l : *it) {
    if (!l.is_string()) schema("labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  return labels;
}

Signature read_signature(const json& v) {
  if (!v.is_array()) schema("signature must be an array of {name, arity}");
  std::vector<Symbol> symbols;
  for (const auto& s : v) {
    if (!s.is_object()) schema("signature entries must be objects");
    const auto& name = member(s, "name");
    if (!name.is_string()) schema("symbol name must be a string");
    symbols.push_back({name.get<std::string>(), as_count(member(s, "arity"), "arity")});
  }
  return Signature(std::move(symbols));
}

// Nested arrays of depth `arity`, flattened row-major.
void read_table(const json& v, std::size_t size, std::size_t arity, std::vector<Element>& out,
                const std::string& op) {
  if (arity == 0) {
    const auto e = as_count(v, "table entry of " + op);
    if (e >= size) fail(ErrorCode::OutOfRange, "table entry of " + op + " out of range");
    out.push_back(static_cast<Element>(e));
    return;
  }
  if (!v.is_array() || v.size() != size) schema("table of " + op + " must have " + std::to_string(size) + " rows at each level");
  for (const auto& row : v) read_table(row, size, arity - 1, out, op);
}

FiniteAlgebra algebra_from_json(const json& doc) {
  const auto signature = read_signature(member(doc, "signature"));
  const auto size = as_count(member(doc, "size"), "size");
  if (size == 0) schema("size must be positive");
  const auto& tables_json = member(doc, "tables");
  if (!tables_json.is_object()) schema("tables must be an object keyed by operation name");
  std::vector<std::vector<Element>> tables;
  for (const auto& sym : signature.symbols()) {
    auto it = tables_json.find(sym.name);
    if (it == tables_json.end()) schema("no table for operation " + sym.name);
    std::vector<Element> flat;
    read_table(*it, size, sym.arity, flat, sym.name);
    tables.push_back(std::move(flat));
  }
  return FiniteAlgebra(signature, size, std::move(tables), read_labels(doc, size));
}

IdentityScheme scheme_from_json(const json& v) {
  if (v.is_string()) return scheme(v.get<std::string>());
  if (!v.is_object()) schema("scheme must be a registry name or an object");
  const auto arity = as_count(member(v, "arity"), "scheme arity");
  const auto& base = member(v, "base-signature");
  Signature sig = base.is_string() ? variety_spec(base.get<std::string>()).signature : read_signature(base);
  std::vector<Identity> pairs;
  const auto& ids = member(v, "identities");
  if (!ids.is_array()) schema("identities must be an array");
  for (const auto& id : ids) {
    const auto& l = member(id, "lhs");
    const auto& r = member(id, "rhs");
    if (!l.is_string() || !r.is_string()) schema("identity sides must be term strings");
    pairs.push_back({parse_term(l.get<std::string>()), parse_term(r.get<std::string>())});
  }
  IdentityScheme s{std::move(sig), arity, std::move(pairs), std::nullopt};
  s.validate();
  return s;
}

RelationalStructure relational_from_json(const json& doc) {
  const auto size = as_count(member(doc, "size"), "size");
  auto s = scheme_from_json(member(doc, "scheme"));
  const auto& tuples_json = member(doc, "tuples");
  if (!tuples_json.is_array()) schema("tuples must be an array");
  std::vector<Tuple> tuples;
  for (const auto& t : tuples_json) {
    if (!t.is_array()) schema("each tuple must be an array");
    Tuple tuple;
    for (const auto& e : t) tuple.push_back(static_cast<Element>(as_count(e, "tuple entry")));
    tuples.push_back(std::move(tuple));
  }
  return RelationalStructure(size, std::move(s), std::move(tuples), read_labels(doc, size));
}

RelationalStructure shorthand_from_json(const json& doc) {
  const auto& elements = member(doc, "elements");
  if (!elements.is_array() || elements.empty()) schema("elements must be a nonempty array of labels");
  std::vector<std::string> labels;
  for (const auto& e : elements) {
    if (!e.is_string()) schema("elements must be strings");
    labels.push_back(e.get<std::string>());
  }
  auto resolve = [&](const json& v) -> Element {
    if (v.is_string()) {
      auto it = std::find(labels.begin(), labels.end(), v.get<std::string>());
      if (it == labels.end()) schema("unknown element " + v.get<std::string>());
      return static_cast<Element>(it - labels.begin());
    }
    const auto e = as_count(v, "cover endpoint");
    if (e >= labels.size()) fail(ErrorCode::OutOfRange, "cover endpoint out of range");
    return static_cast<Element>(e);
  };
  std::vector<Edge> covers;
  const auto it = doc.find("covers");
  if (it != doc.end()) {
    if (!it->is_array()) schema("covers must be an array of [lower, upper] pairs");
    for (const auto& c : *it) {
      if (!c.is_array() || c.size() != 2) schema("covers must be [lower, upper] pairs");
      covers.emplace_back(resolve(c[0]), resolve(c[1]));
    }
  }
  const std::size_t size = labels.size();
  return poset_from_covers(size, covers, std::move(labels));
}

std::string dump(const ojson& v) { return v.dump(); }

ojson signature_json(const Signature& sig) {
  ojson out = ojson::array();
  for (const auto& s : sig.symbols()) out.push_back(ojson{{"name", s.name}, {"arity", s.arity}});
  return out;
}

// Rows of the outermost index on separate lines.
void write_table(std::ostringstream& os, const FiniteAlgebra& a, std::size_t op) {
  const auto arity = a.signature()[op].arity;
  const auto& t = a.table(op);
  const std::size_t n = a.size();
  if (arity == 0) {
    os << t[0];
    return;
  }
  if (arity == 1) {
    os << dump(ojson(t));
    return;
  }
  const std::size_t row = t.size() / n;
  os << "[\n";
  for (std::size_t i = 0; i < n; ++i) {
    // Rebuild the nested shape of the remaining arity - 1 indices.
    std::function<ojson(std::size_t, std::size_t)> nest = [&](std::size_t offset, std::size_t depth) {
      ojson out = ojson::array();
      if (depth == 1) {
        for (std::size_t k = 0; k < n; ++k) out.push_back(t[offset + k]);
        return out;
      }
      const std::size_t stride = ipow(n, depth - 1);
      for (std::size_t k = 0; k < n; ++k) out.push_back(nest(offset + k * stride, depth - 1));
      return out;
    };
    os << "      " << dump(nest(i * row, arity - 1)) << (i + 1 < n ? ",\n" : "\n");
  }
  os << "    ]";
}

std::string algebra_json(const FiniteAlgebra& a, const std::vector<std::pair<std::string, std::string>>& extra) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"kind\": \"algebra\",\n";
  os << "  \"signature\": " << dump(signature_json(a.signature())) << ",\n";
  os << "  \"size\": " << a.size() << ",\n";
  os << "  \"labels\": " << dump(ojson(a.labels())) << ",\n";
  os << "  \"tables\": {\n";
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    os << "    " << dump(ojson(a.signature()[op].name)) << ": ";
    write_table(os, a, op);
    os << (op + 1 < a.signature().size() ? ",\n" : "\n");
  }
  os << "  }";
  for (const auto& [key, value] : extra) os << ",\n  " << dump(ojson(key)) << ": " << value;
  os << "\n}\n";
  return os.str();
}

ojson scheme_json(const IdentityScheme& s) {
  if (s.name) {
    // Registry names only stand for the registry definition.
    try {
      if (scheme(*s.name) == s) return *s.name;
    } catch (const Error&) {
    }
  }
  ojson ids = ojson::array();
  for (const auto& p : s.pairs) ids.push_back(ojson{{"lhs", p.lhs.to_string()}, {"rhs", p.rhs.to_string()}});
  return ojson{{"arity", s.arity}, {"base-signature", signature_json(s.base_signature)}, {"identities", ids}};
}

std::string relational_json(const RelationalStructure& r) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"kind\": \"relational\",\n";
  os << "  \"size\": " << r.size() << ",\n";
  os << "  \"scheme\": " << dump(scheme_json(r.scheme())) << ",\n";
  os << "  \"tuples\": " << dump(ojson(r.tuples())) << ",\n";
  os << "  \"labels\": " << dump(ojson(r.labels())) << "\n";
  os << "}\n";
  return os.str();
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::string order_dot(const RelationalStructure& poset) {
  std::ostringstream os;
  os << "digraph order {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (Element e = 0; e < poset.size(); ++e) os << "  n" << e << " [label=" << quoted(poset.label(e)) << "];\n";
  for (const auto& [lo, hi] : hasse_cover_edges(poset)) os << "  n" << lo << " -> n" << hi << ";\n";
  os << "}\n";
  return os.str();
}

std::string graph_dot(const RelationalStructure& g) {
  std::ostringstream os;
  os << "graph relation {\n  node [shape=plaintext];\n";
  for (Element e = 0; e < g.size(); ++e) os << "  n" << e << " [label=" << quoted(g.label(e)) << "];\n";
  for (const auto& t : g.tuples())
    if (t[0] < t[1]) os << "  n" << t[0] << " -- n" << t[1] << ";\n";
  os << "}\n";
  return os.str();
}

std::string grid(const std::string& corner, const std::vector<std::string>& rows,
                 const std::vector<std::string>& cols, const std::function<std::string(std::size_t, std::size_t)>& cell) {
  std::size_t w = 1;
  for (const auto& c : cols) w = std::max(w, c.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) w = std::max(w, cell(i, j).size());
  std::size_t first = corner.size();
  for (const auto& r : rows) first = std::max(first, r.size());
  auto pad = [](const std::string& s, std::size_t width) { return s + std::string(width - s.size(), ' '); };
  std::ostringstream os;
  std::string header = pad(corner, first) + " |";
  for (const auto& c : cols) header += " " + pad(c, w);
  while (!header.empty() && header.back() == ' ') header.pop_back();
  os << header << "\n" << std::string(first + 1, '-') << "+" << std::string(cols.size() * (w + 1), '-') << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string line = pad(rows[i], first) + " |";
    for (std::size_t j = 0; j < cols.size(); ++j) line += " " + pad(cell(i, j), w);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  }
  return os.str();
}

std::string algebra_table(const FiniteAlgebra& a) {
  std::ostringstream os;
  const auto& labels = a.labels();
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    const auto& sym = a.signature()[op];
    if (op) os << "\n";
    if (sym.arity == 0) {
      os << sym.name << " = " << a.label(a.constant(op)) << "\n";
    } else if (sym.arity == 1) {
      os << grid(sym.name, {sym.name}, labels, [&](std::size_t, std::size_t j) {
        const Element arg = static_cast<Element>(j);
        return a.label(a.apply(op, std::span<const Element>(&arg, 1)));
      });
    } else if (sym.arity == 2) {
      os << grid(sym.name, labels, labels, [&](std::size_t i, std::size_t j) {
        return a.label(a.at(op, static_cast<Element>(i), static_cast<Element>(j)));
      });
    } else {
      for_each_tuple(a.size(), sym.arity, [&](std::span<const Element> args) {
        os << sym.name << "(";
        for (std::size_t k = 0; k < args.size(); ++k) os << (k ? "," : "") << a.label(args[k]);
        os << ") = " << a.label(a.apply(op, args)) << "\n";
      });
    }
  }
  return os.str();
}

std::string relational_table(const RelationalStructure& r) {
  if (r.arity() == 2)
    return grid("R", r.labels(), r.labels(), [&](std::size_t i, std::size_t j) {
      return r.related(static_cast<Element>(i), static_cast<Element>(j)) ? std::string("1") : std::string(".");
    });
  std::ostringstream os;
  for (const auto& t : r.tuples()) {
    os << "(";
    for (std::size_t k = 0; k < t.size(); ++k) os << (k ? ", " : "") << r.label(t[k]);
    os << ")\n";
  }
  return os.str();
}

}  // namespace

Document parse_document(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) schema("document must be an object");
  const auto& kind = member(doc, "kind");
  if (!kind.is_string()) schema("kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "algebra") return algebra_from_json(doc);
  if (k == "relational") return relational_from_json(doc);
  if (k == "poset-shorthand") return shorthand_from_json(doc);
  schema("unknown kind \"" + k + "\"");
}

FiniteAlgebra parse_algebra(std::string_view text) {
  auto d = parse_document(text);
  if (auto* a = std::get_if<FiniteAlgebra>(&d)) return std::move(*a);
  fail(ErrorCode::InvalidArgument, "expected an algebra document");
}

RelationalStructure parse_relational(std::string_view text) {
  auto d = parse_document(text);
  if (auto* r = std::get_if<RelationalStructure>(&d)) return std::move(*r);
  fail(ErrorCode::InvalidArgument, "expected a relational or poset-shorthand document");
}

RenderFormat parse_render_format(std::string_view name) {
  if (name == "json") return RenderFormat::Json;
  if (name == "dot") return RenderFormat::Dot;
  if (name == "table") return RenderFormat::Table;
  fail(ErrorCode::InvalidArgument, "unknown render format '" + std::string(name) + "'");
}

RelationalStructure display_order(const FiniteAlgebra& algebra) {
  if (algebra.signature() == lattice_signature()) return apply_U(algebra, scheme("lattice-order"));
  if (algebra.signature() == band_signature()) {
    auto order = apply_U(algebra, scheme("posemigroup-order"));
    if (validate_structure(order, StructureKind::Poset).ok) return order;
  }
  fail(ErrorCode::InvalidArgument, "dot rendering needs a band, a lattice, a poset or a graph");
}

std::string render(const FiniteAlgebra& algebra, RenderFormat format) {
  switch (format) {
    case RenderFormat::Json: return algebra_json(algebra, {});
    case RenderFormat::Dot: return order_dot(display_order(algebra));
    case RenderFormat::Table: return algebra_table(algebra);
  }
  fail(ErrorCode::Internal, "unhandled format");
}

std::string render(const RelationalStructure& structure, RenderFormat format) {
  switch (format) {
    case RenderFormat::Json: return relational_json(structure);
    case RenderFormat::Dot:
      if (validate_structure(structure, StructureKind::Poset).ok) return order_dot(structure);
      if (validate_structure(structure, StructureKind::Graph).ok) return graph_dot(structure);
      fail(ErrorCode::InvalidArgument, "dot rendering needs a poset or a graph");
    case RenderFormat::Table: return relational_table(structure);
  }
  fail(ErrorCode::Internal, "unhandled format");
}

std::string render(const Document& document, RenderFormat format) {
  return std::visit([&](const auto& d) { return render(d, format); }, document);
}

std::string render_json_with(const FiniteAlgebra& algebra,
                             const std::vector<std::pair<std::string, std::string>>& extra) {
  return algebra_json(algebra, extra);
}

}  // namespace rrbkit
