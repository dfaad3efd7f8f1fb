#include <doctest.h>

#include <sstream>

#include "rrbkit/adjunction.hpp"
#include "rrbkit/constructions.hpp"
#include "rrbkit/document.hpp"
#include "rrbkit/error.hpp"
#include "rrbkit/fixtures.hpp"
#include "rrbkit/free_algebra.hpp"

using namespace rrbkit;

namespace {

const char* kAbsorbingPair =
    R"({"kind":"algebra","signature":[{"name":"mul","arity":2}],"size":3,"labels":["0","a","b"],)"
    R"("tables":{"mul":[[0,0,0],[0,1,2],[0,1,2]]}})";

const char* kVPoset = R"({"kind":"poset-shorthand","elements":["x","y","0"],"covers":[["0","x"],["0","y"]]})";

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

ErrorCode code_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("algebra documents") {
  const auto a = parse_algebra(kAbsorbingPair);
  CHECK(a.size() == 3);
  CHECK(a.labels() == std::vector<std::string>{"0", "a", "b"});
  CHECK(is_member(a, "rrb"));
  const auto unlabeled = parse_algebra(
      R"({"kind":"algebra","signature":[{"name":"mul","arity":2}],"size":2,"tables":{"mul":[[0,0],[0,1]]}})");
  CHECK(unlabeled.labels() == std::vector<std::string>{"e0", "e1"});
  const auto lattice = parse_algebra(render(build_lattice(LatticeKind::M, 3), RenderFormat::Json));
  CHECK(lattice == build_lattice(LatticeKind::M, 3));
}

TEST_CASE("relational documents and the poset shorthand") {
  const auto v = parse_relational(kVPoset);
  CHECK(v.size() == 3);
  CHECK(v.tuples().size() == 5);
  CHECK(v.labels() == std::vector<std::string>{"x", "y", "0"});
  CHECK(v.related(2, 0));
  const auto custom = parse_relational(
      R"j({"kind":"relational","size":2,"scheme":{"arity":2,"base-signature":[{"name":"mul","arity":2}],)j"
      R"j("identities":[{"lhs":"mul(x1,x2)","rhs":"x1"}]},"tuples":[[0,0],[1,1],[0,1]]})j");
  CHECK(custom.scheme().pairs == scheme("posemigroup-order").pairs);
  CHECK_FALSE(custom.scheme().name.has_value());
  CHECK(std::holds_alternative<RelationalStructure>(parse_document(kVPoset)));
  CHECK(std::holds_alternative<FiniteAlgebra>(parse_document(kAbsorbingPair)));
}

TEST_CASE("parse errors carry codes and positions") {
  try {
    parse_document(R"({"kind":"algebra",)");
    FAIL("accepted truncated input");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).find("byte 19") != std::string::npos);
  }
  CHECK(code_of(R"({"kind":"algebra","size":2})") == ErrorCode::InvalidArgument);
  CHECK(code_of(R"({"kind":"monoid"})") == ErrorCode::InvalidArgument);
  CHECK(code_of(R"({"kind":"poset-shorthand","elements":["a","b"],"covers":[["a","b"],["b","a"]]})") ==
        ErrorCode::Validation);
  CHECK(code_of(R"({"kind":"poset-shorthand","elements":["a"],"covers":[["a","z"]]})") != ErrorCode::Internal);
  CHECK(code_of(R"({"kind":"relational","size":2,"scheme":"posemigroup-order","tuples":[[0,5]]})") !=
        ErrorCode::Internal);
  CHECK_THROWS_AS(parse_algebra(kVPoset), Error);
}

TEST_CASE("JSON rendering round-trips bit for bit") {
  std::vector<Document> docs;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (auto& a : all_rrbs(n)) docs.push_back(a);
    for (auto& p : all_posets(n)) docs.push_back(p);
  }
  for (std::size_t n = 1; n <= 6; ++n)
    for (auto& l : all_lattices(n)) {
      docs.push_back(l);
      if (n >= 2) docs.push_back(complement_graph(l));
    }
  docs.push_back(build_si_rrb(4).algebra);
  docs.push_back(free_algebra("bounded-dl", 2).algebra);
  docs.push_back(free_algebra("rrb", 3).algebra);
  docs.push_back(equivalence_from_blocks({{0, 2}, {1}}, {"p", "q", "r"}));
  docs.push_back(parse_relational(kVPoset));
  for (const auto& d : docs) {
    const auto text = render(d, RenderFormat::Json);
    const auto back = parse_document(text);
    CHECK(back == d);
    CHECK(render(back, RenderFormat::Json) == text);
  }
}

TEST_CASE("DOT output draws Hasse covers upward") {
  const auto fx = apply_F_object(parse_relational(kVPoset), "rrb");
  const auto dot = render(fx.algebra, RenderFormat::Dot);
  std::size_t nodes = 0, edges = 0;
  for (const auto& line : lines_of(dot)) {
    nodes += line.find("[label=") != std::string::npos;
    edges += line.find(" -> ") != std::string::npos;
  }
  CHECK(nodes == 5);
  CHECK(edges == 4);
  CHECK(dot.rfind("digraph order {", 0) == 0);
  CHECK(dot.find("rankdir=BT;") != std::string::npos);
  // the edge out of the bottom element n2 (eta(0)) goes up
  CHECK(dot.find("n2 -> ") != std::string::npos);
  const auto g = render(complement_graph(build_lattice(LatticeKind::M, 3)), RenderFormat::Dot);
  CHECK(g.rfind("graph ", 0) == 0);
  CHECK(g.find("n0 -- n1") != std::string::npos);
  CHECK(render(fx.algebra, RenderFormat::Dot) == dot);
  const auto ternary = RelationalStructure(1, IdentityScheme{band_signature(), 3,
                                                             {{parse_term("mul(x1,x2)"), parse_term("x3")}},
                                                             std::nullopt},
                                           {{0, 0, 0}});
  CHECK_THROWS_AS(render(ternary, RenderFormat::Dot), Error);
}

TEST_CASE("tables use element labels") {
  const auto x = equivalence_from_blocks({{0, 1}, {2}}, {"a", "b", "0"});
  const auto fx = apply_F_object(x, "rrb");
  const auto rows = lines_of(render(fx.algebra, RenderFormat::Table));
  REQUIRE(rows.size() == 9);
  CHECK(rows[0].rfind("mul", 0) == 0);
  CHECK(rows[1].find("+") != std::string::npos);
  const auto one = lines_of(render(all_rrbs(1)[0], RenderFormat::Table));
  CHECK(one == std::vector<std::string>{"mul | e0", "----+---", "e0  | e0"});
  CHECK(parse_render_format("table") == RenderFormat::Table);
  CHECK_THROWS_AS(parse_render_format("svg"), Error);
}
