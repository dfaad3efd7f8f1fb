#include <doctest.h>

#include "oracles.hpp"
#include "rrbkit/constructions.hpp"
#include "rrbkit/error.hpp"
#include "rrbkit/fixtures.hpp"
#include "rrbkit/relational.hpp"

using namespace rrbkit;

TEST_CASE("registry schemes") {
  const auto order = scheme("posemigroup-order");
  CHECK(order.arity == 2);
  REQUIRE(order.pairs.size() == 1);
  CHECK(order.pairs[0].to_string() == "mul(x1,x2) = x1");
  CHECK(scheme("mutual-absorption-equivalence").pairs.size() == 2);
  CHECK(scheme("complementation").base_signature == lattice_signature());
  CHECK_THROWS_AS(scheme("nope"), Error);
  IdentityScheme bad{band_signature(), 1, {{parse_term("mul(x1,x2)"), parse_term("x1")}}, std::nullopt};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("U of an RRB is its underlying order") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& a : all_rrbs(n)) {
      const auto u = apply_U(a, scheme("posemigroup-order"));
      CHECK(oracle::is_partial_order(u));
      CHECK(validate_structure(u, StructureKind::Poset).ok);
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) CHECK(u.related(x, y) == oracle::leq(a, x, y));
      const auto eq = apply_U(a, scheme("mutual-absorption-equivalence"));
      CHECK(validate_structure(eq, StructureKind::Equivalence).ok);
    }
}

TEST_CASE("U of a bounded lattice under complementation is an irreflexive graph") {
  for (std::size_t n = 2; n <= 6; ++n)
    for (const auto& l : all_lattices(n)) {
      const auto g = apply_U(l, scheme("complementation"));
      CHECK(g.related(0, 1));
      CHECK(validate_structure(g, StructureKind::Graph).ok);
      CHECK(validate_structure(complement_graph(l), StructureKind::IrreflexiveGraph).ok);
    }
  CHECK_THROWS_AS(apply_U(build_lattice(LatticeKind::M, 3), scheme("posemigroup-order")), Error);
}

TEST_CASE("structure validation names the failing axiom") {
  const auto not_transitive = RelationalStructure(3, scheme("posemigroup-order"),
                                                  {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}});
  const auto r = validate_structure(not_transitive, StructureKind::Poset);
  CHECK_FALSE(r.ok);
  CHECK(r.axiom == "transitivity");
  const auto cyc = RelationalStructure(2, scheme("posemigroup-order"), {{0, 0}, {1, 1}, {0, 1}, {1, 0}});
  CHECK(validate_structure(cyc, StructureKind::Poset).axiom == "antisymmetry");
  CHECK(validate_structure(cyc, StructureKind::Equivalence).ok);
}

TEST_CASE("posets from covers") {
  const auto v = poset_from_covers(3, {{2, 0}, {2, 1}}, {"x", "y", "0"});
  CHECK(v.tuples().size() == 5);
  CHECK(hasse_cover_edges(v) == std::vector<Edge>{{2, 0}, {2, 1}});
  const auto chain = poset_from_covers(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(chain.tuples().size() == 10);
  CHECK(hasse_cover_edges(chain).size() == 3);
  try {
    poset_from_covers(2, {{0, 1}, {1, 0}});
    FAIL("cycle accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Validation);
  }
  CHECK_THROWS_AS(poset_from_covers(2, {{0, 2}}), Error);
}

TEST_CASE("relational homomorphisms match exhaustive maps") {
  std::vector<RelationalStructure> posets;
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto& p : all_posets(n)) posets.push_back(p);
  for (const auto& p : posets)
    for (const auto& q : posets) {
      const auto homs = enumerate_relational_homomorphisms(p, q);
      CHECK(homs.size() == oracle::count_relational_homs(p, q));
      for (const auto& h : homs) CHECK(preserves_tuples(p, q, h.map));
      bool iso = false;
      if (p.size() == q.size()) {
        std::vector<Element> perm(p.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
          bool same = true;
          for (Element x = 0; x < p.size(); ++x)
            for (Element y = 0; y < p.size(); ++y)
              if (p.related(x, y) != q.related(perm[x], perm[y])) same = false;
          iso = iso || same;
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
      CHECK(find_relational_isomorphism(p, q).has_value() == iso);
    }
}

TEST_CASE("connected components and induced substructures") {
  const auto g = graph_from_edges(5, {{0, 1}, {3, 4}});
  CHECK(connected_components(g) == std::vector<std::vector<Element>>{{0, 1}, {2}, {3, 4}});
  const auto sub = induced_substructure(g, {3, 4, 2});
  CHECK(sub.size() == 3);
  CHECK(sub.related(0, 1));
  CHECK_FALSE(sub.related(1, 2));
  const auto eq = equivalence_from_blocks({{0, 2}, {1}});
  CHECK(eq.related(2, 0));
  CHECK_FALSE(eq.related(0, 1));
  CHECK_THROWS_AS(equivalence_from_blocks({{0, 2}}), Error);
}
