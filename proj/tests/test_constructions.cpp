#include <doctest.h>

#include "oracles.hpp"
#include "rrbkit/congruence.hpp"
#include "rrbkit/constructions.hpp"
#include "rrbkit/error.hpp"
#include "rrbkit/fixtures.hpp"

using namespace rrbkit;

TEST_CASE("subdirectly irreducible family") {
  for (std::size_t k = 3; k <= 6; ++k) {
    const auto si = build_si_rrb(k);
    const auto& a = si.algebra;
    CHECK(a.size() == 3 * k - 4);
    CHECK(oracle::is_rrb(a));
    CHECK(monolith(a).subdirectly_irreducible);
    // a·b = b∘a on the self-maps
    for (Element x = 0; x < a.size(); ++x)
      for (Element y = 0; y < a.size(); ++y) {
        const auto& f = si.maps[x].table;
        const auto& g = si.maps[y].table;
        std::vector<Element> comp(k);
        for (Element t = 0; t < k; ++t) comp[t] = g[f[t]];
        CHECK(si.maps[oracle::mul(a, x, y)].table == comp);
      }
  }
  CHECK(build_si_rrb(3).algebra.labels() == std::vector<std::string>{"a0", "a1", "a2", "b2", "c2"});
  CHECK_THROWS_AS(build_si_rrb(2), Error);
}

TEST_CASE("RRB from an equivalence has that equivalence as its U") {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& blocks : oracle::set_partitions(n)) {
      std::vector<std::vector<Element>> bs;
      for (Element e = 0; e < n; ++e) {
        if (bs.size() <= blocks[e]) bs.resize(blocks[e] + 1);
        bs[blocks[e]].push_back(e);
      }
      const auto a = rrb_from_equivalence(bs);
      CHECK(oracle::is_rrb(a));
      const auto u = apply_U(a, scheme("mutual-absorption-equivalence"));
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) CHECK(u.related(x, y) == (blocks[x] == blocks[y]));
    }
  CHECK_THROWS_AS(rrb_from_equivalence({{0, 1}, {1}}), Error);
}

TEST_CASE("named lattices") {
  const auto m3 = build_lattice(LatticeKind::M, 3);
  CHECK(m3.size() == 5);
  CHECK(m3.labels() == std::vector<std::string>{"0", "1", "a1", "a2", "a3"});
  CHECK(is_member(m3, "bounded-lattice"));
  CHECK(build_lattice(LatticeKind::Chain, 1).size() == 1);
  CHECK(build_lattice(LatticeKind::Chain, 2).size() == 2);
  const auto ps = build_lattice(LatticeKind::ParallelSum, 2, 3);
  CHECK(ps.size() == 7);
  CHECK(is_member(ps, "bounded-lattice"));
  CHECK_THROWS_AS(build_lattice(LatticeKind::ParallelSum, 0, 2), Error);
  // lattice_from_order inverts the order of a lattice
  for (std::size_t n = 2; n <= 6; ++n)
    for (const auto& l : all_lattices(n)) {
      const auto u = apply_U(l, scheme("lattice-order"));
      CHECK(lattice_from_order(u).tables() == l.tables());
    }
  CHECK_THROWS_AS(lattice_from_order(poset_from_covers(3, {{2, 0}, {2, 1}})), Error);
}

TEST_CASE("complement graphs follow the tables") {
  for (std::size_t n = 2; n <= 7; ++n)
    for (const auto& l : all_lattices(n)) {
      const auto g = complement_graph(l);
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) {
          const bool edge = x != y && oracle::mul(l, x, y, 0) == l.constant(2) && oracle::mul(l, x, y, 1) == l.constant(3);
          CHECK(g.related(x, y) == edge);
        }
    }
}

TEST_CASE("graph search") {
  const auto k3 = graph_from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
  const auto found = search_complement_graph(k3, 6);
  REQUIRE(found.found);
  CHECK(found.found->lattice.size() == 5);
  CHECK(found.lattices_examined > 0);
  const auto exact = search_complement_graph(k3, 6, GraphMatch::Exact);
  REQUIRE(exact.found);
  CHECK(find_isomorphism(exact.found->lattice, build_lattice(LatticeKind::M, 3)).has_value());
  // a single edge: the four-element Boolean lattice
  const auto edge = graph_from_edges(2, {{0, 1}});
  const auto e = search_complement_graph(edge, 4, GraphMatch::Exact);
  REQUIRE(e.found);
  CHECK(e.found->lattice.size() == 4);
  CHECK_THROWS_AS(search_complement_graph(k3, kGraphSearchBound + 1), Error);
}

TEST_CASE("associative posets") {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& p : all_posets(n)) {
      const auto r = find_rrb_structure(p);
      CHECK(r.has_value() == oracle::has_rrb_with_order(p));
      if (r) {
        CHECK(oracle::is_rrb(*r));
        for (Element x = 0; x < n; ++x)
          for (Element y = 0; y < n; ++y) CHECK(oracle::leq(*r, x, y) == p.related(x, y));
      }
    }
  // 0,1 < 3 and 0,1,2 < 4 admits no RRB
  const auto bad = poset_from_covers(5, {{0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 4}});
  CHECK_FALSE(find_rrb_structure(bad).has_value());
}

TEST_CASE("fixture families are complete") {
  const std::size_t posets[] = {1, 2, 5, 16, 63, 318};
  for (std::size_t n = 1; n <= 6; ++n) CHECK(all_posets(n).size() == posets[n - 1]);
  for (std::size_t n = 1; n <= 4; ++n) CHECK(all_posets(n).size() == oracle::count_posets(n));
  const std::size_t rrbs[] = {1, 2, 6, 23};
  for (std::size_t n = 1; n <= 4; ++n) CHECK(all_rrbs(n).size() == rrbs[n - 1]);
  for (std::size_t n = 1; n <= 3; ++n) CHECK(all_rrbs(n).size() == oracle::count_rrbs(n));
  const std::size_t lattices[] = {1, 1, 1, 2, 5, 15, 53, 222, 1078};
  for (std::size_t n = 1; n <= 9; ++n) CHECK(all_lattices(n).size() == lattices[n - 1]);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto all = all_rrbs(n);
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(oracle::is_rrb(all[i]));
      CHECK(canonical_tables(all[i]) == oracle::canonical(all[i]));
      for (std::size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(find_isomorphism(all[i], all[j]).has_value());
    }
  }
  for (const auto& l : all_lattices(6)) CHECK(oracle::is_semilattice(meet_reduct(l)));
  CHECK_THROWS_AS(all_posets(7), Error);
}

TEST_CASE("RRB fixtures of size 4 match exhaustive enumeration" * doctest::timeout(120)) {
  CHECK(all_rrbs(4).size() == oracle::count_rrbs(4));
}
