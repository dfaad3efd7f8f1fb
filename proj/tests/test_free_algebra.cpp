#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "rrbkit/constructions.hpp"
#include "rrbkit/error.hpp"
#include "rrbkit/fixtures.hpp"
#include "rrbkit/free_algebra.hpp"

using namespace rrbkit;

namespace {

// Members of the variety to test the universal property against.
std::vector<FiniteAlgebra> targets(const std::string& variety) {
  std::vector<FiniteAlgebra> out;
  if (variety == "bounded-dl") {
    for (std::size_t n = 1; n <= 5; ++n)
      for (auto& l : all_lattices(n))
        if (is_member(l, "bounded-dl")) out.push_back(l);
    return out;
  }
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto& a : all_rrbs(n))
      if (is_member(a, variety)) out.push_back(a);
  return out;
}

}  // namespace

TEST_CASE("free algebras have the expected sizes and labels") {
  CHECK(free_algebra("rrb", 2).algebra.labels() == std::vector<std::string>{"x", "y", "xy", "yx"});
  CHECK(free_algebra("semilattice", 2).algebra.labels() == std::vector<std::string>{"x", "y", "xy"});
  CHECK(free_algebra("bounded-dl", 2).algebra.labels() ==
        std::vector<std::string>{"x", "y", "0", "x&y", "x|y", "1"});
  CHECK(free_algebra("rrb", 2, {"ab", "c"}).algebra.labels() ==
        std::vector<std::string>{"ab", "c", "ab.c", "c.ab"});
  CHECK(free_algebra("rrb", 5).algebra.size() == 325);
  CHECK(free_algebra("semilattice", 10).algebra.size() == 1023);
  CHECK(free_algebra("bounded-dl", 4).algebra.size() == 168);
  for (const char* v : {"rrb", "semilattice", "bounded-dl"}) {
    const auto f = free_algebra(v, 3);
    CHECK(is_member(f.algebra, v));
    // generators come first and every term evaluates to its own element
    for (std::size_t i = 0; i < 3; ++i) CHECK(f.generators[i] == i);
    for (Element e = 0; e < f.algebra.size(); ++e) CHECK(eval_term(f.algebra, f.terms[e], f.generators) == e);
  }
}

TEST_CASE("free algebra bounds and argument checks") {
  CHECK(free_algebra_bound("rrb") == 5);
  CHECK_THROWS_AS(free_algebra("rrb", 6), Error);
  CHECK_THROWS_AS(free_algebra("rrb", 0), Error);
  CHECK(free_algebra("bounded-dl", 0).algebra.size() == 2);
  CHECK_THROWS_AS(free_algebra("groups", 1), Error);
  CHECK_THROWS_AS(free_algebra("rrb", 2, {"x", "x"}), Error);
  CHECK_THROWS_AS(free_algebra("bounded-dl", 2, {"0", "a"}), Error);
  CHECK_THROWS_AS(free_algebra("semilattice", 2, {"a.b", "c"}), Error);
  CHECK(usable_generator_names("rrb", {"0", "1"}));
  CHECK_FALSE(usable_generator_names("bounded-dl", {"0", "1"}));
  CHECK_FALSE(usable_generator_names("rrb", {"a", ""}));
  // names that would print like a meet or join
  CHECK_FALSE(usable_generator_names("bounded-dl", {"a&b", "c"}));
  const auto f = free_algebra("rrb", 3, {"p", "q", "rs"});
  std::set<std::string> labels(f.algebra.labels().begin(), f.algebra.labels().end());
  CHECK(labels.size() == 15);
  CHECK(labels.count("p.rs.q") == 1);
}

TEST_CASE("universal property: every generator map extends uniquely") {
  for (const std::string v : {"rrb", "semilattice", "bounded-dl"})
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto f = free_algebra(v, n);
      for (const auto& a : targets(v)) {
        const auto homs = enumerate_homomorphisms(f.algebra, a);
        CHECK(homs.size() == ipow(a.size(), n));
        std::set<std::vector<Element>> images;
        for (const auto& h : homs) {
          std::vector<Element> g;
          for (Element gen : f.generators) g.push_back(h(gen));
          images.insert(g);
        }
        CHECK(images.size() == homs.size());
      }
    }
}

TEST_CASE("free morphisms extend generator maps") {
  const auto f2 = free_algebra("rrb", 2);
  const auto f3 = free_algebra("rrb", 3);
  for (Element a = 0; a < 3; ++a)
    for (Element b = 0; b < 3; ++b) {
      const Element g[] = {a, b};
      const auto h = extend_to_free_morphism(g, f2, f3);
      CHECK(preserves_operations(f2.algebra, f3.algebra, h.map));
      CHECK(h(f2.generators[0]) == f3.generators[a]);
      CHECK(h(f2.generators[1]) == f3.generators[b]);
    }
}

TEST_CASE("syntactic oracle agrees with the backends") {
  for (const char* v : {"rrb", "semilattice"})
    for (std::size_t n = 1; n <= 2; ++n)
      CHECK(find_isomorphism(free_algebra(v, n).algebra, free_algebra_oracle(variety_spec(v), n, 3)).has_value());
  CHECK(find_isomorphism(free_algebra("semilattice", 3).algebra,
                         free_algebra_oracle(variety_spec("semilattice"), 3, 3))
            .has_value());
  try {
    free_algebra_oracle(variety_spec("rrb"), 2, 1);
    FAIL("shallow depth accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("depth insufficient") != std::string::npos);
  }
  CHECK_THROWS_AS(free_algebra_oracle(variety_spec("rrb"), 4, 6), Error);
}
