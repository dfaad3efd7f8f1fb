#include <doctest.h>

#include "oracles.hpp"
#include "rrbkit/algebra.hpp"
#include "rrbkit/constructions.hpp"
#include "rrbkit/error.hpp"
#include "rrbkit/fixtures.hpp"
#include "rrbkit/term.hpp"

using namespace rrbkit;

namespace {

FiniteAlgebra band(std::size_t n, std::vector<Element> t) { return FiniteAlgebra(band_signature(), n, {std::move(t)}); }

// 0 absorbing, a and b a right-zero pair.
FiniteAlgebra small_rrb() { return band(3, {0, 0, 0, 0, 1, 2, 0, 1, 2}); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("algebra construction validates tables and labels") {
  const auto a = small_rrb();
  CHECK(a.size() == 3);
  CHECK(a.labels() == std::vector<std::string>{"e0", "e1", "e2"});
  CHECK(a.at(0, 1, 2) == 2);
  const Element args[] = {2, 1};
  CHECK(a.apply("mul", args) == 1);
  CHECK(code_of([] { band(2, {0, 1, 1}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { band(2, {0, 1, 1, 5}); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { FiniteAlgebra(band_signature(), 2, {{0, 0, 1, 1}}, {"a", "a"}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([&] { a.apply("join", args); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("signatures compare by names and arities") {
  CHECK(band_signature() == Signature({{"mul", 2}}));
  CHECK(band_signature() != lattice_signature());
  CHECK(lattice_signature().index_of("top") == 3);
  CHECK_FALSE(lattice_signature().find("mul").has_value());
}

TEST_CASE("homomorphism enumeration matches exhaustive maps") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& a : all_rrbs(n))
      for (std::size_t m = 1; m <= 3; ++m)
        for (const auto& b : all_rrbs(m)) {
          std::size_t brute = 0;
          std::vector<Element> f(n, 0);
          while (true) {
            bool ok = true;
            for (Element x = 0; x < n; ++x)
              for (Element y = 0; y < n; ++y)
                if (f[oracle::mul(a, x, y)] != oracle::mul(b, f[x], f[y])) ok = false;
            brute += ok;
            std::size_t k = 0;
            for (; k < n; ++k) {
              if (++f[k] < m) break;
              f[k] = 0;
            }
            if (k == n) break;
          }
          const auto homs = enumerate_homomorphisms(a, b);
          CHECK(homs.size() == brute);
          CHECK(std::is_sorted(homs.begin(), homs.end()));
        }
}

TEST_CASE("isomorphism search agrees with canonical forms") {
  std::vector<FiniteAlgebra> all;
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto& a : all_rrbs(n)) all.push_back(a);
  for (const auto& a : all)
    for (const auto& b : all) {
      const bool iso = a.size() == b.size() && oracle::canonical(a) == oracle::canonical(b);
      CHECK(find_isomorphism(a, b).has_value() == iso);
    }
}

TEST_CASE("make_homomorphism rejects non-homomorphisms") {
  const auto a = small_rrb();
  CHECK_NOTHROW(make_homomorphism(a, a, {0, 1, 2}));
  CHECK_NOTHROW(make_homomorphism(a, a, {0, 2, 1}));
  CHECK(code_of([&] { make_homomorphism(a, a, {1, 0, 2}); }) == ErrorCode::Validation);
  CHECK(code_of([&] { make_homomorphism(a, a, {0, 1}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("direct products have componentwise tables and projections") {
  const auto a = small_rrb();
  const auto b = build_si_rrb(3).algebra;
  const auto p = direct_product(a, b);
  CHECK(p.algebra.size() == 15);
  CHECK(oracle::is_rrb(p.algebra));
  for (Element x = 0; x < 15; ++x)
    for (Element y = 0; y < 15; ++y) {
      const auto [x1, x2] = p.decode(x);
      const auto [y1, y2] = p.decode(y);
      CHECK(oracle::mul(p.algebra, x, y) == p.encode(oracle::mul(a, x1, y1), oracle::mul(b, x2, y2)));
    }
  CHECK(preserves_operations(p.algebra, a, p.first.map));
  CHECK(preserves_operations(p.algebra, b, p.second.map));
  CHECK(is_surjective(p.first));
}

TEST_CASE("generated subuniverses are closed and minimal") {
  const auto a = build_si_rrb(4).algebra;
  for (Element x = 0; x < a.size(); ++x)
    for (Element y = 0; y < a.size(); ++y) {
      const Element seed[] = {x, y};
      const auto s = generated_subuniverse(a, seed);
      CHECK(is_closed(a, s.elements));
      // closure of the seed by repeated products
      std::vector<char> in(a.size(), 0);
      in[x] = in[y] = 1;
      for (bool grew = true; grew;) {
        grew = false;
        for (Element p = 0; p < a.size(); ++p)
          for (Element q = 0; q < a.size(); ++q)
            if (in[p] && in[q] && !in[oracle::mul(a, p, q)]) in[oracle::mul(a, p, q)] = grew = true;
      }
      std::vector<Element> expected;
      for (Element e = 0; e < a.size(); ++e)
        if (in[e]) expected.push_back(e);
      CHECK(s.elements == expected);
      CHECK(s.algebra.size() == expected.size());
    }
}

TEST_CASE("terms print, parse and evaluate") {
  const auto t = parse_term("mul(x1, mul(x2,x1))");
  CHECK(t.to_string() == "mul(x1,mul(x2,x1))");
  CHECK(parse_term(t.to_string()) == t);
  CHECK(t.max_var() == 2);
  CHECK(t.depth() == 2);
  CHECK(parse_term("top").to_string() == "top");
  const auto a = small_rrb();
  const Element assign[] = {1, 2};
  CHECK(eval_term(a, t, assign) == 1);
  CHECK_THROWS_AS(parse_term("mul(x1,"), Error);
  CHECK_FALSE(parse_term("x0").is_var());
  CHECK_THROWS_AS(check_term(band_signature(), parse_term("mul(x1)")), Error);
  const std::size_t vars[] = {1, 2, 3};
  CHECK(product_term(vars).to_string() == "mul(mul(x1,x2),x3)");
}

TEST_CASE("variety membership reports the first counterexample") {
  CHECK(is_member(small_rrb(), "rrb"));
  CHECK_FALSE(is_member(small_rrb(), "semilattice"));
  // left-zero band: x·y = x satisfies idempotence and associativity, not aba = ba
  const auto left_zero = band(2, {0, 0, 1, 1});
  const auto r = check_variety_membership(left_zero, variety_spec("rrb"));
  CHECK_FALSE(r.pass);
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].identity.to_string() == "mul(mul(x1,x2),x1) = mul(x2,x1)");
  CHECK(r.failures[0].counterexample == std::vector<Element>{0, 1});
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& b : all_rrbs(n)) CHECK(is_member(b, "rrb") == oracle::is_rrb(b));
  CHECK(is_member(build_lattice(LatticeKind::Chain, 4), "bounded-dl"));
  CHECK_FALSE(is_member(build_lattice(LatticeKind::M, 3), "bounded-dl"));
  CHECK(is_member(build_lattice(LatticeKind::M, 3), "bounded-lattice"));
  CHECK_THROWS_AS(variety_spec("groups"), Error);
}
