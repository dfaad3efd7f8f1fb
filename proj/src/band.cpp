#include "rrbkit/band.hpp"

#include <algorithm>

#include "rrbkit/error.hpp"
#include "rrbkit/term.hpp"

namespace rrbkit {

BandOrder::BandOrder(const FiniteAlgebra& band) : n_(band.size()), leq_(n_ * n_, 0) {
  const auto mul = band.signature().index_of("mul");
  for (Element a = 0; a < n_; ++a)
    for (Element b = 0; b < n_; ++b) leq_[a * n_ + b] = band.at(mul, a, b) == a;
  build();
}

BandOrder::BandOrder(const RelationalStructure& poset) : n_(poset.size()), leq_(n_ * n_, 0) {
  const auto report = validate_structure(poset, StructureKind::Poset);
  if (!report.ok) fail(ErrorCode::Validation, "not a poset: " + report.axiom + " fails");
  for (Element a = 0; a < n_; ++a)
    for (Element b = 0; b < n_; ++b) leq_[a * n_ + b] = poset.related(a, b);
  build();
}

void BandOrder::build() {
  sup_.assign(n_ * n_, kNone);
  for (Element a = 0; a < n_; ++a)
    for (Element b = 0; b < n_; ++b) {
      for (Element z = 0; z < n_; ++z) {
        if (!leq(a, z) || !leq(b, z)) continue;
        bool least = true;
        for (Element w = 0; w < n_ && least; ++w)
          if (leq(a, w) && leq(b, w) && !leq(z, w)) least = false;
        if (least) {
          sup_[a * n_ + b] = z;
          break;
        }
      }
    }
}

std::optional<Element> partial_sup(const RelationalStructure& poset, Element x, Element y) {
  if (x >= poset.size() || y >= poset.size()) fail(ErrorCode::OutOfRange, "element out of range");
  return BandOrder(poset).sup(x, y);
}

namespace {

void require_rrb(const FiniteAlgebra& algebra) {
  if (algebra.signature() != band_signature() || !is_member(algebra, "rrb"))
    fail(ErrorCode::Validation, "algebra is not a right regular band");
}

// Both sides absent, or both present and equal.
bool partial_equal(std::optional<Element> l, std::optional<Element> r) { return l == r; }

std::optional<Element> then_mul(const FiniteAlgebra& a, std::optional<Element> l, Element r) {
  if (!l) return std::nullopt;
  return a.at(0, *l, r);
}

std::optional<Element> mul_then(const FiniteAlgebra& a, Element l, std::optional<Element> r) {
  if (!r) return std::nullopt;
  return a.at(0, l, *r);
}

PairingCheck pairing(const FiniteAlgebra& a, const BandOrder& order, Element c, Element x1, Element x2,
                     Element x) {
  auto m = [&](Element p, Element q) { return a.at(0, p, q); };
  PairingCheck r;
  r.comm = m(x, x1) == m(x1, x) && m(x, x2) == m(x2, x);
  r.dist = partial_equal(x, order.sup(m(x, x1), m(x, x2)));
  r.p1 = partial_equal(x1, order.sup(m(x, x1), m(c, x1)));
  r.p2 = partial_equal(x2, order.sup(m(x, x2), m(c, x2)));
  r.prod = m(x1, x2) == m(x, c);
  r.valid = r.comm && r.dist && r.p1 && r.p2 && r.prod;
  if (!r.comm) r.failed = "comm";
  else if (!r.dist) r.failed = "dist";
  else if (!r.p1) r.failed = "p1";
  else if (!r.p2) r.failed = "p2";
  else if (!r.prod) r.failed = "prod";
  return r;
}

bool closed_under_product(const FiniteAlgebra& a, const std::vector<Element>& s) {
  for (Element x : s)
    for (Element y : s)
      if (!std::binary_search(s.begin(), s.end(), a.at(0, x, y))) return false;
  return true;
}

std::vector<Element> normalized_subset(std::vector<Element> s, std::size_t n) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty()) fail(ErrorCode::InvalidArgument, "factor sets must be nonempty");
  if (s.back() >= n) fail(ErrorCode::OutOfRange, "factor element out of range");
  return s;
}

std::string instance(const FiniteAlgebra& a, std::initializer_list<std::pair<const char*, Element>> vars) {
  std::string out;
  for (const auto& [name, e] : vars) {
    if (!out.empty()) out += ", ";
    out += std::string(name) + "=" + a.label(e);
  }
  return out;
}

}  // namespace

bool is_central(const FiniteAlgebra& algebra, Element c) {
  for (Element x = 0; x < algebra.size(); ++x)
    if (algebra.at(0, x, c) != algebra.at(0, c, x)) return false;
  return true;
}

std::vector<Element> central_elements(const FiniteAlgebra& algebra) {
  require_rrb(algebra);
  std::vector<Element> out;
  for (Element c = 0; c < algebra.size(); ++c)
    if (is_central(algebra, c)) out.push_back(c);
  return out;
}

PairingCheck check_pairing(const FiniteAlgebra& algebra, Element c, Element x1, Element x2, Element x) {
  require_rrb(algebra);
  const auto n = algebra.size();
  if (c >= n || x1 >= n || x2 >= n || x >= n) fail(ErrorCode::OutOfRange, "element out of range");
  if (!is_central(algebra, c)) fail(ErrorCode::InvalidArgument, "element " + algebra.label(c) + " is not central");
  return pairing(algebra, BandOrder(algebra), c, x1, x2, x);
}

const AxiomOutcome& DecompositionCertificate::axiom(std::string_view name) const {
  for (const auto& a : axioms)
    if (a.name == name) return a;
  fail(ErrorCode::InvalidArgument, "no axiom named " + std::string(name));
}

std::pair<Element, Element> DecompositionCertificate::components(Element x) const {
  for (std::size_t k = 0; k < pairing.size(); ++k)
    if (pairing[k] == x)
      return {static_cast<Element>(k / i2.size()), static_cast<Element>(k % i2.size())};
  fail(ErrorCode::InvalidArgument, "element has no components");
}

DecompositionCertificate check_c_direct_product(const FiniteAlgebra& algebra, Element c,
                                                std::vector<Element> i1, std::vector<Element> i2) {
  require_rrb(algebra);
  const auto n = static_cast<Element>(algebra.size());
  if (c >= n) fail(ErrorCode::OutOfRange, "element out of range");
  if (!is_central(algebra, c)) fail(ErrorCode::InvalidArgument, "element " + algebra.label(c) + " is not central");
  i1 = normalized_subset(std::move(i1), n);
  i2 = normalized_subset(std::move(i2), n);
  if (!closed_under_product(algebra, i1) || !closed_under_product(algebra, i2))
    fail(ErrorCode::InvalidArgument, "factor sets must be subsemigroups");
  const BandOrder order(algebra);
  auto m = [&](Element p, Element q) { return algebra.at(0, p, q); };
  auto sup = [&](Element p, Element q) { return order.sup(p, q); };
  const auto& A = algebra;

  DecompositionCertificate cert;
  cert.c = c;
  cert.i1 = i1;
  cert.i2 = i2;
  cert.axioms.reserve(8);  // outcomes are held by reference while filled
  auto outcome = [&](const char* name) -> AxiomOutcome& {
    cert.axioms.push_back({name, true, {}});
    return cert.axioms.back();
  };
  auto refute = [](AxiomOutcome& o, std::string w) {
    if (o.holds) o.witness = std::move(w);
    o.holds = false;
  };

  auto& perm = outcome("Perm");
  for (Element x1 : i1)
    for (Element x2 : i2)
      if (m(x1, x2) != m(x2, x1)) refute(perm, instance(A, {{"x1", x1}, {"x2", x2}}));

  auto& mod1 = outcome("Mod1");
  for (Element x = 0; x < n && mod1.holds; ++x)
    for (Element x1 : i1)
      for (Element x2 : i2) {
        if (!order.leq(m(x, c), m(x1, x2))) continue;
        const auto s = sup(m(x, x1), m(x, x2));
        for (Element y = 0; y < n; ++y) {
          const bool right = partial_equal(then_mul(A, s, y), sup(m(m(x, x1), y), m(m(x, x2), y)));
          const bool left = partial_equal(mul_then(A, y, s), sup(m(m(y, x), x1), m(m(y, x), x2)));
          if (!right || !left) refute(mod1, instance(A, {{"x", x}, {"y", y}, {"x1", x1}, {"x2", x2}}));
        }
      }

  // The left-multiplied equation of Mod2 fails already for the trivial
  // decomposition ({c}, A) of a monoid whose identity is c (it reduces to
  // y = y·x ∨ y). Only the right equation is used to build products of
  // pairings, so it alone decides Mod2; the left one is reported as Mod2-left.
  auto& mod2 = outcome("Mod2");
  AxiomOutcome mod2_left{"Mod2-left", true, {}};
  for (Element x = 0; x < n; ++x)
    for (Element x1 : i1)
      for (Element x2 : i2) {
        if (!order.leq(m(x1, x2), x)) continue;
        for (Element xi : {x1, x2}) {
          const auto s = sup(m(x, xi), m(c, xi));
          for (Element y = 0; y < n; ++y) {
            const auto where = [&] { return instance(A, {{"x", x}, {"y", y}, {"x1", x1}, {"x2", x2}}); };
            if (!partial_equal(then_mul(A, s, y), sup(m(m(x, xi), y), m(m(c, xi), y)))) refute(mod2, where());
            if (mod2_left.holds && !partial_equal(mul_then(A, y, s), sup(m(m(y, x), xi), m(m(y, c), xi))))
              refute(mod2_left, where());
          }
        }
      }

  auto& abs = outcome("Abs");
  auto check_abs = [&](const std::vector<Element>& first, const std::vector<Element>& second) {
    for (Element x : first)
      for (Element y : first)
        for (Element z : second)
          if (!partial_equal(sup(x, m(y, z)), sup(x, m(y, c))))
            refute(abs, instance(A, {{"x", x}, {"y", y}, {"z", z}}));
  };
  check_abs(i1, i2);
  check_abs(i2, i1);

  // All x with x = <<x1, x2>>, per pair.
  std::vector<std::vector<Element>> witnesses(i1.size() * i2.size());
  for (std::size_t k1 = 0; k1 < i1.size(); ++k1)
    for (std::size_t k2 = 0; k2 < i2.size(); ++k2)
      for (Element x = 0; x < n; ++x)
        if (pairing(A, order, c, i1[k1], i2[k2], x).valid) witnesses[k1 * i2.size() + k2].push_back(x);

  auto& exi = outcome("Exi");
  for (std::size_t k = 0; k < witnesses.size(); ++k)
    if (witnesses[k].empty())
      refute(exi, instance(A, {{"x1", i1[k / i2.size()]}, {"x2", i2[k % i2.size()]}}));

  auto& onto = outcome("Onto");
  std::vector<char> reached(n, 0);
  for (const auto& w : witnesses)
    for (Element x : w) reached[x] = 1;
  for (Element x = 0; x < n; ++x)
    if (!reached[x]) refute(onto, instance(A, {{"x", x}}));

  auto& ori = outcome("Ori");
  for (Element x1 : i1)
    for (Element x2 : i2)
      if (!order.leq(m(x1, x2), c)) refute(ori, instance(A, {{"x1", x1}, {"x2", x2}}));

  cert.valid = std::all_of(cert.axioms.begin(), cert.axioms.end(), [](const AxiomOutcome& o) { return o.holds; });
  cert.axioms.push_back(std::move(mod2_left));
  if (!cert.valid) return cert;

  bool unique = true;
  for (const auto& w : witnesses) {
    unique &= w.size() == 1;
    cert.pairing.push_back(w.front());
  }
  std::vector<Element> sorted = cert.pairing;
  std::sort(sorted.begin(), sorted.end());
  cert.bijective = unique && sorted.size() == n && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  if (cert.bijective) {
    auto pos = [](const std::vector<Element>& s, Element e) {
      return static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), e) - s.begin());
    };
    cert.preserves_products = true;
    for (std::size_t a1 = 0; a1 < i1.size(); ++a1)
      for (std::size_t a2 = 0; a2 < i2.size(); ++a2)
        for (std::size_t b1 = 0; b1 < i1.size(); ++b1)
          for (std::size_t b2 = 0; b2 < i2.size(); ++b2) {
            const Element lhs = m(cert.pairing[a1 * i2.size() + a2], cert.pairing[b1 * i2.size() + b2]);
            const Element rhs = cert.pairing[pos(i1, m(i1[a1], i1[b1])) * i2.size() + pos(i2, m(i2[a2], i2[b2]))];
            if (lhs != rhs) cert.preserves_products = false;
          }
  }
  return cert;
}

std::pair<std::vector<Element>, std::vector<Element>> congruences_to_factors(
    const FiniteAlgebra& algebra, Element c, const Partition& theta, const Partition& delta) {
  require_rrb(algebra);
  if (c >= algebra.size()) fail(ErrorCode::OutOfRange, "element out of range");
  if (!is_central(algebra, c)) fail(ErrorCode::InvalidArgument, "element " + algebra.label(c) + " is not central");
  if (theta.size() != algebra.size() || delta.size() != algebra.size() || !is_congruence(algebra, theta) ||
      !is_congruence(algebra, delta) || !are_complementary_factors(theta, delta))
    fail(ErrorCode::InvalidArgument, "not a pair of complementary factor congruences");
  std::pair<std::vector<Element>, std::vector<Element>> out;
  for (Element a = 0; a < algebra.size(); ++a) {
    if (theta.related(a, c)) out.first.push_back(a);
    if (delta.related(a, c)) out.second.push_back(a);
  }
  return out;
}

std::pair<Partition, Partition> factors_to_congruences(const FiniteAlgebra& algebra, Element c,
                                                       const std::vector<Element>& i1,
                                                       const std::vector<Element>& i2) {
  const auto cert = check_c_direct_product(algebra, c, i1, i2);
  if (!cert.valid || !cert.bijective)
    fail(ErrorCode::Validation, "not a c-direct product decomposition");
  std::vector<Element> pi1(algebra.size()), pi2(algebra.size());
  for (Element x = 0; x < algebra.size(); ++x) std::tie(pi1[x], pi2[x]) = cert.components(x);
  auto theta = Partition::from_labels(pi2);
  auto delta = Partition::from_labels(pi1);
  if (!is_congruence(algebra, theta) || !is_congruence(algebra, delta) || !are_complementary_factors(theta, delta))
    fail(ErrorCode::Internal, "projection kernels are not complementary factor congruences");
  return {std::move(theta), std::move(delta)};
}

std::vector<Decomposition> decompose_all(const FiniteAlgebra& algebra, Element c) {
  require_rrb(algebra);
  if (c >= algebra.size()) fail(ErrorCode::OutOfRange, "element out of range");
  if (!is_central(algebra, c)) fail(ErrorCode::InvalidArgument, "element " + algebra.label(c) + " is not central");
  std::vector<Decomposition> out;
  for (auto& [theta, delta] : complementary_factor_pairs(algebra)) {
    auto [i1, i2] = congruences_to_factors(algebra, c, theta, delta);
    auto cert = check_c_direct_product(algebra, c, i1, i2);
    bool round_trip = false;
    if (cert.valid && cert.bijective) {
      auto back = factors_to_congruences(algebra, c, cert.i1, cert.i2);
      round_trip = back.first == theta && back.second == delta;
    }
    out.push_back({std::move(theta), std::move(delta), std::move(cert), round_trip});
  }
  return out;
}

std::vector<DecompositionCertificate> decompose_direct(const FiniteAlgebra& algebra, Element c) {
  require_rrb(algebra);
  const std::size_t n = algebra.size();
  if (n > kDirectSearchBound)
    fail(ErrorCode::BoundExceeded, "direct search is limited to " + std::to_string(kDirectSearchBound) + " elements");
  std::vector<std::vector<Element>> subs;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Element> s;
    for (Element e = 0; e < n; ++e)
      if ((mask >> e) & 1u) s.push_back(e);
    if (closed_under_product(algebra, s)) subs.push_back(std::move(s));
  }
  std::vector<DecompositionCertificate> out;
  for (const auto& s1 : subs)
    for (const auto& s2 : subs) {
      auto cert = check_c_direct_product(algebra, c, s1, s2);
      if (cert.valid) out.push_back(std::move(cert));
    }
  return out;
}

std::optional<Element> identity_element(const FiniteAlgebra& algebra) {
  for (Element e = 0; e < algebra.size(); ++e) {
    bool unit = true;
    for (Element x = 0; x < algebra.size() && unit; ++x)
      unit = algebra.at(0, e, x) == x && algebra.at(0, x, e) == x;
    if (unit) return e;
  }
  return std::nullopt;
}

bool is_filter(const FiniteAlgebra& algebra, const std::vector<Element>& subset) {
  if (subset.empty()) return false;
  std::vector<Element> s = subset;
  std::sort(s.begin(), s.end());
  if (!closed_under_product(algebra, s)) return false;
  const BandOrder order(algebra);
  for (Element x : s)
    for (Element y = 0; y < algebra.size(); ++y)
      if (order.leq(x, y) && !std::binary_search(s.begin(), s.end(), y)) return false;
  return true;
}

IdentityCriterionReport check_identity_criterion(const FiniteAlgebra& algebra, std::vector<Element> i1,
                                                 std::vector<Element> i2) {
  require_rrb(algebra);
  const auto one = identity_element(algebra);
  if (!one) fail(ErrorCode::Undefined, "algebra has no identity element");
  const auto n = static_cast<Element>(algebra.size());
  i1 = normalized_subset(std::move(i1), n);
  i2 = normalized_subset(std::move(i2), n);
  if (!closed_under_product(algebra, i1) || !closed_under_product(algebra, i2))
    fail(ErrorCode::InvalidArgument, "factor sets must be subsemigroups");
  const BandOrder order(algebra);
  auto m = [&](Element p, Element q) { return algebra.at(0, p, q); };

  IdentityCriterionReport r;
  r.one = *one;
  r.perm = true;
  for (Element x1 : i1)
    for (Element x2 : i2) r.perm &= m(x1, x2) == m(x2, x1);
  r.abs = true;
  auto check_abs = [&](const std::vector<Element>& first, const std::vector<Element>& second) {
    for (Element x : first)
      for (Element y : first)
        for (Element z : second) r.abs &= partial_equal(order.sup(x, m(y, z)), order.sup(x, y));
  };
  check_abs(i1, i2);
  check_abs(i2, i1);
  std::vector<char> reached(n, 0);
  for (Element x1 : i1)
    for (Element x2 : i2) reached[m(x1, x2)] = 1;
  r.onto = std::all_of(reached.begin(), reached.end(), [](char b) { return b != 0; });
  r.pass = r.perm && r.abs && r.onto;
  r.filters = r.pass && is_filter(algebra, i1) && is_filter(algebra, i2);
  r.full_certificate = check_c_direct_product(algebra, *one, i1, i2).valid;
  r.agrees = r.pass == r.full_certificate && (!r.pass || r.filters);
  return r;
}

}  // namespace rrbkit
