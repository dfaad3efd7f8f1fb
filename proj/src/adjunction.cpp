#include "rrbkit/adjunction.hpp"

#include <algorithm>
#include <set>

#include "rrbkit/error.hpp"
#include "rrbkit/fixtures.hpp"

namespace rrbkit {

std::vector<std::pair<Element, Element>> theta_generators(const FreeAlgebraResult& free,
                                                          const RelationalStructure& structure) {
  const auto& s = structure.scheme();
  if (s.base_signature != free.algebra.signature())
    fail(ErrorCode::SignatureMismatch, "scheme is defined over " + s.base_signature.to_string() +
                                           ", free algebra has " + free.algebra.signature().to_string());
  if (free.generators.size() != structure.size())
    fail(ErrorCode::InvalidArgument, "free algebra must have one generator per structure element");
  std::vector<std::pair<Element, Element>> pairs;
  std::vector<Element> args(s.arity);
  for (const auto& t : structure.tuples()) {
    for (std::size_t k = 0; k < s.arity; ++k) args[k] = free.generators[t[k]];
    for (const auto& p : s.pairs) {
      const Element l = eval_term(free.algebra, p.lhs, args);
      const Element r = eval_term(free.algebra, p.rhs, args);
      if (l != r) pairs.emplace_back(l, r);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

Partition build_theta_X(const FreeAlgebraResult& free, const RelationalStructure& structure) {
  const auto pairs = theta_generators(free, structure);
  return congruence_generated(free.algebra, pairs);
}

FObjectResult apply_F_object(const RelationalStructure& structure, std::string_view variety) {
  const auto spec = variety_spec(variety);
  if (structure.scheme().base_signature != spec.signature)
    fail(ErrorCode::SignatureMismatch, "scheme is defined over " +
                                           structure.scheme().base_signature.to_string() + ", variety " +
                                           std::string(variety) + " has " + spec.signature.to_string());
  // element labels double as generator names when they print unambiguously
  auto free = free_algebra(variety, structure.size(),
                           usable_generator_names(variety, structure.labels()) ? structure.labels()
                                                                               : std::vector<std::string>{});
  auto pairs = theta_generators(free, structure);
  auto theta = congruence_generated(free.algebra, pairs);
  auto q = quotient_algebra(free.algebra, theta);
  std::vector<Element> eta;
  for (Element g : free.generators) eta.push_back(q.projection(g));
  // η must land in U(FX).
  const auto ufx = apply_U(q.algebra, structure.scheme());
  if (!preserves_tuples(structure, ufx, eta)) fail(ErrorCode::Internal, "unit does not preserve tuples");
  return FObjectResult{structure, std::move(free), std::move(pairs), std::move(theta),
                       std::move(q.algebra), std::move(q.projection), std::move(eta)};
}

Homomorphism apply_F_morphism(const Homomorphism& f, const FObjectResult& fx, const FObjectResult& fy) {
  if (fx.free.variety != fy.free.variety || !(fx.input.scheme() == fy.input.scheme()))
    fail(ErrorCode::SignatureMismatch, "F images built over different varieties or schemes");
  if (!preserves_tuples(fx.input, fy.input, f.map))
    fail(ErrorCode::Validation, "map does not preserve tuples");
  const auto lifted = extend_to_free_morphism(f.map, fx.free, fy.free);
  for (const auto& [u, v] : fx.generating_pairs)
    if (!fy.theta.related(lifted(u), lifted(v)))
      fail(ErrorCode::Internal, "induced map does not respect the congruence");
  std::vector<Element> map(fx.algebra.size(), 0);
  std::vector<char> seen(fx.algebra.size(), 0);
  for (Element e = 0; e < fx.free.algebra.size(); ++e) {
    const Element block = fx.projection(e);
    const Element image = fy.projection(lifted(e));
    if (seen[block] && map[block] != image) fail(ErrorCode::Internal, "induced map is not well defined");
    seen[block] = 1;
    map[block] = image;
  }
  return make_homomorphism(fx.algebra, fy.algebra, std::move(map));
}

Homomorphism phi_forward(const Homomorphism& g, const FObjectResult& fx, const FiniteAlgebra& a) {
  if (g.source_size != fx.algebra.size() || g.target_size != a.size())
    fail(ErrorCode::InvalidArgument, "homomorphism does not start at FX");
  std::vector<Element> map;
  for (Element x : fx.eta) map.push_back(g(x));
  return make_relational_homomorphism(fx.input, apply_U(a, fx.input.scheme()), std::move(map));
}

Homomorphism phi_inverse(const Homomorphism& f, const FObjectResult& fx, const FiniteAlgebra& a) {
  if (f.source_size != fx.input.size() || f.target_size != a.size())
    fail(ErrorCode::InvalidArgument, "map does not start at the structure");
  if (!preserves_tuples(fx.input, apply_U(a, fx.input.scheme()), f.map))
    fail(ErrorCode::Validation, "map does not preserve tuples into U A");
  std::vector<Element> map(fx.algebra.size(), 0);
  std::vector<char> seen(fx.algebra.size(), 0);
  for (Element e = 0; e < fx.free.algebra.size(); ++e) {
    const Element block = fx.projection(e);
    const Element value = eval_term(a, fx.free.terms[e], f.map);
    if (seen[block] && map[block] != value)
      fail(ErrorCode::Internal, "representatives of one block evaluate differently");
    seen[block] = 1;
    map[block] = value;
  }
  auto g = make_homomorphism(fx.algebra, a, std::move(map));
  if (phi_forward(g, fx, a) != f) fail(ErrorCode::Internal, "extension does not restrict to the map");
  return g;
}

AdjunctionProbes default_probes(const RelationalStructure& structure, const FiniteAlgebra& a,
                                std::string_view variety) {
  AdjunctionProbes probes;
  probes.structures.push_back(structure);
  probes.algebras.push_back(a);
  if (structure.scheme().name == "posemigroup-order")
    for (std::size_t n = 1; n <= 3; ++n)
      for (auto& p : all_posets(n)) probes.structures.push_back(std::move(p));
  if (variety == "rrb" || variety == "semilattice") {
    for (std::size_t n = 1; n <= 3; ++n)
      for (auto& b : all_rrbs(n))
        if (is_member(b, variety)) probes.algebras.push_back(std::move(b));
  } else if (variety == "bounded-dl") {
    for (std::size_t n = 1; n <= 3; ++n)
      for (auto& l : all_lattices(n)) probes.algebras.push_back(std::move(l));
  }
  return probes;
}

AdjunctionReport verify_adjunction(const RelationalStructure& structure, const FiniteAlgebra& a,
                                   std::string_view variety, const AdjunctionProbes& probes) {
  const auto spec = variety_spec(variety);
  if (a.signature() != spec.signature || !check_variety_membership(a, spec).pass)
    fail(ErrorCode::Validation, "algebra is not a member of " + std::string(variety));
  AdjunctionReport report;
  auto note = [&](bool& flag, std::string what) {
    if (flag) report.failures.push_back(std::move(what));
    flag = false;
    report.pass = false;
  };
  const auto fx = apply_F_object(structure, variety);
  const auto ua = apply_U(a, structure.scheme());
  const auto alg_homs = enumerate_homomorphisms(fx.algebra, a);
  const auto rel_homs = enumerate_relational_homomorphisms(structure, ua);
  report.algebra_homs = alg_homs.size();
  report.relational_homs = rel_homs.size();

  std::set<std::vector<Element>> images;
  for (const auto& g : alg_homs) images.insert(phi_forward(g, fx, a).map);
  std::set<std::vector<Element>> targets;
  for (const auto& f : rel_homs) targets.insert(f.map);
  if (images.size() != alg_homs.size()) note(report.bijection, "phi is not injective");
  if (images != targets) note(report.bijection, "phi is not onto Hom(X, U A)");

  for (const auto& f : rel_homs)
    if (phi_forward(phi_inverse(f, fx, a), fx, a) != f) note(report.inverse_round_trip, "phi(phi^-1(f)) != f");
  for (const auto& g : alg_homs)
    if (phi_inverse(phi_forward(g, fx, a), fx, a) != g) note(report.inverse_round_trip, "phi^-1(phi(g)) != g");

  for (const auto& y : probes.structures) {
    if (!(y.scheme() == structure.scheme())) continue;
    const auto fy = apply_F_object(y, variety);
    ++report.probes_checked;
    auto unit_square = [&](const Homomorphism& h, const FObjectResult& from, const FObjectResult& to) {
      const auto fh = apply_F_morphism(h, from, to);
      for (Element v = 0; v < from.input.size(); ++v)
        if (fh(from.eta[v]) != to.eta[h(v)]) return false;
      return true;
    };
    for (const auto& h : enumerate_relational_homomorphisms(y, structure)) {
      if (!unit_square(h, fy, fx)) note(report.unit_squares, "unit square fails for a probe map into X");
      // φ_{Y,A}(g∘Fh) = φ_{X,A}(g)∘h
      const auto fh = apply_F_morphism(h, fy, fx);
      for (const auto& g : alg_homs)
        if (phi_forward(compose(g, fh), fy, a) != compose(phi_forward(g, fx, a), h))
          note(report.naturality_structure, "naturality fails in the structure slot");
    }
    for (const auto& h : enumerate_relational_homomorphisms(structure, y))
      if (!unit_square(h, fx, fy)) note(report.unit_squares, "unit square fails for a probe map out of X");
  }
  for (const auto& b : probes.algebras) {
    if (b.signature() != a.signature()) continue;
    ++report.probes_checked;
    // φ_{X,B}(k∘g) = Uk∘φ_{X,A}(g)
    for (const auto& k : enumerate_homomorphisms(a, b))
      for (const auto& g : alg_homs)
        if (phi_forward(compose(k, g), fx, b) != compose(k, phi_forward(g, fx, a)))
          note(report.naturality_algebra, "naturality fails in the algebra slot");
  }
  return report;
}

AdjunctionReport verify_adjunction(const RelationalStructure& structure, const FiniteAlgebra& a,
                                   std::string_view variety) {
  return verify_adjunction(structure, a, variety, default_probes(structure, a, variety));
}

}  // namespace rrbkit
