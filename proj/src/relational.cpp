#include "rrbkit/relational.hpp"

#include <algorithm>
#include <numeric>

#include "rrbkit/error.hpp"

namespace rrbkit {

void IdentityScheme::validate() const {
  if (arity == 0) fail(ErrorCode::InvalidArgument, "scheme arity must be positive");
  if (pairs.empty()) fail(ErrorCode::InvalidArgument, "scheme needs at least one identity");
  for (const auto& p : pairs) {
    check_term(base_signature, p.lhs);
    check_term(base_signature, p.rhs);
    if (std::max(p.lhs.max_var(), p.rhs.max_var()) > arity)
      fail(ErrorCode::InvalidArgument, "identity " + p.to_string() + " uses variables beyond x" +
                                           std::to_string(arity));
  }
}

IdentityScheme scheme(std::string_view name) {
  auto make = [&](Signature sig, std::vector<Identity> pairs) {
    IdentityScheme s{std::move(sig), 2, std::move(pairs), std::string(name)};
    s.validate();
    return s;
  };
  if (name == "posemigroup-order")
    return make(band_signature(), {{parse_term("mul(x1,x2)"), parse_term("x1")}});
  if (name == "mutual-absorption-equivalence")
    return make(band_signature(), {{parse_term("mul(x1,x2)"), parse_term("x2")},
                                   {parse_term("mul(x2,x1)"), parse_term("x1")}});
  if (name == "complementation")
    return make(lattice_signature(), {{parse_term("meet(x1,x2)"), parse_term("bot")},
                                      {parse_term("join(x1,x2)"), parse_term("top")}});
  if (name == "lattice-order")
    return make(lattice_signature(), {{parse_term("meet(x1,x2)"), parse_term("x1")}});
  fail(ErrorCode::InvalidArgument, "unknown scheme '" + std::string(name) + "'");
}

std::vector<std::string> registry_schemes() {
  return {"posemigroup-order", "mutual-absorption-equivalence", "complementation", "lattice-order"};
}

RelationalStructure::RelationalStructure(std::size_t size, IdentityScheme scheme,
                                         std::vector<Tuple> tuples,
                                         std::vector<std::string> labels)
    : size_(size), scheme_(std::move(scheme)), tuples_(std::move(tuples)), labels_(std::move(labels)) {
  if (size_ == 0) fail(ErrorCode::InvalidArgument, "structure must have at least one element");
  scheme_.validate();
  for (const auto& t : tuples_) {
    if (t.size() != scheme_.arity)
      fail(ErrorCode::InvalidArgument, "tuple arity differs from scheme arity " +
                                           std::to_string(scheme_.arity));
    for (Element e : t)
      if (e >= size_) fail(ErrorCode::OutOfRange, "tuple element " + std::to_string(e) + " out of range");
  }
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
  if (labels_.empty()) labels_ = default_labels(size_);
  if (labels_.size() != size_) fail(ErrorCode::InvalidArgument, "label count differs from size");
  if (scheme_.arity == 2) {
    matrix_.assign(size_ * size_, 0);
    for (const auto& t : tuples_) matrix_[t[0] * size_ + t[1]] = 1;
  }
}

bool RelationalStructure::contains(const Tuple& t) const {
  if (scheme_.arity == 2 && t.size() == 2) return related(t[0], t[1]);
  return std::binary_search(tuples_.begin(), tuples_.end(), t);
}

bool RelationalStructure::related(Element a, Element b) const {
  if (scheme_.arity != 2) fail(ErrorCode::InvalidArgument, "related() needs a binary relation");
  return matrix_[a * size_ + b] != 0;
}

RelationalStructure apply_U(const FiniteAlgebra& algebra, const IdentityScheme& s) {
  if (algebra.signature() != s.base_signature)
    fail(ErrorCode::SignatureMismatch, "scheme is defined over " + s.base_signature.to_string() +
                                           ", algebra has " + algebra.signature().to_string());
  s.validate();
  std::vector<Tuple> tuples;
  for_each_tuple(algebra.size(), s.arity, [&](std::span<const Element> args) {
    for (const auto& p : s.pairs)
      if (eval_term(algebra, p.lhs, args) != eval_term(algebra, p.rhs, args)) return;
    tuples.emplace_back(args.begin(), args.end());
  });
  return RelationalStructure(algebra.size(), s, std::move(tuples), algebra.labels());
}

ValidationReport validate_structure(const RelationalStructure& s, StructureKind kind) {
  if (s.arity() != 2) return {false, "binary relation", {}};
  const auto n = static_cast<Element>(s.size());
  const bool reflexive = kind == StructureKind::Poset || kind == StructureKind::Equivalence;
  if (reflexive) {
    for (Element a = 0; a < n; ++a)
      if (!s.related(a, a)) return {false, "reflexivity", {a, a}};
  }
  if (kind == StructureKind::IrreflexiveGraph) {
    for (Element a = 0; a < n; ++a)
      if (s.related(a, a)) return {false, "irreflexivity", {a, a}};
  }
  if (kind == StructureKind::Poset) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        if (a != b && s.related(a, b) && s.related(b, a)) return {false, "antisymmetry", {a, b}};
  } else {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        if (s.related(a, b) && !s.related(b, a)) return {false, "symmetry", {a, b}};
  }
  if (kind == StructureKind::Poset || kind == StructureKind::Equivalence) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        if (!s.related(a, b)) continue;
        for (Element c = 0; c < n; ++c)
          if (s.related(b, c) && !s.related(a, c)) return {false, "transitivity", {a, b, c}};
      }
  }
  return {};
}

namespace {

void require(const RelationalStructure& s, StructureKind kind, const char* what) {
  const auto report = validate_structure(s, kind);
  if (!report.ok) fail(ErrorCode::Validation, std::string(what) + ": " + report.axiom + " fails");
}

}  // namespace

std::vector<Edge> hasse_cover_edges(const RelationalStructure& poset) {
  require(poset, StructureKind::Poset, "not a poset");
  const auto n = static_cast<Element>(poset.size());
  std::vector<Edge> covers;
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      if (a == b || !poset.related(a, b)) continue;
      bool between = false;
      for (Element c = 0; c < n && !between; ++c)
        between = c != a && c != b && poset.related(a, c) && poset.related(c, b);
      if (!between) covers.emplace_back(a, b);
    }
  return covers;
}

bool preserves_tuples(const RelationalStructure& source, const RelationalStructure& target,
                      std::span<const Element> map) {
  if (map.size() != source.size() || source.arity() != target.arity()) return false;
  Tuple image(source.arity());
  for (const auto& t : source.tuples()) {
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (map[t[k]] >= target.size()) return false;
      image[k] = map[t[k]];
    }
    if (!target.contains(image)) return false;
  }
  return true;
}

Homomorphism make_relational_homomorphism(const RelationalStructure& source,
                                          const RelationalStructure& target,
                                          std::vector<Element> map) {
  if (source.arity() != target.arity())
    fail(ErrorCode::SignatureMismatch, "relational structures of different arity");
  if (!preserves_tuples(source, target, map))
    fail(ErrorCode::Validation, "map does not send tuples to tuples");
  return Homomorphism{source.size(), target.size(), std::move(map)};
}

namespace {

class RelSearch {
 public:
  RelSearch(const RelationalStructure& source, const RelationalStructure& target, bool bijective,
            std::size_t limit)
      : src_(source), tgt_(target), bijective_(bijective), limit_(limit) {
    by_last_.resize(src_.size());
    for (const auto& t : src_.tuples()) by_last_[*std::max_element(t.begin(), t.end())].push_back(&t);
  }

  std::vector<Homomorphism> run() {
    std::vector<Homomorphism> out;
    if (bijective_ && (src_.size() != tgt_.size() || src_.tuples().size() != tgt_.tuples().size()))
      return out;
    map_.assign(src_.size(), 0);
    used_.assign(tgt_.size(), 0);
    descend(0, out);
    return out;
  }

 private:
  void descend(std::size_t i, std::vector<Homomorphism>& out) {
    if (out.size() >= limit_) return;
    if (i == src_.size()) {
      out.push_back(Homomorphism{src_.size(), tgt_.size(), map_});
      return;
    }
    Tuple image;
    for (Element v = 0; v < tgt_.size(); ++v) {
      if (bijective_ && used_[v]) continue;
      map_[i] = v;
      bool ok = true;
      for (const Tuple* t : by_last_[i]) {
        image.resize(t->size());
        for (std::size_t k = 0; k < t->size(); ++k) image[k] = map_[(*t)[k]];
        if (!tgt_.contains(image)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used_[v] = 1;
      descend(i + 1, out);
      used_[v] = 0;
      if (out.size() >= limit_) return;
    }
  }

  const RelationalStructure& src_;
  const RelationalStructure& tgt_;
  bool bijective_;
  std::size_t limit_;
  std::vector<std::vector<const Tuple*>> by_last_;
  std::vector<Element> map_;
  std::vector<char> used_;
};

}  // namespace

std::vector<Homomorphism> enumerate_relational_homomorphisms(const RelationalStructure& source,
                                                             const RelationalStructure& target) {
  if (source.arity() != target.arity())
    fail(ErrorCode::SignatureMismatch, "scheme mismatch: relation arities " +
                                           std::to_string(source.arity()) + " and " +
                                           std::to_string(target.arity()));
  return RelSearch(source, target, false, static_cast<std::size_t>(-1)).run();
}

std::optional<Homomorphism> find_relational_isomorphism(const RelationalStructure& a,
                                                        const RelationalStructure& b) {
  if (a.arity() != b.arity()) return std::nullopt;
  // With equal tuple counts an injective tuple-preserving bijection also
  // reflects tuples.
  auto found = RelSearch(a, b, true, 1).run();
  if (found.empty()) return std::nullopt;
  return found[0];
}

std::vector<std::vector<Element>> connected_components(const RelationalStructure& graph) {
  require(graph, StructureKind::Graph, "not a graph");
  const std::size_t n = graph.size();
  std::vector<Element> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Element x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& t : graph.tuples()) {
    const Element a = find(t[0]), b = find(t[1]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<Element>> comps;
  std::vector<int> slot(n, -1);
  for (Element v = 0; v < n; ++v) {
    const Element r = find(v);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[slot[r]].push_back(v);
  }
  return comps;
}

RelationalStructure poset_from_covers(std::size_t size, const std::vector<Edge>& covers,
                                      std::vector<std::string> labels) {
  std::vector<char> leq(size * size, 0);
  for (std::size_t i = 0; i < size; ++i) leq[i * size + i] = 1;
  for (const auto& [lo, hi] : covers) {
    if (lo >= size || hi >= size) fail(ErrorCode::OutOfRange, "cover element out of range");
    leq[lo * size + hi] = 1;
  }
  for (std::size_t k = 0; k < size; ++k)
    for (std::size_t i = 0; i < size; ++i)
      if (leq[i * size + k])
        for (std::size_t j = 0; j < size; ++j)
          if (leq[k * size + j]) leq[i * size + j] = 1;
  std::vector<Tuple> tuples;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) {
      if (!leq[i * size + j]) continue;
      if (i != j && leq[j * size + i])
        fail(ErrorCode::Validation, "covers contain a cycle through elements " + std::to_string(i) +
                                        " and " + std::to_string(j));
      tuples.push_back({static_cast<Element>(i), static_cast<Element>(j)});
    }
  return RelationalStructure(size, scheme("posemigroup-order"), std::move(tuples), std::move(labels));
}

RelationalStructure graph_from_edges(std::size_t size, const std::vector<Edge>& edges,
                                     std::vector<std::string> labels) {
  std::vector<Tuple> tuples;
  for (const auto& [a, b] : edges) {
    tuples.push_back({a, b});
    tuples.push_back({b, a});
  }
  return RelationalStructure(size, scheme("complementation"), std::move(tuples), std::move(labels));
}

RelationalStructure equivalence_from_blocks(const std::vector<std::vector<Element>>& blocks,
                                            std::vector<std::string> labels) {
  std::size_t size = 0;
  for (const auto& b : blocks) size += b.size();
  std::vector<char> covered(size, 0);
  std::vector<Tuple> tuples;
  for (const auto& b : blocks) {
    if (b.empty()) fail(ErrorCode::InvalidArgument, "empty block");
    for (Element x : b) {
      if (x >= size || covered[x]) fail(ErrorCode::InvalidArgument, "blocks must partition 0..n-1");
      covered[x] = 1;
      for (Element y : b) tuples.push_back({x, y});
    }
  }
  return RelationalStructure(size, scheme("mutual-absorption-equivalence"), std::move(tuples),
                             std::move(labels));
}

RelationalStructure induced_substructure(const RelationalStructure& s,
                                         const std::vector<Element>& subset) {
  std::vector<int> local(s.size(), -1);
  for (std::size_t k = 0; k < subset.size(); ++k) local[subset[k]] = static_cast<int>(k);
  std::vector<Tuple> tuples;
  for (const auto& t : s.tuples()) {
    Tuple image;
    bool inside = true;
    for (Element e : t) {
      if (local[e] < 0) {
        inside = false;
        break;
      }
      image.push_back(static_cast<Element>(local[e]));
    }
    if (inside) tuples.push_back(std::move(image));
  }
  std::vector<std::string> labels;
  for (Element e : subset) labels.push_back(s.label(e));
  return RelationalStructure(subset.size(), s.scheme(), std::move(tuples), std::move(labels));
}

}  // namespace rrbkit
