#include "rrbkit/free_algebra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "rrbkit/error.hpp"

namespace rrbkit {

namespace {

std::vector<std::string> resolve_names(std::string_view variety, std::size_t n, std::vector<std::string> names) {
  if (!names.empty()) {
    if (names.size() != n) fail(ErrorCode::InvalidArgument, "one generator name per generator expected");
    if (!usable_generator_names(variety, names))
      fail(ErrorCode::InvalidArgument, "generator names must be distinct and free of '.', '&', '|'");
    return names;
  }
  static const char* kLetters[] = {"x", "y", "z", "u", "v", "w", "p", "q", "r", "s"};
  for (std::size_t i = 0; i < n; ++i)
    names.push_back(i < std::size(kLetters) ? kLetters[i] : "g" + std::to_string(i + 1));
  return names;
}

std::string join_word(const std::vector<std::string>& names, const std::vector<std::size_t>& letters) {
  const bool short_names =
      std::all_of(names.begin(), names.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i && !short_names) out += ".";
    out += names[letters[i]];
  }
  return out;
}

Term word_term(const std::vector<std::size_t>& letters) {
  std::vector<std::size_t> vars;
  for (auto l : letters) vars.push_back(l + 1);
  return product_term(vars);
}

using Word = std::vector<std::size_t>;

void injective_words(std::size_t n, std::size_t len, Word& prefix, std::vector<char>& used,
                     std::vector<Word>& out) {
  if (prefix.size() == len) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t l = 0; l < n; ++l) {
    if (used[l]) continue;
    used[l] = 1;
    prefix.push_back(l);
    injective_words(n, len, prefix, used, out);
    prefix.pop_back();
    used[l] = 0;
  }
}

// Letters of u that do not occur in v, in order, followed by v.
Word rrb_product(const Word& u, const Word& v) {
  Word out;
  for (auto l : u)
    if (std::find(v.begin(), v.end(), l) == v.end()) out.push_back(l);
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

FreeAlgebraResult free_rrb(std::size_t n, std::vector<std::string> names) {
  std::vector<Word> words;
  for (std::size_t len = 1; len <= n; ++len) {
    Word prefix;
    std::vector<char> used(n, 0);
    injective_words(n, len, prefix, used, words);
  }
  std::map<Word, Element> index;
  for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = static_cast<Element>(i);
  const std::size_t m = words.size();
  std::vector<Element> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = index.at(rrb_product(words[i], words[j]));
  std::vector<std::string> labels;
  std::vector<Term> terms;
  for (const auto& w : words) {
    labels.push_back(join_word(names, w));
    terms.push_back(word_term(w));
  }
  std::vector<Element> gens(n);
  std::iota(gens.begin(), gens.end(), 0);
  return FreeAlgebraResult{"rrb", FiniteAlgebra(band_signature(), m, {std::move(table)}, std::move(labels)),
                           std::move(gens), std::move(names), std::move(terms)};
}

FreeAlgebraResult free_semilattice(std::size_t n, std::vector<std::string> names) {
  std::vector<std::uint32_t> sets;
  for (std::uint32_t s = 1; s < (1u << n); ++s) sets.push_back(s);
  auto members = [](std::uint32_t s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; s >> i; ++i)
      if ((s >> i) & 1u) out.push_back(i);
    return out;
  };
  std::sort(sets.begin(), sets.end(), [&](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return members(a) < members(b);
  });
  std::vector<Element> index(std::size_t{1} << n, 0);
  for (std::size_t i = 0; i < sets.size(); ++i) index[sets[i]] = static_cast<Element>(i);
  const std::size_t m = sets.size();
  std::vector<Element> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = index[sets[i] | sets[j]];
  std::vector<std::string> labels;
  std::vector<Term> terms;
  for (auto s : sets) {
    labels.push_back(join_word(names, members(s)));
    terms.push_back(word_term(members(s)));
  }
  std::vector<Element> gens(n);
  std::iota(gens.begin(), gens.end(), 0);
  return FreeAlgebraResult{"semilattice",
                           FiniteAlgebra(band_signature(), m, {std::move(table)}, std::move(labels)),
                           std::move(gens), std::move(names), std::move(terms)};
}

// Truth tables over the 2^n points of {0,1}^n; point s assigns bit i of s to x_{i+1}.
FreeAlgebraResult free_bounded_dl(std::size_t n, std::vector<std::string> names) {
  const std::size_t points = std::size_t{1} << n;
  const std::uint32_t all = points == 32 ? ~0u : ((1u << points) - 1u);
  std::vector<std::uint32_t> gens_tt;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t tt = 0;
    for (std::size_t s = 0; s < points; ++s)
      if ((s >> i) & 1u) tt |= 1u << s;
    gens_tt.push_back(tt);
  }
  std::vector<std::uint32_t> elems = gens_tt;
  elems.push_back(0);
  elems.push_back(all);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (std::uint32_t r : {elems[i] & elems[j], elems[i] | elems[j]})
        if (std::find(elems.begin(), elems.end(), r) == elems.end()) elems.push_back(r);
  // Generators first; the rest by number of true points, then by value.
  std::vector<std::uint32_t> rest;
  for (auto e : elems)
    if (std::find(gens_tt.begin(), gens_tt.end(), e) == gens_tt.end()) rest.push_back(e);
  std::sort(rest.begin(), rest.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  // With n = 1 the generator is distinct from both constants; with n = 0 there
  // are no generators.
  std::vector<std::uint32_t> order = gens_tt;
  order.insert(order.end(), rest.begin(), rest.end());
  std::map<std::uint32_t, Element> index;
  for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = static_cast<Element>(i);
  const std::size_t m = order.size();
  std::vector<Element> meet_t(m * m), join_t(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      meet_t[i * m + j] = index.at(order[i] & order[j]);
      join_t[i * m + j] = index.at(order[i] | order[j]);
    }
  std::vector<std::string> labels;
  std::vector<Term> terms;
  for (auto f : order) {
    if (f == 0) {
      labels.push_back("0");
      terms.push_back(Term::app("bot"));
      continue;
    }
    if (f & 1u) {  // true at the all-zero point means constant 1 for monotone f
      labels.push_back("1");
      terms.push_back(Term::app("top"));
      continue;
    }
    std::vector<std::size_t> minimal;
    for (std::size_t s = 0; s < points; ++s) {
      if (!((f >> s) & 1u)) continue;
      bool is_min = true;
      for (std::size_t t = s; t && is_min; t = (t - 1) & s)
        if (t != s && ((f >> t) & 1u)) is_min = false;
      if (is_min) minimal.push_back(s);
    }
    std::string label;
    std::optional<Term> joined;
    for (auto s : minimal) {
      std::vector<std::size_t> vars, letters;
      for (std::size_t i = 0; i < n; ++i)
        if ((s >> i) & 1u) {
          vars.push_back(i + 1);
          letters.push_back(i);
        }
      Term conj = product_term(vars, "meet");
      if (!label.empty()) label += "|";
      std::string part;
      for (std::size_t k = 0; k < letters.size(); ++k) {
        if (k) part += "&";
        part += names[letters[k]];
      }
      label += part;
      joined = joined ? Term::app("join", {std::move(*joined), std::move(conj)}) : std::move(conj);
    }
    labels.push_back(label);
    terms.push_back(std::move(*joined));
  }
  std::vector<Element> gens(n);
  std::iota(gens.begin(), gens.end(), 0);
  const Element bot = index.at(0), top = index.at(all);
  return FreeAlgebraResult{
      "bounded-dl",
      FiniteAlgebra(lattice_signature(), m, {std::move(meet_t), std::move(join_t), {bot}, {top}},
                    std::move(labels)),
      std::move(gens), std::move(names), std::move(terms)};
}

}  // namespace

std::size_t free_algebra_bound(std::string_view variety) {
  if (variety == "rrb") return 5;
  if (variety == "semilattice") return 10;
  if (variety == "bounded-dl") return 4;
  fail(ErrorCode::InvalidArgument, "no free-algebra backend for variety '" + std::string(variety) + "'");
}

bool usable_generator_names(std::string_view variety, const std::vector<std::string>& names) {
  std::set<std::string_view> seen;
  for (const auto& s : names) {
    if (s.empty() || s.find_first_of(".&|") != std::string::npos) return false;
    // the bounded-dl constants print as 0 and 1
    if (variety == "bounded-dl" && (s == "0" || s == "1")) return false;
    if (!seen.insert(s).second) return false;
  }
  return true;
}

FreeAlgebraResult free_algebra(std::string_view variety, std::size_t generator_count,
                               std::vector<std::string> generator_names) {
  const std::size_t bound = free_algebra_bound(variety);
  if (generator_count > bound)
    fail(ErrorCode::BoundExceeded, "free " + std::string(variety) + " algebra is limited to " +
                                       std::to_string(bound) + " generators");
  if (generator_count == 0 && variety != "bounded-dl")
    fail(ErrorCode::InvalidArgument, "free " + std::string(variety) + " algebra needs a generator");
  auto names = resolve_names(variety, generator_count, std::move(generator_names));
  if (variety == "rrb") return free_rrb(generator_count, std::move(names));
  if (variety == "semilattice") return free_semilattice(generator_count, std::move(names));
  return free_bounded_dl(generator_count, std::move(names));
}

namespace {

// Hash-consed term DAG for the oracle.
struct OracleNode {
  std::size_t op;              // symbol index, or npos for a variable
  std::vector<std::size_t> kids;
  std::size_t var = 0;         // 1-based when op == npos
  std::size_t depth = 0;
};

constexpr std::size_t kNpos = static_cast<std::size_t>(-1);

class TermUniverse {
 public:
  TermUniverse(const Signature& sig, std::size_t n, std::size_t depth) : sig_(sig) {
    // Estimate first so that oversized requests fail before allocating.
    double count = static_cast<double>(n);
    for (std::size_t op = 0; op < sig.size(); ++op)
      if (sig[op].arity == 0) count += 1;
    double level = count;
    for (std::size_t d = 1; d <= depth; ++d) {
      double next = static_cast<double>(n);
      for (std::size_t op = 0; op < sig.size(); ++op)
        next += sig[op].arity == 0 ? 1.0 : std::pow(level, static_cast<double>(sig[op].arity));
      level = next;
      if (level > static_cast<double>(kOracleTermBound))
        fail(ErrorCode::BoundExceeded, "oracle would enumerate more than " +
                                           std::to_string(kOracleTermBound) + " terms");
    }
    for (std::size_t v = 1; v <= n; ++v) add(OracleNode{kNpos, {}, v, 0});
    for (std::size_t op = 0; op < sig.size(); ++op)
      if (sig[op].arity == 0) add(OracleNode{op, {}, 0, 0});
    for (std::size_t d = 1; d <= depth; ++d) {
      const std::size_t prev = nodes_.size();
      for (std::size_t op = 0; op < sig.size(); ++op) {
        const auto arity = sig[op].arity;
        if (arity == 0) continue;
        for_each_tuple(prev, arity, [&](std::span<const Element> kids) {
          std::vector<std::size_t> k(kids.begin(), kids.end());
          if (lookup(op, k) == kNpos) {
            std::size_t dep = 0;
            for (auto c : k) dep = std::max(dep, nodes_[c].depth);
            add(OracleNode{op, std::move(k), 0, dep + 1});
          }
        });
      }
    }
  }

  std::size_t size() const { return nodes_.size(); }
  const OracleNode& operator[](std::size_t i) const { return nodes_[i]; }

  std::size_t lookup(std::size_t op, const std::vector<std::size_t>& kids) const {
    auto it = index_.find({op, kids});
    return it == index_.end() ? kNpos : it->second;
  }

  // Syntactic matching of a pattern against node id; binds variables.
  bool match(const Term& pattern, std::size_t id, std::vector<std::size_t>& binding) const {
    if (pattern.is_var()) {
      auto& slot = binding[pattern.var_index() - 1];
      if (slot == kNpos) {
        slot = id;
        return true;
      }
      return slot == id;
    }
    const auto& node = nodes_[id];
    if (node.op == kNpos || sig_[node.op].name != pattern.symbol()) return false;
    for (std::size_t k = 0; k < node.kids.size(); ++k)
      if (!match(pattern.args()[k], node.kids[k], binding)) return false;
    return true;
  }

  // Node id of pattern under binding, or npos if it falls outside the universe.
  std::size_t instantiate(const Term& pattern, const std::vector<std::size_t>& binding) const {
    if (pattern.is_var()) return binding[pattern.var_index() - 1];
    std::vector<std::size_t> kids;
    for (const auto& a : pattern.args()) {
      const auto k = instantiate(a, binding);
      if (k == kNpos) return kNpos;
      kids.push_back(k);
    }
    return lookup(*sig_.find(pattern.symbol()), kids);
  }

  Term to_term(std::size_t id) const {
    const auto& node = nodes_[id];
    if (node.op == kNpos) return Term::var(node.var);
    std::vector<Term> args;
    for (auto k : node.kids) args.push_back(to_term(k));
    return Term::app(sig_[node.op].name, std::move(args));
  }

 private:
  void add(OracleNode node) {
    const std::size_t id = nodes_.size();
    if (node.op != kNpos) index_[{node.op, node.kids}] = id;
    nodes_.push_back(std::move(node));
  }

  const Signature& sig_;
  std::vector<OracleNode> nodes_;
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> index_;
};

}  // namespace

FiniteAlgebra free_algebra_oracle(const VarietySpec& variety, std::size_t generator_count,
                                  std::size_t depth) {
  if (depth == 0) fail(ErrorCode::InvalidArgument, "depth insufficient: need depth >= 1");
  const Signature& sig = variety.signature;
  for (const auto& id : variety.identities) {
    check_term(sig, id.lhs);
    check_term(sig, id.rhs);
  }
  TermUniverse terms(sig, generator_count, depth);
  const std::size_t count = terms.size();
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  };

  for (const auto& id : variety.identities) {
    const std::size_t vars = std::max(id.lhs.max_var(), id.rhs.max_var());
    for (const auto& [from, to] : {std::pair{&id.lhs, &id.rhs}, std::pair{&id.rhs, &id.lhs}}) {
      for (std::size_t node = 0; node < count; ++node) {
        std::vector<std::size_t> binding(vars, kNpos);
        if (!terms.match(*from, node, binding)) continue;
        if (std::find(binding.begin(), binding.end(), kNpos) != binding.end()) {
          // Variables of the other side that the matched side does not bind.
          std::vector<char> seen;
          to->collect_vars(seen);
          bool unbound = false;
          for (std::size_t v = 0; v < seen.size(); ++v) unbound |= seen[v] && binding[v] == kNpos;
          if (unbound) continue;
        }
        const std::size_t other = terms.instantiate(*to, binding);
        if (other != kNpos) unite(node, other);
      }
    }
  }

  // Congruence closure within the universe.
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> signature;
    for (std::size_t node = 0; node < count; ++node) {
      const auto& t = terms[node];
      if (t.op == kNpos || t.kids.empty()) continue;
      std::vector<std::size_t> kids;
      for (auto k : t.kids) kids.push_back(find(k));
      auto [it, inserted] = signature.try_emplace({t.op, std::move(kids)}, node);
      if (!inserted && unite(it->second, node)) changed = true;
    }
  }

  // Classes in order of least node id (variables first).
  std::vector<Element> class_of(count, static_cast<Element>(-1));
  std::vector<std::size_t> shallow;  // a representative of depth < d per class
  std::vector<std::size_t> roots;
  for (std::size_t node = 0; node < count; ++node) {
    const auto r = find(node);
    if (class_of[r] == static_cast<Element>(-1)) {
      class_of[r] = static_cast<Element>(roots.size());
      roots.push_back(r);
      shallow.push_back(kNpos);
    }
    const auto c = class_of[r];
    if (terms[node].depth < depth && shallow[c] == kNpos) shallow[c] = node;
  }
  for (std::size_t c = 0; c < roots.size(); ++c)
    if (shallow[c] == kNpos)
      fail(ErrorCode::InvalidArgument, "depth insufficient: class of " +
                                           terms.to_term(roots[c]).to_string() +
                                           " has no representative below depth " +
                                           std::to_string(depth));
  const std::size_t m = roots.size();
  std::vector<std::vector<Element>> tables;
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const auto arity = sig[op].arity;
    std::vector<Element> table(ipow(m, arity));
    for_each_tuple(m, arity, [&](std::span<const Element> cls) {
      std::vector<std::size_t> kids;
      for (auto c : cls) kids.push_back(shallow[c]);
      const auto node = terms.lookup(op, kids);
      if (node == kNpos) fail(ErrorCode::Internal, "oracle product outside term universe");
      table[table_offset(m, cls)] = class_of[find(node)];
    });
    tables.push_back(std::move(table));
  }
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < m; ++c) labels.push_back(terms.to_term(shallow[c]).to_string());
  FiniteAlgebra result(sig, m, std::move(tables), std::move(labels));
  const auto report = check_variety_membership(result, variety);
  if (!report.pass)
    fail(ErrorCode::InvalidArgument, "depth insufficient: enumerated classes violate " +
                                         report.failures.front().identity.to_string());
  return result;
}

Homomorphism extend_to_free_morphism(std::span<const Element> generator_map,
                                     const FreeAlgebraResult& fx, const FreeAlgebraResult& fy) {
  if (fx.variety != fy.variety)
    fail(ErrorCode::SignatureMismatch, "free algebras over different varieties");
  if (generator_map.size() != fx.generators.size())
    fail(ErrorCode::InvalidArgument, "generator map must cover every generator of the source");
  std::vector<Element> assignment;
  for (Element g : generator_map) {
    if (g >= fy.generators.size()) fail(ErrorCode::OutOfRange, "generator map out of range");
    assignment.push_back(fy.generators[g]);
  }
  std::vector<Element> map(fx.algebra.size());
  for (std::size_t e = 0; e < map.size(); ++e) map[e] = eval_term(fy.algebra, fx.terms[e], assignment);
  return make_homomorphism(fx.algebra, fy.algebra, std::move(map));
}

}  // namespace rrbkit
