#include "rrbkit/algebra.hpp"

#include <algorithm>
#include <set>
#include <string_view>
#include <unordered_set>

#include "rrbkit/error.hpp"

namespace rrbkit {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::SignatureMismatch: return "signature mismatch";
    case ErrorCode::OutOfRange: return "out of range";
    case ErrorCode::BoundExceeded: return "bound exceeded";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Validation: return "validation failure";
    case ErrorCode::Undefined: return "undefined";
    case ErrorCode::Internal: return "internal error";
  }
  return "unknown";
}

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) fail(ErrorCode::InvalidArgument, "signature has no symbols");
  std::set<std::string_view> seen;
  for (const auto& s : symbols_) {
    if (s.name.empty()) fail(ErrorCode::InvalidArgument, "empty symbol name");
    if (!seen.insert(s.name).second)
      fail(ErrorCode::InvalidArgument, "duplicate symbol '" + s.name + "'");
  }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Signature::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  fail(ErrorCode::InvalidArgument, "unknown symbol '" + std::string(name) + "'");
}

std::string Signature::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) out += ", ";
    out += symbols_[i].name + "/" + std::to_string(symbols_[i].arity);
  }
  return out + "}";
}

Signature band_signature() { return Signature({{"mul", 2}}); }

Signature lattice_signature() {
  return Signature({{"meet", 2}, {"join", 2}, {"bot", 0}, {"top", 0}});
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

std::size_t table_offset(std::size_t n, std::span<const Element> args) {
  std::size_t off = 0;
  for (Element a : args) off = off * n + a;
  return off;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back("e" + std::to_string(i));
  return out;
}

FiniteAlgebra::FiniteAlgebra(Signature signature, std::size_t size,
                             std::vector<std::vector<Element>> tables,
                             std::vector<std::string> labels)
    : signature_(std::move(signature)),
      size_(size),
      tables_(std::move(tables)),
      labels_(std::move(labels)) {
  if (size_ == 0) fail(ErrorCode::InvalidArgument, "algebra must have at least one element");
  if (tables_.size() != signature_.size())
    fail(ErrorCode::InvalidArgument, "expected one table per symbol of " + signature_.to_string());
  for (std::size_t op = 0; op < tables_.size(); ++op) {
    const auto expected = ipow(size_, signature_[op].arity);
    if (tables_[op].size() != expected)
      fail(ErrorCode::InvalidArgument, "table for '" + signature_[op].name + "' has " +
                                           std::to_string(tables_[op].size()) + " entries, expected " +
                                           std::to_string(expected));
    for (Element e : tables_[op])
      if (e >= size_)
        fail(ErrorCode::OutOfRange, "table for '" + signature_[op].name + "' contains " +
                                        std::to_string(e) + " outside universe of size " +
                                        std::to_string(size_));
  }
  if (labels_.empty()) labels_ = default_labels(size_);
  if (labels_.size() != size_) fail(ErrorCode::InvalidArgument, "label count differs from size");
  std::unordered_set<std::string_view> seen;
  for (const auto& l : labels_)
    if (!seen.insert(l).second) fail(ErrorCode::InvalidArgument, "duplicate label '" + l + "'");
}

Element FiniteAlgebra::apply(std::size_t op, std::span<const Element> args) const {
  if (op >= tables_.size()) fail(ErrorCode::InvalidArgument, "operation index out of range");
  if (args.size() != signature_[op].arity)
    fail(ErrorCode::InvalidArgument, "arity mismatch for '" + signature_[op].name + "'");
  for (Element a : args)
    if (a >= size_) fail(ErrorCode::OutOfRange, "argument outside universe");
  return tables_[op][table_offset(size_, args)];
}

Element FiniteAlgebra::apply(std::string_view op, std::span<const Element> args) const {
  return apply(signature_.index_of(op), args);
}

std::optional<Element> FiniteAlgebra::find_label(std::string_view name) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == name) return static_cast<Element>(i);
  return std::nullopt;
}

FiniteAlgebra FiniteAlgebra::with_labels(std::vector<std::string> labels) const {
  return FiniteAlgebra(signature_, size_, tables_, std::move(labels));
}

bool preserves_operations(const FiniteAlgebra& source, const FiniteAlgebra& target,
                          std::span<const Element> map) {
  if (source.signature() != target.signature()) return false;
  if (map.size() != source.size()) return false;
  for (Element v : map)
    if (v >= target.size()) return false;
  std::vector<Element> image;
  for (std::size_t op = 0; op < source.signature().size(); ++op) {
    const auto arity = source.signature()[op].arity;
    bool ok = true;
    image.resize(arity);
    for_each_tuple(source.size(), arity, [&](std::span<const Element> args) {
      if (!ok) return;
      for (std::size_t i = 0; i < arity; ++i) image[i] = map[args[i]];
      const Element lhs = map[source.table(op)[table_offset(source.size(), args)]];
      const Element rhs = target.table(op)[table_offset(target.size(), image)];
      ok = lhs == rhs;
    });
    if (!ok) return false;
  }
  return true;
}

Homomorphism make_homomorphism(const FiniteAlgebra& source, const FiniteAlgebra& target,
                               std::vector<Element> map) {
  if (source.signature() != target.signature())
    fail(ErrorCode::SignatureMismatch, "homomorphism between algebras of different signatures");
  if (map.size() != source.size())
    fail(ErrorCode::InvalidArgument, "map has " + std::to_string(map.size()) + " entries, expected " +
                                         std::to_string(source.size()));
  for (Element v : map)
    if (v >= target.size()) fail(ErrorCode::OutOfRange, "map value outside the target");
  if (!preserves_operations(source, target, map))
    fail(ErrorCode::Validation, "map does not commute with the operation tables");
  return Homomorphism{source.size(), target.size(), std::move(map)};
}

Homomorphism identity_map(std::size_t n) {
  Homomorphism h{n, n, std::vector<Element>(n)};
  for (std::size_t i = 0; i < n; ++i) h.map[i] = static_cast<Element>(i);
  return h;
}

Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner) {
  if (inner.target_size != outer.source_size)
    fail(ErrorCode::InvalidArgument, "cannot compose maps with mismatched universes");
  Homomorphism h{inner.source_size, outer.target_size, std::vector<Element>(inner.source_size)};
  for (std::size_t i = 0; i < inner.source_size; ++i) h.map[i] = outer.map[inner.map[i]];
  return h;
}

bool is_injective(const Homomorphism& h) {
  std::vector<char> seen(h.target_size, 0);
  for (Element v : h.map) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool is_surjective(const Homomorphism& h) {
  std::vector<char> seen(h.target_size, 0);
  for (Element v : h.map) seen[v] = 1;
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

namespace {

// Backtracking over the source universe in index order. Each table entry is
// checked as soon as all of its arguments are assigned: if its result is
// already assigned the values must agree, otherwise the result's image is
// forced for when the search reaches it.
class HomSearch {
 public:
  HomSearch(const FiniteAlgebra& source, const FiniteAlgebra& target, bool injective,
            std::size_t limit)
      : src_(source), tgt_(target), injective_(injective), limit_(limit) {
    const std::size_t n = src_.size();
    by_last_arg_.resize(n);
    forced_.assign(n, kNone);
    for (std::size_t op = 0; op < src_.signature().size(); ++op) {
      const auto arity = src_.signature()[op].arity;
      for_each_tuple(n, arity, [&](std::span<const Element> args) {
        Entry e{op, {args.begin(), args.end()}, src_.table(op)[table_offset(n, args)]};
        if (arity == 0) {
          constants_.push_back(std::move(e));
        } else {
          const Element last = *std::max_element(args.begin(), args.end());
          by_last_arg_[last].push_back(std::move(e));
        }
      });
    }
  }

  std::vector<Homomorphism> run() {
    std::vector<Homomorphism> out;
    if (injective_ && tgt_.size() < src_.size()) return out;
    for (const auto& c : constants_) {
      const Element v = tgt_.constant(c.op);
      if (forced_[c.result] != kNone && forced_[c.result] != v) return out;
      forced_[c.result] = v;
    }
    map_.assign(src_.size(), 0);
    used_.assign(tgt_.size(), 0);
    descend(0, out);
    return out;
  }

 private:
  static constexpr Element kNone = static_cast<Element>(-1);

  struct Entry {
    std::size_t op;
    std::vector<Element> args;
    Element result;
  };

  void descend(std::size_t i, std::vector<Homomorphism>& out) {
    if (out.size() >= limit_) return;
    if (i == src_.size()) {
      out.push_back(Homomorphism{src_.size(), tgt_.size(), map_});
      return;
    }
    Element lo = 0;
    Element hi = static_cast<Element>(tgt_.size());
    if (forced_[i] != kNone) {
      lo = forced_[i];
      hi = lo + 1;
    }
    std::vector<Element> image;
    for (Element v = lo; v < hi; ++v) {
      if (injective_ && used_[v]) continue;
      map_[i] = v;
      const std::size_t mark = undo_.size();
      bool ok = true;
      for (const auto& e : by_last_arg_[i]) {
        image.resize(e.args.size());
        for (std::size_t k = 0; k < e.args.size(); ++k) image[k] = map_[e.args[k]];
        const Element want = tgt_.table(e.op)[table_offset(tgt_.size(), image)];
        if (e.result <= i) {
          if (map_[e.result] != want) ok = false;
        } else if (forced_[e.result] == kNone) {
          forced_[e.result] = want;
          undo_.push_back(e.result);
        } else if (forced_[e.result] != want) {
          ok = false;
        }
        if (!ok) break;
      }
      if (ok) {
        used_[v] = 1;
        descend(i + 1, out);
        used_[v] = 0;
      }
      while (undo_.size() > mark) {
        forced_[undo_.back()] = kNone;
        undo_.pop_back();
      }
      if (out.size() >= limit_) return;
    }
  }

  const FiniteAlgebra& src_;
  const FiniteAlgebra& tgt_;
  bool injective_;
  std::size_t limit_;
  std::vector<std::vector<Entry>> by_last_arg_;
  std::vector<Entry> constants_;
  std::vector<Element> forced_;
  std::vector<Element> undo_;
  std::vector<Element> map_;
  std::vector<char> used_;
};

}  // namespace

std::vector<Homomorphism> enumerate_homomorphisms(const FiniteAlgebra& source,
                                                  const FiniteAlgebra& target) {
  if (source.signature() != target.signature())
    fail(ErrorCode::SignatureMismatch, "cannot enumerate homomorphisms across signatures " +
                                           source.signature().to_string() + " and " +
                                           target.signature().to_string());
  return HomSearch(source, target, false, static_cast<std::size_t>(-1)).run();
}

std::optional<Homomorphism> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.signature() != b.signature())
    fail(ErrorCode::SignatureMismatch, "cannot compare algebras of different signatures");
  if (a.size() != b.size()) return std::nullopt;
  auto found = HomSearch(a, b, true, 1).run();
  if (found.empty()) return std::nullopt;
  // A bijective homomorphism between finite algebras has a homomorphic inverse.
  Homomorphism inverse{b.size(), a.size(), std::vector<Element>(b.size())};
  for (std::size_t i = 0; i < a.size(); ++i) inverse.map[found[0].map[i]] = static_cast<Element>(i);
  if (!preserves_operations(b, a, inverse.map))
    fail(ErrorCode::Internal, "inverse of a bijective homomorphism is not a homomorphism");
  return found[0];
}

DirectProduct direct_product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.signature() != b.signature())
    fail(ErrorCode::SignatureMismatch, "direct product of algebras with different signatures");
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t n = na * nb;
  std::vector<std::vector<Element>> tables;
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    const auto arity = a.signature()[op].arity;
    std::vector<Element> table(ipow(n, arity));
    std::vector<Element> left(arity), right(arity);
    for_each_tuple(n, arity, [&](std::span<const Element> args) {
      for (std::size_t k = 0; k < arity; ++k) {
        left[k] = static_cast<Element>(args[k] / nb);
        right[k] = static_cast<Element>(args[k] % nb);
      }
      const Element l = a.table(op)[table_offset(na, left)];
      const Element r = b.table(op)[table_offset(nb, right)];
      table[table_offset(n, args)] = static_cast<Element>(l * nb + r);
    });
    tables.push_back(std::move(table));
  }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
  FiniteAlgebra product(a.signature(), n, std::move(tables), std::move(labels));
  std::vector<Element> p1(n), p2(n);
  for (std::size_t k = 0; k < n; ++k) {
    p1[k] = static_cast<Element>(k / nb);
    p2[k] = static_cast<Element>(k % nb);
  }
  auto first = make_homomorphism(product, a, std::move(p1));
  auto second = make_homomorphism(product, b, std::move(p2));
  return DirectProduct{std::move(product), std::move(first), std::move(second), nb};
}

bool is_closed(const FiniteAlgebra& algebra, std::span<const Element> subset) {
  std::vector<char> member(algebra.size(), 0);
  for (Element e : subset) member[e] = 1;
  std::vector<Element> args;
  for (std::size_t op = 0; op < algebra.signature().size(); ++op) {
    const auto arity = algebra.signature()[op].arity;
    bool ok = true;
    args.resize(arity);
    for_each_tuple(subset.size(), arity, [&](std::span<const Element> idx) {
      if (!ok) return;
      for (std::size_t k = 0; k < arity; ++k) args[k] = subset[idx[k]];
      ok = member[algebra.table(op)[table_offset(algebra.size(), args)]] != 0;
    });
    if (!ok) return false;
  }
  return true;
}

Subuniverse generated_subuniverse(const FiniteAlgebra& algebra, std::span<const Element> seed) {
  if (seed.empty()) fail(ErrorCode::InvalidArgument, "generated_subuniverse needs a nonempty seed");
  std::vector<char> member(algebra.size(), 0);
  std::vector<Element> members;
  auto add = [&](Element e) {
    if (e >= algebra.size()) fail(ErrorCode::OutOfRange, "seed element outside universe");
    if (!member[e]) {
      member[e] = 1;
      members.push_back(e);
    }
  };
  for (Element e : seed) add(e);
  bool grew = true;
  std::vector<Element> args;
  while (grew) {
    grew = false;
    const std::vector<Element> snapshot = members;
    for (std::size_t op = 0; op < algebra.signature().size(); ++op) {
      const auto arity = algebra.signature()[op].arity;
      args.resize(arity);
      for_each_tuple(snapshot.size(), arity, [&](std::span<const Element> idx) {
        for (std::size_t k = 0; k < arity; ++k) args[k] = snapshot[idx[k]];
        const Element r = algebra.table(op)[table_offset(algebra.size(), args)];
        if (!member[r]) {
          add(r);
          grew = true;
        }
      });
    }
  }
  std::sort(members.begin(), members.end());
  std::vector<Element> local(algebra.size(), 0);
  for (std::size_t k = 0; k < members.size(); ++k) local[members[k]] = static_cast<Element>(k);
  const std::size_t m = members.size();
  std::vector<std::vector<Element>> tables;
  for (std::size_t op = 0; op < algebra.signature().size(); ++op) {
    const auto arity = algebra.signature()[op].arity;
    std::vector<Element> table(ipow(m, arity));
    args.resize(arity);
    for_each_tuple(m, arity, [&](std::span<const Element> idx) {
      for (std::size_t k = 0; k < arity; ++k) args[k] = members[idx[k]];
      table[table_offset(m, idx)] = local[algebra.table(op)[table_offset(algebra.size(), args)]];
    });
    tables.push_back(std::move(table));
  }
  std::vector<std::string> labels;
  for (Element e : members) labels.push_back(algebra.label(e));
  return Subuniverse{members, FiniteAlgebra(algebra.signature(), m, std::move(tables), std::move(labels))};
}

}  // namespace rrbkit
