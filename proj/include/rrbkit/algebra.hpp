#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rrbkit {

// Elements of a finite universe are indices 0..n-1.
using Element = std::uint32_t;

struct Symbol {
  std::string name;
  std::size_t arity = 0;

  bool operator==(const Symbol&) const = default;
};

// Function symbols in declaration order. Equality compares names and arities
// position by position.
class Signature {
 public:
  explicit Signature(std::vector<Symbol> symbols);

  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws if unknown

  std::string to_string() const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

/// {mul/2}: bands, right regular bands and semilattices.
Signature band_signature();
/// {meet/2, join/2, bot/0, top/0}: bounded lattices.
Signature lattice_signature();

/// Row-major offset of an argument tuple in a dense table over n elements.
std::size_t table_offset(std::size_t n, std::span<const Element> args);
std::size_t ipow(std::size_t base, std::size_t exp);

/// A finite algebra given by dense operation tables. The table for a k-ary
/// symbol has n^k entries; entry table_offset(n, args) holds op(args...).
/// Labels are display names only; they default to e0..e(n-1).
class FiniteAlgebra {
 public:
  FiniteAlgebra(Signature signature, std::size_t size,
                std::vector<std::vector<Element>> tables,
                std::vector<std::string> labels = {});

  const Signature& signature() const noexcept { return signature_; }
  std::size_t size() const noexcept { return size_; }
  const std::vector<Element>& table(std::size_t op) const { return tables_[op]; }
  const std::vector<std::vector<Element>>& tables() const noexcept { return tables_; }

  Element apply(std::size_t op, std::span<const Element> args) const;
  Element apply(std::string_view op, std::span<const Element> args) const;
  Element at(std::size_t op, Element a, Element b) const {
    return tables_[op][static_cast<std::size_t>(a) * size_ + b];
  }
  Element constant(std::size_t op) const { return tables_[op][0]; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Element e) const { return labels_[e]; }
  std::optional<Element> find_label(std::string_view name) const;
  FiniteAlgebra with_labels(std::vector<std::string> labels) const;

  bool operator==(const FiniteAlgebra&) const = default;

 private:
  Signature signature_;
  std::size_t size_;
  std::vector<std::vector<Element>> tables_;
  std::vector<std::string> labels_;
};

std::vector<std::string> default_labels(std::size_t n);

/// A total element map between two finite universes. The same type serves
/// algebra homomorphisms and relational homomorphisms; the constructors that
/// produce one verify the relevant preservation property.
struct Homomorphism {
  std::size_t source_size = 0;
  std::size_t target_size = 0;
  std::vector<Element> map;

  Element operator()(Element e) const { return map[e]; }
  bool operator==(const Homomorphism&) const = default;
  auto operator<=>(const Homomorphism& other) const { return map <=> other.map; }
};

bool preserves_operations(const FiniteAlgebra& source, const FiniteAlgebra& target,
                          std::span<const Element> map);

/// Checks the map and throws ErrorCode::Validation if it is not a homomorphism.
Homomorphism make_homomorphism(const FiniteAlgebra& source, const FiniteAlgebra& target,
                               std::vector<Element> map);

Homomorphism identity_map(std::size_t n);
/// outer ∘ inner
Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner);
bool is_injective(const Homomorphism& h);
bool is_surjective(const Homomorphism& h);

/// All homomorphisms source -> target in lexicographic order of the map.
std::vector<Homomorphism> enumerate_homomorphisms(const FiniteAlgebra& source,
                                                  const FiniteAlgebra& target);

/// The lexicographically first isomorphism, if any.
std::optional<Homomorphism> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b);

struct DirectProduct {
  FiniteAlgebra algebra;
  Homomorphism first;   // projection onto the left factor
  Homomorphism second;  // projection onto the right factor
  std::size_t right_size;

  Element encode(Element left, Element right) const {
    return static_cast<Element>(left * right_size + right);
  }
  std::pair<Element, Element> decode(Element e) const {
    return {static_cast<Element>(e / right_size), static_cast<Element>(e % right_size)};
  }
};

/// Pairs are encoded as i*|b| + j.
DirectProduct direct_product(const FiniteAlgebra& a, const FiniteAlgebra& b);

struct Subuniverse {
  std::vector<Element> elements;  // sorted; elements[k] is the original index of k
  FiniteAlgebra algebra;          // restriction, re-indexed 0..k-1
};

Subuniverse generated_subuniverse(const FiniteAlgebra& algebra, std::span<const Element> seed);

/// True iff the subset is closed under every operation (constants included).
bool is_closed(const FiniteAlgebra& algebra, std::span<const Element> subset);

/// Calls fn(args) for every tuple in {0..n-1}^arity in lexicographic order.
template <typename Fn>
void for_each_tuple(std::size_t n, std::size_t arity, Fn&& fn) {
  std::vector<Element> args(arity, 0);
  if (arity > 0 && n == 0) return;
  while (true) {
    fn(std::span<const Element>(args));
    bool advanced = false;
    for (std::size_t pos = arity; pos > 0 && !advanced;) {
      --pos;
      if (++args[pos] < n) {
        advanced = true;
      } else {
        args[pos] = 0;
      }
    }
    if (!advanced) return;
  }
}

}  // namespace rrbkit
