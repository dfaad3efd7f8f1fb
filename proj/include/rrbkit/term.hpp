#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rrbkit/algebra.hpp"

namespace rrbkit {

/// A term over a signature: either a variable x_i (1-based) or a symbol
/// applied to argument terms.
class Term {
 public:
  static Term var(std::size_t index);
  static Term app(std::string symbol, std::vector<Term> args = {});

  bool is_var() const noexcept { return var_ != 0; }
  std::size_t var_index() const noexcept { return var_; }
  const std::string& symbol() const noexcept { return symbol_; }
  const std::vector<Term>& args() const noexcept { return args_; }

  /// Largest variable index occurring, 0 for ground terms.
  std::size_t max_var() const;
  std::size_t depth() const;
  void collect_vars(std::vector<char>& seen) const;

  /// Prefix syntax: mul(x1,mul(x2,x1)); constants print bare.
  std::string to_string() const;

  bool operator==(const Term&) const = default;
  auto operator<=>(const Term&) const = default;

 private:
  std::size_t var_ = 0;
  std::string symbol_;
  std::vector<Term> args_;
};

/// Parses prefix syntax. Variables are x1, x2, ...; any other identifier is a
/// symbol, with or without an argument list.
Term parse_term(std::string_view text);

/// Throws unless every application names a symbol of the signature with the
/// right number of arguments.
void check_term(const Signature& signature, const Term& term);

Element eval_term(const FiniteAlgebra& algebra, const Term& term,
                  std::span<const Element> assignment);

/// Left-associated product mul(mul(x_a, x_b), x_c) ... of the given variables.
Term product_term(std::span<const std::size_t> vars, const std::string& op = "mul");

struct IdentityCheck {
  bool holds = true;
  /// Lexicographically first failing assignment; position i binds x_{i+1}.
  std::vector<Element> counterexample;
};

IdentityCheck holds_identity(const FiniteAlgebra& algebra, const Term& lhs, const Term& rhs);

struct Identity {
  Term lhs;
  Term rhs;
  std::string to_string() const { return lhs.to_string() + " = " + rhs.to_string(); }
  bool operator==(const Identity&) const = default;
};

struct VarietySpec {
  Signature signature;
  std::vector<Identity> identities;
  std::optional<std::string> registry_id;
};

/// Built-in varieties: "rrb", "semilattice", "bounded-dl". "bounded-lattice"
/// is also available for certifying the (not necessarily distributive)
/// lattices used by the complement-graph constructions.
VarietySpec variety_spec(std::string_view id);
std::vector<std::string> registry_varieties();

struct IdentityFailure {
  std::size_t index;
  Identity identity;
  std::vector<Element> counterexample;
};

struct VarietyReport {
  bool pass = true;
  std::vector<IdentityFailure> failures;
};

VarietyReport check_variety_membership(const FiniteAlgebra& algebra, const VarietySpec& variety);
bool is_member(const FiniteAlgebra& algebra, std::string_view variety_id);

}  // namespace rrbkit
