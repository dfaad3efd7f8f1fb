#include "rrbkit/term.hpp"

#include <algorithm>
#include <cctype>

#include "rrbkit/error.hpp"

namespace rrbkit {

Term Term::var(std::size_t index) {
  if (index == 0) fail(ErrorCode::InvalidArgument, "variable indices start at 1");
  Term t;
  t.var_ = index;
  return t;
}

Term Term::app(std::string symbol, std::vector<Term> args) {
  if (symbol.empty()) fail(ErrorCode::InvalidArgument, "empty symbol in term");
  Term t;
  t.symbol_ = std::move(symbol);
  t.args_ = std::move(args);
  return t;
}

std::size_t Term::max_var() const {
  if (is_var()) return var_;
  std::size_t m = 0;
  for (const auto& a : args_) m = std::max(m, a.max_var());
  return m;
}

std::size_t Term::depth() const {
  if (is_var() || args_.empty()) return 0;
  std::size_t d = 0;
  for (const auto& a : args_) d = std::max(d, a.depth());
  return d + 1;
}

void Term::collect_vars(std::vector<char>& seen) const {
  if (is_var()) {
    if (seen.size() < var_) seen.resize(var_, 0);
    seen[var_ - 1] = 1;
    return;
  }
  for (const auto& a : args_) a.collect_vars(seen);
}

std::string Term::to_string() const {
  if (is_var()) return "x" + std::to_string(var_);
  if (args_.empty()) return symbol_;
  std::string out = symbol_ + "(";
  for (std::size_t i = 0; i < args_.size(); ++i) {
    if (i) out += ",";
    out += args_[i].to_string();
  }
  return out + ")";
}

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) error("trailing input");
    return t;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::Parse, "term '" + std::string(text_) + "': " + what + " at offset " +
                               std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string identifier() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
            text_[pos_] == '-'))
      ++pos_;
    if (start == pos_) error("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  static bool is_variable(const std::string& id) {
    if (id.size() < 2 || id[0] != 'x') return false;
    if (id[1] == '0') return false;
    return std::all_of(id.begin() + 1, id.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  }

  Term term() {
    const std::string id = identifier();
    skip_ws();
    const bool has_args = pos_ < text_.size() && text_[pos_] == '(';
    if (is_variable(id)) {
      if (has_args) error("variable applied to arguments");
      return Term::var(std::stoul(id.substr(1)));
    }
    std::vector<Term> args;
    if (has_args) {
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
        return Term::app(id, {});
      }
      while (true) {
        args.push_back(term());
        skip_ws();
        if (pos_ >= text_.size()) error("unterminated argument list");
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        error("expected ',' or ')'");
      }
    }
    return Term::app(id, std::move(args));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return TermParser(text).parse(); }

void check_term(const Signature& signature, const Term& term) {
  if (term.is_var()) return;
  const auto op = signature.find(term.symbol());
  if (!op) fail(ErrorCode::InvalidArgument, "unknown symbol '" + term.symbol() + "'");
  if (signature[*op].arity != term.args().size())
    fail(ErrorCode::InvalidArgument, "arity mismatch: '" + term.symbol() + "' takes " +
                                         std::to_string(signature[*op].arity) + " arguments, got " +
                                         std::to_string(term.args().size()));
  for (const auto& a : term.args()) check_term(signature, a);
}

namespace {

Element eval_checked(const FiniteAlgebra& algebra, const Term& term,
                     std::span<const Element> assignment, std::vector<Element>& scratch) {
  if (term.is_var()) return assignment[term.var_index() - 1];
  const std::size_t op = *algebra.signature().find(term.symbol());
  std::vector<Element> args;
  args.reserve(term.args().size());
  for (const auto& a : term.args()) args.push_back(eval_checked(algebra, a, assignment, scratch));
  return algebra.table(op)[table_offset(algebra.size(), args)];
}

}  // namespace

Element eval_term(const FiniteAlgebra& algebra, const Term& term,
                  std::span<const Element> assignment) {
  check_term(algebra.signature(), term);
  if (term.max_var() > assignment.size())
    fail(ErrorCode::InvalidArgument, "no binding for x" + std::to_string(term.max_var()));
  for (Element e : assignment)
    if (e >= algebra.size()) fail(ErrorCode::OutOfRange, "assignment outside universe");
  std::vector<Element> scratch;
  return eval_checked(algebra, term, assignment, scratch);
}

Term product_term(std::span<const std::size_t> vars, const std::string& op) {
  if (vars.empty()) fail(ErrorCode::InvalidArgument, "empty product");
  Term t = Term::var(vars[0]);
  for (std::size_t i = 1; i < vars.size(); ++i) t = Term::app(op, {std::move(t), Term::var(vars[i])});
  return t;
}

IdentityCheck holds_identity(const FiniteAlgebra& algebra, const Term& lhs, const Term& rhs) {
  check_term(algebra.signature(), lhs);
  check_term(algebra.signature(), rhs);
  std::vector<char> seen;
  lhs.collect_vars(seen);
  rhs.collect_vars(seen);
  std::vector<std::size_t> occurring;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) occurring.push_back(i);
  std::vector<Element> assignment(seen.size(), 0);
  std::vector<Element> scratch;
  IdentityCheck result;
  for_each_tuple(algebra.size(), occurring.size(), [&](std::span<const Element> values) {
    if (!result.holds) return;
    for (std::size_t k = 0; k < occurring.size(); ++k) assignment[occurring[k]] = values[k];
    if (eval_checked(algebra, lhs, assignment, scratch) !=
        eval_checked(algebra, rhs, assignment, scratch)) {
      result.holds = false;
      result.counterexample = assignment;
    }
  });
  return result;
}

namespace {

Identity ident(std::string_view lhs, std::string_view rhs) {
  return Identity{parse_term(lhs), parse_term(rhs)};
}

std::vector<Identity> lattice_laws() {
  return {
      ident("meet(meet(x1,x2),x3)", "meet(x1,meet(x2,x3))"),
      ident("join(join(x1,x2),x3)", "join(x1,join(x2,x3))"),
      ident("meet(x1,x2)", "meet(x2,x1)"),
      ident("join(x1,x2)", "join(x2,x1)"),
      ident("meet(x1,x1)", "x1"),
      ident("join(x1,x1)", "x1"),
      ident("meet(x1,join(x1,x2))", "x1"),
      ident("join(x1,meet(x1,x2))", "x1"),
      ident("meet(x1,bot)", "bot"),
      ident("join(x1,top)", "top"),
  };
}

}  // namespace

VarietySpec variety_spec(std::string_view id) {
  if (id == "rrb") {
    return VarietySpec{band_signature(),
                       {ident("mul(mul(x1,x2),x3)", "mul(x1,mul(x2,x3))"),
                        ident("mul(x1,x1)", "x1"),
                        ident("mul(mul(x1,x2),x1)", "mul(x2,x1)")},
                       std::string(id)};
  }
  if (id == "semilattice") {
    return VarietySpec{band_signature(),
                       {ident("mul(mul(x1,x2),x3)", "mul(x1,mul(x2,x3))"),
                        ident("mul(x1,x1)", "x1"), ident("mul(x1,x2)", "mul(x2,x1)")},
                       std::string(id)};
  }
  if (id == "bounded-lattice") {
    return VarietySpec{lattice_signature(), lattice_laws(), std::string(id)};
  }
  if (id == "bounded-dl") {
    auto laws = lattice_laws();
    laws.push_back(ident("meet(x1,join(x2,x3))", "join(meet(x1,x2),meet(x1,x3))"));
    return VarietySpec{lattice_signature(), std::move(laws), std::string(id)};
  }
  fail(ErrorCode::InvalidArgument, "unknown variety '" + std::string(id) + "'");
}

std::vector<std::string> registry_varieties() { return {"rrb", "semilattice", "bounded-dl"}; }

VarietyReport check_variety_membership(const FiniteAlgebra& algebra, const VarietySpec& variety) {
  if (algebra.signature() != variety.signature)
    fail(ErrorCode::SignatureMismatch, "algebra signature " + algebra.signature().to_string() +
                                           " differs from variety signature " +
                                           variety.signature.to_string());
  VarietyReport report;
  for (std::size_t i = 0; i < variety.identities.size(); ++i) {
    const auto& id = variety.identities[i];
    auto check = holds_identity(algebra, id.lhs, id.rhs);
    if (!check.holds) {
      report.pass = false;
      report.failures.push_back({i, id, std::move(check.counterexample)});
    }
  }
  return report;
}

bool is_member(const FiniteAlgebra& algebra, std::string_view variety_id) {
  const auto spec = variety_spec(variety_id);
  if (algebra.signature() != spec.signature) return false;
  return check_variety_membership(algebra, spec).pass;
}

}  // namespace rrbkit
