#include "rrbkit/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <sstream>

#include "rrbkit/adjunction.hpp"
#include "rrbkit/band.hpp"
#include "rrbkit/congruence.hpp"
#include "rrbkit/constructions.hpp"
#include "rrbkit/document.hpp"
#include "rrbkit/error.hpp"
#include "rrbkit/free_algebra.hpp"

namespace rrbkit {

namespace {

using ojson = nlohmann::ordered_json;

struct Options {
  std::string input, algebra, variety, scheme, render, out, mode, kind, central, i1, i2, names;
  std::size_t max_size = 0, generators = 0, x_size = 0, n = 0, m = 0;
  bool certify = false, pairs = false, monolith = false;
};

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string require(const std::string& value, const char* flag) {
  if (value.empty()) fail(ErrorCode::InvalidArgument, std::string("missing ") + flag);
  return value;
}

FiniteAlgebra load_algebra(const std::string& path) { return parse_algebra(read_file(require(path, "--input"))); }
RelationalStructure load_structure(const std::string& path) {
  return parse_relational(read_file(require(path, "--input")));
}

RenderFormat format_or(const Options& o, RenderFormat fallback) {
  return o.render.empty() ? fallback : parse_render_format(o.render);
}

Element resolve(const FiniteAlgebra& a, const std::string& token) {
  if (auto e = a.find_label(token)) return *e;
  if (!token.empty() && std::all_of(token.begin(), token.end(), ::isdigit)) {
    const auto e = std::stoul(token);
    if (e < a.size()) return static_cast<Element>(e);
  }
  fail(ErrorCode::InvalidArgument, "unknown element '" + token + "'");
}

std::vector<Element> resolve_list(const FiniteAlgebra& a, const std::string& list) {
  std::vector<Element> out;
  std::stringstream ss(list);
  std::string token;
  while (std::getline(ss, token, ','))
    if (!token.empty()) out.push_back(resolve(a, token));
  return out;
}

std::string set_text(const FiniteAlgebra& a, const std::vector<Element>& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + a.label(s[k]);
  return out + "}";
}

std::string blocks_text(const FiniteAlgebra& a, const Partition& p) {
  std::string out;
  for (const auto& b : p.blocks()) out += set_text(a, b);
  return out;
}

ojson blocks_json(const FiniteAlgebra& a, const Partition& p) {
  ojson out = ojson::array();
  for (const auto& b : p.blocks()) {
    ojson block = ojson::array();
    for (Element e : b) block.push_back(a.label(e));
    out.push_back(block);
  }
  return out;
}

// Key/value report: JSON object with --render json, "key: value" lines otherwise.
class Report {
 public:
  void add(const std::string& key, ojson value, std::string text) {
    json_[key] = std::move(value);
    lines_ += key + ": " + text + "\n";
  }
  void add(const std::string& key, bool value) { add(key, value, value ? "yes" : "no"); }
  void add(const std::string& key, std::size_t value) { add(key, value, std::to_string(value)); }
  void line(const std::string& text) { lines_ += text + "\n"; }
  std::string str(bool as_json) const { return as_json ? json_.dump(2) + "\n" : lines_; }

 private:
  ojson json_ = ojson::object();
  std::string lines_;
};

bool wants_json(const Options& o) { return o.render == "json"; }

struct Outcome {
  int code = 0;
  std::string text;
};

Outcome cmd_free(const Options& o) {
  std::vector<std::string> names;
  if (!o.names.empty()) {
    std::stringstream ss(o.names);
    for (std::string t; std::getline(ss, t, ',');) names.push_back(t);
  }
  const auto f = free_algebra(require(o.variety, "--variety"), o.generators, names);
  const auto fmt = format_or(o, RenderFormat::Json);
  if (fmt != RenderFormat::Json) return {0, render(f.algebra, fmt)};
  ojson terms = ojson::array();
  for (const auto& t : f.terms) terms.push_back(t.to_string());
  return {0, render_json_with(f.algebra, {{"generators", ojson(f.generators).dump()}, {"terms", terms.dump()}})};
}

Outcome cmd_apply_u(const Options& o) {
  const auto a = load_algebra(o.input);
  return {0, render(apply_U(a, scheme(require(o.scheme, "--scheme"))), format_or(o, RenderFormat::Json))};
}

RelationalStructure with_scheme(RelationalStructure s, const std::string& name) {
  if (name.empty()) return s;
  auto sch = scheme(name);
  if (sch.arity != s.arity()) fail(ErrorCode::InvalidArgument, "scheme arity differs from the tuples");
  return RelationalStructure(s.size(), std::move(sch), s.tuples(), s.labels());
}

Outcome cmd_apply_f(const Options& o) {
  const auto s = with_scheme(load_structure(o.input), o.scheme);
  const auto fx = apply_F_object(s, require(o.variety, "--variety"));
  const auto fmt = format_or(o, RenderFormat::Json);
  if (fmt == RenderFormat::Json) return {0, render_json_with(fx.algebra, {{"eta", ojson(fx.eta).dump()}})};
  std::string text = render(fx.algebra, fmt);
  if (fmt == RenderFormat::Table) {
    text += "\n";
    for (Element x = 0; x < s.size(); ++x) text += "eta(" + s.label(x) + ") = " + fx.algebra.label(fx.eta[x]) + "\n";
  }
  return {0, text};
}

Outcome cmd_check_adjunction(const Options& o) {
  const auto s = with_scheme(load_structure(o.input), o.scheme);
  const auto a = parse_algebra(read_file(require(o.algebra, "--algebra")));
  const auto r = verify_adjunction(s, a, require(o.variety, "--variety"));
  Report rep;
  rep.add("pass", r.pass);
  rep.add("hom(FX,A)", r.algebra_homs);
  rep.add("hom(X,UA)", r.relational_homs);
  rep.add("bijection", r.bijection);
  rep.add("inverse-round-trip", r.inverse_round_trip);
  rep.add("unit-squares", r.unit_squares);
  rep.add("naturality-algebra", r.naturality_algebra);
  rep.add("naturality-structure", r.naturality_structure);
  rep.add("probes", r.probes_checked);
  for (const auto& f : r.failures) rep.line("failure: " + f);
  return {r.pass ? 0 : 1, rep.str(wants_json(o))};
}

Outcome cmd_check_variety(const Options& o) {
  const auto a = load_algebra(o.input);
  const auto spec = variety_spec(require(o.variety, "--variety"));
  if (a.signature() != spec.signature)
    fail(ErrorCode::SignatureMismatch, "algebra signature " + a.signature().to_string() + " differs from " +
                                           spec.signature.to_string());
  const auto r = check_variety_membership(a, spec);
  Report rep;
  rep.add("member", r.pass);
  ojson failures = ojson::array();
  for (const auto& f : r.failures) {
    std::string where;
    for (std::size_t k = 0; k < f.counterexample.size(); ++k)
      where += (k ? ", x" : "x") + std::to_string(k + 1) + "=" + a.label(f.counterexample[k]);
    failures.push_back(ojson{{"identity", f.identity.to_string()}, {"counterexample", where}});
    rep.line("fails: " + f.identity.to_string() + " at " + where);
  }
  if (wants_json(o)) rep.add("failures", failures, "");
  return {r.pass ? 0 : 1, rep.str(wants_json(o))};
}

Outcome cmd_congruences(const Options& o) {
  const auto a = load_algebra(o.input);
  if (o.max_size && a.size() > o.max_size)
    fail(ErrorCode::BoundExceeded, "algebra has " + std::to_string(a.size()) + " elements, above --max-size");
  Report rep;
  if (o.monolith) {
    const auto r = monolith(a);
    rep.add("subdirectly-irreducible", r.subdirectly_irreducible);
    rep.add("monolith", blocks_json(a, r.intersection), blocks_text(a, r.intersection));
    return {r.subdirectly_irreducible ? 0 : 1, rep.str(wants_json(o))};
  }
  if (o.pairs) {
    const auto pairs = complementary_factor_pairs(a);
    ojson list = ojson::array();
    for (const auto& [t, d] : pairs) {
      list.push_back(ojson::array({blocks_json(a, t), blocks_json(a, d)}));
      rep.line(blocks_text(a, t) + " x " + blocks_text(a, d));
    }
    rep.add("complementary-pairs", list, std::to_string(pairs.size()));
    return {0, rep.str(wants_json(o))};
  }
  const auto all = all_congruences(a);
  ojson list = ojson::array();
  for (const auto& p : all) {
    list.push_back(blocks_json(a, p));
    rep.line(blocks_text(a, p));
  }
  rep.add("congruences", list, std::to_string(all.size()));
  return {0, rep.str(wants_json(o))};
}

Element pick_central(const FiniteAlgebra& a, const std::string& token) {
  if (!token.empty()) return resolve(a, token);
  const auto cs = central_elements(a);
  if (cs.size() == 1) return cs.front();
  if (cs.empty()) fail(ErrorCode::InvalidArgument, "algebra has no central element");
  fail(ErrorCode::InvalidArgument, "several central elements " + set_text(a, cs) + "; choose one with --central");
}

void add_certificate(Report& rep, const FiniteAlgebra& a, const DecompositionCertificate& cert, const std::string& prefix) {
  std::string axioms;
  ojson ax = ojson::object();
  for (const auto& x : cert.axioms) {
    axioms += (axioms.empty() ? "" : " ") + x.name + "=" + (x.holds ? "ok" : "fails(" + x.witness + ")");
    ax[x.name] = x.holds;
  }
  ojson entry{{"i1", set_text(a, cert.i1)}, {"i2", set_text(a, cert.i2)}, {"valid", cert.valid}, {"axioms", ax}};
  if (cert.valid) {
    entry["bijective"] = cert.bijective;
    entry["preserves-products"] = cert.preserves_products;
  }
  rep.add(prefix, entry,
          set_text(a, cert.i1) + " x " + set_text(a, cert.i2) + (cert.valid ? " valid" : " invalid") + " [" + axioms + "]");
}

Outcome cmd_decompose(const Options& o) {
  const auto a = load_algebra(o.input);
  if (o.max_size && a.size() > o.max_size)
    fail(ErrorCode::BoundExceeded, "algebra has " + std::to_string(a.size()) + " elements, above --max-size");
  const Element c = pick_central(a, o.central);
  Report rep;
  rep.add("central", a.label(c), a.label(c));
  if (o.i1.size() || o.i2.size()) {
    const auto cert = check_c_direct_product(a, c, resolve_list(a, require(o.i1, "--i1")), resolve_list(a, require(o.i2, "--i2")));
    add_certificate(rep, a, cert, "certificate");
    return {cert.valid ? 0 : 1, rep.str(wants_json(o))};
  }
  if (o.mode == "direct") {
    const auto certs = decompose_direct(a, c);
    for (std::size_t k = 0; k < certs.size(); ++k) add_certificate(rep, a, certs[k], "decomposition " + std::to_string(k + 1));
    rep.add("count", certs.size());
    return {0, rep.str(wants_json(o))};
  }
  if (!o.mode.empty() && o.mode != "congruence") fail(ErrorCode::InvalidArgument, "--mode is congruence or direct");
  const auto all = decompose_all(a, c);
  bool sound = true;
  for (std::size_t k = 0; k < all.size(); ++k) {
    add_certificate(rep, a, all[k].certificate, "decomposition " + std::to_string(k + 1));
    sound &= all[k].certificate.valid && all[k].round_trip;
  }
  rep.add("count", all.size());
  rep.add("round-trips", sound);
  return {sound ? 0 : 1, rep.str(wants_json(o))};
}

Outcome cmd_factor_congruences(const Options& o) {
  const auto a = load_algebra(o.input);
  const Element c = pick_central(a, o.central);
  const auto i1 = resolve_list(a, require(o.i1, "--i1"));
  const auto i2 = resolve_list(a, require(o.i2, "--i2"));
  Report rep;
  const auto cert = check_c_direct_product(a, c, i1, i2);
  if (!cert.valid || !cert.bijective) {
    add_certificate(rep, a, cert, "certificate");
    return {1, rep.str(wants_json(o))};
  }
  const auto [theta, delta] = factors_to_congruences(a, c, i1, i2);
  rep.add("theta", blocks_json(a, theta), blocks_text(a, theta));
  rep.add("delta", blocks_json(a, delta), blocks_text(a, delta));
  return {0, rep.str(wants_json(o))};
}

Outcome cmd_si_build(const Options& o) {
  const auto si = build_si_rrb(o.x_size);
  const auto fmt = format_or(o, RenderFormat::Table);
  std::string text = render(si.algebra, fmt);
  if (!o.certify) return {0, text};
  const auto mono = monolith(si.algebra);
  const auto base = principal_congruence(si.algebra, 0, 1);
  bool contained = true;
  for (Element u = 0; u < si.algebra.size(); ++u)
    for (Element v = u + 1; v < si.algebra.size(); ++v)
      contained &= base.refines(principal_congruence(si.algebra, u, v));
  Report rep;
  rep.add("rrb", is_member(si.algebra, "rrb"));
  rep.add("subdirectly-irreducible", mono.subdirectly_irreducible);
  rep.add("monolith", blocks_json(si.algebra, mono.intersection), blocks_text(si.algebra, mono.intersection));
  rep.add("Cg(a0,a1) in every Cg(u,v)", contained);
  const bool ok = mono.subdirectly_irreducible && contained;
  if (fmt == RenderFormat::Json) {
    ojson cert = ojson::object();
    cert["subdirectly-irreducible"] = mono.subdirectly_irreducible;
    cert["monolith"] = blocks_json(si.algebra, mono.intersection);
    cert["least-congruence-contained"] = contained;
    return {ok ? 0 : 1, render_json_with(si.algebra, {{"certificate", cert.dump()}})};
  }
  return {ok ? 0 : 1, text + "\n" + rep.str(false)};
}

Outcome cmd_equiv_rrb(const Options& o) {
  const auto s = load_structure(o.input);
  const auto report = validate_structure(s, StructureKind::Equivalence);
  if (!report.ok) fail(ErrorCode::Validation, "not an equivalence relation: " + report.axiom + " fails");
  // Blocks in order of least member.
  std::vector<std::vector<Element>> blocks;
  std::vector<char> placed(s.size(), 0);
  for (Element a = 0; a < s.size(); ++a) {
    if (placed[a]) continue;
    std::vector<Element> block;
    for (Element b = a; b < s.size(); ++b)
      if (s.related(a, b)) {
        block.push_back(b);
        placed[b] = 1;
      }
    blocks.push_back(std::move(block));
  }
  return {0, render(rrb_from_equivalence(blocks, s.labels()), format_or(o, RenderFormat::Json))};
}

FiniteAlgebra lattice_from_options(const Options& o) {
  const auto kind = require(o.kind, "--kind");
  if (kind == "M") return build_lattice(LatticeKind::M, o.n);
  if (kind == "chain") return build_lattice(LatticeKind::Chain, o.n);
  if (kind == "parallel-sum") return build_lattice(LatticeKind::ParallelSum, o.n, o.m);
  fail(ErrorCode::InvalidArgument, "--kind is M, chain or parallel-sum");
}

Outcome cmd_lattice(const Options& o) { return {0, render(lattice_from_options(o), format_or(o, RenderFormat::Json))}; }

Outcome cmd_complement_graph(const Options& o) {
  const auto lattice = o.input.empty() ? lattice_from_options(o) : load_algebra(o.input);
  return {0, render(complement_graph(lattice), format_or(o, RenderFormat::Json))};
}

Outcome cmd_graph_search(const Options& o) {
  const auto target = load_structure(o.input);
  const std::size_t bound = o.max_size ? o.max_size : 6;
  GraphMatch mode = GraphMatch::Component;
  if (o.mode == "exact") mode = GraphMatch::Exact;
  else if (!o.mode.empty() && o.mode != "component") fail(ErrorCode::InvalidArgument, "--mode is component or exact");
  const auto r = search_complement_graph(target, bound, mode);
  if (!r.found)
    return {1, "no lattice with at most " + std::to_string(bound) + " elements realizes the target (" +
                   std::to_string(r.lattices_examined) + " lattices examined)\n"};
  const auto fmt = format_or(o, RenderFormat::Table);
  if (fmt == RenderFormat::Json)
    return {0, render_json_with(r.found->lattice, {{"complement-graph", ojson(r.found->graph.tuples()).dump()}})};
  return {0, render(r.found->lattice, fmt) + "\n" + render(r.found->graph, fmt)};
}

Outcome cmd_check_associative(const Options& o) {
  const auto s = load_structure(o.input);
  const auto r = find_rrb_structure(s);
  if (!r) return {1, "no RRB structure exists\n"};
  return {0, render(*r, format_or(o, RenderFormat::Table))};
}

int exit_for(ErrorCode) { return 2; }

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Finite right regular bands, their relational reducts and the free constructions between them",
               "rrbkit"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "input document (- for standard input)");
    sub->add_option("--variety", o.variety, "rrb, semilattice, bounded-lattice or bounded-dl");
    sub->add_option("--scheme", o.scheme, "identity scheme from the registry");
    sub->add_option("--render", o.render, "json, dot or table")->check(CLI::IsMember({"json", "dot", "table"}));
    sub->add_option("--out", o.out, "write output to a file");
    sub->add_option("--max-size", o.max_size, "size bound");
  };
  auto lattice_opts = [&](CLI::App* sub) {
    sub->add_option("--kind", o.kind, "M, chain or parallel-sum");
    sub->add_option("--n", o.n, "first parameter");
    sub->add_option("--m", o.m, "second parameter (parallel-sum)");
  };
  std::vector<std::pair<CLI::App*, Outcome (*)(const Options&)>> commands;
  auto add = [&](const char* name, const char* help, Outcome (*fn)(const Options&)) {
    auto* sub = app.add_subcommand(name, help);
    common(sub);
    commands.emplace_back(sub, fn);
    return sub;
  };
  auto* free = add("free", "free algebra on n generators", cmd_free);
  free->add_option("--generators", o.generators, "generator count")->required();
  free->add_option("--names", o.names, "comma-separated generator names");
  add("apply-u", "relational reduct of an algebra", cmd_apply_u);
  add("apply-f", "free algebra on a relational structure", cmd_apply_f);
  add("check-adjunction", "verify the hom-set bijection and naturality", cmd_check_adjunction)
      ->add_option("--algebra", o.algebra, "algebra document")->required();
  add("check-variety", "check the identities of a variety", cmd_check_variety);
  auto* cong = add("congruences", "congruence lattice, factor pairs or monolith", cmd_congruences);
  cong->add_flag("--pairs", o.pairs, "complementary factor congruence pairs");
  cong->add_flag("--monolith", o.monolith, "monolith and subdirect irreducibility");
  auto* dec = add("decompose", "c-direct product decompositions", cmd_decompose);
  dec->add_option("--central", o.central, "central element");
  dec->add_option("--mode", o.mode, "congruence or direct");
  dec->add_option("--i1", o.i1, "first factor (comma-separated elements)");
  dec->add_option("--i2", o.i2, "second factor");
  auto* fc = add("factor-congruences", "factor congruences of a decomposition", cmd_factor_congruences);
  fc->add_option("--central", o.central, "central element");
  fc->add_option("--i1", o.i1, "first factor (comma-separated elements)")->required();
  fc->add_option("--i2", o.i2, "second factor")->required();
  auto* si = add("si-build", "subdirectly irreducible RRB on self-maps", cmd_si_build);
  si->add_option("--x-size", o.x_size, "size of X (at least 3)")->required();
  si->add_flag("--certify", o.certify, "certify subdirect irreducibility");
  add("equiv-rrb", "ordered-sum RRB of an equivalence relation", cmd_equiv_rrb);
  lattice_opts(add("lattice", "M_n, chains and bounded parallel sums", cmd_lattice));
  lattice_opts(add("complement-graph", "complementation graph of a bounded lattice", cmd_complement_graph));
  add("graph-search", "search lattices for a complement graph", cmd_graph_search)
      ->add_option("--mode", o.mode, "component or exact");
  add("check-associative", "find an RRB structure on a poset", cmd_check_associative);

  CommandResult result;
  std::ostringstream out, err;
  if (!args.empty() && !args[0].empty() && args[0][0] != '-') {
    const bool known = std::any_of(commands.begin(), commands.end(),
                                   [&](const auto& c) { return c.first->get_name() == args[0]; });
    if (!known) {
      result.exit_code = 2;
      result.err = "unknown command '" + args[0] + "'\n\n" + app.help();
      return result;
    }
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    result.exit_code = code == 0 ? 0 : 2;
    if (code != 0) err << "\n" << app.help();
    result.out = out.str();
    result.err = err.str();
    return result;
  }
  try {
    for (const auto& [sub, fn] : commands) {
      if (!sub->parsed()) continue;
      auto outcome = fn(o);
      result.exit_code = outcome.code;
      if (o.out.empty()) {
        result.out = std::move(outcome.text);
      } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) fail(ErrorCode::InvalidArgument, "cannot write " + o.out);
        file << outcome.text;
      }
    }
  } catch (const Error& e) {
    result.exit_code = exit_for(e.code());
    result.err = std::string("error (") + to_string(e.code()) + "): " + e.what() + "\n";
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.err = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace rrbkit
