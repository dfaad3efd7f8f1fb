#include "rrbkit/rrbkit.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "rrbkit/adjunction.hpp"
#include "rrbkit/commands.hpp"
#include "rrbkit/congruence.hpp"
#include "rrbkit/document.hpp"
#include "rrbkit/error.hpp"
#include "rrbkit/free_algebra.hpp"

struct rrbkit_algebra {
  rrbkit::FiniteAlgebra value;
};

struct rrbkit_structure {
  rrbkit::RelationalStructure value;
};

namespace {

thread_local std::string last_error;

rrbkit_status status_of(rrbkit::ErrorCode code) {
  using rrbkit::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return RRBKIT_ERR_INVALID_ARGUMENT;
    case ErrorCode::SignatureMismatch: return RRBKIT_ERR_SIGNATURE;
    case ErrorCode::OutOfRange: return RRBKIT_ERR_OUT_OF_RANGE;
    case ErrorCode::BoundExceeded: return RRBKIT_ERR_BOUND;
    case ErrorCode::Parse: return RRBKIT_ERR_PARSE;
    case ErrorCode::Validation: return RRBKIT_ERR_VALIDATION;
    case ErrorCode::Undefined: return RRBKIT_ERR_UNDEFINED;
    case ErrorCode::Internal: return RRBKIT_ERR_INTERNAL;
  }
  return RRBKIT_ERR_INTERNAL;
}

// Runs fn, translating exceptions into a status and the thread's last error.
template <typename Fn>
rrbkit_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return RRBKIT_OK;
  } catch (const rrbkit::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return RRBKIT_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) rrbkit::fail(rrbkit::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

}  // namespace

extern "C" {

const char* rrbkit_last_error(void) { return last_error.c_str(); }

void rrbkit_string_free(char* s) { std::free(s); }

rrbkit_status rrbkit_algebra_parse(const char* text, rrbkit_algebra** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new rrbkit_algebra{rrbkit::parse_algebra(text)};
  });
}

rrbkit_status rrbkit_structure_parse(const char* text, rrbkit_structure** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new rrbkit_structure{rrbkit::parse_relational(text)};
  });
}

void rrbkit_algebra_free(rrbkit_algebra* a) { delete a; }
void rrbkit_structure_free(rrbkit_structure* s) { delete s; }

size_t rrbkit_algebra_size(const rrbkit_algebra* a) { return a ? a->value.size() : 0; }
size_t rrbkit_structure_size(const rrbkit_structure* s) { return s ? s->value.size() : 0; }
size_t rrbkit_structure_tuple_count(const rrbkit_structure* s) { return s ? s->value.tuples().size() : 0; }

rrbkit_status rrbkit_algebra_apply(const rrbkit_algebra* a, const char* op, const uint32_t* args, size_t arity,
                                   uint32_t* result) {
  return guarded([&] {
    require(a, "algebra");
    require(op, "op");
    require(result, "result");
    const auto index = a->value.signature().index_of(op);
    if (a->value.signature()[index].arity != arity)
      rrbkit::fail(rrbkit::ErrorCode::InvalidArgument, "wrong number of arguments");
    if (arity) require(args, "args");
    for (size_t k = 0; k < arity; ++k)
      if (args[k] >= a->value.size()) rrbkit::fail(rrbkit::ErrorCode::OutOfRange, "argument out of range");
    *result = a->value.apply(index, std::span<const uint32_t>(args, arity));
  });
}

rrbkit_status rrbkit_algebra_render(const rrbkit_algebra* a, const char* format, char** out) {
  return guarded([&] {
    require(a, "algebra");
    require(format, "format");
    require(out, "out");
    *out = copy_string(rrbkit::render(a->value, rrbkit::parse_render_format(format)));
  });
}

rrbkit_status rrbkit_structure_render(const rrbkit_structure* s, const char* format, char** out) {
  return guarded([&] {
    require(s, "structure");
    require(format, "format");
    require(out, "out");
    *out = copy_string(rrbkit::render(s->value, rrbkit::parse_render_format(format)));
  });
}

rrbkit_status rrbkit_free_algebra(const char* variety, size_t generators, rrbkit_algebra** out) {
  return guarded([&] {
    require(variety, "variety");
    require(out, "out");
    *out = new rrbkit_algebra{rrbkit::free_algebra(variety, generators).algebra};
  });
}

rrbkit_status rrbkit_apply_u(const rrbkit_algebra* a, const char* scheme, rrbkit_structure** out) {
  return guarded([&] {
    require(a, "algebra");
    require(scheme, "scheme");
    require(out, "out");
    *out = new rrbkit_structure{rrbkit::apply_U(a->value, rrbkit::scheme(scheme))};
  });
}

rrbkit_status rrbkit_apply_f(const rrbkit_structure* s, const char* variety, rrbkit_algebra** out, uint32_t* eta) {
  return guarded([&] {
    require(s, "structure");
    require(variety, "variety");
    require(out, "out");
    auto fx = rrbkit::apply_F_object(s->value, variety);
    if (eta) std::copy(fx.eta.begin(), fx.eta.end(), eta);
    *out = new rrbkit_algebra{std::move(fx.algebra)};
  });
}

rrbkit_status rrbkit_check_variety(const rrbkit_algebra* a, const char* variety, int* member) {
  return guarded([&] {
    require(a, "algebra");
    require(variety, "variety");
    require(member, "member");
    const auto spec = rrbkit::variety_spec(variety);
    if (a->value.signature() != spec.signature)
      rrbkit::fail(rrbkit::ErrorCode::SignatureMismatch, "algebra signature differs from the variety's");
    *member = rrbkit::check_variety_membership(a->value, spec).pass ? 1 : 0;
  });
}

rrbkit_status rrbkit_monolith(const rrbkit_algebra* a, int* subdirectly_irreducible) {
  return guarded([&] {
    require(a, "algebra");
    require(subdirectly_irreducible, "result");
    *subdirectly_irreducible = rrbkit::monolith(a->value).subdirectly_irreducible ? 1 : 0;
  });
}

rrbkit_status rrbkit_congruence_count(const rrbkit_algebra* a, size_t* count) {
  return guarded([&] {
    require(a, "algebra");
    require(count, "count");
    *count = rrbkit::all_congruences(a->value).size();
  });
}

rrbkit_status rrbkit_find_isomorphism(const rrbkit_algebra* a, const rrbkit_algebra* b, int* found) {
  return guarded([&] {
    require(a, "algebra");
    require(b, "algebra");
    require(found, "found");
    *found = rrbkit::find_isomorphism(a->value, b->value).has_value() ? 1 : 0;
  });
}

rrbkit_status rrbkit_run_command(int argc, const char* const* argv, int* exit_code, char** out, char** err) {
  return guarded([&] {
    require(exit_code, "exit_code");
    if (argc < 0 || (argc > 0 && !argv)) rrbkit::fail(rrbkit::ErrorCode::InvalidArgument, "bad argument vector");
    std::vector<std::string> args(argv, argv + argc);
    const auto r = rrbkit::run_command(args);
    *exit_code = r.exit_code;
    if (out) *out = copy_string(r.out);
    if (err) *err = copy_string(r.err);
  });
}

}  // extern "C"
