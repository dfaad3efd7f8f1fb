#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "rrbkit/rrbkit.h"

namespace {

const char* kAbsorbingPair =
    R"({"kind":"algebra","signature":[{"name":"mul","arity":2}],"size":3,"labels":["0","a","b"],)"
    R"("tables":{"mul":[[0,0,0],[0,1,2],[0,1,2]]}})";
const char* kVPoset = R"({"kind":"poset-shorthand","elements":["x","y","0"],"covers":[["0","x"],["0","y"]]})";

}  // namespace

TEST_CASE("handles and queries") {
  rrbkit_algebra* a = nullptr;
  REQUIRE(rrbkit_algebra_parse(kAbsorbingPair, &a) == RRBKIT_OK);
  CHECK(rrbkit_algebra_size(a) == 3);
  const uint32_t args[] = {1, 2};
  uint32_t r = 99;
  CHECK(rrbkit_algebra_apply(a, "mul", args, 2, &r) == RRBKIT_OK);
  CHECK(r == 2);
  int member = -1;
  CHECK(rrbkit_check_variety(a, "rrb", &member) == RRBKIT_OK);
  CHECK(member == 1);
  CHECK(rrbkit_check_variety(a, "semilattice", &member) == RRBKIT_OK);
  CHECK(member == 0);
  size_t count = 0;
  CHECK(rrbkit_congruence_count(a, &count) == RRBKIT_OK);
  CHECK(count == 3);
  int si = -1;
  CHECK(rrbkit_monolith(a, &si) == RRBKIT_OK);
  CHECK(si == 1);
  char* text = nullptr;
  CHECK(rrbkit_algebra_render(a, "table", &text) == RRBKIT_OK);
  CHECK(std::string(text).rfind("mul |", 0) == 0);
  rrbkit_string_free(text);

  rrbkit_structure* u = nullptr;
  REQUIRE(rrbkit_apply_u(a, "posemigroup-order", &u) == RRBKIT_OK);
  CHECK(rrbkit_structure_size(u) == 3);
  CHECK(rrbkit_structure_tuple_count(u) == 5);
  rrbkit_structure_free(u);
  rrbkit_algebra_free(a);
}

TEST_CASE("F through the C API") {
  rrbkit_structure* v = nullptr;
  REQUIRE(rrbkit_structure_parse(kVPoset, &v) == RRBKIT_OK);
  rrbkit_algebra* fv = nullptr;
  std::vector<uint32_t> eta(3, 99);
  REQUIRE(rrbkit_apply_f(v, "rrb", &fv, eta.data()) == RRBKIT_OK);
  CHECK(rrbkit_algebra_size(fv) == 5);
  for (uint32_t e : eta) CHECK(e < 5);
  rrbkit_algebra* free2 = nullptr;
  REQUIRE(rrbkit_free_algebra("rrb", 2, &free2) == RRBKIT_OK);
  int iso = -1;
  CHECK(rrbkit_find_isomorphism(fv, free2, &iso) == RRBKIT_OK);
  CHECK(iso == 0);
  CHECK(rrbkit_find_isomorphism(fv, fv, &iso) == RRBKIT_OK);
  CHECK(iso == 1);
  char* dot = nullptr;
  CHECK(rrbkit_structure_render(v, "dot", &dot) == RRBKIT_OK);
  CHECK(std::string(dot).find("digraph") != std::string::npos);
  rrbkit_string_free(dot);
  rrbkit_algebra_free(free2);
  rrbkit_algebra_free(fv);
  rrbkit_structure_free(v);
}

TEST_CASE("errors map to status codes and last_error") {
  rrbkit_algebra* a = nullptr;
  CHECK(rrbkit_algebra_parse("{\"kind\":", &a) == RRBKIT_ERR_PARSE);
  CHECK(a == nullptr);
  CHECK(std::strlen(rrbkit_last_error()) > 0);
  CHECK(rrbkit_algebra_parse(nullptr, &a) == RRBKIT_ERR_INVALID_ARGUMENT);
  CHECK(rrbkit_free_algebra("rrb", 9, &a) == RRBKIT_ERR_BOUND);
  CHECK(rrbkit_free_algebra("groups", 1, &a) == RRBKIT_ERR_INVALID_ARGUMENT);
  REQUIRE(rrbkit_algebra_parse(kAbsorbingPair, &a) == RRBKIT_OK);
  CHECK(std::strlen(rrbkit_last_error()) == 0);
  const uint32_t args[] = {1, 7};
  uint32_t r = 0;
  CHECK(rrbkit_algebra_apply(a, "mul", args, 2, &r) == RRBKIT_ERR_OUT_OF_RANGE);
  CHECK(rrbkit_algebra_apply(a, "mul", args, 1, &r) == RRBKIT_ERR_INVALID_ARGUMENT);
  int member = 0;
  CHECK(rrbkit_check_variety(a, "bounded-dl", &member) == RRBKIT_ERR_SIGNATURE);
  rrbkit_structure* s = nullptr;
  CHECK(rrbkit_structure_parse(
            R"({"kind":"poset-shorthand","elements":["a","b"],"covers":[["a","b"],["b","a"]]})", &s) ==
        RRBKIT_ERR_VALIDATION);
  rrbkit_algebra* one = nullptr;
  REQUIRE(rrbkit_free_algebra("rrb", 1, &one) == RRBKIT_OK);
  int si = 0;
  CHECK(rrbkit_monolith(one, &si) == RRBKIT_ERR_UNDEFINED);
  rrbkit_algebra_free(one);
  rrbkit_algebra_free(a);
  rrbkit_algebra_free(nullptr);
  CHECK(rrbkit_algebra_size(nullptr) == 0);
}

TEST_CASE("run_command through the C API") {
  const char* argv[] = {"lattice", "--kind", "M", "--n", "3", "--render", "table"};
  int code = -1;
  char* out = nullptr;
  char* err = nullptr;
  REQUIRE(rrbkit_run_command(7, argv, &code, &out, &err) == RRBKIT_OK);
  CHECK(code == 0);
  CHECK(std::string(out).rfind("meet |", 0) == 0);
  CHECK(std::string(err).empty());
  rrbkit_string_free(out);
  rrbkit_string_free(err);
  const char* bad[] = {"nope"};
  REQUIRE(rrbkit_run_command(1, bad, &code, nullptr, nullptr) == RRBKIT_OK);
  CHECK(code == 2);
  CHECK(rrbkit_run_command(1, nullptr, &code, nullptr, nullptr) == RRBKIT_ERR_INVALID_ARGUMENT);
}
