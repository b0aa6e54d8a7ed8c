#include <doctest.h>

#include <sstream>

#include "cli.hpp"
#include "helpers.hpp"
#include "u2/error.hpp"
#include "u2/families.hpp"
#include "u2/ordinary.hpp"
#include "u2/specfile.hpp"

using namespace u2;
using u2::test::gf2;
using u2::test::gf4;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::BadParameters;
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

const char* kH3 = R"({
  "format": 1,
  "field": {"kind": "gf2k", "k": 1, "modulus": [1, 1]},
  "restricted": true,
  "dim": 3,
  "names": ["e1", "e2", "e3"],
  "brackets": [{"i": 0, "j": 1, "value": {"2": "1"}}],
  "pmap": [{}, {}, {}]
})";

int run(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int rc = cli::run(args, o, e);
  if (out) *out = o.str();
  return rc;
}

}  // namespace

TEST_SUITE("specfile") {
  TEST_CASE("h3 parses and round trips bit exactly") {
    const AlgebraSpec s = parse_spec(kH3);
    CHECK(s.restricted);
    CHECK(s.algebra.dim() == 3);
    CHECK(s.algebra.bracket_basis(0, 1) == s.algebra.basis_vec(2));
    const std::string once = serialize_spec(s);
    CHECK(serialize_spec(parse_spec(once)) == once);
  }

  TEST_CASE("curated algebras round trip") {
    std::vector<RestrictedLieAlgebra> algebras = {families::fam_v(gf4(), 2), families::n7(gf2()),
                                                  families::example71(), families::fam_ii(gf4(), 1, 2)};
    for (const auto& l : algebras) {
      const std::string text = serialize_spec(l);
      const AlgebraSpec back = parse_spec(text);
      CHECK(serialize_spec(back) == text);
      for (std::size_t i = 0; i < l.dim(); ++i) {
        CHECK(back.algebra.pmap(i) == l.pmap(i));
        for (std::size_t j = 0; j < l.dim(); ++j) CHECK(back.algebra.bracket_basis(i, j) == l.bracket_basis(i, j));
      }
    }
    const std::string ord = serialize_ordinary_spec(ordinary::two_eigenvectors(gf4(), 2));
    const AlgebraSpec o = parse_spec(ord);
    CHECK_FALSE(o.restricted);
    CHECK(serialize_spec(o) == ord);
  }

  TEST_CASE("errors carry their codes") {
    CHECK(code_of("{\n  \"format\": 1,\n") == ErrorCode::SyntaxError);
    CHECK(code_of(replace(kH3, "\"pmap\": [{}, {}, {}]", "\"pmap\": [{}, {}, {}], \"extra\": 1")) ==
          ErrorCode::SyntaxError);
    CHECK(code_of(replace(kH3, ",\n  \"pmap\": [{}, {}, {}]", "")) == ErrorCode::SyntaxError);
    CHECK(code_of(replace(kH3, "\"restricted\": true", "\"restricted\": false")) == ErrorCode::SyntaxError);
    CHECK(code_of(replace(kH3, "{\"2\": \"1\"}", "{\"7\": \"1\"}")) == ErrorCode::IndexOutOfRange);
    CHECK(code_of(replace(kH3, "\"j\": 1", "\"j\": 3")) == ErrorCode::IndexOutOfRange);
    CHECK(code_of(replace(kH3, "\"k\": 1, \"modulus\": [1, 1]", "\"k\": 2, \"modulus\": [1, 0, 1]")) == ErrorCode::ReducibleModulus);
  }

  TEST_CASE("malformed json reports line and column") {
    try {
      parse_spec("{\n  \"format\": 1,\n  oops\n}");
      FAIL("expected SyntaxError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SyntaxError);
      CHECK(std::string(e.what()).find("3:") != std::string::npos);
    }
  }

  TEST_CASE("a jacobi-breaking constant is an axiom violation") {
    const std::string broken = replace(kH3, "{\"2\": \"1\"}", "{\"2\": \"1\"}}, {\"i\": 1, \"j\": 2, \"value\": {\"0\": \"1\"}");
    CHECK(code_of(broken) == ErrorCode::AxiomViolation);
    SpecOptions skip;
    skip.check_axioms = false;
    CHECK_NOTHROW(parse_spec(broken, skip));
  }
}

TEST_SUITE("cli") {
  TEST_CASE("exit codes") {
    CHECK(run({}) == cli::kUsage);
    CHECK(run({"axioms"}) == cli::kUsage);
    CHECK(run({"axioms", "/nonexistent/file.json"}) == cli::kInputError);
    CHECK(run({"example-7-1"}) == cli::kOk);
    CHECK(run({"family", "fam-vi"}) == cli::kUsage);
  }

  TEST_CASE("family output feeds the other commands") {
    const std::string path = "cli_test_h3.json";
    CHECK(run({"family", "heisenberg", "-o", path}) == cli::kOk);
    std::string out;
    CHECK(run({"axioms", path}, &out) == cli::kOk);
    CHECK(run({"solvable", path}, &out) == cli::kOk);
    CHECK(out.find("ReachedZero, derived length 2") != std::string::npos);
    CHECK(run({"classify", path}, &out) == cli::kOk);
    CHECK(out.find("Solvable") != std::string::npos);
    CHECK(run({"sz-index", path}) == cli::kOk);
    CHECK(run({"family", "n7", "-o", "cli_test_n7.json"}) == cli::kOk);
    CHECK(run({"classify", "cli_test_n7.json"}, &out) == cli::kOk);
    CHECK(out.find("NotSolvable") != std::string::npos);
    CHECK(run({"family", "heisenberg", "--ordinary", "-o", "cli_test_oh3.json"}) == cli::kOk);
    CHECK(run({"ordinary", "classify", "cli_test_oh3.json"}, &out) == cli::kOk);
    CHECK(out.find("AbelianCodim1") != std::string::npos);
    CHECK(run({"ordinary", "witness", "cli_test_oh3.json"}) == cli::kOk);
    CHECK(run({"ordinary", "envelope", "cli_test_oh3.json"}) == cli::kOk);
  }

  TEST_CASE("json reports are deterministic") {
    CHECK(run({"family", "fam-iii", "--size", "1", "--variant", "1", "-o", "cli_test_f3.json"}) == cli::kOk);
    std::string a, b;
    CHECK(run({"--json", "classify", "cli_test_f3.json"}, &a) == cli::kOk);
    CHECK(run({"--json", "classify", "cli_test_f3.json"}, &b) == cli::kOk);
    CHECK(a == b);
    CHECK(a.find("\"digest\"") != std::string::npos);
  }
}
