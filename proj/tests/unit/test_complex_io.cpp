#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fdeligne/complex_io.hpp"
#include "fdeligne/models.hpp"

using namespace fdeligne;

namespace {

std::string data(const std::string& f) { return std::string(FDELIGNE_TEST_DATA) + "/" + f; }

int total_dim(const BigradedComplex& c) {
  int t = 0;
  for (const auto& [b, k] : c.dims) t += k;
  return t;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("point file") {
  const ComplexFile f = read_complex_file(data("point.cplx"));
  CHECK(f.complex.name == "point");
  CHECK(f.dimension == 0);
  CHECK(f.complex.dim({0, 0}) == 1);
  CHECK(total_dim(f.complex) == 1);
  CHECK(validate_dolbeault(f.complex).empty());
}

TEST_CASE("square: cohomological file is stored negated") {
  const ComplexFile f = read_complex_file(data("square_messy.cplx"));
  const BigradedComplex& c = f.complex;
  CHECK(c.dim({-1, -1}) == 1);
  CHECK(c.dim({-1, 0}) == 1);
  CHECK(c.dim({0, -1}) == 1);
  CHECK(c.dim({0, 0}) == 1);
  CHECK(total_dim(c) == 4);
  CHECK(validate_dolbeault(c).empty());
  // del (0,1) -> (1,1) carries i
  CHECK(c.del.at({0, -1})(0, 0) == Scalar::i());
}

TEST_CASE("round trip to the canonical fixture") {
  const std::string canon = slurp(data("square.cplx"));
  CHECK(serialize_complex(read_complex_file(data("square_messy.cplx"))) == canon);
  CHECK(serialize_complex(parse_complex_file(canon)) == canon);
  for (const auto& name : kahler_model_names()) {
    const ModelDescriptor m = kahler_model(name);
    const std::string s = serialize_complex(m.algebra.complex, m.algebra.dimension);
    const ComplexFile back = parse_complex_file(s);
    CHECK(serialize_complex(back) == s);
    CHECK(back.dimension == m.algebra.dimension);
    CHECK(back.complex.dims == m.algebra.complex.dims);
  }
}

TEST_CASE("shape errors name the block") {
  try {
    read_complex_file(data("bad_shape.cplx"));
    FAIL("no error");
  } catch (const ParseError& e) {
    const std::string w = e.what();
    CHECK(w.find("[del] block 0 0") != std::string::npos);
    CHECK(w.find("expected 2x1") != std::string::npos);
    CHECK(e.line() == 8);
  }
}

TEST_CASE("parseable but invalid") {
  CHECK_NOTHROW(parse_complex_text(slurp(data("invalid_sigma.cplx"))));
  CHECK_THROWS_AS(read_complex_file(data("invalid_sigma.cplx")), InvalidComplex);
}

TEST_CASE("floats and junk are rejected with a position") {
  try {
    read_complex_file(data("float_entry.cplx"));
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
    CHECK(e.col() == 1);
  }
  CHECK_THROWS_AS(parse_complex_text("[nope]\n"), ParseError);
  CHECK_THROWS_AS(parse_complex_text("0 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_complex_text("[dims]\n0 x 1\n"), ParseError);
  CHECK_THROWS_AS(parse_complex_text("[dims]\n0 0 -1\n"), ParseError);
  CHECK_THROWS_AS(parse_complex_text("[dims]\n0 0 1\n0 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_complex_text("[meta]\ncolour = red\n"), ParseError);
  CHECK_THROWS_AS(parse_complex_text("[dims]\n0 0 1\n[sigma]\n1\n"), ParseError);
  CHECK_THROWS_AS(read_complex_file(data("missing.cplx")), ParseError);
  try {
    parse_complex_text("[dims]\n0 0 1\n[sigma]\nblock 0 0\n1 2\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);  // the block header
  }
}
