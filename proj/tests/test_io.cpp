#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "ribopt/configurations.hpp"
#include "ribopt/error.hpp"
#include "ribopt/io.hpp"

using namespace ribopt;
using doctest::Approx;

TEST_CASE("domain files round-trip") {
  std::istringstream in(
      "# square with a hole\n"
      "outer: 0 0 4 0 4 4 0 4\n"
      "\n"
      "hole: 1 1 2 1 2 2 1 2\n");
  const Domain d = read_domain(in);
  CHECK(d.area() == Approx(15));
  CHECK(d.boundary_components() == 2);
  std::ostringstream out;
  write_domain(out, d);
  std::istringstream back(out.str());
  const Domain again = read_domain(back);
  CHECK(again.area() == Approx(15));
  CHECK(again.holes().size() == 1);
}

TEST_CASE("domain file errors carry line numbers") {
  std::istringstream bad_tag("outer: 0 0 1 0 1 1\nblob: 1 2\n");
  try {
    read_domain(bad_tag);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::istringstream odd("outer: 0 0 1 0 1\n");
  CHECK_THROWS_AS(read_domain(odd), ParseError);
  std::istringstream none("# nothing\n");
  CHECK_THROWS_AS(read_domain(none), ParseError);
}

TEST_CASE("sigma files round-trip") {
  const auto comb = build_comb(3);
  std::ostringstream out;
  write_sigma(out, comb);
  std::istringstream in(out.str());
  const auto back = read_sigma(in);
  CHECK(back.length() == Approx(comb.length()).epsilon(1e-15));
  CHECK(back.num_edges() == comb.num_edges());

  std::istringstream point("v 0.5 0.25\n");
  CHECK(read_sigma(point).length() == 0.0);

  std::istringstream bad("v 0 0\nv 1 0\ne 0 7\n");
  try {
    read_sigma(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("key=value configuration") {
  std::istringstream in(
      "# experiment\n"
      "p = 3\n"
      "h=1/64\n"
      "h_list=1/32, 1/64,1/128\n"
      "rho=kind=affine params=1,1,0\n");
  auto cfg = KeyValueConfig::parse(in);
  CHECK(cfg.get_double("p", 0) == 3.0);
  CHECK(cfg.get_double("h", 0) == 1.0 / 64);
  CHECK(cfg.get_list("h_list", {}) == std::vector<double>{1.0 / 32, 1.0 / 64, 1.0 / 128});
  CHECK(cfg.get_string("rho", "") == "kind=affine params=1,1,0");
  CHECK(cfg.get_int("missing", 42) == 42);
  cfg.set("p", "inf");
  CHECK(std::isinf(cfg.get_double("p", 0)));

  std::istringstream bad("a=1\nnot a pair\n");
  try {
    KeyValueConfig::parse(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream wrong_type("n=abc\n");
  const auto c2 = KeyValueConfig::parse(wrong_type);
  CHECK_THROWS_AS(c2.get_int("n", 0), ParseError);
}

TEST_CASE("real number syntax") {
  CHECK(parse_real("0.25") == 0.25);
  CHECK(parse_real("1/32") == 1.0 / 32);
  CHECK(parse_real("pi") == std::numbers::pi);
  CHECK(parse_real("pi/4") == Approx(std::numbers::pi / 4));
  CHECK(std::isinf(parse_real("inf")));
  CHECK_THROWS_AS(parse_real("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_real("two"), InvalidInput);
}

TEST_CASE("raster format") {
  std::ostringstream out;
  write_raster(out, 2, 3, 0.5, {-0.5, -0.5}, {0, 1, 2, 3, 4, 5});
  std::istringstream in(out.str());
  int rows = 0, cols = 0;
  double h = 0, x0 = 0, y0 = 0;
  in >> rows >> cols >> h >> x0 >> y0;
  CHECK(rows == 2);
  CHECK(cols == 3);
  CHECK(h == 0.5);
  CHECK(x0 == -0.5);
  std::vector<double> v(6);
  for (auto& x : v) in >> x;
  CHECK(v == std::vector<double>{0, 1, 2, 3, 4, 5});
  CHECK_THROWS_AS(write_raster(out, 2, 2, 0.5, {0, 0}, {1, 2, 3}), InvalidInput);
}
