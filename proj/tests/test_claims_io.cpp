#include <doctest.h>

#include <limits>
#include <sstream>

#include "bernegger/claims_io.hpp"
#include "bernegger/errors.hpp"
#include "bernegger/exposure_core.hpp"
#include "bernegger/format.hpp"
#include "bernegger/mbbefd.hpp"
#include "support/oracle.hpp"
#include "support/temp_dir.hpp"

using namespace bernegger;

TEST_SUITE("claims_io") {
  TEST_CASE("transform_claim") {
    CHECK(transform_claim({7000, 2000, 5000}) == 1.0);
    CHECK(transform_claim({1500, 2000, 5000}) == 0.0);
    CHECK(transform_claim({4000, 2000, 5000}) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(transform_claim({7000, 2000, 5000 + 1e-9}) < 1.0);
    CHECK_THROWS_AS(transform_claim({100, 0, 5000}), DataError);
    CHECK_THROWS_AS(transform_claim({100, 10, -1}), DataError);
  }

  TEST_CASE("transform is monotone and scale invariant") {
    oracle::Draws draws(41);
    for (int k = 0; k < 500; ++k) {
      const double d = draws.uniform(1, 1000), m = draws.uniform(1, 5000);
      const double y1 = draws.uniform(0, 8000), y2 = draws.uniform(0, 8000);
      const double lo = std::min(y1, y2), hi = std::max(y1, y2);
      CHECK(transform_claim({lo, d, m}) <= transform_claim({hi, d, m}));
      const double c = draws.log_uniform(1e-3, 1e3);
      CHECK(transform_claim({c * y1, c * d, c * m}) == doctest::Approx(transform_claim({y1, d, m})).epsilon(1e-12));
    }
  }

  TEST_CASE("raw schema") {
    std::istringstream in("loss,deductible,cover\n7000,2000,5000\n1500,2000,5000\n4000,2000,5000\n");
    const auto s = read_claims(in, Schema::raw);
    REQUIRE(s.z_values.size() == 2);
    CHECK(s.z_values[0] == 1.0);
    CHECK(s.z_values[1] == doctest::Approx(0.4));
    CHECK(s.dropped_zero == 1);
  }

  TEST_CASE("errors") {
    std::istringstream empty("");
    CHECK_THROWS_AS(read_claims(empty, Schema::z), DataError);
    std::istringstream header_only("z\n");
    CHECK_THROWS_AS(read_claims(header_only, Schema::z), DataError);

    std::istringstream outside("z\n0.5\n1.0000000000001\n");
    try {
      read_claims(outside, Schema::z);
      FAIL("expected DataError");
    } catch (const ParseError&) {
      FAIL("range violations are data errors, not parse errors");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::istringstream ulp_above("z\n1.0000000000000002\n");
    CHECK_THROWS_AS(read_claims(ulp_above, Schema::z), DataError);
    std::istringstream tiny_negative("z\n-1e-300\n");
    CHECK_THROWS_AS(read_claims(tiny_negative, Schema::z), DataError);

    std::istringstream malformed("loss,deductible,cover\n10,1,5\n10,abc,5\n");
    try {
      read_claims(malformed, Schema::raw);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("deductible") != std::string::npos);
    }
    std::istringstream columns("z\n0.5,0.2\n");
    CHECK_THROWS_AS(read_claims(columns, Schema::z), ParseError);
    std::istringstream wrong_header("x\n0.5\n");
    CHECK_THROWS_AS(read_claims(wrong_header, Schema::z), ParseError);
    std::istringstream bad_record("loss,deductible,cover\n10,0,5\n");
    CHECK_THROWS_AS(read_claims(bad_record, Schema::raw), ParseError);
    CHECK_THROWS_AS(load_claims("/nonexistent/file.csv", Schema::z), DataError);
  }

  TEST_CASE("z schema drops zeros and tolerates CRLF and blank lines") {
    std::istringstream in("z\r\n0.25\r\n\r\n0\r\n1\r\n");
    const auto s = read_claims(in, Schema::z);
    CHECK(s.z_values == std::vector<double>{0.25, 1.0});
    CHECK(s.dropped_zero == 1);
  }

  TEST_CASE("number formatting") {
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(parse_double(" +0.25\r") == 0.25);
    CHECK_THROWS_AS(parse_double("0.25x"), DataError);
  }

  TEST_CASE("bit-exact round trip") {
    TempDir dir;
    auto z = sample(mbbefd_distribution({0.1, 3.0}), 20000, 42);
    z.push_back(0.1);
    z.push_back(1.0 / 3.0);
    z.push_back(5e-324);
    write_z_csv(dir.file("z.csv"), z);
    const auto back = load_claims(dir.file("z.csv"), Schema::z);
    CHECK(back.z_values == z);
  }
}
