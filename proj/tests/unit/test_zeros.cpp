#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "test_data.hpp"
#include "turanlab/error.hpp"
#include "turanlab/zeros.hpp"

using namespace turanlab;

namespace {
ZeroDataset parse(const std::string& text) {
  std::istringstream in(text);
  return parse_zeros(in, "inline");
}
}  // namespace

TEST_CASE("parsing the zero table format") {
  const auto z = parse("# header\n14.134725\r\n21.022040\n25.010858\n");
  REQUIRE(z.size() == 3);
  CHECK(z[1] == 21.022040);
  CHECK(z.coverage() == 25.010858);
  CHECK(parse("# only comments\n").empty());
  CHECK(parse("").empty());
  try {
    parse("25.0\n21.0\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("21") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("14.5\nabc\n"), ParseError);
  CHECK_THROWS_AS(parse("3.0\n"), ParseError);
  CHECK_THROWS_AS(load_zeros("/nonexistent/zeros.txt"), IoError);
}

TEST_CASE("round trip through the writer") {
  const auto z = parse("14.134725142\n21.022039639\n");
  std::ostringstream out;
  write_zeros(out, z);
  const auto back = parse(out.str());
  REQUIRE(back.size() == 2);
  CHECK(back[0] == z[0]);
  CHECK_THROWS_AS(write_zeros(out, z, 4), InvalidArgument);
}

TEST_CASE("sign-change locator") {
  const auto a = locate_zero_signchange(10, 15, 50);
  REQUIRE(a.ordinates.size() == 1);
  CHECK(a.ordinates[0] == doctest::Approx(oracle::kFirstOrdinate).epsilon(1e-10));
  CHECK(locate_zero_signchange(2, 10, 50).ordinates.empty());
  const auto b = locate_zero_signchange(20, 26, 60);
  REQUIRE(b.ordinates.size() == 2);
  CHECK(b.ordinates[0] == doctest::Approx(oracle::kSecondOrdinate).epsilon(1e-10));
  CHECK(b.ordinates[1] == doctest::Approx(25.010857580145689).epsilon(1e-10));
  CHECK_THROWS_AS(locate_zero_signchange(20, 120, 10), InvalidArgument);
}

TEST_CASE("counting against the ingested table") {
  const auto& zeros = testdata::zeros();
  CHECK(count_N(zeros, 14) == 0);
  CHECK(count_N(zeros, 15) == 1);
  CHECK(count_N(zeros, 100) == 29);
  CHECK(count_N(zeros, zeros[9]) == 10);
  CHECK_THROWS_AS(count_N(zeros, zeros.coverage() + 1), InsufficientData);
  CHECK_THROWS_AS(count_N(ZeroDataset{}, 20), InsufficientData);
}

TEST_CASE("main term and Schoenfeld envelope") {
  CHECK(main_term_M(2 * std::numbers::pi) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(main_term_M(100) == doctest::Approx(28.127).epsilon(1e-4));
  CHECK(q_bound(std::numbers::e) == doctest::Approx(1.725));
  CHECK(q_bound(100) == doctest::Approx(2.895).epsilon(1e-3));
  CHECK_THROWS_AS(q_bound(2.0), DomainError);
  const auto r = check_schoenfeld(testdata::zeros(), 14.0);
  CHECK(r.N == 0);
  CHECK_FALSE(r.violated());
  std::ostringstream out;
  write_count_csv_header(out);
  CHECK(out.str() == "T,N,M,Q,slack\n");
}

TEST_CASE("Schoenfeld slack around every ordinate below 1000") {
  const auto& zeros = testdata::zeros();
  std::size_t checked = 0;
  for (std::size_t i = 0; i + 1 < zeros.size() && zeros[i + 1] < 1000; ++i) {
    for (double T : {zeros[i] - 1e-6, zeros[i] + 1e-6, 0.5 * (zeros[i] + zeros[i + 1])}) {
      if (T < std::numbers::e) continue;
      CHECK_FALSE(check_schoenfeld(zeros, T).violated());
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("short intervals") {
  const auto& zeros = testdata::zeros();
  const auto r = short_interval_count(zeros, 100, 2);
  const double chain = main_term_M(102) - main_term_M(98) + q_bound(102) + q_bound(98);
  CHECK(r.chain_bound == doctest::Approx(chain));
  CHECK(r.chain_holds());
  const auto tiny = short_interval_count(zeros, zeros[20], 1e-9);
  CHECK(tiny.count == 1);
  CHECK_FALSE(tiny.lemma_holds());
  CHECK(tiny.chain_holds());
  for (double c = 20; c + 10 < zeros.coverage() && c < 3000; c += 37.3) {
    for (double d : {0.1, 1.0, 5.0}) CHECK(short_interval_count(zeros, c, d).chain_holds());
  }
  CHECK_THROWS_AS(short_interval_count(zeros, zeros.coverage(), 2), InsufficientData);
}

TEST_CASE("zero-free region exponent") {
  const double root = solve_tj_root(0, 3);
  CHECK(root == doctest::Approx(1.70).epsilon(0.01));
  CHECK(std::abs(3.1 * 3 * std::log(root) - std::pow(root, 3)) <= 1e-10);
  CHECK(solve_tj(0, 3) == kVerifiedHeight);
  for (int j = 0; j < 20; ++j) CHECK(solve_tj(j, 2 + j * 0.5) >= kVerifiedHeight);
  const double tj = solve_tj(0, 3);
  CHECK(h_region(tj, 0, 3, tj) == 0.5);
  CHECK(h_region(2 * tj, 0, 3, tj) == doctest::Approx(9.3 * std::log(2 * tj) / std::pow(2 * tj, 3)));
  const auto rep = zero_free_consistency(testdata::zeros(), 0, 3);
  CHECK(rep.min_margin == 0.0);
  CHECK(rep.violations == 0);
  CHECK(rep.above_t_j == 0);
  CHECK_THROWS_AS(zero_free_consistency(ZeroDataset{}, 0, 3), InsufficientData);
}
