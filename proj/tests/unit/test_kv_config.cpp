#include <sstream>

#include "doctest.h"
#include "turanlab/error.hpp"
#include "turanlab/kv_config.hpp"

using namespace turanlab;

namespace {
KeyValueConfig parse(const std::string& text) {
  std::istringstream in(text);
  return KeyValueConfig::parse(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}
}  // namespace

TEST_CASE("flat key-value files") {
  const auto kv = parse("# comment\n  a = 2.5  \n\nlist = 1, 2,3\nfrac = 17/19 # trailing\n");
  CHECK(kv.contains("a"));
  CHECK(kv.get_double("a") == 2.5);
  CHECK(kv.get_double("frac") == doctest::Approx(17.0 / 19));
  CHECK(kv.get_double_list("list") == std::vector<double>{1, 2, 3});
  CHECK(kv.get_double("missing", 4.0) == 4.0);
  CHECK(kv.get_int("missing", 7) == 7);
  CHECK(kv.entries().at("list").line == 4);
  CHECK_THROWS_AS(kv.get_double("missing"), InvalidArgument);
}

TEST_CASE("malformed lines report their line number") {
  CHECK(error_line("a = 1\nnonsense\n") == 2);
  CHECK(error_line("a = 1\n = 3\n") == 2);
  CHECK(error_line("a =\n") == 1);
  CHECK(error_line("a = 1\nb = 2\na = 3\n") == 3);
  const auto kv = parse("x = 1/0x\n");
  CHECK_THROWS_AS(kv.get_double("x"), ParseError);
  CHECK_THROWS_AS(KeyValueConfig::load("/nonexistent/config.txt"), IoError);
}
