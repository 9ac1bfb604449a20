#include <doctest.h>

#include <stdexcept>

#include "copolar/audits.hpp"
#include "copolar/parallel.hpp"
#include "copolar/report.hpp"

using namespace copolar;

TEST_CASE("map_samples keeps slot order and isolates failures") {
  for (Exec e : {Exec::serial, Exec::openmp}) {
    const auto out = map_samples<int>(
        20,
        [](std::size_t i) {
          if (i == 7) throw Error(ErrorKind::Degenerate, "seven");
          if (i == 9) throw std::runtime_error("nine");
          return static_cast<int>(i * i);
        },
        e);
    REQUIRE(out.size() == 20);
    CHECK(*out[3].value == 9);
    CHECK_FALSE(out[7].value);
    CHECK(out[7].kind == ErrorKind::Degenerate);
    CHECK_FALSE(out[9].value);
    CHECK(out[9].error == "nine");
  }
}

TEST_CASE("serial and OpenMP runs give identical reports") {
  Scenario s = parse_scenario(R"(
[scenario]
audits = involution, eq2_1n, eq3_2, crucial_pairs, eq4_1, eq5_1, eq5_2
[family]
name = calabi
n = 3
[grid]
directions = 20
points = 20
boundary = 10
legendre = 6
pairs = 8
tensors = 5
)");
  s.exec = Exec::serial;
  const std::string serial = report_json(run_scenario(s));
  s.exec = Exec::openmp;
  Scenario t = s;
  const std::string parallel = report_json(run_scenario(t));
  // The echoed exec field differs; everything else must match byte for byte.
  auto strip = [](std::string j) {
    const auto p = j.find("\"exec\"");
    return j.erase(p, j.find('\n', p) - p);
  };
  CHECK(strip(serial) == strip(parallel));
}
