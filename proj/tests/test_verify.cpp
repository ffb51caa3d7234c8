#include "doctest.h"
#include "motive/errors.hpp"
#include "motive/verify.hpp"

using namespace motive;

TEST_CASE("suite reports count checks and collect failures") {
  SuiteReport r{"x", 0, {}, ""};
  r.check(true, "a");
  r.check(false, "b");
  CHECK(r.total == 2);
  CHECK(r.failures == std::vector<std::string>{"b"});
  CHECK(!r.passed());
}

TEST_CASE("ring suite runs the requested number of identities") {
  const SuiteReport r = ring_suite(7, 1003);
  CHECK(r.total == 1003);
  CHECK(r.passed());
  CHECK(r.note == "seed=7 checks=1003");
}

TEST_CASE("curve and bun suites pass") {
  const SuiteReport c = curve_suite();
  CHECK(c.passed());
  CHECK(c.total > 200);
  const SuiteReport b = bun_suite();
  CHECK(b.passed());
  for (const auto& f : b.failures) MESSAGE(f);
}

TEST_CASE("rank 2 Higgs suite passes with a consistent prefactor") {
  const SuiteReport r = higgs_suite(2, {2, 3});
  CHECK(r.passed());
  CHECK(r.note == "prefactor L^(4(g-1)+1)");
}

TEST_CASE("named suites") {
  CHECK(suite_names().size() == 5);
  CHECK(run_suite("curve").size() == 2);
  CHECK_THROWS_AS(run_suite("nope"), MotiveError);
}
