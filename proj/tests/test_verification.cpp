#include <doctest.h>

#include <chrono>

#include "lansa/errors.hpp"
#include "lansa/verification.hpp"

using namespace lansa;

TEST_SUITE("verification") {
  TEST_CASE("reports serialise with all fields") {
    CheckReport r{"x", 0.5, 1.0};
    r.context["k"] = 3;
    r.finish();
    const auto j = to_json(r);
    CHECK(j["name"] == "x");
    CHECK(j["measured"] == 0.5);
    CHECK(j["tolerance"] == 1.0);
    CHECK(j["passed"] == true);
    CHECK(j["context"]["k"] == 3);
    CheckReport nan{"nan", std::nan(""), 1.0};
    CHECK_FALSE(nan.finish().passed);
  }

  TEST_CASE("unknown check names are rejected") {
    CHECK_THROWS_AS(run_battery({"nope"}, 1), ConfigError);
  }

  TEST_CASE("trivial inputs") {
    GridSpec g;
    const CheckReport e = check_energy_decay(g, {0.1, 0.1}, SpectralField(g));
    CHECK(e.passed);
    CHECK(e.measured <= 0.0);
  }

  TEST_CASE("the full battery passes, is deterministic and stays under a minute") {
    const auto t0 = std::chrono::steady_clock::now();
    const auto a = run_battery({}, 2024);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    MESSAGE("battery wall time ", secs, " s");
    CHECK(secs < 60.0);
    for (const auto& r : a) CHECK_MESSAGE(r.passed, to_json(r).dump());
    const auto b = run_battery({"skew_symmetry", "fd_gradient"}, 2024);
    std::size_t matched = 0;
    for (const auto& rb : b)
      for (const auto& ra : a)
        if (ra.name == rb.name && ra.context == rb.context) {
          CHECK(ra.measured == rb.measured);
          ++matched;
        }
    CHECK(matched == b.size());
  }
}
