#include <stdexcept>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "swlab/config.hpp"

using namespace swlab;

namespace {
struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content)
      : path("swlab_test_cfg_" + std::to_string(rand()) + ".tmp") {
    std::ofstream os(path);
    os << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};
}  // namespace

TEST_CASE("config: load, comments, and typed accessors") {
  TempFile f(
      "# a comment\n"
      "model = gaussian\n"
      "grid.points=16\n"
      "\n"
      "pinning.beta = critical+0.3\n"
      "rng.seed = 7\n");
  const Config cfg = Config::load(f.path);
  CHECK(cfg.has("model"));
  CHECK(cfg.str("model", "x") == "gaussian");
  CHECK(cfg.integer("grid.points", 0) == 16);
  CHECK(cfg.integer64("rng.seed", 0) == 7);
  CHECK(cfg.str("pinning.beta", "") == "critical+0.3");
  CHECK(cfg.str("absent", "fallback") == "fallback");
  CHECK(cfg.num("absent", 2.5) == doctest::Approx(2.5));
}

TEST_CASE("config: malformed input names the offending line") {
  TempFile f("model = gaussian\nthis line has no equals\n");
  try {
    (void)Config::load(f.path);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS((void)Config::load("definitely_missing_file.cfg"),
                  std::invalid_argument);
  TempFile g("= value\n");
  CHECK_THROWS_AS((void)Config::load(g.path), std::invalid_argument);
}

TEST_CASE("config: typed accessor rejects junk") {
  Config cfg;
  cfg.set("n", "12x");
  CHECK_THROWS_AS((void)cfg.integer("n", 0), std::invalid_argument);
  cfg.set("v", "not-a-number");
  CHECK_THROWS_AS((void)cfg.num("v", 0.0), std::invalid_argument);
}

TEST_CASE("config: manifest echoes a sorted effective set") {
  Config cfg;
  cfg.set("zebra", "1");
  cfg.set("alpha", "2");
  cfg.set("mid.key", "three");
  CHECK(cfg.manifest() == "alpha=2\nmid.key=three\nzebra=1\n");
  // Round trip: a manifest is valid config input.
  TempFile f(cfg.manifest());
  const Config back = Config::load(f.path);
  CHECK(back.manifest() == cfg.manifest());
}

TEST_CASE("config: strip width rules") {
  CHECK(resolve_strip_width("0.25", 100) == doctest::Approx(0.25));
  CHECK(resolve_strip_width("auto", 4096) ==
        doctest::Approx(std::pow(4096.0, -0.75)).epsilon(1e-14));
  CHECK(resolve_strip_width("auto:N^-0.5", 256) ==
        doctest::Approx(1.0 / 16.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)resolve_strip_width("auto", 0), std::invalid_argument);
  CHECK_THROWS_AS((void)resolve_strip_width("auto:N^-0", 16),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)resolve_strip_width("auto:banana", 16),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)resolve_strip_width("-0.2", 16), std::invalid_argument);
}

TEST_CASE("config: beta grammar") {
  const BetaSpec plain = parse_beta_spec("0.75");
  CHECK(!plain.relative);
  CHECK(resolve_beta(plain, 3.0, 64) == doctest::Approx(0.75));

  const BetaSpec crit = parse_beta_spec("critical");
  CHECK(crit.relative);
  CHECK(resolve_beta(crit, 3.25, 64) == doctest::Approx(3.25));

  const BetaSpec up = parse_beta_spec("critical+0.3");
  CHECK(resolve_beta(up, 3.25, 64) == doctest::Approx(3.55));

  const BetaSpec down = parse_beta_spec("critical-0.1");
  CHECK(resolve_beta(down, 3.25, 64) == doctest::Approx(3.15));

  const BetaSpec window = parse_beta_spec("critical+1.5/sqrtN");
  CHECK(window.over_sqrt_n);
  CHECK(resolve_beta(window, 3.25, 64) ==
        doctest::Approx(3.25 + 1.5 / 8.0).epsilon(1e-14));

  CHECK_THROWS_AS((void)parse_beta_spec("critical*2"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_beta_spec("critical+0.3/cbrtN"),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)parse_beta_spec("hot"), std::invalid_argument);
  CHECK_THROWS_AS((void)resolve_beta(window, 3.25, 0), std::invalid_argument);
}
