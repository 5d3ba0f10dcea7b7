#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "secjam/channel.hpp"
#include "secjam/fixtures.hpp"

using namespace secjam;

TEST(Channel, SameSeedSameRealization) {
  ScenarioConfig cfg;
  cfg.rng_seed = 42;
  EXPECT_EQ(generate_channels(cfg), generate_channels(cfg));
  auto other = cfg;
  other.rng_seed = 43;
  EXPECT_NE(generate_channels(cfg), generate_channels(other));
}

TEST(Channel, ShapeAndPositivity) {
  ScenarioConfig cfg;
  cfg.num_users = 5;
  cfg.num_subcarriers = 7;
  const auto ch = generate_channels(cfg);
  EXPECT_EQ(ch.users(), 5u);
  EXPECT_EQ(ch.subcarriers(), 7u);
  EXPECT_NO_THROW(ch.validate());
}

TEST(Channel, FadingIsUnitRayleigh) {
  // Divide out the path loss and compare against 1 - exp(-r^2).
  ScenarioConfig cfg;
  cfg.num_users = 8;
  cfg.num_subcarriers = 512;
  cfg.rng_seed = 7;
  const auto ch = generate_channels(cfg);
  const auto pos = draw_user_positions(cfg);
  std::vector<double> src, jam;
  for (std::size_t m = 0; m < cfg.num_users; ++m) {
    const double ls = std::pow(distance(pos[m], cfg.source_pos), -cfg.path_loss_exponent / 2);
    const double lj = std::pow(distance(pos[m], cfg.jammer_pos), -cfg.path_loss_exponent / 2);
    for (std::size_t n = 0; n < cfg.num_subcarriers; ++n) {
      src.push_back(ch.h(m, n) / ls);
      jam.push_back(ch.g(m, n) / lj);
    }
  }
  auto cdf = [](double r) { return 1.0 - std::exp(-r * r); };
  // 1% critical value for n = 4096 is about 1.63 / sqrt(n).
  const double crit = 1.63 / std::sqrt(static_cast<double>(src.size()));
  EXPECT_LT(oracle::ks_distance(src, cdf), crit);
  EXPECT_LT(oracle::ks_distance(jam, cdf), crit);
}

TEST(Channel, UsersKeepDistanceFromNodes) {
  ScenarioConfig cfg;
  cfg.num_users = 200;
  for (std::uint64_t s = 0; s < 20; ++s) {
    cfg.rng_seed = s;
    for (const auto& p : draw_user_positions(cfg)) {
      EXPECT_GT(distance(p, cfg.source_pos), kMinNodeDistance);
      EXPECT_GT(distance(p, cfg.jammer_pos), kMinNodeDistance);
      EXPECT_GE(p.x, 0.0);
      EXPECT_LE(p.x, 1.0);
    }
  }
}

TEST(Channel, ConfigValidation) {
  ScenarioConfig cfg;
  cfg.num_users = 1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.weights = {1.0, 2.0};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.jammer_budget = -1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Channel, FixtureValues) {
  const auto ch = example3x5();
  EXPECT_EQ(ch.users(), 3u);
  EXPECT_EQ(ch.subcarriers(), 5u);
  EXPECT_DOUBLE_EQ(ch.h(2, 4), 3.5391);
  EXPECT_DOUBLE_EQ(ch.g(1, 0), 8.1741);
  EXPECT_DOUBLE_EQ(ch.noise_variance, 1.0);
}

TEST(Channel, FormatRoundTrip) {
  const auto ch = example3x5();
  EXPECT_EQ(load_channels(format_channels(ch)), ch);
  ScenarioConfig cfg;
  cfg.num_users = 3;
  cfg.num_subcarriers = 4;
  const auto gen = generate_channels(cfg);
  const auto back = load_channels(format_channels(gen, 17));
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t n = 0; n < 4; ++n) {
      EXPECT_DOUBLE_EQ(back.h(m, n), gen.h(m, n));
      EXPECT_DOUBLE_EQ(back.g(m, n), gen.g(m, n));
    }
}

TEST(Channel, ParseErrorsCarryPosition) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      load_channels(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("3 5 1\n"), 1u);
  EXPECT_EQ(line_of("# 2 2 1\n1 2\n3\n\n1 1\n1 1\n"), 3u);
  EXPECT_EQ(line_of("# 2 2 1\n1 2\n3 x\n\n1 1\n1 1\n"), 3u);
  EXPECT_EQ(line_of("# 2 2 1\n1 2\n3 4\n\n1 1\n1 -1\n"), 6u);
  EXPECT_NE(line_of("# 2 2 1\n1 2\n3 4\n1 1\n1 1\n"), 0u);
  EXPECT_NE(line_of("# 2 2 1\n1 2\n3 4\n\n1 1\n"), 0u);
  EXPECT_EQ(line_of("# 2 2 1\n1 2\n3 4\n\n1 1\n1 1\n"), 0u);
}

TEST(Channel, MissingFileNamesPath) {
  const std::string path = "/nonexistent/dir/channels.txt";
  try {
    load_channels_file(path);
    FAIL() << "expected a throw";
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find(path), std::string::npos);
  }
}

TEST(Channel, LoadsFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "secjam_fixture_test.txt";
  {
    std::ofstream out(path);
    out << example3x5_text();
  }
  EXPECT_EQ(load_channels_file(path.string()), example3x5());
  std::filesystem::remove(path);
}
