#include "irsce/config.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "irsce/error.hpp"

namespace irsce {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no irsce::Error thrown";
  return ErrorCode::InvalidArgument;
}

TEST(Config, DefaultsMatchDeskProfile) {
  const auto cfg = ExperimentConfig::desk_profile();
  EXPECT_EQ(cfg.M, 4u);
  EXPECT_EQ(cfg.Q, 4u);
  EXPECT_EQ(cfg.N, 16u);
  EXPECT_EQ(cfg.T, 64u);
  EXPECT_EQ(cfg.K, 5u);
  EXPECT_EQ(cfg.trials, 500u);
  EXPECT_EQ(cfg.i_max, 100u);
  EXPECT_EQ(cfg.eps, 1e-5);
  EXPECT_EQ(cfg.snr_grid_db.size(), 7u);
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(ExperimentConfig::full_profile().trials, 10000u);
}

TEST(Config, ParsesKeyValueLines) {
  const auto cfg = parse_config(
      "# comment\n"
      "M = 8\n"
      "  seed=42   # trailing\n"
      "\n"
      "snr_grid_db = 0, 10, inf\n"
      "path_products = 1,4\n"
      "eps = 1e-7\n");
  EXPECT_EQ(cfg.M, 8u);
  EXPECT_EQ(cfg.seed, 42u);
  ASSERT_EQ(cfg.snr_grid_db.size(), 3u);
  EXPECT_TRUE(std::isinf(cfg.snr_grid_db[2]));
  EXPECT_EQ(cfg.path_products, (std::vector<std::size_t>{1, 4}));
  EXPECT_EQ(cfg.eps, 1e-7);
  EXPECT_EQ(cfg.Q, 4u);  // untouched keys keep the base value
}

TEST(Config, ErrorsCarryLineNumbers) {
  try {
    parse_config("M = 4\nbogus = 1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_EQ(code_of([] { parse_config("M 4\n"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { parse_config("M = four\n"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { parse_config("eps = nan\n"); }), ErrorCode::ConfigError);
}

TEST(Config, ValidateRejectsBadRanges) {
  auto cfg = ExperimentConfig::desk_profile();
  cfg.trials = 0;
  EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::ConfigError);
  cfg = ExperimentConfig::desk_profile();
  cfg.ar_lambda = 1.5;
  EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::ConfigError);
  cfg = ExperimentConfig::desk_profile();
  cfg.snr_grid_db = {-std::numeric_limits<double>::infinity()};
  EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::ConfigError);
}

TEST(Config, TextRoundTrip) {
  auto cfg = ExperimentConfig::desk_profile();
  cfg.seed = 7;
  cfg.snr_grid_db = {0.5, std::numeric_limits<double>::infinity()};
  cfg.ar_lambda = 0.123456789;
  const auto back = parse_config(to_config_text(cfg));
  EXPECT_EQ(to_config_text(back), to_config_text(cfg));
  EXPECT_EQ(back.seed, 7u);
  EXPECT_EQ(back.ar_lambda, 0.123456789);
}

TEST(Config, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "irsce_config_test.cfg";
  {
    std::ofstream out(path);
    out << "trials = 3\n";
  }
  EXPECT_EQ(load_config(path).trials, 3u);
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([&] { load_config(path); }), ErrorCode::IoError);
}

TEST(Config, RealList) {
  EXPECT_EQ(parse_real_list("1, 2.5,-3"), (std::vector<double>{1.0, 2.5, -3.0}));
  EXPECT_EQ(code_of([] { parse_real_list("1,,2"); }), ErrorCode::ConfigError);
}

}  // namespace
}  // namespace irsce
