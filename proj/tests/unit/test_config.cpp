#include <fstream>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "iconix/config.hpp"

using namespace iconix;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

}  // namespace

TEST(Config, Defaults) {
  const Config c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.simplification.delta, 5);
  EXPECT_DOUBLE_EQ(c.simplification.epsilon, 0.02);
  EXPECT_EQ(c.simplification.stable_required, 2);
  EXPECT_EQ(c.simplification.max_steps, 200);
  EXPECT_EQ(c.k, 9);
  EXPECT_EQ(c.columns, 3);
  EXPECT_DOUBLE_EQ(c.alpha, 0.5);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.max_iterations, 5);
  EXPECT_EQ(c.bucket_cap, 12);
  EXPECT_TRUE(c.backends.empty());
}

TEST(Config, OverridesApply) {
  const Config c = merge_config(Config{}, {{"k", 4}, {"epsilon", 0.05}, {"seed", 7}, {"columns", 5}});
  EXPECT_EQ(c.k, 4);
  EXPECT_DOUBLE_EQ(c.simplification.epsilon, 0.05);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.columns, 5);
  EXPECT_EQ(c.alpha, 0.5);
  EXPECT_EQ(merge_config(c, nullptr).k, 4);
}

TEST(Config, RejectsBadValues) {
  EXPECT_EQ(code_of([] { merge_config(Config{}, {{"epsilon", -1}}); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { merge_config(Config{}, {{"columns", 12}}); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { merge_config(Config{}, {{"alpha", 1.5}}); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { merge_config(Config{}, {{"k", 0}}); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { merge_config(Config{}, {{"max_steps", 3}}); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { merge_config(Config{}, {{"k", "nine"}}); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { merge_config(Config{}, {{"k", 2.5}}); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { merge_config(Config{}, {{"seed", -3}}); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { merge_config(Config{}, {{"colour", 1}}); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { merge_config(Config{}, nlohmann::json::array()); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { merge_config(Config{}, {{"backends", {{"score", {{"mode", "remote"}}}}}}); }),
            ErrorCode::InvalidConfig);
}

TEST(Config, JsonRoundTrip) {
  Config c = merge_config(Config{}, {{"k", 4}, {"alpha", 0.25}, {"delta", 3}, {"max_steps", 30}});
  c.backends.push_back({BackendKind::Restyle, "http://127.0.0.1:7000", 12.0, BackendMode::Remote});
  const auto j = config_json(c);
  EXPECT_EQ(config_json(merge_config(Config{}, j)), j);
}

TEST(Config, FileLoading) {
  test::TempDir dir;
  const auto good = dir.path() / "good.json";
  std::ofstream(good) << R"({"k": 6, "columns": 2})";
  const Config c = load_config_file(good.string());
  EXPECT_EQ(c.k, 6);
  EXPECT_EQ(c.columns, 2);
  const auto bad = dir.path() / "bad.json";
  std::ofstream(bad) << "{ k: ";
  EXPECT_EQ(code_of([&] { load_config_file(bad.string()); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([&] { load_config_file((dir.path() / "missing.json").string()); }), ErrorCode::Io);
}
