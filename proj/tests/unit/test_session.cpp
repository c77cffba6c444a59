#include <atomic>
#include <fstream>
#include <thread>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "iconix/error.hpp"
#include "iconix/session.hpp"

using namespace iconix;
namespace fs = std::filesystem;

namespace {

const nlohmann::json kSmall{{"image_size", 48}};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

std::string top_candidate(const SessionState& s) {
  return s.snapshots.at("ideate").at("candidates").at(0).at("label").get<std::string>();
}

SessionState run_to_grid(SessionManager& m, const std::string& id, const std::string& concept_label = "hope") {
  const SessionState ideated = m.advance(id, "ideate", {{"concept", concept_label}});
  m.advance(id, "scaffold", {{"candidate_label", top_candidate(ideated)}});
  m.advance(id, "exemplars", nullptr);
  m.advance(id, "simplify", nullptr);
  return m.advance(id, "grid", nullptr);
}

// Fails the test if two scoring calls ever overlap.
class ExclusiveScorer : public AttributeScorer {
 public:
  explicit ExclusiveScorer(std::shared_ptr<AttributeScorer> inner) : inner_(std::move(inner)) {}
  ScoreResult score(const Concept& c, const Concept& b) override {
    if (active_.fetch_add(1) != 0) overlaps_.fetch_add(1);
    std::this_thread::sleep_for(std::chrono::microseconds(200));
    ScoreResult r = inner_->score(c, b);
    active_.fetch_sub(1);
    return r;
  }
  int overlaps() const { return overlaps_.load(); }

 private:
  std::shared_ptr<AttributeScorer> inner_;
  std::atomic<int> active_{0};
  std::atomic<int> overlaps_{0};
};

}  // namespace

TEST(Stages, NamesAndRequests) {
  EXPECT_EQ(stage_for_request("ideate"), Stage::Ideated);
  EXPECT_EQ(stage_for_request("grid"), Stage::GridReady);
  EXPECT_FALSE(stage_for_request("restyle").has_value());
  for (int i = 0; i <= static_cast<int>(Stage::GridReady); ++i) {
    EXPECT_EQ(parse_stage(to_string(static_cast<Stage>(i))), static_cast<Stage>(i));
  }
}

TEST(SessionManager, CreateAndGet) {
  test::TempDir dir;
  SessionManager m(dir.path());
  const SessionState s = m.create(kSmall);
  EXPECT_EQ(s.stage, Stage::Created);
  EXPECT_EQ(s.id.size(), 32u);
  EXPECT_EQ(s.config.image_size, 48);
  EXPECT_TRUE(fs::exists(dir.path() / s.id / "state.json"));
  EXPECT_EQ(session_json(m.get(s.id)), session_json(s));
  EXPECT_NE(m.create(kSmall).id, s.id);
  EXPECT_EQ(code_of([&] { m.create({{"k", -1}}); }), ErrorCode::InvalidConfig);
}

TEST(SessionManager, UnknownIdsAreNotFound) {
  test::TempDir dir;
  SessionManager m(dir.path());
  EXPECT_EQ(code_of([&] { m.get("0123456789abcdef0123456789abcdef"); }), ErrorCode::NotFound);
  EXPECT_EQ(code_of([&] { m.get("../etc"); }), ErrorCode::NotFound);
  EXPECT_EQ(code_of([&] { m.get(""); }), ErrorCode::NotFound);
  const SessionState s = m.create(kSmall);
  EXPECT_EQ(code_of([&] { m.advance(s.id, "paint", nullptr); }), ErrorCode::NotFound);
}

TEST(SessionManager, SkippingAStageIsAnOrderViolation) {
  test::TempDir dir;
  SessionManager m(dir.path());
  const SessionState s = m.create(kSmall);
  try {
    m.advance(s.id, "simplify", nullptr);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.code(), ErrorCode::StageOrderViolation);
    EXPECT_EQ(e.stage(), Stage::Created);
  }
  EXPECT_EQ(code_of([&] { m.advance(s.id, "scaffold", {{"candidate_label", "x"}}); }),
            ErrorCode::StageOrderViolation);
  EXPECT_EQ(code_of([&] { m.restyle(s.id, {{"variants", {"filled"}}}); }), ErrorCode::StageOrderViolation);
  const SessionState after = m.get(s.id);
  EXPECT_EQ(after.stage, Stage::Created);
  EXPECT_EQ(after.revision, s.revision);
}

TEST(SessionManager, FullRunAndRestyle) {
  test::TempDir dir;
  SessionManager m(dir.path());
  const std::string id = m.create(kSmall).id;
  const SessionState grid = run_to_grid(m, id);
  EXPECT_EQ(grid.stage, Stage::GridReady);
  for (const char* key : {"ideate", "scaffold", "exemplars", "simplify", "grid"}) {
    EXPECT_TRUE(grid.snapshots.contains(key)) << key;
  }
  EXPECT_EQ(grid.snapshots.at("grid").at("manifest").at("variants"), nlohmann::json::array({"outline"}));
  const SessionState styled = m.restyle(id, {{"variants", {"filled", "color"}}});
  EXPECT_EQ(styled.stage, Stage::GridReady);
  EXPECT_EQ(styled.revision, grid.revision + 1);
  EXPECT_EQ(styled.snapshots.at("grid").at("manifest").at("variants").size(), 3u);
  bool is_json = true;
  const std::string sheet = styled.snapshots.at("grid").at("manifest").at("sheets").at("color");
  EXPECT_FALSE(m.artifact(id, sheet, &is_json).empty());
  EXPECT_FALSE(is_json);
  const auto scatter = m.scatter(id, "microscopic");
  EXPECT_TRUE(scatter.contains("points"));
  EXPECT_EQ(code_of([&] { m.scatter(id, "sideways"); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([&] { m.artifact(id, std::string(64, '0')); }), ErrorCode::NotFound);
}

TEST(SessionManager, RedoDropsLaterSnapshots) {
  test::TempDir dir;
  SessionManager m(dir.path());
  const std::string id = m.create(kSmall).id;
  const SessionState ideated = m.advance(id, "ideate", {{"concept", "hope"}});
  m.advance(id, "scaffold", {{"candidate_label", top_candidate(ideated)}});
  const SessionState ex = m.advance(id, "exemplars", nullptr);
  const auto candidates = ideated.snapshots.at("ideate").at("candidates");
  ASSERT_GE(candidates.size(), 2u);
  const SessionState redone = m.advance(id, "scaffold", {{"candidate_label", candidates.at(1).at("label")}});
  EXPECT_EQ(redone.stage, Stage::Scaffolded);
  EXPECT_FALSE(redone.snapshots.contains("exemplars"));
  EXPECT_TRUE(redone.snapshots.contains("ideate"));
  EXPECT_EQ(redone.revision, ex.revision + 1);
  EXPECT_EQ(code_of([&] { m.advance(id, "simplify", nullptr); }), ErrorCode::StageOrderViolation);
  EXPECT_EQ(code_of([&] { m.advance(id, "scaffold", {{"candidate_label", "not a candidate"}}); }),
            ErrorCode::InvalidConfig);
  EXPECT_EQ(m.get(id).revision, redone.revision);
}

TEST(SessionManager, PersistLoadIsStateIdentical) {
  test::TempDir dir;
  std::string id;
  nlohmann::json before;
  {
    SessionManager m(dir.path());
    id = m.create(kSmall).id;
    run_to_grid(m, id);
    before = session_json(m.restyle(id, {{"variants", {"color"}}}));
    m.evict(id);
    EXPECT_EQ(session_json(m.get(id)), before);
  }
  SessionManager fresh(dir.path());
  EXPECT_EQ(session_json(fresh.get(id)), before);
  // A reloaded session keeps working.
  EXPECT_EQ(fresh.advance(id, "grid", {{"columns", 2}}).snapshots.at("grid").at("columns"), 2);
}

TEST(SessionManager, TamperedArtifactIsCorruptStore) {
  test::TempDir dir;
  SessionManager m(dir.path());
  const std::string id = m.create(kSmall).id;
  const SessionState s = m.advance(id, "ideate", {{"concept", "hope"}});
  m.advance(id, "scaffold", {{"candidate_label", top_candidate(s)}});
  const SessionState ex = m.advance(id, "exemplars", nullptr);
  const std::string ref = ex.snapshots.at("exemplars").at("exemplars").at(0).at("ref");
  m.evict(id);
  const fs::path file = dir.path() / id / "artifacts" / (ref + ".png");
  ASSERT_TRUE(fs::exists(file));
  std::fstream(file, std::ios::in | std::ios::out | std::ios::binary).seekp(40).put('\x7f');
  EXPECT_EQ(code_of([&] { m.get(id); }), ErrorCode::CorruptStore);
}

TEST(SessionManager, TamperedStateIsCorruptStore) {
  test::TempDir dir;
  SessionManager m(dir.path());
  const std::string id = m.create(kSmall).id;
  m.advance(id, "ideate", {{"concept", "hope"}});
  m.evict(id);
  const fs::path file = dir.path() / id / "state.json";
  std::ifstream in(file);
  auto doc = nlohmann::json::parse(in);
  in.close();
  doc["body"]["revision"] = 99;
  std::ofstream(file) << doc.dump();
  EXPECT_EQ(code_of([&] { m.get(id); }), ErrorCode::CorruptStore);
  std::ofstream(file) << "{ not json";
  EXPECT_EQ(code_of([&] { m.get(id); }), ErrorCode::CorruptStore);
}

TEST(SessionManager, ConcurrentAdvancesNeverInterleave) {
  test::TempDir dir;
  std::shared_ptr<ExclusiveScorer> probe;
  SessionManager m(dir.path(), [&](const Config& c) {
    BackendSet b = default_backend_factory(c);
    probe = std::make_shared<ExclusiveScorer>(b.scorer);
    b.scorer = probe;
    return b;
  });
  const SessionState created = m.create(kSmall);
  const std::string id = created.id;
  const SessionState first = m.advance(id, "ideate", {{"concept", "hope"}});
  const std::string top = top_candidate(first);

  constexpr int kCallers = 16;
  std::vector<std::uint64_t> revisions(kCallers, 0);
  std::vector<std::string> stages(kCallers);
  std::vector<std::thread> threads;
  for (int i = 0; i < kCallers; ++i) {
    threads.emplace_back([&, i] {
      // Half redo ideation, half scaffold; scaffold may legitimately hit a
      // session that was just reset to Ideated, never an earlier stage.
      const SessionState s = i % 2 ? m.advance(id, "scaffold", {{"candidate_label", top}})
                                   : m.advance(id, "ideate", {{"concept", "hope"}});
      revisions[static_cast<std::size_t>(i)] = s.revision;
      stages[static_cast<std::size_t>(i)] = std::string(to_string(s.stage));
    });
  }
  for (auto& t : threads) t.join();

  EXPECT_EQ(probe->overlaps(), 0);
  std::set<std::uint64_t> unique(revisions.begin(), revisions.end());
  EXPECT_EQ(unique.size(), static_cast<std::size_t>(kCallers));
  EXPECT_EQ(*unique.begin(), first.revision + 1);
  EXPECT_EQ(*unique.rbegin(), first.revision + kCallers);
  for (int i = 0; i < kCallers; ++i) EXPECT_EQ(stages[static_cast<std::size_t>(i)], i % 2 ? "Scaffolded" : "Ideated");
  const nlohmann::json live = session_json(m.get(id));
  m.evict(id);
  EXPECT_EQ(session_json(m.get(id)), live);
  EXPECT_EQ(live.at("revision"), first.revision + kCallers);
}

TEST(SessionManager, SessionsAreIndependent) {
  test::TempDir dir;
  SessionManager m(dir.path());
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(m.create(kSmall).id);
  std::vector<std::thread> threads;
  std::vector<nlohmann::json> grids(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    threads.emplace_back([&, i] { grids[i] = run_to_grid(m, ids[i]).snapshots.at("grid").at("manifest"); });
  }
  for (auto& t : threads) t.join();
  for (std::size_t i = 1; i < ids.size(); ++i) EXPECT_EQ(grids[i].at("cells"), grids[0].at("cells"));
}
