#include <gtest/gtest.h>
#include <httplib.h>

#include "helpers.hpp"
#include "iconix/codec.hpp"
#include "iconix/service.hpp"

using namespace iconix;
using nlohmann::json;

namespace {

class ServiceTest : public ::testing::Test {
 protected:
  ServiceTest() : sessions(dir.path()), service(sessions) {}

  json post(const std::string& path, const json& body, int expected) {
    const HttpResponse r = service.dispatch("POST", path, body.is_null() ? "" : body.dump());
    EXPECT_EQ(r.status, expected) << path << ": " << r.body;
    return json::parse(r.body);
  }
  json get(const std::string& path, int expected) {
    const HttpResponse r = service.dispatch("GET", path, "");
    EXPECT_EQ(r.status, expected) << path << ": " << r.body;
    return r.content_type == "application/json" ? json::parse(r.body) : json(r.body.size());
  }
  std::string create() { return post("/v1/sessions", {{"image_size", 48}}, 201).at("id"); }

  test::TempDir dir;
  SessionManager sessions;
  SessionService service;
};

}  // namespace

TEST(HttpStatus, ErrorCodeMapping) {
  EXPECT_EQ(http_status_for(ErrorCode::StageOrderViolation), 409);
  EXPECT_EQ(http_status_for(ErrorCode::NotFound), 404);
  EXPECT_EQ(http_status_for(ErrorCode::InvalidConfig), 400);
  EXPECT_EQ(http_status_for(ErrorCode::NonMonotonicPicks), 400);
  EXPECT_EQ(http_status_for(ErrorCode::SelectionOutOfBucket), 400);
  EXPECT_EQ(http_status_for(ErrorCode::EmptyPool), 422);
  EXPECT_EQ(http_status_for(ErrorCode::BackendUnavailable), 502);
  EXPECT_EQ(http_status_for(ErrorCode::BackendTimeout), 502);
  EXPECT_EQ(http_status_for(ErrorCode::CorruptStore), 500);
}

TEST_F(ServiceTest, CreateReadAndErrors) {
  const std::string id = create();
  EXPECT_EQ(get("/v1/sessions/" + id, 200).at("stage"), "Created");
  get("/v1/sessions/ffffffffffffffffffffffffffffffff", 404);
  get("/v1/nothing", 404);
  post("/v1/sessions", {{"columns", 12}}, 400);
  const HttpResponse bad = service.dispatch("POST", "/v1/sessions", "{oops");
  EXPECT_EQ(bad.status, 400);
  const json err = json::parse(bad.body).at("error");
  EXPECT_EQ(err.at("code"), "InvalidConfig");
  EXPECT_FALSE(err.at("message").get<std::string>().empty());
}

TEST_F(ServiceTest, OutOfOrderIs409WithStage) {
  const std::string id = create();
  const json err = post("/v1/sessions/" + id + "/grid", nullptr, 409).at("error");
  EXPECT_EQ(err.at("code"), "StageOrderViolation");
  EXPECT_EQ(err.at("stage"), "Created");
  post("/v1/sessions/" + id + "/restyle", {{"variants", {"color"}}}, 409);
  post("/v1/sessions/" + id + "/ideate", {{"concept", "hope"}}, 200);
  EXPECT_EQ(post("/v1/sessions/" + id + "/simplify", nullptr, 409).at("error").at("stage"), "Ideated");
  post("/v1/sessions/" + id + "/ideate", {{"wrong", 1}}, 400);
}

TEST_F(ServiceTest, WholeFlowOverDispatch) {
  const std::string id = create();
  const std::string base = "/v1/sessions/" + id;
  const json ideated = post(base + "/ideate", {{"concept", "hope"}}, 200);
  const std::string top = ideated.at("snapshots").at("ideate").at("candidates").at(0).at("label");
  post(base + "/scaffold", {{"candidate_label", top}}, 200);
  post(base + "/exemplars",
       {{"selections", {{"comparative", json::array({{{"relation", "PartOf"}, {"object", "lens"}}})}}}}, 400);
  post(base + "/exemplars", nullptr, 200);
  const json simplified = post(base + "/simplify", nullptr, 200);
  const json micro = simplified.at("snapshots").at("simplify").at("views").at("microscopic");
  const json reps = micro.at("representatives");
  ASSERT_GE(reps.size(), 3u);
  // Picks in decreasing step order are rejected.
  const json backwards = {{"microscopic", {reps[2].at("step"), reps[1].at("step"), reps[0].at("step")}}};
  EXPECT_EQ(post(base + "/grid", {{"picks", backwards}}, 400).at("error").at("code"), "NonMonotonicPicks");
  // One row picked by hand, including a frame that is not a representative;
  // the other rows keep their defaults.
  const json frames = micro.at("sequence").at("frames");
  const int last_frame = frames.back().at("step");
  const json forward = {{"microscopic", {reps[0].at("step"), reps[1].at("step"), last_frame}}};
  const json partial = post(base + "/grid", {{"picks", forward}}, 200).at("snapshots").at("grid");
  EXPECT_EQ(partial.at("picks").at("microscopic"), forward.at("microscopic"));
  EXPECT_EQ(partial.at("picks").at("macroscopic").size(), 3u);
  const json grid = post(base + "/grid", nullptr, 200);
  EXPECT_EQ(grid.at("stage"), "GridReady");
  const json styled = post(base + "/restyle", {{"variants", {"filled", "color"}}}, 200);
  const json manifest = styled.at("snapshots").at("grid").at("manifest");
  EXPECT_EQ(manifest.at("cells").size(), 27u);

  const HttpResponse png = service.dispatch("GET", base + "/artifacts/" + manifest.at("cells")[0].at("png_ref").get<std::string>(), "");
  EXPECT_EQ(png.status, 200);
  EXPECT_EQ(png.content_type, "image/png");
  EXPECT_NO_THROW(decode_png(std::span(reinterpret_cast<const std::uint8_t*>(png.body.data()), png.body.size())));
  const std::string layers_ref = manifest.at("cells")[0].at("provenance").at("layers_ref");
  const HttpResponse layers = service.dispatch("GET", base + "/artifacts/" + layers_ref, "");
  EXPECT_EQ(layers.content_type, "application/json");
  EXPECT_DOUBLE_EQ(json::parse(layers.body).at("alpha").get<double>(), 0.5);
  get(base + "/artifacts/nothex", 404);
  const json scatter = get(base + "/scatter/macroscopic", 200);
  EXPECT_TRUE(scatter.contains("points") && scatter.contains("centroids"));
  EXPECT_EQ(get(base, 200), styled);
}

TEST_F(ServiceTest, RealSocketRoundTrip) {
  const int port = service.start();
  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/v1/sessions", R"({"image_size": 48})", "application/json");
  ASSERT_TRUE(created);
  EXPECT_EQ(created->status, 201);
  const std::string id = json::parse(created->body).at("id");
  auto skipped = client.Post(("/v1/sessions/" + id + "/exemplars").c_str(), "{}", "application/json");
  ASSERT_TRUE(skipped);
  EXPECT_EQ(skipped->status, 409);
  auto read = client.Get(("/v1/sessions/" + id).c_str());
  ASSERT_TRUE(read);
  EXPECT_EQ(read->status, 200);
  EXPECT_EQ(json::parse(read->body).at("stage"), "Created");
  service.stop();
}
