#include <gtest/gtest.h>

#include <thread>

#include "matchstick/service.hpp"
#include "test_support.hpp"

using namespace matchstick;

namespace {

const Service& service() {
    static const Service s(fixtures::corpus());
    return s;
}

Json post_ok(const std::string& path, const Json& body) {
    const auto r = service().handle("POST", path, body.dump());
    EXPECT_EQ(r.status, 200) << path << ": " << r.body;
    return Json::parse(r.body);
}

Json corpus_doc(const std::string& id) { return graph_to_json(fixtures::corpus().get_graph(id)); }

}  // namespace

TEST(Service, CorpusIndex) {
    const auto r = service().handle("GET", "/api/corpus", "");
    ASSERT_EQ(r.status, 200);
    const Json j = Json::parse(r.body);
    EXPECT_EQ(j.at("entries").size(), 43u);
    EXPECT_EQ(j.at("entries")[0].at("id"), "eps_27_left");
}

TEST(Service, CorpusGraphIsTheFileFormat) {
    const auto r = service().handle("GET", "/api/corpus/fig_60v_rot3", "");
    ASSERT_EQ(r.status, 200);
    EXPECT_EQ(parse_graph(r.body), fixtures::corpus().get_graph("fig_60v_rot3"));
    EXPECT_EQ(service().handle("GET", "/api/corpus/title_51", "").status, 200);
    EXPECT_EQ(service().handle("GET", "/api/corpus/nope", "").status, 404);
}

TEST(Service, VerifyAcceptsBareOrWrappedGraph) {
    const Json doc = corpus_doc("harborth_52");
    const Json bare = post_ok("/api/verify", doc);
    const Json wrapped = post_ok("/api/verify", Json{{"graph", doc}});
    EXPECT_EQ(bare, wrapped);
    EXPECT_EQ(bare.at("is_matchstick"), true);
    EXPECT_EQ(bare, to_json(verify(fixtures::corpus().get_graph("harborth_52"), {})));
}

TEST(Service, ProfileOverrides) {
    const Json j = post_ok("/api/verify",
                           Json{{"graph", corpus_doc("eps_42_right")}, {"profile", {{"unit_tol", 1e-4}}}});
    EXPECT_EQ(j.at("is_near_matchstick"), true);
    const auto bad = service().handle("POST", "/api/verify",
                                      Json{{"graph", corpus_doc("eps_42_right")}, {"profile", {{"unit_tol", -1}}}}.dump());
    EXPECT_EQ(bad.status, 400);
}

TEST(Service, Rigidity) {
    const Json all = post_ok("/api/rigidity", corpus_doc("eps_27_left"));
    EXPECT_EQ(all.at("dof"), 0);
    const Json gray =
        post_ok("/api/rigidity", Json{{"graph", corpus_doc("eps_27_left")}, {"config", {{"framework", "gray_only"}}}});
    EXPECT_EQ(gray.at("dof"), 3);
    EXPECT_EQ(gray.at("flex_basis").size(), 3u);
    EXPECT_EQ(service()
                  .handle("POST", "/api/rigidity",
                          Json{{"graph", corpus_doc("eps_27_left")}, {"config", {{"framework", "rubber"}}}}.dump())
                  .status,
              400);
}

TEST(Service, RelaxReturnsTrajectoryAndGraph) {
    const Json j = post_ok("/api/relax", Json{{"graph", corpus_doc("fig_50v_asym")}, {"config", {{"max_iterations", 5}}}});
    EXPECT_EQ(j.at("result").at("iterations"), 5);
    EXPECT_GE(j.at("result").at("trajectory").size(), 2u);
    EXPECT_NO_THROW(graph_from_json(j.at("graph")));
    const auto bad = service().handle(
        "POST", "/api/relax", Json{{"graph", corpus_doc("fig_50v_asym")}, {"config", {{"mode", "sideways"}}}}.dump());
    EXPECT_EQ(bad.status, 400);
}

TEST(Service, Flex) {
    const Json j = post_ok("/api/flex", corpus_doc("eps_27_left"));
    EXPECT_LE(j.at("final_max_red_deviation").get<double>(), 1e-2);
    EXPECT_EQ(j.at("stage_frames").size(), j.at("stages").size() + 1);
    const auto none = service().handle("POST", "/api/flex", corpus_doc("harborth_52").dump());
    EXPECT_EQ(none.status, 422);
}

TEST(Service, SymmetryFrameRulesSvg) {
    EXPECT_EQ(post_ok("/api/symmetry", corpus_doc("fig_60v_rot3")).at("label"), "rotational(3)");
    EXPECT_TRUE(post_ok("/api/frame", corpus_doc("fig_50v_asym")).at("red_in_frame").empty());
    EXPECT_EQ(post_ok("/api/rules", corpus_doc("fig_50v_asym")).at("rule4_deviation_cap").at("ok"), false);
    const auto svg = service().handle("POST", "/api/svg", corpus_doc("fig_50v_asym").dump());
    EXPECT_EQ(svg.status, 200);
    EXPECT_EQ(svg.content_type, "image/svg+xml");
    EXPECT_EQ(svg.body, export_svg(fixtures::corpus().get_graph("fig_50v_asym")));
}

TEST(Service, Errors) {
    EXPECT_EQ(service().handle("POST", "/api/verify", "{oops").status, 400);
    EXPECT_EQ(service().handle("POST", "/api/verify", "[1,2]").status, 400);
    EXPECT_EQ(service().handle("POST", "/api/verify", R"({"vertices":[[0,0]],"edges":[[0,3]]})").status, 400);
    EXPECT_EQ(service().handle("POST", "/api/nothing", "{}").status, 404);
    EXPECT_EQ(service().handle("DELETE", "/api/verify", "").status, 404);
    // Crossing drawing: outer face undefined.
    const Json crossing{{"vertices", {{0, 0}, {1, 1}, {0, 1}, {1, 0}}}, {"edges", {{0, 1}, {2, 3}, {1, 2}}}};
    const auto r = service().handle("POST", "/api/frame", crossing.dump());
    EXPECT_EQ(r.status, 422);
    EXPECT_TRUE(Json::parse(r.body).contains("error"));
}

TEST(Service, OverHttp) {
    httplib::Server server;
    service().bind(server);
    const int port = server.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port, 0);
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    const auto index = client.Get("/api/corpus");
    ASSERT_TRUE(index);
    EXPECT_EQ(index->status, 200);
    EXPECT_EQ(index->get_header_value("Access-Control-Allow-Origin"), "*");

    const std::string body = corpus_doc("fig_50v_asym").dump();
    const auto verified = client.Post("/api/verify", body, "application/json");
    ASSERT_TRUE(verified);
    EXPECT_EQ(verified->status, 200);
    EXPECT_EQ(verified->body, service().handle("POST", "/api/verify", body).body);

    const auto preflight = client.Options("/api/verify");
    ASSERT_TRUE(preflight);
    EXPECT_EQ(preflight->status, 204);

    const auto missing = client.Get("/api/corpus/nope");
    ASSERT_TRUE(missing);
    EXPECT_EQ(missing->status, 404);

    server.stop();
    worker.join();
}
