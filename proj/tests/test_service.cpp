#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <thread>

#include "toscasmell/service.hpp"

using namespace tsm;

namespace {

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Server bound to an ephemeral port for the lifetime of one test case.
struct TestServer {
    httplib::Server server;
    int port = 0;
    std::thread thread;

    explicit TestServer(service::ServiceConfig config = {}) {
        service::register_routes(server, config);
        port = server.bind_to_any_port("127.0.0.1");
        REQUIRE(port > 0);
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }

    ~TestServer() {
        server.stop();
        thread.join();
    }

    httplib::Client client() { return httplib::Client("127.0.0.1", port); }
};

}  // namespace

TEST_CASE("health endpoint") {
    TestServer ts;
    auto res = ts.client().Get("/health");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->body == "ok");
}

TEST_CASE("scan returns the same JSON the CLI renders") {
    TestServer ts;
    const std::string body = read_fixture("docker_host.yaml");
    auto res = ts.client().Post("/v1/scan?filename=docker_host.yaml", body, "application/yaml");
    REQUIRE(res);
    CHECK(res->status == 200);
    auto outcome = scan::scan_source(body, "docker_host.yaml", {});
    CHECK(res->body == report::render_json(outcome.report));
}

TEST_CASE("scan without a filename falls back to request.yaml") {
    TestServer ts;
    auto res = ts.client().Post("/v1/scan", read_fixture("clean_snow.yaml"), "application/yaml");
    REQUIRE(res);
    CHECK(res->status == 200);
    auto j = report::json::parse(res->body);
    CHECK(j["file"] == "request.yaml");
    CHECK(j["total"] == 0);
}

TEST_CASE("empty body is a 400") {
    TestServer ts;
    auto res = ts.client().Post("/v1/scan", "", "application/yaml");
    REQUIRE(res);
    CHECK(res->status == 400);
    CHECK(res->body.find("error") != std::string::npos);
}

TEST_CASE("oversized body is a 413") {
    service::ServiceConfig cfg;
    cfg.max_body_bytes = 64;
    TestServer ts(cfg);
    auto res = ts.client().Post("/v1/scan", std::string(65, 'a'), "application/yaml");
    REQUIRE(res);
    CHECK(res->status == 413);
}

TEST_CASE("unparsable YAML is a 422 with a report body") {
    TestServer ts;
    auto res = ts.client().Post("/v1/scan", "a: [unclosed\n", "application/yaml");
    REQUIRE(res);
    CHECK(res->status == 422);
    auto j = report::json::parse(res->body);
    CHECK(j["total"] == 0);
    REQUIRE_FALSE(j["diagnostics"].empty());
    CHECK(j["diagnostics"][0]["severity"] == "error");
}

TEST_CASE("bad query parameters are a 400") {
    TestServer ts;
    auto c = ts.client();
    const std::string body = read_fixture("docker_host.yaml");
    for (const char* path : {"/v1/scan?convention=shouty", "/v1/scan?min-key-size=soon",
                             "/v1/scan?min-key-size=0", "/v1/scan?enable=no-such-rule",
                             "/v1/scan?disable=no-such-rule"}) {
        INFO(path);
        auto res = c.Post(path, body, "application/yaml");
        REQUIRE(res);
        CHECK(res->status == 400);
    }
}

TEST_CASE("query parameters adjust the rule configuration") {
    TestServer ts;
    auto c = ts.client();
    const std::string body = read_fixture("buggy_vehicle.yaml");

    SECTION("enable narrows the rule set") {
        auto res = c.Post("/v1/scan?enable=invalid-port", body, "application/yaml");
        REQUIRE(res);
        auto j = report::json::parse(res->body);
        CHECK(j["total"] == 1);
        CHECK(j["counts"].size() == 1);
        CHECK(j["counts"]["invalid-port"] == 1);
    }
    SECTION("disable drops one rule") {
        auto res = c.Post("/v1/scan?disable=invalid-port,inconsistent-naming", body,
                          "application/yaml");
        REQUIRE(res);
        auto j = report::json::parse(res->body);
        CHECK(j["total"] == 8);
        CHECK_FALSE(j["counts"].contains("invalid-port"));
    }
    SECTION("min-key-size moves the threshold") {
        auto res = c.Post("/v1/scan?enable=insufficient-key-size&min-key-size=256", body,
                          "application/yaml");
        REQUIRE(res);
        CHECK(report::json::parse(res->body)["total"] == 0);
    }
    SECTION("redact=false exposes the raw value") {
        auto res = c.Post("/v1/scan?enable=hard-coded-secret&redact=false", body,
                          "application/yaml");
        REQUIRE(res);
        auto j = report::json::parse(res->body);
        REQUIRE(j["total"] == 1);
        CHECK(j["occurrences"][0]["value_excerpt"] == "admin");
    }
}

TEST_CASE("rules endpoint matches the shared listing") {
    TestServer ts;
    auto res = ts.client().Get("/v1/rules");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->body == report::render_rules_listing_json());
}

TEST_CASE("requests do not leak state into each other") {
    TestServer ts;
    auto c = ts.client();
    const std::string buggy = read_fixture("buggy_snow.yaml");
    auto narrowed = c.Post("/v1/scan?enable=invalid-port", buggy, "application/yaml");
    REQUIRE(narrowed);
    CHECK(report::json::parse(narrowed->body)["total"] == 1);
    // The narrowing above must not stick to the server.
    auto full = c.Post("/v1/scan", buggy, "application/yaml");
    REQUIRE(full);
    CHECK(report::json::parse(full->body)["total"] == 10);
}
