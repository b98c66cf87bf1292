#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "toscasmell/report.hpp"
#include "toscasmell/scan.hpp"

using namespace tsm;
using namespace tsm::report;

namespace {

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ScanReport fixture_report(const std::string& name, const rules::RuleConfig& config = {}) {
    return scan::scan_source(read_fixture(name), name, config).report;
}

}  // namespace

TEST_CASE("build keeps zero counts for enabled but silent rules") {
    auto r = fixture_report("clean_vehicle.yaml");
    REQUIRE(r.counts.size() == rules::all_rules().size());
    for (const auto& [id, n] : r.counts) {
        INFO(rules::to_string(id));
        CHECK(n == 0);
    }
    CHECK(r.total == 0);
}

TEST_CASE("counts add up to the total") {
    auto r = fixture_report("buggy_clinical.yaml");
    int sum = 0;
    for (const auto& [id, n] : r.counts) sum += n;
    CHECK(sum == r.total);
    CHECK(r.total == 10);
}

TEST_CASE("disabled rules are absent from counts") {
    rules::RuleConfig cfg;
    cfg.enabled.erase(rules::RuleId::InvalidPort);
    auto r = fixture_report("clean_snow.yaml", cfg);
    CHECK(r.counts.count(rules::RuleId::InvalidPort) == 0);
    CHECK(r.counts.size() == rules::all_rules().size() - 1);
}

TEST_CASE("JSON has the fixed top-level key order") {
    auto j = to_json(fixture_report("docker_host.yaml"));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"version", "file", "total", "counts", "occurrences",
                                           "diagnostics"});
    CHECK(j["file"] == "docker_host.yaml");
    CHECK(j["total"] == 5);
    REQUIRE(j["counts"].contains("admin-by-default"));
    CHECK(j["counts"]["admin-by-default"] == 1);
}

TEST_CASE("scanned_at only appears when set") {
    auto r = fixture_report("docker_host.yaml");
    CHECK_FALSE(to_json(r).contains("scanned_at"));
    r.scanned_at = "2024-01-01T00:00:00Z";
    CHECK(to_json(r)["scanned_at"] == "2024-01-01T00:00:00Z");
}

TEST_CASE("JSON round-trips through from_json") {
    for (const char* f : {"docker_host.yaml", "buggy_snow.yaml", "clean_clinical.yaml"}) {
        INFO(f);
        auto r = fixture_report(f);
        auto back = from_json(to_json(r));
        CHECK(to_json(back) == to_json(r));
        CHECK(render_json(back) == render_json(r));
    }
}

TEST_CASE("rendering the same report twice is byte-identical") {
    auto a = fixture_report("buggy_vehicle.yaml");
    auto b = fixture_report("buggy_vehicle.yaml");
    CHECK(render_json(a) == render_json(b));
    CHECK(render_text(a) == render_text(b));
}

TEST_CASE("text output has one line per occurrence plus a summary") {
    auto r = fixture_report("buggy_clinical.yaml");
    auto text = render_text(r);
    std::size_t lines = 0;
    for (char c : text) {
        if (c == '\n') ++lines;
    }
    CHECK(lines == static_cast<std::size_t>(r.total) + 1);
    CHECK(text.find("10 smell(s) in buggy_clinical.yaml") != std::string::npos);
    CHECK(text.find("[empty-password]") != std::string::npos);
    CHECK(text.find("buggy_clinical.yaml:34:") != std::string::npos);
}

TEST_CASE("parse failures surface as error diagnostics in the report") {
    auto outcome = scan::scan_source("a: [unclosed\n", "bad.yaml", {});
    REQUIRE_FALSE(outcome.parse_ok);
    auto j = to_json(outcome.report);
    REQUIRE(j["diagnostics"].size() == 1);
    CHECK(j["diagnostics"][0]["severity"] == "error");
    CHECK(j["total"] == 0);
}

TEST_CASE("rules listing renders both ways from one source") {
    auto j = rules_listing_json();
    REQUIRE(j.size() == rules::all_rules().size());
    CHECK(j[0]["id"] == "admin-by-default");
    for (const auto& entry : j) {
        CHECK_FALSE(entry["description"].get<std::string>().empty());
    }
    auto text = render_rules_listing_text();
    for (rules::RuleId id : rules::all_rules()) {
        CHECK(text.find(rules::to_string(id)) != std::string::npos);
    }
    CHECK(render_rules_listing_json() == rules_listing_json().dump(2) + "\n");
}
