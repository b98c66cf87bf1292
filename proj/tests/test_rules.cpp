#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "toscasmell/scan.hpp"

using namespace tsm;
using namespace tsm::rules;

namespace {

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<SmellOccurrence> scan_fixture(const std::string& name,
                                          const RuleConfig& config = {}) {
    auto outcome = scan::scan_source(read_fixture(name), name, config);
    REQUIRE(outcome.parse_ok);
    return outcome.report.occurrences;
}

std::set<std::string> rule_set(const std::vector<SmellOccurrence>& occs) {
    std::set<std::string> out;
    for (const auto& o : occs) out.insert(to_string(o.rule));
    return out;
}

std::set<std::string> all_rule_names() {
    std::set<std::string> out;
    for (RuleId id : all_rules()) out.insert(to_string(id));
    return out;
}

std::vector<SmellOccurrence> scan_snippet(const std::string& yaml, const RuleConfig& config = {}) {
    auto outcome = scan::scan_source(yaml, "snippet.yaml", config);
    REQUIRE(outcome.parse_ok);
    return outcome.report.occurrences;
}

}  // namespace

TEST_CASE("docker-host example yields exactly the expected rule set") {
    auto occs = scan_fixture("docker_host.yaml");
    CHECK(rule_set(occs) == std::set<std::string>{"admin-by-default", "hard-coded-secret",
                                                  "unrestricted-ip", "insufficient-key-size",
                                                  "inconsistent-naming"});
    CHECK(occs.size() == 5);
}

TEST_CASE("clean fixtures carry no smells") {
    for (const char* f : {"clean_clinical.yaml", "clean_vehicle.yaml", "clean_snow.yaml"}) {
        INFO(f);
        CHECK(scan_fixture(f).empty());
    }
}

TEST_CASE("each seeded fixture fires every rule exactly once") {
    for (const char* f : {"buggy_clinical.yaml", "buggy_vehicle.yaml", "buggy_snow.yaml"}) {
        INFO(f);
        auto occs = scan_fixture(f);
        CHECK(occs.size() == 10);
        CHECK(rule_set(occs) == all_rule_names());
    }
}

TEST_CASE("detectors match the expected elements on the clinical fixture") {
    auto occs = scan_fixture("buggy_clinical.yaml");
    auto find = [&](RuleId id) -> const SmellOccurrence& {
        for (const auto& o : occs) {
            if (o.rule == id) return o;
        }
        FAIL("rule not present: " << to_string(id));
        return occs.front();
    };
    CHECK(find(RuleId::AdminByDefault).item == "user_name");
    CHECK(find(RuleId::EmptyPassword).item == "db_password");
    CHECK(find(RuleId::HardCodedSecret).item == "user_name");
    CHECK(find(RuleId::UnrestrictedIp).item == "bind_address");
    CHECK(find(RuleId::InsecureCommunication).item == "api_endpoint");
    CHECK(find(RuleId::WeakCryptoAlgorithm).item == "checksum_algo");
    CHECK(find(RuleId::InsufficientKeySize).item == "key_size");
    CHECK(find(RuleId::InvalidPort).item == "service_port");
    CHECK(find(RuleId::InconsistentNaming).item == "logLevel");
    CHECK(find(RuleId::SuspiciousComment).location.has_value());
    CHECK(find(RuleId::SuspiciousComment).location->line == 3);
    CHECK(find(RuleId::UnrestrictedIp).location.has_value());
    CHECK(find(RuleId::UnrestrictedIp).location->line == 35);
}

TEST_CASE("the same smell is caught at both tiers") {
    const char* tier1 =
        "node_types:\n"
        "  t:\n"
        "    properties:\n"
        "      admin_user:\n"
        "        type: string\n"
        "        default: root\n";
    const char* tier2 =
        "topology_template:\n"
        "  node_templates:\n"
        "    n:\n"
        "      properties:\n"
        "        admin_user: root\n";
    auto [yaml, kind] = GENERATE_COPY(
        std::pair<const char*, ElementKind>{tier1, ElementKind::NodeTypeDefault},
        std::pair<const char*, ElementKind>{tier2, ElementKind::TemplateProperty});
    auto occs = scan_snippet(yaml);
    bool found = false;
    for (const auto& o : occs) {
        if (o.rule == RuleId::AdminByDefault) {
            CHECK(o.kind == kind);
            CHECK(o.item == "admin_user");
            found = true;
        }
    }
    REQUIRE(found);
}

TEST_CASE("rules only fire when enabled") {
    for (RuleId only : all_rules()) {
        RuleConfig cfg;
        cfg.enabled = {only};
        auto occs = scan_fixture("buggy_vehicle.yaml", cfg);
        REQUIRE(occs.size() == 1);
        CHECK(occs[0].rule == only);
    }
}

TEST_CASE("disabling a rule removes exactly its occurrence") {
    RuleConfig cfg;
    cfg.enabled.erase(RuleId::InvalidPort);
    auto occs = scan_fixture("buggy_snow.yaml", cfg);
    CHECK(occs.size() == 9);
    for (const auto& o : occs) CHECK(o.rule != RuleId::InvalidPort);
}

TEST_CASE("intrinsic-function assignments are not hardcoded secrets") {
    const char* yaml =
        "topology_template:\n"
        "  inputs:\n"
        "    vault_token:\n"
        "      type: string\n"
        "  node_templates:\n"
        "    svc:\n"
        "      properties:\n"
        "        api_token: { get_input: vault_token }\n";
    for (const auto& o : scan_snippet(yaml)) {
        CHECK(o.rule != RuleId::HardCodedSecret);
    }
}

TEST_CASE("secret values are redacted unless redaction is turned off") {
    const char* yaml =
        "topology_template:\n"
        "  node_templates:\n"
        "    svc:\n"
        "      properties:\n"
        "        api_secret: hunter2abc\n";
    auto occs = scan_snippet(yaml);
    REQUIRE(occs.size() >= 1);
    bool checked = false;
    for (const auto& o : occs) {
        if (o.rule != RuleId::HardCodedSecret) continue;
        CHECK(o.value_excerpt == "hu… (10 chars)");
        CHECK(o.value_excerpt.find("hunter2abc") == std::string::npos);
        CHECK(o.message.find("hunter2abc") == std::string::npos);
        checked = true;
    }
    REQUIRE(checked);

    RuleConfig cfg;
    cfg.redact_secrets = false;
    for (const auto& o : scan_snippet(yaml, cfg)) {
        if (o.rule == RuleId::HardCodedSecret) CHECK(o.value_excerpt == "hunter2abc");
    }
}

TEST_CASE("triple DES does not trip the DES check") {
    const char* yaml =
        "topology_template:\n"
        "  node_templates:\n"
        "    svc:\n"
        "      properties:\n"
        "        cipher: 3des-cbc\n";
    for (const auto& o : scan_snippet(yaml)) {
        CHECK(o.rule != RuleId::WeakCryptoAlgorithm);
    }
}

TEST_CASE("a fixed convention overrides the majority vote") {
    RuleConfig cfg;
    cfg.convention = NamingConvention::Camel;
    auto occs = scan_fixture("docker_host.yaml", cfg);
    int naming = 0;
    for (const auto& o : occs) {
        if (o.rule == RuleId::InconsistentNaming) ++naming;
    }
    // Under camelCase every snake_case name is off-convention.
    CHECK(naming >= 4);
}

TEST_CASE("empty integer-typed values never count as empty passwords") {
    const char* yaml =
        "topology_template:\n"
        "  node_templates:\n"
        "    svc:\n"
        "      properties:\n"
        "        pwd_rotation_days: 0\n";
    for (const auto& o : scan_snippet(yaml)) {
        CHECK(o.rule != RuleId::EmptyPassword);
    }
}

TEST_CASE("scanning is deterministic") {
    for (const char* f : {"docker_host.yaml", "buggy_snow.yaml", "buggy_vehicle.yaml"}) {
        auto a = scan_fixture(f);
        auto b = scan_fixture(f);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].rule == b[i].rule);
            CHECK(a[i].item == b[i].item);
            CHECK(a[i].owner == b[i].owner);
            CHECK(a[i].message == b[i].message);
        }
    }
}

TEST_CASE("occurrences are sorted by line then rule") {
    auto occs = scan_fixture("buggy_clinical.yaml");
    int prev_line = -1;
    for (const auto& o : occs) {
        REQUIRE(o.location.has_value());
        CHECK(o.location->line >= prev_line);
        prev_line = o.location->line;
    }
}
