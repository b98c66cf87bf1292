// Command-line frontend: scan TOSCA files for smells, export the mapped
// knowledge graph, list rules, or run the HTTP service.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "toscasmell/mapper.hpp"
#include "toscasmell/report.hpp"
#include "toscasmell/scan.hpp"
#include "toscasmell/service.hpp"
#include "toscasmell/version.hpp"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitSmells = 1;
constexpr int kExitError = 2;

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct ScanFlags {
    std::vector<std::string> paths;
    std::string format = "text";
    std::string convention = "auto";
    int min_key_size = 2048;
    std::vector<std::string> enable;
    std::vector<std::string> disable;
    bool no_redact = false;
    bool timestamp = false;
};

// Returns false (and prints to stderr) on unknown rule ids / convention.
bool build_config(const ScanFlags& flags, tsm::rules::RuleConfig& cfg) {
    using tsm::rules::NamingConvention;
    if (flags.convention == "camel") cfg.convention = NamingConvention::Camel;
    else if (flags.convention == "snake") cfg.convention = NamingConvention::Snake;
    else if (flags.convention == "dash") cfg.convention = NamingConvention::Dash;
    else if (flags.convention == "auto") cfg.convention = NamingConvention::Auto;
    else {
        std::cerr << "error: unknown convention '" << flags.convention << "'\n";
        return false;
    }
    cfg.min_key_size_bits = flags.min_key_size;
    cfg.redact_secrets = !flags.no_redact;
    if (!flags.enable.empty()) {
        cfg.enabled.clear();
        for (const auto& name : flags.enable) {
            auto id = tsm::rules::rule_from_string(name);
            if (!id) {
                std::cerr << "error: unknown rule id '" << name << "'\n";
                return false;
            }
            cfg.enabled.insert(*id);
        }
    }
    for (const auto& name : flags.disable) {
        auto id = tsm::rules::rule_from_string(name);
        if (!id) {
            std::cerr << "error: unknown rule id '" << name << "'\n";
            return false;
        }
        cfg.enabled.erase(*id);
    }
    return true;
}

int run_scan(const ScanFlags& flags) {
    tsm::rules::RuleConfig cfg;
    if (!build_config(flags, cfg)) return kExitError;

    bool any_smell = false;
    bool any_error = false;
    for (const auto& path : flags.paths) {
        std::string source;
        if (!read_file(path, source)) {
            std::cerr << "error: cannot read '" << path << "'\n";
            any_error = true;
            continue;
        }
        auto outcome = tsm::scan::scan_source(source, path, cfg);
        if (flags.timestamp) outcome.report.scanned_at = iso8601_now();
        if (!outcome.parse_ok) {
            for (const auto& d : outcome.report.diagnostics) {
                std::cerr << path << ":" << d.line << ":" << d.column << ": " << d.message << "\n";
            }
            any_error = true;
            continue;
        }
        for (const auto& d : outcome.report.diagnostics) {
            std::cerr << path << ":" << d.line << ": warning: " << d.message << "\n";
        }
        if (flags.format == "json") {
            std::cout << tsm::report::render_json(outcome.report);
        } else {
            std::cout << tsm::report::render_text(outcome.report);
        }
        if (outcome.report.total > 0) any_smell = true;
    }
    if (any_error) return kExitError;
    return any_smell ? kExitSmells : kExitClean;
}

int run_export(const std::vector<std::string>& paths) {
    for (const auto& path : paths) {
        std::string source;
        if (!read_file(path, source)) {
            std::cerr << "error: cannot read '" << path << "'\n";
            return kExitError;
        }
        auto parsed = tsm::tosca::parse(source, path);
        if (!parsed.ok) {
            for (const auto& d : parsed.diagnostics) {
                std::cerr << path << ":" << d.line << ":" << d.column << ": " << d.message << "\n";
            }
            return kExitError;
        }
        auto graph = tsm::mapper::map_service_template(parsed.document);
        std::cout << graph.serialize_ntriples();
    }
    return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TOSCA deployment-model smell detector"};
    app.set_version_flag("--version", tsm::kVersion);
    app.require_subcommand(1);

    ScanFlags flags;
    auto* scan_cmd = app.add_subcommand("scan", "Scan TOSCA files and report smells");
    scan_cmd->add_option("paths", flags.paths, "TOSCA YAML files")->required();
    scan_cmd->add_option("--format", flags.format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    scan_cmd->add_option("--convention", flags.convention,
                         "Naming convention: camel, snake, dash, or auto");
    scan_cmd->add_option("--min-key-size", flags.min_key_size, "Minimum key size in bits")
        ->check(CLI::PositiveNumber);
    scan_cmd->add_option("--enable", flags.enable, "Only run these rule ids")->delimiter(',');
    scan_cmd->add_option("--disable", flags.disable, "Skip these rule ids")->delimiter(',');
    scan_cmd->add_flag("--no-redact", flags.no_redact, "Show secret values unredacted");
    scan_cmd->add_flag("--timestamp", flags.timestamp,
                       "Include a scan timestamp (off by default for stable output)");

    std::vector<std::string> export_paths;
    auto* export_cmd =
        app.add_subcommand("export-graph", "Print the mapped knowledge graph as N-Triples");
    export_cmd->add_option("paths", export_paths, "TOSCA YAML files")->required();

    std::string rules_format = "text";
    auto* rules_cmd = app.add_subcommand("rules", "List detection rules");
    rules_cmd->add_option("--format", rules_format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t max_body = 2 * 1024 * 1024;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP scan service");
    serve_cmd->add_option("--host", host, "Listen address");
    serve_cmd->add_option("--port", port, "Listen port");
    serve_cmd->add_option("--max-body", max_body, "Maximum request body size in bytes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitClean : kExitError;
    }

    try {
        if (*scan_cmd) return run_scan(flags);
        if (*export_cmd) return run_export(export_paths);
        if (*rules_cmd) {
            std::cout << (rules_format == "json" ? tsm::report::render_rules_listing_json()
                                                 : tsm::report::render_rules_listing_text());
            return kExitClean;
        }
        if (*serve_cmd) {
            tsm::service::ServiceConfig cfg;
            cfg.max_body_bytes = max_body;
            httplib::Server server;
            tsm::service::register_routes(server, cfg);
            std::cerr << "listening on " << host << ":" << port << "\n";
            if (!server.listen(host, port)) {
                std::cerr << "error: cannot bind " << host << ":" << port << "\n";
                return kExitError;
            }
            return kExitClean;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
