#pragma once

// Stateless HTTP facade over the scan pipeline. Each request builds its own
// graph and ScanContext, so concurrent scans never share mutable state.

#include <httplib.h>

#include <memory>
#include <sstream>
#include <string>

#include "toscasmell/report.hpp"
#include "toscasmell/scan.hpp"

namespace tsm::service {

struct ServiceConfig {
    rules::RuleConfig defaults;
    std::size_t max_body_bytes = 2 * 1024 * 1024;
};

namespace detail {

inline std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// Query parameters mirror the CLI flags; unknown rule ids or values yield a
// 400 via the returned error string.
inline std::string apply_query_params(const httplib::Request& req, rules::RuleConfig& cfg) {
    if (req.has_param("convention")) {
        const std::string c = req.get_param_value("convention");
        if (c == "camel") cfg.convention = rules::NamingConvention::Camel;
        else if (c == "snake") cfg.convention = rules::NamingConvention::Snake;
        else if (c == "dash") cfg.convention = rules::NamingConvention::Dash;
        else if (c == "auto") cfg.convention = rules::NamingConvention::Auto;
        else return "unknown convention '" + c + "'";
    }
    if (req.has_param("min-key-size")) {
        try {
            cfg.min_key_size_bits = std::stoi(req.get_param_value("min-key-size"));
        } catch (const std::exception&) {
            return "min-key-size is not an integer";
        }
        if (cfg.min_key_size_bits <= 0) return "min-key-size must be positive";
    }
    if (req.has_param("redact")) {
        cfg.redact_secrets = req.get_param_value("redact") != "false";
    }
    if (req.has_param("enable")) {
        cfg.enabled.clear();
        for (const auto& name : split_csv(req.get_param_value("enable"))) {
            auto id = rules::rule_from_string(name);
            if (!id) return "unknown rule id '" + name + "'";
            cfg.enabled.insert(*id);
        }
    }
    if (req.has_param("disable")) {
        for (const auto& name : split_csv(req.get_param_value("disable"))) {
            auto id = rules::rule_from_string(name);
            if (!id) return "unknown rule id '" + name + "'";
            cfg.enabled.erase(*id);
        }
    }
    return "";
}

}  // namespace detail

inline void register_routes(httplib::Server& server, const ServiceConfig& config) {
    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("ok", "text/plain");
    });

    server.Get("/v1/rules", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(report::render_rules_listing_json(), "application/json");
    });

    server.Post("/v1/scan", [config](const httplib::Request& req, httplib::Response& res) {
        if (req.body.empty()) {
            res.status = 400;
            res.set_content(R"({"error": "empty request body"})" "\n", "application/json");
            return;
        }
        if (req.body.size() > config.max_body_bytes) {
            res.status = 413;
            res.set_content(R"({"error": "request body too large"})" "\n", "application/json");
            return;
        }
        rules::RuleConfig cfg = config.defaults;
        if (auto err = detail::apply_query_params(req, cfg); !err.empty()) {
            res.status = 400;
            report::json j;
            j["error"] = err;
            res.set_content(j.dump(2) + "\n", "application/json");
            return;
        }
        const std::string filename =
            req.has_param("filename") ? req.get_param_value("filename") : "request.yaml";
        auto outcome = scan::scan_source(req.body, filename, cfg);
        res.status = outcome.parse_ok ? 200 : 422;
        res.set_content(report::render_json(outcome.report), "application/json");
    });
}

}  // namespace tsm::service
