#pragma once

// Scan report aggregation and its two renderings. The JSON key set and
// order are a compatibility surface shared by the CLI and the HTTP service
// (see README for the schema).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "toscasmell/rules.hpp"
#include "toscasmell/tosca.hpp"
#include "toscasmell/version.hpp"

namespace tsm::report {

using json = nlohmann::ordered_json;

struct ScanReport {
    std::string tool_version = kVersion;
    std::string file;
    std::optional<std::string> scanned_at;  // unset in deterministic mode
    std::vector<rules::SmellOccurrence> occurrences;
    std::map<rules::RuleId, int> counts;  // every enabled rule, zero allowed
    int total = 0;
    std::vector<tosca::Diagnostic> diagnostics;
};

inline ScanReport build(const std::string& file,
                        std::vector<rules::SmellOccurrence> occurrences,
                        std::vector<tosca::Diagnostic> diagnostics,
                        const rules::RuleConfig& config) {
    ScanReport r;
    r.file = file;
    r.occurrences = std::move(occurrences);
    r.diagnostics = std::move(diagnostics);
    for (rules::RuleId id : rules::all_rules()) {
        if (config.is_enabled(id)) r.counts[id] = 0;
    }
    for (const auto& occ : r.occurrences) r.counts[occ.rule]++;
    r.total = static_cast<int>(r.occurrences.size());
    return r;
}

inline std::string render_text(const ScanReport& r) {
    std::string out;
    for (const auto& occ : r.occurrences) {
        if (occ.location && occ.location->line > 0) {
            out += occ.location->file + ":" + std::to_string(occ.location->line);
        } else {
            out += r.file;
        }
        out += ": [" + rules::to_string(occ.rule) + "] " + occ.message + "\n";
    }
    out += std::to_string(r.total) + " smell(s) in " + r.file + "\n";
    return out;
}

inline json occurrence_to_json(const rules::SmellOccurrence& occ) {
    json j;
    j["rule"] = rules::to_string(occ.rule);
    j["element"] = {{"kind", rules::to_string(occ.kind)}, {"owner", occ.owner},
                    {"item", occ.item}};
    j["value_excerpt"] = occ.value_excerpt;
    j["message"] = occ.message;
    if (occ.location) {
        j["location"] = {{"file", occ.location->file}, {"line", occ.location->line}};
    } else {
        j["location"] = nullptr;
    }
    return j;
}

inline json to_json(const ScanReport& r) {
    json j;
    j["version"] = r.tool_version;
    j["file"] = r.file;
    if (r.scanned_at) j["scanned_at"] = *r.scanned_at;
    j["total"] = r.total;
    json counts = json::object();
    // Canonical rule order keeps the bytes stable.
    for (rules::RuleId id : rules::all_rules()) {
        if (auto it = r.counts.find(id); it != r.counts.end()) {
            counts[rules::to_string(id)] = it->second;
        }
    }
    j["counts"] = counts;
    j["occurrences"] = json::array();
    for (const auto& occ : r.occurrences) j["occurrences"].push_back(occurrence_to_json(occ));
    j["diagnostics"] = json::array();
    for (const auto& d : r.diagnostics) {
        j["diagnostics"].push_back(
            {{"severity", d.severity == tosca::Severity::Error ? "error" : "warning"},
             {"message", d.message},
             {"line", d.line},
             {"column", d.column}});
    }
    return j;
}

inline std::string render_json(const ScanReport& r) { return to_json(r).dump(2) + "\n"; }

// Inverse of render_json, used for round-trip checks and by clients that
// want the typed form back.
inline ScanReport from_json(const json& j) {
    ScanReport r;
    r.tool_version = j.at("version").get<std::string>();
    r.file = j.at("file").get<std::string>();
    if (j.contains("scanned_at")) r.scanned_at = j.at("scanned_at").get<std::string>();
    r.total = j.at("total").get<int>();
    for (const auto& [key, value] : j.at("counts").items()) {
        if (auto id = rules::rule_from_string(key)) r.counts[*id] = value.get<int>();
    }
    for (const auto& jo : j.at("occurrences")) {
        rules::SmellOccurrence occ;
        occ.rule = *rules::rule_from_string(jo.at("rule").get<std::string>());
        const auto& el = jo.at("element");
        const std::string kind = el.at("kind").get<std::string>();
        for (auto k : {rules::ElementKind::NodeTypeDefault, rules::ElementKind::TemplateProperty,
                       rules::ElementKind::TemplateAttribute, rules::ElementKind::CommentElement,
                       rules::ElementKind::Name}) {
            if (rules::to_string(k) == kind) occ.kind = k;
        }
        occ.owner = el.at("owner").get<std::string>();
        occ.item = el.at("item").get<std::string>();
        occ.value_excerpt = jo.at("value_excerpt").get<std::string>();
        occ.message = jo.at("message").get<std::string>();
        if (!jo.at("location").is_null()) {
            occ.location = rules::SourceLocation{jo.at("location").at("file").get<std::string>(),
                                                 jo.at("location").at("line").get<int>()};
        }
        r.occurrences.push_back(std::move(occ));
    }
    for (const auto& jd : j.at("diagnostics")) {
        tosca::Diagnostic d;
        d.severity = jd.at("severity").get<std::string>() == "error" ? tosca::Severity::Error
                                                                     : tosca::Severity::Warning;
        d.message = jd.at("message").get<std::string>();
        d.line = jd.at("line").get<int>();
        d.column = jd.at("column").get<int>();
        r.diagnostics.push_back(std::move(d));
    }
    return r;
}

// Rule listing shared byte-for-byte by `rules --format json` and
// GET /v1/rules.
inline json rules_listing_json() {
    json arr = json::array();
    for (rules::RuleId id : rules::all_rules()) {
        arr.push_back({{"id", rules::to_string(id)},
                       {"description", rules::rule_description(id)}});
    }
    return arr;
}

inline std::string render_rules_listing_json() { return rules_listing_json().dump(2) + "\n"; }

inline std::string render_rules_listing_text() {
    std::string out;
    for (rules::RuleId id : rules::all_rules()) {
        out += rules::to_string(id) + "  " + rules::rule_description(id) + "\n";
    }
    return out;
}

}  // namespace tsm::report
