#pragma once

// End-to-end scan pipeline shared by the CLI and the HTTP service:
// parse -> map -> run rules -> report.

#include <string>
#include <vector>

#include "toscasmell/mapper.hpp"
#include "toscasmell/report.hpp"
#include "toscasmell/rules.hpp"
#include "toscasmell/tosca.hpp"

namespace tsm::scan {

inline rules::ScanContext build_scan_context(const tosca::ServiceTemplate& st,
                                             const rdf::Graph& graph,
                                             const rules::RuleConfig& config) {
    rules::ScanContext ctx;
    ctx.graph = &graph;
    ctx.comments = st.comments;
    ctx.file = st.source;
    ctx.config = config;

    auto loc = [&](int line) -> std::optional<rules::SourceLocation> {
        if (line <= 0) return std::nullopt;
        return rules::SourceLocation{st.source, line};
    };

    for (const auto& nt : st.node_types) {
        ctx.name_inventory.push_back({nt.name, "node-type", loc(nt.line)});
        if (nt.description) ctx.descriptions.push_back({*nt.description, nt.name, loc(nt.line)});
        for (const auto& p : nt.properties) {
            ctx.name_inventory.push_back({p.name, "property", loc(p.line)});
            if (p.description) ctx.descriptions.push_back({*p.description, nt.name, loc(p.line)});
            ctx.locations[rules::element_key(rules::ElementKind::NodeTypeDefault, nt.name,
                                             p.name)] = {st.source, p.line};
        }
        for (const auto& a : nt.attributes) {
            ctx.name_inventory.push_back({a.name, "attribute", loc(a.line)});
            if (a.description) ctx.descriptions.push_back({*a.description, nt.name, loc(a.line)});
            ctx.locations[rules::element_key(rules::ElementKind::NodeTypeDefault, nt.name,
                                             a.name)] = {st.source, a.line};
        }
    }
    for (const auto& in : st.inputs) {
        ctx.name_inventory.push_back({in.name, "input", loc(in.line)});
        if (in.description) ctx.descriptions.push_back({*in.description, in.name, loc(in.line)});
    }
    for (const auto& t : st.node_templates) {
        ctx.name_inventory.push_back({t.name, "node-template", loc(t.line)});
        if (t.description) ctx.descriptions.push_back({*t.description, t.name, loc(t.line)});
        for (const auto& p : t.properties) {
            ctx.name_inventory.push_back({p.name, "property", loc(p.line)});
            ctx.locations[rules::element_key(rules::ElementKind::TemplateProperty, t.name,
                                             p.name)] = {st.source, p.line};
        }
        for (const auto& a : t.attributes) {
            ctx.name_inventory.push_back({a.name, "attribute", loc(a.line)});
            ctx.locations[rules::element_key(rules::ElementKind::TemplateAttribute, t.name,
                                             a.name)] = {st.source, a.line};
        }
    }
    return ctx;
}

struct ScanOutcome {
    bool parse_ok = true;
    report::ScanReport report;
};

inline ScanOutcome scan_source(const std::string& source, const std::string& path,
                               const rules::RuleConfig& config) {
    ScanOutcome outcome;
    auto parsed = tosca::parse(source, path);
    if (!parsed.ok) {
        outcome.parse_ok = false;
        outcome.report = report::build(path, {}, parsed.diagnostics, config);
        return outcome;
    }
    auto graph = mapper::map_service_template(parsed.document);
    auto ctx = build_scan_context(parsed.document, graph, config);
    auto occurrences = rules::run_all(ctx);
    outcome.report = report::build(path, std::move(occurrences), parsed.diagnostics, config);
    return outcome;
}

}  // namespace tsm::scan
