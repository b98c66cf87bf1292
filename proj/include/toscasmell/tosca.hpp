#pragma once

// Typed AST for the TOSCA YAML subset the rules need, plus the parser,
// a comment scanner with source positions, and default resolution along
// derived_from chains.

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tsm::tosca {

enum class ScalarKind { String, Integer, Boolean, Float };

struct Scalar {
    ScalarKind kind = ScalarKind::String;
    std::string text;  // lexical form as written
};

// TOSCA intrinsic function reference, e.g. { get_input: db_password }.
struct FunctionCall {
    std::string name;  // one of get_input, get_property, get_attribute, get_env
    std::vector<std::string> args;
};

struct Value {
    using Sequence = std::vector<Value>;
    using Mapping = std::vector<std::pair<std::string, Value>>;  // document order

    std::variant<Scalar, Sequence, Mapping, FunctionCall> node;

    bool is_scalar() const { return std::holds_alternative<Scalar>(node); }
    bool is_function() const { return std::holds_alternative<FunctionCall>(node); }
    const Scalar* scalar() const { return std::get_if<Scalar>(&node); }
    const FunctionCall* function() const { return std::get_if<FunctionCall>(&node); }
};

inline const std::set<std::string>& intrinsic_function_names() {
    static const std::set<std::string> names{"get_input", "get_property", "get_attribute",
                                             "get_env"};
    return names;
}

// Flow-style rendering used when a structured value must become one string.
inline std::string canonical_string(const Value& v) {
    struct Renderer {
        std::string operator()(const Scalar& s) const { return s.text; }
        std::string operator()(const Value::Sequence& seq) const {
            std::string out = "[";
            for (std::size_t i = 0; i < seq.size(); ++i) {
                if (i) out += ", ";
                out += canonical_string(seq[i]);
            }
            return out + "]";
        }
        std::string operator()(const Value::Mapping& map) const {
            std::string out = "{";
            for (std::size_t i = 0; i < map.size(); ++i) {
                if (i) out += ", ";
                out += map[i].first + ": " + canonical_string(map[i].second);
            }
            return out + "}";
        }
        std::string operator()(const FunctionCall& f) const {
            std::string out = "{" + f.name + ": [";
            for (std::size_t i = 0; i < f.args.size(); ++i) {
                if (i) out += ", ";
                out += f.args[i];
            }
            return out + "]}";
        }
    };
    return std::visit(Renderer{}, v.node);
}

struct PropertyDefinition {
    std::string name;
    std::string declared_type;
    std::optional<Value> default_value;
    std::optional<bool> required;
    std::optional<std::string> description;
    int line = 0;  // 1-based; 0 when unknown
};

using AttributeDefinition = PropertyDefinition;
using InputDefinition = PropertyDefinition;

struct NodeType {
    std::string name;
    std::optional<std::string> derived_from;
    std::vector<PropertyDefinition> properties;
    std::vector<AttributeDefinition> attributes;
    std::vector<std::pair<std::string, std::string>> capabilities;  // name -> capability type
    std::vector<std::pair<std::string, std::string>> requirements;  // name -> target
    std::optional<std::string> description;
    int line = 0;
};

struct PropertyAssignment {
    std::string name;
    Value value;
    int line = 0;
};

struct NodeTemplate {
    std::string name;
    std::string type_name;
    std::vector<PropertyAssignment> properties;
    std::vector<PropertyAssignment> attributes;
    std::vector<std::pair<std::string, std::string>> requirements;
    std::optional<std::string> description;
    int line = 0;
};

struct Comment {
    std::string text;  // without the leading '#'
    int line = 0;      // 1-based
    int column = 0;    // 1-based column of the '#'
};

struct ServiceTemplate {
    std::string definitions_version;
    std::vector<NodeType> node_types;
    std::vector<InputDefinition> inputs;
    std::vector<NodeTemplate> node_templates;
    std::vector<Comment> comments;
    std::string source;  // file path
};

enum class Severity { Warning, Error };

struct Diagnostic {
    Severity severity = Severity::Warning;
    std::string message;
    int line = 0;
    int column = 0;
};

struct ParseResult {
    ServiceTemplate document;
    std::vector<Diagnostic> diagnostics;
    bool ok = true;  // false only on fatal errors (YAML syntax)

    bool has_errors() const { return !ok; }
};

namespace detail {

inline int mark_line(const YAML::Node& n) {
    return n.Mark().line >= 0 ? n.Mark().line + 1 : 0;
}

inline bool looks_like_integer(const std::string& s) {
    static const std::regex re(R"(^[+-]?[0-9]+$)");
    return std::regex_match(s, re);
}

inline bool looks_like_float(const std::string& s) {
    static const std::regex re(R"(^[+-]?([0-9]+\.[0-9]*|\.[0-9]+|[0-9]+[eE][+-]?[0-9]+)([eE][+-]?[0-9]+)?$)");
    return std::regex_match(s, re);
}

inline Scalar classify_scalar(const YAML::Node& n) {
    const std::string text = n.Scalar();
    // Quoted scalars carry the "!" tag in yaml-cpp and stay strings.
    if (n.Tag() == "!") return {ScalarKind::String, text};
    if (text == "true" || text == "false") return {ScalarKind::Boolean, text};
    if (looks_like_integer(text)) return {ScalarKind::Integer, text};
    if (looks_like_float(text)) return {ScalarKind::Float, text};
    return {ScalarKind::String, text};
}

inline Value convert_value(const YAML::Node& n);

inline std::vector<std::string> function_args(const YAML::Node& n) {
    std::vector<std::string> args;
    if (n.IsScalar()) {
        args.push_back(n.Scalar());
    } else if (n.IsSequence()) {
        for (const auto& item : n) {
            args.push_back(item.IsScalar() ? item.Scalar() : canonical_string(convert_value(item)));
        }
    } else {
        args.push_back(canonical_string(convert_value(n)));
    }
    return args;
}

inline Value convert_value(const YAML::Node& n) {
    if (!n.IsDefined() || n.IsNull()) return Value{Scalar{ScalarKind::String, ""}};
    if (n.IsScalar()) return Value{classify_scalar(n)};
    if (n.IsSequence()) {
        Value::Sequence seq;
        for (const auto& item : n) seq.push_back(convert_value(item));
        return Value{std::move(seq)};
    }
    // Single-key mappings naming one of the four intrinsics become calls;
    // everything else stays a Mapping.
    if (n.IsMap() && n.size() == 1) {
        const auto it = n.begin();
        const std::string key = it->first.Scalar();
        if (intrinsic_function_names().count(key)) {
            return Value{FunctionCall{key, function_args(it->second)}};
        }
    }
    Value::Mapping map;
    for (const auto& kv : n) {
        map.emplace_back(kv.first.Scalar(), convert_value(kv.second));
    }
    return Value{std::move(map)};
}

inline void warn_unknown_keys(const YAML::Node& map, const std::set<std::string>& known,
                              const std::string& where, std::vector<Diagnostic>& diags) {
    if (!map.IsMap()) return;
    for (const auto& kv : map) {
        const std::string key = kv.first.Scalar();
        if (!known.count(key)) {
            diags.push_back({Severity::Warning, "unknown key '" + key + "' in " + where + " ignored",
                             mark_line(kv.first), 0});
        }
    }
}

inline PropertyDefinition parse_property_definition(const std::string& name, const YAML::Node& body,
                                                    const std::string& where,
                                                    std::vector<Diagnostic>& diags) {
    PropertyDefinition def;
    def.name = name;
    def.line = mark_line(body.IsDefined() ? body : YAML::Node());
    if (!body.IsDefined() || body.IsNull()) return def;
    if (!body.IsMap()) {
        // Shorthand "name: type"
        if (body.IsScalar()) def.declared_type = body.Scalar();
        return def;
    }
    warn_unknown_keys(body,
                      {"type", "default", "required", "description", "constraints", "entry_schema",
                       "status"},
                      where + "." + name, diags);
    if (body["type"]) def.declared_type = body["type"].Scalar();
    if (body["default"]) {
        def.default_value = convert_value(body["default"]);
        def.line = mark_line(body["default"]);
    }
    if (body["required"] && body["required"].IsScalar()) {
        def.required = body["required"].Scalar() == "true";
    }
    if (body["description"] && body["description"].IsScalar()) {
        def.description = body["description"].Scalar();
    }
    if (def.line == 0) def.line = mark_line(body);
    return def;
}

inline std::vector<std::pair<std::string, std::string>> parse_named_refs(const YAML::Node& n) {
    std::vector<std::pair<std::string, std::string>> out;
    if (!n.IsDefined()) return out;
    auto ref_target = [](const YAML::Node& v) -> std::string {
        if (v.IsScalar()) return v.Scalar();
        if (v.IsMap()) {
            if (v["node"] && v["node"].IsScalar()) return v["node"].Scalar();
            if (v["type"] && v["type"].IsScalar()) return v["type"].Scalar();
            if (v["capability"] && v["capability"].IsScalar()) return v["capability"].Scalar();
        }
        return "";
    };
    if (n.IsSequence()) {
        for (const auto& item : n) {
            if (item.IsMap() && item.size() == 1) {
                const auto it = item.begin();
                out.emplace_back(it->first.Scalar(), ref_target(it->second));
            }
        }
    } else if (n.IsMap()) {
        for (const auto& kv : n) {
            out.emplace_back(kv.first.Scalar(), ref_target(kv.second));
        }
    }
    return out;
}

inline NodeType parse_node_type(const std::string& name, const YAML::Node& body,
                                std::vector<Diagnostic>& diags) {
    NodeType nt;
    nt.name = name;
    nt.line = mark_line(body);
    if (!body.IsMap()) return nt;
    warn_unknown_keys(body,
                      {"derived_from", "description", "metadata", "properties", "attributes",
                       "capabilities", "requirements", "interfaces"},
                      "node type " + name, diags);
    if (body["derived_from"] && body["derived_from"].IsScalar()) {
        nt.derived_from = body["derived_from"].Scalar();
        if (*nt.derived_from == name) {
            diags.push_back({Severity::Warning,
                             "node type '" + name + "' derives from itself; ignoring derived_from",
                             mark_line(body["derived_from"]), 0});
            nt.derived_from.reset();
        }
    }
    if (body["description"] && body["description"].IsScalar()) {
        nt.description = body["description"].Scalar();
    }
    if (body["properties"] && body["properties"].IsMap()) {
        for (const auto& kv : body["properties"]) {
            nt.properties.push_back(parse_property_definition(
                kv.first.Scalar(), kv.second, "node type " + name + " properties", diags));
            if (nt.properties.back().line == 0) nt.properties.back().line = mark_line(kv.first);
        }
    }
    if (body["attributes"] && body["attributes"].IsMap()) {
        for (const auto& kv : body["attributes"]) {
            nt.attributes.push_back(parse_property_definition(
                kv.first.Scalar(), kv.second, "node type " + name + " attributes", diags));
            if (nt.attributes.back().line == 0) nt.attributes.back().line = mark_line(kv.first);
        }
    }
    if (body["capabilities"] && body["capabilities"].IsMap()) {
        for (const auto& kv : body["capabilities"]) {
            std::string cap_type;
            if (kv.second.IsScalar()) {
                cap_type = kv.second.Scalar();
            } else if (kv.second.IsMap() && kv.second["type"]) {
                cap_type = kv.second["type"].Scalar();
            }
            nt.capabilities.emplace_back(kv.first.Scalar(), cap_type);
        }
    }
    nt.requirements = parse_named_refs(body["requirements"]);
    return nt;
}

inline std::vector<PropertyAssignment> parse_assignments(const YAML::Node& n) {
    std::vector<PropertyAssignment> out;
    if (!n.IsDefined() || !n.IsMap()) return out;
    for (const auto& kv : n) {
        PropertyAssignment a;
        a.name = kv.first.Scalar();
        a.value = convert_value(kv.second);
        a.line = mark_line(kv.first);
        out.push_back(std::move(a));
    }
    return out;
}

inline NodeTemplate parse_node_template(const std::string& name, const YAML::Node& body,
                                        std::vector<Diagnostic>& diags) {
    NodeTemplate t;
    t.name = name;
    t.line = mark_line(body);
    if (!body.IsMap()) return t;
    warn_unknown_keys(body,
                      {"type", "description", "metadata", "properties", "attributes",
                       "requirements", "capabilities", "interfaces"},
                      "node template " + name, diags);
    if (body["type"] && body["type"].IsScalar()) t.type_name = body["type"].Scalar();
    if (body["description"] && body["description"].IsScalar()) {
        t.description = body["description"].Scalar();
    }
    t.properties = parse_assignments(body["properties"]);
    t.attributes = parse_assignments(body["attributes"]);
    t.requirements = parse_named_refs(body["requirements"]);
    return t;
}

}  // namespace detail

// Every '#' comment outside quoted strings, with 1-based positions.
// Directive lines ('%YAML', '%TAG') are skipped.
inline std::vector<Comment> collect_comments(const std::string& source) {
    std::vector<Comment> out;
    int line_no = 1;
    std::size_t pos = 0;
    while (pos <= source.size()) {
        std::size_t eol = source.find('\n', pos);
        std::string line = source.substr(pos, eol == std::string::npos ? std::string::npos
                                                                       : eol - pos);
        if (!line.empty() && line[0] != '%') {
            bool in_single = false;
            bool in_double = false;
            for (std::size_t i = 0; i < line.size(); ++i) {
                char c = line[i];
                if (in_double) {
                    if (c == '\\' && i + 1 < line.size()) {
                        ++i;
                    } else if (c == '"') {
                        in_double = false;
                    }
                } else if (in_single) {
                    if (c == '\'') in_single = false;
                } else if (c == '"') {
                    in_double = true;
                } else if (c == '\'') {
                    in_single = true;
                } else if (c == '#') {
                    // YAML only starts a comment at line start or after whitespace.
                    if (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t') {
                        out.push_back({line.substr(i + 1), line_no, static_cast<int>(i + 1)});
                        break;
                    }
                }
            }
        }
        if (eol == std::string::npos) break;
        pos = eol + 1;
        ++line_no;
    }
    return out;
}

inline ParseResult parse(const std::string& source, const std::string& path) {
    ParseResult result;
    result.document.source = path;
    result.document.comments = collect_comments(source);

    YAML::Node root;
    try {
        root = YAML::Load(source);
    } catch (const YAML::ParserException& e) {
        result.ok = false;
        result.diagnostics.push_back({Severity::Error, std::string("YAML syntax error: ") + e.msg,
                                      e.mark.line + 1, e.mark.column + 1});
        return result;
    }

    auto& diags = result.diagnostics;
    auto& doc = result.document;

    if (!root.IsDefined() || root.IsNull()) {
        diags.push_back({Severity::Warning, "empty document: no definitions found", 1, 1});
        return result;
    }
    if (!root.IsMap()) {
        result.ok = false;
        diags.push_back({Severity::Error, "top-level YAML node is not a mapping",
                         detail::mark_line(root), 1});
        return result;
    }

    detail::warn_unknown_keys(root,
                              {"tosca_definitions_version", "description", "metadata", "imports",
                               "dsl_definitions", "node_types", "relationship_types",
                               "capability_types", "data_types", "topology_template"},
                              "document", diags);

    if (root["tosca_definitions_version"] && root["tosca_definitions_version"].IsScalar()) {
        doc.definitions_version = root["tosca_definitions_version"].Scalar();
    } else {
        diags.push_back({Severity::Warning, "missing tosca_definitions_version", 1, 1});
    }

    std::set<std::string> type_names;
    if (root["node_types"] && root["node_types"].IsMap()) {
        for (const auto& kv : root["node_types"]) {
            const std::string name = kv.first.Scalar();
            if (!type_names.insert(name).second) {
                diags.push_back({Severity::Warning, "duplicate node type '" + name + "'",
                                 detail::mark_line(kv.first), 0});
                continue;
            }
            auto nt = detail::parse_node_type(name, kv.second, diags);
            if (nt.line == 0) nt.line = detail::mark_line(kv.first);
            doc.node_types.push_back(std::move(nt));
        }
    }

    if (root["topology_template"] && root["topology_template"].IsMap()) {
        const auto topo = root["topology_template"];
        detail::warn_unknown_keys(topo,
                                  {"description", "inputs", "node_templates", "outputs",
                                   "relationship_templates", "policies"},
                                  "topology_template", diags);
        if (topo["inputs"] && topo["inputs"].IsMap()) {
            for (const auto& kv : topo["inputs"]) {
                auto def = detail::parse_property_definition(kv.first.Scalar(), kv.second,
                                                             "inputs", diags);
                if (def.line == 0) def.line = detail::mark_line(kv.first);
                doc.inputs.push_back(std::move(def));
            }
        }
        if (topo["node_templates"] && topo["node_templates"].IsMap()) {
            std::set<std::string> template_names;
            for (const auto& kv : topo["node_templates"]) {
                const std::string name = kv.first.Scalar();
                if (!template_names.insert(name).second) {
                    diags.push_back({Severity::Warning, "duplicate node template '" + name + "'",
                                     detail::mark_line(kv.first), 0});
                    continue;
                }
                auto t = detail::parse_node_template(name, kv.second, diags);
                if (t.line == 0) t.line = detail::mark_line(kv.first);
                if (!t.type_name.empty() && !type_names.count(t.type_name)) {
                    diags.push_back({Severity::Warning,
                                     "node template '" + name + "' references node type '" +
                                         t.type_name + "' not defined in this file",
                                     t.line, 0});
                }
                doc.node_templates.push_back(std::move(t));
            }
        }
    }

    if (doc.node_types.empty() && doc.node_templates.empty() && doc.inputs.empty()) {
        diags.push_back({Severity::Warning, "document defines no node types or templates", 1, 1});
    }
    return result;
}

class DerivationCycleError : public std::runtime_error {
  public:
    explicit DerivationCycleError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class PropertyOrigin { Assigned, Default };

struct EffectiveProperty {
    std::string name;
    Value value;
    PropertyOrigin origin;
};

// Assignment overrides type default; defaults inherit along derived_from,
// nearest definition wins. Throws DerivationCycleError on a type cycle.
inline std::vector<EffectiveProperty> effective_properties(const NodeTemplate& tmpl,
                                                           const std::vector<NodeType>& types) {
    std::map<std::string, EffectiveProperty> merged;

    std::map<std::string, const NodeType*> by_name;
    for (const auto& t : types) by_name.emplace(t.name, &t);

    std::vector<std::string> chain;
    std::set<std::string> visited;
    const NodeType* cur = nullptr;
    if (auto it = by_name.find(tmpl.type_name); it != by_name.end()) cur = it->second;
    while (cur) {
        if (!visited.insert(cur->name).second) {
            std::string cycle;
            for (const auto& n : chain) cycle += n + " -> ";
            cycle += cur->name;
            throw DerivationCycleError("derived_from cycle: " + cycle);
        }
        chain.push_back(cur->name);
        for (const auto& def : cur->properties) {
            // Nearest (most-derived) default wins; ancestors never overwrite.
            if (def.default_value && !merged.count(def.name)) {
                merged.emplace(def.name, EffectiveProperty{def.name, *def.default_value,
                                                           PropertyOrigin::Default});
            }
        }
        cur = nullptr;
        if (!chain.empty()) {
            const NodeType* last = by_name.at(chain.back());
            if (last->derived_from) {
                if (auto it = by_name.find(*last->derived_from); it != by_name.end()) {
                    cur = it->second;
                }
            }
        }
    }

    for (const auto& a : tmpl.properties) {
        merged[a.name] = EffectiveProperty{a.name, a.value, PropertyOrigin::Assigned};
    }

    std::vector<EffectiveProperty> out;
    for (auto& [name, ep] : merged) out.push_back(std::move(ep));
    return out;
}

}  // namespace tsm::tosca
