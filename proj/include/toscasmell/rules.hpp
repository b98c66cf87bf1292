#pragma once

// The ten detection rules. Value rules pull (name, value) pairs out of the
// graph with two query shapes, Tier-1 node-type defaults and Tier-2
// template assignments, then apply string predicates to them. Comment and
// naming rules read the side-channel inventories in ScanContext.

#include <algorithm>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "toscasmell/mapper.hpp"
#include "toscasmell/query.hpp"
#include "toscasmell/rdf.hpp"
#include "toscasmell/tosca.hpp"
#include "toscasmell/vocab.hpp"

namespace tsm::rules {

enum class RuleId {
    AdminByDefault,
    EmptyPassword,
    HardCodedSecret,
    SuspiciousComment,
    UnrestrictedIp,
    InsecureCommunication,
    WeakCryptoAlgorithm,
    InsufficientKeySize,
    InconsistentNaming,
    InvalidPort,
};

inline const std::vector<RuleId>& all_rules() {
    static const std::vector<RuleId> ids{
        RuleId::AdminByDefault,     RuleId::EmptyPassword,      RuleId::HardCodedSecret,
        RuleId::SuspiciousComment,  RuleId::UnrestrictedIp,     RuleId::InsecureCommunication,
        RuleId::WeakCryptoAlgorithm, RuleId::InsufficientKeySize, RuleId::InconsistentNaming,
        RuleId::InvalidPort,
    };
    return ids;
}

inline std::string to_string(RuleId id) {
    switch (id) {
        case RuleId::AdminByDefault: return "admin-by-default";
        case RuleId::EmptyPassword: return "empty-password";
        case RuleId::HardCodedSecret: return "hard-coded-secret";
        case RuleId::SuspiciousComment: return "suspicious-comment";
        case RuleId::UnrestrictedIp: return "unrestricted-ip";
        case RuleId::InsecureCommunication: return "insecure-communication";
        case RuleId::WeakCryptoAlgorithm: return "weak-crypto-algorithm";
        case RuleId::InsufficientKeySize: return "insufficient-key-size";
        case RuleId::InconsistentNaming: return "inconsistent-naming";
        case RuleId::InvalidPort: return "invalid-port";
    }
    return "unknown";
}

inline std::optional<RuleId> rule_from_string(const std::string& s) {
    for (RuleId id : all_rules()) {
        if (to_string(id) == s) return id;
    }
    return std::nullopt;
}

inline std::string rule_description(RuleId id) {
    switch (id) {
        case RuleId::AdminByDefault:
            return "A user-named property defaults to an administrative account such as 'root'.";
        case RuleId::EmptyPassword:
            return "A password property is set or defaulted to an empty string.";
        case RuleId::HardCodedSecret:
            return "A username, password, or secret key is written literally instead of being "
                   "injected via an input.";
        case RuleId::SuspiciousComment:
            return "A comment contains keywords that point at secrets or unfinished, broken "
                   "work.";
        case RuleId::UnrestrictedIp:
            return "A bind address of 0.0.0.0 or :: exposes a service on every interface.";
        case RuleId::InsecureCommunication:
            return "A URL uses an insecure scheme such as http, ftp, or telnet.";
        case RuleId::WeakCryptoAlgorithm:
            return "A weak cryptographic algorithm such as MD5, SHA1, RC4, or DES is referenced.";
        case RuleId::InsufficientKeySize:
            return "An encryption key size is below the configured minimum (default 2048 bits).";
        case RuleId::InconsistentNaming:
            return "Element names do not follow one consistent naming convention.";
        case RuleId::InvalidPort:
            return "A port value is outside the range 0-65535 or is not a number.";
    }
    return "";
}

enum class NamingConvention { Camel, Snake, Dash, Auto };

struct RuleConfig {
    std::set<RuleId> enabled{all_rules().begin(), all_rules().end()};
    NamingConvention convention = NamingConvention::Auto;
    int min_key_size_bits = 2048;
    std::set<std::string> suspicious_keywords{"todo",   "fixme",  "hack",     "xxx",       "bug",
                                              "broken", "workaround", "secret", "password",
                                              "credential"};
    std::set<std::string> insecure_schemes{"http", "ftp", "telnet"};
    std::vector<std::string> weak_algorithms{"md5", "sha-?1", "rc4", "des"};
    bool redact_secrets = true;

    bool is_enabled(RuleId id) const { return enabled.count(id) > 0; }
};

enum class ElementKind { NodeTypeDefault, TemplateProperty, TemplateAttribute, CommentElement, Name };

inline std::string to_string(ElementKind k) {
    switch (k) {
        case ElementKind::NodeTypeDefault: return "node-type-default";
        case ElementKind::TemplateProperty: return "template-property";
        case ElementKind::TemplateAttribute: return "template-attribute";
        case ElementKind::CommentElement: return "comment";
        case ElementKind::Name: return "name";
    }
    return "";
}

struct SourceLocation {
    std::string file;
    int line = 0;
};

struct SmellOccurrence {
    RuleId rule;
    ElementKind kind;
    std::string owner;   // enclosing node type / template name ("" for file scope)
    std::string item;    // property/attribute/name, or a comment anchor
    std::string value_excerpt;
    std::string message;
    std::optional<SourceLocation> location;
    std::optional<std::string> graph_subject;
};

struct NamedElement {
    std::string name;
    std::string kind;  // node-type | node-template | property | attribute | input
    std::optional<SourceLocation> location;
};

struct DescriptionField {
    std::string text;
    std::string owner;
    std::optional<SourceLocation> location;
};

struct ScanContext {
    const rdf::Graph* graph = nullptr;
    std::vector<tosca::Comment> comments;
    std::vector<NamedElement> name_inventory;
    std::vector<DescriptionField> descriptions;
    // (kind, owner, item) -> source location, built from the AST by the scan
    // pipeline. Lookups that miss just omit the location.
    std::map<std::string, SourceLocation> locations;
    std::string file;
    RuleConfig config;
};

inline std::string element_key(ElementKind kind, const std::string& owner,
                               const std::string& item) {
    return to_string(kind) + '\x1f' + owner + '\x1f' + item;
}

// ---------------------------------------------------------------------------
// Helper predicates (Table-1 style string checks). Case-insensitive unless
// stated. "Token" means a segment delimited by string start/end, '_' or '-'.
// ---------------------------------------------------------------------------
namespace predicates {

inline std::string lowercase(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

inline bool has_token(const std::string& name, const std::string& token_alternatives) {
    std::regex re("(^|[_-])(" + token_alternatives + ")([_-]|$)", std::regex::icase);
    return std::regex_search(name, re);
}

// 'user' as a prefix or suffix of the whole name.
inline bool is_user(const std::string& name) {
    static const std::regex re("(^user|user$)", std::regex::icase);
    return std::regex_search(name, re);
}

inline bool is_admin_value(const std::string& v) {
    const std::string lv = lowercase(v);
    return lv == "admin" || lv == "root";
}

inline bool is_password(const std::string& name) {
    return has_token(name, "password|passwd|pwd");
}

inline bool is_secret_key(const std::string& name) {
    if (has_token(name, "secret|token")) return true;
    static const std::regex key_suffix("(^|[_-])key$", std::regex::icase);
    return std::regex_search(name, key_suffix);
}

inline bool is_empty(const std::string& v) { return trim(v).empty(); }

inline bool is_ip_name(const std::string& name) { return has_token(name, "ip|address|bind"); }

inline bool is_invalid_bind(const std::string& v) {
    return v == "0.0.0.0" || v == "::" || v == "0.0.0.0/0" || v == "::/0";
}

inline bool is_url(const std::string& v) {
    static const std::regex re(R"(^[A-Za-z][A-Za-z0-9+.\-]*://)");
    return std::regex_search(v, re);
}

inline bool is_insecure_url(const std::string& v, const std::set<std::string>& insecure_schemes) {
    if (!is_url(v)) return false;
    const std::string scheme = lowercase(v.substr(0, v.find("://")));
    return insecure_schemes.count(scheme) > 0;
}

// Word-boundary match for any configured algorithm token; 'des' does not
// fire when preceded by a '3' (triple DES).
inline bool has_weak_algo(const std::string& v, const std::vector<std::string>& tokens) {
    for (const auto& token : tokens) {
        std::regex re("\\b(" + token + ")\\b", std::regex::icase);
        auto begin = std::sregex_iterator(v.begin(), v.end(), re);
        for (auto it = begin; it != std::sregex_iterator(); ++it) {
            const auto& m = *it;
            if (lowercase(m.str(1)) == "des") {
                const auto pos = static_cast<std::size_t>(m.position(1));
                std::string prefix = v.substr(0, pos);
                static const std::regex triple(R"(3[^A-Za-z0-9]?$)");
                if (std::regex_search(prefix, triple)) continue;
            }
            return true;
        }
    }
    return false;
}

inline bool is_key_size_name(const std::string& name) {
    return has_token(name, "key") && has_token(name, "size|length|bits");
}

inline std::optional<long long> parse_integer(const std::string& v) {
    static const std::regex re(R"(^[+-]?[0-9]+$)");
    const std::string t = trim(v);
    if (!std::regex_match(t, re)) return std::nullopt;
    try {
        return std::stoll(t);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline bool insufficient_key_size(const std::string& v, int threshold) {
    auto n = parse_integer(v);
    return n && *n < threshold;
}

inline bool is_port_name(const std::string& name) { return has_token(name, "port"); }

// Unparsable port values also count as out of range.
inline bool out_of_range_port(const std::string& v) {
    auto n = parse_integer(v);
    if (!n) return true;
    return *n < 0 || *n > 65535;
}

inline bool is_camel(const std::string& name) {
    static const std::regex re(R"(^[a-z][a-zA-Z0-9]*$)");
    return std::regex_match(name, re);
}

inline bool is_snake(const std::string& name) {
    static const std::regex re(R"(^[a-z0-9]+(_[a-z0-9]+)*$)");
    return std::regex_match(name, re);
}

inline bool is_dash(const std::string& name) {
    static const std::regex re(R"(^[a-z0-9]+(-[a-z0-9]+)*$)");
    return std::regex_match(name, re);
}

inline bool is_suspicious(const std::string& text, const std::set<std::string>& keywords) {
    const std::string lower = lowercase(text);
    for (const auto& kw : keywords) {
        std::regex re("\\b" + kw + "\\b");
        if (std::regex_search(lower, re)) return true;
    }
    return false;
}

}  // namespace predicates

// ---------------------------------------------------------------------------
// Value extraction: the two tier-specific query shapes.
// ---------------------------------------------------------------------------
namespace detail {

struct ValueEntry {
    ElementKind kind;
    std::string owner;  // decoded local name of the owning situation/template
    std::string item;   // decoded local name of the classified parameter
    std::optional<std::string> value;  // lexical form
    rdf::DataType value_type = rdf::DataType::String;
    bool is_variable = false;  // tosca:hasVariableValue link present
    std::string concept_iri;
};

inline std::string decoded_local(const rdf::Term& t) {
    const auto* iri = std::get_if<rdf::Iri>(&t);
    if (!iri) return rdf::term_str(t);
    return mapper::percent_decode(rdf::local_name(iri->full));
}

// Tier-1: node-type property/attribute defaults via the DnS shape.
inline void collect_tier1(const rdf::Graph& g, std::vector<ValueEntry>& out) {
    using namespace query;
    Query q;
    q.select = {"owner", "concept", "paramDef", "value"};
    q.where = {
        {Variable{"owner"}, vocab::hasContext(), Variable{"desc"}},
        {Variable{"desc"}, vocab::defines(), Variable{"concept"}},
        {Variable{"concept"}, vocab::classifies(), Variable{"paramDef"}},
        {Variable{"concept"}, vocab::hasParameter(), Variable{"p"}},
        {Variable{"p"}, vocab::classifies(), vocab::defaultMarker()},
        {Variable{"p"}, vocab::hasDataValue(), Variable{"value"}},
    };
    for (const auto& row : evaluate(g, q).rows) {
        ValueEntry e;
        e.kind = ElementKind::NodeTypeDefault;
        e.owner = decoded_local(*row.values[0]);
        e.concept_iri = rdf::term_str(*row.values[1]);
        e.item = decoded_local(*row.values[2]);
        if (const auto* lit = std::get_if<rdf::Literal>(&*row.values[3])) {
            e.value = lit->lexical;
            e.value_type = lit->datatype;
        }
        out.push_back(std::move(e));
    }
}

// Tier-2: template property/attribute assignments; value optional so that
// variable-valued (intrinsic) assignments are still visible to the rules.
inline void collect_tier2(const rdf::Graph& g, const rdf::Iri& link, ElementKind kind,
                          std::vector<ValueEntry>& out) {
    using namespace query;
    Query q;
    q.select = {"owner", "concept", "paramDef", "value", "fn"};
    q.where = {
        {Variable{"owner"}, link, Variable{"concept"}},
        {Variable{"concept"}, vocab::classifies(), Variable{"paramDef"}},
    };
    q.optionals = {
        {{Variable{"concept"}, vocab::hasDataValue(), Variable{"value"}}},
        {{Variable{"concept"}, vocab::hasVariableValue(), Variable{"fn"}}},
    };
    for (const auto& row : evaluate(g, q).rows) {
        ValueEntry e;
        e.kind = kind;
        e.owner = decoded_local(*row.values[0]);
        e.concept_iri = rdf::term_str(*row.values[1]);
        e.item = decoded_local(*row.values[2]);
        if (row.values[3]) {
            if (const auto* lit = std::get_if<rdf::Literal>(&*row.values[3])) {
                e.value = lit->lexical;
                e.value_type = lit->datatype;
            }
        }
        e.is_variable = row.values[4].has_value();
        out.push_back(std::move(e));
    }
}

inline std::vector<ValueEntry> collect_value_entries(const rdf::Graph& g) {
    std::vector<ValueEntry> out;
    collect_tier1(g, out);
    collect_tier2(g, vocab::hasProperty(), ElementKind::TemplateProperty, out);
    collect_tier2(g, vocab::hasAttribute(), ElementKind::TemplateAttribute, out);
    return out;
}

inline std::string redact(const std::string& v) {
    const std::string head = v.substr(0, std::min<std::size_t>(2, v.size()));
    return head + "… (" + std::to_string(v.size()) + " chars)";
}

inline SmellOccurrence make_occurrence(const ScanContext& ctx, RuleId rule, const ValueEntry& e,
                                       std::string message, bool redact_value) {
    SmellOccurrence occ;
    occ.rule = rule;
    occ.kind = e.kind;
    occ.owner = e.owner;
    occ.item = e.item;
    if (e.value) {
        occ.value_excerpt = (redact_value && ctx.config.redact_secrets) ? redact(*e.value)
                                                                        : *e.value;
    }
    occ.message = std::move(message);
    occ.graph_subject = e.concept_iri;
    if (auto it = ctx.locations.find(element_key(e.kind, e.owner, e.item));
        it != ctx.locations.end()) {
        occ.location = it->second;
    }
    return occ;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Detectors
// ---------------------------------------------------------------------------

inline std::vector<SmellOccurrence> detect_admin_by_default(const ScanContext& ctx) {
    namespace p = predicates;
    std::vector<SmellOccurrence> out;
    for (const auto& e : detail::collect_value_entries(*ctx.graph)) {
        if (e.value && p::is_user(e.item) && p::is_admin_value(*e.value)) {
            out.push_back(detail::make_occurrence(
                ctx, RuleId::AdminByDefault, e,
                "'" + e.item + "' uses administrative account '" + *e.value + "'", false));
        }
    }
    return out;
}

inline std::vector<SmellOccurrence> detect_empty_password(const ScanContext& ctx) {
    namespace p = predicates;
    std::vector<SmellOccurrence> out;
    for (const auto& e : detail::collect_value_entries(*ctx.graph)) {
        if (e.value && p::is_password(e.item) && e.value_type == rdf::DataType::String &&
            p::is_empty(*e.value)) {
            out.push_back(detail::make_occurrence(ctx, RuleId::EmptyPassword, e,
                                                  "password '" + e.item + "' is empty", true));
        }
    }
    return out;
}

inline std::vector<SmellOccurrence> detect_hard_coded_secret(const ScanContext& ctx) {
    namespace p = predicates;
    std::vector<SmellOccurrence> out;
    for (const auto& e : detail::collect_value_entries(*ctx.graph)) {
        if (!(p::is_password(e.item) || p::is_user(e.item) || p::is_secret_key(e.item))) continue;
        const bool nonempty = e.value && !p::is_empty(*e.value);
        bool fires = false;
        if (e.kind == ElementKind::NodeTypeDefault) {
            fires = nonempty;
        } else {
            fires = nonempty && !e.is_variable;
        }
        if (fires) {
            out.push_back(detail::make_occurrence(
                ctx, RuleId::HardCodedSecret, e,
                "'" + e.item + "' carries a hardcoded value; inject it via an input instead",
                true));
        }
    }
    return out;
}

inline std::vector<SmellOccurrence> detect_suspicious_comment(const ScanContext& ctx) {
    namespace p = predicates;
    std::vector<SmellOccurrence> out;
    for (const auto& c : ctx.comments) {
        if (!p::is_suspicious(c.text, ctx.config.suspicious_keywords)) continue;
        SmellOccurrence occ;
        occ.rule = RuleId::SuspiciousComment;
        occ.kind = ElementKind::CommentElement;
        occ.owner = "";
        occ.item = "line-" + std::to_string(c.line);
        occ.value_excerpt = p::trim(c.text);
        occ.message = "comment hints at secrets or broken work";
        occ.location = SourceLocation{ctx.file, c.line};
        out.push_back(std::move(occ));
    }
    for (const auto& d : ctx.descriptions) {
        if (!p::is_suspicious(d.text, ctx.config.suspicious_keywords)) continue;
        SmellOccurrence occ;
        occ.rule = RuleId::SuspiciousComment;
        occ.kind = ElementKind::CommentElement;
        occ.owner = d.owner;
        occ.item = "description";
        occ.value_excerpt = p::trim(d.text);
        occ.message = "description hints at secrets or broken work";
        occ.location = d.location;
        out.push_back(std::move(occ));
    }
    return out;
}

inline std::vector<SmellOccurrence> detect_unrestricted_ip(const ScanContext& ctx) {
    namespace p = predicates;
    std::vector<SmellOccurrence> out;
    for (const auto& e : detail::collect_value_entries(*ctx.graph)) {
        if (e.value && p::is_ip_name(e.item) && p::is_invalid_bind(*e.value)) {
            out.push_back(detail::make_occurrence(
                ctx, RuleId::UnrestrictedIp, e,
                "'" + e.item + "' binds to unrestricted address '" + *e.value + "'", false));
        }
    }
    return out;
}

inline std::vector<SmellOccurrence> detect_insecure_communication(const ScanContext& ctx) {
    namespace p = predicates;
    std::vector<SmellOccurrence> out;
    for (const auto& e : detail::collect_value_entries(*ctx.graph)) {
        if (e.value && p::is_insecure_url(*e.value, ctx.config.insecure_schemes)) {
            out.push_back(detail::make_occurrence(
                ctx, RuleId::InsecureCommunication, e,
                "'" + e.item + "' uses an insecure scheme: " + *e.value, false));
        }
    }
    return out;
}

inline std::vector<SmellOccurrence> detect_weak_crypto(const ScanContext& ctx) {
    namespace p = predicates;
    std::vector<SmellOccurrence> out;
    for (const auto& e : detail::collect_value_entries(*ctx.graph)) {
        if (e.value && p::has_weak_algo(*e.value, ctx.config.weak_algorithms)) {
            out.push_back(detail::make_occurrence(
                ctx, RuleId::WeakCryptoAlgorithm, e,
                "'" + e.item + "' references weak algorithm in '" + *e.value + "'", false));
        }
    }
    return out;
}

inline std::vector<SmellOccurrence> detect_insufficient_key_size(const ScanContext& ctx) {
    namespace p = predicates;
    std::vector<SmellOccurrence> out;
    for (const auto& e : detail::collect_value_entries(*ctx.graph)) {
        if (e.value && p::is_key_size_name(e.item) &&
            p::insufficient_key_size(*e.value, ctx.config.min_key_size_bits)) {
            out.push_back(detail::make_occurrence(
                ctx, RuleId::InsufficientKeySize, e,
                "'" + e.item + "' is " + *e.value + " bits, below the minimum of " +
                    std::to_string(ctx.config.min_key_size_bits),
                false));
        }
    }
    return out;
}

inline std::vector<SmellOccurrence> detect_invalid_port(const ScanContext& ctx) {
    namespace p = predicates;
    std::vector<SmellOccurrence> out;
    for (const auto& e : detail::collect_value_entries(*ctx.graph)) {
        if (e.value && p::is_port_name(e.item) && p::out_of_range_port(*e.value)) {
            out.push_back(detail::make_occurrence(
                ctx, RuleId::InvalidPort, e,
                "'" + e.item + "' value '" + *e.value + "' is not a port in 0-65535", false));
        }
    }
    return out;
}

inline std::vector<SmellOccurrence> detect_inconsistent_naming(const ScanContext& ctx) {
    namespace p = predicates;
    std::vector<SmellOccurrence> out;

    // Dotted names are namespaced TOSCA type identifiers; they follow their
    // own convention and are exempt here.
    std::vector<const NamedElement*> candidates;
    for (const auto& e : ctx.name_inventory) {
        if (e.name.find('.') == std::string::npos) candidates.push_back(&e);
    }

    NamingConvention chosen = ctx.config.convention;
    if (chosen == NamingConvention::Auto) {
        int snake = 0, dash = 0, camel = 0;
        for (const auto* e : candidates) {
            if (p::is_snake(e->name)) ++snake;
            if (p::is_dash(e->name)) ++dash;
            if (p::is_camel(e->name)) ++camel;
        }
        // Tie-break: snake > dash > camel.
        chosen = NamingConvention::Snake;
        int best = snake;
        if (dash > best) {
            chosen = NamingConvention::Dash;
            best = dash;
        }
        if (camel > best) chosen = NamingConvention::Camel;
    }

    auto matches = [&](const std::string& name) {
        switch (chosen) {
            case NamingConvention::Snake: return p::is_snake(name);
            case NamingConvention::Dash: return p::is_dash(name);
            case NamingConvention::Camel: return p::is_camel(name);
            default: return true;
        }
    };
    const char* conv_name = chosen == NamingConvention::Snake  ? "snake_case"
                            : chosen == NamingConvention::Dash ? "dash-case"
                                                               : "camelCase";
    for (const auto* e : candidates) {
        if (matches(e->name)) continue;
        SmellOccurrence occ;
        occ.rule = RuleId::InconsistentNaming;
        occ.kind = ElementKind::Name;
        occ.owner = e->kind;
        occ.item = e->name;
        occ.value_excerpt = e->name;
        occ.message = std::string(e->kind) + " name '" + e->name + "' does not follow " +
                      conv_name;
        occ.location = e->location;
        out.push_back(std::move(occ));
    }
    return out;
}

inline std::vector<SmellOccurrence> run_rule(RuleId id, const ScanContext& ctx) {
    switch (id) {
        case RuleId::AdminByDefault: return detect_admin_by_default(ctx);
        case RuleId::EmptyPassword: return detect_empty_password(ctx);
        case RuleId::HardCodedSecret: return detect_hard_coded_secret(ctx);
        case RuleId::SuspiciousComment: return detect_suspicious_comment(ctx);
        case RuleId::UnrestrictedIp: return detect_unrestricted_ip(ctx);
        case RuleId::InsecureCommunication: return detect_insecure_communication(ctx);
        case RuleId::WeakCryptoAlgorithm: return detect_weak_crypto(ctx);
        case RuleId::InsufficientKeySize: return detect_insufficient_key_size(ctx);
        case RuleId::InconsistentNaming: return detect_inconsistent_naming(ctx);
        case RuleId::InvalidPort: return detect_invalid_port(ctx);
    }
    return {};
}

// All enabled rules, deduplicated to one occurrence per (rule, element) and
// sorted by (file, line, rule id, element).
inline std::vector<SmellOccurrence> run_all(const ScanContext& ctx) {
    std::vector<SmellOccurrence> all;
    for (RuleId id : all_rules()) {
        if (!ctx.config.is_enabled(id)) continue;
        auto occs = run_rule(id, ctx);
        all.insert(all.end(), occs.begin(), occs.end());
    }
    std::set<std::string> seen;
    std::vector<SmellOccurrence> deduped;
    for (auto& occ : all) {
        std::string key = to_string(occ.rule) + '\x1f' + element_key(occ.kind, occ.owner, occ.item);
        if (seen.insert(key).second) deduped.push_back(std::move(occ));
    }
    std::sort(deduped.begin(), deduped.end(),
              [](const SmellOccurrence& a, const SmellOccurrence& b) {
                  auto key = [](const SmellOccurrence& o) {
                      return std::make_tuple(o.location ? o.location->file : std::string{},
                                             o.location ? o.location->line : 0, to_string(o.rule),
                                             element_key(o.kind, o.owner, o.item));
                  };
                  return key(a) < key(b);
              });
    return deduped;
}

}  // namespace tsm::rules
