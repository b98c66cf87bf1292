#pragma once

// AST -> knowledge graph translation. Node types become Tier-1 shapes
// (Situation + Description + Concepts with default Parameters), node
// templates become Tier-2 shapes. All node identities are path-derived
// skolem IRIs, so the same document always maps to the same bytes.

#include <string>
#include <vector>

#include "toscasmell/rdf.hpp"
#include "toscasmell/tosca.hpp"
#include "toscasmell/vocab.hpp"

namespace tsm::mapper {

inline std::string percent_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0xF];
        }
    }
    return out;
}

inline std::string percent_decode(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '%' && i + 2 < s.size()) {
            out += static_cast<char>(std::stoi(s.substr(i + 1, 2), nullptr, 16));
            i += 2;
        } else {
            out += s[i];
        }
    }
    return out;
}

struct MappingContext {
    std::string base;  // document base IRI, ends with '/'

    rdf::Iri element(const std::string& path) const { return rdf::Iri{base + path}; }
    rdf::Iri type_iri(const std::string& name) const { return element(percent_encode(name)); }
    rdf::Iri template_iri(const std::string& name) const { return element(percent_encode(name)); }
    rdf::Iri param_entity(const std::string& name) const {
        return element("param/" + percent_encode(name));
    }
};

inline MappingContext make_context(const std::string& path) {
    // Base from the file name stem; good enough for per-file scans.
    std::string stem = path;
    if (auto slash = stem.find_last_of("/\\"); slash != std::string::npos) {
        stem = stem.substr(slash + 1);
    }
    if (auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0) {
        stem = stem.substr(0, dot);
    }
    if (stem.empty()) stem = "doc";
    return MappingContext{std::string(vocab::kExampleBase) + percent_encode(stem) + "/"};
}

namespace detail {

inline rdf::Literal scalar_literal(const tosca::Scalar& s) {
    switch (s.kind) {
        case tosca::ScalarKind::Integer: return {s.text, rdf::DataType::Integer};
        case tosca::ScalarKind::Boolean: return {s.text, rdf::DataType::Boolean};
        case tosca::ScalarKind::Float: return {s.text, rdf::DataType::Float};
        default: return {s.text, rdf::DataType::String};
    }
}

// Structured values are flattened: the rules compare strings.
inline rdf::Literal value_literal(const tosca::Value& v) {
    if (const auto* s = v.scalar()) return scalar_literal(*s);
    return {tosca::canonical_string(v), rdf::DataType::String};
}

inline void emit_definition_concept(const rdf::Iri& description, const rdf::Iri& concept_node,
                                    const rdf::Iri& concept_class,
                                    const tosca::PropertyDefinition& def,
                                    const MappingContext& ctx, std::vector<rdf::Triple>& out) {
    out.push_back({description, vocab::defines(), concept_node});
    out.push_back({concept_node, vocab::rdfType(), concept_class});
    out.push_back({concept_node, vocab::classifies(), ctx.param_entity(def.name)});
    if (def.default_value) {
        rdf::Iri param{concept_node.full + "/default"};
        out.push_back({concept_node, vocab::hasParameter(), param});
        out.push_back({param, vocab::classifies(), vocab::defaultMarker()});
        out.push_back({param, vocab::hasDataValue(), value_literal(*def.default_value)});
    }
}

inline void emit_assignment(const rdf::Iri& owner, const rdf::Iri& link_pred,
                            const rdf::Iri& concept_class, const std::string& segment,
                            const tosca::PropertyAssignment& a, const MappingContext& ctx,
                            std::vector<rdf::Triple>& out) {
    rdf::Iri node{owner.full + "/" + segment + "/" + percent_encode(a.name)};
    out.push_back({owner, link_pred, node});
    out.push_back({node, vocab::rdfType(), concept_class});
    out.push_back({node, vocab::classifies(), ctx.param_entity(a.name)});
    if (const auto* fn = a.value.function()) {
        // Intrinsic references are variables, not data values.
        rdf::Iri fn_node{node.full + "/fn"};
        out.push_back({node, vocab::hasVariableValue(), fn_node});
        out.push_back({fn_node, vocab::rdfType(), vocab::IntrinsicFunction()});
        out.push_back({fn_node, vocab::functionName(),
                       rdf::Literal{fn->name, rdf::DataType::String}});
        for (const auto& arg : fn->args) {
            out.push_back({fn_node, vocab::functionArg(), rdf::Literal{arg, rdf::DataType::String}});
        }
    } else {
        out.push_back({node, vocab::hasDataValue(), value_literal(a.value)});
    }
}

}  // namespace detail

inline std::vector<rdf::Triple> map_node_type(const tosca::NodeType& nt,
                                              const MappingContext& ctx) {
    std::vector<rdf::Triple> out;
    rdf::Iri situation = ctx.type_iri(nt.name);
    rdf::Iri description{situation.full + "/desc"};
    out.push_back({situation, vocab::rdfType(), vocab::Situation()});
    out.push_back({situation, vocab::rdfType(), vocab::NodeType()});
    out.push_back({situation, vocab::hasContext(), description});
    out.push_back({description, vocab::rdfType(), vocab::Description()});

    for (const auto& p : nt.properties) {
        rdf::Iri concept_node{situation.full + "/prop/" + percent_encode(p.name)};
        detail::emit_definition_concept(description, concept_node, vocab::Property(), p, ctx, out);
    }
    for (const auto& a : nt.attributes) {
        rdf::Iri concept_node{situation.full + "/attr/" + percent_encode(a.name)};
        detail::emit_definition_concept(description, concept_node, vocab::Attribute(), a, ctx, out);
    }
    for (const auto& [name, cap_type] : nt.capabilities) {
        rdf::Iri concept_node{situation.full + "/cap/" + percent_encode(name)};
        out.push_back({description, vocab::defines(), concept_node});
        out.push_back({concept_node, vocab::rdfType(), vocab::Capability()});
        out.push_back({concept_node, vocab::classifies(), ctx.param_entity(name)});
    }
    for (const auto& [name, target] : nt.requirements) {
        rdf::Iri concept_node{situation.full + "/req/" + percent_encode(name)};
        out.push_back({description, vocab::defines(), concept_node});
        out.push_back({concept_node, vocab::rdfType(), vocab::Requirement()});
        out.push_back({concept_node, vocab::classifies(), ctx.param_entity(name)});
    }
    return out;
}

inline std::vector<rdf::Triple> map_node_template(const tosca::NodeTemplate& t,
                                                  const MappingContext& ctx) {
    std::vector<rdf::Triple> out;
    rdf::Iri node = ctx.template_iri(t.name);
    out.push_back({node, vocab::rdfType(), vocab::NodeTemplate()});
    if (!t.type_name.empty()) {
        out.push_back({node, vocab::rdfType(), ctx.type_iri(t.type_name)});
    }
    for (const auto& p : t.properties) {
        detail::emit_assignment(node, vocab::hasProperty(), vocab::Property(), "prop", p, ctx, out);
    }
    for (const auto& a : t.attributes) {
        detail::emit_assignment(node, vocab::hasAttribute(), vocab::Attribute(), "attr", a, ctx,
                                out);
    }
    for (const auto& [name, target] : t.requirements) {
        if (!target.empty()) {
            out.push_back({node, vocab::hasRequirement(), ctx.template_iri(target)});
        }
    }
    return out;
}

inline rdf::Graph map_service_template(const tosca::ServiceTemplate& st,
                                       const MappingContext& ctx) {
    rdf::Graph g;
    g.namespaces() = vocab::default_namespaces();
    for (const auto& nt : st.node_types) {
        for (const auto& t : map_node_type(nt, ctx)) g.insert(t);
    }
    for (const auto& tmpl : st.node_templates) {
        for (const auto& t : map_node_template(tmpl, ctx)) g.insert(t);
    }
    return g;
}

inline rdf::Graph map_service_template(const tosca::ServiceTemplate& st) {
    return map_service_template(st, make_context(st.source));
}

}  // namespace tsm::mapper
