#pragma once

// Fixed vocabulary for the tiered deployment-model graph. The mapper emits
// no class or predicate outside this file.

#include <array>
#include <string>

#include "toscasmell/rdf.hpp"

namespace tsm::vocab {

// Namespace bases. The prefixes are part of the tool's contract; the bases
// are fixed constants (see README).
inline constexpr const char* kRdfBase = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr const char* kDulBase = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#";
inline constexpr const char* kToscaBase = "http://toscasmells.org/ontology/tosca#";
inline constexpr const char* kCoreBase = "http://toscasmells.org/ontology/core#";
inline constexpr const char* kExampleBase = "http://toscasmells.org/doc/";

inline rdf::NamespaceTable default_namespaces() {
    rdf::NamespaceTable t;
    t.add("rdf", kRdfBase);
    t.add("DUL", kDulBase);
    t.add("tosca", kToscaBase);
    t.add("core", kCoreBase);
    t.add("ex", kExampleBase);
    return t;
}

inline rdf::Iri rdf_iri(const std::string& local) { return {std::string(kRdfBase) + local}; }
inline rdf::Iri dul(const std::string& local) { return {std::string(kDulBase) + local}; }
inline rdf::Iri tosca(const std::string& local) { return {std::string(kToscaBase) + local}; }
inline rdf::Iri core(const std::string& local) { return {std::string(kCoreBase) + local}; }

// Classes
inline rdf::Iri NodeType() { return tosca("NodeType"); }
inline rdf::Iri NodeTemplate() { return tosca("NodeTemplate"); }
inline rdf::Iri RelationshipType() { return tosca("RelationshipType"); }
inline rdf::Iri RelationshipTemplate() { return tosca("RelationshipTemplate"); }
inline rdf::Iri Property() { return tosca("Property"); }
inline rdf::Iri Attribute() { return tosca("Attribute"); }
inline rdf::Iri Capability() { return tosca("Capability"); }
inline rdf::Iri Requirement() { return tosca("Requirement"); }
inline rdf::Iri IntrinsicFunction() { return tosca("IntrinsicFunction"); }
inline rdf::Iri Situation() { return dul("Situation"); }
inline rdf::Iri Description() { return dul("Description"); }
inline rdf::Iri Concept() { return dul("Concept"); }

// Predicates
inline rdf::Iri rdfType() { return rdf_iri("type"); }
inline rdf::Iri classifies() { return dul("classifies"); }
inline rdf::Iri hasParameter() { return dul("hasParameter"); }
inline rdf::Iri defines() { return dul("defines"); }
inline rdf::Iri hasContext() { return core("hasContext"); }
inline rdf::Iri hasDataValue() { return tosca("hasDataValue"); }
inline rdf::Iri hasVariableValue() { return tosca("hasVariableValue"); }
inline rdf::Iri defaultMarker() { return tosca("default"); }
inline rdf::Iri hasProperty() { return tosca("hasProperty"); }
inline rdf::Iri hasAttribute() { return tosca("hasAttribute"); }
inline rdf::Iri hasCapability() { return tosca("hasCapability"); }
inline rdf::Iri hasRequirement() { return tosca("hasRequirement"); }
inline rdf::Iri functionName() { return tosca("functionName"); }
inline rdf::Iri functionArg() { return tosca("functionArg"); }

// Closed predicate list, used by the closed-vocabulary invariant test.
inline std::array<rdf::Iri, 13> all_predicates() {
    return {rdfType(),       classifies(),     hasParameter(),   defines(),
            hasContext(),    hasDataValue(),   hasVariableValue(), hasProperty(),
            hasAttribute(),  hasCapability(),  hasRequirement(),
            functionName(),  functionArg()};
}

}  // namespace tsm::vocab
