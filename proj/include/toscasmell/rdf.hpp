#pragma once

// In-memory RDF triple store: terms, triples, namespace handling and a
// graph with positional indexes plus canonical N-Triples export.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tsm::rdf {

struct Iri {
    std::string full;

    bool operator==(const Iri&) const = default;
    auto operator<=>(const Iri&) const = default;
};

enum class DataType { String, Integer, Boolean, Float };

struct Literal {
    std::string lexical;
    DataType datatype = DataType::String;

    bool operator==(const Literal&) const = default;
    auto operator<=>(const Literal&) const = default;
};

struct BlankNode {
    std::string id;

    bool operator==(const BlankNode&) const = default;
    auto operator<=>(const BlankNode&) const = default;
};

using Term = std::variant<Iri, Literal, BlankNode>;

inline std::string escape_ntriples(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

inline const char* datatype_iri(DataType dt) {
    switch (dt) {
        case DataType::Integer: return "http://www.w3.org/2001/XMLSchema#integer";
        case DataType::Boolean: return "http://www.w3.org/2001/XMLSchema#boolean";
        case DataType::Float: return "http://www.w3.org/2001/XMLSchema#double";
        default: return "";
    }
}

// Canonical N-Triples form of a single term.
inline std::string to_ntriples(const Term& t) {
    if (const auto* iri = std::get_if<Iri>(&t)) {
        return "<" + iri->full + ">";
    }
    if (const auto* bn = std::get_if<BlankNode>(&t)) {
        return "_:" + bn->id;
    }
    const auto& lit = std::get<Literal>(t);
    std::string s = "\"" + escape_ntriples(lit.lexical) + "\"";
    if (lit.datatype != DataType::String) {
        s += "^^<" + std::string(datatype_iri(lit.datatype)) + ">";
    }
    return s;
}

// str() in the SPARQL sense: full IRI or lexical form. Blank nodes have no
// str() form; we return the label for diagnostics.
inline std::string term_str(const Term& t) {
    if (const auto* iri = std::get_if<Iri>(&t)) return iri->full;
    if (const auto* lit = std::get_if<Literal>(&t)) return lit->lexical;
    return std::get<BlankNode>(t).id;
}

// Local name: the IRI segment after the last '#' or '/'.
inline std::string local_name(const std::string& iri) {
    auto pos = iri.find_last_of("#/");
    return pos == std::string::npos ? iri : iri.substr(pos + 1);
}

struct Triple {
    Term subject;   // Iri or BlankNode
    Iri predicate;
    Term object;

    bool operator==(const Triple&) const = default;
    auto operator<=>(const Triple&) const = default;
};

inline std::string to_ntriples(const Triple& t) {
    return to_ntriples(t.subject) + " " + to_ntriples(Term{t.predicate}) + " " +
           to_ntriples(t.object) + " .";
}

class NamespaceError : public std::runtime_error {
  public:
    explicit NamespaceError(const std::string& msg) : std::runtime_error(msg) {}
};

// prefix -> base IRI table with expand/shrink.
class NamespaceTable {
  public:
    void add(const std::string& prefix, const std::string& base) { table_[prefix] = base; }

    bool has(const std::string& prefix) const { return table_.count(prefix) > 0; }

    const std::map<std::string, std::string>& all() const { return table_; }

    // "tosca:hasDataValue" -> full IRI. Throws on unregistered prefix.
    Iri expand(const std::string& prefixed) const {
        auto colon = prefixed.find(':');
        if (colon == std::string::npos) {
            throw NamespaceError("not a prefixed name: '" + prefixed + "'");
        }
        std::string prefix = prefixed.substr(0, colon);
        auto it = table_.find(prefix);
        if (it == table_.end()) {
            throw NamespaceError("unknown namespace prefix: '" + prefix + "'");
        }
        return Iri{it->second + prefixed.substr(colon + 1)};
    }

    // Longest-base match wins; IRIs outside all namespaces come back unchanged.
    std::string shrink(const Iri& iri) const {
        std::string best_prefix;
        std::size_t best_len = 0;
        for (const auto& [prefix, base] : table_) {
            if (iri.full.size() >= base.size() && iri.full.compare(0, base.size(), base) == 0 &&
                base.size() > best_len) {
                best_prefix = prefix;
                best_len = base.size();
            }
        }
        if (best_len == 0) return iri.full;
        return best_prefix + ":" + iri.full.substr(best_len);
    }

  private:
    std::map<std::string, std::string> table_;
};

// Triple store with set semantics. Build phase is single-writer; once the
// mapper is done the graph is only read, so lookups may run concurrently.
class Graph {
  public:
    Graph() = default;
    // Indexes hold pointers into triples_, so copies and moves must rebuild them.
    Graph(const Graph& other) : triples_(other.triples_), namespaces_(other.namespaces_) {
        rebuild_indexes();
    }
    Graph& operator=(const Graph& other) {
        if (this != &other) {
            triples_ = other.triples_;
            namespaces_ = other.namespaces_;
            rebuild_indexes();
        }
        return *this;
    }
    Graph(Graph&& other) noexcept
        : triples_(std::move(other.triples_)),
          by_subject_(std::move(other.by_subject_)),
          by_predicate_(std::move(other.by_predicate_)),
          by_object_(std::move(other.by_object_)),
          namespaces_(std::move(other.namespaces_)) {}
    Graph& operator=(Graph&& other) noexcept {
        triples_ = std::move(other.triples_);
        by_subject_ = std::move(other.by_subject_);
        by_predicate_ = std::move(other.by_predicate_);
        by_object_ = std::move(other.by_object_);
        namespaces_ = std::move(other.namespaces_);
        return *this;
    }

    bool insert(const Triple& t) {
        auto [it, inserted] = triples_.insert(t);
        if (inserted) {
            const Triple* p = &*it;
            by_subject_.emplace(to_ntriples(it->subject), p);
            by_predicate_.emplace(it->predicate.full, p);
            by_object_.emplace(to_ntriples(it->object), p);
        }
        return inserted;
    }

    std::size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }

    bool contains(const Triple& t) const { return triples_.count(t) > 0; }

    const std::set<Triple>& triples() const { return triples_; }

    NamespaceTable& namespaces() { return namespaces_; }
    const NamespaceTable& namespaces() const { return namespaces_; }

    // Wildcard match: unset positions match anything. Result order is the
    // store order, which is lexicographic over (S, P, O) term ordering.
    std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Iri>& p,
                              const std::optional<Term>& o) const {
        std::vector<Triple> out;
        auto agrees = [&](const Triple& t) {
            if (s && t.subject != *s) return false;
            if (p && t.predicate != *p) return false;
            if (o && t.object != *o) return false;
            return true;
        };
        auto collect = [&](auto first, auto last) {
            for (auto it = first; it != last; ++it) {
                if (agrees(*it->second)) out.push_back(*it->second);
            }
        };
        if (s) {
            auto [lo, hi] = by_subject_.equal_range(to_ntriples(*s));
            collect(lo, hi);
        } else if (o) {
            auto [lo, hi] = by_object_.equal_range(to_ntriples(*o));
            collect(lo, hi);
        } else if (p) {
            auto [lo, hi] = by_predicate_.equal_range(p->full);
            collect(lo, hi);
        } else {
            out.assign(triples_.begin(), triples_.end());
        }
        std::sort(out.begin(), out.end(), [](const Triple& a, const Triple& b) {
            return to_ntriples(a) < to_ntriples(b);
        });
        return out;
    }

    // One sorted line per triple; byte-identical for equal triple sets.
    std::string serialize_ntriples() const {
        std::vector<std::string> lines;
        lines.reserve(triples_.size());
        for (const auto& t : triples_) lines.push_back(to_ntriples(t));
        std::sort(lines.begin(), lines.end());
        std::string out;
        for (const auto& l : lines) {
            out += l;
            out += '\n';
        }
        return out;
    }

    bool operator==(const Graph& other) const { return triples_ == other.triples_; }

  private:
    void rebuild_indexes() {
        by_subject_.clear();
        by_predicate_.clear();
        by_object_.clear();
        for (const auto& t : triples_) {
            by_subject_.emplace(to_ntriples(t.subject), &t);
            by_predicate_.emplace(t.predicate.full, &t);
            by_object_.emplace(to_ntriples(t.object), &t);
        }
    }

    std::set<Triple> triples_;
    std::multimap<std::string, const Triple*> by_subject_;
    std::multimap<std::string, const Triple*> by_predicate_;
    std::multimap<std::string, const Triple*> by_object_;
    NamespaceTable namespaces_;
};

}  // namespace tsm::rdf
