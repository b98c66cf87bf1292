#pragma once

// Independent N-Triples reader used only by tests to check the store's
// serializer. Deliberately shares no code with Graph::serialize_ntriples.

#include <set>
#include <stdexcept>
#include <string>

#include "toscasmell/rdf.hpp"

namespace tsm::testsupport {

inline std::string nt_unescape(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size()) {
            ++i;
            switch (s[i]) {
                case 'n': out += '\n'; break;
                case 'r': out += '\r'; break;
                case 't': out += '\t'; break;
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                default: throw std::runtime_error("bad escape in N-Triples literal");
            }
        } else {
            out += s[i];
        }
    }
    return out;
}

inline rdf::DataType nt_datatype(const std::string& iri) {
    if (iri == "http://www.w3.org/2001/XMLSchema#integer") return rdf::DataType::Integer;
    if (iri == "http://www.w3.org/2001/XMLSchema#boolean") return rdf::DataType::Boolean;
    if (iri == "http://www.w3.org/2001/XMLSchema#double") return rdf::DataType::Float;
    throw std::runtime_error("unknown datatype IRI: " + iri);
}

// Reads one term starting at pos; advances pos past it.
inline rdf::Term nt_read_term(const std::string& line, std::size_t& pos) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) throw std::runtime_error("unexpected end of line");
    if (line[pos] == '<') {
        auto end = line.find('>', pos);
        if (end == std::string::npos) throw std::runtime_error("unterminated IRI");
        rdf::Iri iri{line.substr(pos + 1, end - pos - 1)};
        pos = end + 1;
        return iri;
    }
    if (line[pos] == '_' && pos + 1 < line.size() && line[pos + 1] == ':') {
        auto end = line.find(' ', pos);
        if (end == std::string::npos) end = line.size();
        rdf::BlankNode bn{line.substr(pos + 2, end - pos - 2)};
        pos = end;
        return bn;
    }
    if (line[pos] == '"') {
        std::size_t i = pos + 1;
        std::string raw;
        while (i < line.size()) {
            if (line[i] == '\\' && i + 1 < line.size()) {
                raw += line[i];
                raw += line[i + 1];
                i += 2;
                continue;
            }
            if (line[i] == '"') break;
            raw += line[i];
            ++i;
        }
        if (i >= line.size()) throw std::runtime_error("unterminated literal");
        rdf::Literal lit{nt_unescape(raw), rdf::DataType::String};
        pos = i + 1;
        if (pos + 1 < line.size() && line[pos] == '^' && line[pos + 1] == '^') {
            pos += 2;
            if (line[pos] != '<') throw std::runtime_error("expected datatype IRI");
            auto end = line.find('>', pos);
            lit.datatype = nt_datatype(line.substr(pos + 1, end - pos - 1));
            pos = end + 1;
        }
        return lit;
    }
    throw std::runtime_error("unrecognized term at: " + line.substr(pos));
}

inline std::set<rdf::Triple> parse_ntriples(const std::string& text) {
    std::set<rdf::Triple> out;
    std::size_t start = 0;
    while (start < text.size()) {
        auto eol = text.find('\n', start);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(start, eol - start);
        start = eol + 1;
        if (line.empty()) continue;
        std::size_t pos = 0;
        rdf::Term subject = nt_read_term(line, pos);
        rdf::Term predicate = nt_read_term(line, pos);
        rdf::Term object = nt_read_term(line, pos);
        while (pos < line.size() && line[pos] == ' ') ++pos;
        if (pos >= line.size() || line[pos] != '.') {
            throw std::runtime_error("missing terminating dot: " + line);
        }
        const auto* pred = std::get_if<rdf::Iri>(&predicate);
        if (!pred) throw std::runtime_error("predicate is not an IRI: " + line);
        out.insert(rdf::Triple{subject, *pred, object});
    }
    return out;
}

}  // namespace tsm::testsupport
