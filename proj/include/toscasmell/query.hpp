#pragma once

// Basic-graph-pattern query evaluation over tsm::rdf::Graph: conjunctive
// triple patterns, OPTIONAL blocks with left-outer-join semantics, and
// regex / IN / bound filters. DISTINCT projection is always on.

#include <map>
#include <optional>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "toscasmell/rdf.hpp"

namespace tsm::query {

struct Variable {
    std::string name;
};

using TermPattern = std::variant<Variable, rdf::Iri, rdf::Literal>;

struct TriplePattern {
    TermPattern subject;
    TermPattern predicate;
    TermPattern object;
};

// regex() over str(term): full IRI for IRIs, lexical form for literals.
struct RegexFilter {
    std::string target;
    std::string pattern;
    std::string flags;  // subset of {"i"}
};

// regex() over the local name of an IRI (segment after the last '#' or '/').
// Non-IRI terms fail the filter.
struct LocalNameRegexFilter {
    std::string target;
    std::string pattern;
    std::string flags;
};

struct InFilter {
    std::string target;
    std::vector<std::string> values;
};

struct BoundFilter {
    std::string target;
};

using Filter = std::variant<RegexFilter, LocalNameRegexFilter, InFilter, BoundFilter>;

struct Query {
    std::vector<std::string> select;
    std::vector<TriplePattern> where;
    std::vector<std::vector<TriplePattern>> optionals;
    std::vector<Filter> filters;
};

using Binding = std::map<std::string, rdf::Term>;

struct Row {
    std::vector<std::optional<rdf::Term>> values;  // parallel to ResultSet::variables
};

struct ResultSet {
    std::vector<std::string> variables;
    std::vector<Row> rows;

    bool empty() const { return rows.empty(); }
    std::size_t size() const { return rows.size(); }
};

class QueryError : public std::runtime_error {
  public:
    explicit QueryError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline void collect_vars(const TriplePattern& p, std::set<std::string>& out) {
    for (const TermPattern* tp : {&p.subject, &p.predicate, &p.object}) {
        if (const auto* v = std::get_if<Variable>(tp)) out.insert(v->name);
    }
}

inline std::set<std::string> mentioned_vars(const Query& q) {
    std::set<std::string> vars;
    for (const auto& p : q.where) collect_vars(p, vars);
    for (const auto& block : q.optionals)
        for (const auto& p : block) collect_vars(p, vars);
    return vars;
}

inline std::string filter_target(const Filter& f) {
    return std::visit([](const auto& x) { return x.target; }, f);
}

inline std::regex compile_regex(const std::string& pattern, const std::string& flags) {
    auto opts = std::regex::ECMAScript;
    if (flags.find('i') != std::string::npos) opts |= std::regex::icase;
    return std::regex(pattern, opts);
}

// Matches pattern term against a concrete term under the current binding.
// Returns false on mismatch; extends the binding for fresh variables.
inline bool unify(const TermPattern& tp, const rdf::Term& t, Binding& b) {
    if (const auto* v = std::get_if<Variable>(&tp)) {
        auto it = b.find(v->name);
        if (it == b.end()) {
            b.emplace(v->name, t);
            return true;
        }
        return it->second == t;
    }
    if (const auto* iri = std::get_if<rdf::Iri>(&tp)) {
        const auto* ti = std::get_if<rdf::Iri>(&t);
        return ti && *ti == *iri;
    }
    const auto& lit = std::get<rdf::Literal>(tp);
    const auto* tl = std::get_if<rdf::Literal>(&t);
    return tl && *tl == lit;
}

inline std::optional<rdf::Term> as_constant(const TermPattern& tp, const Binding& b) {
    if (const auto* v = std::get_if<Variable>(&tp)) {
        auto it = b.find(v->name);
        if (it == b.end()) return std::nullopt;
        return it->second;
    }
    if (const auto* iri = std::get_if<rdf::Iri>(&tp)) return rdf::Term{*iri};
    return rdf::Term{std::get<rdf::Literal>(tp)};
}

inline int bound_positions(const TriplePattern& p, const Binding& b) {
    int n = 0;
    for (const TermPattern* tp : {&p.subject, &p.predicate, &p.object}) {
        if (as_constant(*tp, b)) ++n;
    }
    return n;
}

// Nested-loop join, most-selective-pattern-first. Graphs are one file's
// worth of triples, so this is plenty.
inline void join(const rdf::Graph& g, std::vector<TriplePattern> patterns, const Binding& binding,
                 std::vector<Binding>& out) {
    if (patterns.empty()) {
        out.push_back(binding);
        return;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < patterns.size(); ++i) {
        if (bound_positions(patterns[i], binding) > bound_positions(patterns[best], binding)) {
            best = i;
        }
    }
    TriplePattern p = patterns[best];
    patterns.erase(patterns.begin() + best);

    auto s = as_constant(p.subject, binding);
    auto pc = as_constant(p.predicate, binding);
    auto o = as_constant(p.object, binding);
    std::optional<rdf::Iri> pred;
    if (pc) {
        const auto* iri = std::get_if<rdf::Iri>(&*pc);
        if (!iri) return;  // non-IRI predicate can never match
        pred = *iri;
    }
    for (const auto& t : g.match(s, pred, o)) {
        Binding next = binding;
        if (unify(p.subject, t.subject, next) && unify(p.predicate, rdf::Term{t.predicate}, next) &&
            unify(p.object, t.object, next)) {
            join(g, patterns, next, out);
        }
    }
}

inline bool passes(const Filter& f, const Binding& b,
                   const std::map<const Filter*, std::regex>& regexes) {
    return std::visit(
        [&](const auto& flt) -> bool {
            using T = std::decay_t<decltype(flt)>;
            auto it = b.find(flt.target);
            if constexpr (std::is_same_v<T, BoundFilter>) {
                return it != b.end();
            } else {
                if (it == b.end()) return false;  // errors are falsy, as in SPARQL
                if constexpr (std::is_same_v<T, RegexFilter>) {
                    return std::regex_search(rdf::term_str(it->second), regexes.at(&f));
                } else if constexpr (std::is_same_v<T, LocalNameRegexFilter>) {
                    const auto* iri = std::get_if<rdf::Iri>(&it->second);
                    if (!iri) return false;
                    return std::regex_search(rdf::local_name(iri->full), regexes.at(&f));
                } else {  // InFilter
                    const std::string s = rdf::term_str(it->second);
                    for (const auto& v : flt.values) {
                        if (s == v) return true;
                    }
                    return false;
                }
            }
        },
        f);
}

inline std::string row_key(const Row& r) {
    std::string key;
    for (const auto& cell : r.values) {
        if (cell) key += rdf::to_ntriples(*cell);
        key += '\x1f';
    }
    return key;
}

}  // namespace detail

// Structural diagnostics; an empty result means the query is well-formed.
inline std::vector<std::string> validate(const Query& q) {
    std::vector<std::string> diags;
    if (q.where.empty()) diags.push_back("empty where clause");
    auto vars = detail::mentioned_vars(q);
    for (const auto& v : q.select) {
        if (!vars.count(v)) diags.push_back("selected variable ?" + v + " appears in no pattern");
    }
    for (const auto& f : q.filters) {
        if (!vars.count(detail::filter_target(f))) {
            diags.push_back("filter references variable ?" + detail::filter_target(f) +
                            " that appears in no pattern");
        }
        if (const auto* rx = std::get_if<RegexFilter>(&f)) {
            try {
                detail::compile_regex(rx->pattern, rx->flags);
            } catch (const std::regex_error&) {
                diags.push_back("invalid regex: " + rx->pattern);
            }
            if (!rx->flags.empty() && rx->flags != "i")
                diags.push_back("unsupported regex flags: " + rx->flags);
        } else if (const auto* lrx = std::get_if<LocalNameRegexFilter>(&f)) {
            try {
                detail::compile_regex(lrx->pattern, lrx->flags);
            } catch (const std::regex_error&) {
                diags.push_back("invalid regex: " + lrx->pattern);
            }
            if (!lrx->flags.empty() && lrx->flags != "i")
                diags.push_back("unsupported regex flags: " + lrx->flags);
        }
    }
    return diags;
}

inline ResultSet evaluate(const rdf::Graph& g, const Query& q) {
    auto diags = validate(q);
    if (!diags.empty()) {
        std::string msg = "invalid query:";
        for (const auto& d : diags) msg += " " + d + ";";
        throw QueryError(msg);
    }

    std::map<const Filter*, std::regex> regexes;
    for (const auto& f : q.filters) {
        if (const auto* rx = std::get_if<RegexFilter>(&f)) {
            regexes.emplace(&f, detail::compile_regex(rx->pattern, rx->flags));
        } else if (const auto* lrx = std::get_if<LocalNameRegexFilter>(&f)) {
            regexes.emplace(&f, detail::compile_regex(lrx->pattern, lrx->flags));
        }
    }

    std::vector<Binding> solutions;
    detail::join(g, q.where, Binding{}, solutions);

    // Each OPTIONAL block is a left outer join applied in order.
    for (const auto& block : q.optionals) {
        std::vector<Binding> next;
        for (const auto& b : solutions) {
            std::vector<Binding> extended;
            detail::join(g, block, b, extended);
            if (extended.empty()) {
                next.push_back(b);
            } else {
                next.insert(next.end(), extended.begin(), extended.end());
            }
        }
        solutions = std::move(next);
    }

    ResultSet rs;
    rs.variables = q.select;
    std::set<std::string> seen;
    for (const auto& b : solutions) {
        bool keep = true;
        for (const auto& f : q.filters) {
            if (!detail::passes(f, b, regexes)) {
                keep = false;
                break;
            }
        }
        if (!keep) continue;
        Row row;
        for (const auto& v : q.select) {
            auto it = b.find(v);
            row.values.push_back(it == b.end() ? std::optional<rdf::Term>{} : it->second);
        }
        if (seen.insert(detail::row_key(row)).second) rs.rows.push_back(std::move(row));
    }
    std::sort(rs.rows.begin(), rs.rows.end(),
              [](const Row& a, const Row& b) { return detail::row_key(a) < detail::row_key(b); });
    return rs;
}

}  // namespace tsm::query
