#include "adinst/semantics.hpp"

namespace adinst {

std::set<Value> Structure::activity_values() const {
    std::set<Value> out;
    for (const auto& [_, dom] : domains) out.insert(dom.begin(), dom.end());
    return out;
}

ValidationReport validate_structure(const Structure& s) {
    ValidationReport report = validate_signature(s.signature);
    const auto& h = s.signature.hierarchy;

    for (const auto& [a, _] : h.kind_of) {
        if (!s.domains.count(a)) report.push_back({"domain", "activity '" + a + "' has no domain"});
        auto c = s.constants.find(a);
        if (c == s.constants.end()) {
            report.push_back({"constant", "activity '" + a + "' has no constant"});
        } else if (s.domains.count(a) && !s.domains.at(a).count(c->second)) {
            report.push_back({"constant", "constant '" + c->second + "' of '" + a + "' is outside its domain"});
        }
    }
    for (const auto& [a, _] : s.domains)
        if (!h.contains(a)) report.push_back({"domain", "domain given for undeclared activity '" + a + "'"});
    for (const auto& [a, _] : s.constants)
        if (!h.contains(a)) report.push_back({"constant", "constant given for undeclared activity '" + a + "'"});

    for (const auto& [a, b] : h.sub) {
        auto da = s.domains.find(a);
        auto db = s.domains.find(b);
        if (da == s.domains.end() || db == s.domains.end()) continue;
        for (const auto& v : da->second)
            if (!db->second.count(v))
                report.push_back({"monotonicity", "'" + a + "' <= '" + b + "' but '" + v + "' is only in the domain of '" + a + "'"});
    }

    for (const auto& [e, _] : s.signature.edges) {
        auto it = s.mu.find(e);
        if (it == s.mu.end())
            report.push_back({"mu", "edge '" + e + "' is not interpreted"});
        else if (!s.edge_domain.count(it->second))
            report.push_back({"mu", "mu(" + e + ") = '" + it->second + "' is outside the edge domain"});
    }
    for (const auto& [e, _] : s.mu)
        if (!s.signature.has_edge(e)) report.push_back({"mu", "mu given for undeclared edge '" + e + "'"});

    const auto values = s.activity_values();
    for (const auto& t : s.conn) {
        if (!values.count(t.source) || !values.count(t.target) || !s.edge_domain.count(t.edge))
            report.push_back({"conn", "conn triple (" + t.source + ", " + t.edge + ", " + t.target + ") leaves the domains"});
    }
    return report;
}

ValidationReport validate_valuation(const Structure& s, const Valuation& b) {
    ValidationReport report;
    for (const auto& [v, value] : b) {
        auto dom = s.domains.find(v.sort);
        if (dom == s.domains.end())
            report.push_back({"sort", "variable '" + v.id + "' has undeclared sort '" + v.sort + "'"});
        else if (!dom->second.count(value))
            report.push_back({"sort", "value '" + value + "' of '" + v.id + "' is outside the domain of '" + v.sort + "'"});
    }
    return report;
}

Value evaluate(const Structure& s, const Term& t, const Valuation& b) {
    if (const auto* c = std::get_if<Const>(&t)) {
        auto it = s.constants.find(c->name);
        if (it == s.constants.end()) throw UnknownSymbol("no constant for '" + c->name + "'");
        return it->second;
    }
    const auto& v = std::get<Var>(t);
    auto it = b.find(v);
    if (it == b.end()) throw UnboundVariable("variable '" + v.id + ":" + v.sort + "' is unbound");
    return it->second;
}

TraceSet theta(const Structure& s, const AtomicFormula& t, const Valuation& b) {
    if (std::holds_alternative<Skip>(t)) return {Trace{}};
    const auto& seq = std::get<Seq>(t);
    auto mu = s.mu.find(seq.edge);
    if (mu == s.mu.end()) throw UnknownSymbol("edge '" + seq.edge + "' is not interpreted");
    return {Trace{TraceStep{evaluate(s, seq.source, b), mu->second, evaluate(s, seq.target, b)}}};
}

//------------------------------------------------------------------------------

bool is_subsignature(const Signature& sub, const Signature& sig) {
    for (const auto& [n, k] : sub.hierarchy.kind_of) {
        auto it = sig.hierarchy.kind_of.find(n);
        if (it == sig.hierarchy.kind_of.end() || it->second != k) return false;
    }
    for (const auto& [e, k] : sub.edges) {
        auto it = sig.edges.find(e);
        if (it == sig.edges.end() || it->second != k) return false;
    }
    for (const auto& [a, b] : sub.hierarchy.sub) {
        if (!sig.has_node(a) || !sig.has_node(b) || !hierarchy_leq(sig.hierarchy, a, b)) return false;
    }
    return true;
}

std::set<TraceStep> step_alphabet(const Signature& sub, const Structure& s) {
    if (!is_subsignature(sub, s.signature))
        throw NotASubsignature("'" + sub.name + "' is not a sub-signature of '" + s.signature.name + "'");
    std::set<TraceStep> out;
    for (const auto& [c, _] : sub.hierarchy.kind_of)
        for (const auto& [e, _] : sub.edges)
            for (const auto& [d, _] : sub.hierarchy.kind_of)
                out.insert({s.constants.at(c), s.mu.at(e), s.constants.at(d)});
    return out;
}

namespace {

TraceSet words_up_to(const std::set<TraceStep>& alphabet, std::size_t max_len) {
    TraceSet out{Trace{}};
    std::vector<Trace> layer{Trace{}};
    for (std::size_t len = 1; len <= max_len && !alphabet.empty(); ++len) {
        std::vector<Trace> next;
        next.reserve(layer.size() * alphabet.size());
        for (const auto& prefix : layer) {
            for (const auto& step : alphabet) {
                Trace t = prefix;
                t.push_back(step);
                out.insert(t);
                next.push_back(std::move(t));
            }
        }
        layer = std::move(next);
    }
    return out;
}

}  // namespace

TraceSet traces_over(const Signature& sub, const Structure& s, std::size_t max_len) {
    return words_up_to(step_alphabet(sub, s), max_len);
}

bool in_traces_over(const Signature& sub, const Structure& s, const Trace& t) {
    if (!is_subsignature(sub, s.signature))
        throw NotASubsignature("'" + sub.name + "' is not a sub-signature of '" + s.signature.name + "'");
    auto has_const = [&](const Value& v) {
        for (const auto& [a, _] : sub.hierarchy.kind_of)
            if (s.constants.at(a) == v) return true;
        return false;
    };
    auto has_edge = [&](const Value& v) {
        for (const auto& [e, _] : sub.edges)
            if (s.mu.at(e) == v) return true;
        return false;
    };
    for (const auto& step : t)
        if (!has_const(step.source) || !has_edge(step.edge) || !has_const(step.target)) return false;
    return true;
}

TraceSet all_traces(const Structure& s, std::size_t max_len) {
    std::set<TraceStep> alphabet;
    const auto values = s.activity_values();
    for (const auto& c : values)
        for (const auto& e : s.edge_domain)
            for (const auto& d : values) alphabet.insert({c, e, d});
    return words_up_to(alphabet, max_len);
}

bool in_all_traces(const Structure& s, const Trace& t) {
    const auto values = s.activity_values();
    for (const auto& step : t)
        if (!values.count(step.source) || !s.edge_domain.count(step.edge) || !values.count(step.target)) return false;
    return true;
}

//------------------------------------------------------------------------------

Structure reduct(const SignatureMorphism& m, const Structure& s2) {
    if (!structurally_equal(m.target, s2.signature))
        throw SignatureMismatch("structure '" + s2.name + "' is over '" + s2.signature.name + "', morphism '" + m.name +
                                "' targets '" + m.target.name + "'");
    Structure s1;
    s1.name = s2.name;
    s1.signature = m.source;
    for (const auto& [a, b] : m.node_map) {
        s1.domains.emplace(a, s2.domains.at(b));
        s1.constants.emplace(a, s2.constants.at(b));
    }
    s1.edge_domain = s2.edge_domain;
    for (const auto& [e, f] : m.edge_map) s1.mu.emplace(e, s2.mu.at(f));
    // Triples outside the reduced domains cannot be named over the source signature.
    const auto values = s1.activity_values();
    for (const auto& t : s2.conn)
        if (values.count(t.source) && values.count(t.target)) s1.conn.insert(t);
    return s1;
}

Valuation pullback_valuation(const SignatureMorphism& m, const Valuation& b2, const std::set<Var>& vars) {
    Valuation b1;
    for (const auto& v : vars) {
        auto it = b2.find(Var{v.id, m.map_node(v.sort)});
        if (it == b2.end()) throw UnboundVariable("no target value for '" + v.id + ":" + v.sort + "'");
        b1.emplace(v, it->second);
    }
    return b1;
}

Structure induced_structure(const Diagram& d) {
    Structure s;
    s.name = d.name;
    s.signature = d.signature;
    for (const auto& [a, _] : d.signature.hierarchy.kind_of) {
        s.domains.emplace(a, d.signature.hierarchy.down_set(a));
        s.constants.emplace(a, a);
    }
    for (const auto& [e, _] : d.signature.edges) {
        s.edge_domain.insert(e);
        s.mu.emplace(e, e);
    }
    for (const auto& [e, ends] : d.topology) s.conn.insert({ends.source, e, ends.target});
    return s;
}

}  // namespace adinst
