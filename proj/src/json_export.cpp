#include "adinst/json_export.hpp"

namespace adinst {

using nlohmann::json;

namespace {

json term_json(const Term& t) {
    if (const auto* c = std::get_if<Const>(&t)) return {{"const", c->name}};
    const auto& v = std::get<Var>(t);
    return {{"var", v.id}, {"sort", v.sort}};
}

json atomic_json(const AtomicFormula& t) {
    if (std::holds_alternative<Skip>(t)) return {{"kind", "skip"}};
    const auto& s = std::get<Seq>(t);
    return {{"kind", "seq"}, {"c", term_json(s.source)}, {"e", s.edge}, {"d", term_json(s.target)}};
}

const char* op_name(Connective op) {
    switch (op) {
    case Connective::Atom: return "atom";
    case Connective::Eq: return "eq";
    case Connective::Not: return "not";
    case Connective::And: return "and";
    case Connective::Or: return "or";
    case Connective::Implies: return "implies";
    case Connective::Iff: return "iff";
    case Connective::Exists: return "exists";
    case Connective::Forall: return "forall";
    }
    return "?";
}

json step_json(const TraceStep& s) { return json::array({s.source, s.edge, s.target}); }

}  // namespace

json to_json(const Formula& f) {
    json j{{"op", op_name(f.op)}};
    switch (f.op) {
    case Connective::Atom:
        j["atom"] = atomic_json(f.lhs);
        break;
    case Connective::Eq:
        j["lhs"] = atomic_json(f.lhs);
        j["rhs"] = atomic_json(f.rhs);
        break;
    case Connective::Exists:
    case Connective::Forall:
        j["var"] = f.bound.id;
        j["sort"] = f.bound.sort;
        j["body"] = to_json(f.body());
        break;
    default: {
        json args = json::array();
        for (const auto& a : f.args) args.push_back(to_json(a));
        j["args"] = std::move(args);
    }
    }
    return j;
}

json to_json(const Signature& sig) {
    json kinds = json::object();
    for (const auto& [n, k] : sig.hierarchy.kind_of) kinds[n] = to_string(k);
    json sub = json::array();
    for (const auto& [a, b] : sig.hierarchy.sub) sub.push_back(json::array({a, b}));
    json edge_kind = json::object();
    for (const auto& [e, k] : sig.edges) edge_kind[e] = to_string(k);
    return {{"name", sig.name},
            {"hierarchy", {{"names", sig.hierarchy.names()}, {"kind_of", kinds}, {"sub", sub}}},
            {"edges", sig.edge_names()},
            {"edge_kind", edge_kind}};
}

json to_json(const Diagram& d) {
    json topology = json::object();
    for (const auto& [e, ends] : d.topology) topology[e] = {{"source", ends.source}, {"target", ends.target}};
    return {{"name", d.name}, {"signature", d.signature.name}, {"topology", topology}, {"guards", d.guards}};
}

json to_json(const SignatureMorphism& m) {
    return {{"name", m.name},
            {"source", m.source.name},
            {"target", m.target.name},
            {"node_map", m.node_map},
            {"edge_map", m.edge_map}};
}

json to_json(const Structure& s) {
    json conn = json::array();
    for (const auto& t : s.conn) conn.push_back(step_json(t));
    return {{"name", s.name},         {"signature", s.signature.name}, {"domains", s.domains},
            {"edge_domain", s.edge_domain}, {"mu", s.mu},                  {"constants", s.constants},
            {"conn", conn}};
}

json to_json(const Sentence& s) {
    return {{"name", s.name}, {"over", s.over}, {"formula", to_json(s.formula)}, {"text", print(s.formula)}};
}

json to_json(const Document& doc) {
    json j{{"signatures", json::array()},
           {"diagrams", json::array()},
           {"morphisms", json::array()},
           {"structures", json::array()},
           {"sentences", json::array()}};
    for (const auto& [_, v] : doc.signatures) j["signatures"].push_back(to_json(v));
    for (const auto& [_, v] : doc.diagrams) j["diagrams"].push_back(to_json(v));
    for (const auto& [_, v] : doc.morphisms) j["morphisms"].push_back(to_json(v));
    for (const auto& [_, v] : doc.structures) j["structures"].push_back(to_json(v));
    for (const auto& [_, v] : doc.sentences) j["sentences"].push_back(to_json(v));
    return j;
}

json to_json(const Trace& t) {
    json j = json::array();
    for (const auto& s : t) j.push_back(step_json(s));
    return j;
}

json to_json(const ExploredTrace& t) {
    return {{"steps", to_json(t.steps)}, {"status", std::string(to_string(t.status))}, {"leftover", t.leftover}};
}

json to_json(const LawReport& r) {
    json laws = json::array();
    for (const auto& l : r.laws) {
        json failures = json::array();
        for (const auto& [seed, detail] : l.failures) failures.push_back({{"seed", seed}, {"detail", detail}});
        laws.push_back({{"law", l.law}, {"passed", l.passed}, {"failed", l.failed}, {"failures", failures}});
    }
    return {{"seed", r.seed}, {"cases", r.cases}, {"all_passed", r.all_passed()}, {"laws", laws}};
}

}  // namespace adinst
