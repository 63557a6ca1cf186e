#include <sstream>

#include "adinst/dsl.hpp"

namespace adinst {

namespace {

std::string print_term(const Term& t) {
    if (const auto* c = std::get_if<Const>(&t)) return c->name;
    return std::get<Var>(t).id;
}

int precedence(const Formula& f) {
    switch (f.op) {
    case Connective::Exists:
    case Connective::Forall: return 0;
    case Connective::Iff: return 1;
    case Connective::Implies: return 2;
    case Connective::Or: return 3;
    case Connective::And: return 4;
    case Connective::Not: return 5;
    default: return 6;
    }
}

std::string_view symbol(Connective op) {
    switch (op) {
    case Connective::Iff: return "<=>";
    case Connective::Implies: return "=>";
    case Connective::Or: return "\\/";
    case Connective::And: return "/\\";
    default: return "?";
    }
}

void render(std::ostream& os, const Formula& f, int min_prec) {
    const int p = precedence(f);
    const bool parens = p < min_prec;
    if (parens) os << '(';
    switch (f.op) {
    case Connective::Atom:
        os << print(f.lhs);
        break;
    case Connective::Eq:
        os << print(f.lhs) << " = " << print(f.rhs);
        break;
    case Connective::Not:
        os << '~';
        render(os, f.body(), 5);
        break;
    case Connective::Exists:
    case Connective::Forall:
        os << (f.op == Connective::Exists ? "exists " : "forall ") << f.bound.id << ':' << f.bound.sort << " . ";
        render(os, f.body(), 0);
        break;
    case Connective::Implies:
        render(os, f.args[0], p + 1);
        os << " => ";
        render(os, f.args[1], p);
        break;
    default:
        render(os, f.args[0], p);
        os << ' ' << symbol(f.op) << ' ';
        render(os, f.args[1], p + 1);
        break;
    }
    if (parens) os << ')';
}

std::string value_set(const std::set<Value>& values) {
    std::string out = "{";
    bool first = true;
    for (const auto& v : values) {
        if (!first) out += ", ";
        out += v;
        first = false;
    }
    return out + "}";
}

}  // namespace

std::string print(const AtomicFormula& t) {
    if (std::holds_alternative<Skip>(t)) return "skip";
    const auto& s = std::get<Seq>(t);
    return "seq(" + print_term(s.source) + ", " + s.edge + ", " + print_term(s.target) + ")";
}

std::string print(const Formula& f) {
    std::ostringstream os;
    render(os, f, 0);
    return os.str();
}

std::string print(const Trace& t) {
    if (t.empty()) return "eps";
    std::string out;
    for (const auto& step : t) {
        if (!out.empty()) out += '.';
        out += "seq(" + step.source + "," + step.edge + "," + step.target + ")";
    }
    return out;
}

std::string print(const Signature& sig) {
    std::ostringstream os;
    os << "signature " << sig.name << " {\n";
    for (const auto& [n, k] : sig.hierarchy.kind_of) os << "  node " << n << " : " << to_string(k) << ";\n";
    for (const auto& [a, b] : sig.hierarchy.sub) os << "  sub " << a << " <= " << b << ";\n";
    for (const auto& [e, k] : sig.edges) os << "  edge " << e << " : " << to_string(k) << ";\n";
    os << "}\n";
    return os.str();
}

std::string print(const Diagram& d) {
    std::ostringstream os;
    os << "diagram " << d.name << " over " << d.signature.name << " {\n";
    for (const auto& [e, ends] : d.topology) {
        os << "  " << e << " : " << ends.source << " -> " << ends.target;
        if (auto g = d.guards.find(e); g != d.guards.end()) os << " [guard " << g->second << "]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

std::string print(const SignatureMorphism& m) {
    std::ostringstream os;
    os << "morphism " << m.name << " : " << m.source.name << " -> " << m.target.name << " {\n";
    for (const auto& [a, b] : m.node_map) os << "  node " << a << " |-> " << b << ";\n";
    for (const auto& [e, f] : m.edge_map) os << "  edge " << e << " |-> " << f << ";\n";
    os << "}\n";
    return os.str();
}

std::string print(const Structure& s) {
    std::ostringstream os;
    os << "structure " << s.name << " over " << s.signature.name << " {\n";
    for (const auto& [a, dom] : s.domains) os << "  domain " << a << " = " << value_set(dom) << ";\n";
    os << "  edge_domain = " << value_set(s.edge_domain) << ";\n";
    for (const auto& [a, v] : s.constants) os << "  const " << a << " = " << v << ";\n";
    for (const auto& [e, w] : s.mu) os << "  mu " << e << " = " << w << ";\n";
    for (const auto& t : s.conn) os << "  conn (" << t.source << ", " << t.edge << ", " << t.target << ");\n";
    os << "}\n";
    return os.str();
}

std::string print(const Sentence& s) {
    std::string out = "sentence " + s.name;
    if (!s.over.empty()) out += " over " + s.over;
    return out + " = " + print(s.formula) + ";\n";
}

std::string print(const Document& doc) {
    std::string out;
    auto add = [&](const std::string& block) {
        if (!out.empty()) out += '\n';
        out += block;
    };
    for (const auto& [_, v] : doc.signatures) add(print(v));
    for (const auto& [_, v] : doc.diagrams) add(print(v));
    for (const auto& [_, v] : doc.morphisms) add(print(v));
    for (const auto& [_, v] : doc.structures) add(print(v));
    for (const auto& [_, v] : doc.sentences) add(print(v));
    return out;
}

}  // namespace adinst
