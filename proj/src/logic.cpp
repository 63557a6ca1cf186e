#include "adinst/logic.hpp"

#include <algorithm>

namespace adinst {

//------------------------------------------------------------------------------
// Constructors

Formula atom(AtomicFormula t) {
    Formula f;
    f.op = Connective::Atom;
    f.lhs = std::move(t);
    return f;
}

Formula skip_formula() { return atom(Skip{}); }

Formula seq_formula(Term c, Name e, Term d) { return atom(Seq{std::move(c), std::move(e), std::move(d)}); }

Formula eq(AtomicFormula a, AtomicFormula b) {
    Formula f;
    f.op = Connective::Eq;
    f.lhs = std::move(a);
    f.rhs = std::move(b);
    return f;
}

Formula negate(Formula f) {
    Formula out;
    out.op = Connective::Not;
    out.args.push_back(std::move(f));
    return out;
}

namespace {

Formula binary(Connective op, Formula a, Formula b) {
    Formula out;
    out.op = op;
    out.args.push_back(std::move(a));
    out.args.push_back(std::move(b));
    return out;
}

Formula quantifier(Connective op, std::string id, Name sort, Formula body) {
    Formula out;
    out.op = op;
    out.bound = Var{std::move(id), std::move(sort)};
    out.args.push_back(std::move(body));
    return out;
}

}  // namespace

Formula conj(Formula a, Formula b) { return binary(Connective::And, std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return binary(Connective::Or, std::move(a), std::move(b)); }
Formula implies(Formula a, Formula b) { return binary(Connective::Implies, std::move(a), std::move(b)); }
Formula iff(Formula a, Formula b) { return binary(Connective::Iff, std::move(a), std::move(b)); }

Formula exists(std::string id, Name sort, Formula body) {
    return quantifier(Connective::Exists, std::move(id), std::move(sort), std::move(body));
}

Formula forall(std::string id, Name sort, Formula body) {
    return quantifier(Connective::Forall, std::move(id), std::move(sort), std::move(body));
}

Formula conj_all(std::vector<Formula> parts) {
    if (parts.empty()) throw Error("conj_all: empty conjunction");
    Formula acc = std::move(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(std::move(acc), std::move(parts[i]));
    return acc;
}

//------------------------------------------------------------------------------
// Variable bookkeeping

namespace {

template <typename Fn>
void for_each_term(const AtomicFormula& t, Fn&& fn) {
    if (const auto* s = std::get_if<Seq>(&t)) {
        fn(s->source);
        fn(s->target);
    }
}

// Every (id, sort) use, binders included, in one map; throws on a second sort.
void collect_sorts(const Formula& f, std::map<std::string, Name>& sorts) {
    auto note = [&](const Var& v) {
        auto [it, fresh] = sorts.emplace(v.id, v.sort);
        if (!fresh && it->second != v.sort)
            throw SortMismatch("variable '" + v.id + "' used with sorts '" + it->second + "' and '" + v.sort + "'");
    };
    auto note_term = [&](const Term& t) {
        if (const auto* v = std::get_if<Var>(&t)) note(*v);
    };
    switch (f.op) {
    case Connective::Atom:
        for_each_term(f.lhs, note_term);
        break;
    case Connective::Eq:
        for_each_term(f.lhs, note_term);
        for_each_term(f.rhs, note_term);
        break;
    case Connective::Exists:
    case Connective::Forall:
        note(f.bound);
        collect_sorts(f.body(), sorts);
        break;
    default:
        for (const auto& a : f.args) collect_sorts(a, sorts);
    }
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<Var>& out) {
    auto visit = [&](const Term& t) {
        if (const auto* v = std::get_if<Var>(&t); v && !bound.count(v->id)) out.insert(*v);
    };
    switch (f.op) {
    case Connective::Atom:
        for_each_term(f.lhs, visit);
        break;
    case Connective::Eq:
        for_each_term(f.lhs, visit);
        for_each_term(f.rhs, visit);
        break;
    case Connective::Exists:
    case Connective::Forall: {
        const bool shadowing = bound.count(f.bound.id) != 0;
        bound.insert(f.bound.id);
        collect_free(f.body(), bound, out);
        if (!shadowing) bound.erase(f.bound.id);
        break;
    }
    default:
        for (const auto& a : f.args) collect_free(a, bound, out);
    }
}

}  // namespace

std::set<Var> free_vars(const Formula& f) {
    std::map<std::string, Name> sorts;
    collect_sorts(f, sorts);
    std::set<std::string> bound;
    std::set<Var> out;
    collect_free(f, bound, out);
    return out;
}

std::set<Var> free_vars(const AtomicFormula& t) { return free_vars(atom(t)); }

std::size_t atom_count(const Formula& f) {
    if (f.op == Connective::Atom || f.op == Connective::Eq) return 1;
    std::size_t n = 0;
    for (const auto& a : f.args) n += atom_count(a);
    return n;
}

std::size_t depth(const Formula& f) {
    std::size_t d = 0;
    for (const auto& a : f.args) d = std::max(d, depth(a));
    return f.args.empty() ? 0 : d + 1;
}

//------------------------------------------------------------------------------

namespace {

void check_atomic(const Signature& sig, const AtomicFormula& t, ValidationReport& report) {
    const auto* s = std::get_if<Seq>(&t);
    if (!s) return;
    auto check_term = [&](const Term& term) {
        if (const auto* c = std::get_if<Const>(&term)) {
            if (!sig.has_node(c->name))
                report.push_back({"unknown-symbol", "constant '" + c->name + "' is not a node of '" + sig.name + "'"});
        } else {
            const auto& v = std::get<Var>(term);
            if (!sig.has_node(v.sort))
                report.push_back({"unknown-symbol", "variable '" + v.id + "' has undeclared sort '" + v.sort + "'"});
        }
    };
    check_term(s->source);
    check_term(s->target);
    if (!sig.has_edge(s->edge))
        report.push_back({"unknown-symbol", "edge '" + s->edge + "' is not declared in '" + sig.name + "'"});
}

void check_formula(const Signature& sig, const Formula& f, ValidationReport& report) {
    switch (f.op) {
    case Connective::Atom:
        check_atomic(sig, f.lhs, report);
        break;
    case Connective::Eq:
        check_atomic(sig, f.lhs, report);
        check_atomic(sig, f.rhs, report);
        break;
    case Connective::Exists:
    case Connective::Forall:
        if (!sig.has_node(f.bound.sort))
            report.push_back({"unknown-symbol", "quantifier over undeclared sort '" + f.bound.sort + "'"});
        if (sig.has_node(f.bound.id) || sig.has_edge(f.bound.id))
            report.push_back({"shadowing", "bound variable '" + f.bound.id + "' collides with a declared name"});
        check_formula(sig, f.body(), report);
        break;
    default:
        for (const auto& a : f.args) check_formula(sig, a, report);
    }
}

}  // namespace

ValidationReport validate_formula(const Signature& sig, const Formula& f) {
    ValidationReport report;
    try {
        std::map<std::string, Name> sorts;
        collect_sorts(f, sorts);
    } catch (const SortMismatch& e) {
        report.push_back({"sort-mismatch", e.what()});
    }
    check_formula(sig, f, report);
    return report;
}

Sentence make_sentence(Name name, Name over, Formula f) {
    auto fv = free_vars(f);
    if (!fv.empty()) throw NotClosed("sentence '" + name + "' has free variable '" + fv.begin()->id + "'");
    return Sentence{std::move(name), std::move(over), std::move(f)};
}

//------------------------------------------------------------------------------
// Morphisms

const Name& SignatureMorphism::map_node(const Name& n) const {
    auto it = node_map.find(n);
    if (it == node_map.end()) throw UnknownSymbol("morphism '" + name + "' does not map node '" + n + "'");
    return it->second;
}

const Name& SignatureMorphism::map_edge(const Name& e) const {
    auto it = edge_map.find(e);
    if (it == edge_map.end()) throw UnknownSymbol("morphism '" + name + "' does not map edge '" + e + "'");
    return it->second;
}

SignatureMorphism identity_morphism(const Signature& sig) {
    SignatureMorphism m{"id_" + sig.name, sig, sig, {}, {}};
    for (const auto& [n, _] : sig.hierarchy.kind_of) m.node_map.emplace(n, n);
    for (const auto& [e, _] : sig.edges) m.edge_map.emplace(e, e);
    return m;
}

ValidationReport validate_morphism(const SignatureMorphism& m) {
    ValidationReport report;
    for (auto v : validate_signature(m.source)) {
        v.message = "source: " + v.message;
        report.push_back(std::move(v));
    }
    for (auto v : validate_signature(m.target)) {
        v.message = "target: " + v.message;
        report.push_back(std::move(v));
    }

    const auto& src = m.source.hierarchy;
    const auto& tgt = m.target.hierarchy;
    for (const auto& [a, kind] : src.kind_of) {
        auto it = m.node_map.find(a);
        if (it == m.node_map.end()) {
            report.push_back({"totality", "node '" + a + "' is not mapped"});
            continue;
        }
        if (!tgt.contains(it->second)) {
            report.push_back({"totality", "node '" + a + "' maps to undeclared '" + it->second + "'"});
            continue;
        }
        if (tgt.kind(it->second) != kind)
            report.push_back({"kind", "node '" + a + "' (" + std::string(to_string(kind)) + ") maps to '" + it->second +
                                          "' (" + std::string(to_string(tgt.kind(it->second))) + ")"});
    }
    for (const auto& [a, _] : m.node_map)
        if (!src.contains(a)) report.push_back({"totality", "node map mentions undeclared source node '" + a + "'"});

    for (const auto& [e, kind] : m.source.edges) {
        auto it = m.edge_map.find(e);
        if (it == m.edge_map.end()) {
            report.push_back({"totality", "edge '" + e + "' is not mapped"});
            continue;
        }
        auto tk = m.target.edges.find(it->second);
        if (tk == m.target.edges.end()) {
            report.push_back({"totality", "edge '" + e + "' maps to undeclared '" + it->second + "'"});
            continue;
        }
        if (tk->second != kind)
            report.push_back({"kind", "edge '" + e + "' (" + std::string(to_string(kind)) + ") maps to '" + it->second +
                                          "' (" + std::string(to_string(tk->second)) + ")"});
    }
    for (const auto& [e, _] : m.edge_map)
        if (!m.source.has_edge(e)) report.push_back({"totality", "edge map mentions undeclared source edge '" + e + "'"});

    // Declared pairs suffice: the target order is reflexive and transitive.
    for (const auto& [a, b] : src.sub) {
        auto ia = m.node_map.find(a);
        auto ib = m.node_map.find(b);
        if (ia == m.node_map.end() || ib == m.node_map.end()) continue;
        if (!tgt.contains(ia->second) || !tgt.contains(ib->second)) continue;
        if (!hierarchy_leq(tgt, ia->second, ib->second))
            report.push_back({"order", "'" + a + "' <= '" + b + "' but '" + ia->second + "' is not <= '" + ib->second + "'"});
    }
    return report;
}

SignatureMorphism compose_morphisms(const SignatureMorphism& m1, const SignatureMorphism& m2) {
    if (!structurally_equal(m1.target, m2.source))
        throw BoundaryMismatch("cannot compose '" + m1.name + "' with '" + m2.name + "': target of the first (" +
                               m1.target.name + ") differs from source of the second (" + m2.source.name + ")");
    SignatureMorphism out{m1.name + "_then_" + m2.name, m1.source, m2.target, {}, {}};
    for (const auto& [a, b] : m1.node_map) out.node_map.emplace(a, m2.map_node(b));
    for (const auto& [e, f] : m1.edge_map) out.edge_map.emplace(e, m2.map_edge(f));
    return out;
}

bool same_arrow(const SignatureMorphism& a, const SignatureMorphism& b) {
    return structurally_equal(a.source, b.source) && structurally_equal(a.target, b.target) &&
           a.node_map == b.node_map && a.edge_map == b.edge_map;
}

Signature image_signature(const SignatureMorphism& m) {
    Signature out;
    out.name = m.target.name;
    for (const auto& [_, b] : m.node_map) out.hierarchy.kind_of.emplace(b, m.target.hierarchy.kind(b));
    for (const auto& [a, b] : m.source.hierarchy.sub) {
        const Name& x = m.map_node(a);
        const Name& y = m.map_node(b);
        if (x != y) out.hierarchy.sub.emplace(x, y);
    }
    for (const auto& [_, f] : m.edge_map) {
        auto it = m.target.edges.find(f);
        if (it == m.target.edges.end()) throw UnknownSymbol("edge '" + f + "' is not in the target signature");
        out.edges.emplace(f, it->second);
    }
    return out;
}

//------------------------------------------------------------------------------
// Translation: phi(skip) = skip, phi(seq(C,e,D)) = seq(phi C, phi e, phi D)

Term translate_term(const SignatureMorphism& m, const Term& t) {
    if (const auto* c = std::get_if<Const>(&t)) return Const{m.map_node(c->name)};
    const auto& v = std::get<Var>(t);
    return Var{v.id, m.map_node(v.sort)};
}

AtomicFormula translate_atomic(const SignatureMorphism& m, const AtomicFormula& t) {
    if (std::holds_alternative<Skip>(t)) return Skip{};
    const auto& s = std::get<Seq>(t);
    return Seq{translate_term(m, s.source), m.map_edge(s.edge), translate_term(m, s.target)};
}

Formula translate_formula(const SignatureMorphism& m, const Formula& f) {
    Formula out;
    out.op = f.op;
    switch (f.op) {
    case Connective::Atom:
        out.lhs = translate_atomic(m, f.lhs);
        break;
    case Connective::Eq:
        out.lhs = translate_atomic(m, f.lhs);
        out.rhs = translate_atomic(m, f.rhs);
        break;
    case Connective::Exists:
    case Connective::Forall:
        out.bound = Var{f.bound.id, m.map_node(f.bound.sort)};
        break;
    default:
        break;
    }
    out.args.reserve(f.args.size());
    for (const auto& a : f.args) out.args.push_back(translate_formula(m, a));
    return out;
}

Sentence translate_sentence(const SignatureMorphism& m, const Sentence& s) {
    return Sentence{s.name, m.target.name, translate_formula(m, s.formula)};
}

}  // namespace adinst
