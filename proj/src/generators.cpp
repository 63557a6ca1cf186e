#include "adinst/generators.hpp"

#include <functional>
#include <iterator>

namespace adinst {

std::uint64_t case_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

InstanceGenerator::InstanceGenerator(std::uint64_t seed, GeneratorLimits limits) : rng_(seed), limits_(limits) {}

int InstanceGenerator::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

bool InstanceGenerator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

template <typename C>
const typename C::value_type& InstanceGenerator::pick(const C& c) {
    auto it = c.begin();
    std::advance(it, uniform(0, static_cast<int>(c.size()) - 1));
    return *it;
}

namespace {

constexpr NodeKind kAllKinds[] = {NodeKind::Executable, NodeKind::Initial, NodeKind::Final, NodeKind::Decision,
                                  NodeKind::Merge,      NodeKind::Fork,    NodeKind::Join,  NodeKind::Object};

// Adds (a, b) unless it would close a cycle.
void add_sub_if_acyclic(ActivityHierarchy& h, const Name& a, const Name& b) {
    if (a == b || h.up_set(b).count(a)) return;
    h.sub.emplace(a, b);
}

}  // namespace

Signature InstanceGenerator::signature(const Name& name, const std::string& prefix) {
    Signature sig;
    sig.name = name;
    const int nodes = uniform(1, limits_.max_nodes);
    std::vector<Name> names;
    for (int i = 0; i < nodes; ++i) {
        names.push_back(prefix + std::to_string(i));
        sig.hierarchy.kind_of.emplace(names.back(), kAllKinds[uniform(0, 7)]);
    }
    const int attempts = uniform(0, nodes);
    for (int i = 0; i < attempts; ++i) add_sub_if_acyclic(sig.hierarchy, pick(names), pick(names));
    const int edges = uniform(1, limits_.max_edges);
    for (int i = 0; i < edges; ++i)
        sig.edges.emplace(prefix + "e" + std::to_string(i), chance(0.7) ? EdgeKind::ControlFlow : EdgeKind::ObjectFlow);
    return sig;
}

SignatureMorphism InstanceGenerator::morphism_into(const Signature& target, const Name& source_name,
                                                   const std::string& prefix, const Name& morphism_name) {
    SignatureMorphism m;
    m.name = morphism_name;
    m.target = target;
    m.source.name = source_name;

    const auto target_nodes = target.hierarchy.names();
    const int nodes = uniform(1, limits_.max_nodes);
    std::vector<Name> names;
    for (int i = 0; i < nodes; ++i) {
        names.push_back(prefix + std::to_string(i));
        const Name& image = pick(target_nodes);
        m.node_map.emplace(names.back(), image);
        m.source.hierarchy.kind_of.emplace(names.back(), target.hierarchy.kind(image));
    }
    const int attempts = uniform(0, nodes + 1);
    for (int i = 0; i < attempts; ++i) {
        const Name& a = pick(names);
        const Name& b = pick(names);
        if (hierarchy_leq(target.hierarchy, m.node_map.at(a), m.node_map.at(b)))
            add_sub_if_acyclic(m.source.hierarchy, a, b);
    }
    if (!target.edges.empty()) {
        const int edges = uniform(1, limits_.max_edges);
        for (int i = 0; i < edges; ++i) {
            const auto& [image, kind] = pick(target.edges);
            const Name e = prefix + "e" + std::to_string(i);
            m.edge_map.emplace(e, image);
            m.source.edges.emplace(e, kind);
        }
    }
    return m;
}

Structure InstanceGenerator::structure(const Signature& sig, const Name& name) {
    Structure s;
    s.name = name;
    s.signature = sig;

    std::vector<Value> universe;
    for (int i = 0; i < limits_.max_domain; ++i) universe.push_back("v" + std::to_string(i));

    // Seed values per activity, then close downward so domains are monotone.
    std::map<Name, std::set<Value>> seeds;
    for (const auto& [a, _] : sig.hierarchy.kind_of) {
        auto& set = seeds[a];
        const int k = uniform(1, 2);
        for (int i = 0; i < k; ++i) set.insert(pick(universe));
    }
    for (const auto& [a, _] : sig.hierarchy.kind_of) {
        auto& dom = s.domains[a];
        for (const auto& below : sig.hierarchy.down_set(a)) dom.insert(seeds[below].begin(), seeds[below].end());
        s.constants.emplace(a, pick(dom));
    }

    const int edge_values = uniform(1, 3);
    for (int i = 0; i < edge_values; ++i) s.edge_domain.insert("w" + std::to_string(uniform(0, 2)));
    for (const auto& [e, _] : sig.edges) s.mu.emplace(e, pick(s.edge_domain));

    const auto values = s.activity_values();
    for (const auto& c : values)
        for (const auto& e : s.edge_domain)
            for (const auto& d : values)
                if (chance(0.3)) s.conn.insert({c, e, d});
    return s;
}

AtomicFormula InstanceGenerator::leaf(const Signature& sig, const std::vector<Var>& scope) {
    if (sig.edges.empty() || chance(0.15)) return Skip{};
    const auto nodes = sig.hierarchy.names();
    auto term = [&]() -> Term {
        if (!scope.empty() && chance(0.55)) return pick(scope);
        return Const{pick(nodes)};
    };
    Term c = term();
    const Name& e = pick(sig.edges).first;
    Term d = term();
    return Seq{std::move(c), e, std::move(d)};
}

Formula InstanceGenerator::formula(const Signature& sig, int depth, std::vector<Var>& scope, int& fresh) {
    // Operands are generated into locals: argument evaluation order is unspecified.
    if (depth == 0 || chance(0.2)) {
        if (chance(0.25)) {
            AtomicFormula a = leaf(sig, scope);
            AtomicFormula b = leaf(sig, scope);
            return eq(std::move(a), std::move(b));
        }
        return atom(leaf(sig, scope));
    }
    const int op = uniform(0, 6);
    if (op == 0) return negate(formula(sig, depth - 1, scope, fresh));
    if (op <= 4) {
        Formula a = formula(sig, depth - 1, scope, fresh);
        Formula b = formula(sig, depth - 1, scope, fresh);
        switch (op) {
        case 1: return conj(std::move(a), std::move(b));
        case 2: return disj(std::move(a), std::move(b));
        case 3: return implies(std::move(a), std::move(b));
        default: return iff(std::move(a), std::move(b));
        }
    }
    // Occasionally re-bind a variable already in scope to exercise shadowing.
    Var v = (!scope.empty() && chance(0.15)) ? pick(scope)
                                             : Var{"x" + std::to_string(fresh++), pick(sig.hierarchy.names())};
    scope.push_back(v);
    Formula body = formula(sig, depth - 1, scope, fresh);
    scope.pop_back();
    return chance(0.5) ? exists(v.id, v.sort, std::move(body)) : forall(v.id, v.sort, std::move(body));
}

Formula InstanceGenerator::sentence_formula(const Signature& sig) { return sentence_formula(sig, limits_.max_depth); }

Formula InstanceGenerator::sentence_formula(const Signature& sig, int max_depth) {
    std::vector<Var> scope;
    int fresh = 0;
    return formula(sig, max_depth, scope, fresh);
}

AtomicFormula InstanceGenerator::atomic(const Signature& sig) {
    if (sig.edges.empty() || chance(0.2)) return Skip{};
    const auto nodes = sig.hierarchy.names();
    std::vector<Var> vars;
    auto term = [&](const std::string& id) -> Term {
        if (chance(0.5)) return Const{pick(nodes)};
        vars.push_back(Var{id, pick(nodes)});
        return vars.back();
    };
    Term c = term("v0");
    Term d = term("v1");
    return Seq{std::move(c), pick(sig.edges).first, std::move(d)};
}

Valuation InstanceGenerator::valuation(const Structure& s, const std::set<Var>& vars) {
    Valuation b;
    for (const auto& v : vars) b.emplace(v, pick(s.domains.at(v.sort)));
    return b;
}

//------------------------------------------------------------------------------

namespace {

struct DiagramBuilder {
    Diagram d;
    int actions = 0, forks = 0, decisions = 0, edges = 0;

    Name node(const std::string& stem, int& counter, NodeKind kind) {
        Name n = stem + std::to_string(counter++);
        d.signature.hierarchy.kind_of.emplace(n, kind);
        return n;
    }

    void connect(const Name& from, const Name& to, const Name& guard) {
        const Name e = "f" + std::to_string(edges++);
        const auto& kinds = d.signature.hierarchy.kind_of;
        const bool object = kinds.at(from) == NodeKind::Object || kinds.at(to) == NodeKind::Object;
        d.signature.edges.emplace(e, object ? EdgeKind::ObjectFlow : EdgeKind::ControlFlow);
        d.topology.emplace(e, Endpoints{from, to});
        if (!guard.empty()) d.guards.emplace(e, guard);
    }
};

}  // namespace

Diagram InstanceGenerator::diagram(const Name& name, const Name& signature_name) {
    return diagram(name, signature_name, 3);
}

Diagram InstanceGenerator::diagram(const Name& name, const Name& signature_name, int max_depth) {
    DiagramBuilder b;
    b.d.name = name;
    b.d.signature.name = signature_name;
    b.d.signature.hierarchy.kind_of.emplace("init", NodeKind::Initial);
    b.d.signature.hierarchy.kind_of.emplace("fin", NodeKind::Final);

    // Returns the exit node of a block entered from `from`; `guard` labels the
    // entry edge (non-empty when `from` is a decision).
    std::function<Name(const Name&, int, const Name&)> block = [&](const Name& from, int depth,
                                                                   const Name& guard) -> Name {
        const int choice = depth <= 0 ? 0 : uniform(0, 3);
        switch (choice) {
        case 1: {
            Name mid = block(from, depth - 1, guard);
            return block(mid, depth - 1, "");
        }
        case 2: {
            Name fork = b.node("fork", b.forks, NodeKind::Fork);
            Name join = "join" + fork.substr(4);
            b.d.signature.hierarchy.kind_of.emplace(join, NodeKind::Join);
            b.connect(from, fork, guard);
            const int branches = uniform(2, 3);
            for (int i = 0; i < branches; ++i) b.connect(block(fork, depth - 1, ""), join, "");
            return join;
        }
        case 3: {
            Name dec = b.node("dec", b.decisions, NodeKind::Decision);
            Name merge = "merge" + dec.substr(3);
            b.d.signature.hierarchy.kind_of.emplace(merge, NodeKind::Merge);
            b.connect(from, dec, guard);
            const int branches = uniform(2, 3);
            for (int i = 0; i < branches; ++i) {
                const Name g = "g" + dec.substr(3) + "_" + std::to_string(i);
                if (chance(0.25))
                    b.connect(dec, merge, g);
                else
                    b.connect(block(dec, depth - 1, g), merge, g);
            }
            return merge;
        }
        default: {
            Name act = b.node("act", b.actions, chance(0.2) ? NodeKind::Object : NodeKind::Executable);
            b.connect(from, act, guard);
            return act;
        }
        }
    };

    Name last = block("init", uniform(0, max_depth), "");
    b.connect(last, "fin", "");

    std::vector<Name> acts;
    for (const auto& [n, k] : b.d.signature.hierarchy.kind_of)
        if (k == NodeKind::Executable) acts.push_back(n);
    if (acts.size() >= 2) {
        const int attempts = uniform(0, 2);
        for (int i = 0; i < attempts; ++i) add_sub_if_acyclic(b.d.signature.hierarchy, pick(acts), pick(acts));
    }
    return b.d;
}

}  // namespace adinst
