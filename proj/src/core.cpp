#include "adinst/core.hpp"

#include <algorithm>
#include <array>
#include <deque>

namespace adinst {

bool has_violation(const ValidationReport& r, std::string_view code) {
    return std::any_of(r.begin(), r.end(), [&](const Violation& v) { return v.code == code; });
}

namespace {

constexpr std::array<std::pair<NodeKind, std::string_view>, 8> kNodeKindNames{{
    {NodeKind::Executable, "executable"},
    {NodeKind::Initial, "initial"},
    {NodeKind::Final, "final"},
    {NodeKind::Decision, "decision"},
    {NodeKind::Merge, "merge"},
    {NodeKind::Fork, "fork"},
    {NodeKind::Join, "join"},
    {NodeKind::Object, "object"},
}};

// Breadth-first walk over declared pairs; `forward` follows (a,b) from a to b.
std::set<Name> reach(const std::set<std::pair<Name, Name>>& sub, const Name& from, bool forward) {
    std::set<Name> seen{from};
    std::deque<Name> work{from};
    while (!work.empty()) {
        Name cur = std::move(work.front());
        work.pop_front();
        for (const auto& [a, b] : sub) {
            const Name& src = forward ? a : b;
            const Name& dst = forward ? b : a;
            if (src == cur && seen.insert(dst).second) work.push_back(dst);
        }
    }
    return seen;
}

}  // namespace

std::string_view to_string(NodeKind k) {
    for (const auto& [kind, text] : kNodeKindNames)
        if (kind == k) return text;
    return "?";
}

std::string_view to_string(EdgeKind k) {
    return k == EdgeKind::ControlFlow ? "control" : "object";
}

std::optional<NodeKind> node_kind_from_string(std::string_view s) {
    for (const auto& [kind, text] : kNodeKindNames)
        if (text == s) return kind;
    return std::nullopt;
}

std::optional<EdgeKind> edge_kind_from_string(std::string_view s) {
    if (s == "control") return EdgeKind::ControlFlow;
    if (s == "object") return EdgeKind::ObjectFlow;
    return std::nullopt;
}

//------------------------------------------------------------------------------

std::set<Name> ActivityHierarchy::names() const {
    std::set<Name> out;
    for (const auto& [n, _] : kind_of) out.insert(n);
    return out;
}

NodeKind ActivityHierarchy::kind(const Name& n) const {
    auto it = kind_of.find(n);
    if (it == kind_of.end()) throw UnknownName(n);
    return it->second;
}

std::set<Name> ActivityHierarchy::up_set(const Name& a) const { return reach(sub, a, true); }

std::set<Name> ActivityHierarchy::down_set(const Name& a) const { return reach(sub, a, false); }

bool hierarchy_leq(const ActivityHierarchy& h, const Name& a, const Name& b) {
    if (!h.contains(a)) throw UnknownName(a);
    if (!h.contains(b)) throw UnknownName(b);
    if (a == b) return true;
    return h.up_set(a).count(b) != 0;
}

std::set<Name> Signature::edge_names() const {
    std::set<Name> out;
    for (const auto& [e, _] : edges) out.insert(e);
    return out;
}

bool structurally_equal(const Signature& a, const Signature& b) {
    return a.hierarchy == b.hierarchy && a.edges == b.edges;
}

ValidationReport validate_signature(const Signature& sig) {
    ValidationReport report;
    const auto& h = sig.hierarchy;

    for (const auto& [a, b] : h.sub) {
        for (const Name* n : {&a, &b}) {
            if (!h.contains(*n))
                report.push_back({"undeclared-name", "sub pair (" + a + ", " + b + ") mentions undeclared activity '" + *n + "'"});
        }
    }
    for (const auto& [a, b] : h.sub) {
        if (a == b) continue;
        if (reach(h.sub, b, true).count(a))
            report.push_back({"antisymmetry", "sub pair (" + a + ", " + b + ") lies on a cycle: '" + b + "' <= '" + a + "' as well"});
    }
    for (const auto& [e, _] : sig.edges) {
        if (h.contains(e))
            report.push_back({"disjointness", "'" + e + "' is declared both as a node and as an edge"});
    }
    return report;
}

//------------------------------------------------------------------------------

std::vector<Name> Diagram::incoming(const Name& node) const {
    std::vector<Name> out;
    for (const auto& [e, ends] : topology)
        if (ends.target == node) out.push_back(e);
    return out;
}

std::vector<Name> Diagram::outgoing(const Name& node) const {
    std::vector<Name> out;
    for (const auto& [e, ends] : topology)
        if (ends.source == node) out.push_back(e);
    return out;
}

std::set<Name> Diagram::guard_atoms() const {
    std::set<Name> out;
    for (const auto& [_, g] : guards) out.insert(g);
    return out;
}

namespace {

void check_arity(ValidationReport& report, const Name& node, NodeKind kind, std::size_t in, std::size_t out) {
    auto complain = [&](const std::string& rule) {
        report.push_back({"arity", std::string(to_string(kind)) + " node '" + node + "' " + rule + " (has " +
                                       std::to_string(in) + " incoming, " + std::to_string(out) + " outgoing)"});
    };
    switch (kind) {
    case NodeKind::Initial:
        if (in != 0) complain("must have no incoming edges");
        break;
    case NodeKind::Final:
        if (out != 0) complain("must have no outgoing edges");
        break;
    case NodeKind::Fork:
        if (in != 1 || out < 2) complain("needs exactly one incoming and at least two outgoing edges");
        break;
    case NodeKind::Join:
        if (in < 2 || out != 1) complain("needs at least two incoming and exactly one outgoing edge");
        break;
    case NodeKind::Decision:
        if (in != 1 || out < 2) complain("needs exactly one incoming and at least two outgoing edges");
        break;
    case NodeKind::Merge:
        if (in < 2 || out != 1) complain("needs at least two incoming and exactly one outgoing edge");
        break;
    case NodeKind::Executable:
    case NodeKind::Object:
        break;
    }
}

}  // namespace

ValidationReport validate_diagram(const Diagram& d) {
    ValidationReport report = validate_signature(d.signature);
    const auto& sig = d.signature;

    for (const auto& [e, _] : sig.edges) {
        if (!d.topology.count(e)) report.push_back({"topology", "edge '" + e + "' has no endpoints"});
    }
    bool endpoints_ok = true;
    for (const auto& [e, ends] : d.topology) {
        if (!sig.has_edge(e)) {
            report.push_back({"topology", "edge '" + e + "' is not declared in signature '" + sig.name + "'"});
            endpoints_ok = false;
        }
        for (const Name* n : {&ends.source, &ends.target}) {
            if (!sig.has_node(*n)) {
                report.push_back({"topology", "edge '" + e + "' touches undeclared node '" + *n + "'"});
                endpoints_ok = false;
            }
        }
    }
    if (!endpoints_ok) return report;

    for (const auto& [node, kind] : sig.hierarchy.kind_of)
        check_arity(report, node, kind, d.incoming(node).size(), d.outgoing(node).size());

    for (const auto& [e, ends] : d.topology) {
        const bool needs_guard = sig.hierarchy.kind(ends.source) == NodeKind::Decision ||
                                 sig.hierarchy.kind(ends.target) == NodeKind::Merge;
        const bool has_guard = d.guards.count(e) != 0;
        if (needs_guard && !has_guard)
            report.push_back({"guard", "edge '" + e + "' leaves a decision or enters a merge but has no guard"});
        if (!needs_guard && has_guard)
            report.push_back({"guard", "edge '" + e + "' carries guard '" + d.guards.at(e) + "' but is not a decision/merge edge"});
    }
    for (const auto& [e, g] : d.guards) {
        if (!d.topology.count(e)) report.push_back({"guard", "guard '" + g + "' is attached to unknown edge '" + e + "'"});
    }
    return report;
}

}  // namespace adinst
