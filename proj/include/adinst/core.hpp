#ifndef ADINST_CORE_HPP
#define ADINST_CORE_HPP

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adinst {

using Name = std::string;

//------------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownName : public Error {
public:
    explicit UnknownName(const Name& n) : Error("unknown name '" + n + "'") {}
};

//------------------------------------------------------------------------------
// Validation reports. Violations are data, never failures.

struct Violation {
    std::string code;       // short machine tag, e.g. "antisymmetry"
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

using ValidationReport = std::vector<Violation>;

bool has_violation(const ValidationReport& r, std::string_view code);

//------------------------------------------------------------------------------
// Node and edge taxonomy

enum class NodeKind { Executable, Initial, Final, Decision, Merge, Fork, Join, Object };
enum class EdgeKind { ControlFlow, ObjectFlow };

std::string_view to_string(NodeKind k);
std::string_view to_string(EdgeKind k);
std::optional<NodeKind> node_kind_from_string(std::string_view s);
std::optional<EdgeKind> edge_kind_from_string(std::string_view s);

inline bool is_branch(NodeKind k) { return k == NodeKind::Decision || k == NodeKind::Merge; }
inline bool is_concurrency(NodeKind k) { return k == NodeKind::Fork || k == NodeKind::Join; }

//------------------------------------------------------------------------------
// Activity hierarchy: activity names with their kinds and a declared subclass
// relation. All order queries go through the reflexive-transitive closure.

struct ActivityHierarchy {
    std::map<Name, NodeKind> kind_of;
    std::set<std::pair<Name, Name>> sub;    // (a, b) declares a <= b

    std::set<Name> names() const;
    bool contains(const Name& n) const { return kind_of.count(n) != 0; }
    NodeKind kind(const Name& n) const;     // throws UnknownName

    // All b with a <= b (a included).
    std::set<Name> up_set(const Name& a) const;
    // All b with b <= a (a included).
    std::set<Name> down_set(const Name& a) const;

    friend bool operator==(const ActivityHierarchy&, const ActivityHierarchy&) = default;
};

// True iff (a, b) is in the reflexive-transitive closure of h.sub.
// Throws UnknownName if either name is undeclared.
bool hierarchy_leq(const ActivityHierarchy& h, const Name& a, const Name& b);

struct Signature {
    Name name;
    ActivityHierarchy hierarchy;
    std::map<Name, EdgeKind> edges;

    bool has_node(const Name& n) const { return hierarchy.contains(n); }
    bool has_edge(const Name& e) const { return edges.count(e) != 0; }
    std::set<Name> edge_names() const;

    friend bool operator==(const Signature&, const Signature&) = default;
};

// Equality ignoring the signature's own name.
bool structurally_equal(const Signature& a, const Signature& b);

ValidationReport validate_signature(const Signature& sig);

//------------------------------------------------------------------------------
// Concrete Basic-Activities diagrams

struct Endpoints {
    Name source;
    Name target;

    friend auto operator<=>(const Endpoints&, const Endpoints&) = default;
};

struct Diagram {
    Name name;
    Signature signature;
    std::map<Name, Endpoints> topology;     // edge -> (source, target)
    std::map<Name, Name> guards;            // edge -> guard atom

    std::vector<Name> incoming(const Name& node) const;   // sorted edge names
    std::vector<Name> outgoing(const Name& node) const;
    std::set<Name> guard_atoms() const;

    friend bool operator==(const Diagram&, const Diagram&) = default;
};

// Includes every violation of the diagram's signature.
ValidationReport validate_diagram(const Diagram& d);

}  // namespace adinst

#endif
