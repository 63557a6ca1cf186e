#ifndef ADINST_SEMANTICS_HPP
#define ADINST_SEMANTICS_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "adinst/core.hpp"
#include "adinst/logic.hpp"

namespace adinst {

class UnboundVariable : public Error {
public:
    using Error::Error;
};

class NotASubsignature : public Error {
public:
    using Error::Error;
};

class SignatureMismatch : public Error {
public:
    using Error::Error;
};

using Value = std::string;

// One step seq(C, e, D) of a trace, already interpreted in a structure.
struct TraceStep {
    Value source;
    Value edge;
    Value target;
    friend auto operator<=>(const TraceStep&, const TraceStep&) = default;
};

using Trace = std::vector<TraceStep>;      // empty trace is epsilon
using TraceSet = std::set<Trace>;

//------------------------------------------------------------------------------
// A structure for a signature: activity domains indexed by activity name, an
// edge domain with the edge interpretation mu, a constant for every activity
// name, and the realized connectivity relation.
struct Structure {
    Name name;
    Signature signature;
    std::map<Name, std::set<Value>> domains;
    std::set<Value> edge_domain;
    std::map<Name, Value> mu;
    std::map<Name, Value> constants;
    std::set<TraceStep> conn;

    std::set<Value> activity_values() const;    // union of all domains

    friend bool operator==(const Structure&, const Structure&) = default;
};

// Empty iff domains/constants/mu are total, domains are monotone along the
// hierarchy, and every component lands where it should.
ValidationReport validate_structure(const Structure& s);

using Valuation = std::map<Var, Value>;

ValidationReport validate_valuation(const Structure& s, const Valuation& b);

// Throws UnboundVariable / UnknownSymbol.
Value evaluate(const Structure& s, const Term& t, const Valuation& b);

// Theta(skip) = {eps}; Theta(seq(C,e,D)) = {[(b(C), mu(e), b(D))]}.
TraceSet theta(const Structure& s, const AtomicFormula& t, const Valuation& b);

// Names and edges of `sub` are subsets of `sig` with agreeing kinds, and the
// declared order of `sub` is contained in the closure order of `sig`.
bool is_subsignature(const Signature& sub, const Signature& sig);

// Steps usable by traces over `sub`: interpreted constants and mu-images.
std::set<TraceStep> step_alphabet(const Signature& sub, const Structure& s);

// T(sub, I) cut at length max_len. Throws NotASubsignature.
TraceSet traces_over(const Signature& sub, const Structure& s, std::size_t max_len);
bool in_traces_over(const Signature& sub, const Structure& s, const Trace& t);

// All traces of the structure (components from its domains), cut at max_len.
TraceSet all_traces(const Structure& s, std::size_t max_len);
bool in_all_traces(const Structure& s, const Trace& t);

// Contravariant reduct along m. Throws SignatureMismatch unless s2 is over a
// signature structurally equal to m.target. conn keeps the triples whose
// activity values lie in the reduced domains.
Structure reduct(const SignatureMorphism& m, const Structure& s2);

// beta_1(x:a) = beta_2(x:m(a)) for every variable in `vars`.
Valuation pullback_valuation(const SignatureMorphism& m, const Valuation& b2, const std::set<Var>& vars);

// Each node denotes itself, edges denote themselves and conn is the topology.
// A domain holds its activity name and everything below it in the hierarchy.
Structure induced_structure(const Diagram& d);

}  // namespace adinst

#endif
