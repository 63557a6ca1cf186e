#ifndef ADINST_LOGIC_HPP
#define ADINST_LOGIC_HPP

#include <set>
#include <variant>
#include <vector>

#include "adinst/core.hpp"

namespace adinst {

class SortMismatch : public Error {
public:
    using Error::Error;
};

class UnknownSymbol : public Error {
public:
    using Error::Error;
};

class BoundaryMismatch : public Error {
public:
    using Error::Error;
};

class NotClosed : public Error {
public:
    using Error::Error;
};

//==============================================================================
// Terms and atomic formulas:   T ::= skip | seq(C, e, D)

struct Const {
    Name name;
    friend auto operator<=>(const Const&, const Const&) = default;
};

// Variables are sorted by an activity name; (id, sort) identifies a variable.
struct Var {
    std::string id;
    Name sort;
    friend auto operator<=>(const Var&, const Var&) = default;
};

using Term = std::variant<Const, Var>;

struct Skip {
    friend auto operator<=>(const Skip&, const Skip&) = default;
};

// Edge positions are constants only.
struct Seq {
    Term source;
    Name edge;
    Term target;
    friend auto operator<=>(const Seq&, const Seq&) = default;
};

using AtomicFormula = std::variant<Skip, Seq>;

//==============================================================================
// First-order formulas over atomic formulas. Eq relates two atomic formulas.

enum class Connective { Atom, Eq, Not, And, Or, Implies, Iff, Exists, Forall };

struct Formula {
    Connective op = Connective::Atom;
    AtomicFormula lhs;              // Atom, Eq
    AtomicFormula rhs;              // Eq
    Var bound;                      // Exists, Forall
    std::vector<Formula> args;      // Not: 1, binary: 2, quantifier: 1 (body)

    bool is_quantifier() const { return op == Connective::Exists || op == Connective::Forall; }
    bool is_binary() const {
        return op == Connective::And || op == Connective::Or || op == Connective::Implies || op == Connective::Iff;
    }
    const Formula& body() const { return args.at(0); }

    friend bool operator==(const Formula&, const Formula&) = default;
};

Formula atom(AtomicFormula t);
Formula skip_formula();
Formula seq_formula(Term c, Name e, Term d);
Formula eq(AtomicFormula a, AtomicFormula b);
Formula negate(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula exists(std::string id, Name sort, Formula body);
Formula forall(std::string id, Name sort, Formula body);

// Left-nested conjunction of all parts; parts must be non-empty.
Formula conj_all(std::vector<Formula> parts);

// Variables occurring outside any binder. Throws SortMismatch when an
// identifier is used with more than one sort anywhere in `f`.
std::set<Var> free_vars(const Formula& f);
std::set<Var> free_vars(const AtomicFormula& t);

// Counts atom and Eq leaves.
std::size_t atom_count(const Formula& f);
std::size_t depth(const Formula& f);

// Well-formedness of `f` over `sig`: declared constants, edges and sorts,
// single sort per identifier, and no bound identifier shadowing a node name.
ValidationReport validate_formula(const Signature& sig, const Formula& f);

//==============================================================================
// Sentences: closed formulas, optionally tied to a named signature.

struct Sentence {
    Name name;
    Name over;      // empty when the sentence is not tied to a signature
    Formula formula;

    friend bool operator==(const Sentence&, const Sentence&) = default;
};

// Throws NotClosed if `f` has free variables.
Sentence make_sentence(Name name, Name over, Formula f);

//==============================================================================
// Signature morphisms

struct SignatureMorphism {
    Name name;
    Signature source;
    Signature target;
    std::map<Name, Name> node_map;
    std::map<Name, Name> edge_map;

    const Name& map_node(const Name& n) const;  // throws UnknownSymbol
    const Name& map_edge(const Name& e) const;  // throws UnknownSymbol

    friend bool operator==(const SignatureMorphism&, const SignatureMorphism&) = default;
};

SignatureMorphism identity_morphism(const Signature& sig);

// Empty iff the maps are total, preserve node and edge kinds, and preserve the
// closure order. Violations of either endpoint signature are included.
ValidationReport validate_morphism(const SignatureMorphism& m);

// m2 after m1. Throws BoundaryMismatch unless m1.target and m2.source are
// structurally equal.
SignatureMorphism compose_morphisms(const SignatureMorphism& m1, const SignatureMorphism& m2);

// Same source and target structure and the same map tables; names ignored.
bool same_arrow(const SignatureMorphism& a, const SignatureMorphism& b);

// The sub-signature of m.target hit by m: phi(Sigma_1).
Signature image_signature(const SignatureMorphism& m);

Term translate_term(const SignatureMorphism& m, const Term& t);
AtomicFormula translate_atomic(const SignatureMorphism& m, const AtomicFormula& t);
Formula translate_formula(const SignatureMorphism& m, const Formula& f);
Sentence translate_sentence(const SignatureMorphism& m, const Sentence& s);

}  // namespace adinst

#endif
