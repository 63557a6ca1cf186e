#ifndef ADINST_DSL_HPP
#define ADINST_DSL_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adinst/core.hpp"
#include "adinst/logic.hpp"
#include "adinst/semantics.hpp"

namespace adinst {

// Everything declared by one .adi text, keyed by declaration name.
struct Document {
    std::map<Name, Signature> signatures;
    std::map<Name, Diagram> diagrams;
    std::map<Name, SignatureMorphism> morphisms;
    std::map<Name, Structure> structures;
    std::map<Name, Sentence> sentences;

    bool empty() const;
    // Adds every declaration of `other`; later entries win.
    void merge(const Document& other);

    friend bool operator==(const Document&, const Document&) = default;
};

struct Diagnostic {
    int line = 0;
    int column = 0;
    std::string message;

    std::string to_string(std::string_view file = {}) const;
    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct ParseResult {
    Document document;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return diagnostics.empty(); }
};

// Parses a whole document. Names referenced by `over` and morphism headers are
// looked up in the text first and then in `context`. Declarations are
// validated after parsing; violations come back as diagnostics. Parsing
// resynchronises at the end of the offending statement and keeps going.
ParseResult parse(std::string_view text, const Document* context = nullptr);

struct FormulaParseResult {
    std::optional<Formula> formula;
    std::vector<Diagnostic> diagnostics;
};

// A bare formula, e.g. "forall x:a . seq(x, e, b)". Identifiers bound by an
// enclosing quantifier are variables; every other identifier is a constant.
FormulaParseResult parse_formula(std::string_view text);

//------------------------------------------------------------------------------
// Canonical printer: declarations sorted by name, one statement per line.

std::string print(const AtomicFormula& t);
std::string print(const Formula& f);
std::string print(const Trace& t);
std::string print(const Signature& sig);
std::string print(const Diagram& d);
std::string print(const SignatureMorphism& m);
std::string print(const Structure& s);
std::string print(const Sentence& s);
std::string print(const Document& doc);

}  // namespace adinst

#endif
