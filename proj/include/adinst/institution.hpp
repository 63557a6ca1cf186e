#ifndef ADINST_INSTITUTION_HPP
#define ADINST_INSTITUTION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "adinst/logic.hpp"
#include "adinst/semantics.hpp"

namespace adinst {

// Classical first-order satisfaction. seq(C,e,D) holds iff its denoted step is
// in conn; skip always holds; t1 = t2 compares Theta sets; quantifiers range
// over the finite domain of their sort. Throws UnboundVariable.
bool satisfies(const Structure& s, const Valuation& b, const Formula& f);
bool satisfies(const Structure& s, const Sentence& sentence);

struct Verdict {
    bool holds = true;
    std::string counterexample;     // empty when holds

    static Verdict ok() { return {}; }
    static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

using FormulaTranslator = std::function<Formula(const SignatureMorphism&, const Formula&)>;

// reduct(m, s2) |= f  iff  s2 |= m(f), both directions.
Verdict check_satisfaction_condition(const SignatureMorphism& m, const Structure& s2, const Formula& sentence,
                                     const FormulaTranslator& translate = translate_formula);

// Theta_{s2}(m(t), b2) = Theta_{reduct(m,s2)}(t, b1) with b1 the pullback of b2.
Verdict check_theta_invariance(const SignatureMorphism& m, const Structure& s2, const AtomicFormula& t,
                               const Valuation& b2);

// T(m(Sigma_1), s2) = T(Sigma_1, reduct(m, s2)) up to traces of length max_len.
Verdict check_trace_invariance(const SignatureMorphism& m, const Structure& s2, std::size_t max_len);

// A composable chain m1 : S1 -> S2, m2 : S2 -> S3, m3 : S3 -> S4 with formulas
// over S1 and structures over S4 to exercise the functor laws on.
struct LawSample {
    SignatureMorphism m1, m2, m3;
    std::vector<Formula> formulas;
    std::vector<Structure> structures;
};

// Identity and associativity of composition, translation as a functor and
// reduct as a contravariant functor.
Verdict check_category_laws(const std::vector<LawSample>& samples,
                            const FormulaTranslator& translate = translate_formula);

// One random chain with its sentences, structures and atoms.
struct LawCase {
    std::uint64_t seed = 0;
    LawSample sample;
    Structure s2;                   // over m1.target
    Formula sentence;               // over m1.source
    AtomicFormula atom;             // over m1.source
    Valuation atom_valuation;       // over s2, for m1(atom)
};

LawCase generate_law_case(std::uint64_t seed);

struct LawTally {
    std::string law;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::vector<std::pair<std::uint64_t, std::string>> failures;   // (case seed, detail)
};

struct LawReport {
    std::uint64_t seed = 0;
    std::size_t cases = 0;
    std::vector<LawTally> laws;

    bool all_passed() const;
    std::string to_text() const;
};

struct LawSuiteOptions {
    std::uint64_t seed = 42;
    std::size_t cases = 1000;
    FormulaTranslator translate = translate_formula;
};

LawReport run_law_suite(const LawSuiteOptions& options);

}  // namespace adinst

#endif
