#include "adinst/institution.hpp"

#include <sstream>

#include "adinst/dsl.hpp"
#include "adinst/generators.hpp"

namespace adinst {

//------------------------------------------------------------------------------
// Satisfaction

bool satisfies(const Structure& s, const Valuation& b, const Formula& f) {
    switch (f.op) {
    case Connective::Atom: {
        if (std::holds_alternative<Skip>(f.lhs)) return true;
        const auto& seq = std::get<Seq>(f.lhs);
        auto mu = s.mu.find(seq.edge);
        if (mu == s.mu.end()) throw UnknownSymbol("edge '" + seq.edge + "' is not interpreted");
        return s.conn.count({evaluate(s, seq.source, b), mu->second, evaluate(s, seq.target, b)}) != 0;
    }
    case Connective::Eq:
        return theta(s, f.lhs, b) == theta(s, f.rhs, b);
    case Connective::Not:
        return !satisfies(s, b, f.body());
    case Connective::And:
        return satisfies(s, b, f.args[0]) && satisfies(s, b, f.args[1]);
    case Connective::Or:
        return satisfies(s, b, f.args[0]) || satisfies(s, b, f.args[1]);
    case Connective::Implies:
        return !satisfies(s, b, f.args[0]) || satisfies(s, b, f.args[1]);
    case Connective::Iff:
        return satisfies(s, b, f.args[0]) == satisfies(s, b, f.args[1]);
    case Connective::Exists:
    case Connective::Forall: {
        const bool want = f.op == Connective::Exists;
        auto dom = s.domains.find(f.bound.sort);
        if (dom == s.domains.end()) throw UnknownSymbol("no domain for sort '" + f.bound.sort + "'");
        Valuation inner = b;
        for (const auto& v : dom->second) {
            inner.insert_or_assign(f.bound, v);
            if (satisfies(s, inner, f.body()) == want) return want;
        }
        return !want;
    }
    }
    return false;
}

bool satisfies(const Structure& s, const Sentence& sentence) { return satisfies(s, Valuation{}, sentence.formula); }

//------------------------------------------------------------------------------
// Law checks

Verdict check_satisfaction_condition(const SignatureMorphism& m, const Structure& s2, const Formula& sentence,
                                     const FormulaTranslator& translate) {
    const Structure s1 = reduct(m, s2);
    const Formula translated = translate(m, sentence);
    const bool reduced = satisfies(s1, Valuation{}, sentence);
    const bool along = satisfies(s2, Valuation{}, translated);
    if (reduced == along) return Verdict::ok();
    std::ostringstream os;
    os << "reduct(" << m.name << ", " << s2.name << ") " << (reduced ? "satisfies" : "does not satisfy") << " "
       << print(sentence) << " but " << s2.name << (along ? " satisfies " : " does not satisfy ") << print(translated);
    return Verdict::fail(os.str());
}

Verdict check_theta_invariance(const SignatureMorphism& m, const Structure& s2, const AtomicFormula& t,
                               const Valuation& b2) {
    const Structure s1 = reduct(m, s2);
    const Valuation b1 = pullback_valuation(m, b2, free_vars(t));
    const TraceSet lhs = theta(s2, translate_atomic(m, t), b2);
    const TraceSet rhs = theta(s1, t, b1);
    if (lhs == rhs) return Verdict::ok();
    std::ostringstream os;
    os << "Theta differs for " << print(t) << " along " << m.name << ":";
    for (const auto& tr : lhs) os << " target " << print(tr);
    for (const auto& tr : rhs) os << " reduct " << print(tr);
    return Verdict::fail(os.str());
}

Verdict check_trace_invariance(const SignatureMorphism& m, const Structure& s2, std::size_t max_len) {
    const TraceSet lhs = traces_over(image_signature(m), s2, max_len);
    const TraceSet rhs = traces_over(m.source, reduct(m, s2), max_len);
    if (lhs == rhs) return Verdict::ok();
    return Verdict::fail("trace sets differ along " + m.name + " (" + std::to_string(lhs.size()) + " vs " +
                         std::to_string(rhs.size()) + " traces up to length " + std::to_string(max_len) + ")");
}

namespace {

bool same_components(const Structure& a, const Structure& b) {
    return structurally_equal(a.signature, b.signature) && a.domains == b.domains && a.edge_domain == b.edge_domain &&
           a.mu == b.mu && a.constants == b.constants && a.conn == b.conn;
}

Verdict category_laws(const LawSample& smp, const FormulaTranslator& translate) {
    const auto& [m1, m2, m3, formulas, structures] = smp;
    for (const auto* m : {&m1, &m2, &m3}) {
        if (!same_arrow(compose_morphisms(identity_morphism(m->source), *m), *m))
            return Verdict::fail("id ; " + m->name + " differs from " + m->name);
        if (!same_arrow(compose_morphisms(*m, identity_morphism(m->target)), *m))
            return Verdict::fail(m->name + " ; id differs from " + m->name);
    }
    const auto m12 = compose_morphisms(m1, m2);
    const auto m23 = compose_morphisms(m2, m3);
    const auto left = compose_morphisms(m12, m3);
    const auto right = compose_morphisms(m1, m23);
    if (!same_arrow(left, right)) return Verdict::fail("composition is not associative on " + m1.name + ", " + m2.name + ", " + m3.name);
    for (const auto* m : {&m12, &m23, &left}) {
        const auto report = validate_morphism(*m);
        if (!report.empty()) return Verdict::fail("composite " + m->name + " is invalid: " + report.front().message);
    }

    const auto id1 = identity_morphism(m1.source);
    for (const auto& f : formulas) {
        if (translate(id1, f) != f) return Verdict::fail("translate(id) changed " + print(f));
        if (translate(m12, f) != translate(m2, translate(m1, f)))
            return Verdict::fail("translate(m1;m2) differs from translate(m2) . translate(m1) on " + print(f));
        if (translate(left, f) != translate(m3, translate(m2, translate(m1, f))))
            return Verdict::fail("translate(m1;m2;m3) differs from stepwise translation on " + print(f));
    }
    for (const auto& s : structures) {
        if (!same_components(reduct(identity_morphism(m3.target), s), s))
            return Verdict::fail("reduct(id) changed structure " + s.name);
        if (!same_components(reduct(m23, s), reduct(m2, reduct(m3, s))))
            return Verdict::fail("reduct(m2;m3) differs from reduct(m2) . reduct(m3) on " + s.name);
        if (!same_components(reduct(left, s), reduct(m1, reduct(m2, reduct(m3, s)))))
            return Verdict::fail("reduct(m1;m2;m3) differs from stepwise reduct on " + s.name);
    }
    return Verdict::ok();
}

}  // namespace

Verdict check_category_laws(const std::vector<LawSample>& samples, const FormulaTranslator& translate) {
    for (const auto& smp : samples) {
        Verdict v = category_laws(smp, translate);
        if (!v.holds) return v;
    }
    return Verdict::ok();
}

//------------------------------------------------------------------------------
// Randomized suite

LawCase generate_law_case(std::uint64_t seed) {
    InstanceGenerator gen(seed);
    LawCase c;
    c.seed = seed;
    const Signature s4 = gen.signature("S4", "d");
    c.sample.m3 = gen.morphism_into(s4, "S3", "c", "m3");
    c.sample.m2 = gen.morphism_into(c.sample.m3.source, "S2", "b", "m2");
    c.sample.m1 = gen.morphism_into(c.sample.m2.source, "S1", "a", "m1");
    const Signature& s1 = c.sample.m1.source;
    for (int i = 0; i < 2; ++i) c.sample.formulas.push_back(gen.sentence_formula(s1));
    c.sample.structures.push_back(gen.structure(s4, "I4"));
    c.s2 = gen.structure(c.sample.m1.target, "I2");
    c.sentence = c.sample.formulas.front();
    c.atom = gen.atomic(s1);
    c.atom_valuation = gen.valuation(c.s2, free_vars(translate_atomic(c.sample.m1, c.atom)));
    return c;
}

bool LawReport::all_passed() const {
    for (const auto& l : laws)
        if (l.failed) return false;
    return true;
}

std::string LawReport::to_text() const {
    std::ostringstream os;
    os << "seed " << seed << ", " << cases << " cases\n";
    if (cases == 0) os << "no cases run; every law holds vacuously\n";
    for (const auto& l : laws) {
        os << (l.failed ? "FAIL " : "pass ") << l.law << ": " << l.passed << " passed, " << l.failed << " failed\n";
        for (const auto& [seed, detail] : l.failures) os << "  counterexample (case seed " << seed << "): " << detail << '\n';
    }
    return os.str();
}

LawReport run_law_suite(const LawSuiteOptions& options) {
    LawReport report;
    report.seed = options.seed;
    report.cases = options.cases;
    for (const char* law : {"satisfaction-condition", "theta-invariance", "trace-invariance", "sentencehood",
                            "category-laws"}) {
        report.laws.emplace_back();
        report.laws.back().law = law;
    }
    constexpr std::size_t kMaxFailuresShown = 5;

    auto tally = [&](LawTally& law, std::uint64_t seed, const Verdict& v) {
        if (v.holds) {
            ++law.passed;
            return;
        }
        ++law.failed;
        if (law.failures.size() < kMaxFailuresShown) law.failures.emplace_back(seed, v.counterexample);
    };
    auto guarded = [](auto&& check) -> Verdict {
        try {
            return check();
        } catch (const std::exception& e) {
            return Verdict::fail(std::string("exception: ") + e.what());
        }
    };

    for (std::size_t i = 0; i < options.cases; ++i) {
        const std::uint64_t seed = case_seed(options.seed, i);
        const LawCase c = generate_law_case(seed);
        const auto& smp = c.sample;

        tally(report.laws[0], seed, guarded([&] {
                  Verdict v = check_satisfaction_condition(smp.m1, c.s2, c.sentence, options.translate);
                  if (!v.holds) return v;
                  const auto whole = compose_morphisms(compose_morphisms(smp.m1, smp.m2), smp.m3);
                  return check_satisfaction_condition(whole, smp.structures.front(), c.sentence, options.translate);
              }));
        tally(report.laws[1], seed, guarded([&] { return check_theta_invariance(smp.m1, c.s2, c.atom, c.atom_valuation); }));
        tally(report.laws[2], seed, guarded([&] { return check_trace_invariance(smp.m1, c.s2, 2); }));
        tally(report.laws[3], seed, guarded([&] {
                  for (const auto& f : smp.formulas)
                      if (!free_vars(options.translate(smp.m1, f)).empty())
                          return Verdict::fail("translation of " + print(f) + " has free variables");
                  return Verdict::ok();
              }));
        tally(report.laws[4], seed, guarded([&] { return check_category_laws({smp}, options.translate); }));
    }
    return report;
}

}  // namespace adinst
