#include "adinst/generators.hpp"
#include "adinst/institution.hpp"
#include "doctest.h"
#include "support/order_fixture.hpp"

using namespace adinst;
using adinst::testing::order_diagram;
using adinst::testing::order_sentence_formula;
using adinst::testing::short_order_diagram;
using adinst::testing::shorten_morphism;

namespace {

Term rename_term(const Term& t) {
    if (const auto* v = std::get_if<Var>(&t)) return Var{"r_" + v->id, v->sort};
    return t;
}

AtomicFormula rename_atomic(const AtomicFormula& a) {
    if (const auto* s = std::get_if<Seq>(&a)) return Seq{rename_term(s->source), s->edge, rename_term(s->target)};
    return a;
}

// Every variable gets a fresh identifier; on a closed formula this is a bound renaming.
Formula rename_bound(const Formula& f) {
    Formula g = f;
    g.lhs = rename_atomic(f.lhs);
    g.rhs = rename_atomic(f.rhs);
    if (f.op == Connective::Exists || f.op == Connective::Forall) g.bound.id = "r_" + f.bound.id;
    for (auto& a : g.args) a = rename_bound(a);
    return g;
}

// Drops every seq atom to skip after translating.
Formula broken_translate(const SignatureMorphism& m, const Formula& f) {
    Formula g = translate_formula(m, f);
    std::function<void(Formula&)> walk = [&](Formula& h) {
        if (h.op == Connective::Atom && std::holds_alternative<Seq>(h.lhs)) h.lhs = Skip{};
        for (auto& a : h.args) walk(a);
    };
    walk(g);
    return g;
}

}  // namespace

TEST_CASE("satisfies on the order diagram") {
    const auto s = induced_structure(order_diagram());
    CHECK(satisfies(s, {}, order_sentence_formula()));
    CHECK(satisfies(s, {}, skip_formula()));
    CHECK_FALSE(satisfies(s, {}, seq_formula(Const{"Initial_Node"}, "e13", Const{"receive_order"})));

    const auto some_successor = exists("x", "ship_goods", seq_formula(Const{"And_Split"}, "e6", Var{"x", "ship_goods"}));
    CHECK(satisfies(s, {}, some_successor));
    CHECK_FALSE(satisfies(s, {}, forall("x", "Or_Join", seq_formula(Var{"x", "Or_Join"}, "e1", Var{"x", "Or_Join"}))));
    CHECK(satisfies(s, {}, implies(seq_formula(Const{"Final_node"}, "e1", Const{"Final_node"}), negate(skip_formula()))));
    CHECK(satisfies(s, {}, iff(skip_formula(), seq_formula(Const{"Or_Split"}, "e3", Const{"Or_Join"}))));
    CHECK_FALSE(satisfies(s, {}, disj(negate(skip_formula()), seq_formula(Const{"Or_Split"}, "e3", Const{"fill_order"}))));

    CHECK_THROWS_AS(satisfies(s, {}, seq_formula(Var{"x", "Or_Join"}, "e1", Const{"Or_Join"})), UnboundVariable);

    SUBCASE("removing any connection falsifies the sentence") {
        for (const auto& t : s.conn) {
            auto mutant = s;
            mutant.conn.erase(t);
            CHECK_FALSE(satisfies(mutant, {}, order_sentence_formula()));
        }
    }
    SUBCASE("empty domains") {
        auto e = s;
        e.domains["ship_goods"].clear();
        CHECK(satisfies(e, {}, forall("x", "ship_goods", negate(skip_formula()))));
        CHECK_FALSE(satisfies(e, {}, exists("x", "ship_goods", skip_formula())));
    }
}

TEST_CASE("equality between atoms") {
    const auto s = induced_structure(order_diagram());
    CHECK(satisfies(s, {}, eq(Skip{}, Skip{})));
    CHECK_FALSE(satisfies(s, {}, eq(Skip{}, Seq{Const{"Or_Split"}, "e3", Const{"Or_Join"}})));
    CHECK(satisfies(s, {}, exists("x", "Or_Join", eq(Seq{Const{"Or_Split"}, "e3", Var{"x", "Or_Join"}},
                                                      Seq{Const{"Or_Split"}, "e3", Const{"Or_Join"}}))));

    for (std::uint64_t i = 0; i < 200; ++i) {
        InstanceGenerator gen(case_seed(29, i));
        const auto sig = gen.signature("S", "a");
        const auto st = gen.structure(sig, "I");
        const AtomicFormula t1 = gen.atomic(sig), t2 = gen.atomic(sig), t3 = gen.atomic(sig);
        auto vars = free_vars(t1);
        for (const auto& v : free_vars(t2)) vars.insert(v);
        for (const auto& v : free_vars(t3)) vars.insert(v);
        Valuation b;
        try {
            b = gen.valuation(st, vars);
        } catch (const SortMismatch&) {
            continue;
        }
        auto holds = [&](const AtomicFormula& x, const AtomicFormula& y) { return satisfies(st, b, eq(x, y)); };
        CHECK(holds(t1, t1));
        CHECK(holds(t1, t2) == holds(t2, t1));
        if (holds(t1, t2) && holds(t2, t3)) CHECK(holds(t1, t3));
    }
}

TEST_CASE("satisfaction is invariant under renaming bound variables") {
    for (std::uint64_t i = 0; i < 300; ++i) {
        InstanceGenerator gen(case_seed(31, i));
        const auto sig = gen.signature("S", "a");
        const auto st = gen.structure(sig, "I");
        const auto f = gen.sentence_formula(sig);
        const auto g = rename_bound(f);
        REQUIRE(free_vars(g).empty());
        CHECK(satisfies(st, {}, f) == satisfies(st, {}, g));
    }
}

TEST_CASE("quantifier-free formulas only look at their free variables") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        InstanceGenerator gen(case_seed(37, i));
        const auto sig = gen.signature("S", "a");
        const auto st = gen.structure(sig, "I");
        const auto t = gen.atomic(sig);
        const auto vars = free_vars(t);
        const auto b = gen.valuation(st, vars);
        const auto f = disj(atom(t), negate(eq(t, Skip{})));
        auto wider = b;
        const auto& [sort, dom] = *st.domains.begin();
        if (!dom.empty()) wider.emplace(Var{"unused", sort}, *dom.begin());
        CHECK(satisfies(st, b, f) == satisfies(st, wider, f));
    }
}

TEST_CASE("satisfaction condition on fixed instances") {
    const auto order = induced_structure(order_diagram());
    const auto id = identity_morphism(order.signature);
    CHECK(check_satisfaction_condition(id, order, order_sentence_formula()).holds);
    CHECK(check_satisfaction_condition(id, order, seq_formula(Const{"Initial_Node"}, "e13", Const{"receive_order"})).holds);

    const auto m = shorten_morphism();
    const auto renamed = induced_structure(short_order_diagram());
    CHECK(check_satisfaction_condition(m, renamed, order_sentence_formula()).holds);
    CHECK(satisfies(renamed, {}, translate_formula(m, order_sentence_formula())));

    CHECK(check_theta_invariance(m, renamed, Skip{}, {}).holds);
    CHECK(check_theta_invariance(m, renamed, Seq{Const{"Or_Split"}, "e3", Const{"Or_Join"}}, {}).holds);
    CHECK(check_theta_invariance(m, renamed, Seq{Var{"x", "Or_Join"}, "e3", Const{"Or_Join"}}, {{Var{"x", "oj"}, "oj"}}).holds);

    const auto v = check_satisfaction_condition(m, renamed, order_sentence_formula(), broken_translate);
    CHECK(v.holds);     // the renamed conjunction is true either way
    const auto w = check_satisfaction_condition(m, renamed, seq_formula(Const{"Initial_Node"}, "e13", Const{"receive_order"}), broken_translate);
    CHECK_FALSE(w.holds);
    CHECK(w.counterexample.find("shorten") != std::string::npos);
}

TEST_CASE("category laws on fixed renamings") {
    LawSample smp;
    smp.m1 = shorten_morphism();
    smp.m2 = identity_morphism(smp.m1.target);
    smp.m3 = identity_morphism(smp.m1.target);
    smp.formulas = {order_sentence_formula(), skip_formula()};
    smp.structures = {induced_structure(short_order_diagram())};
    CHECK(check_category_laws({smp}).holds);
    const auto v = check_category_laws({smp}, broken_translate);
    CHECK_FALSE(v.holds);
}

TEST_CASE("law suite") {
    SUBCASE("passes") {
        const auto r = run_law_suite({7, 150, translate_formula});
        CHECK(r.cases == 150);
        CHECK(r.all_passed());
        for (const auto& l : r.laws) CHECK(l.passed == 150);
    }
    SUBCASE("zero cases") {
        const auto r = run_law_suite({7, 0, translate_formula});
        CHECK(r.all_passed());
        CHECK(r.to_text().find("no cases run") != std::string::npos);
    }
    SUBCASE("is reproducible") {
        CHECK(run_law_suite({99, 40, translate_formula}).to_text() == run_law_suite({99, 40, translate_formula}).to_text());
    }
    SUBCASE("a broken translation is caught with a replayable seed") {
        const auto r = run_law_suite({42, 200, broken_translate});
        CHECK_FALSE(r.all_passed());
        const auto& sat = r.laws[0];
        CHECK(sat.law == "satisfaction-condition");
        REQUIRE(sat.failed > 0);
        const auto seed = sat.failures.front().first;
        const auto c = generate_law_case(seed);
        const auto whole = compose_morphisms(compose_morphisms(c.sample.m1, c.sample.m2), c.sample.m3);
        const bool fails_again = !check_satisfaction_condition(c.sample.m1, c.s2, c.sentence, broken_translate).holds ||
                                 !check_satisfaction_condition(whole, c.sample.structures.front(), c.sentence, broken_translate).holds;
        CHECK(fails_again);
        CHECK(r.to_text().find("case seed " + std::to_string(seed)) != std::string::npos);
    }
}
