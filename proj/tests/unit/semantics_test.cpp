#include "adinst/generators.hpp"
#include "adinst/institution.hpp"
#include "adinst/semantics.hpp"
#include "doctest.h"
#include "support/order_fixture.hpp"

using namespace adinst;
using adinst::testing::order_diagram;
using adinst::testing::order_signature;
using adinst::testing::short_order_diagram;
using adinst::testing::shorten_morphism;

namespace {

Structure tiny() {
    Structure s;
    s.name = "tiny";
    s.signature.name = "t";
    s.signature.hierarchy.kind_of = {{"a", NodeKind::Executable}, {"b", NodeKind::Executable}};
    s.signature.hierarchy.sub = {{"a", "b"}};
    s.signature.edges = {{"e", EdgeKind::ControlFlow}};
    s.domains = {{"a", {"1"}}, {"b", {"1", "2"}}};
    s.constants = {{"a", "1"}, {"b", "2"}};
    s.edge_domain = {"w"};
    s.mu = {{"e", "w"}};
    s.conn = {{"1", "w", "2"}};
    return s;
}

}  // namespace

TEST_CASE("validate_structure") {
    CHECK(validate_structure(tiny()).empty());
    CHECK(validate_structure(induced_structure(order_diagram())).empty());

    auto s = tiny();
    s.domains["a"] = {"1", "3"};
    CHECK(has_violation(validate_structure(s), "monotonicity"));
    s = tiny();
    s.constants["a"] = "2";
    CHECK(has_violation(validate_structure(s), "constant"));
    s = tiny();
    s.mu["e"] = "nowhere";
    CHECK(has_violation(validate_structure(s), "mu"));
    s = tiny();
    s.mu.erase("e");
    CHECK(has_violation(validate_structure(s), "mu"));
    s = tiny();
    s.conn.insert({"1", "w", "9"});
    CHECK(has_violation(validate_structure(s), "conn"));
    s = tiny();
    s.domains.erase("b");
    CHECK(has_violation(validate_structure(s), "domain"));
}

TEST_CASE("theta") {
    const auto s = induced_structure(order_diagram());
    CHECK(theta(s, Skip{}, {}) == TraceSet{Trace{}});
    CHECK(theta(s, Seq{Const{"Initial_Node"}, "e1", Const{"receive_order"}}, {}) ==
          TraceSet{Trace{{"Initial_Node", "e1", "receive_order"}}});

    const auto t = tiny();
    const AtomicFormula open = Seq{Var{"x", "b"}, "e", Const{"a"}};
    CHECK(theta(t, open, {{Var{"x", "b"}, "2"}}) == TraceSet{Trace{{"2", "w", "1"}}});
    CHECK(theta(t, open, {{Var{"x", "b"}, "2"}}) == theta(t, open, {{Var{"x", "b"}, "2"}, {Var{"y", "a"}, "1"}}));
    CHECK_THROWS_AS(theta(t, open, {}), UnboundVariable);
}

TEST_CASE("theta of skip is epsilon on random structures") {
    for (std::uint64_t i = 0; i < 100; ++i) {
        InstanceGenerator gen(case_seed(3, i));
        const auto sig = gen.signature("S", "a");
        const auto s = gen.structure(sig, "I");
        REQUIRE(validate_structure(s).empty());
        const auto vars = free_vars(gen.atomic(sig));
        CHECK(theta(s, Skip{}, gen.valuation(s, vars)) == TraceSet{Trace{}});
    }
}

TEST_CASE("traces_over") {
    const auto s = tiny();
    Signature empty;
    CHECK(traces_over(empty, s, 3) == TraceSet{Trace{}});

    Signature one;
    one.hierarchy.kind_of = {{"a", NodeKind::Executable}};
    one.edges = {{"e", EdgeKind::ControlFlow}};
    const TraceStep step{"1", "w", "1"};
    CHECK(traces_over(one, s, 2) == TraceSet{Trace{}, Trace{step}, Trace{step, step}});
    CHECK(in_traces_over(one, s, Trace{step, step, step}));
    CHECK_FALSE(in_traces_over(one, s, Trace{{"1", "w", "2"}}));

    // 2 constants, 1 edge: 4 steps, so 1 + 4 + 16 + 64 words.
    CHECK(traces_over(s.signature, s, 3).size() == 85);
    for (std::size_t k = 0; k < 4; ++k) {
        const auto small = traces_over(s.signature, s, k);
        const auto big = traces_over(s.signature, s, k + 1);
        CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
    }

    Signature alien;
    alien.hierarchy.kind_of = {{"zzz", NodeKind::Executable}};
    CHECK_THROWS_AS(traces_over(alien, s, 1), NotASubsignature);
    Signature wrong_kind;
    wrong_kind.hierarchy.kind_of = {{"a", NodeKind::Fork}};
    CHECK_FALSE(is_subsignature(wrong_kind, s.signature));
}

TEST_CASE("all_traces") {
    const auto s = tiny();
    // values {1,2}, one edge value: 4 steps.
    CHECK(all_traces(s, 2).size() == 1 + 4 + 16);
    CHECK(in_all_traces(s, Trace{{"2", "w", "2"}}));
    CHECK_FALSE(in_all_traces(s, Trace{{"2", "v", "2"}}));
    CHECK(in_all_traces(s, Trace{}));
}

TEST_CASE("reduct") {
    const auto s = tiny();
    const auto id = identity_morphism(s.signature);
    CHECK(reduct(id, s) == s);

    const auto m = shorten_morphism();
    const auto s2 = induced_structure(short_order_diagram());
    const auto s1 = reduct(m, s2);
    CHECK(s1.signature == m.source);
    CHECK(s1.domains.at("receive_order") == s2.domains.at("ro"));
    CHECK(s1.constants.at("receive_order") == "ro");
    CHECK(s1.mu.at("e4") == "f4");
    CHECK(s1.conn == s2.conn);
    CHECK(validate_structure(s1).empty());

    CHECK_THROWS_AS(reduct(m, induced_structure(order_diagram())), SignatureMismatch);
}

TEST_CASE("reduct respects composition on random structures") {
    for (std::uint64_t i = 0; i < 100; ++i) {
        InstanceGenerator gen(case_seed(5, i));
        const auto s3 = gen.signature("S3", "c");
        const auto m2 = gen.morphism_into(s3, "S2", "b", "m2");
        const auto m1 = gen.morphism_into(m2.source, "S1", "a", "m1");
        const auto s = gen.structure(s3, "I");
        const auto lhs = reduct(compose_morphisms(m1, m2), s);
        const auto rhs = reduct(m1, reduct(m2, s));
        CHECK(lhs.domains == rhs.domains);
        CHECK(lhs.constants == rhs.constants);
        CHECK(lhs.mu == rhs.mu);
        CHECK(lhs.edge_domain == rhs.edge_domain);
        CHECK(lhs.conn == rhs.conn);
        CHECK(validate_structure(rhs).empty());
    }
}

TEST_CASE("induced_structure") {
    const auto s = induced_structure(order_diagram());
    CHECK(s.conn.size() == 13);
    CHECK(s.domains.size() == 12);
    CHECK(s.domains.at("fill_order") == std::set<Value>{"fill_order"});
    CHECK(s.mu.at("e7") == "e7");

    Diagram lone;
    lone.name = "lone";
    lone.signature.hierarchy.kind_of = {{"n", NodeKind::Executable}};
    CHECK(induced_structure(lone).conn.empty());

    SUBCASE("domains follow the hierarchy downwards") {
        auto d = order_diagram();
        d.signature.hierarchy.sub.emplace("ship_goods", "fill_order");
        const auto t = induced_structure(d);
        CHECK(t.domains.at("fill_order") == std::set<Value>{"fill_order", "ship_goods"});
        CHECK(validate_structure(t).empty());
    }

    SUBCASE("reduct along a renaming is the renamed induced structure") {
        const auto m = shorten_morphism();
        const auto r = reduct(m, induced_structure(short_order_diagram()));
        for (const auto& [a, dom] : s.domains) {
            std::set<Value> renamed;
            for (const auto& v : dom) renamed.insert(m.map_node(v));
            CHECK(r.domains.at(a) == renamed);
            CHECK(r.constants.at(a) == m.map_node(s.constants.at(a)));
        }
        for (const auto& [e, w] : s.mu) CHECK(r.mu.at(e) == m.map_edge(w));
        std::set<TraceStep> renamed_conn;
        for (const auto& t : s.conn) renamed_conn.insert({m.map_node(t.source), m.map_edge(t.edge), m.map_node(t.target)});
        CHECK(r.conn == renamed_conn);
    }
}

TEST_CASE("trace sets are invariant under change of notation up to length 4") {
    GeneratorLimits small{3, 2, 2, 3};
    for (std::uint64_t i = 0; i < 60; ++i) {
        InstanceGenerator gen(case_seed(17, i), small);
        const auto s2sig = gen.signature("S2", "b");
        const auto m = gen.morphism_into(s2sig, "S1", "a", "m");
        const auto s2 = gen.structure(s2sig, "I2");
        for (std::size_t k = 0; k <= 4; ++k) {
            const auto v = check_trace_invariance(m, s2, k);
            CHECK_MESSAGE(v.holds, v.counterexample);
        }
    }
}
