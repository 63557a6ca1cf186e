#include "adinst/dsl.hpp"
#include "adinst/generators.hpp"
#include "adinst/json_export.hpp"
#include "doctest.h"
#include "support/order_fixture.hpp"

using namespace adinst;
using adinst::testing::fixture_path;
using adinst::testing::order_diagram;
using adinst::testing::order_sentence_formula;
using adinst::testing::read_file;
using adinst::testing::shorten_morphism;

namespace {

Document load(const std::string& name, const Document* context = nullptr) {
    auto r = parse(read_file(fixture_path(name)), context);
    for (const auto& d : r.diagnostics) INFO(d.to_string(name));
    REQUIRE(r.ok());
    return r.document;
}

void collect_atoms(const Formula& f, std::multiset<std::string>& out) {
    if (f.op == Connective::Atom) out.insert(print(f.lhs));
    for (const auto& a : f.args) collect_atoms(a, out);
}

std::pair<int, int> position_of(const std::string& text, const std::string& needle) {
    const auto at = text.find(needle);
    int line = 1, col = 1;
    for (std::size_t i = 0; i < at; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

TEST_CASE("the order fixture") {
    const auto doc = load("order.adi");
    REQUIRE(doc.signatures.count("order"));
    const auto& sig = doc.signatures.at("order");
    CHECK(sig.hierarchy.names().size() == 12);
    CHECK(sig.edges.size() == 13);
    CHECK(sig == adinst::testing::order_signature());
    REQUIRE(doc.diagrams.count("order_process"));
    CHECK(doc.diagrams.at("order_process") == order_diagram());
}

TEST_CASE("sentences") {
    const auto r = parse("sentence S = skip");
    REQUIRE(r.ok());
    CHECK(r.document.sentences.at("S").formula == skip_formula());

    const auto order = load("order.adi");
    const auto doc = load("order_sentence.adi", &order);
    const auto& s = doc.sentences.at("order_connections");
    CHECK(s.over == "order");
    CHECK(s.formula == order_sentence_formula());

    SUBCASE("printed form keeps the same atoms") {
        const auto printed = print(s);
        const auto again = parse(printed, &order);
        REQUIRE(again.ok());
        std::multiset<std::string> a, b;
        collect_atoms(order_sentence_formula(), a);
        collect_atoms(again.document.sentences.at("order_connections").formula, b);
        CHECK(a == b);
        CHECK(a.size() == 13);
    }
}

TEST_CASE("parse_formula") {
    auto f = parse_formula("forall x:a . seq(x, e, b)");
    REQUIRE(f.formula);
    CHECK(*f.formula == forall("x", "a", seq_formula(Var{"x", "a"}, "e", Const{"b"})));

    f = parse_formula("skip /\\ skip \\/ ~skip => skip <=> skip");
    REQUIRE(f.formula);
    const auto s = skip_formula();
    CHECK(*f.formula == iff(implies(disj(conj(s, s), negate(s)), s), s));

    f = parse_formula("skip => skip => ~skip");
    REQUIRE(f.formula);
    CHECK(*f.formula == implies(s, implies(s, negate(s))));

    f = parse_formula("seq(a, e, b) = skip");
    REQUIRE(f.formula);
    CHECK(*f.formula == eq(Seq{Const{"a"}, "e", Const{"b"}}, Skip{}));

    CHECK(print(iff(implies(disj(conj(s, s), negate(s)), s), s)) == "skip /\\ skip \\/ ~skip => skip <=> skip");
    CHECK(print(conj(disj(s, s), s)) == "(skip \\/ skip) /\\ skip");
    CHECK(print(implies(implies(s, s), s)) == "(skip => skip) => skip");

    f = parse_formula("skip /\\");
    CHECK_FALSE(f.formula);
    CHECK_FALSE(f.diagnostics.empty());
}

TEST_CASE("diagnostics") {
    SUBCASE("missing comma points at the next token") {
        const std::string text = "sentence S = seq(A, e1 B)";
        const auto r = parse(text);
        REQUIRE_FALSE(r.ok());
        const auto [line, col] = position_of(text, "B)");
        CHECK(r.diagnostics.front().line == line);
        CHECK(r.diagnostics.front().column == col);
        CHECK(r.diagnostics.front().to_string("f.adi").rfind("f.adi:1:24:", 0) == 0);
    }
    SUBCASE("parsing goes on after an error") {
        const std::string text =
            "signature s {\n  node a : bogus;\n  node b : executable;\n  edge e : control\n}\n"
            "sentence T = seq(b e b)\n"
            "signature t { node c : executable; }\n"
            "diagram d over zz { e : a -> b; }\n";
        const auto r = parse(text);
        CHECK(r.diagnostics.size() >= 4);
        CHECK(r.document.signatures.count("t"));
        for (const auto& d : r.diagnostics) {
            CHECK(d.line >= 1);
            CHECK(d.column >= 1);
        }
    }
    SUBCASE("validation failures are positioned") {
        const auto r = parse(read_file(fixture_path("fork_arity_violation.adi")));
        REQUIRE(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].message.find("split") != std::string::npos);
        CHECK(r.diagnostics[0].line > 1);
    }
    SUBCASE("duplicates") {
        const auto r = parse("sentence S = skip;\nsentence S = ~skip;");
        CHECK(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].line == 2);
    }
    SUBCASE("every dropped semicolon of the fixture is reported") {
        const auto text = read_file(fixture_path("order.adi"));
        int cases = 0;
        for (std::size_t i = text.find(';'); i != std::string::npos; i = text.find(';', i + 1)) {
            auto broken = text;
            broken.erase(i, 1);
            CHECK_FALSE(parse(broken).ok());
            ++cases;
        }
        CHECK(cases == 38);
    }
}

TEST_CASE("morphisms and structures resolve against a context") {
    const auto order = load("order.adi");
    const auto doc = load("order_rename.adi", &order);
    CHECK(same_arrow(doc.morphisms.at("shorten"), shorten_morphism()));
    CHECK(doc.morphisms.at("identity").node_map == identity_morphism(order.signatures.at("order")).node_map);

    const auto without = parse(read_file(fixture_path("order_rename.adi")));
    CHECK_FALSE(without.ok());

    const auto s = induced_structure(order_diagram());
    Document d;
    d.structures.emplace(s.name, s);
    const auto back = parse(print(d), &order);
    REQUIRE(back.ok());
    CHECK(back.document.structures.at(s.name) == s);
}

TEST_CASE("canonical printing") {
    const auto order = load("order.adi");
    const auto text = print(order);
    const auto again = parse(text);
    REQUIRE(again.ok());
    CHECK(again.document == order);
    CHECK(print(again.document) == text);

    // Insertion order does not reach the output.
    Diagram a = order_diagram(), b;
    b.name = a.name;
    b.signature.name = a.signature.name;
    for (auto it = a.signature.hierarchy.kind_of.rbegin(); it != a.signature.hierarchy.kind_of.rend(); ++it)
        b.signature.hierarchy.kind_of.insert(*it);
    for (auto it = a.signature.edges.rbegin(); it != a.signature.edges.rend(); ++it) b.signature.edges.insert(*it);
    for (auto it = a.topology.rbegin(); it != a.topology.rend(); ++it) b.topology.insert(*it);
    for (auto it = a.guards.rbegin(); it != a.guards.rend(); ++it) b.guards.insert(*it);
    CHECK(print(a) == print(b));

    CHECK(print(Trace{}) == "eps");
    CHECK(print(Trace{{"a", "e", "b"}, {"b", "f", "c"}}) == "seq(a,e,b).seq(b,f,c)");
}

TEST_CASE("generated documents round-trip") {
    for (std::uint64_t i = 0; i < 150; ++i) {
        InstanceGenerator gen(case_seed(41, i));
        Document doc;
        const auto s2 = gen.signature("S2", "b");
        const auto m = gen.morphism_into(s2, "S1", "a", "m");
        doc.signatures.emplace(s2.name, s2);
        doc.signatures.emplace(m.source.name, m.source);
        doc.morphisms.emplace(m.name, m);
        doc.structures.emplace("I", gen.structure(s2, "I"));
        doc.sentences.emplace("f", Sentence{"f", "S1", gen.sentence_formula(m.source)});
        const auto d = gen.diagram("D", "DS");
        doc.signatures.emplace(d.signature.name, d.signature);
        doc.diagrams.emplace(d.name, d);

        const auto text = print(doc);
        const auto r = parse(text);
        for (const auto& diag : r.diagnostics) INFO(diag.to_string());
        REQUIRE(r.ok());
        CHECK(r.document == doc);
        CHECK(print(r.document) == text);
    }
}

TEST_CASE("json export") {
    const auto order = load("order.adi");
    const auto j = to_json(order);
    REQUIRE(j["signatures"].size() == 1);
    CHECK(j["signatures"][0]["name"] == "order");
    CHECK(j["signatures"][0]["hierarchy"]["names"].size() == 12);
    CHECK(j["signatures"][0]["edge_kind"]["e1"] == "control");
    CHECK(j["diagrams"][0]["topology"]["e4"]["target"] == "fill_order");
    CHECK(j["diagrams"][0]["guards"]["e3"] == "g_skip_order");

    const auto f = to_json(exists("x", "a", seq_formula(Var{"x", "a"}, "e", Const{"b"})));
    CHECK(f["op"] == "exists");
    CHECK(f["body"]["atom"]["kind"] == "seq");
    CHECK(f["body"]["atom"]["c"]["var"] == "x");
    CHECK(f["body"]["atom"]["d"]["const"] == "b");
}
