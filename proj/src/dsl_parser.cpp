#include <cctype>
#include <functional>
#include <set>

#include "adinst/dsl.hpp"

namespace adinst {

bool Document::empty() const {
    return signatures.empty() && diagrams.empty() && morphisms.empty() && structures.empty() && sentences.empty();
}

void Document::merge(const Document& other) {
    for (const auto& [k, v] : other.signatures) signatures.insert_or_assign(k, v);
    for (const auto& [k, v] : other.diagrams) diagrams.insert_or_assign(k, v);
    for (const auto& [k, v] : other.morphisms) morphisms.insert_or_assign(k, v);
    for (const auto& [k, v] : other.structures) structures.insert_or_assign(k, v);
    for (const auto& [k, v] : other.sentences) sentences.insert_or_assign(k, v);
}

std::string Diagnostic::to_string(std::string_view file) const {
    std::string out;
    if (!file.empty()) out += std::string(file) + ":";
    return out + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

namespace {

//==============================================================================
// Lexer

enum class Tok { Ident, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
};

constexpr std::string_view kPuncts[] = {"|->", "<=>", "->", "<=", "=>", "/\\", "\\/", "{", "}", ";",
                                        ":",   "(",   ")",  ",",  "[",  "]",   "=",   "~", "."};

bool ident_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || u >= 0x80;
}

std::vector<Token> lex(std::string_view src, std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    int line = 1, column = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (src.substr(i, 2) == "--") {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (ident_char(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), line, column});
            advance(j - i);
            continue;
        }
        bool matched = false;
        for (auto p : kPuncts) {
            if (src.substr(i, p.size()) == p) {
                out.push_back({Tok::Punct, std::string(p), line, column});
                advance(p.size());
                matched = true;
                break;
            }
        }
        if (!matched) {
            diags.push_back({line, column, "unexpected character '" + std::string(1, c) + "'"});
            advance(1);
        }
    }
    out.push_back({Tok::End, "", line, column});
    return out;
}

//==============================================================================
// Parser

struct SyntaxError {
    Diagnostic diag;
};

bool is_top_keyword(const Token& t) {
    static const std::set<std::string> kw{"signature", "diagram", "morphism", "structure", "sentence"};
    return t.kind == Tok::Ident && kw.count(t.text);
}

std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
}

class Parser {
public:
    Parser(std::string_view text, const Document* context) : context_(context) { toks_ = lex(text, diags_); }

    ParseResult document() {
        while (!at_end()) {
            const Token& t = peek();
            try {
                if (t.kind == Tok::Ident && t.text == "signature")
                    signature();
                else if (t.kind == Tok::Ident && t.text == "diagram")
                    diagram();
                else if (t.kind == Tok::Ident && t.text == "morphism")
                    morphism();
                else if (t.kind == Tok::Ident && t.text == "structure")
                    structure();
                else if (t.kind == Tok::Ident && t.text == "sentence")
                    sentence();
                else
                    fail(t, "expected a declaration (signature, diagram, morphism, structure or sentence), found " +
                                describe(t));
            } catch (const SyntaxError& e) {
                diags_.push_back(e.diag);
                sync_top();
            }
        }
        return {std::move(doc_), std::move(diags_)};
    }

    FormulaParseResult formula_only() {
        FormulaParseResult out;
        try {
            Formula f = formula();
            if (!at_end()) fail(peek(), "unexpected " + describe(peek()) + " after formula");
            out.formula = std::move(f);
        } catch (const SyntaxError& e) {
            diags_.push_back(e.diag);
        }
        out.diagnostics = std::move(diags_);
        if (!out.diagnostics.empty()) out.formula.reset();
        return out;
    }

private:
    //--------------------------------------------------------------------------
    // Token plumbing

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at_end() const { return peek().kind == Tok::End; }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool at_punct(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }
    bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }

    [[noreturn]] void fail(const Token& at, std::string msg) { throw SyntaxError{{at.line, at.column, std::move(msg)}}; }

    void note(const Token& at, std::string msg) { diags_.push_back({at.line, at.column, std::move(msg)}); }

    const Token& expect_punct(std::string_view p) {
        if (!at_punct(p)) fail(peek(), "expected '" + std::string(p) + "', found " + describe(peek()));
        return next();
    }
    const Token& expect_word(std::string_view w) {
        if (!at_word(w)) fail(peek(), "expected '" + std::string(w) + "', found " + describe(peek()));
        return next();
    }
    const Token& expect_ident(std::string_view what) {
        if (peek().kind != Tok::Ident) fail(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
        return next();
    }

    void sync_top() {
        while (!at_end() && !is_top_keyword(peek())) next();
    }

    // Skips to just past the next ';', or up to '}' / the next declaration.
    void sync_statement() {
        while (!at_end() && !at_punct("}") && !is_top_keyword(peek())) {
            if (next().text == ";" ) return;
        }
    }

    // '{' { stmt } '}' with per-statement recovery.
    void block(const std::function<void()>& stmt) {
        expect_punct("{");
        while (!at_end() && !at_punct("}")) {
            if (is_top_keyword(peek())) {
                note(peek(), "missing '}' before " + describe(peek()));
                return;
            }
            try {
                stmt();
            } catch (const SyntaxError& e) {
                diags_.push_back(e.diag);
                sync_statement();
            }
        }
        if (at_end()) {
            note(peek(), "missing '}' at end of input");
            return;
        }
        next();
    }

    std::vector<Value> value_set() {
        std::vector<Value> out;
        expect_punct("{");
        if (!at_punct("}")) {
            out.push_back(expect_ident("a value").text);
            while (at_punct(",")) {
                next();
                out.push_back(expect_ident("a value").text);
            }
        }
        expect_punct("}");
        return out;
    }

    //--------------------------------------------------------------------------
    // Name resolution

    const Signature* find_signature(const Name& n) const {
        if (auto it = doc_.signatures.find(n); it != doc_.signatures.end()) return &it->second;
        if (context_)
            if (auto it = context_->signatures.find(n); it != context_->signatures.end()) return &it->second;
        return nullptr;
    }

    const Signature* resolve_signature(const Token& t) {
        const Signature* sig = find_signature(t.text);
        if (!sig) note(t, "unknown signature '" + t.text + "'");
        return sig;
    }

    template <typename Map, typename Value>
    bool declare(Map& into, const Map* ctx, const Token& at, const char* what, Value v) {
        if (into.count(v.name)) {
            note(at, std::string("duplicate ") + what + " '" + v.name + "'");
            return false;
        }
        if (ctx) {
            auto it = ctx->find(v.name);
            if (it != ctx->end() && !(it->second == v)) {
                note(at, std::string(what) + " '" + v.name + "' conflicts with an earlier declaration");
                return false;
            }
        }
        into.emplace(v.name, std::move(v));
        return true;
    }

    void report(const Token& at, const std::string& prefix, const ValidationReport& r) {
        for (const auto& v : r) note(at, prefix + ": " + v.message);
    }

    //--------------------------------------------------------------------------
    // Declarations

    void signature() {
        next();
        const Token& name = expect_ident("a signature name");
        Signature sig;
        sig.name = name.text;
        block([&] {
            if (at_word("node")) {
                next();
                const Token& n = expect_ident("a node name");
                expect_punct(":");
                const Token& k = expect_ident("a node kind");
                auto kind = node_kind_from_string(k.text);
                if (!kind) fail(k, "unknown node kind '" + k.text + "'");
                expect_punct(";");
                if (!sig.hierarchy.kind_of.emplace(n.text, *kind).second) note(n, "duplicate node '" + n.text + "'");
            } else if (at_word("sub")) {
                next();
                const Token& a = expect_ident("an activity name");
                expect_punct("<=");
                const Token& b = expect_ident("an activity name");
                expect_punct(";");
                sig.hierarchy.sub.emplace(a.text, b.text);
            } else if (at_word("edge")) {
                next();
                const Token& e = expect_ident("an edge name");
                expect_punct(":");
                const Token& k = expect_ident("'control' or 'object'");
                auto kind = edge_kind_from_string(k.text);
                if (!kind) fail(k, "unknown edge kind '" + k.text + "'");
                expect_punct(";");
                if (!sig.edges.emplace(e.text, *kind).second) note(e, "duplicate edge '" + e.text + "'");
            } else {
                fail(peek(), "expected 'node', 'sub' or 'edge', found " + describe(peek()));
            }
        });
        report(name, "signature '" + sig.name + "'", validate_signature(sig));
        declare(doc_.signatures, context_ ? &context_->signatures : nullptr, name, "signature", std::move(sig));
    }

    void diagram() {
        next();
        const Token& name = expect_ident("a diagram name");
        expect_word("over");
        const Signature* sig = resolve_signature(expect_ident("a signature name"));
        Diagram d;
        d.name = name.text;
        block([&] {
            const Token& e = expect_ident("an edge name");
            expect_punct(":");
            const Token& src = expect_ident("a source node");
            expect_punct("->");
            const Token& dst = expect_ident("a target node");
            std::optional<Name> guard;
            if (at_punct("[")) {
                next();
                expect_word("guard");
                guard = expect_ident("a guard atom").text;
                expect_punct("]");
            }
            expect_punct(";");
            if (!d.topology.emplace(e.text, Endpoints{src.text, dst.text}).second) {
                note(e, "duplicate edge '" + e.text + "'");
                return;
            }
            if (guard) d.guards.emplace(e.text, *guard);
        });
        if (!sig) return;
        d.signature = *sig;
        report(name, "diagram '" + d.name + "'", validate_diagram(d));
        declare(doc_.diagrams, context_ ? &context_->diagrams : nullptr, name, "diagram", std::move(d));
    }

    void morphism() {
        next();
        const Token& name = expect_ident("a morphism name");
        expect_punct(":");
        const Signature* src = resolve_signature(expect_ident("a source signature"));
        expect_punct("->");
        const Signature* dst = resolve_signature(expect_ident("a target signature"));
        SignatureMorphism m;
        m.name = name.text;
        block([&] {
            const bool node = at_word("node");
            if (!node && !at_word("edge")) fail(peek(), "expected 'node' or 'edge', found " + describe(peek()));
            next();
            const Token& a = expect_ident("a source name");
            expect_punct("|->");
            const Token& b = expect_ident("a target name");
            expect_punct(";");
            auto& table = node ? m.node_map : m.edge_map;
            if (!table.emplace(a.text, b.text).second) note(a, "'" + a.text + "' is mapped twice");
        });
        if (!src || !dst) return;
        m.source = *src;
        m.target = *dst;
        report(name, "morphism '" + m.name + "'", validate_morphism(m));
        declare(doc_.morphisms, context_ ? &context_->morphisms : nullptr, name, "morphism", std::move(m));
    }

    void structure() {
        next();
        const Token& name = expect_ident("a structure name");
        expect_word("over");
        const Signature* sig = resolve_signature(expect_ident("a signature name"));
        Structure s;
        s.name = name.text;
        bool explicit_edge_domain = false;
        block([&] {
            if (at_word("domain")) {
                next();
                const Token& a = expect_ident("an activity name");
                expect_punct("=");
                auto values = value_set();
                expect_punct(";");
                if (s.domains.count(a.text)) note(a, "duplicate domain for '" + a.text + "'");
                s.domains[a.text].insert(values.begin(), values.end());
            } else if (at_word("edge_domain")) {
                next();
                expect_punct("=");
                auto values = value_set();
                expect_punct(";");
                s.edge_domain.insert(values.begin(), values.end());
                explicit_edge_domain = true;
            } else if (at_word("const")) {
                next();
                const Token& a = expect_ident("an activity name");
                expect_punct("=");
                const Token& v = expect_ident("a value");
                expect_punct(";");
                if (!s.constants.emplace(a.text, v.text).second) note(a, "duplicate constant for '" + a.text + "'");
            } else if (at_word("mu")) {
                next();
                const Token& e = expect_ident("an edge name");
                expect_punct("=");
                const Token& v = expect_ident("a value");
                expect_punct(";");
                if (!s.mu.emplace(e.text, v.text).second) note(e, "duplicate mu for '" + e.text + "'");
            } else if (at_word("conn")) {
                next();
                expect_punct("(");
                const Token& a = expect_ident("a value");
                expect_punct(",");
                const Token& e = expect_ident("an edge value");
                expect_punct(",");
                const Token& b = expect_ident("a value");
                expect_punct(")");
                expect_punct(";");
                s.conn.insert({a.text, e.text, b.text});
            } else {
                fail(peek(), "expected 'domain', 'edge_domain', 'const', 'mu' or 'conn', found " + describe(peek()));
            }
        });
        if (!explicit_edge_domain) {
            for (const auto& [_, w] : s.mu) s.edge_domain.insert(w);
            for (const auto& t : s.conn) s.edge_domain.insert(t.edge);
        }
        if (!sig) return;
        s.signature = *sig;
        report(name, "structure '" + s.name + "'", validate_structure(s));
        declare(doc_.structures, context_ ? &context_->structures : nullptr, name, "structure", std::move(s));
    }

    void sentence() {
        next();
        const Token& name = expect_ident("a sentence name");
        const Signature* sig = nullptr;
        Name over;
        if (at_word("over")) {
            next();
            const Token& s = expect_ident("a signature name");
            over = s.text;
            sig = resolve_signature(s);
        }
        expect_punct("=");
        Formula f = formula();
        if (at_punct(";"))
            next();
        else if (!at_end() && !is_top_keyword(peek()))
            fail(peek(), "unexpected " + describe(peek()) + " after formula");
        if (!over.empty() && !sig) return;
        if (sig) report(name, "sentence '" + name.text + "'", validate_formula(*sig, f));
        declare(doc_.sentences, context_ ? &context_->sentences : nullptr, name, "sentence",
                Sentence{name.text, over, std::move(f)});
    }

    //--------------------------------------------------------------------------
    // Formulas
    //
    //   formula := quant | iff
    //   iff     := imp { '<=>' imp }
    //   imp     := or [ '=>' imp ]
    //   or      := and { '\/' and }
    //   and     := unary { '/\' unary }
    //   unary   := '~' unary | quant | '(' formula ')' | atomic [ '=' atomic ]

    Formula formula() { return iff_level(); }

    Formula iff_level() {
        Formula lhs = implies_level();
        while (at_punct("<=>")) {
            next();
            lhs = iff(std::move(lhs), implies_level());
        }
        return lhs;
    }

    Formula implies_level() {
        Formula lhs = or_level();
        if (at_punct("=>")) {
            next();
            return implies(std::move(lhs), implies_level());
        }
        return lhs;
    }

    Formula or_level() {
        Formula lhs = and_level();
        while (at_punct("\\/")) {
            next();
            lhs = disj(std::move(lhs), and_level());
        }
        return lhs;
    }

    Formula and_level() {
        Formula lhs = unary();
        while (at_punct("/\\")) {
            next();
            lhs = conj(std::move(lhs), unary());
        }
        return lhs;
    }

    Formula unary() {
        if (at_punct("~")) {
            next();
            return negate(unary());
        }
        if (at_word("exists") || at_word("forall")) {
            const bool is_exists = next().text == "exists";
            const Token& id = expect_ident("a variable name");
            expect_punct(":");
            const Token& sort = expect_ident("a sort");
            expect_punct(".");
            scope_.push_back(Var{id.text, sort.text});
            Formula body = formula();
            scope_.pop_back();
            return is_exists ? exists(id.text, sort.text, std::move(body)) : forall(id.text, sort.text, std::move(body));
        }
        if (at_punct("(")) {
            next();
            Formula f = formula();
            expect_punct(")");
            return f;
        }
        AtomicFormula a = atomic();
        if (at_punct("=")) {
            next();
            return eq(std::move(a), atomic());
        }
        return atom(std::move(a));
    }

    AtomicFormula atomic() {
        if (at_word("skip")) {
            next();
            return Skip{};
        }
        if (at_word("seq")) {
            next();
            expect_punct("(");
            Term c = term();
            expect_punct(",");
            const Token& e = expect_ident("an edge name");
            expect_punct(",");
            Term d = term();
            expect_punct(")");
            return Seq{std::move(c), e.text, std::move(d)};
        }
        fail(peek(), "expected a formula, found " + describe(peek()));
    }

    Term term() {
        const Token& t = expect_ident("an activity name or variable");
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (it->id == t.text) return *it;
        return Const{t.text};
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic> diags_;
    const Document* context_;
    Document doc_;
    std::vector<Var> scope_;
};

}  // namespace

ParseResult parse(std::string_view text, const Document* context) { return Parser(text, context).document(); }

FormulaParseResult parse_formula(std::string_view text) { return Parser(text, nullptr).formula_only(); }

}  // namespace adinst
