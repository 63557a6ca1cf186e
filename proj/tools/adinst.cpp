// adinst: batch front end for the activity-diagram institution library.
//
// Exit status: 0 success or "true", 1 invalid input or "false", 2 usage, I/O
// or signature mismatch.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "adinst/dsl.hpp"
#include "adinst/institution.hpp"
#include "adinst/json_export.hpp"
#include "adinst/token_game.hpp"

using namespace adinst;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// Thrown to leave a command early with a given exit status.
struct Exit {
    int code;
};

[[noreturn]] void die(int code, const std::string& message) {
    std::cerr << "adinst: " << message << '\n';
    throw Exit{code};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) die(kUsage, "cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Loaded {
    Document doc;
    std::vector<Diagnostic> diagnostics;
};

Loaded load_one(const std::string& path, const Document& context) {
    auto r = parse(slurp(path), &context);
    for (const auto& d : r.diagnostics) std::cerr << d.to_string(path) << '\n';
    return {std::move(r.document), std::move(r.diagnostics)};
}

// Parses `path` against `context`; any diagnostic ends the command with status 1.
Document load(const std::string& path, const Document& context) {
    auto l = load_one(path, context);
    if (!l.diagnostics.empty()) throw Exit{kFail};
    return std::move(l.doc);
}

Document load_includes(const std::vector<std::string>& includes) {
    Document ctx;
    for (const auto& path : includes) ctx.merge(load(path, ctx));
    return ctx;
}

Document with(const Document& a, const Document& b) {
    Document out = a;
    out.merge(b);
    return out;
}

template <typename T>
const T& pick_one(const std::map<Name, T>& items, const std::string& wanted, const std::string& what,
                  const std::string& path) {
    if (!wanted.empty()) {
        auto it = items.find(wanted);
        if (it == items.end()) die(kUsage, "no " + what + " '" + wanted + "' in '" + path + "'");
        return it->second;
    }
    if (items.empty()) die(kUsage, "'" + path + "' declares no " + what);
    if (items.size() > 1) die(kUsage, "'" + path + "' declares several " + what + "s; choose one by name");
    return items.begin()->second;
}

// A structure, or the structure induced by a diagram.
Structure model_from(const Document& doc, const std::string& wanted, const std::string& path) {
    if (!wanted.empty()) {
        if (auto it = doc.structures.find(wanted); it != doc.structures.end()) return it->second;
        if (auto it = doc.diagrams.find(wanted); it != doc.diagrams.end()) return induced_structure(it->second);
        die(kUsage, "no structure or diagram '" + wanted + "' in '" + path + "'");
    }
    if (doc.structures.size() == 1 && doc.diagrams.empty()) return doc.structures.begin()->second;
    if (doc.diagrams.size() == 1 && doc.structures.empty()) return induced_structure(doc.diagrams.begin()->second);
    if (doc.structures.empty() && doc.diagrams.empty()) die(kUsage, "'" + path + "' declares no structure or diagram");
    die(kUsage, "'" + path + "' declares several models; choose one with --model");
}

std::vector<Sentence> sentences_from(const Document& doc, const std::string& wanted, const std::string& path) {
    if (!wanted.empty()) return {pick_one(doc.sentences, wanted, "sentence", path)};
    if (doc.sentences.empty()) die(kUsage, "'" + path + "' declares no sentence");
    std::vector<Sentence> out;
    for (const auto& [_, s] : doc.sentences) out.push_back(s);
    return out;
}

// The sentence must be over a signature equal to `sig`, and only use its symbols.
void require_over(const Sentence& s, const Signature& sig, const Document& known) {
    if (!s.over.empty()) {
        auto it = known.signatures.find(s.over);
        if (it != known.signatures.end() && !structurally_equal(it->second, sig))
            die(kUsage, "sentence '" + s.name + "' is over '" + s.over + "', not '" + sig.name + "'");
    }
    const auto report = validate_formula(sig, s.formula);
    if (!report.empty()) die(kUsage, "sentence '" + s.name + "' does not fit '" + sig.name + "': " + report.front().message);
}

//------------------------------------------------------------------------------

struct Common {
    std::vector<std::string> includes;
    bool json = false;
};

int cmd_validate(const Common& c, const std::vector<std::string>& files) {
    Document ctx = load_includes(c.includes);
    bool all_ok = true;
    json report = json::array();
    for (const auto& path : files) {
        auto l = load_one(path, ctx);
        const bool ok = l.diagnostics.empty();
        all_ok = all_ok && ok;
        if (c.json) {
            json diags = json::array();
            for (const auto& d : l.diagnostics) diags.push_back({{"line", d.line}, {"column", d.column}, {"message", d.message}});
            report.push_back({{"file", path}, {"ok", ok}, {"diagnostics", diags}, {"document", to_json(l.doc)}});
        } else if (ok) {
            std::cout << path << ": ok\n";
        }
        ctx.merge(l.doc);
    }
    if (c.json) std::cout << report.dump(2) << '\n';
    return all_ok ? kOk : kFail;
}

GuardAssignment parse_guards(const std::string& text, const Diagram& d) {
    GuardAssignment g;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) die(kUsage, "guard '" + item + "' is not of the form atom=true|false");
        const auto atom = item.substr(0, eq), value = item.substr(eq + 1);
        if (value == "true" || value == "1")
            g[atom] = true;
        else if (value == "false" || value == "0")
            g[atom] = false;
        else
            die(kUsage, "guard '" + atom + "' needs true or false, got '" + value + "'");
    }
    for (const auto& atom : d.guard_atoms())
        if (!g.count(atom)) die(kUsage, "no value for guard atom '" + atom + "'");
    for (const auto& [atom, _] : g)
        if (!d.guard_atoms().count(atom)) die(kUsage, "'" + atom + "' is not a guard atom of '" + d.name + "'");
    return g;
}

std::string assignment_text(const GuardAssignment& g) {
    std::string out;
    for (const auto& [atom, value] : g) out += (out.empty() ? "" : ",") + atom + "=" + (value ? "true" : "false");
    return out.empty() ? "(no guards)" : out;
}

void list_traces(const std::set<ExploredTrace>& traces, std::ostream& os) {
    std::vector<std::string> lines;
    bool any_complete = false;
    for (const auto& t : traces) {
        any_complete = any_complete || t.complete();
        std::string line = print(t.steps);
        if (!t.complete()) line += "  [" + std::string(to_string(t.status)) + "]";
        lines.push_back(std::move(line));
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) os << l << '\n';
    if (!any_complete) os << "# no complete traces\n";
}

int cmd_traces(const Common& c, const std::string& path, const std::string& diagram, const std::string& guards,
               bool all_guards, std::size_t max_steps, bool strict) {
    const Document ctx = load_includes(c.includes);
    const Document doc = load(path, ctx);
    const Diagram& d = pick_one(doc.diagrams, diagram, "diagram", path);

    std::vector<GuardAssignment> runs;
    if (all_guards)
        runs = all_guard_assignments(d);
    else
        runs.push_back(parse_guards(guards, d));

    json out = json::array();
    for (const auto& g : runs) {
        const auto traces = enumerate_traces(d, g, max_steps, strict);
        if (c.json) {
            json ts = json::array();
            for (const auto& t : traces) ts.push_back(to_json(t));
            out.push_back({{"guards", g}, {"traces", ts}});
            continue;
        }
        if (all_guards) std::cout << "# " << assignment_text(g) << '\n';
        list_traces(traces, std::cout);
    }
    if (c.json) std::cout << (all_guards ? out : out.front()).dump(2) << '\n';
    return kOk;
}

int cmd_check(const Common& c, const std::string& model_path, const std::string& sentence_path,
              const std::string& model_name, const std::string& sentence_name) {
    const Document ctx = load_includes(c.includes);
    const Document models = load(model_path, ctx);
    const Document known = with(ctx, models);
    const Document sentences = load(sentence_path, known);
    const Structure s = model_from(models, model_name, model_path);
    const auto todo = sentences_from(sentences, sentence_name, sentence_path);
    const Document all = with(known, sentences);

    bool all_true = true;
    json out = json::array();
    for (const auto& sentence : todo) {
        require_over(sentence, s.signature, all);
        const bool v = satisfies(s, sentence);
        all_true = all_true && v;
        if (c.json)
            out.push_back({{"sentence", sentence.name}, {"model", s.name}, {"holds", v}});
        else if (todo.size() == 1)
            std::cout << (v ? "true" : "false") << '\n';
        else
            std::cout << sentence.name << ": " << (v ? "true" : "false") << '\n';
    }
    if (c.json) std::cout << out.dump(2) << '\n';
    return all_true ? kOk : kFail;
}

int cmd_translate(const Common& c, const std::string& morphism_path, const std::string& sentence_path,
                  const std::string& morphism_name, const std::string& sentence_name) {
    const Document ctx = load_includes(c.includes);
    const Document morphisms = load(morphism_path, ctx);
    const Document known = with(ctx, morphisms);
    const Document sentences = load(sentence_path, known);
    const auto& m = pick_one(morphisms.morphisms, morphism_name, "morphism", morphism_path);
    const Document all = with(known, sentences);

    Document out;
    for (const auto& s : sentences_from(sentences, sentence_name, sentence_path)) {
        require_over(s, m.source, all);
        const auto t = translate_sentence(m, s);
        out.sentences.emplace(t.name, t);
    }
    std::cout << (c.json ? to_json(out).dump(2) + "\n" : print(out));
    return kOk;
}

int cmd_reduct(const Common& c, const std::string& morphism_path, const std::string& model_path,
               const std::string& morphism_name, const std::string& model_name) {
    const Document ctx = load_includes(c.includes);
    const Document morphisms = load(morphism_path, ctx);
    const Document models = load(model_path, with(ctx, morphisms));
    const auto& m = pick_one(morphisms.morphisms, morphism_name, "morphism", morphism_path);
    const Structure s2 = model_from(models, model_name, model_path);
    if (!structurally_equal(m.target, s2.signature))
        die(kUsage, "structure '" + s2.name + "' is over '" + s2.signature.name + "', morphism '" + m.name +
                        "' targets '" + m.target.name + "'");
    const Structure s1 = reduct(m, s2);
    Document out;
    out.structures.emplace(s1.name, s1);
    std::cout << (c.json ? to_json(out).dump(2) + "\n" : print(out));
    return kOk;
}

// Replaces every seq atom by skip after translating; the suite must notice.
Formula faulty_translate(const SignatureMorphism& m, const Formula& f) {
    Formula g = translate_formula(m, f);
    std::function<void(Formula&)> walk = [&](Formula& h) {
        if (h.op == Connective::Atom && std::holds_alternative<Seq>(h.lhs)) h.lhs = Skip{};
        for (auto& a : h.args) walk(a);
    };
    walk(g);
    return g;
}

int cmd_laws(const Common& c, std::uint64_t seed, std::size_t cases, bool inject_fault) {
    if (const char* env = std::getenv("ADINST_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            seed = std::stoull(env, &used);
            if (env[used] != '\0') throw std::invalid_argument(env);
        } catch (const std::exception&) {
            die(kUsage, std::string("ADINST_SEED must be an unsigned integer, got '") + env + "'");
        }
    }
    LawSuiteOptions options{seed, cases, translate_formula};
    if (inject_fault) options.translate = faulty_translate;
    const auto report = run_law_suite(options);
    std::cout << (c.json ? to_json(report).dump(2) + "\n" : report.to_text());
    return report.all_passed() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Activity diagrams as an institution: validate, execute, check and translate."};
    app.require_subcommand(1);
    Common common;
    app.add_option("-I,--include", common.includes, "Context file with declarations other files refer to")
        ->allow_extra_args(false)
        ->check(CLI::ExistingFile);
    app.add_flag("--json", common.json, "Emit JSON instead of text");

    auto* validate = app.add_subcommand("validate", "Parse and validate .adi files");
    std::vector<std::string> files;
    validate->add_option("files", files)->required();

    auto* traces = app.add_subcommand("traces", "Enumerate token-game traces of a diagram");
    std::string trace_file, diagram_name, guards;
    bool all_guards = false, strict = false;
    std::size_t max_steps = 30;
    traces->add_option("file", trace_file)->required();
    traces->add_option("--diagram", diagram_name, "Diagram to run when the file has several");
    auto* guards_opt = traces->add_option("--guards", guards, "Guard values, e.g. g1=true,g2=false");
    traces->add_flag("--all-guards", all_guards, "Run every guard assignment")->excludes(guards_opt);
    traces->add_option("--max-steps", max_steps, "Firing bound")->capture_default_str();
    traces->add_flag("--strict", strict, "Tokens left on edges make a run incomplete");

    auto* check = app.add_subcommand("check", "Evaluate sentences in a structure or a diagram");
    std::string model_file, sentence_file, model_name, sentence_name;
    check->add_option("model-file", model_file)->required();
    check->add_option("sentence-file", sentence_file)->required();
    check->add_option("--model", model_name);
    check->add_option("--sentence", sentence_name);

    auto* translate = app.add_subcommand("translate", "Translate sentences along a signature morphism");
    std::string morphism_file, morphism_name;
    translate->add_option("morphism-file", morphism_file)->required();
    translate->add_option("sentence-file", sentence_file)->required();
    translate->add_option("--morphism", morphism_name);
    translate->add_option("--sentence", sentence_name);

    auto* reduct_cmd = app.add_subcommand("reduct", "Reduce a structure along a signature morphism");
    reduct_cmd->add_option("morphism-file", morphism_file)->required();
    reduct_cmd->add_option("model-file", model_file)->required();
    reduct_cmd->add_option("--morphism", morphism_name);
    reduct_cmd->add_option("--model", model_name);

    auto* laws = app.add_subcommand("laws", "Run the randomized institution law suite");
    std::uint64_t seed = 42;
    std::size_t cases = 1000;
    bool inject_fault = false;
    laws->add_option("--seed", seed)->capture_default_str();
    laws->add_option("--cases", cases)->capture_default_str();
    laws->add_flag("--inject-fault", inject_fault)->group("");

    for (auto* sub : {validate, traces, check, translate, reduct_cmd, laws}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*validate) return cmd_validate(common, files);
        if (*traces) return cmd_traces(common, trace_file, diagram_name, guards, all_guards, max_steps, strict);
        if (*check) return cmd_check(common, model_file, sentence_file, model_name, sentence_name);
        if (*translate) return cmd_translate(common, morphism_file, sentence_file, morphism_name, sentence_name);
        if (*reduct_cmd) return cmd_reduct(common, morphism_file, model_file, morphism_name, model_name);
        if (*laws) return cmd_laws(common, seed, cases, inject_fault);
    } catch (const Exit& e) {
        return e.code;
    } catch (const adinst::Error& e) {
        std::cerr << "adinst: " << e.what() << '\n';
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "adinst: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
