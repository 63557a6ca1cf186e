#include "adinst/token_game.hpp"

#include <numeric>

namespace adinst {

int Configuration::token_count() const {
    return std::accumulate(marking.begin(), marking.end(), 0, [](int acc, const auto& kv) { return acc + kv.second; });
}

int Configuration::tokens_on(const Name& edge) const {
    auto it = marking.find(edge);
    return it == marking.end() ? 0 : it->second;
}

std::string_view to_string(TraceStatus s) {
    switch (s) {
    case TraceStatus::Complete: return "complete";
    case TraceStatus::Leftover: return "leftover";
    case TraceStatus::Deadlock: return "deadlock";
    case TraceStatus::Truncated: return "truncated";
    case TraceStatus::Cycle: return "cycle";
    }
    return "?";
}

namespace {

void take(Configuration& c, const Name& e) {
    auto it = c.marking.find(e);
    if (--it->second == 0) c.marking.erase(it);
}

class Stepper {
public:
    Stepper(const Diagram& d, const GuardAssignment& g, const Configuration& c) : d_(d), g_(g), c_(c) {}

    std::vector<Firing> run() {
        for (const auto& [node, kind] : d_.signature.hierarchy.kind_of) fire(node, kind);
        return std::move(out_);
    }

private:
    bool guard(const Name& e) const {
        auto atom = d_.guards.find(e);
        if (atom == d_.guards.end()) return true;
        auto value = g_.find(atom->second);
        if (value == g_.end()) throw Error("guard atom '" + atom->second + "' has no truth value");
        return value->second;
    }

    bool marked(const Name& e) const { return c_.tokens_on(e) > 0; }

    void emit(const Name& node, const std::vector<Name>& consume, const std::vector<Name>& produce, bool final = false) {
        Firing f{node, {}, c_};
        for (const auto& e : consume) take(f.next, e);
        for (const auto& e : produce) {
            ++f.next.marking[e];
            const auto& ends = d_.topology.at(e);
            f.batch.push_back({ends.source, e, ends.target});
        }
        if (final) f.next.reached_final = true;
        out_.push_back(std::move(f));
    }

    void fire(const Name& node, NodeKind kind) {
        const auto in = d_.incoming(node);
        const auto out = d_.outgoing(node);
        auto all_marked = [&] {
            for (const auto& e : in)
                if (!marked(e)) return false;
            return !in.empty();
        };

        switch (kind) {
        case NodeKind::Initial:
            if (!c_.fired_initials.count(node)) {
                emit(node, {}, out);
                out_.back().next.fired_initials.insert(node);
            }
            break;
        case NodeKind::Executable:
        case NodeKind::Object:
        case NodeKind::Fork:
        case NodeKind::Join:
            if (all_marked()) emit(node, in, out);
            break;
        case NodeKind::Decision:
            if (all_marked())
                for (const auto& e : out)
                    if (guard(e)) emit(node, in, {e});
            break;
        case NodeKind::Merge:
            for (const auto& e : in)
                if (marked(e) && guard(e)) emit(node, {e}, out);
            break;
        case NodeKind::Final:
            for (const auto& e : in)
                if (marked(e)) emit(node, {e}, {}, true);
            break;
        }
    }

    const Diagram& d_;
    const GuardAssignment& g_;
    const Configuration& c_;
    std::vector<Firing> out_;
};

class Explorer {
public:
    Explorer(const Diagram& d, const GuardAssignment& g, std::size_t max_steps, bool strict)
        : d_(d), g_(g), max_steps_(max_steps), strict_(strict) {}

    std::set<ExploredTrace> run() {
        Configuration start;
        on_path_.insert(start);
        walk(start, 0);
        return std::move(found_);
    }

private:
    void record(const Configuration& c, TraceStatus status) { found_.insert({trace_, status, c.marking}); }

    void walk(const Configuration& c, std::size_t fired) {
        if (c.reached_final) {
            record(c, strict_ && !c.marking.empty() ? TraceStatus::Leftover : TraceStatus::Complete);
            return;
        }
        auto firings = token_step(d_, g_, c);
        if (firings.empty()) {
            record(c, TraceStatus::Deadlock);
            return;
        }
        if (fired == max_steps_) {
            record(c, TraceStatus::Truncated);
            return;
        }
        for (auto& f : firings) {
            const auto mark = trace_.size();
            trace_.insert(trace_.end(), f.batch.begin(), f.batch.end());
            if (on_path_.count(f.next)) {
                record(f.next, TraceStatus::Cycle);
            } else {
                on_path_.insert(f.next);
                walk(f.next, fired + 1);
                on_path_.erase(f.next);
            }
            trace_.resize(mark);
        }
    }

    const Diagram& d_;
    const GuardAssignment& g_;
    std::size_t max_steps_;
    bool strict_;
    Trace trace_;
    std::set<Configuration> on_path_;
    std::set<ExploredTrace> found_;
};

}  // namespace

std::vector<Firing> token_step(const Diagram& d, const GuardAssignment& g, const Configuration& c) {
    return Stepper(d, g, c).run();
}

std::set<ExploredTrace> enumerate_traces(const Diagram& d, const GuardAssignment& g, std::size_t max_steps, bool strict) {
    return Explorer(d, g, max_steps, strict).run();
}

std::vector<GuardAssignment> all_guard_assignments(const Diagram& d) {
    const auto atoms = d.guard_atoms();
    const std::vector<Name> ordered(atoms.begin(), atoms.end());
    const std::size_t n = ordered.size();
    std::vector<GuardAssignment> out;
    for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
        GuardAssignment g;
        for (std::size_t i = 0; i < n; ++i) g.emplace(ordered[i], (bits >> (n - 1 - i)) & 1U);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace adinst
