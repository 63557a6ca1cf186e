#ifndef ADINST_TOKEN_GAME_HPP
#define ADINST_TOKEN_GAME_HPP

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "adinst/core.hpp"
#include "adinst/semantics.hpp"

namespace adinst {

// Token marking on edges plus the bits of history the firing rules need.
struct Configuration {
    std::map<Name, int> marking;        // only positive counts are stored
    std::set<Name> fired_initials;
    bool reached_final = false;

    int token_count() const;
    int tokens_on(const Name& edge) const;

    friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

// Truth of every guard atom, fixed for the whole run.
using GuardAssignment = std::map<Name, bool>;

struct Firing {
    Name node;
    std::vector<TraceStep> batch;       // one step per emitted token, by edge name
    Configuration next;
};

// Every enabled firing from `c`, ordered by node name and then by the edge that
// distinguishes alternatives. Throws Error if a guard atom is unassigned.
std::vector<Firing> token_step(const Diagram& d, const GuardAssignment& g, const Configuration& c);

enum class TraceStatus {
    Complete,       // a final node consumed a token
    Leftover,       // strict mode: final reached with tokens still on edges
    Deadlock,       // nothing enabled and no final reached
    Truncated,      // step bound hit while firings were still enabled
    Cycle,          // firing would revisit a configuration on the current path
};

std::string_view to_string(TraceStatus s);

struct ExploredTrace {
    Trace steps;
    TraceStatus status = TraceStatus::Complete;
    std::map<Name, int> leftover;       // marking at the end of the run

    bool complete() const { return status == TraceStatus::Complete; }
    friend auto operator<=>(const ExploredTrace&, const ExploredTrace&) = default;
};

// Exhaustive depth-first token game over every interleaving, at most
// `max_steps` firings deep.
std::set<ExploredTrace> enumerate_traces(const Diagram& d, const GuardAssignment& g, std::size_t max_steps,
                                         bool strict = false);

// All 2^n assignments of the diagram's guard atoms, in binary counting order
// over the sorted atom names (first atom is the most significant bit).
std::vector<GuardAssignment> all_guard_assignments(const Diagram& d);

}  // namespace adinst

#endif
