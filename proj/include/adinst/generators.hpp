#ifndef ADINST_GENERATORS_HPP
#define ADINST_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <string>

#include "adinst/core.hpp"
#include "adinst/logic.hpp"
#include "adinst/semantics.hpp"

namespace adinst {

// Per-case seed derived from a base seed; splitmix64 finaliser.
std::uint64_t case_seed(std::uint64_t base, std::uint64_t index);

struct GeneratorLimits {
    int max_nodes = 4;
    int max_edges = 4;
    int max_domain = 3;
    int max_depth = 4;
};

// Random valid instances for the randomized law suites and round-trip tests.
// Everything it returns passes the matching validator.
class InstanceGenerator {
public:
    explicit InstanceGenerator(std::uint64_t seed, GeneratorLimits limits = {});

    // Nodes are named <prefix>0.., edges <prefix>e0..
    Signature signature(const Name& name, const std::string& prefix);

    // A valid morphism from a fresh signature into `target`.
    SignatureMorphism morphism_into(const Signature& target, const Name& source_name, const std::string& prefix,
                                    const Name& morphism_name);

    Structure structure(const Signature& sig, const Name& name);

    // Closed formula of depth <= max_depth. Bound identifiers are x0, x1, ...
    Formula sentence_formula(const Signature& sig);
    Formula sentence_formula(const Signature& sig, int max_depth);

    // Atomic formula whose terms are constants or variables v0, v1 of random sort.
    AtomicFormula atomic(const Signature& sig);

    // Sort-correct values for every variable in `vars`.
    Valuation valuation(const Structure& s, const std::set<Var>& vars);

    // Valid Basic-Activities diagram built from nested sequence, fork/join and
    // decision/merge blocks between one initial and one final node.
    Diagram diagram(const Name& name, const Name& signature_name);
    Diagram diagram(const Name& name, const Name& signature_name, int max_depth);

    std::mt19937_64& engine() { return rng_; }

private:
    int uniform(int lo, int hi);
    bool chance(double p);
    template <typename C>
    const typename C::value_type& pick(const C& c);

    Formula formula(const Signature& sig, int depth, std::vector<Var>& scope, int& fresh);
    AtomicFormula leaf(const Signature& sig, const std::vector<Var>& scope);

    std::mt19937_64 rng_;
    GeneratorLimits limits_;
};

}  // namespace adinst

#endif
