// protocols.hpp
// Executable drivers for the five preparation protocols. Exact mode evolves
// full state vectors through every measurement branch; Monte Carlo mode
// samples branches with a seeded generator.

#pragma once

#include <optional>
#include <vector>

#include "qcore.hpp"
#include "resources.hpp"
#include "schedule.hpp"

namespace rsp {

enum class ProtocolId {
    explicit_scheme,
    improved1,
    appendix_b,
    improved2,
    ghz,
};

struct BranchRecord {
    std::vector<int> cbits;  // classical bits sent (1 entry, 2 for GHZ)
    double probability;
    bool failed;                              // POVM failure branch
    std::optional<double> fidelity;           // absent on failure
    std::optional<DensityMatrix> bob_state;   // Bob's final state (absent on failure)
};

struct FidelityReport {
    // worst case over non-failed branches (the paper's "minimum fidelity")
    double simulated_fidelity;
    std::optional<double> analytic_fidelity;
    std::optional<double> chi;
    FidelityConvention convention;
    // probability-weighted over non-failed branches
    double average_fidelity;
    std::vector<BranchRecord> branches;
};

struct ProtocolOutcome {
    FidelityReport report;
    std::optional<DensityMatrix> rho_b;          // Bob's averaged state, when mixed
    std::optional<double> success_probability;   // probabilistic-exact protocols only
};

// Section II: region channel, Alice's phase-bearing Hadamard, 1 cbit, Bob's
// conditional sigma_z then CNOT with the ancilla |0> + y|1>; simulated
// fidelity <phi|rho_B|phi> matches 1/(1 + chi) and lies in [q, 1].
ProtocolOutcome run_explicit(const TargetQubit& target, double q, int depth);

// Section III improved protocol I over the central region with one maximally
// entangled channel: branch 0 yields |phi> exactly, branch 1 the approximate
// substitute with overlap sin(2 theta); branches are exactly 50/50.
ProtocolOutcome run_improved1_central(const TargetQubit& target, double q, int depth);

// Appendix B: improved-I front end, then Bob's POVM on the substitute branch;
// every success branch ends in |phi> exactly, with overall success
// probability (1 + tan^2 theta)/2 below pi/4 and its cotangent mirror above.
ProtocolOutcome run_appendix_b_central(const TargetQubit& target, double q, int depth);

// Section III improved protocol II: maps theta to its plan section, converts
// the section head channel by the local POVM (probability P), then runs the
// explicit steps; the POVM failure branch is reported as protocol failure.
ProtocolOutcome run_improved2(const TargetQubit& target, const CompressionPlan& plan);

// Section IV: GHZ channel, two measurement rounds and 2 cbits; all four
// branches deliver |phi> exactly.
ProtocolOutcome run_ghz(const TargetQubit& target);

struct McBranch {
    std::vector<int> cbits;
    long long count;
    double frequency;
    bool failed;
    std::optional<double> fidelity;
};

struct McReport {
    long long trials;
    unsigned long long seed;
    std::vector<McBranch> branches;
    double mean_fidelity;  // over non-failed trials
    double success_rate;
};

// Samples the exact branch decomposition with a seeded generator; identical
// seeds give identical reports. depth is the plan size N for improved2 (with
// povm_success = P) and is ignored by ghz.
McReport run_monte_carlo(ProtocolId protocol, const TargetQubit& target, double q,
                         int depth, double povm_success, long long trials,
                         unsigned long long seed);

}  // namespace rsp
