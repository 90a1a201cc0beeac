#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dmmsat/cnf.hpp"

namespace dmmsat {

/// Dynamics constants. Defaults are the reference parameter set.
struct DmmParams {
    double alpha = 5.0;
    double beta = 20.0;
    double gamma = 0.25;
    double delta = 0.05;
    double epsilon = 0.1;
    double zeta = 0.1;
    double dt = 0.01;
    double v_thr = 0.0;
    double v_jump = 0.0; // 0 disables jumps entirely
    std::uint64_t max_steps = 5'000'000;

    void validate() const; // throws std::invalid_argument

    friend bool operator==(const DmmParams&, const DmmParams&) = default;
};

/// Clause membership as (variable, q) slots plus the transposed adjacency.
/// q is +1 for a positive literal, -1 for a negated one; a variable absent
/// from a clause contributes q = 0 and is simply not listed.
struct ClauseTopology {
    struct Slot {
        std::uint32_t var;
        double q;
    };
    struct Adjacent {
        std::uint32_t clause;
        std::uint32_t slot;
    };

    explicit ClauseTopology(const Cnf& cnf);

    std::uint32_t num_vars = 0;
    std::vector<std::array<Slot, 3>> clauses;
    std::vector<std::vector<Adjacent>> adjacency; // per variable
};

/// Full dynamical state: N voltages, M short and M long memories.
struct DmmState {
    std::vector<double> v;
    std::vector<double> xs;
    std::vector<double> xl;
    double t = 0.0;
    std::uint64_t steps = 0;
    std::uint64_t jumps = 0;
};

struct Derivatives {
    std::vector<double> dv;
    std::vector<double> dxs;
    std::vector<double> dxl;
};

/// Upper clamp for the long memory: 1e4 * M.
double xl_cap(std::size_t num_clauses);

/// C_m: half the minimal literal slack, in [0,1]. 0 when the clause is fully
/// satisfied, 1 when maximally violated.
double clause_value(const ClauseTopology& topo, std::uint32_t m,
                    const std::vector<double>& v);

/// G_{n,m} for the literal in `slot` of clause m.
double gradient_term(const ClauseTopology& topo, std::uint32_t m,
                     std::uint32_t slot, const std::vector<double>& v);

/// R_{n,m} for the literal in `slot` of clause m. Active for every literal
/// whose slack attains the clause minimum (exact comparison of identically
/// computed values; all argmin literals receive the term on ties).
double rigidity_term(const ClauseTopology& topo, std::uint32_t m,
                     std::uint32_t slot, const std::vector<double>& v);

/// Evaluates the full vector field at the given state into `out`.
void derivatives(const DmmState& state, const ClauseTopology& topo,
                 const DmmParams& params, Derivatives& out);
Derivatives derivatives(const DmmState& state, const ClauseTopology& topo,
                        const DmmParams& params);

struct JumpOutcome {
    double v;
    bool jumped;
};

/// Threshold-crossing rule for one variable, using the pre-step value as
/// "old". Downward crossing of +v_thr lands at v_thr - v_jump (floored at
/// -1); upward crossing of -v_thr lands at -v_thr + v_jump (capped at +1).
/// Crossings out of the forbidden band do not trigger. With v_jump == 0 the
/// rule reduces to clamping v_new into [-1,1].
JumpOutcome apply_jump(double v_old, double v_new, const DmmParams& params);

/// One forward-Euler step: derivatives from the frozen pre-step state,
/// simultaneous update of v/xs/xl, memory clamps, jump processing against
/// the pre-step voltages, voltage clamp, then t/step accounting.
void euler_step(DmmState& state, const ClauseTopology& topo,
                const DmmParams& params, Derivatives& scratch);

/// Identical integration path with the jump handling absent from the
/// compiled code entirely. Used to validate that v_jump == 0 reproduces the
/// unmodified dynamics bit-for-bit.
void euler_step_without_jumps(DmmState& state, const ClauseTopology& topo,
                              const DmmParams& params, Derivatives& scratch);

/// Boolean readout: variable n is true iff v_n >= 0.
Assignment decode_assignment(const std::vector<double>& v);

/// Early-exit satisfiability check of the decoded assignment, equivalent to
/// eval_cnf(cnf, decode_assignment(v)).satisfied.
bool satisfied_by_voltages(const ClauseTopology& topo,
                           const std::vector<double>& v);

} // namespace dmmsat
