#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmmsat/cnf.hpp"
#include "dmmsat/dynamics.hpp"

namespace dmmsat {

enum class InitMode { UniformRandom, AllOnes, Explicit };

struct TrajectorySpec {
    std::uint32_t stride = 1;
    std::vector<std::uint32_t> vars; // 0-based; empty records all variables
};

struct SolveConfig {
    DmmParams params;
    std::uint64_t seed = 0;
    InitMode init = InitMode::UniformRandom;
    std::vector<double> explicit_init;
    std::uint32_t check_every = 1;
    std::optional<TrajectorySpec> trajectory;

    void validate(std::uint32_t num_vars) const;
};

struct SolveResult {
    bool solved = false;
    std::uint64_t steps = 0;
    double tts = 0.0; // steps * dt
    std::uint64_t jumps = 0;
    std::optional<Assignment> assignment;
    std::uint64_t seed = 0;
    std::string instance_digest;
};

struct Trajectory {
    std::vector<std::uint32_t> vars; // recorded variables, 0-based
    std::vector<double> times;
    std::vector<std::vector<double>> v_samples; // one row per sample
};

struct SolveOutput {
    SolveResult result;
    std::optional<Trajectory> trajectory;
};

/// Voltages per the init mode (uniform init consumes exactly N draws in
/// variable order), xs = epsilon, xl = 1, counters zeroed.
DmmState init_state(const Cnf& cnf, const SolveConfig& config);

/// Integrates until the decoded assignment satisfies the formula (checked
/// every `check_every` steps, including at step 0) or until max_steps.
/// Timeout is a normal result with solved = false. A solved result carries
/// the assignment, re-verified through eval_cnf.
SolveOutput solve(const Cnf& cnf, const SolveConfig& config);
SolveOutput solve(const Cnf& cnf, const ClauseTopology& topo,
                  const SolveConfig& config);

std::string solve_result_json(const SolveResult& result);

/// CSV export: header `t,v<i>,...` with 1-based variable names, one row per
/// sample.
std::string trajectory_csv(const Trajectory& trajectory);

} // namespace dmmsat
