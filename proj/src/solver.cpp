#include "dmmsat/solver.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dmmsat/rng.hpp"
#include "dmmsat/version.hpp"

namespace dmmsat {

namespace {

std::string shortest(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace

void SolveConfig::validate(std::uint32_t num_vars) const {
    params.validate();
    if (check_every < 1) throw std::invalid_argument("check_every must be >= 1");
    if (init == InitMode::Explicit) {
        if (explicit_init.size() != num_vars)
            throw std::invalid_argument("explicit init length must equal N");
        for (double x : explicit_init)
            if (x < -1.0 || x > 1.0)
                throw std::invalid_argument("explicit init entries must lie in [-1,1]");
    }
    if (trajectory && trajectory->stride < 1)
        throw std::invalid_argument("trajectory stride must be >= 1");
    if (trajectory)
        for (std::uint32_t var : trajectory->vars)
            if (var >= num_vars)
                throw std::invalid_argument("trajectory variable out of range");
}

DmmState init_state(const Cnf& cnf, const SolveConfig& config) {
    config.validate(cnf.num_vars());
    DmmState state;
    const std::uint32_t n = cnf.num_vars();
    state.v.resize(n);
    switch (config.init) {
    case InitMode::UniformRandom: {
        // The stream is seeded through mix64 so that a solver seed equal to a
        // generator seed does not replay the planted-assignment draws; the
        // init then consumes exactly N draws in variable order.
        SplitMix64 rng(mix64(config.seed));
        for (std::uint32_t i = 0; i < n; ++i) state.v[i] = rng.next_symmetric();
        break;
    }
    case InitMode::AllOnes:
        std::fill(state.v.begin(), state.v.end(), 1.0);
        break;
    case InitMode::Explicit:
        state.v = config.explicit_init;
        break;
    }
    state.xs.assign(cnf.num_clauses(), config.params.epsilon);
    state.xl.assign(cnf.num_clauses(), 1.0);
    return state;
}

SolveOutput solve(const Cnf& cnf, const SolveConfig& config) {
    return solve(cnf, ClauseTopology(cnf), config);
}

SolveOutput solve(const Cnf& cnf, const ClauseTopology& topo,
                  const SolveConfig& config) {
    DmmState state = init_state(cnf, config);

    std::optional<Trajectory> traj;
    std::uint32_t stride = 1;
    if (config.trajectory) {
        traj.emplace();
        stride = config.trajectory->stride;
        traj->vars = config.trajectory->vars;
        if (traj->vars.empty())
            for (std::uint32_t i = 0; i < cnf.num_vars(); ++i)
                traj->vars.push_back(i);
    }
    auto record = [&](const DmmState& s) {
        if (!traj) return;
        traj->times.push_back(s.t);
        std::vector<double> row;
        row.reserve(traj->vars.size());
        for (std::uint32_t var : traj->vars) row.push_back(s.v[var]);
        traj->v_samples.push_back(std::move(row));
    };

    record(state);
    bool solved = satisfied_by_voltages(topo, state.v);

    Derivatives scratch;
    while (!solved && state.steps < config.params.max_steps) {
        euler_step(state, topo, config.params, scratch);
        if (state.steps % stride == 0) record(state);
        if (state.steps % config.check_every == 0)
            solved = satisfied_by_voltages(topo, state.v);
    }

    SolveResult result;
    result.solved = solved;
    result.steps = state.steps;
    result.tts = static_cast<double>(state.steps) * config.params.dt;
    result.jumps = state.jumps;
    result.seed = config.seed;
    result.instance_digest = instance_digest_hex(cnf);
    if (solved) {
        Assignment a = decode_assignment(state.v);
        if (!eval_cnf(cnf, a).satisfied)
            throw std::logic_error("solver reported an unverified solution");
        result.assignment = std::move(a);
    }
    return {std::move(result), std::move(traj)};
}

std::string solve_result_json(const SolveResult& result) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["solved"] = result.solved;
    j["steps"] = result.steps;
    j["tts"] = result.tts;
    j["jumps"] = result.jumps;
    j["seed"] = result.seed;
    j["instance_digest"] = result.instance_digest;
    if (result.assignment)
        j["assignment"] = *result.assignment;
    else
        j["assignment"] = nullptr;
    return j.dump(2) + "\n";
}

std::string trajectory_csv(const Trajectory& trajectory) {
    std::ostringstream out;
    out << 't';
    for (std::uint32_t var : trajectory.vars) out << ",v" << (var + 1);
    out << '\n';
    for (std::size_t s = 0; s < trajectory.times.size(); ++s) {
        out << shortest(trajectory.times[s]);
        for (double x : trajectory.v_samples[s]) out << ',' << shortest(x);
        out << '\n';
    }
    return out.str();
}

} // namespace dmmsat
