#include "dmmsat/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmmsat {

void DmmParams::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (v_thr < 0.0 || v_thr >= 1.0)
        throw std::invalid_argument("v_thr must lie in [0,1)");
    if (v_jump < 0.0) throw std::invalid_argument("v_jump must be >= 0");
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw std::invalid_argument("epsilon must lie in (0, 1/2)");
    if (max_steps == 0) throw std::invalid_argument("max_steps must be >= 1");
}

ClauseTopology::ClauseTopology(const Cnf& cnf) : num_vars(cnf.num_vars()) {
    clauses.reserve(cnf.num_clauses());
    adjacency.resize(num_vars);
    for (std::uint32_t m = 0; m < cnf.num_clauses(); ++m) {
        const Clause& cl = cnf.clauses()[m];
        std::array<Slot, 3> slots;
        for (std::uint32_t i = 0; i < 3; ++i) {
            const Literal& lit = cl[i];
            slots[i] = Slot{lit.var, lit.negated ? -1.0 : 1.0};
            adjacency[lit.var].push_back({m, i});
        }
        clauses.push_back(slots);
    }
}

double xl_cap(std::size_t num_clauses) {
    return 1.0e4 * static_cast<double>(num_clauses);
}

double clause_value(const ClauseTopology& topo, std::uint32_t m,
                    const std::vector<double>& v) {
    const auto& cl = topo.clauses[m];
    const double s0 = 1.0 - cl[0].q * v[cl[0].var];
    const double s1 = 1.0 - cl[1].q * v[cl[1].var];
    const double s2 = 1.0 - cl[2].q * v[cl[2].var];
    return 0.5 * std::min(std::min(s0, s1), s2);
}

double gradient_term(const ClauseTopology& topo, std::uint32_t m,
                     std::uint32_t slot, const std::vector<double>& v) {
    const auto& cl = topo.clauses[m];
    const auto& self = cl[slot];
    const auto& j = cl[(slot + 1) % 3];
    const auto& k = cl[(slot + 2) % 3];
    const double sj = 1.0 - j.q * v[j.var];
    const double sk = 1.0 - k.q * v[k.var];
    return 0.5 * self.q * std::min(sj, sk);
}

double rigidity_term(const ClauseTopology& topo, std::uint32_t m,
                     std::uint32_t slot, const std::vector<double>& v) {
    const auto& cl = topo.clauses[m];
    const double s0 = 1.0 - cl[0].q * v[cl[0].var];
    const double s1 = 1.0 - cl[1].q * v[cl[1].var];
    const double s2 = 1.0 - cl[2].q * v[cl[2].var];
    const double mn = std::min(std::min(s0, s1), s2);
    const double self = slot == 0 ? s0 : slot == 1 ? s1 : s2;
    if (self != mn) return 0.0;
    return 0.5 * (cl[slot].q - v[cl[slot].var]);
}

void derivatives(const DmmState& state, const ClauseTopology& topo,
                 const DmmParams& params, Derivatives& out) {
    const std::size_t n = state.v.size();
    const std::size_t m = topo.clauses.size();
    out.dv.assign(n, 0.0);
    out.dxs.resize(m);
    out.dxl.resize(m);

    const double* v = state.v.data();
    double* dv = out.dv.data();
    for (std::size_t c = 0; c < m; ++c) {
        const auto& cl = topo.clauses[c];
        const std::uint32_t n0 = cl[0].var, n1 = cl[1].var, n2 = cl[2].var;
        const double q0 = cl[0].q, q1 = cl[1].q, q2 = cl[2].q;
        const double v0 = v[n0], v1 = v[n1], v2 = v[n2];
        const double s0 = 1.0 - q0 * v0;
        const double s1 = 1.0 - q1 * v1;
        const double s2 = 1.0 - q2 * v2;
        const double mn = std::min(std::min(s0, s1), s2);
        const double cm = 0.5 * mn;

        const double xs = state.xs[c];
        const double xl = state.xl[c];
        const double gw = xl * xs;
        const double rw = (1.0 + params.zeta * xl) * (1.0 - xs);

        const double g0 = 0.5 * q0 * std::min(s1, s2);
        const double g1 = 0.5 * q1 * std::min(s0, s2);
        const double g2 = 0.5 * q2 * std::min(s0, s1);
        const double r0 = s0 == mn ? 0.5 * (q0 - v0) : 0.0;
        const double r1 = s1 == mn ? 0.5 * (q1 - v1) : 0.0;
        const double r2 = s2 == mn ? 0.5 * (q2 - v2) : 0.0;

        dv[n0] += gw * g0 + rw * r0;
        dv[n1] += gw * g1 + rw * r1;
        dv[n2] += gw * g2 + rw * r2;
        out.dxs[c] = params.beta * (xs + params.epsilon) * (cm - params.gamma);
        out.dxl[c] = params.alpha * (cm - params.delta);
    }
}

Derivatives derivatives(const DmmState& state, const ClauseTopology& topo,
                        const DmmParams& params) {
    Derivatives out;
    derivatives(state, topo, params, out);
    return out;
}

JumpOutcome apply_jump(double v_old, double v_new, const DmmParams& params) {
    const double clamped = std::min(std::max(v_new, -1.0), 1.0);
    if (params.v_jump <= 0.0) return {clamped, false};
    const double thr = params.v_thr;
    if (v_old >= thr && v_new < thr) // downward through +v_thr
        return {std::max(thr - params.v_jump, -1.0), true};
    if (v_old <= -thr && v_new > -thr) // upward through -v_thr
        return {std::min(-thr + params.v_jump, 1.0), true};
    return {clamped, false};
}

namespace {

template <bool kJumpLogic>
void step_impl(DmmState& state, const ClauseTopology& topo,
               const DmmParams& params, Derivatives& d) {
    derivatives(state, topo, params, d);

    const double dt = params.dt;
    const std::size_t m = topo.clauses.size();
    const double cap = xl_cap(m);
    const double xs_lo = params.epsilon, xs_hi = 1.0 - params.epsilon;
    double* xs = state.xs.data();
    double* xl = state.xl.data();
    for (std::size_t c = 0; c < m; ++c) {
        xs[c] = std::min(std::max(xs[c] + dt * d.dxs[c], xs_lo), xs_hi);
        xl[c] = std::min(std::max(xl[c] + dt * d.dxl[c], 1.0), cap);
    }

    const std::size_t n = state.v.size();
    double* v = state.v.data();
    for (std::size_t i = 0; i < n; ++i) {
        const double v_old = v[i];
        const double v_new = v_old + dt * d.dv[i];
        if constexpr (kJumpLogic) {
            const JumpOutcome jo = apply_jump(v_old, v_new, params);
            v[i] = jo.v;
            state.jumps += jo.jumped ? 1 : 0;
        } else {
            v[i] = std::min(std::max(v_new, -1.0), 1.0);
        }
    }

    ++state.steps;
    state.t = static_cast<double>(state.steps) * dt;
}

} // namespace

void euler_step(DmmState& state, const ClauseTopology& topo,
                const DmmParams& params, Derivatives& scratch) {
    step_impl<true>(state, topo, params, scratch);
}

void euler_step_without_jumps(DmmState& state, const ClauseTopology& topo,
                              const DmmParams& params, Derivatives& scratch) {
    step_impl<false>(state, topo, params, scratch);
}

Assignment decode_assignment(const std::vector<double>& v) {
    Assignment a(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) a[i] = v[i] >= 0.0;
    return a;
}

bool satisfied_by_voltages(const ClauseTopology& topo,
                           const std::vector<double>& v) {
    for (const auto& cl : topo.clauses) {
        bool ok = false;
        for (const auto& slot : cl) {
            if ((v[slot.var] >= 0.0) == (slot.q > 0.0)) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

} // namespace dmmsat
