// Acceptance suite: runs the toolkit's acceptance criteria end to end and
// prints one [PASS]/[FAIL] line per criterion. Exit code is the number of
// failed criteria. Criterion numbers may be passed as arguments to run a
// subset, e.g. `acceptance_test 1 4 12`.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dmmsat/analysis.hpp"
#include "dmmsat/bench.hpp"
#include "dmmsat/dimacs.hpp"
#include "dmmsat/dynamics.hpp"
#include "dmmsat/generators.hpp"
#include "dmmsat/rng.hpp"
#include "dmmsat/solver.hpp"

using namespace dmmsat;

namespace {

unsigned workers() {
    return std::max(1u, std::thread::hardware_concurrency());
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

// ---------------------------------------------------------------- criterion 1
Outcome xor_encoding_correctness() {
    SplitMix64 rng(1001);
    const std::uint32_t n = 30;
    for (int round = 0; round < 1000; ++round) {
        std::array<std::uint32_t, 3> vars;
        vars[0] = static_cast<std::uint32_t>(rng.next_below(n));
        do vars[1] = static_cast<std::uint32_t>(rng.next_below(n));
        while (vars[1] == vars[0]);
        do vars[2] = static_cast<std::uint32_t>(rng.next_below(n));
        while (vars[2] == vars[0] || vars[2] == vars[1]);
        std::sort(vars.begin(), vars.end());
        const bool parity = rng.next_bool();
        const auto clauses = xor_to_cnf({vars, parity});
        for (int bits = 0; bits < 8; ++bits) {
            Assignment a(n, false);
            a[vars[0]] = (bits & 4) != 0;
            a[vars[1]] = (bits & 2) != 0;
            a[vars[2]] = (bits & 1) != 0;
            bool all = true;
            for (const Clause& cl : clauses) all = all && eval_clause(cl, a);
            const bool want = (a[vars[0]] ^ a[vars[1]] ^ a[vars[2]]) == parity;
            if (all != want)
                return {false, "mismatch at round " + std::to_string(round)};
        }
    }
    return {true, "1000 equations x 8 assignments exact"};
}

// ---------------------------------------------------------------- criterion 2
Outcome planted_satisfiability() {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const PlantedInstance x = gen_xorsat(50, run_seed(2001, seed, 0));
        if (!eval_cnf(x.cnf, x.planted).satisfied)
            return {false, "xorsat seed " + std::to_string(seed)};
    }
    for (double ratio : {4.3, 7.0}) {
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            const PlantedInstance b =
                gen_barthel(100, ratio, 0.08, run_seed(2002, seed, 0));
            if (!eval_cnf(b.cnf, b.planted).satisfied)
                return {false, "barthel ratio " + std::to_string(ratio) +
                                   " seed " + std::to_string(seed)};
        }
    }
    return {true, "3000 instances satisfied by their planted assignments"};
}

// ---------------------------------------------------------------- criterion 3
Outcome barthel_statistics() {
    const BarthelTypeProbs p = barthel_type_probs(0.08);
    const double per_pattern[3] = {p.p0, p.p1, p.p2};
    const double binom[3] = {1.0, 3.0, 3.0};
    std::uint64_t counts[4] = {0, 0, 0, 0};
    std::uint64_t total = 0;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const PlantedInstance inst =
            gen_barthel(100, 7.0, 0.08, run_seed(3001, seed, 0));
        for (const Clause& cl : inst.cnf.clauses()) {
            int unsat = 0;
            for (const Literal& lit : cl.literals())
                unsat += inst.planted[lit.var] == lit.negated ? 1 : 0;
            ++counts[unsat];
            ++total;
        }
    }
    if (total < 100'000)
        return {false, "only " + std::to_string(total) + " clauses"};
    if (counts[3] != 0)
        return {false, std::to_string(counts[3]) + " type-3 clauses"};
    std::ostringstream detail;
    detail.precision(6);
    for (int t = 0; t < 3; ++t) {
        const double class_p = binom[t] * per_pattern[t];
        const double freq =
            static_cast<double>(counts[t]) / static_cast<double>(total);
        const double se_pattern =
            std::sqrt(class_p * (1.0 - class_p) / static_cast<double>(total)) /
            binom[t];
        const double dev = std::fabs(freq / binom[t] - per_pattern[t]);
        detail << "t" << t << " dev/se=" << dev / se_pattern << " ";
        if (dev > 3.0 * se_pattern)
            return {false, "type " + std::to_string(t) + " off by " +
                               std::to_string(dev / se_pattern) + " se"};
    }
    detail << "over " << total << " clauses, zero type-3";
    return {true, detail.str()};
}

// ---------------------------------------------------------------- criterion 4
Outcome dynamics_invariants_fuzz() {
    SplitMix64 rng(4001);
    std::uint64_t steps_done = 0;

    auto random_state = [&](const ClauseTopology& topo, double epsilon) {
        DmmState st;
        st.v.resize(topo.num_vars);
        for (auto& x : st.v) x = rng.next_symmetric();
        st.xs.resize(topo.clauses.size());
        for (auto& x : st.xs) x = epsilon + (1.0 - 2.0 * epsilon) * rng.next_unit();
        st.xl.resize(topo.clauses.size());
        for (auto& x : st.xl) x = 1.0 + 49.0 * rng.next_unit();
        return st;
    };
    auto random_instance = [&] {
        if (rng.next_bool())
            return gen_xorsat(8 + static_cast<std::uint32_t>(rng.next_below(17)),
                              rng.next());
        return gen_barthel(8 + static_cast<std::uint32_t>(rng.next_below(23)),
                           3.0 + 4.0 * rng.next_unit(), 0.25 * rng.next_unit(),
                           rng.next());
    };
    auto check_ranges = [](const DmmState& st, const DmmParams& p, double cap) {
        for (double v : st.v)
            if (v < -1.0 || v > 1.0) return false;
        for (double xs : st.xs)
            if (xs < p.epsilon || xs > 1.0 - p.epsilon) return false;
        for (double xl : st.xl)
            if (xl < 1.0 || xl > cap) return false;
        return true;
    };

    // general fuzz over random parameter draws
    while (steps_done < 600'000) {
        const PlantedInstance inst = random_instance();
        const ClauseTopology topo(inst.cnf);
        DmmParams p;
        p.alpha = 1.0 + 9.0 * rng.next_unit();
        p.beta = 5.0 + 35.0 * rng.next_unit();
        p.gamma = 0.05 + 0.4 * rng.next_unit();
        p.delta = 0.01 + 0.19 * rng.next_unit();
        p.zeta = 0.01 + 0.29 * rng.next_unit();
        p.dt = 0.002 + 0.048 * rng.next_unit();
        p.v_thr = 0.95 * rng.next_unit();
        p.v_jump = 2.0 * rng.next_unit();
        DmmState st = random_state(topo, p.epsilon);
        Derivatives scratch;
        const double cap = xl_cap(topo.clauses.size());
        for (int step = 0; step < 2000; ++step) {
            euler_step(st, topo, p, scratch);
            ++steps_done;
            if (!check_ranges(st, p, cap))
                return {false, "range violation after " +
                                   std::to_string(steps_done) + " steps"};
        }
    }

    // band exclusion at the v_thr=0.6, v_jump=1.26 configuration
    std::uint64_t band_steps = 0;
    while (band_steps < 400'000) {
        const PlantedInstance inst = random_instance();
        const ClauseTopology topo(inst.cnf);
        DmmParams p;
        p.v_thr = 0.6;
        p.v_jump = 1.26;
        DmmState st = random_state(topo, p.epsilon);
        Derivatives scratch;
        const double cap = xl_cap(topo.clauses.size());
        std::vector<double> before;
        for (int step = 0; step < 2000; ++step) {
            before = st.v;
            euler_step(st, topo, p, scratch);
            ++band_steps;
            if (!check_ranges(st, p, cap))
                return {false, "range violation in the band phase"};
            for (std::size_t n = 0; n < st.v.size(); ++n)
                if (std::fabs(before[n]) >= p.v_thr &&
                    std::fabs(st.v[n]) < p.v_thr)
                    return {false, "band exclusion violated at step " +
                                       std::to_string(band_steps)};
        }
    }
    return {true, std::to_string(steps_done + band_steps) +
                      " fuzz steps, all clamps and band exclusion held"};
}

// ---------------------------------------------------------------- criterion 5
Outcome unmodified_identity() {
    for (std::uint64_t i = 0; i < 10; ++i) {
        const PlantedInstance inst = gen_xorsat(20, run_seed(5001, i, 0));
        const ClauseTopology topo(inst.cnf);
        DmmParams p;
        p.v_thr = 0.6;
        p.v_jump = 0.0;
        SolveConfig config;
        config.seed = run_seed(5001, i, 1);
        DmmState a = init_state(inst.cnf, config);
        DmmState b = a;
        Derivatives sa, sb;
        for (int step = 0; step < 10'000; ++step) {
            euler_step(a, topo, p, sa);
            euler_step_without_jumps(b, topo, p, sb);
            if (a.v != b.v || a.xs != b.xs || a.xl != b.xl)
                return {false, "divergence at instance " + std::to_string(i) +
                                   " step " + std::to_string(step)};
        }
        if (a.jumps != 0) return {false, "jumps fired with v_jump = 0"};
    }
    return {true, "10 instances x 10^4 steps bit-identical"};
}

// ---------------------------------------------------------------- criterion 6
Outcome solver_competence() {
    int solved = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const PlantedInstance inst = gen_xorsat(20, run_seed(6001, i, 0));
        SolveConfig config;
        config.seed = run_seed(6001, i, 1);
        config.params.max_steps = 1'000'000; // 10^4 intrinsic time units
        solved += solve(inst.cnf, config).result.solved ? 1 : 0;
    }
    std::ostringstream detail;
    detail << solved << "/100 solved within 10^4 time units";
    return {solved >= 95, detail.str()};
}

// ---------------------------------------------------------------- criterion 7
Outcome model_line_regime() {
    CampaignSpec spec;
    spec.generator = {GeneratorKind::Barthel, 200, 7.0, 0.08, 0};
    spec.instance_count = 300;
    spec.sweep = {{0.3, 0.63}};
    spec.master_seed = 1;
    const CampaignResult result = run_campaign(spec, workers());
    if (!result.cells[0][0].nmtts)
        return {false, "NMTTS undefined (excess censoring)"};
    const double nm = *result.cells[0][0].nmtts;
    const double target = 1.0 - 0.63 / 2.0;
    std::ostringstream detail;
    detail.precision(4);
    detail << "NMTTS=" << nm << " target " << target << " +- 0.15";
    return {std::fabs(nm - target) <= 0.15, detail.str()};
}

// ---------------------------------------------------------------- criterion 8
Outcome large_jump_acceleration() {
    CampaignSpec spec;
    spec.generator = {GeneratorKind::Barthel, 100, 7.0, 0.08, 0};
    spec.instance_count = 300;
    spec.sweep = {{0.98, 2.058}};
    spec.sizes = {100, 300};
    spec.master_seed = 1;
    const CampaignResult result = run_campaign(spec, workers());
    if (!result.cells[0][0].nmtts || !result.cells[1][0].nmtts)
        return {false, "NMTTS undefined (excess censoring)"};
    const double nm100 = *result.cells[0][0].nmtts;
    const double nm300 = *result.cells[1][0].nmtts;
    std::ostringstream detail;
    detail.precision(4);
    detail << "NMTTS(100)=" << nm100 << " NMTTS(300)=" << nm300
           << " (need NMTTS(300) < 0.8 and < NMTTS(100))";
    return {nm300 < 0.8 && nm300 < nm100, detail.str()};
}

// ---------------------------------------------------------------- criterion 9
TtsSampleSet collect_tts(const GeneratorSpec& gen, std::size_t count,
                         std::uint64_t master) {
    CampaignSpec spec;
    spec.generator = gen;
    spec.instance_count = static_cast<std::uint32_t>(count);
    spec.sweep = {{0.0, 0.0}};
    spec.baseline = false;
    spec.master_seed = master;
    const CampaignResult result = run_campaign(spec, workers());
    return result.cells[0][0].samples;
}

Outcome distribution_shapes() {
    const TtsSampleSet xorsat =
        collect_tts({GeneratorKind::Xorsat, 40, 0.0, 0.0, 0}, 1000, 901);
    const FitResult exp_fit = fit_exponential(histogram(xorsat, 25.0));
    std::ostringstream detail;
    detail.precision(4);
    detail << "xorsat exp r2=" << exp_fit.r2 << " (a=" << exp_fit.params[0]
           << ", censored=" << xorsat.censored_count() << ")";
    if (exp_fit.r2 <= 0.9) return {false, detail.str()};

    const TtsSampleSet barthel =
        collect_tts({GeneratorKind::Barthel, 500, 7.0, 0.08, 0}, 1000, 902);
    const FitResult ig_fit = fit_inverse_gaussian(histogram(barthel, 0.5));
    detail << "; barthel invgauss r2=" << ig_fit.r2 << " (a=" << ig_fit.params[0]
           << ", b=" << ig_fit.params[1] << ")";
    return {ig_fit.r2 > 0.9, detail.str()};
}

// --------------------------------------------------------------- criterion 10
Outcome fit_recovery() {
    SplitMix64 rng(10'001);
    auto draw_exp = [&](double a) { return -a * std::log(1.0 - rng.next_unit()); };
    auto draw_normal = [&] {
        const double u1 = 1.0 - rng.next_unit();
        const double u2 = rng.next_unit();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586 * u2);
    };
    auto draw_ig = [&](double a, double b) {
        const double nu = draw_normal();
        const double y = nu * nu;
        const double x =
            a + a * a * y / (2.0 * b) -
            a / (2.0 * b) * std::sqrt(4.0 * a * b * y + a * a * y * y);
        return rng.next_unit() <= a / (a + x) ? x : a * a / x;
    };

    TtsSampleSet exp_set;
    for (int i = 0; i < 10'000; ++i) exp_set.add(draw_exp(100.0), false);
    const FitResult exp_fit = fit_exponential(histogram(exp_set, 10.0));

    TtsSampleSet ig_set;
    for (int i = 0; i < 10'000; ++i) ig_set.add(draw_ig(20.0, 100.0), false);
    const FitResult ig_fit = fit_inverse_gaussian(histogram(ig_set, 0.5));

    std::ostringstream detail;
    detail.precision(5);
    detail << "exp a=" << exp_fit.params[0] << " (true 100); invgauss a="
           << ig_fit.params[0] << " b=" << ig_fit.params[1] << " (true 20, 100)";
    const bool pass = std::fabs(exp_fit.params[0] - 100.0) < 5.0 &&
                      std::fabs(ig_fit.params[0] - 20.0) < 1.0 &&
                      std::fabs(ig_fit.params[1] - 100.0) < 5.0;
    return {pass, detail.str()};
}

// --------------------------------------------------------------- criterion 11
Outcome scaling_exponent_ordering() {
    CampaignSpec spec;
    spec.generator = {GeneratorKind::Barthel, 100, 7.0, 0.08, 0};
    spec.instance_count = 200;
    spec.sweep = {{0.65, 2.1 * 0.65}};
    spec.sizes = {100, 200, 400};
    spec.master_seed = 1;
    const CampaignResult result = run_campaign(spec, workers());
    std::vector<ScalingPoint> mod, base;
    for (std::size_t s = 0; s < result.sizes.size(); ++s) {
        if (!result.cells[s][0].median || !result.baselines[s].median)
            return {false, "undefined median at N=" +
                               std::to_string(result.sizes[s])};
        mod.push_back({static_cast<double>(result.sizes[s]),
                       *result.cells[s][0].median});
        base.push_back({static_cast<double>(result.sizes[s]),
                        *result.baselines[s].median});
    }
    const FitResult fit_mod = fit_scaling(mod, FitFamily::PowerLaw);
    const FitResult fit_base = fit_scaling(base, FitFamily::PowerLaw);
    std::ostringstream detail;
    detail.precision(5);
    detail << "exponent with jumps " << fit_mod.params[0] << ", baseline "
           << fit_base.params[0]
           << " (reference exponents 0.25496 and 0.43019; magnitudes not gated)";
    return {fit_mod.params[0] < fit_base.params[0], detail.str()};
}

// --------------------------------------------------------------- criterion 12
Outcome campaign_determinism() {
    CampaignSpec spec;
    spec.generator = {GeneratorKind::Xorsat, 16, 0.0, 0.0, 0};
    spec.instance_count = 8;
    spec.sweep = {{0.6, 1.26}, {0.4, 0.0}};
    spec.sizes = {12, 16};
    spec.repeats = 2;
    spec.master_seed = 12'001;
    spec.max_steps = 500'000;

    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() /
                          ("dmmsat_accept12_" + std::to_string(::getpid()));
    const fs::path dir1 = base / "w1", dir8 = base / "w8";
    fs::remove_all(base);
    export_campaign(run_campaign(spec, 1), dir1);
    export_campaign(run_campaign(spec, 8), dir8);

    std::size_t files = 0;
    bool identical = true;
    for (const auto& entry : fs::directory_iterator(dir1)) {
        const auto name = entry.path().filename();
        std::ifstream a(dir1 / name, std::ios::binary);
        std::ifstream b(dir8 / name, std::ios::binary);
        std::ostringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        identical = identical && sa.str() == sb.str() && !sa.str().empty();
        ++files;
    }
    fs::remove_all(base);
    // 2 sizes x (2 points + baseline) sample files plus sweep.csv and
    // manifest.json
    std::ostringstream detail;
    detail << files << " exported files byte-identical across 1 vs 8 workers";
    return {identical && files == 8, detail.str()};
}

struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "XOR-encoding correctness", xor_encoding_correctness},
        {2, "planted satisfiability", planted_satisfiability},
        {3, "Barthel ensemble statistics", barthel_statistics},
        {4, "dynamics invariants under fuzz", dynamics_invariants_fuzz},
        {5, "unmodified-identity (v_jump = 0)", unmodified_identity},
        {6, "solver competence (N=20 XORSAT)", solver_competence},
        {7, "acceleration model-line NMTTS", model_line_regime},
        {8, "large-jump acceleration trend", large_jump_acceleration},
        {9, "distribution shapes", distribution_shapes},
        {10, "fit-recovery oracles", fit_recovery},
        {11, "scaling-exponent ordering", scaling_exponent_ordering},
        {12, "campaign determinism", campaign_determinism},
    };

    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!wanted.empty() && !wanted.count(c.number)) continue;
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %2d: %s -- %s\n",
                    outcome.pass ? "PASS" : "FAIL", c.number, c.name,
                    outcome.detail.c_str());
        std::fflush(stdout);
        failures += outcome.pass ? 0 : 1;
    }
    return failures;
}
