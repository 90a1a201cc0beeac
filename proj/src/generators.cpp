#include "dmmsat/generators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dmmsat/rng.hpp"

namespace dmmsat {

namespace {

constexpr int kXorsatMaxRestarts = 10'000;

} // namespace

void GeneratorSpec::validate() const {
    switch (kind) {
    case GeneratorKind::Xorsat:
        if (n < 4) throw std::invalid_argument("XORSAT requires n >= 4");
        break;
    case GeneratorKind::Barthel: {
        if (n < 3) throw std::invalid_argument("Barthel requires n >= 3");
        if (!(ratio > 0.0)) throw std::invalid_argument("ratio must be > 0");
        if (p0 < 0.0 || p0 > 0.25)
            throw std::invalid_argument("p0 must lie in [0, 1/4] so that p1 >= 0");
        const double m = std::round(ratio * n);
        if (m < 1.0) throw std::invalid_argument("round(ratio*n) must be >= 1");
        break;
    }
    }
}

BarthelTypeProbs barthel_type_probs(double p0) {
    if (p0 < 0.0 || p0 > 0.25)
        throw std::invalid_argument("p0 must lie in [0, 1/4]");
    return {p0, (1.0 - 4.0 * p0) / 6.0, (1.0 + 2.0 * p0) / 6.0};
}

std::array<Clause, 4> xor_to_cnf(const XorEquation& eq) {
    // One clause per parity-violating assignment (a0,a1,a2), in increasing
    // binary order with vars[0] as the most significant bit. The clause that
    // is false exactly at that assignment has negated_i = a_i.
    std::array<Clause, 4> out{
        Clause{{0, false}, {1, false}, {2, false}},
        Clause{{0, false}, {1, false}, {2, false}},
        Clause{{0, false}, {1, false}, {2, false}},
        Clause{{0, false}, {1, false}, {2, false}},
    };
    std::size_t k = 0;
    for (int bits = 0; bits < 8; ++bits) {
        const bool a0 = (bits >> 2) & 1, a1 = (bits >> 1) & 1, a2 = bits & 1;
        if ((a0 ^ a1 ^ a2) == eq.parity) continue; // satisfies the equation
        out[k++] = Clause{{eq.vars[0], a0}, {eq.vars[1], a1}, {eq.vars[2], a2}};
    }
    return out;
}

PlantedInstance gen_xorsat(std::uint32_t n, std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("XORSAT requires n >= 4");
    SplitMix64 rng(seed);

    Assignment planted(n);
    for (std::uint32_t i = 0; i < n; ++i) planted[i] = rng.next_bool();

    // Configuration model: three stubs per variable, shuffled and read off as
    // consecutive triples. A triple with a repeated variable voids the whole
    // shuffle.
    std::vector<std::uint32_t> stubs(3 * static_cast<std::size_t>(n));
    for (std::uint32_t i = 0; i < n; ++i)
        stubs[3 * i] = stubs[3 * i + 1] = stubs[3 * i + 2] = i;

    bool wired = false;
    for (int attempt = 0; attempt < kXorsatMaxRestarts && !wired; ++attempt) {
        for (std::size_t i = stubs.size() - 1; i > 0; --i) {
            const std::size_t j = rng.next_below(i + 1);
            std::swap(stubs[i], stubs[j]);
        }
        wired = true;
        for (std::size_t e = 0; e < n && wired; ++e) {
            const std::uint32_t a = stubs[3 * e], b = stubs[3 * e + 1],
                                c = stubs[3 * e + 2];
            if (a == b || a == c || b == c) wired = false;
        }
    }
    if (!wired)
        throw GenerationError("3-regular XORSAT wiring failed after " +
                              std::to_string(kXorsatMaxRestarts) + " restarts");

    std::vector<Clause> clauses;
    clauses.reserve(4 * static_cast<std::size_t>(n));
    for (std::size_t e = 0; e < n; ++e) {
        std::array<std::uint32_t, 3> vars{stubs[3 * e], stubs[3 * e + 1],
                                          stubs[3 * e + 2]};
        std::sort(vars.begin(), vars.end());
        // Random literal polarities are absorbed into the parity, which the
        // planted assignment then fixes, so the parity is set directly.
        const bool parity = planted[vars[0]] ^ planted[vars[1]] ^ planted[vars[2]];
        for (const Clause& cl : xor_to_cnf({vars, parity})) clauses.push_back(cl);
    }
    return {Cnf(n, std::move(clauses)), std::move(planted)};
}

PlantedInstance gen_barthel(std::uint32_t n, double ratio, double p0,
                            std::uint64_t seed) {
    GeneratorSpec spec{GeneratorKind::Barthel, n, ratio, p0, seed};
    spec.validate();
    const auto m = static_cast<std::size_t>(std::llround(ratio * n));
    const BarthelTypeProbs probs = barthel_type_probs(p0);

    SplitMix64 rng(seed);
    Assignment planted(n);
    for (std::uint32_t i = 0; i < n; ++i) planted[i] = rng.next_bool();

    // The 7 admissible negation patterns keyed by which (sorted) slots end up
    // unsatisfied under the planted assignment; t = 3 never occurs.
    struct Pattern {
        std::uint8_t false_mask;
        double weight;
    };
    const Pattern patterns[7] = {
        {0b000, probs.p0}, {0b001, probs.p1}, {0b010, probs.p1},
        {0b100, probs.p1}, {0b011, probs.p2}, {0b101, probs.p2},
        {0b110, probs.p2},
    };

    std::vector<Clause> clauses;
    clauses.reserve(m);
    for (std::size_t c = 0; c < m; ++c) {
        std::array<std::uint32_t, 3> vars;
        vars[0] = static_cast<std::uint32_t>(rng.next_below(n));
        do {
            vars[1] = static_cast<std::uint32_t>(rng.next_below(n));
        } while (vars[1] == vars[0]);
        do {
            vars[2] = static_cast<std::uint32_t>(rng.next_below(n));
        } while (vars[2] == vars[0] || vars[2] == vars[1]);
        std::sort(vars.begin(), vars.end());

        const double u = rng.next_unit();
        std::uint8_t mask = patterns[6].false_mask;
        double cum = 0.0;
        for (const Pattern& p : patterns) {
            cum += p.weight;
            if (u < cum) {
                mask = p.false_mask;
                break;
            }
        }

        std::array<Literal, 3> lits;
        for (int i = 0; i < 3; ++i) {
            const bool falsified = (mask >> i) & 1;
            lits[i] = Literal{vars[i], falsified == planted[vars[i]]};
        }
        clauses.emplace_back(lits[0], lits[1], lits[2]);
    }
    return {Cnf(n, std::move(clauses)), std::move(planted)};
}

PlantedInstance generate(const GeneratorSpec& spec) {
    spec.validate();
    switch (spec.kind) {
    case GeneratorKind::Xorsat:
        return gen_xorsat(spec.n, spec.seed);
    case GeneratorKind::Barthel:
        return gen_barthel(spec.n, spec.ratio, spec.p0, spec.seed);
    }
    throw std::invalid_argument("unknown generator kind");
}

std::string generator_comment(const GeneratorSpec& spec) {
    std::ostringstream out;
    out << "generator kind="
        << (spec.kind == GeneratorKind::Xorsat ? "xorsat" : "barthel")
        << " n=" << spec.n;
    if (spec.kind == GeneratorKind::Barthel)
        out << " ratio=" << spec.ratio << " p0=" << spec.p0;
    out << " seed=" << spec.seed;
    return out.str();
}

} // namespace dmmsat
