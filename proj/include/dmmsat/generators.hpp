#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "dmmsat/cnf.hpp"

namespace dmmsat {

class GenerationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// x_a + x_b + x_c = parity (mod 2), variables stored positive and ascending;
/// literal polarities are absorbed into the parity bit.
struct XorEquation {
    std::array<std::uint32_t, 3> vars;
    bool parity = false;
};

enum class GeneratorKind { Xorsat, Barthel };

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Xorsat;
    std::uint32_t n = 0;
    double ratio = 0.0; // Barthel only: M/N
    double p0 = 0.0;    // Barthel only
    std::uint64_t seed = 0;

    void validate() const; // throws std::invalid_argument

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

struct PlantedInstance {
    Cnf cnf;
    Assignment planted;
};

/// Expands one XOR equation into the 4 clauses that exclude exactly the
/// parity-violating assignments of its three variables. Clause order follows
/// the excluded assignments in increasing binary order (vars[0] most
/// significant).
std::array<Clause, 4> xor_to_cnf(const XorEquation& eq);

/// 3-regular 3-XORSAT: n parity equations over n variables, each variable in
/// exactly three equations, each equation expanded to four clauses (M = 4n).
/// Wiring uses the configuration model with full-reshuffle restarts; parities
/// are set so the planted assignment satisfies every equation.
PlantedInstance gen_xorsat(std::uint32_t n, std::uint64_t seed);

/// Planted ensemble of Barthel et al.: M = round(ratio*n) clauses whose
/// negation patterns leave t planted-unsatisfied literals with per-pattern
/// probability p_t, where p3 = 0, p1 = (1-4*p0)/6, p2 = (1+2*p0)/6.
PlantedInstance gen_barthel(std::uint32_t n, double ratio, double p0,
                            std::uint64_t seed);

PlantedInstance generate(const GeneratorSpec& spec);

struct BarthelTypeProbs {
    double p0, p1, p2; // p3 = 0
};

/// Closed forms from normalization (p0 + 3p1 + 3p2 = 1) and the zero-bias
/// condition (p0 + p1 = p2) with p3 = 0.
BarthelTypeProbs barthel_type_probs(double p0);

/// `c generator ...` comment echoed into generated DIMACS files.
std::string generator_comment(const GeneratorSpec& spec);

} // namespace dmmsat
