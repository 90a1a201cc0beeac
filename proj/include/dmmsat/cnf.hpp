#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dmmsat {

/// A signed literal. Variable indices are 0-based internally; DIMACS I/O
/// converts to the 1-based external convention.
struct Literal {
    std::uint32_t var = 0;
    bool negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
};

/// A 3-SAT clause: exactly three literals over pairwise distinct variables.
class Clause {
public:
    Clause(Literal a, Literal b, Literal c);

    const std::array<Literal, 3>& literals() const { return lits_; }
    const Literal& operator[](std::size_t i) const { return lits_[i]; }

    friend bool operator==(const Clause&, const Clause&) = default;

private:
    std::array<Literal, 3> lits_;
};

using Assignment = std::vector<bool>;

/// A 3-SAT formula of `num_vars` variables and an ordered clause list.
/// Immutable after construction. Clause order is preserved as given.
class Cnf {
public:
    Cnf(std::uint32_t num_vars, std::vector<Clause> clauses);

    std::uint32_t num_vars() const { return num_vars_; }
    std::size_t num_clauses() const { return clauses_.size(); }
    const std::vector<Clause>& clauses() const { return clauses_; }

    friend bool operator==(const Cnf&, const Cnf&) = default;

private:
    std::uint32_t num_vars_;
    std::vector<Clause> clauses_;
};

/// True iff at least one literal evaluates true (value XOR negated).
bool eval_clause(const Clause& clause, const Assignment& a);

struct CnfEval {
    bool satisfied = false;
    std::size_t unsat_count = 0;
};

/// Evaluates all clauses; `satisfied` iff `unsat_count == 0`.
CnfEval eval_cnf(const Cnf& cnf, const Assignment& a);

/// FNV-1a 64 over the canonical clause listing (header plus clause lines,
/// comments excluded). Stable identifier for an instance's logical content.
std::uint64_t instance_digest(const Cnf& cnf);
std::string instance_digest_hex(const Cnf& cnf);

} // namespace dmmsat
