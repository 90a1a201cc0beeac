#include "dmmsat/cnf.hpp"

#include <cstdio>
#include <stdexcept>

namespace dmmsat {

Clause::Clause(Literal a, Literal b, Literal c) : lits_{a, b, c} {
    if (a.var == b.var || a.var == c.var || b.var == c.var)
        throw std::invalid_argument("clause variables must be pairwise distinct");
}

Cnf::Cnf(std::uint32_t num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
    if (num_vars_ < 3)
        throw std::invalid_argument("a 3-SAT formula needs at least 3 variables");
    if (clauses_.empty())
        throw std::invalid_argument("a formula needs at least one clause");
    for (const Clause& cl : clauses_)
        for (const Literal& lit : cl.literals())
            if (lit.var >= num_vars_)
                throw std::invalid_argument("literal variable out of range");
}

bool eval_clause(const Clause& clause, const Assignment& a) {
    for (const Literal& lit : clause.literals())
        if (a[lit.var] != lit.negated) return true;
    return false;
}

CnfEval eval_cnf(const Cnf& cnf, const Assignment& a) {
    CnfEval ev;
    for (const Clause& cl : cnf.clauses())
        if (!eval_clause(cl, a)) ++ev.unsat_count;
    ev.satisfied = ev.unsat_count == 0;
    return ev;
}

namespace {

constexpr std::uint64_t kFnvOffset = 0xCBF29CE484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001B3ull;

void fnv1a(std::uint64_t& h, const char* s) {
    for (; *s; ++s) {
        h ^= static_cast<unsigned char>(*s);
        h *= kFnvPrime;
    }
}

} // namespace

std::uint64_t instance_digest(const Cnf& cnf) {
    std::uint64_t h = kFnvOffset;
    char buf[64];
    std::snprintf(buf, sizeof buf, "p cnf %u %zu\n", cnf.num_vars(),
                  cnf.num_clauses());
    fnv1a(h, buf);
    for (const Clause& cl : cnf.clauses()) {
        for (const Literal& lit : cl.literals()) {
            const long ext = static_cast<long>(lit.var) + 1;
            std::snprintf(buf, sizeof buf, "%ld ", lit.negated ? -ext : ext);
            fnv1a(h, buf);
        }
        fnv1a(h, "0\n");
    }
    return h;
}

std::string instance_digest_hex(const Cnf& cnf) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(instance_digest(cnf)));
    return buf;
}

} // namespace dmmsat
