#include "dmmsat/dimacs.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace dmmsat {

DimacsError::DimacsError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

long long parse_int(std::string_view tok, std::size_t line) {
    long long value = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw DimacsError(line, "expected an integer, got '" + std::string(tok) + "'");
    return value;
}

} // namespace

DimacsFile parse_dimacs(std::string_view text) {
    bool have_header = false;
    long long num_vars = 0, num_clauses = 0;
    std::vector<Clause> clauses;
    std::optional<Assignment> planted;
    std::vector<long long> planted_lits;

    std::vector<long long> pending; // literals of the clause being read
    std::size_t pending_line = 0;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        auto toks = split_ws(line);
        if (toks.empty()) {
            if (pos > text.size()) break;
            continue;
        }
        if (toks[0] == "c") {
            if (toks.size() >= 2 && toks[1] == "planted") {
                planted_lits.clear();
                for (std::size_t i = 2; i < toks.size(); ++i)
                    planted_lits.push_back(parse_int(toks[i], line_no));
                if (planted_lits.empty())
                    throw DimacsError(line_no, "empty planted comment");
            }
            if (pos > text.size()) break;
            continue;
        }
        if (toks[0] == "p") {
            if (have_header) throw DimacsError(line_no, "duplicate header");
            if (toks.size() != 4 || toks[1] != "cnf")
                throw DimacsError(line_no, "malformed header, expected 'p cnf N M'");
            num_vars = parse_int(toks[2], line_no);
            num_clauses = parse_int(toks[3], line_no);
            if (num_vars < 3 || num_clauses < 1)
                throw DimacsError(line_no, "header requires N >= 3 and M >= 1");
            have_header = true;
            if (pos > text.size()) break;
            continue;
        }
        if (!have_header)
            throw DimacsError(line_no, "clause data before header");
        for (std::string_view tok : toks) {
            const long long lit = parse_int(tok, line_no);
            if (lit == 0) {
                if (pending.size() != 3)
                    throw DimacsError(pending_line ? pending_line : line_no,
                                      "clause must have exactly 3 literals, got " +
                                          std::to_string(pending.size()));
                std::array<Literal, 3> lits;
                for (int i = 0; i < 3; ++i) {
                    const long long v = pending[i] > 0 ? pending[i] : -pending[i];
                    if (v > num_vars)
                        throw DimacsError(pending_line,
                                          "literal index exceeds variable count");
                    lits[i] = Literal{static_cast<std::uint32_t>(v - 1),
                                      pending[i] < 0};
                }
                if (lits[0].var == lits[1].var || lits[0].var == lits[2].var ||
                    lits[1].var == lits[2].var)
                    throw DimacsError(pending_line, "duplicate variable in clause");
                clauses.emplace_back(lits[0], lits[1], lits[2]);
                pending.clear();
                pending_line = 0;
            } else {
                if (pending.empty()) pending_line = line_no;
                pending.push_back(lit);
            }
        }
        if (pos > text.size()) break;
    }

    if (!have_header) throw DimacsError(line_no, "missing 'p cnf' header");
    if (!pending.empty())
        throw DimacsError(pending_line, "unterminated clause at end of input");
    if (static_cast<long long>(clauses.size()) != num_clauses)
        throw DimacsError(line_no, "clause count mismatch: header says " +
                                       std::to_string(num_clauses) + ", found " +
                                       std::to_string(clauses.size()));

    if (!planted_lits.empty()) {
        Assignment a(static_cast<std::size_t>(num_vars), false);
        if (planted_lits.size() != static_cast<std::size_t>(num_vars))
            throw DimacsError(1, "planted comment length does not match N");
        for (std::size_t i = 0; i < planted_lits.size(); ++i) {
            const long long lit = planted_lits[i];
            const long long v = lit > 0 ? lit : -lit;
            if (v != static_cast<long long>(i) + 1)
                throw DimacsError(1, "planted comment must list variables in order");
            a[i] = lit > 0;
        }
        planted = std::move(a);
    }

    return DimacsFile{Cnf(static_cast<std::uint32_t>(num_vars), std::move(clauses)),
                      std::move(planted)};
}

std::string write_dimacs(const Cnf& cnf, const std::optional<Assignment>& planted,
                         const std::vector<std::string>& comments) {
    std::ostringstream out;
    for (const std::string& c : comments) out << "c " << c << '\n';
    if (planted) {
        out << "c planted";
        for (std::size_t i = 0; i < planted->size(); ++i) {
            const long long ext = static_cast<long long>(i) + 1;
            out << ' ' << ((*planted)[i] ? ext : -ext);
        }
        out << '\n';
    }
    out << "p cnf " << cnf.num_vars() << ' ' << cnf.num_clauses() << '\n';
    for (const Clause& cl : cnf.clauses()) {
        for (const Literal& lit : cl.literals()) {
            const long long ext = static_cast<long long>(lit.var) + 1;
            out << (lit.negated ? -ext : ext) << ' ';
        }
        out << "0\n";
    }
    return out.str();
}

} // namespace dmmsat
