#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dmmsat/cnf.hpp"

namespace dmmsat {

class DimacsError : public std::runtime_error {
public:
    DimacsError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct DimacsFile {
    Cnf cnf;
    std::optional<Assignment> planted;
};

/// Parses DIMACS CNF text. Clauses must be 3-SAT (three distinct variables).
/// A comment line `c planted <lit...>` is decoded into `planted`.
/// Tolerates CRLF input. Throws DimacsError with the offending line number.
DimacsFile parse_dimacs(std::string_view text);

/// Serializes to DIMACS with LF endings. `comments` are emitted first
/// (each as a `c ` line), then the planted comment when present, then the
/// header and clauses.
std::string write_dimacs(const Cnf& cnf,
                         const std::optional<Assignment>& planted = std::nullopt,
                         const std::vector<std::string>& comments = {});

} // namespace dmmsat
