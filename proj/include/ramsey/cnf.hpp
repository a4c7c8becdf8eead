#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/error.hpp"

namespace ramsey {

// Truth values per variable, 1-based; index 0 is unused. -1 marks unassigned.
using Assignment = std::vector<std::int8_t>;

inline Assignment make_assignment(int variable_count, std::int8_t fill = -1) {
    return Assignment(static_cast<std::size_t>(variable_count) + 1, fill);
}

// Clauses over 1-based variables; a literal is +v or -v.
struct Cnf {
    int variable_count = 0;
    std::vector<std::vector<int>> clauses;

    std::size_t clause_count() const { return clauses.size(); }
};

// Checks index ranges, duplicate literals, and complementary pairs within a
// clause. Throws ParamError with the offending clause index.
void validate(const Cnf& cnf);

// Independent evaluator used to re-check every SAT answer before it is
// returned, and by tests. Requires a complete assignment.
bool satisfies(const Cnf& cnf, const Assignment& assignment);

// Exact DIMACS text: "p cnf <vars> <clauses>" then space-separated
// 0-terminated clause lines. Byte-stable for a fixed clause order.
std::string to_dimacs(const Cnf& cnf);
void write_dimacs(std::ostream& os, const Cnf& cnf);

// Tolerant DIMACS reader: skips comments, accepts clauses spread over lines.
Cnf parse_dimacs(std::istream& is);

// Parses solver solution output: signed integers, optionally on "v "-prefixed
// lines, optionally 0-terminated. Every variable in [1, variable_count] must
// appear, else ParseError.
Assignment parse_assignment(std::string_view text, int variable_count);

} // namespace ramsey
