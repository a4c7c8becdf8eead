#include "ramsey/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace ramsey {

void validate(const Cnf& cnf) {
    if (cnf.variable_count < 0)
        throw ParamError("cnf: negative variable count");
    std::vector<std::int8_t> seen(static_cast<std::size_t>(cnf.variable_count) + 1, 0);
    for (std::size_t ci = 0; ci < cnf.clauses.size(); ++ci) {
        const auto& clause = cnf.clauses[ci];
        for (int lit : clause) {
            int var = std::abs(lit);
            if (lit == 0 || var > cnf.variable_count)
                throw ParamError("cnf: literal " + std::to_string(lit) +
                                 " out of range in clause " + std::to_string(ci));
            std::int8_t mark = lit > 0 ? 1 : 2;
            if (seen[var] & mark)
                throw ParamError("cnf: duplicate literal " + std::to_string(lit) +
                                 " in clause " + std::to_string(ci));
            if (seen[var] & (3 ^ mark))
                throw ParamError("cnf: clause " + std::to_string(ci) +
                                 " contains both polarities of variable " + std::to_string(var));
            seen[var] |= mark;
        }
        for (int lit : clause)
            seen[std::abs(lit)] = 0;
    }
}

bool satisfies(const Cnf& cnf, const Assignment& assignment) {
    if (assignment.size() != static_cast<std::size_t>(cnf.variable_count) + 1)
        throw ParamError("cnf: assignment size does not match variable count");
    for (int v = 1; v <= cnf.variable_count; ++v)
        if (assignment[v] != 0 && assignment[v] != 1)
            throw ParamError("cnf: variable " + std::to_string(v) + " unassigned");
    for (const auto& clause : cnf.clauses) {
        bool sat = false;
        for (int lit : clause) {
            if (assignment[std::abs(lit)] == (lit > 0 ? 1 : 0)) {
                sat = true;
                break;
            }
        }
        if (!sat)
            return false;
    }
    return true;
}

void write_dimacs(std::ostream& os, const Cnf& cnf) {
    os << "p cnf " << cnf.variable_count << ' ' << cnf.clauses.size() << '\n';
    for (const auto& clause : cnf.clauses) {
        for (int lit : clause)
            os << lit << ' ';
        os << "0\n";
    }
}

std::string to_dimacs(const Cnf& cnf) {
    std::ostringstream os;
    write_dimacs(os, cnf);
    return os.str();
}

Cnf parse_dimacs(std::istream& is) {
    Cnf cnf;
    bool have_header = false;
    std::size_t declared_clauses = 0;
    std::string line;
    std::vector<int> clause;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == 'c')
            continue;
        if (line[0] == 'p') {
            std::istringstream hs(line);
            std::string p, fmt;
            long long vars = -1, ncls = -1;
            if (!(hs >> p >> fmt >> vars >> ncls) || fmt != "cnf" || vars < 0 || ncls < 0)
                throw ParseError("dimacs: bad header \"" + line + "\"");
            cnf.variable_count = static_cast<int>(vars);
            declared_clauses = static_cast<std::size_t>(ncls);
            have_header = true;
            continue;
        }
        if (!have_header)
            throw ParseError("dimacs: clause before \"p cnf\" header");
        std::istringstream ls(line);
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                cnf.clauses.push_back(clause);
                clause.clear();
            } else {
                clause.push_back(lit);
            }
        }
        if (ls.fail() && !ls.eof())
            throw ParseError("dimacs: non-integer token in \"" + line + "\"");
    }
    if (!have_header)
        throw ParseError("dimacs: missing \"p cnf\" header");
    if (!clause.empty())
        throw ParseError("dimacs: last clause not 0-terminated");
    if (cnf.clauses.size() != declared_clauses)
        throw ParseError("dimacs: header declares " + std::to_string(declared_clauses) +
                         " clauses, found " + std::to_string(cnf.clauses.size()));
    validate(cnf);
    return cnf;
}

Assignment parse_assignment(std::string_view text, int variable_count) {
    Assignment assignment = make_assignment(variable_count);
    std::istringstream is{std::string(text)};
    std::string line;
    bool done = false;
    while (!done && std::getline(is, line)) {
        std::string_view body = line;
        if (body.rfind("v ", 0) == 0 || body == "v")
            body.remove_prefix(1);
        else if (!body.empty() && (body[0] == 'c' || body[0] == 's'))
            continue; // solver chatter
        std::istringstream ls{std::string(body)};
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                done = true;
                break;
            }
            int var = std::abs(lit);
            if (var > variable_count)
                throw ParseError("assignment: variable " + std::to_string(var) +
                                 " out of range (have " + std::to_string(variable_count) + ")");
            assignment[var] = lit > 0 ? 1 : 0;
        }
        if (ls.fail() && !ls.eof())
            throw ParseError("assignment: non-integer token in \"" + line + "\"");
    }
    for (int v = 1; v <= variable_count; ++v)
        if (assignment[v] < 0)
            throw ParseError("assignment: variable " + std::to_string(v) + " unassigned");
    return assignment;
}

} // namespace ramsey
