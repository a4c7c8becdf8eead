#pragma once

#include <cstdint>

#include "ramsey/cnf.hpp"

namespace ramsey {

enum class CompleteStatus { Sat, Unsat, BudgetExceeded };

struct CompleteResult {
    CompleteStatus status = CompleteStatus::Unsat;
    Assignment assignment;    // complete on Sat, empty otherwise
    std::uint64_t nodes = 0;  // decisions explored
};

// Exhaustive search: unit propagation over literal-occurrence counters,
// branching on the most constrained unsatisfied clause, chronological
// backtracking. Deterministic for a fixed input. budget = 0 means unlimited;
// otherwise the search gives up after that many decisions.
CompleteResult solve_complete(const Cnf& cnf, std::uint64_t node_budget = 0);

} // namespace ramsey
