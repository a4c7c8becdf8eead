#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "ramsey/cnf.hpp"

namespace ramsey {

// Symmetric irreflexive adjacency between variables. Two representations:
// explicit lists, or one vertex set per variable with "adjacent iff the sets
// intersect" (the natural relation for hyperedge variables, kept implicit
// because its explicit form is quadratic).
class NeighborRelation {
public:
    static NeighborRelation from_adjacency(std::vector<std::vector<int>> adjacency);

    // vertex_sets[v-1] lists the vertices of variable v's hyperedge, sorted.
    static NeighborRelation from_vertex_sets(int vertex_count,
                                             std::vector<std::vector<int>> vertex_sets);

    // Variables are adjacent iff they share a clause. Fallback for CNFs with
    // no hyperedge structure attached.
    static NeighborRelation clause_cooccurrence(const Cnf& cnf);

    int variable_count() const { return variable_count_; }
    bool adjacent(int u, int v) const;

private:
    friend class SearchState;
    NeighborRelation() = default;

    int variable_count_ = 0;

    // explicit mode
    std::vector<std::vector<int>> adjacency_;

    // vertex-set mode
    int vertex_count_ = 0;
    std::vector<int> verts_;              // flat, set_len_ entries per variable
    std::vector<std::size_t> verts_begin_;

    bool vertex_mode() const { return vertex_count_ > 0; }
    std::span<const int> vertex_set(int v) const {
        return {verts_.data() + verts_begin_[v - 1],
                verts_.data() + verts_begin_[v]};
    }
};

// Flip-driven assignment state over a CNF: per-variable score (change in
// satisfied clauses if flipped), subscore (change in clauses with >= 2 true
// literals), age, and the neighborhood-checking flag nc; plus the list of
// currently unsatisfied clauses. All of it is maintained incrementally.
class SearchState {
public:
    SearchState(const Cnf& cnf, const NeighborRelation& neighbors);

    // Installs a complete assignment and recomputes every counter. Resets
    // flips to 0, every age to 0 and every nc flag to true.
    void reset(const Assignment& assignment);

    void flip(int v);

    int variable_count() const { return nvars_; }
    bool value(int v) const { return assign_[v] != 0; }
    const Assignment& assignment() const { return assign_; }

    int score(int v) const { return score_[v]; }
    int subscore(int v) const { return subscore_[v]; }
    std::uint64_t age(int v) const { return flips_ - last_flip_[v]; }
    bool nc(int v) const;

    std::uint64_t flips() const { return flips_; }
    const std::vector<int>& unsat_clauses() const { return unsat_; }
    int true_literal_count(int c) const { return n_true_[c]; }

    // Variables with score > 0, unordered. Superset of the greedy-step
    // candidates; callers still filter by nc.
    const std::vector<int>& positive_score_vars() const { return positive_; }

    std::span<const int> clause_literals(int c) const {
        return {lits_.data() + clause_begin_[c], lits_.data() + clause_begin_[c + 1]};
    }

private:
    const Cnf& cnf_;
    const NeighborRelation& neighbors_;
    int nvars_ = 0;
    std::size_t nclauses_ = 0;

    std::vector<int> lits_;
    std::vector<std::size_t> clause_begin_;
    std::vector<int> occ_;                 // clause ids per variable
    std::vector<std::size_t> occ_begin_;

    Assignment assign_;
    std::vector<std::int32_t> n_true_;
    std::vector<std::int32_t> score_;
    std::vector<std::int32_t> subscore_;
    std::vector<std::uint64_t> last_flip_;
    std::uint64_t flips_ = 0;

    std::vector<int> unsat_;               // indexable set of clause ids
    std::vector<std::int32_t> unsat_pos_;  // -1 when not present

    std::vector<int> positive_;            // indexable set of variables
    std::vector<std::int32_t> positive_pos_;

    // nc bookkeeping: explicit flags, or per-vertex last-touch counters when
    // the relation is in vertex-set mode.
    std::vector<std::uint8_t> nc_flag_;
    std::vector<std::uint64_t> vertex_touch_;

    std::vector<int> dirty_;
    std::vector<std::uint32_t> dirty_mark_;
    std::uint32_t dirty_epoch_ = 0;

    void unsat_insert(int c);
    void unsat_remove(int c);
    void refresh_positive(int v);
    void mark_dirty(int v);
};

// The greedy tie-break: greatest score, then smallest subscore, then greatest
// age, residual ties to the smallest variable index. Pure. candidates must be
// non-empty.
int tiebreak_h(const SearchState& state, std::span<const int> candidates);

struct LocalSearchParams {
    std::uint64_t seed = 1;
    std::uint64_t cutoff_flips = 20'000'000;
    std::uint32_t max_restarts = 100;
    const std::atomic<bool>* stop = nullptr; // optional external cancellation
    std::ostream* progress = nullptr;        // diagnostics, never primary output
    std::uint64_t progress_interval = 1u << 22;
};

enum class LsStatus { Sat, Timeout };

struct LocalSearchResult {
    LsStatus status = LsStatus::Timeout;
    Assignment assignment; // complete on Sat
    std::uint64_t total_flips = 0;
    std::uint32_t restarts_used = 0;
};

// Random-restart local search. Each restart draws a fresh uniform assignment
// (one generator call per variable, least significant bit), then repeats until
// cutoff: flip the best nc-eligible variable with positive score, breaking
// ties with tiebreak_h; if none exists, draw one generator call to pick an
// unsatisfied clause uniformly and flip its best nc-eligible variable under
// tiebreak_h (every variable of the clause becomes a candidate when all are
// forbidden). SAT answers are re-checked against the CNF before they return.
LocalSearchResult solve_local_search(const Cnf& cnf, const NeighborRelation& neighbors,
                                     const LocalSearchParams& params);

} // namespace ramsey
