#include "ramsey/complete.hpp"

#include <cstdlib>
#include <vector>

namespace ramsey {

namespace {

class Dpll {
public:
    explicit Dpll(const Cnf& cnf) : cnf_(cnf) { build(); }

    CompleteResult run(std::uint64_t budget);

private:
    struct Frame {
        std::size_t trail_size;
        int lit;
        bool flipped;
    };

    const Cnf& cnf_;
    int nvars_ = 0;
    std::size_t nclauses_ = 0;

    std::vector<int> lits_;                 // flat clause storage
    std::vector<std::size_t> clause_begin_; // nclauses_ + 1 offsets
    std::vector<int> occ_;                  // clause ids, grouped per literal
    std::vector<std::size_t> occ_begin_;    // 2 * (nvars_ + 1) + 1 offsets
    std::vector<int> occ_count_;            // static occurrences per variable

    std::vector<std::int8_t> assign_;
    std::vector<std::int32_t> n_true_;
    std::vector<std::int32_t> n_free_;
    std::vector<int> trail_;
    std::size_t qhead_ = 0;
    std::size_t n_sat_ = 0;
    std::vector<Frame> frames_;

    // occurrence slot for literal: +v -> 2v, -v -> 2v+1
    static std::size_t slot(int lit) {
        int var = std::abs(lit);
        return 2 * static_cast<std::size_t>(var) + (lit < 0 ? 1 : 0);
    }

    void build();
    bool assign_lit(int lit);
    bool propagate();
    void unassign_to(std::size_t trail_size);
    int pick_branch_lit() const;
};

void Dpll::build() {
    nvars_ = cnf_.variable_count;
    nclauses_ = cnf_.clauses.size();
    clause_begin_.reserve(nclauses_ + 1);
    clause_begin_.push_back(0);
    for (const auto& clause : cnf_.clauses) {
        lits_.insert(lits_.end(), clause.begin(), clause.end());
        clause_begin_.push_back(lits_.size());
    }

    std::vector<std::size_t> counts(2 * static_cast<std::size_t>(nvars_) + 2, 0);
    for (int lit : lits_)
        ++counts[slot(lit)];
    occ_begin_.assign(counts.size() + 1, 0);
    for (std::size_t i = 0; i < counts.size(); ++i)
        occ_begin_[i + 1] = occ_begin_[i] + counts[i];
    occ_.resize(lits_.size());
    std::vector<std::size_t> fill(occ_begin_.begin(), occ_begin_.end() - 1);
    for (std::size_t c = 0; c < nclauses_; ++c)
        for (std::size_t i = clause_begin_[c]; i < clause_begin_[c + 1]; ++i)
            occ_[fill[slot(lits_[i])]++] = static_cast<int>(c);

    occ_count_.assign(nvars_ + 1, 0);
    for (int lit : lits_)
        ++occ_count_[std::abs(lit)];

    assign_.assign(nvars_ + 1, -1);
    n_true_.assign(nclauses_, 0);
    n_free_.resize(nclauses_);
    for (std::size_t c = 0; c < nclauses_; ++c)
        n_free_[c] = static_cast<std::int32_t>(clause_begin_[c + 1] - clause_begin_[c]);
    trail_.reserve(nvars_);
}

bool Dpll::assign_lit(int lit) {
    int var = std::abs(lit);
    if (assign_[var] != -1)
        return assign_[var] == (lit > 0 ? 1 : 0);
    assign_[var] = lit > 0 ? 1 : 0;
    trail_.push_back(lit);
    return true;
}

bool Dpll::propagate() {
    while (qhead_ < trail_.size()) {
        int lit = trail_[qhead_++];
        for (std::size_t i = occ_begin_[slot(lit)]; i < occ_begin_[slot(lit) + 1]; ++i) {
            int c = occ_[i];
            if (n_true_[c]++ == 0)
                ++n_sat_;
            --n_free_[c];
        }
        for (std::size_t i = occ_begin_[slot(-lit)]; i < occ_begin_[slot(-lit) + 1]; ++i) {
            int c = occ_[i];
            --n_free_[c];
            if (n_true_[c] > 0)
                continue;
            if (n_free_[c] == 0)
                return false;
            if (n_free_[c] == 1) {
                // the counter lags enqueued-but-unprocessed assignments, so
                // the remaining literal may already be assigned; skip then
                int unit = 0;
                for (std::size_t j = clause_begin_[c]; j < clause_begin_[c + 1]; ++j) {
                    int l = lits_[j];
                    if (assign_[std::abs(l)] == -1) {
                        unit = l;
                        break;
                    }
                }
                if (unit != 0 && !assign_lit(unit))
                    return false;
            }
        }
    }
    return true;
}

void Dpll::unassign_to(std::size_t trail_size) {
    // literals at positions >= qhead_ were assigned but never reached by
    // propagation, so their counters were never applied; skip reversing them
    while (trail_.size() > trail_size) {
        std::size_t pos = trail_.size() - 1;
        int lit = trail_.back();
        trail_.pop_back();
        if (pos < qhead_) {
            for (std::size_t i = occ_begin_[slot(lit)]; i < occ_begin_[slot(lit) + 1]; ++i) {
                int c = occ_[i];
                if (--n_true_[c] == 0)
                    --n_sat_;
                ++n_free_[c];
            }
            for (std::size_t i = occ_begin_[slot(-lit)]; i < occ_begin_[slot(-lit) + 1]; ++i)
                ++n_free_[occ_[i]];
        }
        assign_[std::abs(lit)] = -1;
    }
    qhead_ = trail_size;
}

// Most constrained first: the unsatisfied clause with fewest free literals,
// then its unassigned variable with the most occurrences overall. The chosen
// polarity satisfies that clause.
int Dpll::pick_branch_lit() const {
    std::size_t best_clause = nclauses_;
    std::int32_t best_free = 0;
    for (std::size_t c = 0; c < nclauses_; ++c) {
        if (n_true_[c] != 0)
            continue;
        if (best_clause == nclauses_ || n_free_[c] < best_free) {
            best_clause = c;
            best_free = n_free_[c];
            if (best_free == 2)
                break;
        }
    }
    int best_lit = 0;
    int best_occ = -1;
    for (std::size_t j = clause_begin_[best_clause]; j < clause_begin_[best_clause + 1]; ++j) {
        int l = lits_[j];
        int var = std::abs(l);
        if (assign_[var] == -1 && occ_count_[var] > best_occ) {
            best_occ = occ_count_[var];
            best_lit = l;
        }
    }
    return best_lit;
}

CompleteResult Dpll::run(std::uint64_t budget) {
    CompleteResult result;
    if (nvars_ == 0 && nclauses_ == 0) {
        result.status = CompleteStatus::Sat;
        result.assignment = make_assignment(0, 0);
        return result;
    }

    bool conflict = false;
    for (std::size_t c = 0; c < nclauses_ && !conflict; ++c) {
        std::size_t len = clause_begin_[c + 1] - clause_begin_[c];
        if (len == 0)
            conflict = true;
        else if (len == 1)
            conflict = !assign_lit(lits_[clause_begin_[c]]);
    }

    while (true) {
        if (conflict || !propagate()) {
            conflict = false;
            while (!frames_.empty() && frames_.back().flipped) {
                unassign_to(frames_.back().trail_size);
                frames_.pop_back();
            }
            if (frames_.empty()) {
                result.status = CompleteStatus::Unsat;
                return result;
            }
            Frame& f = frames_.back();
            unassign_to(f.trail_size);
            f.flipped = true;
            assign_lit(-f.lit);
            continue;
        }
        if (n_sat_ == nclauses_) {
            result.status = CompleteStatus::Sat;
            result.assignment = make_assignment(nvars_);
            for (int v = 1; v <= nvars_; ++v)
                result.assignment[v] = assign_[v] == -1 ? 0 : assign_[v];
            if (!satisfies(cnf_, result.assignment))
                throw Error("complete solver produced a non-satisfying assignment"); // unreachable
            return result;
        }
        ++result.nodes;
        if (budget != 0 && result.nodes > budget) {
            result.status = CompleteStatus::BudgetExceeded;
            return result;
        }
        int lit = pick_branch_lit();
        frames_.push_back({trail_.size(), lit, false});
        assign_lit(lit);
    }
}

} // namespace

CompleteResult solve_complete(const Cnf& cnf, std::uint64_t node_budget) {
    validate(cnf);
    Dpll solver(cnf);
    return solver.run(node_budget);
}

} // namespace ramsey
