#include "ramsey/local_search.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>

namespace ramsey {

NeighborRelation NeighborRelation::from_adjacency(std::vector<std::vector<int>> adjacency) {
    NeighborRelation rel;
    rel.variable_count_ = static_cast<int>(adjacency.size());
    for (auto& list : adjacency) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    for (std::size_t i = 0; i < adjacency.size(); ++i) {
        int u = static_cast<int>(i) + 1;
        for (int v : adjacency[i]) {
            if (v == u)
                throw ParamError("neighbors: variable " + std::to_string(u) + " adjacent to itself");
            if (v < 1 || v > rel.variable_count_)
                throw ParamError("neighbors: variable " + std::to_string(v) + " out of range");
            const auto& back = adjacency[v - 1];
            if (!std::binary_search(back.begin(), back.end(), u))
                throw ParamError("neighbors: relation not symmetric at (" + std::to_string(u) +
                                 "," + std::to_string(v) + ")");
        }
    }
    rel.adjacency_ = std::move(adjacency);
    return rel;
}

NeighborRelation NeighborRelation::from_vertex_sets(int vertex_count,
                                                    std::vector<std::vector<int>> vertex_sets) {
    if (vertex_count < 1)
        throw ParamError("neighbors: vertex count must be positive");
    NeighborRelation rel;
    rel.variable_count_ = static_cast<int>(vertex_sets.size());
    rel.vertex_count_ = vertex_count;
    rel.verts_begin_.reserve(vertex_sets.size() + 1);
    rel.verts_begin_.push_back(0);
    for (const auto& set : vertex_sets) {
        if (set.empty())
            throw ParamError("neighbors: empty vertex set");
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (set[i] < 1 || set[i] > vertex_count)
                throw ParamError("neighbors: vertex " + std::to_string(set[i]) + " out of range");
            if (i > 0 && set[i] <= set[i - 1])
                throw ParamError("neighbors: vertex set not strictly increasing");
        }
        rel.verts_.insert(rel.verts_.end(), set.begin(), set.end());
        rel.verts_begin_.push_back(rel.verts_.size());
    }
    return rel;
}

NeighborRelation NeighborRelation::clause_cooccurrence(const Cnf& cnf) {
    std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(cnf.variable_count));
    for (const auto& clause : cnf.clauses) {
        for (int a : clause) {
            for (int b : clause) {
                int u = std::abs(a), v = std::abs(b);
                if (u != v)
                    adjacency[u - 1].push_back(v);
            }
        }
    }
    return from_adjacency(std::move(adjacency));
}

bool NeighborRelation::adjacent(int u, int v) const {
    if (u == v)
        return false;
    if (u < 1 || v < 1 || u > variable_count_ || v > variable_count_)
        throw ParamError("neighbors: variable out of range");
    if (vertex_mode()) {
        auto a = vertex_set(u);
        auto b = vertex_set(v);
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] == b[j])
                return true;
            if (a[i] < b[j])
                ++i;
            else
                ++j;
        }
        return false;
    }
    const auto& list = adjacency_[u - 1];
    return std::binary_search(list.begin(), list.end(), v);
}

SearchState::SearchState(const Cnf& cnf, const NeighborRelation& neighbors)
    : cnf_(cnf), neighbors_(neighbors) {
    if (neighbors.variable_count() != cnf.variable_count)
        throw ParamError("search: neighbor relation covers " +
                         std::to_string(neighbors.variable_count()) + " variables, CNF has " +
                         std::to_string(cnf.variable_count));
    nvars_ = cnf.variable_count;
    nclauses_ = cnf.clauses.size();

    clause_begin_.reserve(nclauses_ + 1);
    clause_begin_.push_back(0);
    for (const auto& clause : cnf.clauses) {
        lits_.insert(lits_.end(), clause.begin(), clause.end());
        clause_begin_.push_back(lits_.size());
    }

    std::vector<std::size_t> counts(static_cast<std::size_t>(nvars_) + 1, 0);
    for (int lit : lits_)
        ++counts[static_cast<std::size_t>(std::abs(lit))];
    occ_begin_.assign(nvars_ + 2, 0);
    for (int v = 0; v <= nvars_; ++v)
        occ_begin_[v + 1] = occ_begin_[v] + counts[v];
    occ_.resize(lits_.size());
    std::vector<std::size_t> fill(occ_begin_.begin(), occ_begin_.end() - 1);
    for (std::size_t c = 0; c < nclauses_; ++c)
        for (std::size_t i = clause_begin_[c]; i < clause_begin_[c + 1]; ++i)
            occ_[fill[static_cast<std::size_t>(std::abs(lits_[i]))]++] = static_cast<int>(c);

    n_true_.assign(nclauses_, 0);
    score_.assign(nvars_ + 1, 0);
    subscore_.assign(nvars_ + 1, 0);
    last_flip_.assign(nvars_ + 1, 0);
    unsat_pos_.assign(nclauses_, -1);
    positive_pos_.assign(nvars_ + 1, -1);
    dirty_mark_.assign(nvars_ + 1, 0);
    if (neighbors_.vertex_mode())
        vertex_touch_.assign(static_cast<std::size_t>(neighbors_.vertex_count_) + 1, 0);
    else
        nc_flag_.assign(nvars_ + 1, 1);
}

void SearchState::unsat_insert(int c) {
    unsat_pos_[c] = static_cast<std::int32_t>(unsat_.size());
    unsat_.push_back(c);
}

void SearchState::unsat_remove(int c) {
    std::int32_t pos = unsat_pos_[c];
    int last = unsat_.back();
    unsat_[pos] = last;
    unsat_pos_[last] = pos;
    unsat_.pop_back();
    unsat_pos_[c] = -1;
}

void SearchState::refresh_positive(int v) {
    bool want = score_[v] > 0;
    bool have = positive_pos_[v] >= 0;
    if (want == have)
        return;
    if (want) {
        positive_pos_[v] = static_cast<std::int32_t>(positive_.size());
        positive_.push_back(v);
    } else {
        std::int32_t pos = positive_pos_[v];
        int last = positive_.back();
        positive_[pos] = last;
        positive_pos_[last] = pos;
        positive_.pop_back();
        positive_pos_[v] = -1;
    }
}

void SearchState::mark_dirty(int v) {
    if (dirty_mark_[v] != dirty_epoch_) {
        dirty_mark_[v] = dirty_epoch_;
        dirty_.push_back(v);
    }
}

void SearchState::reset(const Assignment& assignment) {
    if (assignment.size() != static_cast<std::size_t>(nvars_) + 1)
        throw ParamError("search: assignment size mismatch");
    for (int v = 1; v <= nvars_; ++v)
        if (assignment[v] != 0 && assignment[v] != 1)
            throw ParamError("search: variable " + std::to_string(v) + " unassigned");
    assign_ = assignment;
    flips_ = 0;
    std::fill(last_flip_.begin(), last_flip_.end(), 0);
    std::fill(score_.begin(), score_.end(), 0);
    std::fill(subscore_.begin(), subscore_.end(), 0);
    unsat_.clear();
    std::fill(unsat_pos_.begin(), unsat_pos_.end(), -1);
    positive_.clear();
    std::fill(positive_pos_.begin(), positive_pos_.end(), -1);

    for (std::size_t c = 0; c < nclauses_; ++c) {
        std::int32_t t = 0;
        for (std::size_t i = clause_begin_[c]; i < clause_begin_[c + 1]; ++i) {
            int lit = lits_[i];
            if (assign_[std::abs(lit)] == (lit > 0 ? 1 : 0))
                ++t;
        }
        n_true_[c] = t;
        if (t == 0)
            unsat_insert(static_cast<int>(c));
        for (std::size_t i = clause_begin_[c]; i < clause_begin_[c + 1]; ++i) {
            int lit = lits_[i];
            int v = std::abs(lit);
            bool b = assign_[v] == (lit > 0 ? 1 : 0);
            if (b) {
                if (t == 1) --score_[v];
                if (t == 2) --subscore_[v];
            } else {
                if (t == 0) ++score_[v];
                if (t == 1) ++subscore_[v];
            }
        }
    }
    for (int v = 1; v <= nvars_; ++v)
        refresh_positive(v);

    // every variable starts eligible: a touch counter of 1 beats the
    // last-flip counter of 0 until the variable itself first flips
    if (neighbors_.vertex_mode())
        std::fill(vertex_touch_.begin(), vertex_touch_.end(), 1);
    else
        std::fill(nc_flag_.begin(), nc_flag_.end(), 1);
}

bool SearchState::nc(int v) const {
    if (!neighbors_.vertex_mode())
        return nc_flag_[v] != 0;
    for (int x : neighbors_.vertex_set(v))
        if (vertex_touch_[x] > last_flip_[v])
            return true;
    return false;
}

void SearchState::flip(int v) {
    if (v < 1 || v > nvars_)
        throw ParamError("search: flip of variable out of range");
    ++dirty_epoch_;
    dirty_.clear();
    bool old_true = assign_[v] != 0;

    for (std::size_t i = occ_begin_[v]; i < occ_begin_[v + 1]; ++i) {
        int c = occ_[i];
        std::int32_t t = n_true_[c];
        int sign_v = 0;
        for (std::size_t j = clause_begin_[c]; j < clause_begin_[c + 1]; ++j) {
            int lit = lits_[j];
            int u = std::abs(lit);
            bool b = assign_[u] == (lit > 0 ? 1 : 0);
            if (u == v)
                sign_v = lit;
            if (b) {
                if (t == 1) ++score_[u];
                if (t == 2) ++subscore_[u];
            } else {
                if (t == 0) --score_[u];
                if (t == 1) --subscore_[u];
            }
            mark_dirty(u);
        }
        bool v_was_true = old_true == (sign_v > 0);
        std::int32_t t_new = t + (v_was_true ? -1 : 1);
        n_true_[c] = t_new;
        if (t == 0)
            unsat_remove(c);
        else if (t_new == 0)
            unsat_insert(c);
        for (std::size_t j = clause_begin_[c]; j < clause_begin_[c + 1]; ++j) {
            int lit = lits_[j];
            int u = std::abs(lit);
            bool b = u == v ? (!old_true) == (lit > 0) : assign_[u] == (lit > 0 ? 1 : 0);
            if (b) {
                if (t_new == 1) --score_[u];
                if (t_new == 2) --subscore_[u];
            } else {
                if (t_new == 0) ++score_[u];
                if (t_new == 1) ++subscore_[u];
            }
        }
    }

    assign_[v] = old_true ? 0 : 1;
    ++flips_;
    last_flip_[v] = flips_;
    if (neighbors_.vertex_mode()) {
        for (int x : neighbors_.vertex_set(v))
            vertex_touch_[x] = flips_;
    } else {
        nc_flag_[v] = 0;
        for (int u : neighbors_.adjacency_[v - 1])
            nc_flag_[u] = 1;
    }
    for (int u : dirty_)
        refresh_positive(u);
}

int tiebreak_h(const SearchState& state, std::span<const int> candidates) {
    if (candidates.empty())
        throw ParamError("tiebreak: empty candidate set");
    int best = 0;
    for (int v : candidates) {
        if (best == 0) {
            best = v;
            continue;
        }
        int sv = state.score(v), sb = state.score(best);
        if (sv != sb) {
            if (sv > sb) best = v;
            continue;
        }
        int uv = state.subscore(v), ub = state.subscore(best);
        if (uv != ub) {
            if (uv < ub) best = v;
            continue;
        }
        std::uint64_t av = state.age(v), ab = state.age(best);
        if (av != ab) {
            if (av > ab) best = v;
            continue;
        }
        if (v < best)
            best = v;
    }
    return best;
}

namespace {

// Best greedy candidate (nc true, score > 0) under the H ordering, or 0.
int best_eligible(const SearchState& state) {
    int best = 0;
    for (int v : state.positive_score_vars()) {
        if (!state.nc(v))
            continue;
        if (best == 0) {
            best = v;
            continue;
        }
        int sv = state.score(v), sb = state.score(best);
        if (sv != sb) {
            if (sv > sb) best = v;
            continue;
        }
        int uv = state.subscore(v), ub = state.subscore(best);
        if (uv != ub) {
            if (uv < ub) best = v;
            continue;
        }
        std::uint64_t av = state.age(v), ab = state.age(best);
        if (av != ab) {
            if (av > ab) best = v;
            continue;
        }
        if (v < best)
            best = v;
    }
    return best;
}

} // namespace

LocalSearchResult solve_local_search(const Cnf& cnf, const NeighborRelation& neighbors,
                                     const LocalSearchParams& params) {
    validate(cnf);
    LocalSearchResult result;
    for (const auto& clause : cnf.clauses)
        if (clause.empty())
            return result; // an empty clause can never be satisfied

    SearchState state(cnf, neighbors);
    std::mt19937_64 rng(params.seed);
    Assignment assignment = make_assignment(cnf.variable_count);
    std::vector<int> clause_vars;

    for (std::uint32_t restart = 0; restart < params.max_restarts; ++restart) {
        result.restarts_used = restart + 1;
        for (int v = 1; v <= cnf.variable_count; ++v)
            assignment[v] = static_cast<std::int8_t>(rng() & 1);
        state.reset(assignment);

        for (std::uint64_t step = 0; step < params.cutoff_flips; ++step) {
            if (state.unsat_clauses().empty()) {
                if (!satisfies(cnf, state.assignment()))
                    throw Error("local search produced a non-satisfying assignment"); // unreachable
                result.status = LsStatus::Sat;
                result.assignment = state.assignment();
                return result;
            }
            if (params.stop && params.stop->load(std::memory_order_relaxed))
                return result;

            int v = best_eligible(state);
            if (v == 0) {
                const auto& unsat = state.unsat_clauses();
                int c = unsat[static_cast<std::size_t>(rng() % unsat.size())];
                auto lits = state.clause_literals(c);
                // nc is a forbidding flag: skip variables none of whose
                // neighbors moved since their last flip, unless the whole
                // clause is forbidden. Without this the plateau walk cycles.
                clause_vars.clear();
                for (int lit : lits)
                    if (state.nc(std::abs(lit)))
                        clause_vars.push_back(std::abs(lit));
                if (clause_vars.empty())
                    for (int lit : lits)
                        clause_vars.push_back(std::abs(lit));
                v = tiebreak_h(state, clause_vars);
            }
            state.flip(v);
            ++result.total_flips;

            if (params.progress && result.total_flips % params.progress_interval == 0)
                *params.progress << "c flips=" << result.total_flips
                                 << " unsat=" << state.unsat_clauses().size()
                                 << " restarts=" << result.restarts_used << '\n';
        }
        if (state.unsat_clauses().empty()) {
            if (!satisfies(cnf, state.assignment()))
                throw Error("local search produced a non-satisfying assignment"); // unreachable
            result.status = LsStatus::Sat;
            result.assignment = state.assignment();
            return result;
        }
    }
    return result;
}

} // namespace ramsey
