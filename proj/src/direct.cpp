#include "ramsey/direct.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

namespace ramsey {

Binomial::Binomial(int n_max, int k_max) : n_max_(n_max), k_max_(k_max) {
    if (n_max < 0 || k_max < 0 || n_max > 500 || k_max > 16)
        throw ParamError("binomial: unsupported table size");
    table_.assign(static_cast<std::size_t>(n_max + 1) * (k_max + 1), 0);
    for (int n = 0; n <= n_max; ++n) {
        table_[static_cast<std::size_t>(n) * (k_max + 1)] = 1;
        for (int k = 1; k <= std::min(n, k_max); ++k) {
            std::uint64_t a = table_[static_cast<std::size_t>(n - 1) * (k_max + 1) + k];
            std::uint64_t b = table_[static_cast<std::size_t>(n - 1) * (k_max + 1) + k - 1];
            if (a > UINT64_MAX - b)
                throw ParamError("binomial: overflow at C(" + std::to_string(n) + "," +
                                 std::to_string(k) + ")");
            table_[static_cast<std::size_t>(n) * (k_max + 1) + k] = a + b;
        }
    }
}

std::uint64_t Binomial::operator()(int n, int k) const {
    if (k < 0 || k > n)
        return 0;
    if (n > n_max_ || k > k_max_)
        throw ParamError("binomial: C(" + std::to_string(n) + "," + std::to_string(k) +
                         ") outside table");
    return table_[static_cast<std::size_t>(n) * (k_max_ + 1) + k];
}

static void check_subset(std::span<const int> subset, int n, int k) {
    if (static_cast<int>(subset.size()) != k)
        throw ParamError("edge: expected " + std::to_string(k) + " vertices, got " +
                         std::to_string(subset.size()));
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (subset[i] < 1 || subset[i] > n)
            throw ParamError("edge: vertex " + std::to_string(subset[i]) + " outside [1," +
                             std::to_string(n) + "]");
        if (i > 0 && subset[i] <= subset[i - 1])
            throw ParamError("edge: vertices not strictly increasing");
    }
}

std::uint64_t rank_edge(std::span<const int> subset, int n, int k) {
    check_subset(subset, n, k);
    Binomial binom(n, k);
    std::uint64_t rank = 0;
    for (int i = 0; i < k; ++i)
        rank += binom(subset[i] - 1, i + 1);
    return rank;
}

std::vector<int> unrank_edge(std::uint64_t rank, int n, int k) {
    if (k < 1 || k > n)
        throw ParamError("edge: need 1 <= k <= n");
    Binomial binom(n, k);
    if (rank >= binom(n, k))
        throw ParamError("edge: rank " + std::to_string(rank) + " outside [0, C(n,k))");
    std::vector<int> subset(static_cast<std::size_t>(k));
    int hi = n;
    for (int j = k; j >= 1; --j) {
        int c = hi;
        while (binom(c - 1, j) > rank)
            --c;
        subset[j - 1] = c;
        rank -= binom(c - 1, j);
        hi = c - 1;
    }
    return subset;
}

EdgeColoring::EdgeColoring(int n, int k) : n_(n), k_(k) {
    if (k < 1 || n < k)
        throw ParamError("coloring: need 1 <= k <= n");
    edge_count_ = Binomial(n, k)(n, k);
    bits_.assign((edge_count_ + 63) / 64, 0);
}

void EdgeColoring::set_blue(std::uint64_t rank, bool value) {
    if (rank >= edge_count_)
        throw ParamError("coloring: edge rank out of range");
    if (value)
        bits_[rank >> 6] |= std::uint64_t(1) << (rank & 63);
    else
        bits_[rank >> 6] &= ~(std::uint64_t(1) << (rank & 63));
}

EdgeColoring EdgeColoring::color_swapped() const {
    EdgeColoring other(n_, k_);
    for (std::size_t w = 0; w < bits_.size(); ++w)
        other.bits_[w] = ~bits_[w];
    // keep unused tail bits zero
    std::uint64_t tail = edge_count_ & 63;
    if (tail != 0)
        other.bits_.back() &= (std::uint64_t(1) << tail) - 1;
    return other;
}

DirectEncoding build_direct_cnf(int n, int k) {
    if (k < 2)
        throw ParamError("direct: k must be at least 2");
    if (n <= k)
        throw ParamError("direct: need n >= k+1");
    Binomial binom(n, k + 1);
    if (binom(n, k) > std::uint64_t(INT_MAX))
        throw ParamError("direct: C(n,k) exceeds the supported variable range");
    if (binom(n, k + 1) > std::uint64_t(60'000'000))
        throw ParamError("direct: encoding too large to materialize");

    Cnf cnf;
    cnf.variable_count = static_cast<int>(binom(n, k));
    cnf.clauses.reserve(2 * static_cast<std::size_t>(binom(n, k + 1)));

    int m = k + 1;
    std::vector<int> s(static_cast<std::size_t>(m));
    std::iota(s.begin(), s.end(), 1);
    std::vector<std::uint64_t> lpre(static_cast<std::size_t>(m) + 1);
    std::vector<std::uint64_t> rsuf(static_cast<std::size_t>(m) + 1);
    std::vector<int> clause(static_cast<std::size_t>(m));
    while (true) {
        lpre[0] = 0;
        for (int i = 0; i < m; ++i)
            lpre[i + 1] = lpre[i] + binom(s[i] - 1, i + 1);
        rsuf[m] = 0;
        for (int i = m - 1; i >= 0; --i)
            rsuf[i] = rsuf[i + 1] + binom(s[i] - 1, i);
        for (int j = 0; j < m; ++j)
            clause[j] = static_cast<int>(lpre[j] + rsuf[j + 1]) + 1;
        std::sort(clause.begin(), clause.end());
        cnf.clauses.emplace_back(clause.begin(), clause.end());
        for (int& lit : clause)
            lit = -lit;
        std::reverse(clause.begin(), clause.end());
        cnf.clauses.emplace_back(clause.begin(), clause.end());

        // colex successor: bump the lowest index that can grow, reset below it
        int i = 0;
        while (i < m - 1 && s[i] + 1 == s[i + 1])
            ++i;
        if (s[i] == n - (m - 1 - i))
            break;
        ++s[i];
        std::iota(s.begin(), s.begin() + i, 1);
    }

    std::vector<std::vector<int>> vertex_sets;
    vertex_sets.reserve(static_cast<std::size_t>(cnf.variable_count));
    std::vector<int> e(static_cast<std::size_t>(k));
    std::iota(e.begin(), e.end(), 1);
    while (true) {
        vertex_sets.emplace_back(e.begin(), e.end());
        int i = 0;
        while (i < k - 1 && e[i] + 1 == e[i + 1])
            ++i;
        if (e[i] == n - (k - 1 - i))
            break;
        ++e[i];
        std::iota(e.begin(), e.begin() + i, 1);
    }

    return {std::move(cnf), NeighborRelation::from_vertex_sets(n, std::move(vertex_sets))};
}

namespace {

// m-subsets of [1..n] with fixed smallest element, lexicographic order.
struct SubsetScanner {
    int n = 0;
    int m = 0;
    std::vector<int> s;

    bool init(int n_, int m_, int first) {
        n = n_;
        m = m_;
        s.resize(static_cast<std::size_t>(m));
        s[0] = first;
        for (int i = 1; i < m; ++i)
            s[i] = first + i;
        return first + m - 1 <= n;
    }

    bool advance() {
        for (int i = m - 1; i >= 1; --i) {
            if (s[i] < n - (m - 1 - i)) {
                ++s[i];
                for (int j = i + 1; j < m; ++j)
                    s[j] = s[j - 1] + 1;
                return true;
            }
        }
        return false;
    }
};

// 0 = mixed, 1 = all red, 2 = all blue, for |s| = k+1 via shared prefix sums.
int mono_kplus1(const EdgeColoring& col, const Binomial& binom, const std::vector<int>& s,
                std::uint64_t* lpre, std::uint64_t* rsuf) {
    int m = static_cast<int>(s.size());
    lpre[0] = 0;
    for (int i = 0; i < m; ++i)
        lpre[i + 1] = lpre[i] + binom(s[i] - 1, i + 1);
    rsuf[m] = 0;
    for (int i = m - 1; i >= 0; --i)
        rsuf[i] = rsuf[i + 1] + binom(s[i] - 1, i);
    bool blue0 = col.blue(lpre[0] + rsuf[1]);
    for (int j = 1; j < m; ++j)
        if (col.blue(lpre[j] + rsuf[j + 1]) != blue0)
            return 0;
    return blue0 ? 2 : 1;
}

// all k-sub-edges of s colored want_blue?
bool all_color(const EdgeColoring& col, const Binomial& binom, const std::vector<int>& s,
               bool want_blue) {
    int m = static_cast<int>(s.size());
    int k = col.k();
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        std::uint64_t rank = 0;
        for (int j = 0; j < k; ++j)
            rank += binom(s[idx[j]] - 1, j + 1);
        if (col.blue(rank) != want_blue)
            return false;
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i)
            --i;
        if (i < 0)
            return true;
        ++idx[i];
        for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

// 0 = mixed, 1 = all red, 2 = all blue, any subset size.
int mono_general(const EdgeColoring& col, const Binomial& binom, const std::vector<int>& s) {
    std::uint64_t first = 0;
    for (int j = 0; j < col.k(); ++j)
        first += binom(s[j] - 1, j + 1);
    bool blue0 = col.blue(first);
    return all_color(col, binom, s, blue0) ? (blue0 ? 2 : 1) : 0;
}

int resolve_workers(int workers) {
    return workers < 1 ? 1 : workers;
}

// Scans m-subsets block by block (block = smallest element). check(s) returns
// 0 to keep going or 1/2 naming the violating color. The returned witness is
// the first in lex order regardless of worker count.
template <typename Check>
std::optional<CliqueWitness> scan_for_witness(int n, int m, int workers, Check check) {
    if (m > n)
        return std::nullopt;
    int blocks = n - m + 1;
    std::atomic<int> next_block{1};
    std::atomic<int> best_block{INT_MAX};
    std::mutex mtx;
    std::optional<CliqueWitness> best;

    auto work = [&]() {
        SubsetScanner scan;
        while (true) {
            int b = next_block.fetch_add(1);
            if (b > blocks || b > best_block.load())
                break;
            if (!scan.init(n, m, b))
                continue;
            do {
                int mono = check(scan.s);
                if (mono != 0) {
                    std::lock_guard<std::mutex> lock(mtx);
                    if (b < best_block.load()) {
                        best_block.store(b);
                        best = CliqueWitness{scan.s, mono == 1 ? Color::Red : Color::Blue};
                    }
                    break;
                }
            } while (scan.advance());
        }
    };

    int nworkers = std::min(resolve_workers(workers), blocks);
    if (nworkers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nworkers));
        for (int i = 0; i < nworkers; ++i)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }
    return best;
}

// Full scan, no early exit; sums check(s) outcomes into a census.
template <typename Check>
CliqueCensus scan_census(int n, int m, int workers, Check check) {
    CliqueCensus total;
    if (m > n)
        return total;
    int blocks = n - m + 1;
    std::atomic<int> next_block{1};
    std::mutex mtx;

    auto work = [&]() {
        CliqueCensus local;
        SubsetScanner scan;
        while (true) {
            int b = next_block.fetch_add(1);
            if (b > blocks)
                break;
            if (!scan.init(n, m, b))
                continue;
            do {
                int mono = check(scan.s);
                if (mono == 1)
                    ++local.red;
                else if (mono == 2)
                    ++local.blue;
            } while (scan.advance());
        }
        std::lock_guard<std::mutex> lock(mtx);
        total.red += local.red;
        total.blue += local.blue;
    };

    int nworkers = std::min(resolve_workers(workers), blocks);
    if (nworkers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nworkers));
        for (int i = 0; i < nworkers; ++i)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }
    return total;
}

} // namespace

CliqueVerdict verify_certificate(const EdgeColoring& coloring, int p, int q, int workers) {
    if (p < coloring.k() + 1 || q < coloring.k() + 1)
        throw ParamError("verify: need p, q >= k+1");
    Binomial binom(coloring.n(), coloring.k() + 1);
    int n = coloring.n();
    int k = coloring.k();

    std::optional<CliqueWitness> witness;
    if (p == q) {
        if (p == k + 1) {
            witness = scan_for_witness(n, p, workers, [&](const std::vector<int>& s) {
                thread_local std::vector<std::uint64_t> lpre, rsuf;
                lpre.resize(s.size() + 1);
                rsuf.resize(s.size() + 1);
                return mono_kplus1(coloring, binom, s, lpre.data(), rsuf.data());
            });
        } else {
            witness = scan_for_witness(n, p, workers, [&](const std::vector<int>& s) {
                return mono_general(coloring, binom, s);
            });
        }
    } else {
        witness = scan_for_witness(n, p, workers, [&](const std::vector<int>& s) {
            return all_color(coloring, binom, s, false) ? 1 : 0;
        });
        if (!witness)
            witness = scan_for_witness(n, q, workers, [&](const std::vector<int>& s) {
                return all_color(coloring, binom, s, true) ? 2 : 0;
            });
    }
    if (!witness)
        return {true, std::nullopt};
    // the witness must really be monochromatic
    if (!all_color(coloring, binom, witness->vertices, witness->color == Color::Blue))
        throw Error("verify: inconsistent clique witness"); // unreachable
    return {false, witness};
}

CliqueCensus count_monochromatic(const EdgeColoring& coloring, int p, int q, int workers) {
    if (p < coloring.k() + 1 || q < coloring.k() + 1)
        throw ParamError("census: need p, q >= k+1");
    Binomial binom(coloring.n(), coloring.k() + 1);
    int n = coloring.n();
    int k = coloring.k();

    if (p == q) {
        if (p == k + 1)
            return scan_census(n, p, workers, [&](const std::vector<int>& s) {
                thread_local std::vector<std::uint64_t> lpre, rsuf;
                lpre.resize(s.size() + 1);
                rsuf.resize(s.size() + 1);
                return mono_kplus1(coloring, binom, s, lpre.data(), rsuf.data());
            });
        return scan_census(n, p, workers, [&](const std::vector<int>& s) {
            return mono_general(coloring, binom, s);
        });
    }
    CliqueCensus red = scan_census(n, p, workers, [&](const std::vector<int>& s) {
        return all_color(coloring, binom, s, false) ? 1 : 0;
    });
    CliqueCensus blue = scan_census(n, q, workers, [&](const std::vector<int>& s) {
        return all_color(coloring, binom, s, true) ? 2 : 0;
    });
    return {red.red, blue.blue};
}

EdgeColoring coloring_from_assignment(const Assignment& assignment, int n, int k) {
    EdgeColoring coloring(n, k);
    if (assignment.size() != coloring.edge_count() + 1)
        throw ParamError("certificate: assignment covers " + std::to_string(assignment.size() - 1) +
                         " variables, expected C(n,k) = " + std::to_string(coloring.edge_count()));
    for (std::uint64_t r = 0; r < coloring.edge_count(); ++r) {
        std::int8_t value = assignment[r + 1];
        if (value != 0 && value != 1)
            throw ParamError("certificate: variable " + std::to_string(r + 1) + " unassigned");
        if (value)
            coloring.set_blue(r, true);
    }
    return coloring;
}

void write_certificate(std::ostream& os, const EdgeColoring& coloring, int p, int q) {
    os << "ramsey-cert n=" << coloring.n() << " k=" << coloring.k() << " p=" << p
       << " q=" << q << '\n';
    std::string bits(coloring.edge_count(), '0');
    for (std::uint64_t r = 0; r < coloring.edge_count(); ++r)
        if (coloring.blue(r))
            bits[r] = '1';
    os << bits << '\n';
}

CertificateFile read_certificate(std::istream& is) {
    std::string header;
    if (!std::getline(is, header))
        throw ParseError("certificate: empty input");
    std::istringstream hs(header);
    std::string tag;
    hs >> tag;
    if (tag != "ramsey-cert")
        throw ParseError("certificate: bad header \"" + header + "\"");
    int n = 0, k = 0, p = 0, q = 0;
    std::string kv;
    while (hs >> kv) {
        if (kv.rfind("n=", 0) == 0)
            n = std::stoi(kv.substr(2));
        else if (kv.rfind("k=", 0) == 0)
            k = std::stoi(kv.substr(2));
        else if (kv.rfind("p=", 0) == 0)
            p = std::stoi(kv.substr(2));
        else if (kv.rfind("q=", 0) == 0)
            q = std::stoi(kv.substr(2));
        else
            throw ParseError("certificate: unknown header field \"" + kv + "\"");
    }
    if (n < 1 || k < 1 || k > n || p < k + 1 || q < k + 1)
        throw ParseError("certificate: header parameters out of range");

    std::string bits;
    if (!std::getline(is, bits))
        throw ParseError("certificate: missing bit row");
    EdgeColoring coloring(n, k);
    if (bits.size() != coloring.edge_count())
        throw ParseError("certificate: expected " + std::to_string(coloring.edge_count()) +
                         " bits, got " + std::to_string(bits.size()));
    for (std::uint64_t r = 0; r < coloring.edge_count(); ++r) {
        if (bits[r] == '1')
            coloring.set_blue(r, true);
        else if (bits[r] != '0')
            throw ParseError("certificate: bit row may only contain '0' and '1'");
    }
    return {std::move(coloring), p, q};
}

} // namespace ramsey
