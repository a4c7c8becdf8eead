#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ramsey/cnf.hpp"
#include "ramsey/local_search.hpp"
#include "ramsey/pasting.hpp" // Color

namespace ramsey {

// Binomial coefficients as an explicit table; out-of-support asks throw.
class Binomial {
public:
    Binomial(int n_max, int k_max);
    std::uint64_t operator()(int n, int k) const;
    int n_max() const { return n_max_; }
    int k_max() const { return k_max_; }

private:
    int n_max_;
    int k_max_;
    std::vector<std::uint64_t> table_;
};

// Colexicographic rank of a strictly increasing k-subset of [1, n], in
// [0, C(n,k)). Prefix-stable: ranks do not change when n grows.
std::uint64_t rank_edge(std::span<const int> subset, int n, int k);
std::vector<int> unrank_edge(std::uint64_t rank, int n, int k);

// One bit per k-subset of [1, n] in colex rank order; 1 = blue, 0 = red.
class EdgeColoring {
public:
    EdgeColoring(int n, int k); // all red

    int n() const { return n_; }
    int k() const { return k_; }
    std::uint64_t edge_count() const { return edge_count_; }

    bool blue(std::uint64_t rank) const {
        return (bits_[rank >> 6] >> (rank & 63)) & 1u;
    }
    void set_blue(std::uint64_t rank, bool value);

    // swapping the colors turns a (p,q) certificate into a (q,p) one
    EdgeColoring color_swapped() const;

    friend bool operator==(const EdgeColoring&, const EdgeColoring&) = default;

private:
    int n_;
    int k_;
    std::uint64_t edge_count_;
    std::vector<std::uint64_t> bits_;
};

// Variables are the C(n,k) hyperedges; every (k+1)-subset contributes a
// clause of its k+1 positive sub-edge literals and the all-negative twin.
// The relation links edges sharing at least one endpoint. n >= k+1, k >= 2.
struct DirectEncoding {
    Cnf cnf;
    NeighborRelation neighbors;
};

DirectEncoding build_direct_cnf(int n, int k);

struct CliqueWitness {
    std::vector<int> vertices;
    Color color;
};

struct CliqueVerdict {
    bool valid = false;
    std::optional<CliqueWitness> witness; // present iff invalid

    explicit operator bool() const { return valid; }
};

// valid iff no p-subset has all its k-edges red and no q-subset has them all
// blue. Enumeration short-circuits per subset; the witness is deterministic
// (first failing subset in lex order) even with several workers.
CliqueVerdict verify_certificate(const EdgeColoring& coloring, int p, int q, int workers = 1);

// Full census of monochromatic cliques; never stops early, so its runtime
// upper-bounds verify_certificate on the same parameters.
struct CliqueCensus {
    std::uint64_t red = 0;
    std::uint64_t blue = 0;
};

CliqueCensus count_monochromatic(const EdgeColoring& coloring, int p, int q, int workers = 1);

// Variable i true -> bit i-1 blue. The assignment must cover exactly C(n,k)
// variables.
EdgeColoring coloring_from_assignment(const Assignment& assignment, int n, int k);

// Text format:
//   ramsey-cert n=<n> k=<k> p=<p> q=<q>
//   <C(n,k) chars of '0'/'1' in colex rank order>
void write_certificate(std::ostream& os, const EdgeColoring& coloring, int p, int q);

struct CertificateFile {
    EdgeColoring coloring;
    int p = 0;
    int q = 0;
};

CertificateFile read_certificate(std::istream& is);

} // namespace ramsey
