#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ramsey/direct.hpp"
#include "ramsey/pasting.hpp"

namespace ramsey {

// Bound values grow like d^p along rule chains, so cells are exact big
// integers.
using BigInt = boost::multiprecision::cpp_int;

// Immutable provenance node. Rule nodes carry one premise; seed nodes none.
struct ProvNode {
    std::string label;  // "R1".."R6", "X<k>", "symmetry", "padding-p/q", "seed-*"
    std::string detail; // instantiated guard and arithmetic, or seed description
    int k = 0;
    int p = 0;
    int q = 0;
    BigInt value;
    int d = 0; // recurrence factor; 0 for seeds, symmetry and padding
    std::vector<std::shared_ptr<const ProvNode>> premises;
};

using ProvPtr = std::shared_ptr<const ProvNode>;

struct BoundFact {
    int k = 0;
    int p = 0;
    int q = 0;
    BigInt value;
    ProvPtr provenance;
};

// A lifting rule r_k(p,q) >= d*(r_k(p-1,q) - 1) + 1 with its applicability
// guard. Dynamically installed rules keep the solved colorings that justify
// them so they can be re-verified at any time.
struct RecurrenceRule {
    struct Witness {
        int p0 = 0;
        int q0 = 0;
        int d = 0;
        PcvColoring coloring;
    };

    std::string id;
    std::function<bool(int k, int p, int q)> guard;
    std::function<int(int k, int p, int q)> factor;
    std::string justification;
    std::vector<Witness> witnesses;
};

// The five theorem rules, guards verbatim:
//   R1: k=4, p>=6, q>=5, d=2
//   R2: k=4, p>=6, q>=7, d=p-1
//   R3: 5<=k<=25, p>=k+2, q>=k+2, d=p-1
//   R4: 8<=k<=25, k!=9, p>=k+2, q>=k+1, d=p-1
//   R5: even k>=4: p>=k+2, q>=k+1; odd k>=5: p>=k+2, q>=k+2; d=2
//   R6: k>=4, p>=k+2, q>=k+1, d=floor((q-1)/(k-2)) whenever that is >= 2
std::vector<RecurrenceRule> builtin_rules();

struct ExtendOutcome {
    bool installed = false;
    std::optional<RecurrenceRule> rule;
    std::string message;
};

// For k > 25: solves the pasting CNFs (k,k+2,k+2,k+1) and (k,k+3,k+2,k+2)
// with the complete solver. Installs a d=p-1 rule for this k only when both
// are SAT and the decoded colorings verify; never extrapolates without a
// solved witness.
ExtendOutcome extend_rules(int k, std::uint64_t node_budget = 0);

struct BoundLimits {
    int k_max = 4;
    int p_max = 13;
    int q_max = 13;
};

struct CertificateRejectedError : Error {
    CertificateRejectedError(std::string message, CliqueWitness witness);
    CliqueWitness witness;
};

struct SeedOptions {
    BoundLimits limits;
    std::vector<CertificateFile> certificates; // verified before adoption
    int workers = 1;                           // for certificate verification
};

// Trivial identities r_k(p,k) = p and r_k(k,q) = q across the grid, the base
// fact r_k(k+1,k+1) >= k+1, and one fact per certificate that survives
// verification. A failing certificate raises CertificateRejectedError.
std::vector<BoundFact> seed_facts(const SeedOptions& options);

struct BoundTable {
    std::map<std::tuple<int, int, int>, BoundFact> cells;

    const BoundFact* find(int k, int p, int q) const;
};

// Least fixpoint of the rules plus color-swap symmetry and monotone padding,
// every cell keeping the maximum value with its provenance. Ties go to the
// candidate evaluated first (rules in id order, then symmetry, then padding).
BoundTable compute_table(const std::vector<BoundFact>& facts,
                         const std::vector<RecurrenceRule>& rules,
                         const BoundLimits& limits);

// Human-readable provenance tree down to the seed leaves.
std::string derivation(const BoundFact& fact);

// Compact rule trail following first premises, e.g. "R2;R2;symmetry;R1;seed-cert".
std::string rule_chain(const BoundFact& fact);

// Re-checks a provenance tree bottom-up: every guard holds, every factor
// matches, every value re-derives arithmetically. Throws Error on mismatch.
void replay(const BoundFact& fact, const std::vector<RecurrenceRule>& rules);

// Aligned text grid for one k (rows p, columns q).
std::string table_text(const BoundTable& table, int k, const BoundLimits& limits);

// "k,p,q,value,chain" lines for one k.
std::string table_csv(const BoundTable& table, int k, const BoundLimits& limits);

} // namespace ramsey
