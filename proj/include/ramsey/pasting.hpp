#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ramsey/cnf.hpp"
#include "ramsey/pcv.hpp"

namespace ramsey {

enum class Color : std::uint8_t { Red = 0, Blue = 1 };

std::string_view color_name(Color color);
Color parse_color(std::string_view text);

// A uniform rule for coloring crossing edges: every edge with the same
// primal cardinality vector gets the same color. Keys have part-sum k and at
// least two parts.
struct PcvColoring {
    int k = 0;
    std::map<Pcv, Color, CanonicalLess> entries;
};

// One CNF variable per crossing vector of V_k(d), numbered from 1 in
// canonical order.
struct PastingInstance {
    int k = 0;
    int p = 0;
    int q = 0;
    int d = 0;
    std::vector<Pcv> variables; // variable i+1 <-> variables[i]

    int variable_of(const Pcv& u) const; // 0 when absent
};

// Raised at build time when some family member has no crossing minorant: the
// clause would be empty, so these parameters cannot be pasted with crossing
// edges alone.
struct ImmediatelyUnsatError : Error {
    ImmediatelyUnsatError(FamilyKind kind, Pcv uncovered);
    FamilyKind kind;
    Pcv uncovered;
};

// One clause per P_p(d) member (positive literals of every contained crossing
// vector), then one per Q_q(d) member (negative literals), both in canonical
// family order. Requires k >= 2, d >= 2, p >= k+1, q >= k+1.
std::pair<PastingInstance, Cnf> build_pasting_cnf(int k, int p, int q, int d);

// true -> blue, false -> red. The assignment must cover every instance
// variable (unassigned entries raise ParamError).
PcvColoring decode_coloring(const PastingInstance& instance, const Assignment& assignment);

struct PasteWitness {
    FamilyKind kind; // Pp or Qq
    Pcv uncovered;
};

struct PasteVerdict {
    bool valid = false;
    std::optional<PasteWitness> witness; // present iff invalid

    explicit operator bool() const { return valid; }
};

// Checks that every P_p(d) member contains a blue key and every Q_q(d) member
// contains a red key. chi must be total on the crossing part of V_k(d); the
// witness is the first failure in canonical order.
PasteVerdict verify_pasting_coloring(const PcvColoring& chi, int p, int q, int d);

// The two explicit 4-uniform colorings.
PcvColoring chi1_4();
PcvColoring chi2_4();

// d = 2 family built from chi1_4 by repeatedly shifting one endpoint into the
// larger side; at each even size the balanced vector gets the color opposite
// to its (v1+1, v2-1) companion. k >= 4.
PcvColoring two_divide(int k);

// Red exactly on (k-1, 1), blue on every other crossing vector of V_k(d).
// k >= 4, d >= 2.
PcvColoring large_q(int k, int d);

// Line-oriented text format:
//   pcv-coloring k=<k> d=<d>
//   <pcv> <red|blue>        (canonical order)
void write_pcv_coloring(std::ostream& os, const PcvColoring& chi, int d);

struct ColoringFile {
    PcvColoring coloring;
    int d = 0;
};

ColoringFile read_pcv_coloring(std::istream& is);

} // namespace ramsey
