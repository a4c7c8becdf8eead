#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/error.hpp"

namespace ramsey {

// Primal cardinality vector: the positive block-intersection sizes of a
// vertex subset, sorted non-increasingly. Always non-empty; every part >= 1.
class Pcv {
public:
    // Parts must already be non-increasing and positive.
    explicit Pcv(std::vector<int> parts);

    // Builds from raw per-block intersection counts: drops zeros, sorts
    // non-increasingly. Throws ParamError if every count is zero.
    static Pcv from_counts(std::span<const int> counts);

    int length() const { return static_cast<int>(parts_.size()); }
    int sum() const { return sum_; }
    int part(int i) const { return parts_[static_cast<std::size_t>(i)]; } // 0-based
    std::span<const int> parts() const { return parts_; }

    // A crossing vector touches at least two blocks.
    bool crossing() const { return parts_.size() >= 2; }

    // "(3,1)" — parsed back bit-exactly by parse().
    std::string str() const;
    static Pcv parse(std::string_view text);

    friend bool operator==(const Pcv&, const Pcv&) = default;

private:
    std::vector<int> parts_;
    int sum_ = 0;
};

// true iff b <=_c a: b is no longer than a and coordinatewise dominated by it.
bool contains(const Pcv& a, const Pcv& b);

// Canonical enumeration order: decreasing lexicographic on parts.
// Gives deterministic family listings and stable CNF variable numbering.
bool canonical_less(const Pcv& a, const Pcv& b);

struct CanonicalLess {
    bool operator()(const Pcv& a, const Pcv& b) const { return canonical_less(a, b); }
};

enum class FamilyKind { Vk, Pp, Qq };

std::string_view family_name(FamilyKind kind);

// A finite family of vectors with total s and at most d parts, in canonical
// order. Pp caps the largest part at s-2, Qq at s-1; Vk is uncapped.
struct PcvFamily {
    FamilyKind kind = FamilyKind::Vk;
    int s = 0;
    int d = 0;
    std::vector<Pcv> members;
};

// All partitions of s into at most d parts. s >= 1, d >= 1.
PcvFamily enum_vk(int s, int d);

// Partitions of p into at most d parts with largest part <= p-2. May be
// empty; callers treat an empty family as vacuously satisfiable. p >= 3, d >= 2.
PcvFamily enum_pp(int p, int d);

// Partitions of q into at most d parts with largest part <= q-1, i.e. all
// partitions of q except (q) itself. q >= 2, d >= 2.
PcvFamily enum_qq(int q, int d);

} // namespace ramsey
