#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ramsey/pcv.hpp"

using namespace ramsey;

namespace {

Pcv pcv(std::initializer_list<int> parts) { return Pcv(std::vector<int>(parts)); }

// independent partition counter: partitions of n into at most k parts
long long partition_count(int n, int k) {
    if (n == 0)
        return 1;
    if (n < 0 || k == 0)
        return 0;
    return partition_count(n - k, k) + partition_count(n, k - 1);
}

// all non-increasing positive vectors dominated by w (v <=_c w)
void dominated_rec(const Pcv& w, int pos, int prev_cap, std::vector<int>& acc,
                   std::vector<Pcv>& out) {
    if (!acc.empty())
        out.push_back(Pcv(acc));
    if (pos == w.length())
        return;
    for (int v = std::min(prev_cap, w.part(pos)); v >= 1; --v) {
        acc.push_back(v);
        dominated_rec(w, pos + 1, v, acc, out);
        acc.pop_back();
    }
}

std::vector<Pcv> dominated_by(const Pcv& w) {
    std::vector<Pcv> out;
    std::vector<int> acc;
    dominated_rec(w, 0, w.part(0), acc, out);
    return out;
}

} // namespace

TEST_CASE("pcv construction from counts") {
    CHECK(Pcv::from_counts(std::vector<int>{2, 0, 3, 1}) == pcv({3, 2, 1}));
    CHECK(Pcv::from_counts(std::vector<int>{4}) == pcv({4}));
    CHECK(Pcv::from_counts(std::vector<int>{1, 1, 1, 1}) == pcv({1, 1, 1, 1}));
    CHECK_THROWS_AS(Pcv::from_counts(std::vector<int>{0, 0}), ParamError);
    CHECK_THROWS_AS(Pcv::from_counts(std::vector<int>{2, -1}), ParamError);
    CHECK_THROWS_AS(Pcv(std::vector<int>{1, 2}), ParamError);
    CHECK_THROWS_AS(Pcv(std::vector<int>{}), ParamError);
    CHECK_THROWS_AS(Pcv(std::vector<int>{2, 0}), ParamError);
}

TEST_CASE("pcv text round trip") {
    CHECK(pcv({3, 1}).str() == "(3,1)");
    CHECK(pcv({4}).str() == "(4)");
    CHECK(Pcv::parse("(3,1)") == pcv({3, 1}));
    CHECK(Pcv::parse("(17)") == pcv({17}));
    for (const Pcv& v : enum_vk(9, 9).members)
        CHECK(Pcv::parse(v.str()) == v);
    CHECK_THROWS_AS(Pcv::parse("3,1"), ParseError);
    CHECK_THROWS_AS(Pcv::parse("()"), ParseError);
    CHECK_THROWS_AS(Pcv::parse("(3,)"), ParseError);
    CHECK_THROWS_AS(Pcv::parse("(1,2)"), ParseError);
    CHECK_THROWS_AS(Pcv::parse("(a)"), ParseError);
}

TEST_CASE("containment basics") {
    CHECK(contains(pcv({4, 2}), pcv({2, 2})));
    CHECK(contains(pcv({3, 2}), pcv({3, 1})));
    CHECK_FALSE(contains(pcv({3, 3}), pcv({3, 1, 1})));
    CHECK(contains(pcv({3, 1}), pcv({3, 1})));
    CHECK_FALSE(contains(pcv({2, 2}), pcv({3, 1})));
}

TEST_CASE("family enumeration matches the hand-checked sets") {
    PcvFamily v42 = enum_vk(4, 2);
    REQUIRE(v42.members.size() == 3);
    CHECK(v42.members[0] == pcv({4}));
    CHECK(v42.members[1] == pcv({3, 1}));
    CHECK(v42.members[2] == pcv({2, 2}));

    CHECK(enum_vk(4, 7).members == enum_vk(4, 4).members);
    CHECK(enum_vk(4, 7).members.size() == 5);
    CHECK(enum_vk(1, 1).members == std::vector<Pcv>{pcv({1})});

    PcvFamily p62 = enum_pp(6, 2);
    REQUIRE(p62.members.size() == 2);
    CHECK(p62.members[0] == pcv({4, 2}));
    CHECK(p62.members[1] == pcv({3, 3}));
    for (const Pcv& v : enum_pp(6, 5).members) {
        CHECK(v.part(0) >= 2);
        CHECK(v.part(0) <= 4);
    }
    CHECK(enum_pp(3, 2).members.empty());

    PcvFamily q52 = enum_qq(5, 2);
    REQUIRE(q52.members.size() == 2);
    CHECK(q52.members[0] == pcv({4, 1}));
    CHECK(q52.members[1] == pcv({3, 2}));

    PcvFamily q75 = enum_qq(7, 5);
    CHECK(std::count(q75.members.begin(), q75.members.end(), pcv({3, 1, 1, 1, 1})) == 1);
    CHECK(std::count(q75.members.begin(), q75.members.end(), pcv({7})) == 0);
    CHECK(enum_qq(2, 2).members == std::vector<Pcv>{pcv({1, 1})});

    CHECK_THROWS_AS(enum_vk(0, 3), ParamError);
    CHECK_THROWS_AS(enum_pp(2, 2), ParamError);
    CHECK_THROWS_AS(enum_qq(5, 1), ParamError);
}

TEST_CASE("family invariants: sums, caps, order, distinctness") {
    for (int s = 1; s <= 10; ++s) {
        for (int d = 1; d <= 10; ++d) {
            PcvFamily fam = enum_vk(s, d);
            for (std::size_t i = 0; i < fam.members.size(); ++i) {
                CHECK(fam.members[i].sum() == s);
                CHECK(fam.members[i].length() <= d);
                if (i > 0)
                    CHECK(canonical_less(fam.members[i - 1], fam.members[i]));
            }
            if (d < 2 || s < 3)
                continue;
            for (const Pcv& v : enum_pp(s, d).members)
                CHECK(v.part(0) <= s - 2);
            for (const Pcv& v : enum_qq(s, d).members)
                CHECK(v.part(0) <= s - 1);
        }
    }
}

TEST_CASE("family sizes against an independent partition counter") {
    CHECK(enum_vk(4, 4).members.size() == 5);
    CHECK(enum_vk(5, 5).members.size() == 7);
    CHECK(enum_vk(6, 6).members.size() == 11);
    for (int s = 1; s <= 12; ++s)
        for (int d = 1; d <= s; ++d)
            CHECK(enum_vk(s, d).members.size() ==
                  static_cast<std::size_t>(partition_count(s, d)));
}

TEST_CASE("containment is a partial order on every enumerated family") {
    std::vector<Pcv> all;
    for (int s = 1; s <= 12; ++s)
        for (Pcv& v : enum_vk(s, 12).members)
            all.push_back(std::move(v));

    for (const Pcv& a : all)
        CHECK(contains(a, a));
    for (const Pcv& a : all)
        for (const Pcv& b : all)
            if (contains(a, b) && contains(b, a))
                CHECK(a == b);
    // c <=_c b and b <=_c a imply c <=_c a
    for (const Pcv& a : all)
        for (const Pcv& b : all) {
            if (!contains(a, b))
                continue;
            for (const Pcv& c : all)
                if (contains(b, c))
                    CHECK(contains(a, c));
        }
}

TEST_CASE("larger d never adds vectors beyond d = s") {
    for (int s = 1; s <= 12; ++s)
        for (int d = s; d <= 14; ++d)
            CHECK(enum_vk(s, d).members == enum_vk(s, s).members);
}

TEST_CASE("subset realization oracle on explicit block partitions") {
    std::mt19937_64 rng(20240917);
    for (int trial = 0; trial < 40; ++trial) {
        int d = 1 + static_cast<int>(rng() % 4);
        int universe = d * (2 + static_cast<int>(rng() % 3));
        std::vector<int> block_of(universe);
        for (int v = 0; v < universe; ++v)
            block_of[v] = static_cast<int>(rng() % d);

        std::vector<int> members;
        while (members.empty() || members.size() > 8) {
            members.clear();
            for (int v = 0; v < universe; ++v)
                if (rng() & 1)
                    members.push_back(v);
        }

        auto pcv_of = [&](const std::vector<int>& verts) {
            std::vector<int> counts(static_cast<std::size_t>(d), 0);
            for (int v : verts)
                ++counts[block_of[v]];
            return Pcv::from_counts(counts);
        };
        Pcv px = pcv_of(members);

        std::set<std::vector<int>> realized;
        std::size_t m = members.size();
        for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
            std::vector<int> sub;
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (std::size_t(1) << i))
                    sub.push_back(members[i]);
            Pcv py = pcv_of(sub);
            CHECK(contains(px, py)); // every subset's vector is dominated
            realized.insert({py.parts().begin(), py.parts().end()});
        }
        // and every dominated vector is realized by some subset
        for (const Pcv& v : dominated_by(px))
            CHECK(realized.count({v.parts().begin(), v.parts().end()}) == 1);
    }
}
