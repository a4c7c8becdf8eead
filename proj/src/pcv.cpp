#include "ramsey/pcv.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace ramsey {

Pcv::Pcv(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty())
        throw ParamError("pcv: empty part list");
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1)
            throw ParamError("pcv: part " + std::to_string(parts_[i]) + " is not positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw ParamError("pcv: parts not non-increasing in " + str());
    }
    sum_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Pcv Pcv::from_counts(std::span<const int> counts) {
    std::vector<int> kept;
    kept.reserve(counts.size());
    for (int c : counts) {
        if (c < 0)
            throw ParamError("pcv: negative intersection count " + std::to_string(c));
        if (c > 0)
            kept.push_back(c);
    }
    if (kept.empty())
        throw ParamError("pcv: degenerate subset, all intersection counts are zero");
    std::sort(kept.begin(), kept.end(), std::greater<int>());
    return Pcv(std::move(kept));
}

std::string Pcv::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i > 0)
            out += ',';
        out += std::to_string(parts_[i]);
    }
    out += ')';
    return out;
}

Pcv Pcv::parse(std::string_view text) {
    if (text.size() < 3 || text.front() != '(' || text.back() != ')')
        throw ParseError("pcv: expected \"(a,b,...)\", got \"" + std::string(text) + "\"");
    std::vector<int> parts;
    std::string_view body = text.substr(1, text.size() - 2);
    while (!body.empty()) {
        std::size_t comma = body.find(',');
        std::string_view tok = body.substr(0, comma);
        int value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw ParseError("pcv: bad part \"" + std::string(tok) + "\"");
        parts.push_back(value);
        if (comma == std::string_view::npos)
            break;
        body.remove_prefix(comma + 1);
        if (body.empty())
            throw ParseError("pcv: trailing comma in \"" + std::string(text) + "\"");
    }
    try {
        return Pcv(std::move(parts));
    } catch (const ParamError& e) {
        throw ParseError(e.what());
    }
}

bool contains(const Pcv& a, const Pcv& b) {
    if (b.length() > a.length())
        return false;
    for (int i = 0; i < b.length(); ++i)
        if (b.part(i) > a.part(i))
            return false;
    return true;
}

bool canonical_less(const Pcv& a, const Pcv& b) {
    return std::lexicographical_compare(b.parts().begin(), b.parts().end(),
                                        a.parts().begin(), a.parts().end());
}

std::string_view family_name(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::Vk: return "V";
    case FamilyKind::Pp: return "P";
    case FamilyKind::Qq: return "Q";
    }
    return "?";
}

namespace {

// Emits partitions of `remaining` into at most `slots` parts, each <= maxpart,
// largest value first, so the overall listing is decreasing-lexicographic.
void emit_partitions(int remaining, int maxpart, int slots, std::vector<int>& acc,
                     std::vector<Pcv>& out) {
    if (remaining == 0) {
        out.emplace_back(acc);
        return;
    }
    if (slots == 0)
        return;
    int hi = std::min(maxpart, remaining);
    for (int v = hi; v >= 1; --v) {
        if (static_cast<long long>(v) * slots < remaining)
            break; // even v in every slot cannot reach the target
        acc.push_back(v);
        emit_partitions(remaining - v, v, slots - 1, acc, out);
        acc.pop_back();
    }
}

PcvFamily enumerate(FamilyKind kind, int s, int d, int cap) {
    PcvFamily family{kind, s, d, {}};
    std::vector<int> acc;
    if (cap >= 1)
        emit_partitions(s, cap, d, acc, family.members);
    return family;
}

} // namespace

PcvFamily enum_vk(int s, int d) {
    if (s < 1 || d < 1)
        throw ParamError("enum_vk: need s >= 1 and d >= 1");
    return enumerate(FamilyKind::Vk, s, d, s);
}

PcvFamily enum_pp(int p, int d) {
    if (p < 3 || d < 2)
        throw ParamError("enum_pp: need p >= 3 and d >= 2");
    return enumerate(FamilyKind::Pp, p, d, p - 2);
}

PcvFamily enum_qq(int q, int d) {
    if (q < 2 || d < 2)
        throw ParamError("enum_qq: need q >= 2 and d >= 2");
    return enumerate(FamilyKind::Qq, q, d, q - 1);
}

} // namespace ramsey
