#include "ramsey/pasting.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace ramsey {

std::string_view color_name(Color color) {
    return color == Color::Red ? "red" : "blue";
}

Color parse_color(std::string_view text) {
    if (text == "red")
        return Color::Red;
    if (text == "blue")
        return Color::Blue;
    throw ParseError("coloring: unknown color \"" + std::string(text) + "\"");
}

int PastingInstance::variable_of(const Pcv& u) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i] == u)
            return static_cast<int>(i) + 1;
    return 0;
}

ImmediatelyUnsatError::ImmediatelyUnsatError(FamilyKind kind_, Pcv uncovered_)
    : Error("pasting: " + std::string(family_name(kind_)) + " member " + uncovered_.str() +
            " contains no crossing vector; the instance is unsatisfiable at build time"),
      kind(kind_), uncovered(std::move(uncovered_)) {}

static void check_instance_params(int k, int p, int q, int d) {
    if (k < 2)
        throw ParamError("pasting: k must be at least 2");
    if (d < 2)
        throw ParamError("pasting: d must be at least 2");
    if (p < k + 1 || q < k + 1)
        throw ParamError("pasting: need p, q >= k+1");
}

std::pair<PastingInstance, Cnf> build_pasting_cnf(int k, int p, int q, int d) {
    check_instance_params(k, p, q, d);

    PastingInstance instance;
    instance.k = k;
    instance.p = p;
    instance.q = q;
    instance.d = d;
    for (Pcv& u : enum_vk(k, d).members)
        if (u.crossing())
            instance.variables.push_back(std::move(u));

    Cnf cnf;
    cnf.variable_count = static_cast<int>(instance.variables.size());

    auto add_clauses = [&](const PcvFamily& family, int sign) {
        for (const Pcv& v : family.members) {
            std::vector<int> clause;
            for (std::size_t i = 0; i < instance.variables.size(); ++i)
                if (contains(v, instance.variables[i]))
                    clause.push_back(sign * (static_cast<int>(i) + 1));
            if (clause.empty())
                throw ImmediatelyUnsatError(family.kind, v);
            cnf.clauses.push_back(std::move(clause));
        }
    };
    add_clauses(enum_pp(p, d), +1);
    add_clauses(enum_qq(q, d), -1);
    return {std::move(instance), std::move(cnf)};
}

PcvColoring decode_coloring(const PastingInstance& instance, const Assignment& assignment) {
    if (assignment.size() <= instance.variables.size())
        throw ParamError("decode: assignment smaller than the variable map");
    PcvColoring chi;
    chi.k = instance.k;
    for (std::size_t i = 0; i < instance.variables.size(); ++i) {
        std::int8_t value = assignment[i + 1];
        if (value != 0 && value != 1)
            throw ParamError("decode: incomplete assignment, variable " + std::to_string(i + 1) +
                             " (" + instance.variables[i].str() + ") is unassigned");
        chi.entries.emplace(instance.variables[i], value ? Color::Blue : Color::Red);
    }
    return chi;
}

PasteVerdict verify_pasting_coloring(const PcvColoring& chi, int p, int q, int d) {
    check_instance_params(chi.k, p, q, d);
    for (const Pcv& u : enum_vk(chi.k, d).members)
        if (u.crossing() && !chi.entries.count(u))
            throw ParamError("verify: coloring has no entry for " + u.str() +
                             ", not total on crossing V_" + std::to_string(chi.k) +
                             "(" + std::to_string(d) + ")");

    auto covered = [&](const Pcv& v, Color color) {
        for (const auto& [u, c] : chi.entries)
            if (c == color && contains(v, u))
                return true;
        return false;
    };
    for (const Pcv& v : enum_pp(p, d).members)
        if (!covered(v, Color::Blue))
            return {false, PasteWitness{FamilyKind::Pp, v}};
    for (const Pcv& v : enum_qq(q, d).members)
        if (!covered(v, Color::Red))
            return {false, PasteWitness{FamilyKind::Qq, v}};
    return {true, std::nullopt};
}

PcvColoring chi1_4() {
    PcvColoring chi;
    chi.k = 4;
    chi.entries.emplace(Pcv({3, 1}), Color::Red);
    chi.entries.emplace(Pcv({2, 2}), Color::Blue);
    return chi;
}

PcvColoring chi2_4() {
    PcvColoring chi;
    chi.k = 4;
    chi.entries.emplace(Pcv({3, 1}), Color::Red);
    chi.entries.emplace(Pcv({1, 1, 1, 1}), Color::Red);
    chi.entries.emplace(Pcv({2, 2}), Color::Blue);
    chi.entries.emplace(Pcv({2, 1, 1}), Color::Blue);
    // any crossing vector of V_4(5) not pinned above defaults to blue
    for (const Pcv& u : enum_vk(4, 5).members)
        if (u.crossing())
            chi.entries.emplace(u, Color::Blue);
    return chi;
}

PcvColoring two_divide(int k) {
    if (k < 4)
        throw ParamError("two_divide: k must be at least 4");
    PcvColoring chi = chi1_4();
    for (int j = 5; j <= k; ++j) {
        PcvColoring next;
        next.k = j;
        for (int u2 = 1; 2 * u2 < j; ++u2) {
            int u1 = j - u2; // u1 > u2, so (u1-1, u2) is a valid smaller vector
            next.entries.emplace(Pcv({u1, u2}),
                                 chi.entries.at(Pcv({u1 - 1, u2})));
        }
        if (j % 2 == 0) {
            int m = j / 2;
            Color companion = next.entries.at(Pcv({m + 1, m - 1}));
            next.entries.emplace(Pcv({m, m}),
                                 companion == Color::Red ? Color::Blue : Color::Red);
        }
        chi = std::move(next);
    }
    return chi;
}

PcvColoring large_q(int k, int d) {
    if (k < 4)
        throw ParamError("large_q: k must be at least 4");
    if (d < 2)
        throw ParamError("large_q: d must be at least 2");
    const Pcv red_key({k - 1, 1});
    PcvColoring chi;
    chi.k = k;
    for (const Pcv& u : enum_vk(k, d).members)
        if (u.crossing())
            chi.entries.emplace(u, u == red_key ? Color::Red : Color::Blue);
    return chi;
}

void write_pcv_coloring(std::ostream& os, const PcvColoring& chi, int d) {
    os << "pcv-coloring k=" << chi.k << " d=" << d << '\n';
    for (const auto& [u, color] : chi.entries)
        os << u.str() << ' ' << color_name(color) << '\n';
}

ColoringFile read_pcv_coloring(std::istream& is) {
    std::string header;
    if (!std::getline(is, header))
        throw ParseError("coloring: empty input");
    int k = 0, d = 0;
    {
        std::istringstream hs(header);
        std::string tag, kv;
        hs >> tag;
        if (tag != "pcv-coloring")
            throw ParseError("coloring: bad header \"" + header + "\"");
        while (hs >> kv) {
            if (kv.rfind("k=", 0) == 0)
                k = std::stoi(kv.substr(2));
            else if (kv.rfind("d=", 0) == 0)
                d = std::stoi(kv.substr(2));
            else
                throw ParseError("coloring: unknown header field \"" + kv + "\"");
        }
    }
    if (k < 2 || d < 2)
        throw ParseError("coloring: header must carry k >= 2 and d >= 2");

    ColoringFile file;
    file.coloring.k = k;
    file.d = d;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::size_t space = line.find(' ');
        if (space == std::string::npos)
            throw ParseError("coloring: bad entry line \"" + line + "\"");
        Pcv u = Pcv::parse(line.substr(0, space));
        if (u.sum() != k)
            throw ParseError("coloring: entry " + u.str() + " does not sum to k=" +
                             std::to_string(k));
        if (!u.crossing())
            throw ParseError("coloring: entry " + u.str() + " is not a crossing vector");
        Color color = parse_color(line.substr(space + 1));
        if (!file.coloring.entries.emplace(std::move(u), color).second)
            throw ParseError("coloring: duplicate entry in line \"" + line + "\"");
    }
    return file;
}

} // namespace ramsey
