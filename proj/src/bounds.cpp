#include "ramsey/bounds.hpp"

#include <algorithm>
#include <sstream>

#include "ramsey/complete.hpp"

namespace ramsey {

CertificateRejectedError::CertificateRejectedError(std::string message, CliqueWitness witness_)
    : Error(std::move(message)), witness(std::move(witness_)) {}

static std::string guard_text(int k, int p, int q, int d) {
    std::ostringstream os;
    os << "k=" << k << ", p=" << p << ", q=" << q << ", d=" << d;
    return os.str();
}

std::vector<RecurrenceRule> builtin_rules() {
    std::vector<RecurrenceRule> rules;
    rules.push_back({"R1",
                     [](int k, int p, int q) { return k == 4 && p >= 6 && q >= 5; },
                     [](int, int, int) { return 2; },
                     "k=4, p>=6, q>=5: doubling"});
    rules.push_back({"R2",
                     [](int k, int p, int q) { return k == 4 && p >= 6 && q >= 7; },
                     [](int, int p, int) { return p - 1; },
                     "k=4, p>=6, q>=7: d=p-1"});
    rules.push_back({"R3",
                     [](int k, int p, int q) { return k >= 5 && k <= 25 && p >= k + 2 && q >= k + 2; },
                     [](int, int p, int) { return p - 1; },
                     "5<=k<=25, p>=k+2, q>=k+2: d=p-1"});
    rules.push_back({"R4",
                     [](int k, int p, int q) {
                         return k >= 8 && k <= 25 && k != 9 && p >= k + 2 && q >= k + 1;
                     },
                     [](int, int p, int) { return p - 1; },
                     "8<=k<=25 except k=9, p>=k+2, q>=k+1: d=p-1"});
    rules.push_back({"R5",
                     [](int k, int p, int q) {
                         if (p < k + 2)
                             return false;
                         if (k >= 4 && k % 2 == 0)
                             return q >= k + 1;
                         return k >= 5 && q >= k + 2;
                     },
                     [](int, int, int) { return 2; },
                     "even k>=4 with q>=k+1, odd k>=5 with q>=k+2: doubling"});
    rules.push_back({"R6",
                     [](int k, int p, int q) {
                         return k >= 4 && p >= k + 2 && q >= k + 1 && (q - 1) / (k - 2) >= 2;
                     },
                     [](int k, int, int q) { return (q - 1) / (k - 2); },
                     "k>=4, p>=k+2, q>=k+1: d=floor((q-1)/(k-2))"});
    return rules;
}

ExtendOutcome extend_rules(int k, std::uint64_t node_budget) {
    if (k <= 25)
        throw ParamError("extend: built-in rules already cover k <= 25");
    RecurrenceRule rule{
        "X" + std::to_string(k),
        [k](int kk, int p, int q) { return kk == k && p >= k + 2 && q >= k + 2; },
        [](int, int p, int) { return p - 1; },
        "k=" + std::to_string(k) + ", p>=k+2, q>=k+2: d=p-1, from solved pasting instances"};

    const std::tuple<int, int, int> bases[] = {{k + 2, k + 2, k + 1}, {k + 3, k + 2, k + 2}};
    for (auto [p0, q0, d] : bases) {
        auto [instance, cnf] = build_pasting_cnf(k, p0, q0, d);
        CompleteResult solved = solve_complete(cnf, node_budget);
        std::string tag = "pasting(" + std::to_string(k) + "," + std::to_string(p0) + "," +
                          std::to_string(q0) + "," + std::to_string(d) + ")";
        if (solved.status == CompleteStatus::Unsat)
            return {false, std::nullopt, tag + " is UNSAT; no rule installed"};
        if (solved.status == CompleteStatus::BudgetExceeded)
            return {false, std::nullopt,
                    tag + " exceeded the node budget after " + std::to_string(solved.nodes) +
                        " nodes; no rule installed"};
        PcvColoring chi = decode_coloring(instance, solved.assignment);
        PasteVerdict verdict = verify_pasting_coloring(chi, p0, q0, d);
        if (!verdict.valid)
            throw Error("extend: decoded coloring failed verification for " + tag); // unreachable
        rule.witnesses.push_back({p0, q0, d, std::move(chi)});
    }
    std::string message = "installed " + rule.id + " from solved bases (k+2,k+2) and (k+3,k+2)";
    return {true, std::move(rule), std::move(message)};
}

static ProvPtr seed_node(std::string label, std::string detail, int k, int p, int q, BigInt value) {
    auto node = std::make_shared<ProvNode>();
    node->label = std::move(label);
    node->detail = std::move(detail);
    node->k = k;
    node->p = p;
    node->q = q;
    node->value = std::move(value);
    return node;
}

std::vector<BoundFact> seed_facts(const SeedOptions& options) {
    const auto& lim = options.limits;
    if (lim.k_max < 2 || lim.p_max < lim.k_max || lim.q_max < lim.k_max)
        throw ParamError("seeds: limits must satisfy k_max >= 2, p_max >= k_max, q_max >= k_max");

    std::vector<BoundFact> facts;
    auto add = [&facts](int k, int p, int q, BigInt value, ProvPtr node) {
        facts.push_back({k, p, q, std::move(value), std::move(node)});
    };

    std::vector<std::tuple<int, int, int>> cert_cells;
    for (const CertificateFile& cert : options.certificates) {
        int n = cert.coloring.n();
        int k = cert.coloring.k();
        CliqueVerdict verdict = verify_certificate(cert.coloring, cert.p, cert.q, options.workers);
        if (!verdict.valid) {
            std::ostringstream os;
            os << "seeds: certificate for r_" << k << "(" << cert.p << "," << cert.q
               << ") on n=" << n << " rejected: monochromatic "
               << color_name(verdict.witness->color) << " clique {";
            for (std::size_t i = 0; i < verdict.witness->vertices.size(); ++i)
                os << (i ? "," : "") << verdict.witness->vertices[i];
            os << "}";
            throw CertificateRejectedError(os.str(), *verdict.witness);
        }
        std::string detail = "verified certificate on n=" + std::to_string(n) + " vertices";
        add(k, cert.p, cert.q, n + 1,
            seed_node("seed-cert", detail, k, cert.p, cert.q, n + 1));
        cert_cells.emplace_back(k, cert.p, cert.q);
    }

    for (int k = 2; k <= lim.k_max; ++k) {
        for (int p = k; p <= lim.p_max; ++p)
            add(k, p, k, p, seed_node("seed-trivial", "r(p,k) = p", k, p, k, p));
        for (int q = k + 1; q <= lim.q_max; ++q)
            add(k, k, q, q, seed_node("seed-trivial", "r(k,q) = q", k, k, q, q));
        bool cert_covers = std::find(cert_cells.begin(), cert_cells.end(),
                                     std::tuple<int, int, int>{k, k + 1, k + 1}) != cert_cells.end();
        if (!cert_covers && k + 1 <= lim.p_max && k + 1 <= lim.q_max)
            add(k, k + 1, k + 1, k + 1,
                seed_node("seed-base", "r(k+1,k+1) >= r(k+1,k) = k+1", k, k + 1, k + 1, k + 1));
    }
    return facts;
}

const BoundFact* BoundTable::find(int k, int p, int q) const {
    auto it = cells.find({k, p, q});
    return it == cells.end() ? nullptr : &it->second;
}

BoundTable compute_table(const std::vector<BoundFact>& facts,
                         const std::vector<RecurrenceRule>& rules, const BoundLimits& limits) {
    BoundTable table;
    for (const BoundFact& fact : facts) {
        if (fact.k < 2 || fact.k > limits.k_max || fact.p < fact.k || fact.p > limits.p_max ||
            fact.q < fact.k || fact.q > limits.q_max)
            continue;
        auto key = std::tuple{fact.k, fact.p, fact.q};
        auto it = table.cells.find(key);
        if (it == table.cells.end() || fact.value > it->second.value)
            table.cells.insert_or_assign(it == table.cells.end() ? table.cells.end() : it, key, fact);
    }

    for (int k = 2; k <= limits.k_max; ++k) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int p = k; p <= limits.p_max; ++p) {
                for (int q = k; q <= limits.q_max; ++q) {
                    const BoundFact* cell = table.find(k, p, q);
                    BigInt best_value = cell ? cell->value : BigInt(0);
                    ProvPtr best_node;

                    auto consider = [&](BigInt value, ProvPtr node) {
                        if (value > best_value) {
                            best_value = std::move(value);
                            best_node = std::move(node);
                        }
                    };

                    const BoundFact* left = table.find(k, p - 1, q);
                    for (const RecurrenceRule& rule : rules) {
                        if (!left || !rule.guard(k, p, q))
                            continue;
                        int d = rule.factor(k, p, q);
                        if (d < 2)
                            throw Error("rule " + rule.id + " produced factor " + std::to_string(d));
                        BigInt value = d * (left->value - 1) + 1;
                        if (value <= best_value)
                            continue;
                        std::ostringstream detail;
                        detail << guard_text(k, p, q, d) << ": " << d << "*(" << left->value
                               << "-1)+1 = " << value;
                        auto node = std::make_shared<ProvNode>();
                        node->label = rule.id;
                        node->detail = detail.str();
                        node->k = k;
                        node->p = p;
                        node->q = q;
                        node->value = value;
                        node->d = d;
                        node->premises = {left->provenance};
                        consider(std::move(value), std::move(node));
                    }

                    if (const BoundFact* sym = table.find(k, q, p); sym && p != q) {
                        if (sym->value > best_value) {
                            auto node = std::make_shared<ProvNode>();
                            node->label = "symmetry";
                            node->detail = "swap colors: r(" + std::to_string(p) + "," +
                                           std::to_string(q) + ") = r(" + std::to_string(q) + "," +
                                           std::to_string(p) + ")";
                            node->k = k;
                            node->p = p;
                            node->q = q;
                            node->value = sym->value;
                            node->premises = {sym->provenance};
                            consider(sym->value, std::move(node));
                        }
                    }

                    auto pad = [&](const BoundFact* premise, const char* label, const char* text) {
                        if (premise && premise->value > best_value) {
                            auto node = std::make_shared<ProvNode>();
                            node->label = label;
                            node->detail = text;
                            node->k = k;
                            node->p = p;
                            node->q = q;
                            node->value = premise->value;
                            node->premises = {premise->provenance};
                            consider(premise->value, std::move(node));
                        }
                    };
                    pad(left, "padding-p", "monotone in p");
                    pad(table.find(k, p, q - 1), "padding-q", "monotone in q");

                    if (best_node) {
                        table.cells.insert_or_assign(std::tuple{k, p, q},
                                                     BoundFact{k, p, q, best_value, best_node});
                        changed = true;
                    }
                }
            }
        }
    }
    return table;
}

static void derivation_walk(const ProvNode& node, int depth, std::ostream& os) {
    for (int i = 0; i < depth; ++i)
        os << "  ";
    os << "r_" << node.k << "(" << node.p << "," << node.q << ") >= " << node.value << "  ["
       << node.label;
    if (!node.detail.empty())
        os << ": " << node.detail;
    os << "]\n";
    for (const ProvPtr& premise : node.premises)
        derivation_walk(*premise, depth + 1, os);
}

std::string derivation(const BoundFact& fact) {
    if (!fact.provenance)
        throw ParamError("derivation: fact has no provenance");
    std::ostringstream os;
    derivation_walk(*fact.provenance, 0, os);
    return os.str();
}

std::string rule_chain(const BoundFact& fact) {
    std::string chain;
    const ProvNode* node = fact.provenance.get();
    while (node) {
        if (!chain.empty())
            chain += ';';
        chain += node->label;
        node = node->premises.empty() ? nullptr : node->premises.front().get();
    }
    return chain;
}

static void replay_node(const ProvNode& node, const std::vector<RecurrenceRule>& rules) {
    auto fail = [&](const std::string& why) {
        throw Error("replay: r_" + std::to_string(node.k) + "(" + std::to_string(node.p) + "," +
                    std::to_string(node.q) + ") [" + node.label + "]: " + why);
    };
    if (node.label.rfind("seed-", 0) == 0) {
        if (!node.premises.empty())
            fail("seed with premises");
        if (node.label == "seed-trivial" &&
            node.value != BigInt(node.p == node.k ? node.q : node.p))
            fail("trivial identity value mismatch");
        if (node.label == "seed-base" &&
            (node.p != node.k + 1 || node.q != node.k + 1 || node.value != BigInt(node.k + 1)))
            fail("base seed value mismatch");
        return;
    }
    if (node.premises.size() != 1)
        fail("expected exactly one premise");
    const ProvNode& premise = *node.premises.front();
    if (premise.k != node.k)
        fail("premise changes k");

    if (node.label == "symmetry") {
        if (premise.p != node.q || premise.q != node.p || premise.value != node.value)
            fail("symmetry premise mismatch");
    } else if (node.label == "padding-p") {
        if (premise.p != node.p - 1 || premise.q != node.q || premise.value != node.value)
            fail("padding-p premise mismatch");
    } else if (node.label == "padding-q") {
        if (premise.p != node.p || premise.q != node.q - 1 || premise.value != node.value)
            fail("padding-q premise mismatch");
    } else {
        auto rule = std::find_if(rules.begin(), rules.end(),
                                 [&](const RecurrenceRule& r) { return r.id == node.label; });
        if (rule == rules.end())
            fail("unknown rule");
        if (!rule->guard(node.k, node.p, node.q))
            fail("guard does not hold");
        int d = rule->factor(node.k, node.p, node.q);
        if (d != node.d)
            fail("stored factor " + std::to_string(node.d) + " != " + std::to_string(d));
        if (premise.p != node.p - 1 || premise.q != node.q)
            fail("rule premise is not (p-1, q)");
        if (node.value != d * (premise.value - 1) + 1)
            fail("arithmetic does not re-derive the value");
    }
    replay_node(premise, rules);
}

void replay(const BoundFact& fact, const std::vector<RecurrenceRule>& rules) {
    if (!fact.provenance)
        throw Error("replay: fact has no provenance");
    const ProvNode& root = *fact.provenance;
    if (root.k != fact.k || root.p != fact.p || root.q != fact.q || root.value != fact.value)
        throw Error("replay: fact does not match its provenance root");
    replay_node(root, rules);
}

std::string table_text(const BoundTable& table, int k, const BoundLimits& limits) {
    std::ostringstream os;
    std::vector<std::size_t> width(static_cast<std::size_t>(limits.q_max - k + 1), 1);
    for (int q = k; q <= limits.q_max; ++q) {
        width[q - k] = std::to_string(q).size();
        for (int p = k; p <= limits.p_max; ++p)
            if (const BoundFact* cell = table.find(k, p, q))
                width[q - k] = std::max(width[q - k], cell->value.str().size());
    }
    os << "r_" << k << "(p,q) lower bounds\np\\q";
    for (int q = k; q <= limits.q_max; ++q)
        os << "  " << std::string(width[q - k] - std::to_string(q).size(), ' ') << q;
    os << '\n';
    for (int p = k; p <= limits.p_max; ++p) {
        os << std::string(3 - std::min<std::size_t>(3, std::to_string(p).size()), ' ') << p;
        for (int q = k; q <= limits.q_max; ++q) {
            const BoundFact* cell = table.find(k, p, q);
            std::string text = cell ? cell->value.str() : "-";
            os << "  " << std::string(width[q - k] - text.size(), ' ') << text;
        }
        os << '\n';
    }
    return os.str();
}

std::string table_csv(const BoundTable& table, int k, const BoundLimits& limits) {
    std::ostringstream os;
    os << "k,p,q,value,chain\n";
    for (int p = k; p <= limits.p_max; ++p)
        for (int q = k; q <= limits.q_max; ++q)
            if (const BoundFact* cell = table.find(k, p, q))
                os << k << ',' << p << ',' << q << ',' << cell->value << ','
                   << rule_chain(*cell) << '\n';
    return os.str();
}

} // namespace ramsey
