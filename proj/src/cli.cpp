#include "ramsey/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ramsey/bounds.hpp"
#include "ramsey/cnf.hpp"
#include "ramsey/complete.hpp"
#include "ramsey/direct.hpp"
#include "ramsey/local_search.hpp"
#include "ramsey/pasting.hpp"
#include "ramsey/pcv.hpp"

namespace ramsey {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

int env_workers() {
    const char* raw = std::getenv("RAMSEY_THREADS");
    if (!raw)
        return 1;
    int value = std::atoi(raw);
    return value < 1 ? 1 : value;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw ParamError("cannot read " + path);
    return is;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw ParamError("cannot write " + path);
    return os;
}

// Randomized subcommands either take --seed or announce the one they drew.
std::uint64_t pick_seed(std::optional<std::uint64_t> seed, std::ostream& out) {
    if (seed)
        return *seed;
    std::random_device rd;
    std::uint64_t value = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    out << "seed " << value << '\n';
    return value;
}

struct SearchFlags {
    std::optional<std::uint64_t> seed;
    std::uint64_t cutoff = 20'000'000;
    std::uint32_t restarts = 100;

    void attach(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "random seed (printed when omitted)");
        cmd->add_option("--cutoff", cutoff, "flips per restart");
        cmd->add_option("--restarts", restarts, "restart count");
    }

    LocalSearchParams params(std::ostream& out, std::ostream& err) const {
        LocalSearchParams p;
        p.seed = pick_seed(seed, out);
        p.cutoff_flips = cutoff;
        p.max_restarts = restarts;
        p.progress = &err;
        return p;
    }
};

int cmd_enum(const std::string& family, int s, int d, bool count_only, std::ostream& out) {
    PcvFamily fam = family == "V"   ? enum_vk(s, d)
                    : family == "P" ? enum_pp(s, d)
                                    : enum_qq(s, d);
    if (count_only) {
        out << fam.members.size() << '\n';
        return kExitOk;
    }
    for (const Pcv& v : fam.members)
        out << v.str() << '\n';
    return kExitOk;
}

int cmd_paste(int k, int p, int q, int d, const std::string& dimacs_path,
              const std::string& solve_mode, std::uint64_t budget, const SearchFlags& search,
              const std::string& coloring_out, std::ostream& out, std::ostream& err) {
    PastingInstance instance;
    Cnf cnf;
    try {
        std::tie(instance, cnf) = build_pasting_cnf(k, p, q, d);
    } catch (const ImmediatelyUnsatError& e) {
        out << "UNSAT\n";
        err << "error: " << e.what() << '\n';
        return kExitNegative;
    }
    err << "c pasting k=" << k << " p=" << p << " q=" << q << " d=" << d
        << " vars=" << cnf.variable_count << " clauses=" << cnf.clauses.size() << '\n';
    if (!dimacs_path.empty()) {
        auto os = open_output(dimacs_path);
        write_dimacs(os, cnf);
    }
    if (solve_mode.empty())
        return kExitOk;

    Assignment assignment;
    if (solve_mode == "complete") {
        CompleteResult result = solve_complete(cnf, budget);
        err << "c nodes=" << result.nodes << '\n';
        if (result.status == CompleteStatus::Unsat) {
            out << "UNSAT\n";
            return kExitNegative;
        }
        if (result.status == CompleteStatus::BudgetExceeded) {
            out << "BUDGET\n";
            return kExitNegative;
        }
        assignment = std::move(result.assignment);
    } else {
        NeighborRelation neighbors = NeighborRelation::clause_cooccurrence(cnf);
        LocalSearchResult result = solve_local_search(cnf, neighbors, search.params(out, err));
        err << "c flips=" << result.total_flips << " restarts=" << result.restarts_used << '\n';
        if (result.status != LsStatus::Sat) {
            out << "TIMEOUT\n";
            return kExitNegative;
        }
        assignment = std::move(result.assignment);
    }

    PcvColoring chi = decode_coloring(instance, assignment);
    PasteVerdict verdict = verify_pasting_coloring(chi, p, q, d);
    if (!verdict.valid)
        throw Error("paste: solver answer failed verification"); // unreachable
    out << "SAT\n";
    for (const auto& [u, color] : chi.entries)
        out << u.str() << ' ' << color_name(color) << '\n';
    if (!coloring_out.empty()) {
        auto os = open_output(coloring_out);
        write_pcv_coloring(os, chi, d);
    }
    return kExitOk;
}

int cmd_direct(int n, int k, const std::string& dimacs_path, bool do_search, int p, int q,
               const SearchFlags& search, const std::string& cert_out, std::ostream& out,
               std::ostream& err) {
    DirectEncoding encoding = build_direct_cnf(n, k);
    err << "c direct n=" << n << " k=" << k << " vars=" << encoding.cnf.variable_count
        << " clauses=" << encoding.cnf.clauses.size() << '\n';
    if (!dimacs_path.empty()) {
        auto os = open_output(dimacs_path);
        write_dimacs(os, encoding.cnf);
    }
    if (!do_search)
        return kExitOk;

    LocalSearchResult result =
        solve_local_search(encoding.cnf, encoding.neighbors, search.params(out, err));
    err << "c flips=" << result.total_flips << " restarts=" << result.restarts_used << '\n';
    if (result.status != LsStatus::Sat) {
        out << "TIMEOUT\n";
        return kExitNegative;
    }
    EdgeColoring coloring = coloring_from_assignment(result.assignment, n, k);
    CliqueVerdict verdict = verify_certificate(coloring, p, q, env_workers());
    if (!verdict.valid)
        throw Error("direct: satisfying assignment failed clique verification"); // unreachable
    out << "SAT\n";
    out << "certificate r_" << k << "(" << p << "," << q << ") >= " << (n + 1) << '\n';
    if (!cert_out.empty()) {
        auto os = open_output(cert_out);
        write_certificate(os, coloring, p, q);
    }
    return kExitOk;
}

int cmd_solve(const std::string& cnf_path, const std::string& algo, std::uint64_t budget,
              const SearchFlags& search, int n, int k, const std::string& solution_out,
              std::ostream& out, std::ostream& err) {
    auto is = open_input(cnf_path);
    Cnf cnf = parse_dimacs(is);
    err << "c loaded vars=" << cnf.variable_count << " clauses=" << cnf.clauses.size() << '\n';

    Assignment assignment;
    if (algo == "complete") {
        CompleteResult result = solve_complete(cnf, budget);
        err << "c nodes=" << result.nodes << '\n';
        if (result.status == CompleteStatus::Unsat) {
            out << "UNSAT\n";
            return kExitNegative;
        }
        if (result.status == CompleteStatus::BudgetExceeded) {
            out << "BUDGET\n";
            return kExitNegative;
        }
        assignment = std::move(result.assignment);
    } else {
        NeighborRelation neighbors =
            n > 0 ? build_direct_cnf(n, k).neighbors : NeighborRelation::clause_cooccurrence(cnf);
        if (n > 0 && neighbors.variable_count() != cnf.variable_count)
            throw ParamError("solve: --n/--k describe " +
                             std::to_string(neighbors.variable_count()) +
                             " hyperedge variables, CNF has " +
                             std::to_string(cnf.variable_count));
        LocalSearchResult result = solve_local_search(cnf, neighbors, search.params(out, err));
        err << "c flips=" << result.total_flips << " restarts=" << result.restarts_used << '\n';
        if (result.status != LsStatus::Sat) {
            out << "TIMEOUT\n";
            return kExitNegative;
        }
        assignment = std::move(result.assignment);
    }

    out << "SAT\n";
    std::ostringstream line;
    line << 'v';
    for (int v = 1; v <= cnf.variable_count; ++v)
        line << ' ' << (assignment[v] ? v : -v);
    line << " 0";
    out << line.str() << '\n';
    if (!solution_out.empty()) {
        auto os = open_output(solution_out);
        os << line.str() << '\n';
    }
    return kExitOk;
}

int cmd_verify_coloring(const std::string& path, int p, int q, int d_override, std::ostream& out) {
    auto is = open_input(path);
    ColoringFile file = read_pcv_coloring(is);
    int d = d_override > 0 ? d_override : file.d;
    PasteVerdict verdict = verify_pasting_coloring(file.coloring, p, q, d);
    if (verdict.valid) {
        out << "valid\n";
        return kExitOk;
    }
    out << "invalid: " << family_name(verdict.witness->kind) << " member "
        << verdict.witness->uncovered.str() << " uncovered\n";
    return kExitNegative;
}

int cmd_verify_cert(const std::string& path, int p_override, int q_override, std::ostream& out,
                    std::ostream& err) {
    auto is = open_input(path);
    CertificateFile file = read_certificate(is);
    int p = p_override > 0 ? p_override : file.p;
    int q = q_override > 0 ? q_override : file.q;
    err << "c certificate n=" << file.coloring.n() << " k=" << file.coloring.k() << " p=" << p
        << " q=" << q << '\n';
    CliqueVerdict verdict = verify_certificate(file.coloring, p, q, env_workers());
    if (verdict.valid) {
        out << "valid\n";
        out << "r_" << file.coloring.k() << "(" << p << "," << q << ") >= "
            << (file.coloring.n() + 1) << '\n';
        return kExitOk;
    }
    out << "invalid: monochromatic " << color_name(verdict.witness->color) << " clique {";
    for (std::size_t i = 0; i < verdict.witness->vertices.size(); ++i)
        out << (i ? "," : "") << verdict.witness->vertices[i];
    out << "}\n";
    return kExitNegative;
}

int cmd_bounds(int k, int p_max, int q_max, const std::string& cell,
               const std::vector<std::string>& cert_paths, bool csv, std::ostream& out,
               std::ostream& err) {
    int cell_p = 0, cell_q = 0;
    if (!cell.empty()) {
        std::size_t comma = cell.find(',');
        if (comma == std::string::npos)
            throw ParamError("bounds: --cell expects \"p,q\"");
        cell_p = std::stoi(cell.substr(0, comma));
        cell_q = std::stoi(cell.substr(comma + 1));
        if (cell_p < k || cell_q < k)
            throw ParamError("bounds: cell coordinates must be >= k");
        p_max = std::max({p_max, cell_p, cell_q});
        q_max = std::max({q_max, cell_p, cell_q});
    }

    SeedOptions options;
    options.limits = {k, p_max, q_max};
    options.workers = env_workers();
    for (const std::string& path : cert_paths) {
        auto is = open_input(path);
        options.certificates.push_back(read_certificate(is));
        err << "c seed certificate " << path << '\n';
    }

    std::vector<BoundFact> facts = seed_facts(options);
    BoundTable table = compute_table(facts, builtin_rules(), options.limits);

    if (!cell.empty()) {
        const BoundFact* fact = table.find(k, cell_p, cell_q);
        if (!fact)
            throw ParamError("bounds: no value for that cell");
        out << "r_" << k << "(" << cell_p << "," << cell_q << ") >= " << fact->value << '\n';
        out << derivation(*fact);
        return kExitOk;
    }
    out << (csv ? table_csv(table, k, options.limits) : table_text(table, k, options.limits));
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"lower bounds for hypergraph Ramsey numbers"};
    app.name("ramsey");
    app.require_subcommand(1);

    // enum
    auto* enum_cmd = app.add_subcommand("enum", "list a pcv family");
    std::string family;
    int enum_s = 0, enum_d = 0;
    bool enum_count = false;
    enum_cmd->add_option("--family", family, "family kind: V, P, or Q")
        ->required()
        ->check(CLI::IsMember({"V", "P", "Q"}));
    enum_cmd->add_option("--s", enum_s, "total of each vector")->required();
    enum_cmd->add_option("--d", enum_d, "maximum number of parts")->required();
    enum_cmd->add_flag("--count", enum_count, "print only the member count");

    // paste
    auto* paste_cmd = app.add_subcommand("paste", "build (and optionally solve) a pasting CNF");
    int paste_k = 0, paste_p = 0, paste_q = 0, paste_d = 0;
    std::string paste_dimacs, paste_solve, paste_coloring_out;
    std::uint64_t paste_budget = 0;
    SearchFlags paste_search;
    paste_cmd->add_option("--k", paste_k, "edge size")->required();
    paste_cmd->add_option("--p", paste_p, "red clique size")->required();
    paste_cmd->add_option("--q", paste_q, "blue clique size")->required();
    paste_cmd->add_option("--d", paste_d, "number of pasted blocks")->required();
    paste_cmd->add_option("--dimacs", paste_dimacs, "write the CNF to this file");
    paste_cmd->add_option("--solve", paste_solve, "complete or local")
        ->check(CLI::IsMember({"complete", "local"}));
    paste_cmd->add_option("--budget", paste_budget, "node budget for the complete solver");
    paste_cmd->add_option("--coloring-out", paste_coloring_out, "write the decoded coloring here");
    paste_search.attach(paste_cmd);

    // direct
    auto* direct_cmd = app.add_subcommand("direct", "build the clique CNF or search a certificate");
    int direct_n = 0, direct_k = 0, direct_p = 0, direct_q = 0;
    std::string direct_dimacs, direct_cert_out;
    bool direct_search = false;
    SearchFlags direct_flags;
    direct_cmd->add_option("--n", direct_n, "vertex count")->required();
    direct_cmd->add_option("--k", direct_k, "edge size")->required();
    direct_cmd->add_option("--dimacs", direct_dimacs, "write the CNF to this file");
    direct_cmd->add_flag("--search", direct_search, "run local search for a certificate");
    direct_cmd->add_option("--p", direct_p, "red clique size (default k+1)");
    direct_cmd->add_option("--q", direct_q, "blue clique size (default k+1)");
    direct_cmd->add_option("--cert-out", direct_cert_out, "write the found certificate here");
    direct_flags.attach(direct_cmd);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "run a solver on a DIMACS file");
    std::string solve_cnf, solve_algo = "complete", solve_solution_out;
    std::uint64_t solve_budget = 0;
    int solve_n = 0, solve_k = 0;
    SearchFlags solve_flags;
    solve_cmd->add_option("--cnf", solve_cnf, "DIMACS input")->required();
    solve_cmd->add_option("--algo", solve_algo, "complete or local")
        ->check(CLI::IsMember({"complete", "local"}));
    solve_cmd->add_option("--budget", solve_budget, "node budget for the complete solver");
    solve_cmd->add_option("--n", solve_n, "treat variables as k-edges on n vertices");
    solve_cmd->add_option("--k", solve_k, "edge size for --n");
    solve_cmd->add_option("--solution-out", solve_solution_out, "write the solution line here");
    solve_flags.attach(solve_cmd);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check a coloring or certificate file");
    std::string verify_coloring, verify_cert;
    int verify_p = 0, verify_q = 0, verify_d = 0;
    verify_cmd->add_option("--coloring", verify_coloring, "pcv-coloring file");
    verify_cmd->add_option("--cert", verify_cert, "ramsey-cert file");
    verify_cmd->add_option("--p", verify_p, "red clique size");
    verify_cmd->add_option("--q", verify_q, "blue clique size");
    verify_cmd->add_option("--d", verify_d, "block count (colorings only)");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "derive lower-bound tables");
    int bounds_k = 0, bounds_pmax = 0, bounds_qmax = 0;
    std::string bounds_cell, bounds_config;
    std::vector<std::string> bounds_certs;
    bool bounds_csv = false;
    bounds_cmd->add_option("--k", bounds_k, "edge size")->required();
    bounds_cmd->add_option("--p-max", bounds_pmax, "largest p in the grid");
    bounds_cmd->add_option("--q-max", bounds_qmax, "largest q in the grid");
    bounds_cmd->add_option("--cell", bounds_cell, "print one cell and its derivation, \"p,q\"");
    bounds_cmd->add_option("--cert", bounds_certs, "seed certificate file (repeatable)");
    bounds_cmd->add_flag("--csv", bounds_csv, "machine-readable output");
    bounds_cmd->add_option("--config", bounds_config, "JSON file with default limits and certs");

    try {
        std::vector<const char*> argv;
        argv.push_back("ramsey");
        for (const std::string& a : args)
            argv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError& e) {
            int code = app.exit(e, out, err);
            return code == 0 ? kExitOk : kExitUsage;
        }

        if (app.got_subcommand(enum_cmd))
            return cmd_enum(family, enum_s, enum_d, enum_count, out);
        if (app.got_subcommand(paste_cmd))
            return cmd_paste(paste_k, paste_p, paste_q, paste_d, paste_dimacs, paste_solve,
                             paste_budget, paste_search, paste_coloring_out, out, err);
        if (app.got_subcommand(direct_cmd))
            return cmd_direct(direct_n, direct_k, direct_dimacs, direct_search,
                              direct_p > 0 ? direct_p : direct_k + 1,
                              direct_q > 0 ? direct_q : direct_k + 1, direct_flags,
                              direct_cert_out, out, err);
        if (app.got_subcommand(solve_cmd)) {
            if ((solve_n > 0) != (solve_k > 0))
                throw ParamError("solve: --n and --k go together");
            return cmd_solve(solve_cnf, solve_algo, solve_budget, solve_flags, solve_n, solve_k,
                             solve_solution_out, out, err);
        }
        if (app.got_subcommand(verify_cmd)) {
            if (verify_coloring.empty() == verify_cert.empty())
                throw ParamError("verify: pass exactly one of --coloring or --cert");
            if (!verify_coloring.empty()) {
                if (verify_p < 1 || verify_q < 1)
                    throw ParamError("verify: colorings need explicit --p and --q");
                return cmd_verify_coloring(verify_coloring, verify_p, verify_q, verify_d, out);
            }
            return cmd_verify_cert(verify_cert, verify_p, verify_q, out, err);
        }
        if (app.got_subcommand(bounds_cmd)) {
            int p_max = bounds_pmax, q_max = bounds_qmax;
            std::vector<std::string> certs = bounds_certs;
            if (!bounds_config.empty()) {
                auto is = open_input(bounds_config);
                nlohmann::json config = nlohmann::json::parse(is, nullptr, true, true);
                if (p_max == 0 && config.contains("p_max"))
                    p_max = config["p_max"].get<int>();
                if (q_max == 0 && config.contains("q_max"))
                    q_max = config["q_max"].get<int>();
                if (config.contains("certs"))
                    for (const auto& item : config["certs"])
                        certs.push_back(item.get<std::string>());
            }
            if (p_max == 0)
                p_max = bounds_k + 9;
            if (q_max == 0)
                q_max = bounds_k + 9;
            return cmd_bounds(bounds_k, p_max, q_max, bounds_cell, certs, bounds_csv, out, err);
        }
        throw ParamError("no subcommand selected");
    } catch (const CertificateRejectedError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNegative;
    } catch (const nlohmann::json::exception& e) {
        err << "error: config: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace ramsey
