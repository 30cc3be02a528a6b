#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blockip/certificate.hpp"
#include "blockip/cone.hpp"
#include "blockip/errors.hpp"
#include "blockip/graver.hpp"
#include "blockip/instance_io.hpp"
#include "blockip/nfold.hpp"
#include "blockip/oracle.hpp"
#include "blockip/reductions.hpp"
#include "blockip/twostage.hpp"

using namespace blockip;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

// Generator-set files: one vector per line, '#' comments.
std::vector<std::vector<Int>> read_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::vector<std::vector<Int>> rows;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<Int> row;
        std::string tok;
        while (ls >> tok) row.push_back(Int(tok));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Int> parse_int_list(const std::string& s) {
    std::string t = s;
    for (char& c : t)
        if (c == ',') c = ' ';
    std::istringstream in(t);
    std::vector<Int> out;
    std::string tok;
    while (in >> tok) out.push_back(Int(tok));
    return out;
}

std::string value_str(const Rat& v) {
    return rat_is_int(v) ? v.get_num().get_str() : v.get_str();
}

long env_budget(long fallback) {
    const char* s = std::getenv("BLOCKIP_BUDGET");
    if (!s) return fallback;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    return (end && *end == '\0' && v > 0) ? v : fallback;
}

struct SolveArgs {
    std::string file;
    std::string engine = "residue";
    long xi = 4;
    bool solution = false;
    long budget = 0;
    long threads = 0;  // accepted for interface stability; work is deterministic
};

int run_solve_twostage(const SolveArgs& a) {
    auto inst = parse_instance(slurp(a.file));
    auto* P = std::get_if<TwoStageProgram>(&inst);
    if (!P) {
        std::cerr << "error: not a TWOSTAGE instance\n";
        return 2;
    }
    TwoStageOptions opts;
    opts.mip.node_budget = a.budget;
    opts.residue_budget = a.budget;
    TwoStageVerdict v = a.engine == "direct" ? solve_twostage_direct(*P, opts)
                                             : solve_twostage_residue(*P, opts);
    if (v.status == SolveStatus::RESOURCE_LIMIT) {
        std::cerr << "resource limit exceeded\n";
        return 3;
    }
    std::cout << (v.status == SolveStatus::FEASIBLE ? "FEASIBLE" : "INFEASIBLE") << '\n';
    if (a.solution && v.witness) {
        std::cout << "u " << format_vector(v.witness->u) << '\n';
        for (const IntVec& vi : v.witness->v) std::cout << "v " << format_vector(vi) << '\n';
    }
    return 0;
}

int run_solve_nfold(const SolveArgs& a) {
    auto inst = parse_instance(slurp(a.file));
    auto* P = std::get_if<NFoldProgram>(&inst);
    if (!P) {
        std::cerr << "error: not an NFOLD instance\n";
        return 2;
    }
    NFoldOptions opts;
    opts.xi0 = a.xi;
    opts.mip.node_budget = a.budget;
    NFoldResult r = solve_nfold(*P, opts);
    switch (r.status) {
        case SolveStatus::RESOURCE_LIMIT:
            std::cerr << "resource limit exceeded\n";
            return 3;
        case SolveStatus::UNBOUNDED:
            std::cout << "UNBOUNDED\n";
            return 0;
        case SolveStatus::INFEASIBLE:
            std::cout << "INFEASIBLE\n";
            return 0;
        default:
            std::cout << "OPTIMUM " << value_str(r.value) << '\n';
            if (a.solution)
                for (const IntVec& y : r.witness) std::cout << "y " << format_vector(y) << '\n';
            return 0;
    }
}

int run_analyze(const std::string& file, bool graver, const std::string& cert_file,
                const std::string& cert_r) {
    if (graver) {
        auto rows = read_rows(file);
        if (rows.empty()) throw std::runtime_error("empty matrix file");
        IntMat D = mat_from_rows(make_vars("y", rows[0].size()),
                                 make_vars("r", rows.size()), rows);
        for (const IntVec& g : graver_basis(D)->elements)
            std::cout << "graver " << format_vector(g) << '\n';
        return 0;
    }
    if (!cert_file.empty()) {
        auto rows = read_rows(cert_file);
        if (rows.empty()) throw std::runtime_error("empty generator file");
        VarTuple idx = make_vars("t", rows[0].size());
        std::vector<IntVec> gens;
        for (auto& r : rows) gens.push_back(IntVec(idx, r));
        std::vector<Int> rv = parse_int_list(cert_r);
        if (rv.size() != idx->size()) throw std::runtime_error("residue dimension mismatch");
        auto cert = construct_Q(gens, IntVec(idx, rv));
        std::cout << "B " << cert->B.get_str() << '\n';
        for (std::size_t i = 0; i < cert->facets.size(); ++i)
            std::cout << "facet " << format_vector(cert->facets[i]) << " p "
                      << cert->facet_residues[i].get_str() << '\n';
        auto put_masks = [&](const char* tag, const std::vector<std::size_t>& ms) {
            std::cout << tag;
            for (std::size_t m : ms) std::cout << ' ' << m;
            std::cout << '\n';
        };
        put_masks("L", cert->family_L);
        put_masks("Ldown", cert->family_L_down);
        for (const auto& [q, c] : cert->inequalities)
            std::cout << "ineq " << format_vector(q) << " >= " << c.get_str() << '\n';
        return 0;
    }
    auto rows = read_rows(file);
    if (rows.empty()) throw std::runtime_error("empty generator file");
    VarTuple idx = make_vars("t", rows[0].size());
    std::vector<IntVec> gens;
    for (auto& r : rows) gens.push_back(IntVec(idx, r));
    DualRepresentation rep = weyl_dual(gens);
    for (const IntVec& f : rep.facets) std::cout << "facet " << format_vector(f) << '\n';
    ConeConstants cc = cone_constants(rep);
    std::cout << "L " << cc.L.get_str() << '\n';
    std::cout << "M " << cc.M.get_str() << '\n';
    std::cout << "Mhat " << cc.Mhat.get_str() << '\n';
    std::cout << "K " << cc.K.get_str() << '\n';
    std::cout << "B " << cc.B.get_str() << '\n';
    return 0;
}

int run_check(const std::string& file, long boxN, long budget) {
    auto inst = parse_instance(slurp(file));
    Int lo = 0, hi = boxN;
    bool agree = true;
    if (auto* P = std::get_if<TwoStageProgram>(&inst)) {
        TwoStageOptions opts;
        opts.mip.node_budget = budget;
        opts.residue_budget = budget;
        TwoStageVerdict v = solve_twostage_direct(*P, opts);
        auto bf = oracle::solve_bf(*P, oracle::uniform_box(P->globals->size(), lo, hi),
                                   oracle::uniform_box(P->locals->size(), lo, hi));
        std::cout << "solver "
                  << (v.status == SolveStatus::FEASIBLE ? "FEASIBLE" : "INFEASIBLE") << '\n';
        std::cout << "oracle " << (bf.feasible ? "FEASIBLE" : "INFEASIBLE") << '\n';
        agree = (v.status == SolveStatus::FEASIBLE) == bf.feasible;
    } else if (auto* N = std::get_if<NFoldProgram>(&inst)) {
        NFoldOptions opts;
        opts.mip.node_budget = budget;
        NFoldResult r = solve_nfold(*N, opts);
        auto bf = oracle::solve_bf(*N, oracle::uniform_box(N->locals->size(), lo, hi));
        std::cout << "solver "
                  << (r.status == SolveStatus::OPTIMAL ? "OPTIMUM " + value_str(r.value)
                      : r.status == SolveStatus::UNBOUNDED ? "UNBOUNDED"
                                                           : "INFEASIBLE")
                  << '\n';
        std::cout << "oracle "
                  << (bf.feasible ? "OPTIMUM " + bf.value.get_str() : "INFEASIBLE") << '\n';
        if (r.status == SolveStatus::OPTIMAL)
            agree = bf.feasible && Rat(bf.value) == r.value;
        else if (r.status == SolveStatus::INFEASIBLE)
            agree = !bf.feasible;
        else
            agree = bf.feasible;  // an unbounded program is at least feasible in-box?
    } else {
        auto* F = std::get_if<FourBlockProgram>(&inst);
        auto bf = oracle::solve_bf(*F, oracle::uniform_box(F->globals->size(), lo, hi),
                                   oracle::uniform_box(F->locals->size(), lo, hi));
        std::cout << "oracle " << (bf.feasible ? "FEASIBLE" : "INFEASIBLE") << '\n';
    }
    if (!agree) {
        std::cerr << "solver and oracle disagree\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block-structured integer programming toolkit"};
    app.require_subcommand(1);
    long default_budget = env_budget(200000);

    // solve
    auto* solve = app.add_subcommand("solve", "Solve an instance file");
    solve->require_subcommand(1);
    SolveArgs sa;
    sa.budget = default_budget;
    auto add_common = [&](CLI::App* c) {
        c->add_option("file", sa.file, "instance file")->required();
        c->add_flag("--solution", sa.solution, "print a witness");
        c->add_option("--budget", sa.budget, "search budget");
        c->add_option("--threads", sa.threads, "worker cap");
    };
    auto* st = solve->add_subcommand("two-stage", "two-stage stochastic feasibility");
    add_common(st);
    st->add_option("--engine", sa.engine, "residue|direct")
        ->check(CLI::IsMember({"residue", "direct"}));
    auto* sn = solve->add_subcommand("nfold", "uniform n-fold optimization");
    add_common(sn);
    sn->add_option("--xi", sa.xi, "initial decomposition threshold");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate an instance file");
    gen->require_subcommand(1);
    std::string out = "-";
    std::uint64_t seed = 1;
    long g_vars = 4, g_clauses = 6, g_items = 6, g_max = 20;
    std::string g_values, g_target;
    bool g_perturb = false;
    std::string g_kind = "two-stage";
    auto* gsat = gen->add_subcommand("sat3", "3-CNF reduction instance");
    gsat->add_option("out", out)->required();
    gsat->add_option("--seed", seed);
    gsat->add_option("--vars", g_vars);
    gsat->add_option("--clauses", g_clauses);
    auto* gss = gen->add_subcommand("subset-sum", "subset-sum n-fold instance");
    gss->add_option("out", out)->required();
    gss->add_option("--seed", seed);
    gss->add_option("--items", g_items);
    gss->add_option("--max", g_max);
    gss->add_option("--values", g_values, "comma-separated item values");
    gss->add_option("--target", g_target);
    auto* grnd = gen->add_subcommand("random", "random planted instance");
    grnd->add_option("out", out)->required();
    grnd->add_option("--seed", seed);
    grnd->add_option("--kind", g_kind)->check(CLI::IsMember({"two-stage", "nfold"}));
    grnd->add_flag("--perturb", g_perturb);

    // transform
    auto* tr = app.add_subcommand("transform", "Rewrite an instance");
    tr->require_subcommand(1);
    std::string t_in, t_out;
    auto* shrink = tr->add_subcommand("shrink-4block", "entry shrinking for 4-block");
    shrink->add_option("in", t_in)->required();
    shrink->add_option("out", t_out)->required();

    // analyze
    auto* an = app.add_subcommand("analyze", "Cone / Graver / certificate reports");
    std::string a_file, a_cert_file, a_cert_r;
    bool a_graver = false;
    an->add_option("file", a_file, "generator or matrix file (one row per line)");
    an->add_flag("--graver", a_graver);
    an->add_option("--certificate", a_cert_file, "generator file for a certificate");
    an->add_option("--residue", a_cert_r, "residue vector, comma separated");

    // check
    auto* ck = app.add_subcommand("check", "Cross-check a solver verdict by search");
    std::string c_file;
    long c_box = 5;
    ck->add_option("file", c_file)->required();
    ck->add_option("--oracle-box", c_box, "search bound per variable")->required();
    ck->add_option("--budget", sa.budget);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (st->parsed()) return run_solve_twostage(sa);
        if (sn->parsed()) return run_solve_nfold(sa);
        if (gsat->parsed()) {
            // splitmix64 so the corpus is reproducible across toolchains
            std::uint64_t s = seed;
            auto next = [&]() {
                std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
                z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
                z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
                return z ^ (z >> 31);
            };
            CnfFormula phi;
            phi.nvars = static_cast<int>(g_vars);
            for (long i = 0; i < g_clauses; ++i) {
                CnfClause cl{};
                for (int j = 0; j < 3; ++j) {
                    int v = static_cast<int>(next() % static_cast<std::uint64_t>(g_vars)) + 1;
                    cl.lit[j] = next() % 2 ? v : -v;
                }
                phi.clauses.push_back(cl);
            }
            spill(out, format_instance(gen_3sat(phi)));
            return 0;
        }
        if (gss->parsed()) {
            std::vector<Int> values = parse_int_list(g_values);
            Int target = g_target.empty() ? Int(0) : Int(g_target);
            if (values.empty()) {
                std::uint64_t s = seed;
                auto next = [&]() {
                    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
                    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
                    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
                    return z ^ (z >> 31);
                };
                for (long i = 0; i < g_items; ++i)
                    values.push_back(Int(static_cast<long>(next() % g_max) + 1));
                if (g_target.empty()) {
                    target = 0;
                    for (const Int& v : values)
                        if (next() % 2) target += v;
                }
            }
            spill(out, format_instance(gen_subset_sum(values, target)));
            return 0;
        }
        if (grnd->parsed()) {
            if (g_kind == "two-stage") {
                TwoStageSizes sz;
                sz.perturb = g_perturb;
                spill(out, format_instance(gen_random_twostage(seed, sz).program));
            } else {
                spill(out, format_instance(gen_random_nfold(seed, NFoldSizes{}).program));
            }
            return 0;
        }
        if (shrink->parsed()) {
            auto inst = parse_instance(slurp(t_in));
            auto* F = std::get_if<FourBlockProgram>(&inst);
            if (!F) {
                std::cerr << "error: not a FOURBLOCK instance\n";
                return 2;
            }
            spill(t_out, format_instance(shrink_4block(*F)));
            return 0;
        }
        if (an->parsed()) return run_analyze(a_file, a_graver, a_cert_file, a_cert_r);
        if (ck->parsed()) return run_check(c_file, c_box, sa.budget);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return 3;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
