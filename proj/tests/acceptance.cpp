// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
// argv[1] is the CLI binary, used by the determinism criterion.
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <blockip/certificate.hpp>
#include <blockip/cone.hpp>
#include <blockip/graver.hpp>
#include <blockip/instance_io.hpp>
#include <blockip/lattice.hpp>
#include <blockip/mip.hpp>
#include <blockip/nfold.hpp>
#include <blockip/oracle.hpp>
#include <blockip/reductions.hpp>
#include <blockip/twostage.hpp>

using namespace blockip;

namespace {

struct Rng {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

struct Check {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void report(int num, const std::string& what, const Check& c, double secs) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", secs);
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << num << ": " << what << " ("
              << c.detail << (c.detail.empty() ? "" : "; ") << buf << ")" << std::endl;
    if (!c.ok) ++failures;
}

template <typename F>
void run(int num, const std::string& what, F f) {
    auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
        c = f();
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(num, what, c, secs);
}

std::vector<std::vector<Int>> entry_set(const std::vector<IntVec>& vs) {
    std::vector<std::vector<Int>> out;
    for (const IntVec& v : vs) out.push_back(v.e);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- criterion 1

Check criterion_graver() {
    Rng rng{101};
    int mismatches = 0, norm_violations = 0;
    for (int it = 0; it < 200; ++it) {
        std::size_t t = static_cast<std::size_t>(rng.range(1, 2));
        std::size_t n = static_cast<std::size_t>(rng.range(1, 3));
        auto cols = make_vars("v", n);
        auto rows = make_vars("r", t);
        IntMat D(cols, rows);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < t; ++i) D.at(j, i) = rng.range(-2, 2);
        Int bound = int_pow(Int(2 * Int(t) * D.norm_inf() + 1), static_cast<unsigned long>(t));
        auto gb = graver_basis(D);
        for (const IntVec& g : gb->elements)
            if (g.norm_1() > bound) ++norm_violations;
        auto bf = oracle::graver_bf(D, oracle::uniform_box(n, -bound, bound));
        if (entry_set(gb->elements) != entry_set(bf)) ++mismatches;
    }
    Check c;
    c.ok = mismatches == 0 && norm_violations == 0;
    c.detail = "200 matrices, " + std::to_string(mismatches) + " mismatches, " +
               std::to_string(norm_violations) + " norm violations";
    return c;
}

// ---------------------------------------------------------------- criterion 2

Check criterion_certificates() {
    Rng rng{202};
    const Int Bcap = 100000;
    const Int cell_cap = 4000000;
    int checked = 0, skipped_b = 0, skipped_box = 0, mismatches = 0;
    long points = 0;
    for (int attempt = 0; attempt < 3000 && checked < 50; ++attempt) {
        std::size_t t = static_cast<std::size_t>(rng.range(1, 2));
        std::size_t ng = static_cast<std::size_t>(rng.range(1, 3));
        auto vars = make_vars("x", t);
        std::vector<IntVec> gens;
        for (std::size_t j = 0; j < ng; ++j) {
            IntVec g(vars);
            do {
                for (std::size_t i = 0; i < t; ++i) g[i] = rng.range(-2, 2);
            } while (g.is_zero());
            gens.push_back(std::move(g));
        }
        ConeConstants cc = cone_constants(weyl_dual(gens));
        if (cc.B > Bcap) {
            ++skipped_b;
            continue;
        }
        Int cells = int_pow(10 * cc.B + 1, static_cast<unsigned long>(t));
        if (cells > cell_cap) {
            ++skipped_box;
            continue;
        }
        long Bl = cc.B.get_si();
        oracle::IntConeOracle ora(gens, oracle::uniform_box(t, -5 * cc.B, 5 * cc.B));
        for (int rs = 0; rs < 5; ++rs) {
            IntVec r(vars);
            for (std::size_t i = 0; i < t; ++i) r[i] = rng.range(0, Bl - 1);
            auto cert = construct_Q(gens, r);
            // every lattice point of the residue class inside [-5B, 5B]^t
            std::vector<long> k(t, -5);
            for (;;) {
                IntVec v(vars);
                for (std::size_t i = 0; i < t; ++i) v[i] = r[i] + Int(k[i]) * cc.B;
                ++points;
                if (certified_member(*cert, v) != ora.contains(v)) ++mismatches;
                std::size_t i = 0;
                while (i < t && k[i] == 4) k[i++] = -5;
                if (i == t) break;
                ++k[i];
            }
        }
        ++checked;
    }
    Check c;
    c.ok = checked >= 50 && mismatches == 0;
    c.detail = std::to_string(checked) + " sets x5 residues, " + std::to_string(points) +
               " points, " + std::to_string(mismatches) + " mismatches, skipped " +
               std::to_string(skipped_b) + " (B>1e5) + " + std::to_string(skipped_box) +
               " (oracle box too large)";
    return c;
}

// ---------------------------------------------------------------- criterion 3

Check criterion_deep_cone() {
    Rng rng{303};
    const Int Mcap = 200;
    const Int cell_cap = 4000000;
    int points = 0, mismatches = 0, cones = 0;
    for (int attempt = 0; attempt < 2000 && points < 100; ++attempt) {
        std::size_t t = static_cast<std::size_t>(rng.range(1, 2));
        std::size_t ng = static_cast<std::size_t>(rng.range(1, 3));
        auto vars = make_vars("x", t);
        std::vector<IntVec> gens;
        for (std::size_t j = 0; j < ng; ++j) {
            IntVec g(vars);
            do {
                for (std::size_t i = 0; i < t; ++i) g[i] = rng.range(-2, 2);
            } while (g.is_zero());
            gens.push_back(std::move(g));
        }
        DualRepresentation rep = weyl_dual(gens);
        auto [L, M] = deep_threshold(rep);
        if (M > Mcap) continue;

        // smallest point beyond the threshold, with slack for integer offsets
        Int maxf = 0;
        for (const IntVec& f : rep.facets) maxf = std::max(maxf, f.norm_inf());
        MixedProgram p;
        std::vector<std::size_t> vv(t);
        std::vector<Int> obj(t, 0);
        for (const IntVec& f : rep.facets)
            for (std::size_t i = 0; i < t; ++i) obj[i] += f[i];
        for (std::size_t i = 0; i < t; ++i)
            vv[i] = p.add_var("v" + std::to_string(i), std::nullopt, std::nullopt, obj[i], true);
        for (const IntVec& f : rep.facets) {
            std::vector<LinTerm> terms;
            for (std::size_t i = 0; i < t; ++i)
                if (f[i] != 0) terms.push_back({vv[i], f[i]});
            p.add_constraint(std::move(terms), Rel::Ge, Int(M + 3 * Int(t) * maxf));
        }
        SolveOutcome deep = mip_solve(p);
        if (deep.status != SolveStatus::OPTIMAL && deep.status != SolveStatus::FEASIBLE)
            continue;  // empty or unbounded deep region; not usable for sampling
        IntVec v0(vars);
        for (std::size_t i = 0; i < t; ++i) v0[i] = Int(deep.assignment[vv[i]].get_num());

        Int reach = 3 * v0.norm_inf() + 10;
        if (int_pow(2 * reach + 1, static_cast<unsigned long>(t)) > cell_cap) continue;
        oracle::IntConeOracle ora(gens, oracle::uniform_box(t, -reach, reach));
        ++cones;
        for (int s = 0; s < 10 && points < 100; ++s) {
            IntVec v = v0;
            for (std::size_t i = 0; i < t; ++i) v[i] += rng.range(-3, 3);
            bool deep_enough = true;
            for (const IntVec& f : rep.facets)
                if (inner(f, v) < M) deep_enough = false;
            if (!deep_enough) continue;
            bool lat = lattice_member(gens, v).has_value();
            bool cone = ora.contains(v);
            ++points;
            if (lat != cone) ++mismatches;
        }
    }
    Check c;
    c.ok = points >= 100 && mismatches == 0;
    c.detail = std::to_string(points) + " deep points over " + std::to_string(cones) +
               " cones, " + std::to_string(mismatches) + " mismatches";
    return c;
}

// ---------------------------------------------------------------- criterion 4

Check criterion_twostage_residue() {
    Rng rng{404};
    // one global, one row, all bricks of an instance share one small-modulus
    // D row so the residue scan stays within its budget
    const std::vector<std::vector<long>> feas_pool = {
        {1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {3, -2}, {2, -3}};
    const std::vector<std::pair<std::vector<long>, long>> infeas_pool = {
        {{2}, 2}, {{2, -2}, 2}, {{3, -3}, 3}};
    int wrong = 0, bad_witness = 0;
    for (int it = 0; it < 100; ++it) {
        bool make_feasible = it % 2 == 0;
        std::size_t nb = static_cast<std::size_t>(rng.range(1, 4));
        std::vector<long> drow;
        long g = 1;
        if (make_feasible) {
            drow = feas_pool[static_cast<std::size_t>(rng.range(0, 7))];
        } else {
            auto& pick = infeas_pool[static_cast<std::size_t>(rng.range(0, 2))];
            drow = pick.first;
            g = pick.second;
        }
        TwoStageProgram P;
        P.globals = make_vars("u", 1);
        P.locals = make_vars("v", drow.size());
        P.rowNames = make_vars("r", 1);
        Int ustar = rng.range(0, 1000000);
        std::size_t bad_brick = static_cast<std::size_t>(rng.range(0, static_cast<long>(nb) - 1));
        for (std::size_t i = 0; i < nb; ++i) {
            TwoStageBrick br;
            br.A = IntMat(P.globals, P.rowNames);
            br.D = IntMat(P.locals, P.rowNames);
            Int a = Int(rng.range(1, 1000000000)) * (rng.next() % 2 ? 1 : -1);
            if (!make_feasible) a = a - int_mod(a, g);  // divisible by the obstruction
            if (a == 0) a = g;
            br.A.at(0, 0) = a;
            for (std::size_t j = 0; j < drow.size(); ++j) br.D.at(j, 0) = drow[j];
            IntVec v(P.locals);
            for (std::size_t j = 0; j < drow.size(); ++j) v[j] = rng.range(0, 50);
            br.b = mat_apply(br.A, IntVec(P.globals, {ustar})) + mat_apply(br.D, v);
            if (!make_feasible && i == bad_brick) br.b[0] += 1;  // off the gcd class
            P.bricks.push_back(std::move(br));
        }
        if (!make_feasible) {
            // independent oracle: every value of A u + D v is divisible by g
            Int gg = int_abs(P.bricks[bad_brick].A.at(0, 0));
            for (long d : drow) gg = int_gcd(gg, Int(d));
            if (int_mod(P.bricks[bad_brick].b[0], gg) == 0) {
                ++wrong;  // generator failed to produce a certified-infeasible brick
                continue;
            }
        }
        TwoStageVerdict V = solve_twostage_residue(P, {});
        if (make_feasible) {
            if (V.status != SolveStatus::FEASIBLE || !V.witness) {
                ++wrong;
                continue;
            }
            const TwoStageWitness& W = *V.witness;
            bool good = true;
            for (const Int& x : W.u.e) good = good && x >= 0;
            for (std::size_t i = 0; i < nb; ++i) {
                for (const Int& x : W.v[i].e) good = good && x >= 0;
                good = good && mat_apply(P.bricks[i].A, W.u) +
                                       mat_apply(P.bricks[i].D, W.v[i]) ==
                                   P.bricks[i].b;
            }
            if (!good) ++bad_witness;
        } else if (V.status != SolveStatus::INFEASIBLE) {
            ++wrong;
        }
    }
    Check c;
    c.ok = wrong == 0 && bad_witness == 0;
    c.detail = "100 instances, " + std::to_string(wrong) + " wrong verdicts, " +
               std::to_string(bad_witness) + " bad witnesses";
    return c;
}

// ---------------------------------------------------------------- criterion 5

Check criterion_sat() {
    Rng rng{505};
    int mismatches = 0;
    for (int it = 0; it < 100; ++it) {
        CnfFormula phi;
        phi.nvars = static_cast<int>(rng.range(1, 5));
        int m = static_cast<int>(rng.range(1, 8));
        for (int i = 0; i < m; ++i) {
            CnfClause cl;
            for (int j = 0; j < 3; ++j) {
                int var = static_cast<int>(rng.range(1, phi.nvars));
                cl.lit[j] = rng.next() % 2 ? var : -var;
            }
            phi.clauses.push_back(cl);
        }
        bool sat = false;
        for (unsigned mask = 0; mask < (1u << phi.nvars) && !sat; ++mask) {
            bool all = true;
            for (const CnfClause& cl : phi.clauses) {
                bool any = false;
                for (int lit : cl.lit) {
                    bool val = mask >> (std::abs(lit) - 1) & 1;
                    if (lit < 0) val = !val;
                    any = any || val;
                }
                all = all && any;
            }
            sat = all;
        }
        TwoStageVerdict V = solve_twostage_direct(gen_3sat(phi), {});
        bool solver_sat = V.status == SolveStatus::FEASIBLE;
        if (V.status != SolveStatus::FEASIBLE && V.status != SolveStatus::INFEASIBLE)
            ++mismatches;
        else if (sat != solver_sat)
            ++mismatches;
    }
    Check c;
    c.ok = mismatches == 0;
    c.detail = "100 formulas, " + std::to_string(mismatches) + " mismatches";
    return c;
}

// ---------------------------------------------------------------- criterion 6

// Exhaustive search needs a box that provably contains every feasible point,
// so instances are drawn bounded by construction, alternating two shapes:
// even iterations force the first local row of each D strictly positive
// (then y_j <= b[0] for all j), odd iterations force C strictly positive
// (then y_j <= a_r for every link row r). Unbounded programs are covered by
// a deterministic unit test instead.
Check criterion_nfold() {
    Rng rng{606};
    int mismatches = 0, unfaithful = 0;
    for (int it = 0; it < 100; ++it) {
        bool positiveC = it % 2 != 0;
        NFoldSizes sz;
        sz.locals = static_cast<std::size_t>(rng.range(1, positiveC ? 2 : 3));
        sz.linkRows = static_cast<std::size_t>(rng.range(1, 2));
        sz.localRows = static_cast<std::size_t>(rng.range(1, 2));
        sz.bricks = static_cast<std::size_t>(rng.range(1, positiveC ? 3 : 5));
        RandomNFold R = gen_random_nfold(rng.next(), sz);
        NFoldProgram& P = R.program;
        if (positiveC) {
            for (std::size_t j = 0; j < sz.locals; ++j)
                for (std::size_t r = 0; r < sz.linkRows; ++r)
                    P.C.at(j, r) = rng.range(1, 2);
        } else {
            for (std::size_t i = 0; i < sz.bricks; ++i) {
                for (std::size_t j = 0; j < sz.locals; ++j)
                    P.bricks[i].D.at(j, 0) = rng.range(1, 2);
                P.bricks[i].b = mat_apply(P.bricks[i].D, R.planted[i]);
            }
        }
        P.a = IntVec(P.linkRows);
        for (std::size_t i = 0; i < sz.bricks; ++i)
            P.a = P.a + mat_apply(P.C, R.planted[i]);
        Int bound = 0;
        if (positiveC) {
            for (std::size_t r = 0; r < sz.linkRows; ++r) bound = std::max(bound, P.a[r]);
        } else {
            for (const NFoldBrick& br : P.bricks) bound = std::max(bound, br.b[0]);
        }
        for (const NFoldBrick& br : P.bricks) {
            if (br.b.is_zero()) continue;  // nothing to decompose
            FaithfulDecomposition fd = faithful_decompose(br.D, br.b, 4);
            if (!faithful_check(br.D, br.b, fd.parts)) ++unfaithful;
        }
        NFoldResult res = solve_nfold(P);
        oracle::BfOptimum bf =
            oracle::solve_bf(P, oracle::uniform_box(sz.locals, 0, bound.get_si()));
        if (res.status != SolveStatus::OPTIMAL || !bf.feasible || Rat(bf.value) != res.value)
            ++mismatches;
    }
    Check c;
    c.ok = mismatches == 0 && unfaithful == 0;
    c.detail = "100 instances, " + std::to_string(mismatches) + " optimum mismatches, " +
               std::to_string(unfaithful) + " unfaithful decompositions";
    return c;
}

// ---------------------------------------------------------------- criterion 7

Check criterion_subset_sum() {
    Rng rng{707};
    int mismatches = 0;
    for (int it = 0; it < 50; ++it) {
        std::size_t n = static_cast<std::size_t>(rng.range(1, 12));
        std::vector<Int> a;
        long total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            long w = rng.range(1, 20);
            a.push_back(w);
            total += w;
        }
        long target;
        if (it % 2 == 0) {
            target = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (rng.next() % 2) target += a[i].get_si();
        } else {
            target = rng.range(0, total);
        }
        std::vector<char> dp(static_cast<std::size_t>(total) + 1, 0);
        dp[0] = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (long s = total; s >= a[i].get_si(); --s)
                dp[s] = dp[s] || dp[s - a[i].get_si()];
        bool feasible = dp[static_cast<std::size_t>(target)];
        NFoldResult res = solve_nfold(gen_subset_sum(a, target));
        bool solver_feasible = res.status == SolveStatus::OPTIMAL;
        if (res.status != SolveStatus::OPTIMAL && res.status != SolveStatus::INFEASIBLE)
            ++mismatches;
        else if (feasible != solver_feasible)
            ++mismatches;
    }
    Check c;
    c.ok = mismatches == 0;
    c.detail = "50 instances, " + std::to_string(mismatches) + " mismatches";
    return c;
}

// ---------------------------------------------------------------- criterion 8

Check criterion_shrink() {
    Rng rng{808};
    int entry_violations = 0, mismatches = 0;
    for (int it = 0; it < 20; ++it) {
        long n = rng.range(1, 3);
        FourBlockProgram P;
        P.globals = make_vars("x", 1);
        P.locals = make_vars("y", 1);
        P.linkRows = make_vars("s", static_cast<std::size_t>(rng.range(1, 2)));
        P.localRows = make_vars("r", static_cast<std::size_t>(rng.range(1, 2)));
        P.Bhat = IntMat(P.globals, P.linkRows);
        P.C = IntMat(P.locals, P.linkRows);
        P.A = IntMat(P.globals, P.localRows);
        for (std::size_t i = 0; i < P.linkRows->size(); ++i) {
            P.Bhat.at(0, i) = rng.range(-n, n);
            P.C.at(0, i) = rng.range(-n, n);
        }
        for (std::size_t i = 0; i < P.localRows->size(); ++i) P.A.at(0, i) = rng.range(-n, n);
        P.bricks.resize(static_cast<std::size_t>(n));
        for (auto& br : P.bricks) {
            br.D = IntMat(P.locals, P.localRows);
            br.b = IntVec(P.localRows);
            for (std::size_t i = 0; i < P.localRows->size(); ++i)
                br.D.at(0, i) = rng.range(-n, n);
        }
        P.a = IntVec(P.linkRows);
        if (it % 2 == 0) {
            // plant a small solution
            Int x = rng.range(0, 2);
            std::vector<Int> ys;
            for (auto& br : P.bricks) {
                Int y = rng.range(0, 2);
                br.b = mat_apply(P.A, IntVec(P.globals, {x})) +
                       mat_apply(br.D, IntVec(P.locals, {y}));
                P.a = P.a + mat_apply(P.C, IntVec(P.locals, {y}));
                ys.push_back(y);
            }
            P.a = P.a + mat_apply(P.Bhat, IntVec(P.globals, {x}));
        } else {
            for (std::size_t i = 0; i < P.linkRows->size(); ++i) P.a[i] = rng.range(-3, 3);
            for (auto& br : P.bricks)
                for (std::size_t i = 0; i < P.localRows->size(); ++i)
                    br.b[i] = rng.range(-3, 3);
        }

        FourBlockProgram Q = shrink_4block(P);
        if (Q.Bhat.norm_inf() > 1 || Q.C.norm_inf() > 1 || Q.A.norm_inf() > 1)
            ++entry_violations;
        // copy chains in the rewrite carry partial sums up to the largest
        // right-hand side, so the transformed search box is much wider
        auto before = oracle::solve_bf(P, oracle::uniform_box(1, 0, 4),
                                       oracle::uniform_box(1, 0, 4));
        auto after = oracle::solve_bf(Q, oracle::uniform_box(Q.globals->size(), 0, 40),
                                      oracle::uniform_box(Q.locals->size(), 0, 40));
        if (before.feasible != after.feasible) ++mismatches;
    }
    Check c;
    c.ok = entry_violations == 0 && mismatches == 0;
    c.detail = "20 instances, " + std::to_string(entry_violations) + " entry violations, " +
               std::to_string(mismatches) + " feasibility mismatches";
    return c;
}

// ---------------------------------------------------------------- criterion 9

Check criterion_tu_rounding() {
    Rng rng{909};
    int models = 0, violations = 0, attempts = 0;
    while (models < 100 && attempts < 500) {
        ++attempts;
        NFoldSizes sz;
        sz.locals = static_cast<std::size_t>(rng.range(1, 3));
        sz.linkRows = static_cast<std::size_t>(rng.range(1, 2));
        sz.localRows = static_cast<std::size_t>(rng.range(1, 2));
        sz.bricks = static_cast<std::size_t>(rng.range(1, 5));
        RandomNFold R = gen_random_nfold(rng.next(), sz);
        NFoldProgram expanded = expand_program(R.program, 4);
        ModelM M = build_model(expanded, 4);
        SolveOutcome out = mip_solve(M.prog);
        if (out.status != SolveStatus::OPTIMAL) continue;  // unbounded models are unusable
        std::vector<std::pair<std::size_t, Int>> fixes;
        for (std::size_t j = 0; j < M.prog.nvars(); ++j)
            if (M.prog.integer[j]) {
                if (!rat_is_int(out.assignment[j])) ++violations;
                fixes.push_back({j, Int(out.assignment[j].get_num())});
            }
        std::vector<Rat> rounded = tu_round(M.prog, fixes);
        for (const auto& om : M.omegas)
            if (!rat_is_int(rounded[om.var])) ++violations;
        ++models;
    }
    Check c;
    c.ok = models == 100 && violations == 0;
    c.detail = std::to_string(models) + " models, " + std::to_string(violations) +
               " integrality violations";
    return c;
}

// --------------------------------------------------------------- criterion 10

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Check criterion_determinism(const std::string& cli) {
    std::string dir = "acc_tmp";
    if (std::system(("mkdir -p " + dir).c_str()) != 0) return {false, "mkdir failed"};
    auto sh = [&](const std::string& cmd, const std::string& out) -> bool {
        return std::system((cli + " " + cmd + " > " + dir + "/" + out + " 2>&1").c_str()) == 0;
    };
    int diffs = 0, errors = 0;
    auto same = [&](const std::string& a, const std::string& b) {
        std::string sa = slurp(dir + "/" + a), sb = slurp(dir + "/" + b);
        if (sa.empty() || sa != sb) ++diffs;
    };

    if (!sh("gen sat3 --seed 11 --vars 4 --clauses 6 " + dir + "/sat.txt", "g1")) ++errors;
    if (!sh("solve two-stage " + dir + "/sat.txt --engine direct --solution --threads 1", "s1"))
        ++errors;
    if (!sh("solve two-stage " + dir + "/sat.txt --engine direct --solution --threads 4", "s2"))
        ++errors;
    if (!sh("solve two-stage " + dir + "/sat.txt --engine direct --solution --threads 1", "s3"))
        ++errors;
    same("s1", "s2");
    same("s1", "s3");

    if (!sh("gen random --kind nfold --seed 3 " + dir + "/nf.txt", "g2")) ++errors;
    if (!sh("solve nfold " + dir + "/nf.txt --solution --threads 1", "n1")) ++errors;
    if (!sh("solve nfold " + dir + "/nf.txt --solution --threads 4", "n2")) ++errors;
    same("n1", "n2");

    if (!sh("gen random --kind two-stage --seed 7 " + dir + "/ts.txt", "g3")) ++errors;
    if (!sh("solve two-stage " + dir + "/ts.txt --engine residue --solution --threads 1", "t1"))
        ++errors;
    if (!sh("solve two-stage " + dir + "/ts.txt --engine residue --solution --threads 4", "t2"))
        ++errors;
    same("t1", "t2");

    {
        std::ofstream g(dir + "/gens.txt");
        g << "3\n5\n";
    }
    if (!sh("analyze --certificate " + dir + "/gens.txt --residue 1", "a1")) ++errors;
    if (!sh("analyze --certificate " + dir + "/gens.txt --residue 1", "a2")) ++errors;
    same("a1", "a2");

    Check c;
    c.ok = diffs == 0 && errors == 0;
    c.detail = std::to_string(diffs) + " output diffs, " + std::to_string(errors) +
               " command failures";
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <cli-binary>\n";
        return 2;
    }
    std::string cli = argv[1];

    run(1, "Graver basis matches brute force with the norm bound", criterion_graver);
    run(2, "residue-class certificates match integer-cone search", criterion_certificates);
    run(3, "deep points: lattice membership equals cone membership", criterion_deep_cone);
    run(4, "two-stage residue engine verdicts and witnesses", criterion_twostage_residue);
    run(5, "3-SAT reduction matches brute-force satisfiability", criterion_sat);
    run(6, "n-fold optimum matches exhaustive search, decompositions faithful",
        criterion_nfold);
    run(7, "subset-sum reduction matches dynamic programming", criterion_subset_sum);
    run(8, "4-block shrink: small entries, feasibility preserved", criterion_shrink);
    run(9, "post-fix LP vertices are integral in distribution variables",
        criterion_tu_rounding);
    run(10, "CLI output is byte-identical across reruns and thread counts",
        [&] { return criterion_determinism(cli); });

    if (failures) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
