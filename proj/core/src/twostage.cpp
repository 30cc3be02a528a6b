#include "blockip/twostage.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "blockip/certificate.hpp"
#include "blockip/cone.hpp"
#include "blockip/errors.hpp"

namespace blockip {

namespace {

std::string key_of(const IntMat& M) {
    std::ostringstream os;
    os << M.ncols() << 'x' << M.nrows();
    for (const auto& c : M.col)
        for (const Int& x : c) os << ',' << x;
    return os.str();
}

std::string key_of(const IntVec& v) {
    std::ostringstream os;
    for (const Int& x : v.e) os << ',' << x;
    return os.str();
}

Int rat_to_int(const Rat& q) {
    if (!rat_is_int(q)) throw std::logic_error("expected integral value");
    return Int(q.get_num());
}

void check_witness(const TwoStageProgram& P, const TwoStageWitness& W) {
    for (const Int& x : W.u.e)
        if (x < 0) throw std::logic_error("two-stage witness: negative global");
    for (std::size_t i = 0; i < P.bricks.size(); ++i) {
        for (const Int& x : W.v[i].e)
            if (x < 0) throw std::logic_error("two-stage witness: negative local");
        IntVec lhs = mat_apply(P.bricks[i].A, W.u) + mat_apply(P.bricks[i].D, W.v[i]);
        if (!(lhs == P.bricks[i].b))
            throw std::logic_error("two-stage witness: brick equation violated");
    }
}

// v >= 0 integer with D v = rhs, or nothing. Memoized globally: the residue
// scans revisit the same (D, rhs) pairs across bricks and instances.
std::optional<IntVec> local_solve(const IntMat& D, const IntVec& rhs,
                                  const SolveLimits& lim) {
    static std::mutex mu;
    static std::map<std::string, std::optional<std::vector<Int>>> cache;
    std::string key = key_of(D) + '|' + key_of(rhs);
    {
        std::lock_guard<std::mutex> g(mu);
        auto it = cache.find(key);
        if (it != cache.end()) {
            if (!it->second) return std::nullopt;
            return IntVec(D.cols, *it->second);
        }
    }
    MixedProgram p;
    for (std::size_t j = 0; j < D.ncols(); ++j)
        p.add_var("v" + std::to_string(j), Int(0), std::nullopt, Int(0), true);
    for (std::size_t i = 0; i < D.nrows(); ++i) {
        std::vector<LinTerm> terms;
        for (std::size_t j = 0; j < D.ncols(); ++j)
            if (D.col[j][i] != 0) terms.push_back({j, D.col[j][i]});
        p.add_constraint(std::move(terms), Rel::Eq, rhs[i]);
    }
    SolveOutcome out = mip_solve(p, lim);
    if (out.status == SolveStatus::RESOURCE_LIMIT)
        throw ResourceLimitError("two-stage: local solve budget");
    std::optional<std::vector<Int>> entry;
    std::optional<IntVec> result;
    if (out.status == SolveStatus::OPTIMAL || out.status == SolveStatus::FEASIBLE) {
        std::vector<Int> vals;
        for (std::size_t j = 0; j < D.ncols(); ++j)
            vals.push_back(rat_to_int(out.assignment[j]));
        entry = vals;
        result = IntVec(D.cols, std::move(vals));
    }
    std::lock_guard<std::mutex> g(mu);
    cache.emplace(std::move(key), std::move(entry));
    return result;
}

}  // namespace

NormalizedTwoStage normalize_twostage(const TwoStageProgram& P) {
    NormalizedTwoStage N;
    std::size_t maxkept = 0;
    std::vector<std::vector<std::vector<Int>>> reduced;  // per brick, kept columns
    for (const TwoStageBrick& br : P.bricks) {
        std::vector<std::vector<Int>> kept;
        std::vector<std::size_t> keptIdx;
        for (std::size_t j = 0; j < br.D.ncols(); ++j) {
            if (std::find(kept.begin(), kept.end(), br.D.col[j]) != kept.end()) continue;
            kept.push_back(br.D.col[j]);
            keptIdx.push_back(j);
        }
        maxkept = std::max(maxkept, kept.size());
        N.kept_cols.push_back(std::move(keptIdx));
        reduced.push_back(std::move(kept));
    }

    N.program.globals = P.globals;
    N.program.rowNames = P.rowNames;
    N.program.locals = make_vars("y", maxkept);
    for (std::size_t i = 0; i < P.bricks.size(); ++i) {
        // Canonical type: the kept columns in sorted order (padding columns
        // are all-zero and sort first, so equal-width types compare cleanly).
        std::vector<std::vector<Int>> cols = reduced[i];
        cols.resize(maxkept, std::vector<Int>(P.rowNames->size(), 0));
        std::vector<std::vector<Int>> sorted = cols;
        std::sort(sorted.begin(), sorted.end());
        IntMat canon(N.program.locals, P.rowNames);
        canon.col = sorted;
        std::size_t t = 0;
        while (t < N.types.size() && !(N.types[t] == canon)) ++t;
        if (t == N.types.size()) N.types.push_back(canon);
        N.type_of.push_back(t);

        TwoStageBrick nb;
        nb.A = P.bricks[i].A;
        nb.D = IntMat(N.program.locals, P.rowNames);
        nb.D.col = std::move(cols);
        nb.b = P.bricks[i].b;
        N.program.bricks.push_back(std::move(nb));
    }
    return N;
}

TwoStageVerdict solve_twostage_residue(const TwoStageProgram& P,
                                       const TwoStageOptions& opts) {
    if (P.bricks.empty())
        return {SolveStatus::FEASIBLE, TwoStageWitness{IntVec(P.globals), {}}};
    NormalizedTwoStage N = normalize_twostage(P);
    std::size_t nx = P.globals->size();
    std::size_t t = P.rowNames->size();

    // Generator set and modulus per D-type (zero columns add nothing to the cone).
    std::vector<std::vector<IntVec>> gens_of(N.types.size());
    std::vector<Int> B_of(N.types.size());
    Int B = 1;
    for (std::size_t ty = 0; ty < N.types.size(); ++ty) {
        for (std::size_t j = 0; j < N.types[ty].ncols(); ++j) {
            IntVec c = N.types[ty].column(j);
            if (!c.is_zero()) gens_of[ty].push_back(std::move(c));
        }
        ConeConstants cc = cone_constants(weyl_dual(gens_of[ty]));
        B_of[ty] = cc.B;
        B = int_lcm(B, cc.B);
    }

    Int total = int_pow(B, static_cast<unsigned long>(nx));
    if (total > opts.residue_budget)
        return {SolveStatus::RESOURCE_LIMIT, std::nullopt};

    std::vector<Int> r(nx, 0);
    for (Int idx = 0; idx < total; ++idx) {
        // Decode idx into the lexicographic residue vector.
        Int rem = idx;
        for (std::size_t j = nx; j-- > 0;) {
            r[j] = int_mod(rem, B);
            rem = int_fdiv(rem, B);
        }
        IntVec rv(P.globals, r);

        MixedProgram p;
        std::vector<std::size_t> uvar(nx), wvar(nx);
        for (std::size_t j = 0; j < nx; ++j)
            uvar[j] = p.add_var("u" + std::to_string(j), Int(0), std::nullopt, Int(0), true);
        for (std::size_t j = 0; j < nx; ++j)
            wvar[j] = p.add_var("w" + std::to_string(j), std::nullopt, std::nullopt,
                                Int(0), true);
        for (std::size_t j = 0; j < nx; ++j)
            p.add_constraint({{uvar[j], Int(1)}, {wvar[j], Int(-B)}}, Rel::Eq, r[j]);

        bool carved_empty = false;
        for (std::size_t i = 0; i < N.program.bricks.size() && !carved_empty; ++i) {
            std::size_t ty = N.type_of[i];
            IntVec rhs0 = N.program.bricks[i].b - mat_apply(N.program.bricks[i].A, rv);
            IntVec ri(P.rowNames);
            for (std::size_t k = 0; k < t; ++k) ri[k] = int_mod(rhs0[k], B_of[ty]);
            auto cert = construct_Q(gens_of[ty], ri);
            for (const auto& [q, a] : cert->inequalities) {
                // <q, b_i - A_i u> >= a
                std::vector<LinTerm> terms;
                Int cst = inner(q, N.program.bricks[i].b);
                for (std::size_t j = 0; j < nx; ++j) {
                    Int c = 0;
                    for (std::size_t k = 0; k < t; ++k)
                        c -= q[k] * N.program.bricks[i].A.col[j][k];
                    if (c != 0) terms.push_back({uvar[j], c});
                }
                if (terms.empty() && cst < a) {
                    carved_empty = true;
                    break;
                }
                if (!terms.empty()) p.add_constraint(std::move(terms), Rel::Ge, a - cst);
            }
        }
        if (carved_empty) continue;

        SolveOutcome out = mip_solve(p, opts.mip);
        if (out.status == SolveStatus::RESOURCE_LIMIT)
            return {SolveStatus::RESOURCE_LIMIT, std::nullopt};
        if (out.status != SolveStatus::OPTIMAL && out.status != SolveStatus::FEASIBLE)
            continue;

        TwoStageWitness W;
        W.u = IntVec(P.globals);
        for (std::size_t j = 0; j < nx; ++j) W.u[j] = rat_to_int(out.assignment[uvar[j]]);
        for (std::size_t i = 0; i < P.bricks.size(); ++i) {
            IntVec rhs = P.bricks[i].b - mat_apply(P.bricks[i].A, W.u);
            auto v = local_solve(P.bricks[i].D, rhs, opts.mip);
            if (!v) throw std::logic_error("two-stage: certificate accepted infeasible rhs");
            W.v.push_back(std::move(*v));
        }
        check_witness(P, W);
        return {SolveStatus::FEASIBLE, std::move(W)};
    }
    return {SolveStatus::INFEASIBLE, std::nullopt};
}

namespace {

// Candidate periods for the direct engine's residue scan: the divisors of
// 2^3 * 3^2 * 5 * 7 * 11, ascending.
std::vector<Int> period_ladder() {
    std::vector<Int> out;
    for (Int d = 1; d <= 27720; ++d)
        if (27720 % d == 0) out.push_back(d);
    return out;
}

// Is s * a in intCone(columns of D)? Memoized; these probes repeat heavily.
bool cone_probe(const IntMat& D, const IntVec& a, const Int& s, const SolveLimits& lim) {
    IntVec rhs = a * s;
    return local_solve(D, rhs, lim).has_value();
}

struct BrickPeriod {
    std::optional<Int> up;    // min p with -p*a in intCone(D): u-axis up-closure
    std::optional<Int> down;  // min p with +p*a in intCone(D): down-closure
};

// Flat one-shot MIP over (u, all v_i); feasibility only.
TwoStageVerdict solve_flat(const TwoStageProgram& P, const TwoStageOptions& opts) {
    std::size_t nx = P.globals->size(), ny = P.locals->size();
    MixedProgram p;
    for (std::size_t j = 0; j < nx; ++j)
        p.add_var("u" + std::to_string(j), Int(0), std::nullopt, Int(0), true);
    for (std::size_t i = 0; i < P.bricks.size(); ++i)
        for (std::size_t j = 0; j < ny; ++j)
            p.add_var("v" + std::to_string(i) + "_" + std::to_string(j), Int(0),
                      std::nullopt, Int(0), true);
    for (std::size_t i = 0; i < P.bricks.size(); ++i)
        for (std::size_t row = 0; row < P.rowNames->size(); ++row) {
            std::vector<LinTerm> terms;
            for (std::size_t j = 0; j < nx; ++j)
                if (P.bricks[i].A.col[j][row] != 0)
                    terms.push_back({j, P.bricks[i].A.col[j][row]});
            for (std::size_t j = 0; j < ny; ++j)
                if (P.bricks[i].D.col[j][row] != 0)
                    terms.push_back({nx + i * ny + j, P.bricks[i].D.col[j][row]});
            p.add_constraint(std::move(terms), Rel::Eq, P.bricks[i].b[row]);
        }
    SolveOutcome out = mip_solve(p, opts.mip);
    if (out.status == SolveStatus::RESOURCE_LIMIT)
        return {SolveStatus::RESOURCE_LIMIT, std::nullopt};
    if (out.status != SolveStatus::OPTIMAL && out.status != SolveStatus::FEASIBLE)
        return {SolveStatus::INFEASIBLE, std::nullopt};
    TwoStageWitness W;
    W.u = IntVec(P.globals);
    for (std::size_t j = 0; j < nx; ++j) W.u[j] = rat_to_int(out.assignment[j]);
    for (std::size_t i = 0; i < P.bricks.size(); ++i) {
        IntVec v(P.locals);
        for (std::size_t j = 0; j < ny; ++j)
            v[j] = rat_to_int(out.assignment[nx + i * ny + j]);
        W.v.push_back(std::move(v));
    }
    check_witness(P, W);
    return {SolveStatus::FEASIBLE, std::move(W)};
}

// Feasible-k interval endpoint: minimize (sign=+1) or maximize (sign=-1) k
// over v >= 0, k >= 0, D v = b - (s + k*step) * a. nullopt = unbounded end.
struct KProbe {
    bool feasible = false;
    std::optional<Int> k;  // the extreme value, absent when unbounded
};

KProbe k_extreme(const IntMat& D, const IntVec& a, const IntVec& b, const Int& s,
                 const Int& step, int sign, const SolveLimits& lim) {
    static std::mutex mu;
    static std::map<std::string, KProbe> cache;
    std::string key = key_of(D) + '|' + key_of(a) + '|' + key_of(b) + '|' +
                      to_string(s) + '|' + to_string(step) + '|' + std::to_string(sign);
    {
        std::lock_guard<std::mutex> g(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    MixedProgram p;
    std::size_t kv = p.add_var("k", Int(0), std::nullopt, Int(sign), true);
    for (std::size_t j = 0; j < D.ncols(); ++j)
        p.add_var("v" + std::to_string(j), Int(0), std::nullopt, Int(0), true);
    for (std::size_t i = 0; i < D.nrows(); ++i) {
        std::vector<LinTerm> terms;
        if (a[i] != 0) terms.push_back({kv, a[i] * step});
        for (std::size_t j = 0; j < D.ncols(); ++j)
            if (D.col[j][i] != 0) terms.push_back({1 + j, D.col[j][i]});
        p.add_constraint(std::move(terms), Rel::Eq, b[i] - s * a[i]);
    }
    SolveOutcome out = mip_solve(p, lim);
    if (out.status == SolveStatus::RESOURCE_LIMIT)
        throw ResourceLimitError("two-stage: period scan budget");
    KProbe r;
    if (out.status == SolveStatus::UNBOUNDED) {
        r.feasible = true;  // k unbounded in the optimized direction
    } else if (out.status == SolveStatus::OPTIMAL || out.status == SolveStatus::FEASIBLE) {
        r.feasible = true;
        r.k = rat_to_int(out.assignment[kv]);
    }
    std::lock_guard<std::mutex> g(mu);
    cache.emplace(std::move(key), r);
    return r;
}

}  // namespace

TwoStageVerdict solve_twostage_direct(const TwoStageProgram& P,
                                      const TwoStageOptions& opts) {
    if (P.bricks.empty())
        return {SolveStatus::FEASIBLE, TwoStageWitness{IntVec(P.globals), {}}};
    if (P.globals->size() != 1) return solve_flat(P, opts);

    // Single global u: per brick, look for a period p such that the feasible
    // u-set of the brick is closed under u -> u+p (up) or u -> u-p (down).
    // With a period per brick, feasibility per residue class mod the lcm is
    // an interval in the step count k, so the whole line reduces to finitely
    // many small programs.
    static const std::vector<Int> ladder = period_ladder();
    std::vector<IntVec> acol;
    for (const TwoStageBrick& br : P.bricks) acol.push_back(br.A.column(0));

    std::vector<BrickPeriod> per(P.bricks.size());
    Int Pstar = 1;
    for (std::size_t i = 0; i < P.bricks.size(); ++i) {
        for (const Int& pc : ladder) {
            if (!per[i].up && cone_probe(P.bricks[i].D, acol[i], Int(-pc), opts.mip))
                per[i].up = pc;
            if (!per[i].down && cone_probe(P.bricks[i].D, acol[i], pc, opts.mip))
                per[i].down = pc;
            if (per[i].up && per[i].down) break;
        }
        if (!per[i].up && !per[i].down) return solve_flat(P, opts);
        if (per[i].up) Pstar = int_lcm(Pstar, *per[i].up);
        if (per[i].down) Pstar = int_lcm(Pstar, *per[i].down);
    }
    if (Pstar > opts.residue_budget) return solve_flat(P, opts);

    // Classify every residue class mod each brick's own period once. The
    // per-brick feasible u-set restricted to a class is a half-line (up), a
    // prefix (down), or all-or-nothing (closed both ways), so the global scan
    // below intersects arithmetic intervals instead of solving programs.
    enum class Mode { Both, Up, Down };
    struct Classes {
        Mode mode = Mode::Both;
        Int p;
        std::vector<bool> feasible;
        std::vector<Int> minu, maxu;
        std::vector<bool> unbounded;  // down mode: no upper end
    };
    std::vector<Classes> cls(P.bricks.size());
    Int probe_total = 0;
    for (std::size_t i = 0; i < P.bricks.size(); ++i) {
        Classes& C = cls[i];
        if (per[i].up && per[i].down) {
            C.mode = Mode::Both;
            C.p = int_lcm(*per[i].up, *per[i].down);
        } else if (per[i].up) {
            C.mode = Mode::Up;
            C.p = *per[i].up;
        } else {
            C.mode = Mode::Down;
            C.p = *per[i].down;
        }
        probe_total += C.p;
    }
    if (probe_total > opts.residue_budget) return solve_flat(P, opts);
    for (std::size_t i = 0; i < P.bricks.size(); ++i) {
        const IntMat& D = P.bricks[i].D;
        const IntVec &a = acol[i], &b = P.bricks[i].b;
        Classes& C = cls[i];
        std::size_t pn = static_cast<std::size_t>(C.p.get_ui());
        C.feasible.assign(pn, false);
        C.minu.assign(pn, Int(0));
        C.maxu.assign(pn, Int(0));
        C.unbounded.assign(pn, false);
        for (std::size_t r = 0; r < pn; ++r) {
            Int rr(static_cast<unsigned long>(r));
            if (C.mode == Mode::Both) {
                C.feasible[r] = local_solve(D, b - a * rr, opts.mip).has_value();
            } else if (C.mode == Mode::Up) {
                KProbe pr = k_extreme(D, a, b, rr, C.p, +1, opts.mip);
                C.feasible[r] = pr.feasible;
                if (pr.feasible) C.minu[r] = rr + pr.k.value_or(Int(0)) * C.p;
            } else {
                KProbe pr = k_extreme(D, a, b, rr, C.p, -1, opts.mip);
                C.feasible[r] = pr.feasible;
                if (pr.feasible && pr.k)
                    C.maxu[r] = rr + *pr.k * C.p;
                else if (pr.feasible)
                    C.unbounded[r] = true;
            }
        }
    }

    for (Int s = 0; s < Pstar; ++s) {
        // Intersect per-brick feasible-k intervals on u = s + k * Pstar.
        Int klo = 0;
        std::optional<Int> khi;
        bool empty = false;
        for (std::size_t i = 0; i < P.bricks.size() && !empty; ++i) {
            Classes& C = cls[i];
            std::size_t r = static_cast<std::size_t>(int_mod(s, C.p).get_ui());
            if (!C.feasible[r]) {
                empty = true;
            } else if (C.mode == Mode::Up) {
                klo = std::max(klo, int_cdiv(C.minu[r] - s, Pstar));
            } else if (C.mode == Mode::Down && !C.unbounded[r]) {
                Int kh = int_fdiv(C.maxu[r] - s, Pstar);
                khi = khi ? std::min(*khi, kh) : kh;
            }
        }
        if (empty || (khi && *khi < klo)) continue;

        Int u0 = s + klo * Pstar;
        TwoStageWitness W;
        W.u = IntVec(P.globals);
        W.u[0] = u0;
        for (std::size_t i = 0; i < P.bricks.size(); ++i) {
            auto v = local_solve(P.bricks[i].D, P.bricks[i].b - acol[i] * u0, opts.mip);
            if (!v) throw std::logic_error("two-stage: period interval not realizable");
            W.v.push_back(std::move(*v));
        }
        check_witness(P, W);
        return {SolveStatus::FEASIBLE, std::move(W)};
    }
    return {SolveStatus::INFEASIBLE, std::nullopt};
}

}  // namespace blockip
