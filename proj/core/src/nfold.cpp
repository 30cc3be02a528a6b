#include "blockip/nfold.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "blockip/errors.hpp"
#include "blockip/graver.hpp"

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

std::vector<IntVec> nonneg_graver(const IntMat& D) {
    std::vector<IntVec> out;
    auto gb = graver_basis(D);
    for (const IntVec& g : gb->elements) {
        bool nn = true;
        for (const Int& x : g.e)
            if (x < 0) nn = false;
        if (nn) out.push_back(g);
    }
    return out;
}

// Can every minimal solution be split into nonnegative per-part solutions?
// Each part occurrence is represented through its base solution (gamma
// counters) with the leftover kernel mass pooled in the delta counters.
bool check_parts(const IntMat& D, const std::vector<std::pair<IntVec, Int>>& parts,
                 const std::vector<IntVec>& mins, const std::vector<IntVec>& gra) {
    std::vector<std::vector<IntVec>> bases;
    for (const auto& [p, m] : parts)
        bases.push_back(base_solutions(D, p, base_bound(D, p)));

    std::size_t ny = D.ncols();
    for (const IntVec& vhat : mins) {
        MixedProgram prog;
        std::vector<std::vector<std::size_t>> gvar(parts.size());
        for (std::size_t p = 0; p < parts.size(); ++p)
            for (std::size_t w = 0; w < bases[p].size(); ++w)
                gvar[p].push_back(prog.add_var("g" + std::to_string(p) + "_" +
                                                   std::to_string(w),
                                               Int(0), std::nullopt, Int(0), true));
        std::vector<std::size_t> dvar;
        for (std::size_t g = 0; g < gra.size(); ++g)
            dvar.push_back(
                prog.add_var("d" + std::to_string(g), Int(0), std::nullopt, Int(0), true));
        for (std::size_t p = 0; p < parts.size(); ++p) {
            std::vector<LinTerm> terms;
            for (std::size_t w = 0; w < bases[p].size(); ++w)
                terms.push_back({gvar[p][w], Int(1)});
            prog.add_constraint(std::move(terms), Rel::Eq, parts[p].second);
        }
        for (std::size_t j = 0; j < ny; ++j) {
            std::vector<LinTerm> terms;
            for (std::size_t p = 0; p < parts.size(); ++p)
                for (std::size_t w = 0; w < bases[p].size(); ++w)
                    if (bases[p][w][j] != 0) terms.push_back({gvar[p][w], bases[p][w][j]});
            for (std::size_t g = 0; g < gra.size(); ++g)
                if (gra[g][j] != 0) terms.push_back({dvar[g], gra[g][j]});
            prog.add_constraint(std::move(terms), Rel::Eq, vhat[j]);
        }
        SolveOutcome out = mip_solve(prog);
        if (out.status == SolveStatus::RESOURCE_LIMIT)
            throw ResourceLimitError("faithful check: split budget");
        if (out.status != SolveStatus::OPTIMAL && out.status != SolveStatus::FEASIBLE)
            return false;
    }
    return true;
}

}  // namespace

bool faithful_check(const IntMat& D, const IntVec& b,
                    const std::vector<std::pair<IntVec, Int>>& parts) {
    IntVec sum(b.index);
    for (const auto& [p, m] : parts) {
        if (p.is_zero()) throw std::invalid_argument("faithful check: zero part");
        if (m <= 0) throw std::invalid_argument("faithful check: nonpositive multiplicity");
        if (!conformal_leq(p, b))
            throw std::invalid_argument("faithful check: part not below target");
        sum = sum + p * m;
    }
    if (!(sum == b)) throw std::invalid_argument("faithful check: parts do not sum");
    return check_parts(D, parts, minimal_solutions(D, b), nonneg_graver(D));
}

std::optional<std::tuple<IntVec, Int, IntVec>> faithful_step(const IntMat& D,
                                                             const IntVec& b,
                                                             const Int& xi) {
    if (b.norm_inf() <= xi)
        throw std::invalid_argument("faithful step: target already within threshold");
    std::size_t k = b.dim();

    struct Cand {
        IntVec b0;
        Int alpha;
        Int reduction;
    };
    std::vector<Cand> cands;
    std::vector<Int> cur(k, -xi);
    for (;;) {
        IntVec b0(b.index, cur);
        if (!b0.is_zero() && conformal_leq(b0, b)) {
            // Largest power of two alpha with alpha * b0 still below b.
            Int amax = 0;
            bool first = true;
            for (std::size_t j = 0; j < k; ++j) {
                if (b0[j] == 0) continue;
                Int q = int_fdiv(int_abs(b[j]), int_abs(b0[j]));
                amax = first ? q : std::min(amax, q);
                first = false;
            }
            for (Int a = 1; a <= amax; a *= 2)
                cands.push_back({b0, a, Int(a * b0.norm_1())});
        }
        std::size_t j = 0;
        while (j < k && cur[j] == xi) cur[j++] = -xi;
        if (j == k) break;
        ++cur[j];
    }
    // Largest l1 reduction first; among equal reductions prefer the smaller
    // multiplicity, then the lexicographically smaller vector.
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        if (x.reduction != y.reduction) return x.reduction > y.reduction;
        if (x.alpha != y.alpha) return x.alpha < y.alpha;
        return x.b0.e < y.b0.e;
    });

    std::vector<IntVec> mins = minimal_solutions(D, b);
    std::vector<IntVec> gra = nonneg_graver(D);
    for (const Cand& c : cands) {
        IntVec brem = b - c.b0 * c.alpha;
        std::vector<std::pair<IntVec, Int>> parts{{c.b0, c.alpha}};
        if (!brem.is_zero()) parts.push_back({brem, Int(1)});
        if (check_parts(D, parts, mins, gra))
            return std::make_tuple(c.b0, c.alpha, brem);
    }
    return std::nullopt;
}

FaithfulDecomposition faithful_decompose(const IntMat& D, const IntVec& b,
                                         const Int& xi0) {
    if (b.is_zero()) throw std::invalid_argument("faithful decompose: zero target");
    Int xi = xi0;
    for (;;) {
        std::vector<std::pair<IntVec, Int>> work{{b, Int(1)}};
        bool restart = false;
        for (std::size_t i = 0; i < work.size() && !restart; ++i) {
            while (work[i].first.norm_inf() > xi) {
                auto step = faithful_step(D, work[i].first, xi);
                if (!step) {
                    restart = true;  // threshold too small; double and redo
                    break;
                }
                auto& [b0, alpha, brem] = *step;
                Int mult = work[i].second;
                work.push_back({b0, alpha * mult});
                if (brem.is_zero()) {
                    work.erase(work.begin() + static_cast<long>(i));
                    --i;
                    break;
                }
                work[i].first = brem;
            }
        }
        if (restart) {
            xi *= 2;
            continue;
        }
        FaithfulDecomposition fd;
        fd.target = b;
        fd.xi = xi;
        std::map<std::vector<Int>, Int> merged;
        for (const auto& [p, m] : work) merged[p.e] += m;
        for (const auto& [pe, m] : merged) fd.parts.push_back({IntVec(b.index, pe), m});
        if (!faithful_check(D, b, fd.parts))
            throw std::logic_error("faithful decompose: verified steps compose unfaithfully");
        return fd;
    }
}

namespace {

struct Expansion {
    NFoldProgram prog;  // one brick per (D, b, c) type, with counts
    // original brick index -> (type index, per-occurrence multiplicity)
    std::vector<std::vector<std::pair<std::size_t, Int>>> parts_of;
};

Expansion expand_with_map(const NFoldProgram& P, const Int& xi0) {
    Expansion E;
    E.prog.locals = P.locals;
    E.prog.linkRows = P.linkRows;
    E.prog.localRows = P.localRows;
    E.prog.C = P.C;
    E.prog.a = P.a;

    std::map<std::string, std::size_t> type_index;
    auto type_of = [&](const IntMat& D, const IntVec& b, const IntVec& c) {
        std::string key = key_of(D) + '|' + key_of(b) + '|' + key_of(c);
        auto it = type_index.find(key);
        if (it != type_index.end()) return it->second;
        std::size_t idx = E.prog.bricks.size();
        E.prog.bricks.push_back({D, b, c, Int(0)});
        type_index.emplace(std::move(key), idx);
        return idx;
    };

    for (const NFoldBrick& br : P.bricks) {
        std::vector<std::pair<std::size_t, Int>> parts;
        if (br.b.is_zero()) {
            std::size_t t = type_of(br.D, br.b, br.c);
            E.prog.bricks[t].count += br.count;
            parts.push_back({t, Int(1)});
        } else {
            FaithfulDecomposition fd = faithful_decompose(br.D, br.b, xi0);
            for (const auto& [p, m] : fd.parts) {
                std::size_t t = type_of(br.D, p, br.c);
                E.prog.bricks[t].count += m * br.count;
                parts.push_back({t, m});
            }
        }
        E.parts_of.push_back(std::move(parts));
    }
    return E;
}

}  // namespace

NFoldProgram expand_program(const NFoldProgram& P, const Int& xi0) {
    return expand_with_map(P, xi0).prog;
}

ModelM build_model(const NFoldProgram& expanded, const Int& xi) {
    ModelM M;
    M.xi = xi;
    std::size_t k = expanded.localRows->size();
    std::size_t s = expanded.linkRows->size();
    Int delta = 0;
    for (const NFoldBrick& br : expanded.bricks) delta = std::max(delta, br.D.norm_inf());
    Int bound = int_pow(Int(2 * Int(k) * (delta + xi) + 1), static_cast<unsigned long>(k));

    // Group types by diagonal block and by (diagonal, rhs).
    std::map<std::string, std::vector<std::size_t>> by_d, by_db;
    std::vector<std::string> dkeys, dbkeys;  // first-appearance order
    for (std::size_t t = 0; t < expanded.bricks.size(); ++t) {
        std::string dk = key_of(expanded.bricks[t].D);
        std::string dbk = dk + '|' + key_of(expanded.bricks[t].b);
        if (by_d.find(dk) == by_d.end()) dkeys.push_back(dk);
        if (by_db.find(dbk) == by_db.end()) dbkeys.push_back(dbk);
        by_d[dk].push_back(t);
        by_db[dbk].push_back(t);
    }

    std::map<std::string, std::vector<IntVec>> base_of;
    for (const std::string& dbk : dbkeys) {
        std::size_t t0 = by_db[dbk].front();
        base_of[dbk] =
            base_solutions(expanded.bricks[t0].D, expanded.bricks[t0].b, bound);
    }

    // zeta variables, one block per (D, b) group.
    std::map<std::string, std::vector<std::size_t>> zeta_of;
    for (const std::string& dbk : dbkeys) {
        std::size_t t0 = by_db[dbk].front();
        for (const IntVec& w : base_of[dbk]) {
            std::size_t var = M.prog.add_var("z" + std::to_string(M.zetas.size()), Int(0),
                                             std::nullopt, Int(0), true);
            zeta_of[dbk].push_back(var);
            M.zetas.push_back({var, t0, w});
        }
    }
    // delta variables per (D group, nonnegative Graver element), with the
    // best attainable cost over the group's optimization vectors.
    std::map<std::string, std::vector<std::size_t>> delta_of;
    for (const std::string& dk : dkeys) {
        std::size_t t0 = by_d[dk].front();
        for (const IntVec& g : nonneg_graver(expanded.bricks[t0].D)) {
            Int best = 0;
            std::size_t best_type = 0;
            bool first = true;
            for (std::size_t t : by_d[dk]) {
                Int c = inner(expanded.bricks[t].c, g);
                if (first || c < best) {
                    best = c;
                    best_type = t;
                    first = false;
                }
            }
            std::size_t var = M.prog.add_var("d" + std::to_string(M.deltas.size()), Int(0),
                                             std::nullopt, best, true);
            delta_of[dk].push_back(var);
            M.deltas.push_back({var, expanded.bricks[t0].D, g, best_type});
        }
    }
    // omega variables per (type, base solution), continuous.
    std::vector<std::vector<std::size_t>> omega_of(expanded.bricks.size());
    for (std::size_t t = 0; t < expanded.bricks.size(); ++t) {
        std::string dbk = key_of(expanded.bricks[t].D) + '|' + key_of(expanded.bricks[t].b);
        for (const IntVec& w : base_of[dbk]) {
            std::size_t var =
                M.prog.add_var("o" + std::to_string(M.omegas.size()), Int(0), std::nullopt,
                               inner(expanded.bricks[t].c, w), false);
            omega_of[t].push_back(var);
            M.omegas.push_back({var, t, w});
        }
    }

    // C1: the linking rows.
    for (std::size_t row = 0; row < s; ++row) {
        std::vector<LinTerm> terms;
        for (const std::string& dbk : dbkeys)
            for (std::size_t w = 0; w < base_of[dbk].size(); ++w) {
                Int c = 0;
                for (std::size_t j = 0; j < expanded.C.ncols(); ++j)
                    c += expanded.C.col[j][row] * base_of[dbk][w][j];
                if (c != 0) terms.push_back({zeta_of[dbk][w], c});
            }
        for (const std::string& dk : dkeys) {
            std::size_t t0 = by_d[dk].front();
            std::vector<IntVec> gra = nonneg_graver(expanded.bricks[t0].D);
            for (std::size_t g = 0; g < gra.size(); ++g) {
                Int c = 0;
                for (std::size_t j = 0; j < expanded.C.ncols(); ++j)
                    c += expanded.C.col[j][row] * gra[g][j];
                if (c != 0) terms.push_back({delta_of[dk][g], c});
            }
        }
        M.prog.add_constraint(std::move(terms), Rel::Eq, expanded.a[row]);
    }
    // C2: omegas distribute the zetas across the group's types.
    for (const std::string& dbk : dbkeys)
        for (std::size_t w = 0; w < base_of[dbk].size(); ++w) {
            std::vector<LinTerm> terms;
            for (std::size_t t : by_db[dbk]) terms.push_back({omega_of[t][w], Int(1)});
            terms.push_back({zeta_of[dbk][w], Int(-1)});
            M.prog.add_constraint(std::move(terms), Rel::Eq, Int(0));
        }
    // C3: every brick occurrence of a type receives one base solution.
    for (std::size_t t = 0; t < expanded.bricks.size(); ++t) {
        std::vector<LinTerm> terms;
        for (std::size_t v : omega_of[t]) terms.push_back({v, Int(1)});
        M.prog.add_constraint(std::move(terms), Rel::Eq, expanded.bricks[t].count);
    }
    return M;
}

NFoldResult solve_nfold(const NFoldProgram& P, const NFoldOptions& opts) {
    NFoldResult R;
    bool empty = true;
    for (const NFoldBrick& br : P.bricks)
        if (br.count > 0) empty = false;
    if (empty) {
        if (P.a.is_zero()) {
            R.status = SolveStatus::OPTIMAL;
            R.value = 0;
        }
        return R;
    }

    Expansion E;
    ModelM M;
    try {
        E = expand_with_map(P, opts.xi0);
        Int xi = 1;
        for (const NFoldBrick& br : E.prog.bricks)
            xi = std::max(xi, br.b.norm_inf());
        M = build_model(E.prog, xi);
    } catch (const ResourceLimitError&) {
        R.status = SolveStatus::RESOURCE_LIMIT;
        return R;
    }

    SolveOutcome out = mip_solve(M.prog, opts.mip);
    R.status = out.status;
    if (out.status != SolveStatus::OPTIMAL && out.status != SolveStatus::FEASIBLE) return R;
    R.status = SolveStatus::OPTIMAL;
    R.value = out.objective;

    // Round the continuous assignment variables to integers at equal value.
    std::vector<std::pair<std::size_t, Int>> fixed;
    for (const auto& z : M.zetas) fixed.push_back({z.var, rat_to_int(out.assignment[z.var])});
    for (const auto& d : M.deltas) fixed.push_back({d.var, rat_to_int(out.assignment[d.var])});
    std::vector<Rat> rounded = tu_round(M.prog, fixed);
    Rat value = 0;
    for (std::size_t j = 0; j < M.prog.nvars(); ++j)
        value += Rat(M.prog.objective[j]) * rounded[j];
    if (value != out.objective)
        throw std::logic_error("n-fold: integral rounding changed the optimum");

    // Pools of base solutions per type, fed by the integral omegas.
    std::vector<std::vector<std::pair<IntVec, Int>>> pool(E.prog.bricks.size());
    for (const auto& o : M.omegas) {
        Int cnt = rat_to_int(rounded[o.var]);
        if (cnt > 0) pool[o.type].push_back({o.base, cnt});
    }
    auto pop_base = [&](std::size_t type) {
        for (auto& [w, cnt] : pool[type])
            if (cnt > 0) {
                --cnt;
                return w;
            }
        throw std::logic_error("n-fold: base solution pool exhausted");
    };

    // One witness vector per brick occurrence, in input order.
    std::vector<std::size_t> occ_brick;
    for (std::size_t i = 0; i < P.bricks.size(); ++i)
        for (Int k = 0; k < P.bricks[i].count; ++k) {
            R.witness.push_back(IntVec(P.locals));
            occ_brick.push_back(i);
        }
    for (std::size_t o = 0; o < R.witness.size(); ++o)
        for (const auto& [type, mult] : E.parts_of[occ_brick[o]])
            for (Int m = 0; m < mult; ++m) R.witness[o] = R.witness[o] + pop_base(type);

    // Graver mass goes to the first occurrence attaining the best cost.
    for (const auto& d : M.deltas) {
        Int cnt = rat_to_int(rounded[d.var]);
        if (cnt == 0) continue;
        const IntVec& bc = E.prog.bricks[d.best_type].c;
        bool placed = false;
        for (std::size_t o = 0; o < R.witness.size() && !placed; ++o) {
            const NFoldBrick& br = P.bricks[occ_brick[o]];
            if (br.D == d.D && br.c == bc) {
                R.witness[o] = R.witness[o] + d.g * cnt;
                placed = true;
            }
        }
        if (!placed) throw std::logic_error("n-fold: no brick accepts a Graver element");
    }

    // Hard validation against the original program.
    IntVec link(P.linkRows);
    Rat total = 0;
    for (std::size_t o = 0; o < R.witness.size(); ++o) {
        const NFoldBrick& br = P.bricks[occ_brick[o]];
        for (const Int& x : R.witness[o].e)
            if (x < 0) throw std::logic_error("n-fold witness: negative entry");
        if (!(mat_apply(br.D, R.witness[o]) == br.b))
            throw std::logic_error("n-fold witness: brick equation violated");
        link = link + mat_apply(P.C, R.witness[o]);
        total += Rat(inner(br.c, R.witness[o]));
    }
    if (!(link == P.a)) throw std::logic_error("n-fold witness: linking rows violated");
    if (total != R.value) throw std::logic_error("n-fold witness: value mismatch");
    return R;
}

}  // namespace blockip
