#include <stdexcept>

#include "blockip/mip.hpp"

namespace blockip {

std::size_t MixedProgram::add_var(std::string name, std::optional<Int> lb,
                                  std::optional<Int> ub, Int obj, bool integral) {
    if (lb && ub && *lb > *ub) throw std::invalid_argument("add_var: lo > hi");
    names.push_back(std::move(name));
    lo.push_back(std::move(lb));
    hi.push_back(std::move(ub));
    objective.push_back(std::move(obj));
    integer.push_back(integral);
    return names.size() - 1;
}

void MixedProgram::add_constraint(std::vector<LinTerm> terms, Rel rel, Int rhs) {
    for (const LinTerm& t : terms)
        if (t.var >= nvars()) throw std::invalid_argument("add_constraint: bad var index");
    cons.push_back({std::move(terms), rel, std::move(rhs)});
}

namespace {

// Standard-form LP: min c.x, A x = b, x >= 0, solved by dense-tableau
// two-phase primal simplex with Bland's rule.
struct Std {
    std::size_t nstruct = 0;             // structural columns
    std::vector<std::vector<Rat>> A;     // rows, length grows as cols added
    std::vector<Rat> b;
    std::vector<Rat> c;
    Rat offset = 0;  // constant objective contribution from substitutions

    // original var j = shift[j] + sign[j]*x[pos[j]] (+ optional -x[neg[j]])
    std::vector<Rat> shift;
    std::vector<int> sign;
    std::vector<std::size_t> pos, neg;
    std::vector<bool> split;

    std::size_t add_col(const Rat& cost) {
        for (auto& row : A) row.push_back(Rat(0));
        c.push_back(cost);
        return c.size() - 1;
    }
    std::size_t add_row() {
        A.emplace_back(c.size(), Rat(0));
        b.emplace_back(0);
        return A.size() - 1;
    }
};

Std standardize(const MixedProgram& p) {
    Std s;
    std::size_t n = p.nvars();
    s.shift.assign(n, Rat(0));
    s.sign.assign(n, 1);
    s.pos.assign(n, 0);
    s.neg.assign(n, 0);
    s.split.assign(n, false);
    std::vector<std::optional<Int>> ub_row(n);  // x' <= ub_row after shifting

    for (std::size_t j = 0; j < n; ++j) {
        if (p.lo[j]) {
            s.shift[j] = Rat(*p.lo[j]);
            s.sign[j] = 1;
            s.pos[j] = s.add_col(Rat(p.objective[j]));
            if (p.hi[j]) ub_row[j] = Int(*p.hi[j] - *p.lo[j]);
        } else if (p.hi[j]) {
            s.shift[j] = Rat(*p.hi[j]);
            s.sign[j] = -1;
            s.pos[j] = s.add_col(Rat(-p.objective[j]));
        } else {
            s.split[j] = true;
            s.pos[j] = s.add_col(Rat(p.objective[j]));
            s.neg[j] = s.add_col(Rat(-p.objective[j]));
        }
        s.offset += Rat(p.objective[j]) * s.shift[j];
    }
    s.nstruct = s.c.size();

    auto emit = [&](const std::vector<LinTerm>& terms, Rel rel, const Rat& rhs) {
        std::size_t r = s.add_row();
        Rat adj = rhs;
        for (const LinTerm& t : terms) {
            Rat cf(t.coef);
            adj -= cf * s.shift[t.var];
            s.A[r][s.pos[t.var]] += s.sign[t.var] > 0 ? cf : -cf;
            if (s.split[t.var]) s.A[r][s.neg[t.var]] -= cf;
        }
        s.b[r] = adj;
        if (rel != Rel::Eq) {
            std::size_t sl = s.add_col(Rat(0));
            s.A[r][sl] = rel == Rel::Le ? Rat(1) : Rat(-1);
        }
    };
    for (const LinConstraint& con : p.cons) emit(con.terms, con.rel, Rat(con.rhs));
    // Bound rows live in the shifted coordinates already: x' + slack = ub - lo.
    for (std::size_t j = 0; j < n; ++j)
        if (ub_row[j]) {
            std::size_t r = s.add_row();
            s.A[r][s.pos[j]] = 1;
            s.b[r] = Rat(*ub_row[j]);
            std::size_t sl = s.add_col(Rat(0));
            s.A[r][sl] = 1;
        }

    for (std::size_t r = 0; r < s.A.size(); ++r)
        if (s.b[r] < 0) {
            for (auto& x : s.A[r]) x = -x;
            s.b[r] = -s.b[r];
        }
    return s;
}

struct Tableau {
    std::vector<std::vector<Rat>> row;  // m x (ncols+1), last col = rhs
    std::vector<Rat> cost;              // ncols+1, last = -objective value
    std::vector<std::size_t> basis;
    std::size_t ncols = 0, art_begin = 0;

    void pivot(std::size_t r, std::size_t c) {
        Rat inv = 1 / row[r][c];
        for (auto& x : row[r]) x *= inv;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i == r || row[i][c] == 0) continue;
            Rat f = row[i][c];
            for (std::size_t j = 0; j <= ncols; ++j) row[i][j] -= f * row[r][j];
        }
        if (cost[c] != 0) {
            Rat f = cost[c];
            for (std::size_t j = 0; j <= ncols; ++j) cost[j] -= f * row[r][j];
        }
        basis[r] = c;
    }

    void load_cost(const std::vector<Rat>& obj) {
        cost.assign(ncols + 1, Rat(0));
        for (std::size_t j = 0; j < obj.size(); ++j) cost[j] = obj[j];
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (obj[basis[i]] == 0) continue;
            Rat f = obj[basis[i]];
            for (std::size_t j = 0; j <= ncols; ++j) cost[j] -= f * row[i][j];
        }
    }

    // Bland's rule; columns >= ban_from may not enter. Returns OPTIMAL or
    // UNBOUNDED.
    SolveStatus run(std::size_t ban_from) {
        for (;;) {
            std::size_t enter = ncols;
            for (std::size_t j = 0; j < ban_from; ++j)
                if (cost[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == ncols) return SolveStatus::OPTIMAL;
            std::size_t leave = row.size();
            Rat best;
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (row[i][enter] <= 0) continue;
                Rat ratio = row[i][ncols] / row[i][enter];
                if (leave == row.size() || ratio < best ||
                    (ratio == best && basis[i] < basis[leave]))
                    leave = i, best = ratio;
            }
            if (leave == row.size()) return SolveStatus::UNBOUNDED;
            pivot(leave, enter);
        }
    }
};

}  // namespace

SolveOutcome lp_solve(const MixedProgram& p) {
    for (std::size_t j = 0; j < p.nvars(); ++j)
        if (p.lo[j] && p.hi[j] && *p.lo[j] > *p.hi[j])
            return {SolveStatus::INFEASIBLE};
    Std s = standardize(p);
    std::size_t m = s.A.size();

    Tableau t;
    t.art_begin = s.c.size();
    t.ncols = s.c.size() + m;
    t.basis.resize(m);
    t.row.assign(m, {});
    for (std::size_t i = 0; i < m; ++i) {
        t.row[i].assign(t.ncols + 1, Rat(0));
        for (std::size_t j = 0; j < s.c.size(); ++j) t.row[i][j] = s.A[i][j];
        t.row[i][t.art_begin + i] = 1;
        t.row[i][t.ncols] = s.b[i];
        t.basis[i] = t.art_begin + i;
    }

    // Phase 1: minimize the artificial sum.
    std::vector<Rat> phase1(t.ncols, Rat(0));
    for (std::size_t i = 0; i < m; ++i) phase1[t.art_begin + i] = 1;
    t.load_cost(phase1);
    t.run(t.ncols);
    if (-t.cost[t.ncols] != 0) return {SolveStatus::INFEASIBLE};
    // Pivot artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis[i] < t.art_begin) continue;
        for (std::size_t j = 0; j < t.art_begin; ++j)
            if (t.row[i][j] != 0) {
                t.pivot(i, j);
                break;
            }
    }

    // Phase 2.
    std::vector<Rat> phase2(t.ncols, Rat(0));
    for (std::size_t j = 0; j < s.c.size(); ++j) phase2[j] = s.c[j];
    t.load_cost(phase2);
    SolveStatus st = t.run(t.art_begin);
    if (st == SolveStatus::UNBOUNDED) return {SolveStatus::UNBOUNDED};

    std::vector<Rat> xstd(s.c.size(), Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] < s.c.size()) xstd[t.basis[i]] = t.row[i][t.ncols];

    SolveOutcome out;
    out.status = SolveStatus::OPTIMAL;
    out.assignment.resize(p.nvars());
    for (std::size_t j = 0; j < p.nvars(); ++j) {
        Rat v = s.shift[j];
        v += (s.sign[j] > 0 ? xstd[s.pos[j]] : -xstd[s.pos[j]]);
        if (s.split[j]) v -= xstd[s.neg[j]];
        out.assignment[j] = v;
    }
    Rat objstd = 0;
    for (std::size_t j = 0; j < s.c.size(); ++j) objstd += s.c[j] * xstd[j];
    out.objective = objstd + s.offset;

    // Strong-duality self check: y from the artificial columns (= B^-1).
    Rat dual = 0;
    for (std::size_t i = 0; i < m; ++i) {
        Rat yi = 0;
        for (std::size_t r = 0; r < m; ++r)
            if (t.basis[r] < s.c.size() && s.c[t.basis[r]] != 0)
                yi += s.c[t.basis[r]] * t.row[r][t.art_begin + i];
        dual += yi * s.b[i];
    }
    out.dual_objective = dual + s.offset;
    out.dual_checked = true;
    if (dual != objstd) throw std::logic_error("lp_solve: duality check failed");
    return out;
}

}  // namespace blockip
