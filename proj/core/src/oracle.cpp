#include "blockip/oracle.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "blockip/errors.hpp"

namespace blockip::oracle {

namespace {

long to_long(const Int& x) {
    if (!x.fits_slong_p()) throw ResourceLimitError("oracle: box too large");
    return x.get_si();
}

// Generic exhaustive search over an integer box subject to sparse linear
// equalities, with dynamic most-constrained-first variable ordering and
// interval pruning. Independent of the solver modules by design.
struct Csp {
    struct Row {
        std::vector<std::pair<std::size_t, Int>> terms;
        Int rhs;
    };
    std::size_t nvars = 0;
    std::vector<std::pair<Int, Int>> box;
    std::vector<Row> rows;
    std::vector<Int> cost;  // empty = feasibility only
    long node_cap = 100000000;

    std::vector<Int> value;
    std::vector<bool> assigned;
    std::vector<Int> resid;  // rhs minus assigned contributions
    long nodes = 0;

    bool found = false;
    Int best_value = 0;
    std::vector<Int> best_assign;

    // Feasible interval for var j from the rows, given current assignments
    // and the static boxes of the other unassigned variables.
    bool interval(std::size_t j, Int& lo, Int& hi) const {
        lo = box[j].first;
        hi = box[j].second;
        for (const Row& r : rows) {
            Int cj = 0, restmin = 0, restmax = 0;
            bool touches = false;
            for (const auto& [v, c] : r.terms) {
                if (v == j) {
                    cj += c;
                    touches = true;
                } else if (!assigned[v]) {
                    Int a = c * box[v].first, b = c * box[v].second;
                    restmin += std::min(a, b);
                    restmax += std::max(a, b);
                }
            }
            if (!touches || cj == 0) continue;
            const Int& rr = resid[&r - rows.data()];
            Int wlo = rr - restmax, whi = rr - restmin;  // window for cj * vj
            if (cj > 0) {
                lo = std::max(lo, int_cdiv(wlo, cj));
                hi = std::min(hi, int_fdiv(whi, cj));
            } else {
                lo = std::max(lo, int_cdiv(whi, cj));
                hi = std::min(hi, int_fdiv(wlo, cj));
            }
            if (lo > hi) return false;
        }
        return true;
    }

    bool rows_consistent() const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Int mn = 0, mx = 0;
            for (const auto& [v, c] : rows[i].terms) {
                if (assigned[v]) continue;
                Int a = c * box[v].first, b = c * box[v].second;
                mn += std::min(a, b);
                mx += std::max(a, b);
            }
            if (resid[i] < mn || resid[i] > mx) return false;
        }
        return true;
    }

    Int cost_lower_bound() const {
        Int s = 0;
        for (std::size_t j = 0; j < nvars; ++j) {
            if (cost.empty() || cost[j] == 0) continue;
            if (assigned[j])
                s += cost[j] * value[j];
            else
                s += std::min(Int(cost[j] * box[j].first), Int(cost[j] * box[j].second));
        }
        return s;
    }

    void dfs(std::size_t remaining) {
        if (++nodes > node_cap) throw ResourceLimitError("solve_bf: node cap");
        if (!rows_consistent()) return;
        if (!cost.empty() && found && cost_lower_bound() >= best_value) return;
        if (remaining == 0) {
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (resid[i] != 0) return;
            Int val = 0;
            for (std::size_t j = 0; j < nvars && !cost.empty(); ++j)
                val += cost[j] * value[j];
            if (!found || (!cost.empty() && val < best_value)) {
                found = true;
                best_value = val;
                best_assign = value;
            }
            return;
        }
        // Most constrained unassigned variable first.
        std::size_t pick = nvars;
        Int plo, phi, pwidth;
        for (std::size_t j = 0; j < nvars; ++j) {
            if (assigned[j]) continue;
            Int lo, hi;
            if (!interval(j, lo, hi)) return;
            Int w = hi - lo;
            if (pick == nvars || w < pwidth) {
                pick = j;
                plo = lo;
                phi = hi;
                pwidth = w;
            }
        }
        for (Int v = plo; v <= phi; ++v) {
            assigned[pick] = true;
            value[pick] = v;
            if (v != 0)
                for (std::size_t i = 0; i < rows.size(); ++i)
                    for (const auto& [var, c] : rows[i].terms)
                        if (var == pick) resid[i] -= c * v;
            dfs(remaining - 1);
            if (v != 0)
                for (std::size_t i = 0; i < rows.size(); ++i)
                    for (const auto& [var, c] : rows[i].terms)
                        if (var == pick) resid[i] += c * v;
            assigned[pick] = false;
            if (found && cost.empty()) return;  // feasibility: stop at first
        }
    }

    void run() {
        value.assign(nvars, 0);
        assigned.assign(nvars, false);
        resid.clear();
        for (const Row& r : rows) resid.push_back(r.rhs);
        // Variables in no constraint only matter through their cost; pin them.
        std::vector<bool> used(nvars, false);
        for (const Row& r : rows)
            for (const auto& [v, c] : r.terms)
                if (c != 0) used[v] = true;
        std::size_t remaining = nvars;
        for (std::size_t j = 0; j < nvars; ++j) {
            if (used[j]) continue;
            bool neg_cost = !cost.empty() && cost[j] < 0;
            value[j] = neg_cost ? box[j].second : box[j].first;
            assigned[j] = true;
            --remaining;
        }
        dfs(remaining);
    }
};

}  // namespace

IntConeOracle::IntConeOracle(std::vector<IntVec> gens, SearchBox box, long node_cap)
    : gens_(std::move(gens)), box_(std::move(box)) {
    std::size_t t = box_.range.size();
    Int cells = 1;
    for (auto& [lo, hi] : box_.range) {
        if (lo > 0 || hi < 0) throw std::invalid_argument("IntConeOracle: box must contain 0");
        width_.push_back(hi - lo + 1);
        cells *= width_.back();
    }
    if (cells > node_cap) throw ResourceLimitError("IntConeOracle: box too large");
    reached_.assign(to_long(cells), false);

    std::vector<Int> zero(t, 0);
    reached_[offset(zero)] = true;
    std::deque<std::vector<Int>> queue{zero};
    while (!queue.empty()) {
        std::vector<Int> p = std::move(queue.front());
        queue.pop_front();
        for (const IntVec& g : gens_) {
            std::vector<Int> q(t);
            for (std::size_t i = 0; i < t; ++i) q[i] = p[i] + g[i];
            if (!in_box(q)) continue;
            std::size_t off = offset(q);
            if (reached_[off]) continue;
            reached_[off] = true;
            queue.push_back(std::move(q));
        }
    }
}

std::size_t IntConeOracle::offset(const std::vector<Int>& point) const {
    Int off = 0;
    for (std::size_t i = 0; i < point.size(); ++i)
        off = off * width_[i] + (point[i] - box_.range[i].first);
    return static_cast<std::size_t>(to_long(off));
}

bool IntConeOracle::in_box(const std::vector<Int>& point) const {
    for (std::size_t i = 0; i < point.size(); ++i)
        if (point[i] < box_.range[i].first || point[i] > box_.range[i].second)
            return false;
    return true;
}

bool IntConeOracle::contains(const IntVec& v) const {
    if (!in_box(v.e)) throw std::invalid_argument("IntConeOracle: query outside box");
    return reached_[offset(v.e)];
}

bool intcone_member_bf(const std::vector<IntVec>& gens, const IntVec& v,
                       const SearchBox& box) {
    return IntConeOracle(gens, box).contains(v);
}

std::vector<IntVec> graver_bf(const IntMat& D, const SearchBox& box) {
    std::size_t n = D.ncols(), m = D.nrows();
    if (box.range.size() != n) throw std::invalid_argument("graver_bf: box size");
    std::vector<IntVec> kernel;
    std::vector<Int> cur(n, 0);
    auto rec = [&](auto&& self, std::size_t j) -> void {
        if (j == n) {
            for (std::size_t i = 0; i < m; ++i) {
                Int s = 0;
                for (std::size_t k = 0; k < n; ++k) s += D.col[k][i] * cur[k];
                if (s != 0) return;
            }
            IntVec v(D.cols, cur);
            if (!v.is_zero()) kernel.push_back(std::move(v));
            return;
        }
        for (Int v = box.range[j].first; v <= box.range[j].second; ++v) {
            cur[j] = v;
            self(self, j + 1);
        }
        cur[j] = 0;
    };
    rec(rec, 0);
    std::vector<IntVec> out;
    for (const IntVec& v : kernel) {
        bool minimal = true;
        for (const IntVec& u : kernel)
            if (!(u == v) && conformal_leq(u, v)) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(v);
    }
    std::sort(out.begin(), out.end(),
              [](const IntVec& a, const IntVec& b) { return a.e < b.e; });
    return out;
}

BfVerdict solve_bf(const TwoStageProgram& P, const SearchBox& global_box,
                   const SearchBox& local_box, long node_cap) {
    std::size_t x = P.globals->size(), y = P.locals->size(), t = P.rowNames->size();
    std::size_t nb = P.bricks.size();
    Csp csp;
    csp.node_cap = node_cap;
    csp.nvars = x + nb * y;
    for (std::size_t j = 0; j < x; ++j) csp.box.push_back(global_box.range[j]);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < y; ++j) csp.box.push_back(local_box.range[j]);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t row = 0; row < t; ++row) {
            Csp::Row r;
            for (std::size_t j = 0; j < x; ++j)
                if (P.bricks[i].A.col[j][row] != 0)
                    r.terms.push_back({j, P.bricks[i].A.col[j][row]});
            for (std::size_t j = 0; j < y; ++j)
                if (P.bricks[i].D.col[j][row] != 0)
                    r.terms.push_back({x + i * y + j, P.bricks[i].D.col[j][row]});
            r.rhs = P.bricks[i].b[row];
            csp.rows.push_back(std::move(r));
        }
    csp.run();
    BfVerdict out;
    out.feasible = csp.found;
    if (csp.found) {
        out.u = IntVec(P.globals);
        for (std::size_t j = 0; j < x; ++j) out.u[j] = csp.best_assign[j];
        for (std::size_t i = 0; i < nb; ++i) {
            IntVec v(P.locals);
            for (std::size_t j = 0; j < y; ++j) v[j] = csp.best_assign[x + i * y + j];
            out.v.push_back(std::move(v));
        }
    }
    return out;
}

BfOptimum solve_bf(const NFoldProgram& P, const SearchBox& local_box, long node_cap) {
    std::size_t y = P.locals->size(), s = P.linkRows->size(), t = P.localRows->size();
    std::vector<std::size_t> occ;  // brick index per occurrence
    for (std::size_t i = 0; i < P.bricks.size(); ++i)
        for (Int k = 0; k < P.bricks[i].count; ++k) occ.push_back(i);
    std::size_t nb = occ.size();

    Csp csp;
    csp.node_cap = node_cap;
    csp.nvars = nb * y;
    csp.cost.assign(csp.nvars, 0);
    for (std::size_t o = 0; o < nb; ++o)
        for (std::size_t j = 0; j < y; ++j) {
            csp.box.push_back(local_box.range[j]);
            csp.cost[o * y + j] = P.bricks[occ[o]].c[j];
        }
    for (std::size_t row = 0; row < s; ++row) {
        Csp::Row r;
        for (std::size_t o = 0; o < nb; ++o)
            for (std::size_t j = 0; j < y; ++j)
                if (P.C.col[j][row] != 0) r.terms.push_back({o * y + j, P.C.col[j][row]});
        r.rhs = P.a[row];
        csp.rows.push_back(std::move(r));
    }
    for (std::size_t o = 0; o < nb; ++o)
        for (std::size_t row = 0; row < t; ++row) {
            Csp::Row r;
            const IntMat& D = P.bricks[occ[o]].D;
            for (std::size_t j = 0; j < y; ++j)
                if (D.col[j][row] != 0) r.terms.push_back({o * y + j, D.col[j][row]});
            r.rhs = P.bricks[occ[o]].b[row];
            csp.rows.push_back(std::move(r));
        }
    csp.run();
    BfOptimum out;
    out.feasible = csp.found;
    if (csp.found) {
        out.value = csp.best_value;
        for (std::size_t o = 0; o < nb; ++o) {
            IntVec v(P.locals);
            for (std::size_t j = 0; j < y; ++j) v[j] = csp.best_assign[o * y + j];
            out.witness.push_back(std::move(v));
        }
    }
    return out;
}

BfVerdict solve_bf(const FourBlockProgram& P, const SearchBox& global_box,
                   const SearchBox& local_box, long node_cap) {
    std::size_t x = P.globals->size(), y = P.locals->size();
    std::size_t s = P.linkRows->size(), t = P.localRows->size();
    std::size_t nb = P.bricks.size();
    Csp csp;
    csp.node_cap = node_cap;
    csp.nvars = x + nb * y;
    for (std::size_t j = 0; j < x; ++j) csp.box.push_back(global_box.range[j]);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < y; ++j) csp.box.push_back(local_box.range[j]);
    for (std::size_t row = 0; row < s; ++row) {
        Csp::Row r;
        for (std::size_t j = 0; j < x; ++j)
            if (P.Bhat.col[j][row] != 0) r.terms.push_back({j, P.Bhat.col[j][row]});
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = 0; j < y; ++j)
                if (P.C.col[j][row] != 0)
                    r.terms.push_back({x + i * y + j, P.C.col[j][row]});
        r.rhs = P.a[row];
        csp.rows.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t row = 0; row < t; ++row) {
            Csp::Row r;
            for (std::size_t j = 0; j < x; ++j)
                if (P.A.col[j][row] != 0) r.terms.push_back({j, P.A.col[j][row]});
            for (std::size_t j = 0; j < y; ++j)
                if (P.bricks[i].D.col[j][row] != 0)
                    r.terms.push_back({x + i * y + j, P.bricks[i].D.col[j][row]});
            r.rhs = P.bricks[i].b[row];
            csp.rows.push_back(std::move(r));
        }
    csp.run();
    BfVerdict out;
    out.feasible = csp.found;
    if (csp.found) {
        out.u = IntVec(P.globals);
        for (std::size_t j = 0; j < x; ++j) out.u[j] = csp.best_assign[j];
        for (std::size_t i = 0; i < nb; ++i) {
            IntVec v(P.locals);
            for (std::size_t j = 0; j < y; ++j) v[j] = csp.best_assign[x + i * y + j];
            out.v.push_back(std::move(v));
        }
    }
    return out;
}

}  // namespace blockip::oracle
