#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "blockip/linalg.hpp"
#include "blockip/mip.hpp"

namespace blockip {

namespace {

// Pure-integer inequalities become equalities with integer slacks so that the
// lattice pruning and the endgame see the full equality system.
MixedProgram add_integer_slacks(const MixedProgram& p) {
    MixedProgram q = p;
    std::size_t next = 0;
    for (LinConstraint& con : q.cons) {
        if (con.rel == Rel::Eq) continue;
        bool pure = true;
        for (const LinTerm& t : con.terms)
            if (!q.integer[t.var]) {
                pure = false;
                break;
            }
        if (!pure) continue;
        std::size_t s = q.add_var("_slack" + std::to_string(next++), Int(0),
                                  std::nullopt, Int(0), true);
        con.terms.push_back({s, con.rel == Rel::Le ? Int(1) : Int(-1)});
        con.rel = Rel::Eq;
    }
    return q;
}

// Cramer-type bound on the entries of some optimal/feasible solution,
// generous enough to dominate any subdeterminant of the augmented system.
Int solution_box(const MixedProgram& p) {
    Int box = 1;
    for (const LinConstraint& con : p.cons) {
        Int s = int_abs(con.rhs);
        for (const LinTerm& t : con.terms) {
            Int shift = 0;
            if (p.lo[t.var]) shift += int_abs(*p.lo[t.var]);
            if (p.hi[t.var]) shift += int_abs(*p.hi[t.var]);
            s += int_abs(t.coef) * (2 + shift);
        }
        if (s > 1) box *= s;
    }
    return box * Int(p.nvars() + 2);
}

struct Node {
    long id = 0;
    Rat bound = 0;
    std::vector<std::optional<Int>> lo, hi;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound < b.bound;
        return a.id < b.id;
    }
};

struct Search {
    const MixedProgram& q;
    SolveLimits lim;
    Int box;
    long lp_count = 0;
    long next_id = 0;
    bool feasibility_only = false;  // zero objective: stop at first solution
    std::optional<Rat> incumbent_value;
    std::vector<Rat> incumbent;
    bool hit_limit = false;
    bool unbounded = false;

    explicit Search(const MixedProgram& prog, SolveLimits l) : q(prog), lim(l) {
        box = solution_box(q);
        feasibility_only = true;
        for (const Int& c : q.objective)
            if (c != 0) feasibility_only = false;
    }

    MixedProgram with_bounds(const Node& n) const {
        MixedProgram r = q;
        r.lo = n.lo;
        r.hi = n.hi;
        return r;
    }

    bool fixed(const Node& n, std::size_t j, Int& val) const {
        if (n.lo[j] && n.hi[j] && *n.lo[j] == *n.hi[j]) {
            val = *n.lo[j];
            return true;
        }
        return false;
    }

    // Activity-based bound propagation on the node box. Integer variables get
    // their bounds rounded inward; rows whose activity interval misses the
    // right-hand side prove the node empty. Returns false on emptiness.
    bool tighten(Node& n) const {
        auto term_min = [&](const LinTerm& t) -> std::optional<Rat> {
            const auto& b = t.coef > 0 ? n.lo[t.var] : n.hi[t.var];
            if (!b) return std::nullopt;
            return Rat(t.coef) * Rat(*b);
        };
        auto term_max = [&](const LinTerm& t) -> std::optional<Rat> {
            const auto& b = t.coef > 0 ? n.hi[t.var] : n.lo[t.var];
            if (!b) return std::nullopt;
            return Rat(t.coef) * Rat(*b);
        };
        for (int round = 0; round < 60; ++round) {
            bool changed = false;
            for (const LinConstraint& con : q.cons) {
                Rat lo_sum = 0, hi_sum = 0;
                long lo_inf = 0, hi_inf = 0;
                for (const LinTerm& t : con.terms) {
                    if (auto v = term_min(t)) lo_sum += *v; else ++lo_inf;
                    if (auto v = term_max(t)) hi_sum += *v; else ++hi_inf;
                }
                Rat r(con.rhs);
                if (con.rel != Rel::Le && hi_inf == 0 && hi_sum < r) return false;
                if (con.rel != Rel::Ge && lo_inf == 0 && lo_sum > r) return false;
                for (const LinTerm& t : con.terms) {
                    if (t.coef == 0 || !q.integer[t.var]) continue;
                    auto tmin = term_min(t), tmax = term_max(t);
                    // c*x >= rhs - max(others), when the others' max is finite.
                    if (con.rel != Rel::Le && hi_inf == (tmax ? 0 : 1)) {
                        Rat others = hi_sum - (tmax ? *tmax : Rat(0));
                        Rat bound = r - others;
                        Int num = Int(bound.get_num()), den = Int(bound.get_den());
                        if (t.coef > 0) {
                            Int nb = int_cdiv(num, Int(den * t.coef));
                            if (!n.lo[t.var] || nb > *n.lo[t.var]) {
                                n.lo[t.var] = nb;
                                changed = true;
                            }
                        } else {
                            Int nb = int_fdiv(num, Int(den * t.coef));
                            if (!n.hi[t.var] || nb < *n.hi[t.var]) {
                                n.hi[t.var] = nb;
                                changed = true;
                            }
                        }
                    }
                    // c*x <= rhs - min(others), when the others' min is finite.
                    if (con.rel != Rel::Ge && lo_inf == (tmin ? 0 : 1)) {
                        Rat others = lo_sum - (tmin ? *tmin : Rat(0));
                        Rat bound = r - others;
                        Int num = Int(bound.get_num()), den = Int(bound.get_den());
                        if (t.coef > 0) {
                            Int nb = int_fdiv(num, Int(den * t.coef));
                            if (!n.hi[t.var] || nb < *n.hi[t.var]) {
                                n.hi[t.var] = nb;
                                changed = true;
                            }
                        } else {
                            Int nb = int_cdiv(num, Int(den * t.coef));
                            if (!n.lo[t.var] || nb > *n.lo[t.var]) {
                                n.lo[t.var] = nb;
                                changed = true;
                            }
                        }
                    }
                    if (n.lo[t.var] && n.hi[t.var] && *n.lo[t.var] > *n.hi[t.var])
                        return false;
                }
            }
            if (!congruence_pass(n, changed)) return false;
            if (!changed) break;
        }
        return true;
    }

    // Per-row congruence propagation: in a pure-integer equality row, each
    // variable is determined modulo the gcd of the other coefficients. Shrinks
    // integer windows to the admissible residue class; returns false when a
    // row has no integer solution within the box.
    bool congruence_pass(Node& n, bool& changed) const {
        {
            for (const LinConstraint& con : q.cons) {
                if (con.rel != Rel::Eq) continue;
                std::map<std::size_t, Int> coef;
                Int rhs = con.rhs;
                bool ok = true;
                for (const LinTerm& t : con.terms) {
                    Int v;
                    if (fixed(n, t.var, v))
                        rhs -= t.coef * v;
                    else if (!q.integer[t.var]) {
                        ok = false;
                        break;
                    } else
                        coef[t.var] += t.coef;
                }
                if (!ok) continue;
                for (auto it = coef.begin(); it != coef.end();) {
                    if (it->second == 0)
                        it = coef.erase(it);
                    else
                        ++it;
                }
                if (coef.empty()) {
                    if (rhs != 0) return false;
                    continue;
                }
                for (const auto& [j, c] : coef) {
                    Int g = 0;
                    for (const auto& [j2, c2] : coef)
                        if (j2 != j) g = int_gcd(g, c2);
                    Int d = int_gcd(int_abs(c), g);
                    if (int_mod(rhs, d) != 0) return false;
                    if (g == 0) {
                        // Sole variable: c * x = rhs exactly.
                        Int v = rhs / c;
                        if (v * c != rhs) return false;
                        if ((n.lo[j] && v < *n.lo[j]) || (n.hi[j] && v > *n.hi[j]))
                            return false;
                        if (!n.lo[j] || !n.hi[j] || *n.lo[j] != *n.hi[j]) changed = true;
                        n.lo[j] = v;
                        n.hi[j] = v;
                        continue;
                    }
                    Int m = g / d;
                    if (m == 1) continue;
                    Int inv;
                    if (!mpz_invert(inv.get_mpz_t(), Int(c / d).get_mpz_t(),
                                    m.get_mpz_t()))
                        return false;
                    Int r = int_mod(Int(rhs / d * inv), m);  // x = r (mod m)
                    if (n.lo[j]) {
                        Int nl = *n.lo[j] + int_mod(Int(r - *n.lo[j]), m);
                        if (nl != *n.lo[j]) {
                            n.lo[j] = nl;
                            changed = true;
                        }
                    }
                    if (n.hi[j]) {
                        Int nh = *n.hi[j] - int_mod(Int(*n.hi[j] - r), m);
                        if (nh != *n.hi[j]) {
                            n.hi[j] = nh;
                            changed = true;
                        }
                    }
                    if (n.lo[j] && n.hi[j] && *n.lo[j] > *n.hi[j]) return false;
                }
            }
        }
        return true;
    }

    // Equality rows supported on integer variables only: does the system have
    // any integer solution at all (bounds ignored)? If not, prune.
    bool lattice_feasible(const Node& n) {
        std::vector<std::size_t> unfixed;
        std::map<std::size_t, std::size_t> pos;
        std::vector<Int> fixval(q.nvars(), 0);
        std::vector<bool> isfix(q.nvars(), false);
        for (std::size_t j = 0; j < q.nvars(); ++j) {
            Int v;
            if (fixed(n, j, v)) {
                isfix[j] = true;
                fixval[j] = v;
            }
        }
        std::vector<std::vector<Int>> rows;
        std::vector<Int> rhs;
        for (const LinConstraint& con : q.cons) {
            if (con.rel != Rel::Eq) continue;
            bool pure = true;
            for (const LinTerm& t : con.terms)
                if (!q.integer[t.var] && !isfix[t.var]) {
                    pure = false;
                    break;
                }
            if (!pure) continue;
            Int r = con.rhs;
            std::vector<std::pair<std::size_t, Int>> active;
            for (const LinTerm& t : con.terms) {
                if (isfix[t.var])
                    r -= t.coef * fixval[t.var];
                else
                    active.push_back({t.var, t.coef});
            }
            std::vector<Int> row;
            for (auto& [v, c] : active) {
                if (!pos.count(v)) {
                    pos[v] = unfixed.size();
                    unfixed.push_back(v);
                    for (auto& rr : rows) rr.push_back(0);
                }
                row.resize(unfixed.size(), 0);
                row[pos[v]] += c;
            }
            row.resize(unfixed.size(), 0);
            rows.push_back(std::move(row));
            rhs.push_back(std::move(r));
        }
        if (rows.empty()) return true;
        for (auto& rr : rows) rr.resize(unfixed.size(), 0);
        // Transpose to columns for the lattice solve.
        linalg::ColMat D(unfixed.size(), std::vector<Int>(rows.size(), 0));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < unfixed.size(); ++j) D[j][i] = rows[i][j];
        return linalg::solve_integer(D, rows.size(), rhs).has_value();
    }

    // When every unfixed variable is integer, cost-free in the subtree,
    // upper-unbounded, and appears only in equality rows, feasibility reduces
    // to a shifted-lattice question intersected with lower bounds.
    // Returns: 1 feasible (fills sol), 0 inconclusive, -1 infeasible.
    int endgame(const Node& n, std::vector<Rat>& sol) {
        std::vector<std::size_t> unfixed;
        std::vector<Int> fixval(q.nvars(), 0);
        std::vector<bool> isfix(q.nvars(), false);
        for (std::size_t j = 0; j < q.nvars(); ++j) {
            Int v;
            if (fixed(n, j, v)) {
                isfix[j] = true;
                fixval[j] = v;
            } else {
                if (!q.integer[j] || q.objective[j] != 0 || n.hi[j]) return 0;
                unfixed.push_back(j);
            }
        }
        if (unfixed.empty()) return 0;  // LP already decided this case
        std::map<std::size_t, std::size_t> pos;
        for (std::size_t k = 0; k < unfixed.size(); ++k) pos[unfixed[k]] = k;

        std::vector<std::vector<Int>> rows;
        std::vector<Int> rhs;
        for (const LinConstraint& con : q.cons) {
            bool touches = false;
            for (const LinTerm& t : con.terms)
                if (!isfix[t.var]) touches = true;
            if (!touches) continue;
            if (con.rel != Rel::Eq) return 0;
            Int r = con.rhs;
            std::vector<Int> row(unfixed.size(), 0);
            for (const LinTerm& t : con.terms) {
                if (isfix[t.var])
                    r -= t.coef * fixval[t.var];
                else
                    row[pos.at(t.var)] += t.coef;
            }
            rows.push_back(std::move(row));
            rhs.push_back(std::move(r));
        }
        std::size_t k = unfixed.size();
        linalg::ColMat D(k, std::vector<Int>(rows.size(), 0));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < k; ++j) D[j][i] = rows[i][j];
        auto z0 = linalg::solve_integer(D, rows.size(), rhs);
        if (!z0) return -1;
        linalg::ColMat ker = linalg::kernel_basis(D, rows.size());

        std::vector<std::optional<Int>> lb(k);
        for (std::size_t j = 0; j < k; ++j) lb[j] = n.lo[unfixed[j]];

        auto emit = [&](const std::vector<Int>& z) {
            sol.assign(q.nvars(), Rat(0));
            for (std::size_t j = 0; j < q.nvars(); ++j)
                if (isfix[j]) sol[j] = Rat(fixval[j]);
            for (std::size_t j = 0; j < k; ++j) sol[unfixed[j]] = Rat(z[j]);
        };

        if (ker.empty()) {
            for (std::size_t j = 0; j < k; ++j)
                if (lb[j] && (*z0)[j] < *lb[j]) return -1;
            emit(*z0);
            return 1;
        }
        if (ker.size() == 1) {
            // One-parameter family: intersect the lower-bound half-lines.
            const auto& d = ker[0];
            std::optional<Int> tlo, thi;
            for (std::size_t j = 0; j < k; ++j) {
                if (!lb[j]) continue;
                Int need = *lb[j] - (*z0)[j];  // need d[j]*t >= need
                if (d[j] == 0) {
                    if (need > 0) return -1;
                } else if (d[j] > 0) {
                    Int m = int_cdiv(need, d[j]);
                    if (!tlo || m > *tlo) tlo = m;
                } else {
                    Int m = int_fdiv(need, d[j]);
                    if (!thi || m < *thi) thi = m;
                }
            }
            if (tlo && thi && *tlo > *thi) return -1;
            Int t = tlo ? *tlo : (thi ? *thi : Int(0));
            std::vector<Int> z = *z0;
            for (std::size_t j = 0; j < k; ++j) z[j] += t * d[j];
            emit(z);
            return 1;
        }
        // Strictly positive kernel combination on the bounded coordinates
        // gives a direction that escapes every lower bound at once.
        MixedProgram ray;
        for (std::size_t s = 0; s < ker.size(); ++s)
            ray.add_var("s" + std::to_string(s), std::nullopt, std::nullopt, Int(0),
                        false);
        bool any = false;
        for (std::size_t j = 0; j < k; ++j) {
            if (!lb[j]) continue;
            any = true;
            std::vector<LinTerm> terms;
            for (std::size_t s = 0; s < ker.size(); ++s)
                if (ker[s][j] != 0) terms.push_back({s, ker[s][j]});
            ray.add_constraint(std::move(terms), Rel::Ge, Int(1));
        }
        if (!any) {
            emit(*z0);
            return 1;
        }
        SolveOutcome ro = lp_solve(ray);
        if (ro.status != SolveStatus::OPTIMAL) return 0;
        Int den = 1;
        for (const Rat& v : ro.assignment) den = int_lcm(den, v.get_den());
        std::vector<Int> kappa(k, 0);
        for (std::size_t s = 0; s < ker.size(); ++s) {
            Int coef = Int(ro.assignment[s] * Rat(den));
            for (std::size_t j = 0; j < k; ++j) kappa[j] += coef * ker[s][j];
        }
        Int step = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (!lb[j]) continue;
            if (kappa[j] <= 0) return 0;  // scaling glitch; fall back to branching
            if ((*z0)[j] < *lb[j]) step = std::max(step, int_cdiv(*lb[j] - (*z0)[j], kappa[j]));
        }
        std::vector<Int> z = *z0;
        for (std::size_t j = 0; j < k; ++j) z[j] += step * kappa[j];
        emit(z);
        return 1;
    }

    bool subtree_cost_constant(const Node& n) const {
        for (std::size_t j = 0; j < q.nvars(); ++j) {
            Int v;
            if (q.objective[j] != 0 && !fixed(n, j, v)) return false;
        }
        return true;
    }

    Rat node_constant_cost(const Node& n) const {
        Rat c = 0;
        for (std::size_t j = 0; j < q.nvars(); ++j) {
            Int v;
            if (q.objective[j] != 0 && fixed(n, j, v)) c += Rat(q.objective[j]) * Rat(v);
        }
        return c;
    }

    void offer(const Rat& value, std::vector<Rat> assign) {
        if (!incumbent_value || value < *incumbent_value) {
            incumbent_value = value;
            incumbent = std::move(assign);
        }
    }

    SolveStatus run();
};

bool mip_feasible(const MixedProgram& p, const SolveLimits& lim, long& used);

SolveStatus Search::run() {
    std::set<Node, NodeOrder> open;
    Node root;
    root.id = next_id++;
    root.lo = q.lo;
    root.hi = q.hi;
    open.insert(root);

    while (!open.empty()) {
        Node n = *open.begin();
        open.erase(open.begin());
        if (incumbent_value && n.bound >= *incumbent_value) continue;

        if (!tighten(n)) continue;
        if (!lattice_feasible(n)) continue;

        if (++lp_count > lim.node_budget) {
            hit_limit = true;
            return SolveStatus::RESOURCE_LIMIT;
        }
        SolveOutcome rel = lp_solve(with_bounds(n));
        if (rel.status == SolveStatus::INFEASIBLE) continue;
        if (rel.status == SolveStatus::UNBOUNDED) {
            // Integer-feasible here implies an integral improving ray exists.
            MixedProgram feas = with_bounds(n);
            for (Int& c : feas.objective) c = 0;
            long used = 0;
            SolveLimits sub{lim.node_budget - lp_count};
            if (mip_feasible(feas, sub, used)) {
                lp_count += used;
                unbounded = true;
                return SolveStatus::UNBOUNDED;
            }
            lp_count += used;
            if (lp_count > lim.node_budget) {
                hit_limit = true;
                return SolveStatus::RESOURCE_LIMIT;
            }
            continue;
        }
        if (incumbent_value && rel.objective >= *incumbent_value) continue;

        std::size_t frac_var = q.nvars();
        Rat frac_score = -1;
        for (std::size_t j = 0; j < q.nvars(); ++j) {
            if (!q.integer[j] || rat_is_int(rel.assignment[j])) continue;
            Rat f = rel.assignment[j] - Rat(rat_floor(rel.assignment[j]));
            Rat score = std::min(f, Rat(Rat(1) - f));
            if (score > frac_score) {
                frac_score = score;
                frac_var = j;
            }
        }
        if (frac_var == q.nvars()) {
            offer(rel.objective, rel.assignment);
            if (feasibility_only) return SolveStatus::FEASIBLE;
            continue;
        }

        if (subtree_cost_constant(n)) {
            std::vector<Rat> sol;
            int e = endgame(n, sol);
            if (e == -1) continue;
            if (e == 1) {
                offer(node_constant_cost(n), std::move(sol));
                if (feasibility_only) return SolveStatus::FEASIBLE;
                continue;
            }
        }

        // When the fractional variable is unbounded the relaxation can drift
        // along it forever; splitting a small finite window instead forces the
        // combinatorial choices and lets propagation close the leaves.
        std::size_t br_var = frac_var;
        Int split = rat_floor(rel.assignment[frac_var]);
        if (!n.lo[frac_var] || !n.hi[frac_var]) {
            std::size_t best = q.nvars();
            Int bw = 0;
            for (std::size_t j = 0; j < q.nvars(); ++j) {
                if (!q.integer[j] || !n.lo[j] || !n.hi[j]) continue;
                Int w = *n.hi[j] - *n.lo[j];
                if (w == 0 || w > 16) continue;
                if (best == q.nvars() || w < bw) {
                    best = j;
                    bw = w;
                }
            }
            if (best != q.nvars()) {
                br_var = best;
                split = int_fdiv(Int(*n.lo[best] + *n.hi[best]), Int(2));
            }
        }
        Int lo_cut = n.lo[br_var] ? std::max(*n.lo[br_var], Int(-box)) : Int(-box);
        Int hi_cut = n.hi[br_var] ? std::min(*n.hi[br_var], box) : box;
        // Down child: x <= split.
        if (split >= lo_cut) {
            Node c = n;
            c.id = next_id++;
            c.bound = rel.objective;
            c.hi[br_var] = n.hi[br_var] ? std::min(*n.hi[br_var], split) : split;
            if (!c.lo[br_var] || *c.lo[br_var] <= *c.hi[br_var]) open.insert(c);
        }
        // Up child: x >= split+1.
        if (split + 1 <= hi_cut) {
            Node c = n;
            c.id = next_id++;
            c.bound = rel.objective;
            c.lo[br_var] = n.lo[br_var] ? std::max(*n.lo[br_var], Int(split + 1))
                                        : Int(split + 1);
            if (!c.hi[br_var] || *c.lo[br_var] <= *c.hi[br_var]) open.insert(c);
        }
    }
    if (incumbent_value)
        return feasibility_only ? SolveStatus::FEASIBLE : SolveStatus::OPTIMAL;
    return SolveStatus::INFEASIBLE;
}

bool mip_feasible(const MixedProgram& p, const SolveLimits& lim, long& used) {
    Search s(p, lim);
    s.feasibility_only = true;
    SolveStatus st = s.run();
    used = s.lp_count;
    if (st == SolveStatus::RESOURCE_LIMIT) throw std::runtime_error("budget");
    return st == SolveStatus::FEASIBLE || st == SolveStatus::OPTIMAL;
}

}  // namespace

SolveOutcome mip_solve(const MixedProgram& p, const SolveLimits& lim) {
    MixedProgram q = add_integer_slacks(p);
    Search s(q, lim);
    SolveStatus st;
    try {
        st = s.run();
    } catch (const std::runtime_error&) {
        return {SolveStatus::RESOURCE_LIMIT, {}, 0, 0, false, s.lp_count};
    }
    SolveOutcome out;
    out.status = st;
    out.nodes = s.lp_count;
    if (st == SolveStatus::OPTIMAL || st == SolveStatus::FEASIBLE) {
        out.assignment.assign(s.incumbent.begin(), s.incumbent.begin() + p.nvars());
        out.objective = *s.incumbent_value;
    }
    return out;
}

std::vector<Rat> tu_round(const MixedProgram& p,
                          const std::vector<std::pair<std::size_t, Int>>& fixed) {
    MixedProgram q = p;
    for (const auto& [j, v] : fixed) {
        q.lo[j] = v;
        q.hi[j] = v;
    }
    q.integer.assign(q.nvars(), false);
    SolveOutcome out = lp_solve(q);
    if (out.status != SolveStatus::OPTIMAL)
        throw std::logic_error("tu_round: residual LP not solvable");
    for (const Rat& v : out.assignment)
        if (!rat_is_int(v)) throw std::logic_error("tu_round: non-integral vertex");
    return out.assignment;
}

}  // namespace blockip
