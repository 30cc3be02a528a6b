#include "blockip/cone.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "blockip/errors.hpp"
#include "blockip/lattice.hpp"
#include "blockip/mip.hpp"

namespace blockip {

namespace {

std::vector<Int> primitive(std::vector<Int> row) {
    Int g = 0;
    for (const Int& x : row) g = int_gcd(g, x);
    if (g > 1)
        for (Int& x : row) x /= g;
    return row;
}

bool is_zero_row(const std::vector<Int>& row) {
    for (const Int& x : row)
        if (x != 0) return false;
    return true;
}

// Does the homogeneous system {<g,v> >= 0 for g in keep} imply <f,v> >= 0?
bool implied(const std::vector<std::vector<Int>>& keep, const std::vector<Int>& f) {
    MixedProgram p;
    std::size_t t = f.size();
    for (std::size_t i = 0; i < t; ++i)
        p.add_var("v" + std::to_string(i + 1), std::nullopt, std::nullopt, Int(0), false);
    for (const auto& g : keep) {
        std::vector<LinTerm> terms;
        for (std::size_t i = 0; i < t; ++i)
            if (g[i] != 0) terms.push_back({i, g[i]});
        p.add_constraint(std::move(terms), Rel::Ge, Int(0));
    }
    std::vector<LinTerm> terms;
    for (std::size_t i = 0; i < t; ++i)
        if (f[i] != 0) terms.push_back({i, f[i]});
    p.add_constraint(std::move(terms), Rel::Le, Int(-1));
    return lp_solve(p).status == SolveStatus::INFEASIBLE;
}

}  // namespace

DualRepresentation weyl_dual(const std::vector<IntVec>& gens) {
    DualRepresentation rep;
    rep.generators = gens;
    if (gens.empty()) return rep;  // cone {0}: constants are special-cased
    const VarTuple& idx = gens[0].index;
    std::size_t t = gens[0].dim(), n = gens.size();

    // Rows over (v_1..v_t, lambda_1..lambda_n), each meaning row.(v,l) >= 0.
    std::vector<std::vector<Int>> rows;
    for (std::size_t i = 0; i < t; ++i) {
        std::vector<Int> eq(t + n, 0);
        eq[i] = 1;
        for (std::size_t j = 0; j < n; ++j) eq[t + j] = -gens[j][i];
        rows.push_back(eq);
        for (Int& x : eq) x = -x;
        rows.push_back(eq);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Int> pos(t + n, 0);
        pos[t + j] = 1;
        rows.push_back(pos);
    }

    for (std::size_t col = t + n; col-- > t;) {  // eliminate lambdas
        std::vector<std::vector<Int>> next, P, N;
        for (auto& r : rows) {
            if (r[col] > 0) {
                P.push_back(r);
            } else if (r[col] < 0) {
                N.push_back(r);
            } else {
                r.resize(col);
                next.push_back(r);
            }
        }
        for (const auto& p : P)
            for (const auto& q : N) {
                std::vector<Int> r(col, 0);
                for (std::size_t i = 0; i < col; ++i)
                    r[i] = -q[col] * p[i] + p[col] * q[i];
                next.push_back(std::move(r));
            }
        std::set<std::vector<Int>> dedup;
        std::vector<std::vector<Int>> cleaned;
        for (auto& r : next) {
            if (is_zero_row(r)) continue;
            auto pr = primitive(std::move(r));
            if (dedup.insert(pr).second) cleaned.push_back(pr);
        }
        rows = std::move(cleaned);
    }

    // LP pruning of redundant facets, in deterministic (sorted) order.
    std::sort(rows.begin(), rows.end());
    std::vector<bool> alive(rows.size(), true);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<std::vector<Int>> others;
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (alive[j] && j != i) others.push_back(rows[j]);
        if (implied(others, rows[i])) alive[i] = false;
    }
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (alive[i]) rep.facets.emplace_back(idx, rows[i]);
    return rep;
}

std::vector<IntVec> orthogonal_subset(const std::vector<IntVec>& gens,
                                      const std::vector<IntVec>& G) {
    std::vector<IntVec> out;
    for (const IntVec& d : gens) {
        bool ortho = true;
        for (const IntVec& g : G)
            if (inner(g, d) != 0) {
                ortho = false;
                break;
            }
        if (ortho) out.push_back(d);
    }
    return out;
}

std::pair<Int, Int> deep_threshold(const DualRepresentation& rep) {
    if (rep.generators.empty()) return {Int(1), Int(0)};
    std::size_t t = rep.generators[0].dim();
    Int delta = 0;
    for (const IntVec& d : rep.generators) delta = std::max(delta, d.norm_inf());
    Int L = int_pow(Int(2 + Int(rep.generators.size() + 1) * delta),
                    2 * static_cast<unsigned long>(t));
    if (rep.facets.empty()) return {L, Int(0)};
    Int maxf = 0;
    for (const IntVec& f : rep.facets) maxf = std::max(maxf, f.norm_1());
    Int M = L * Int(rep.generators.size()) * maxf * delta;
    return {L, M};
}

ConeConstants cone_constants(const DualRepresentation& rep, std::size_t facet_cap) {
    ConeConstants c;
    if (rep.generators.empty()) {
        c.L = 1;
        c.M = 0;
        c.Mhat = 0;
        c.K = 1;
        c.Bseq = {Int(1)};
        c.B = 2;
        return c;
    }
    std::size_t nf = rep.facets.size();
    if (nf > facet_cap)
        throw ResourceLimitError("cone_constants: facet count exceeds subset cap");
    auto [L, M] = deep_threshold(rep);
    c.L = L;
    c.M = M;
    Int delta = 0;
    for (const IntVec& d : rep.generators) delta = std::max(delta, d.norm_inf());
    Int maxf = 0;
    for (const IntVec& f : rep.facets) maxf = std::max(maxf, f.norm_1());
    c.Mhat = M + Int(rep.generators.size()) * maxf * delta;

    c.K = 1;
    for (std::size_t mask = 0; mask < (std::size_t(1) << nf); ++mask) {
        std::vector<IntVec> G;
        for (std::size_t i = 0; i < nf; ++i)
            if (mask & (std::size_t(1) << i)) G.push_back(rep.facets[i]);
        c.K = int_lcm(c.K, fractionality_constant(orthogonal_subset(rep.generators, G)));
    }
    c.Bseq = {c.K};
    for (std::size_t i = 1; i <= nf; ++i) c.Bseq.push_back(c.Mhat * c.Bseq.back());
    c.B = 2 * c.Bseq.back();
    return c;
}

bool cone_member(const std::vector<IntVec>& gens, const RatVec& v) {
    // Scale to integer data, then LP feasibility of v = sum lambda_d d.
    Int den = 1;
    for (const Rat& x : v.e) den = int_lcm(den, x.get_den());
    MixedProgram p;
    for (std::size_t j = 0; j < gens.size(); ++j)
        p.add_var("l" + std::to_string(j + 1), Int(0), std::nullopt, Int(0), false);
    for (std::size_t i = 0; i < v.dim(); ++i) {
        std::vector<LinTerm> terms;
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (!same_tuple(gens[j].index, v.index))
                throw std::invalid_argument("cone_member: index mismatch");
            if (gens[j][i] != 0) terms.push_back({j, Int(gens[j][i] * den)});
        }
        p.add_constraint(std::move(terms), Rel::Eq, Int(v[i] * Rat(den)));
    }
    return lp_solve(p).status == SolveStatus::OPTIMAL;
}

bool cone_member(const std::vector<IntVec>& gens, const IntVec& v) {
    RatVec r(v.index);
    for (std::size_t i = 0; i < v.dim(); ++i) r[i] = Rat(v[i]);
    return cone_member(gens, r);
}

}  // namespace blockip
