#include "blockip/lattice.hpp"

#include <stdexcept>

#include "blockip/linalg.hpp"

namespace blockip {

namespace {

linalg::ColMat to_colmat(const std::vector<IntVec>& gens) {
    linalg::ColMat D;
    D.reserve(gens.size());
    for (const IntVec& g : gens) D.push_back(g.e);
    return D;
}

Int l1(const std::vector<Int>& v) {
    Int s = 0;
    for (const Int& x : v) s += int_abs(x);
    return s;
}

// Greedily reduce lambda by kernel lattice vectors to shrink its l1 norm.
void size_reduce(std::vector<Int>& lambda, const linalg::ColMat& kernel) {
    bool changed = true;
    int guard = 0;
    while (changed && guard++ < 1000) {
        changed = false;
        for (const auto& k : kernel) {
            Int num = 0, den = 0;
            for (std::size_t i = 0; i < lambda.size(); ++i) {
                num += lambda[i] * k[i];
                den += k[i] * k[i];
            }
            if (den == 0) continue;
            Int c0 = int_fdiv(2 * num + den, 2 * den);  // round(num/den)
            for (Int c : {Int(c0 - 1), c0, Int(c0 + 1)}) {
                if (c == 0) continue;
                std::vector<Int> cand = lambda;
                for (std::size_t i = 0; i < cand.size(); ++i) cand[i] -= c * k[i];
                if (l1(cand) < l1(lambda)) {
                    lambda = std::move(cand);
                    changed = true;
                }
            }
        }
    }
}

}  // namespace

bool span_member(const std::vector<IntVec>& gens, const IntVec& v) {
    for (const IntVec& g : gens)
        if (!same_tuple(g.index, v.index))
            throw std::invalid_argument("span_member: index mismatch");
    if (gens.empty()) return v.is_zero();
    return linalg::solve_rational(to_colmat(gens), v.dim(), v.e).has_value();
}

std::optional<LatticeWitness> lattice_member(const std::vector<IntVec>& gens,
                                             const IntVec& v) {
    for (const IntVec& g : gens)
        if (!same_tuple(g.index, v.index))
            throw std::invalid_argument("lattice_member: index mismatch");
    if (gens.empty()) {
        if (v.is_zero()) return LatticeWitness{};
        return std::nullopt;
    }
    linalg::ColMat D = to_colmat(gens);
    auto sol = linalg::solve_integer(D, v.dim(), v.e);
    if (!sol) return std::nullopt;
    size_reduce(*sol, linalg::kernel_basis(D, v.dim()));

    Int delta = 0;
    for (const IntVec& g : gens) delta = std::max(delta, g.norm_inf());
    Int bound = int_pow(Int(2 + delta + v.norm_inf()),
                        2 * static_cast<unsigned long>(v.dim()));
    if (l1(*sol) > bound)
        throw std::logic_error("lattice_member: witness exceeds coefficient bound");
    return LatticeWitness{std::move(*sol)};
}

Int fractionality_constant(const std::vector<IntVec>& gens) {
    if (gens.empty()) return 1;
    std::size_t n = gens.size();
    std::size_t t = gens[0].dim();
    // Scan rows in index order; keep those independent of the rows kept so
    // far, tracking which column becomes the pivot of each kept row.
    std::vector<std::vector<Rat>> reduced;          // reduced kept rows
    std::vector<std::size_t> pivot_col;             // pivot column per kept row
    std::vector<std::size_t> kept_rows;             // original row indices
    for (std::size_t i = 0; i < t; ++i) {
        std::vector<Rat> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = Rat(gens[j][i]);
        for (std::size_t k = 0; k < reduced.size(); ++k) {
            if (row[pivot_col[k]] == 0) continue;
            Rat f = row[pivot_col[k]] / reduced[k][pivot_col[k]];
            for (std::size_t j = 0; j < n; ++j) row[j] -= f * reduced[k][j];
        }
        std::size_t pc = n;
        for (std::size_t j = 0; j < n; ++j)
            if (row[j] != 0) {
                pc = j;
                break;
            }
        if (pc == n) continue;
        reduced.push_back(std::move(row));
        pivot_col.push_back(pc);
        kept_rows.push_back(i);
    }
    // Square matrix: kept original rows, then unit rows for non-pivot columns.
    std::vector<bool> is_pivot(n, false);
    for (std::size_t pc : pivot_col) is_pivot[pc] = true;
    std::vector<std::vector<Int>> M;
    for (std::size_t i : kept_rows) {
        std::vector<Int> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = gens[j][i];
        M.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        std::vector<Int> row(n, 0);
        row[j] = 1;
        M.push_back(std::move(row));
    }
    return int_abs(linalg::det_bareiss(std::move(M)));
}

bool regular_lattice_member(const IntVec& v, const Int& K, const IntVec& r) {
    if (K <= 0) throw std::invalid_argument("regular_lattice_member: K must be positive");
    if (!same_tuple(v.index, r.index))
        throw std::invalid_argument("regular_lattice_member: index mismatch");
    for (std::size_t i = 0; i < v.dim(); ++i)
        if (int_mod(v[i] - r[i], K) != 0) return false;
    return true;
}

}  // namespace blockip
