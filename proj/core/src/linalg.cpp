#include "blockip/linalg.hpp"

#include <stdexcept>

namespace blockip::linalg {

namespace {

// colk := s*colk + t*colj; colj := -v1*colk_old + u1*colj_old (unimodular).
void col_combine(std::vector<Int>& ck, std::vector<Int>& cj, const Int& s, const Int& t,
                 const Int& u1, const Int& v1) {
    for (std::size_t i = 0; i < ck.size(); ++i) {
        Int nk = s * ck[i] + t * cj[i];
        Int nj = -v1 * ck[i] + u1 * cj[i];
        ck[i] = nk;
        cj[i] = nj;
    }
}

void col_negate(std::vector<Int>& c) {
    for (Int& x : c) x = -x;
}

}  // namespace

ColHNF col_hnf(const ColMat& D, std::size_t m) {
    ColHNF res;
    res.H = D;
    std::size_t n = D.size();
    res.U.assign(n, std::vector<Int>(n, 0));
    for (std::size_t j = 0; j < n; ++j) res.U[j][j] = 1;

    std::size_t k = 0;
    for (std::size_t r = 0; r < m && k < n; ++r) {
        std::size_t piv = n;
        for (std::size_t j = k; j < n; ++j)
            if (res.H[j][r] != 0) {
                piv = j;
                break;
            }
        if (piv == n) continue;
        std::swap(res.H[k], res.H[piv]);
        std::swap(res.U[k], res.U[piv]);
        for (std::size_t j = k + 1; j < n; ++j) {
            if (res.H[j][r] == 0) continue;
            Int a = res.H[k][r], b = res.H[j][r];
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
                       b.get_mpz_t());
            Int u1 = a / g, v1 = b / g;
            col_combine(res.H[k], res.H[j], s, t, u1, v1);
            col_combine(res.U[k], res.U[j], s, t, u1, v1);
        }
        if (res.H[k][r] < 0) {
            col_negate(res.H[k]);
            col_negate(res.U[k]);
        }
        res.pivot_row.push_back(r);
        ++k;
    }
    res.rank = k;
    return res;
}

std::optional<std::vector<Int>> solve_integer(const ColMat& D, std::size_t m,
                                              const std::vector<Int>& v) {
    if (v.size() != m) throw std::invalid_argument("solve_integer: rhs size");
    ColHNF h = col_hnf(D, m);
    std::size_t n = D.size();
    std::vector<Int> mu(n, 0);
    std::vector<Int> resid = v;
    for (std::size_t k = 0; k < h.rank; ++k) {
        std::size_t r = h.pivot_row[k];
        const Int& p = h.H[k][r];
        if (int_mod(resid[r], int_abs(p)) != 0) return std::nullopt;
        mu[k] = resid[r] / p;
        if (mu[k] != 0)
            for (std::size_t i = 0; i < m; ++i) resid[i] -= mu[k] * h.H[k][i];
    }
    for (std::size_t i = 0; i < m; ++i)
        if (resid[i] != 0) return std::nullopt;
    std::vector<Int> x(n, 0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < h.rank; ++k)
            if (mu[k] != 0) x[j] += h.U[k][j] * mu[k];
    return x;
}

ColMat kernel_basis(const ColMat& D, std::size_t m) {
    ColHNF h = col_hnf(D, m);
    ColMat K;
    for (std::size_t k = h.rank; k < D.size(); ++k) K.push_back(h.U[k]);
    return K;
}

std::optional<std::vector<Rat>> solve_rational(const ColMat& D, std::size_t m,
                                               const std::vector<Int>& v) {
    if (v.size() != m) throw std::invalid_argument("solve_rational: rhs size");
    std::size_t n = D.size();
    // Row-major augmented matrix [A | v].
    std::vector<std::vector<Rat>> A(m, std::vector<Rat>(n + 1, Rat(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) A[i][j] = Rat(D[j][i]);
        A[i][n] = Rat(v[i]);
    }
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < m; ++c) {
        std::size_t pr = m;
        for (std::size_t i = row; i < m; ++i)
            if (A[i][c] != 0) {
                pr = i;
                break;
            }
        if (pr == m) continue;
        std::swap(A[row], A[pr]);
        Rat inv = 1 / A[row][c];
        for (std::size_t j = c; j <= n; ++j) A[row][j] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || A[i][c] == 0) continue;
            Rat f = A[i][c];
            for (std::size_t j = c; j <= n; ++j) A[i][j] -= f * A[row][j];
        }
        pivots.emplace_back(row, c);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i)
        if (A[i][n] != 0) return std::nullopt;
    std::vector<Rat> x(n, Rat(0));
    for (auto& [r, c] : pivots) x[c] = A[r][n];
    return x;
}

Int det_bareiss(std::vector<std::vector<Int>> M) {
    std::size_t n = M.size();
    if (n == 0) return 1;
    for (auto& r : M)
        if (r.size() != n) throw std::invalid_argument("det_bareiss: not square");
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k] == 0) {
            std::size_t sw = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (M[i][k] != 0) {
                    sw = i;
                    break;
                }
            if (sw == n) return 0;
            std::swap(M[k], M[sw]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    return sign > 0 ? M[n - 1][n - 1] : Int(-M[n - 1][n - 1]);
}

}  // namespace blockip::linalg
