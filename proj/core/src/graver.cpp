#include "blockip/graver.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "blockip/errors.hpp"
#include "blockip/linalg.hpp"

namespace blockip {

namespace {

using Entry = std::vector<Int>;

Int l1(const Entry& v) {
    Int s = 0;
    for (const Int& x : v) s += int_abs(x);
    return s;
}

bool conf_leq(const Entry& u, const Entry& v) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] * v[i] < 0) return false;
        if (int_abs(u[i]) > int_abs(v[i])) return false;
    }
    return true;
}

// Repeated conformal subtraction against the current set.
Entry normal_form(Entry s, const std::set<Entry>& S) {
    bool reduced = true;
    while (reduced) {
        reduced = false;
        bool zero = true;
        for (const Int& x : s)
            if (x != 0) {
                zero = false;
                break;
            }
        if (zero) break;
        for (const Entry& g : S)
            if (conf_leq(g, s)) {
                for (std::size_t i = 0; i < s.size(); ++i) s[i] -= g[i];
                reduced = true;
                break;
            }
    }
    return s;
}

struct ByNorm {
    bool operator()(const Entry& a, const Entry& b) const {
        Int la = l1(a), lb = l1(b);
        if (la != lb) return la < lb;
        return a < b;
    }
};

std::string matrix_key(const IntMat& D) {
    std::ostringstream os;
    os << D.ncols() << 'x' << D.nrows();
    for (const auto& c : D.col)
        for (const Int& x : c) os << ' ' << x.get_str();
    return os.str();
}

std::mutex cache_mutex;
std::map<std::string, std::shared_ptr<const GraverBasis>> cache;

std::shared_ptr<const GraverBasis> compute_graver(const IntMat& D, const Int& norm_budget) {
    std::size_t t = D.nrows();
    Int bound = int_pow(Int(2 * Int(t) * D.norm_inf() + 1), t);
    if (bound > norm_budget)
        throw ResourceLimitError("graver_basis: norm bound exceeds budget");

    linalg::ColMat cols = D.col;
    linalg::ColMat ker = linalg::kernel_basis(cols, t);

    std::set<Entry> S;
    std::set<Entry, ByNorm> C;
    for (const auto& k : ker) {
        C.insert(k);
        Entry nk = k;
        for (Int& x : nk) x = -x;
        C.insert(nk);
    }
    while (!C.empty()) {
        Entry s = *C.begin();
        C.erase(C.begin());
        s = normal_form(std::move(s), S);
        bool zero = std::all_of(s.begin(), s.end(), [](const Int& x) { return x == 0; });
        if (zero) continue;
        for (const Entry& g : S) {
            Entry sum(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) sum[i] = s[i] + g[i];
            C.insert(std::move(sum));
        }
        Entry neg = s;
        for (Int& x : neg) x = -x;
        C.insert(neg);
        S.insert(std::move(s));
    }
    // Keep the conformally minimal elements, symmetrized.
    std::set<Entry> sym = S;
    for (const Entry& s : S) {
        Entry n = s;
        for (Int& x : n) x = -x;
        sym.insert(std::move(n));
    }
    auto gb = std::make_shared<GraverBasis>();
    gb->matrix = D;
    for (const Entry& s : sym) {
        bool minimal = true;
        for (const Entry& g : sym)
            if (g != s && conf_leq(g, s)) {
                minimal = false;
                break;
            }
        if (!minimal) continue;
        if (l1(s) > bound) throw std::logic_error("graver_basis: element exceeds norm bound");
        gb->elements.emplace_back(D.cols, s);
    }
    return gb;
}

}  // namespace

namespace {

// The cache is keyed by entries only, so a hit may carry another caller's
// variable names; rewrap onto the requesting matrix's column tuple.
std::shared_ptr<const GraverBasis> reindexed(std::shared_ptr<const GraverBasis> gb,
                                             const IntMat& D) {
    if (same_tuple(gb->matrix.cols, D.cols)) return gb;
    auto out = std::make_shared<GraverBasis>();
    out->matrix = D;
    for (const IntVec& g : gb->elements) out->elements.emplace_back(D.cols, g.e);
    return out;
}

}  // namespace

std::shared_ptr<const GraverBasis> graver_basis(const IntMat& D, const Int& norm_budget) {
    std::string key = matrix_key(D);
    {
        std::lock_guard<std::mutex> lk(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return reindexed(it->second, D);
    }
    auto gb = compute_graver(D, norm_budget);
    std::lock_guard<std::mutex> lk(cache_mutex);
    auto [it, _] = cache.emplace(key, std::move(gb));
    return reindexed(it->second, D);
}

Int base_bound(const IntMat& D, const IntVec& b) {
    std::size_t t = D.nrows();
    return int_pow(Int(2 * Int(t) * (D.norm_inf() + b.norm_inf()) + 1), t);
}

std::vector<IntVec> minimal_solutions(const IntMat& D, const IntVec& b) {
    if (!same_tuple(D.rows, b.index))
        throw std::invalid_argument("minimal_solutions: index mismatch");
    if (b.is_zero()) return {IntVec(D.cols)};
    std::vector<std::string> names = *D.cols;
    names.push_back("_z");
    VarTuple ext = make_vars(std::move(names));
    IntMat Dx(ext, D.rows);
    for (std::size_t j = 0; j < D.ncols(); ++j) Dx.col[j] = D.col[j];
    for (std::size_t i = 0; i < D.nrows(); ++i) Dx.col[D.ncols()][i] = -b[i];

    auto gb = graver_basis(Dx);
    std::vector<IntVec> out;
    for (const IntVec& g : gb->elements) {
        if (g[D.ncols()] != 1) continue;
        bool nonneg = true;
        for (std::size_t j = 0; j < D.ncols(); ++j)
            if (g[j] < 0) {
                nonneg = false;
                break;
            }
        if (!nonneg) continue;
        IntVec v(D.cols);
        for (std::size_t j = 0; j < D.ncols(); ++j) v[j] = g[j];
        out.push_back(std::move(v));
    }
    return out;
}

GraverDecomposition graver_decompose(const IntMat& D, const IntVec& b, const IntVec& w) {
    for (std::size_t j = 0; j < w.dim(); ++j)
        if (w[j] < 0) throw std::invalid_argument("graver_decompose: w must be nonnegative");
    if (!(mat_apply(D, w) == b))
        throw std::invalid_argument("graver_decompose: Dw != b");

    auto gb = graver_basis(D);
    std::vector<IntVec> nonneg;
    for (const IntVec& g : gb->elements) {
        bool ok = !g.is_zero();
        for (std::size_t j = 0; j < g.dim(); ++j)
            if (g[j] < 0) ok = false;
        if (ok) nonneg.push_back(g);
    }

    GraverDecomposition dec;
    dec.base = w;
    // Peel nonnegative Graver elements; when none fits, what remains is a
    // base solution by the conformal decomposition of ([D|-b])-kernel vectors.
    bool peeled = true;
    while (peeled) {
        peeled = false;
        for (const IntVec& g : nonneg) {
            if (!conformal_leq(g, dec.base)) continue;
            dec.base = dec.base - g;
            dec.parts.push_back(g);
            peeled = true;
            break;
        }
    }
    if (dec.base.norm_inf() > base_bound(D, b))
        throw std::logic_error("graver_decompose: base exceeds bound");
    return dec;
}

std::vector<IntVec> base_solutions(const IntMat& D, const IntVec& b, const Int& bound,
                                   long node_cap) {
    if (!same_tuple(D.rows, b.index))
        throw std::invalid_argument("base_solutions: index mismatch");
    std::size_t n = D.ncols(), m = D.nrows();
    // Suffix min/max contribution of columns >= j to each row, over [0,bound].
    std::vector<std::vector<Int>> smin(n + 1, std::vector<Int>(m, 0));
    std::vector<std::vector<Int>> smax(n + 1, std::vector<Int>(m, 0));
    for (std::size_t j = n; j-- > 0;)
        for (std::size_t i = 0; i < m; ++i) {
            Int c = D.col[j][i] * bound;
            smin[j][i] = smin[j + 1][i] + (c < 0 ? c : Int(0));
            smax[j][i] = smax[j + 1][i] + (c > 0 ? c : Int(0));
        }

    // Solutions reducible by a nonnegative Graver element are not bases; a
    // branch whose decided prefix already dominates such an element can never
    // recover, so it is cut wholesale.
    auto gb = graver_basis(D);
    std::vector<IntVec> reducers;
    std::vector<std::size_t> red_end;  // one past the last nonzero coordinate
    for (const IntVec& g : gb->elements) {
        bool nonneg = !g.is_zero();
        for (std::size_t j = 0; j < n; ++j)
            if (g[j] < 0) nonneg = false;
        if (!nonneg) continue;
        std::size_t e = n;
        while (e > 0 && g[e - 1] == 0) --e;
        reducers.push_back(g);
        red_end.push_back(e);
    }

    std::vector<IntVec> out;
    std::vector<Int> cur(n, 0);
    std::vector<Int> resid = b.e;
    long nodes = 0;

    auto dominated = [&](std::size_t j) {
        for (std::size_t r = 0; r < reducers.size(); ++r) {
            if (red_end[r] > j) continue;
            bool dom = true;
            for (std::size_t t = 0; t < red_end[r] && dom; ++t)
                if (cur[t] < reducers[r][t]) dom = false;
            if (dom) return true;
        }
        return false;
    };

    auto dfs = [&](auto&& self, std::size_t j) -> void {
        if (++nodes > node_cap) throw ResourceLimitError("base_solutions: node cap");
        if (dominated(j)) return;
        if (j == n) {
            for (std::size_t i = 0; i < m; ++i)
                if (resid[i] != 0) return;
            out.emplace_back(D.cols, cur);
            return;
        }
        Int lo = 0, hi = bound;
        for (std::size_t i = 0; i < m; ++i) {
            const Int& c = D.col[j][i];
            // c*v_j must land in [resid - smax(rest), resid - smin(rest)].
            Int wlo = resid[i] - smax[j + 1][i];
            Int whi = resid[i] - smin[j + 1][i];
            if (c > 0) {
                lo = std::max(lo, int_cdiv(wlo, c));
                hi = std::min(hi, int_fdiv(whi, c));
            } else if (c < 0) {
                lo = std::max(lo, int_cdiv(whi, c));
                hi = std::min(hi, int_fdiv(wlo, c));
            } else if (wlo > 0 || whi < 0) {
                return;
            }
            if (lo > hi) return;
        }
        for (Int v = lo; v <= hi; ++v) {
            cur[j] = v;
            if (v != 0)
                for (std::size_t i = 0; i < m; ++i) resid[i] -= D.col[j][i] * v;
            self(self, j + 1);
            if (v != 0)
                for (std::size_t i = 0; i < m; ++i) resid[i] += D.col[j][i] * v;
        }
        cur[j] = 0;
    };
    dfs(dfs, 0);
    std::sort(out.begin(), out.end(),
              [](const IntVec& a, const IntVec& b2) { return a.e < b2.e; });
    return out;
}

}  // namespace blockip
