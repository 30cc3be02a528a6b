#include "blockip/vec.hpp"

#include <algorithm>

namespace blockip {

VarTuple make_vars(const std::string& prefix, std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

VarTuple make_vars(std::vector<std::string> names) {
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool same_tuple(const VarTuple& a, const VarTuple& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

IntVec::IntVec(VarTuple idx, std::vector<Int> entries)
    : index(std::move(idx)), e(std::move(entries)) {
    if (index->size() != e.size()) throw std::invalid_argument("IntVec: index/entry size mismatch");
}

bool IntVec::is_zero() const {
    return std::all_of(e.begin(), e.end(), [](const Int& x) { return x == 0; });
}

Int IntVec::norm_inf() const {
    Int m = 0;
    for (const Int& x : e) {
        Int a = int_abs(x);
        if (a > m) m = a;
    }
    return m;
}

Int IntVec::norm_1() const {
    Int s = 0;
    for (const Int& x : e) s += int_abs(x);
    return s;
}

bool IntVec::operator==(const IntVec& o) const {
    return same_tuple(index, o.index) && e == o.e;
}

IntVec IntVec::operator+(const IntVec& o) const {
    if (!same_tuple(index, o.index)) throw std::invalid_argument("IntVec+: index mismatch");
    IntVec r(index);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] + o.e[i];
    return r;
}

IntVec IntVec::operator-(const IntVec& o) const {
    if (!same_tuple(index, o.index)) throw std::invalid_argument("IntVec-: index mismatch");
    IntVec r(index);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] - o.e[i];
    return r;
}

IntVec IntVec::operator-() const {
    IntVec r(index);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = -e[i];
    return r;
}

IntVec IntVec::operator*(const Int& s) const {
    IntVec r(index);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] * s;
    return r;
}

IntMat::IntMat(VarTuple c, VarTuple r) : cols(std::move(c)), rows(std::move(r)) {
    col.assign(cols->size(), std::vector<Int>(rows->size(), 0));
}

IntVec IntMat::column(std::size_t j) const {
    IntVec v(rows);
    v.e = col[j];
    return v;
}

Int IntMat::norm_inf() const {
    Int m = 0;
    for (const auto& c : col)
        for (const Int& x : c) {
            Int a = int_abs(x);
            if (a > m) m = a;
        }
    return m;
}

bool IntMat::operator==(const IntMat& o) const {
    return same_tuple(cols, o.cols) && same_tuple(rows, o.rows) && col == o.col;
}

IntMat mat_from_rows(VarTuple cols, VarTuple rows,
                     const std::vector<std::vector<Int>>& rowdata) {
    IntMat M(std::move(cols), std::move(rows));
    if (rowdata.size() != M.nrows()) throw std::invalid_argument("mat_from_rows: row count");
    for (std::size_t i = 0; i < rowdata.size(); ++i) {
        if (rowdata[i].size() != M.ncols())
            throw std::invalid_argument("mat_from_rows: row length");
        for (std::size_t j = 0; j < M.ncols(); ++j) M.col[j][i] = rowdata[i][j];
    }
    return M;
}

bool sign_compatible(const IntVec& u, const IntVec& v) {
    if (!same_tuple(u.index, v.index)) throw std::invalid_argument("sign_compatible: index mismatch");
    for (std::size_t i = 0; i < u.dim(); ++i)
        if (u.e[i] * v.e[i] < 0) return false;
    return true;
}

bool conformal_leq(const IntVec& u, const IntVec& v) {
    if (!same_tuple(u.index, v.index)) throw std::invalid_argument("conformal_leq: index mismatch");
    for (std::size_t i = 0; i < u.dim(); ++i) {
        if (u.e[i] * v.e[i] < 0) return false;
        if (int_abs(u.e[i]) > int_abs(v.e[i])) return false;
    }
    return true;
}

IntVec mat_apply(const IntMat& M, const IntVec& u) {
    if (!same_tuple(M.cols, u.index)) throw std::invalid_argument("mat_apply: index mismatch");
    IntVec r(M.rows);
    for (std::size_t j = 0; j < M.ncols(); ++j) {
        if (u.e[j] == 0) continue;
        for (std::size_t i = 0; i < M.nrows(); ++i) r.e[i] += M.col[j][i] * u.e[j];
    }
    return r;
}

Int inner(const IntVec& a, const IntVec& b) {
    if (!same_tuple(a.index, b.index)) throw std::invalid_argument("inner: index mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a.e[i] * b.e[i];
    return s;
}

IntVec vec_of(VarTuple idx, std::vector<long> vals) {
    IntVec v(std::move(idx));
    if (v.dim() != vals.size()) throw std::invalid_argument("vec_of: size mismatch");
    for (std::size_t i = 0; i < vals.size(); ++i) v.e[i] = vals[i];
    return v;
}

}  // namespace blockip
