#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "blockip/numeric.hpp"

namespace blockip {

// Ordered tuple of variable names, shared between vectors/matrices so that
// bricks with different namespaces compose without renaming bugs.
using VarTuple = std::shared_ptr<const std::vector<std::string>>;

VarTuple make_vars(const std::string& prefix, std::size_t n);
VarTuple make_vars(std::vector<std::string> names);
bool same_tuple(const VarTuple& a, const VarTuple& b);

struct IntVec {
    VarTuple index;
    std::vector<Int> e;

    IntVec() = default;
    explicit IntVec(VarTuple idx) : index(std::move(idx)), e(index->size(), 0) {}
    IntVec(VarTuple idx, std::vector<Int> entries);

    std::size_t dim() const { return e.size(); }
    Int& operator[](std::size_t i) { return e[i]; }
    const Int& operator[](std::size_t i) const { return e[i]; }

    bool is_zero() const;
    Int norm_inf() const;
    Int norm_1() const;

    bool operator==(const IntVec& o) const;
    IntVec operator+(const IntVec& o) const;
    IntVec operator-(const IntVec& o) const;
    IntVec operator-() const;
    IntVec operator*(const Int& s) const;
};

struct RatVec {
    VarTuple index;
    std::vector<Rat> e;

    RatVec() = default;
    explicit RatVec(VarTuple idx) : index(std::move(idx)), e(index->size(), Rat(0)) {}

    std::size_t dim() const { return e.size(); }
    Rat& operator[](std::size_t i) { return e[i]; }
    const Rat& operator[](std::size_t i) const { return e[i]; }
};

// Column-major: columns indexed by `cols`, each column a `rows`-vector.
struct IntMat {
    VarTuple cols;
    VarTuple rows;
    std::vector<std::vector<Int>> col;  // col[j][i]

    IntMat() = default;
    IntMat(VarTuple c, VarTuple r);

    std::size_t ncols() const { return col.size(); }
    std::size_t nrows() const { return rows ? rows->size() : 0; }
    Int& at(std::size_t j, std::size_t i) { return col[j][i]; }
    const Int& at(std::size_t j, std::size_t i) const { return col[j][i]; }

    IntVec column(std::size_t j) const;
    Int norm_inf() const;
    bool operator==(const IntMat& o) const;
};

// Build a matrix from row-major data (as it appears in instance files).
IntMat mat_from_rows(VarTuple cols, VarTuple rows,
                     const std::vector<std::vector<Int>>& rowdata);

bool sign_compatible(const IntVec& u, const IntVec& v);
bool conformal_leq(const IntVec& u, const IntVec& v);

IntVec mat_apply(const IntMat& M, const IntVec& u);
Int inner(const IntVec& a, const IntVec& b);

IntVec vec_of(VarTuple idx, std::vector<long> vals);

}  // namespace blockip
