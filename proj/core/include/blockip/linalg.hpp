#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "blockip/numeric.hpp"

namespace blockip::linalg {

// Column-major matrix: a list of columns, each of length m.
using ColMat = std::vector<std::vector<Int>>;

// Column-style Hermite reduction: H = D * U with U unimodular, H in column
// echelon form (pivot columns first, then zero columns).
struct ColHNF {
    ColMat H;
    ColMat U;
    std::vector<std::size_t> pivot_row;  // pivot_row[k] for column k < rank
    std::size_t rank = 0;
};

ColHNF col_hnf(const ColMat& D, std::size_t m);

// Any integer solution of D x = v, or nullopt.
std::optional<std::vector<Int>> solve_integer(const ColMat& D, std::size_t m,
                                              const std::vector<Int>& v);

// Basis of the integer kernel lattice {x : D x = 0}.
ColMat kernel_basis(const ColMat& D, std::size_t m);

// Any rational solution of D x = v, or nullopt.
std::optional<std::vector<Rat>> solve_rational(const ColMat& D, std::size_t m,
                                               const std::vector<Int>& v);

// Determinant of a square row-major integer matrix (fraction-free Bareiss).
Int det_bareiss(std::vector<std::vector<Int>> M);

}  // namespace blockip::linalg
