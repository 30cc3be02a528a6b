#pragma once

#include <memory>
#include <vector>

#include "blockip/vec.hpp"

namespace blockip {

// The set of conformally-minimal nonzero integer kernel elements of a matrix.
struct GraverBasis {
    IntMat matrix;
    std::vector<IntVec> elements;  // lex-sorted, closed under negation
};

// Completion-based Graver basis, cached per matrix. Refuses matrices whose
// norm bound (2|t|Delta+1)^|t| exceeds the budget.
std::shared_ptr<const GraverBasis> graver_basis(const IntMat& D,
                                                const Int& norm_budget = Int(100000000));

// The default enumeration bound (2|t|(Delta+||b||_inf)+1)^|t| for base solutions.
Int base_bound(const IntMat& D, const IntVec& b);

// All conformally-minimal v >= 0 with Dv = b, via the Graver basis of [D | -b].
// Returns {0} for b = 0; empty set means Dv = b has no nonnegative solution.
std::vector<IntVec> minimal_solutions(const IntMat& D, const IntVec& b);

// w = base + sum(parts) with parts nonnegative Graver elements and the base
// within the base_bound box.
struct GraverDecomposition {
    IntVec base;
    std::vector<IntVec> parts;
};

GraverDecomposition graver_decompose(const IntMat& D, const IntVec& b, const IntVec& w);

// All irreducible v >= 0 with Dv = b and ||v||_inf <= bound: solutions from
// which no nonnegative Graver element can be subtracted. DFS with per-row
// interval propagation and domination cuts.
std::vector<IntVec> base_solutions(const IntMat& D, const IntVec& b, const Int& bound,
                                   long node_cap = 20000000);

}  // namespace blockip
