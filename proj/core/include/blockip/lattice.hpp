#pragma once

#include <optional>
#include <vector>

#include "blockip/vec.hpp"

namespace blockip {

struct LatticeWitness {
    std::vector<Int> coefficients;  // one per generator, in input order
};

// Is v in the rational span of the generators?
bool span_member(const std::vector<IntVec>& gens, const IntVec& v);

// Is v in the integer lattice generated by gens? Returns small coefficients
// when it is: the witness satisfies
//   sum |lambda_d| <= (2 + max ||d||_inf + ||v||_inf)^(2 dim).
std::optional<LatticeWitness> lattice_member(const std::vector<IntVec>& gens,
                                             const IntVec& v);

// Scaling constant C for the generator set: restrict to a maximal independent
// row set, pad with unit rows for the non-pivot columns, take |det|. Then
// C * (span cap Z^t) lies inside the generated lattice.
Int fractionality_constant(const std::vector<IntVec>& gens);

// Membership in the regular lattice {v : v == r (mod K) coordinate-wise}.
bool regular_lattice_member(const IntVec& v, const Int& K, const IntVec& r);

}  // namespace blockip
