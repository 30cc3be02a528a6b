#pragma once

#include <vector>

#include "blockip/vec.hpp"

namespace blockip {

// Generators of a polyhedral cone together with a facet description:
// cone(generators) = {v : <f, v> >= 0 for all f in facets}.
struct DualRepresentation {
    std::vector<IntVec> generators;
    std::vector<IntVec> facets;  // primitive, deduplicated, lex-sorted
};

struct ConeConstants {
    Int L = 0;     // deep-threshold auxiliary
    Int M = 0;     // deep threshold
    Int Mhat = 0;  // M plus the facet-times-generator slack margin
    Int K = 0;     // lcm of fractionality constants over facet subsets
    Int B = 0;     // modulus, 2 * Bseq.back()
    std::vector<Int> Bseq;  // B_0 .. B_{|facets|}
};

// Facet description of cone(gens) via exact Fourier-Motzkin elimination,
// with LP-based removal of redundant facets.
DualRepresentation weyl_dual(const std::vector<IntVec>& gens);

// Generators orthogonal to every functional in G.
std::vector<IntVec> orthogonal_subset(const std::vector<IntVec>& gens,
                                      const std::vector<IntVec>& G);

// (L, M): points of the cone with all facet products >= M are "deep".
std::pair<Int, Int> deep_threshold(const DualRepresentation& rep);

// The full constant chain K, Mhat, B_0..B_{|F|}, B = 2*B_{|F|}.
// Refuses facet sets larger than the subset-enumeration cap.
ConeConstants cone_constants(const DualRepresentation& rep, std::size_t facet_cap = 16);

// Exact LP membership v in cone(gens).
bool cone_member(const std::vector<IntVec>& gens, const RatVec& v);
bool cone_member(const std::vector<IntVec>& gens, const IntVec& v);

}  // namespace blockip
