#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "blockip/cone.hpp"
#include "blockip/vec.hpp"

namespace blockip {

// Linear-inequality replacement for integer-cone membership on one residue
// class: for v with v == r (mod B), v is in intCone(generators) iff all
// inequalities <q, v> >= a hold.
struct PolyhedralCertificate {
    std::vector<IntVec> generators;
    Int B = 0;
    IntVec r;
    std::vector<IntVec> facets;
    std::vector<Int> facet_residues;                // aligned with facets
    std::vector<std::size_t> family_L;              // realizable tight patterns (bitmasks)
    std::vector<std::size_t> family_L_down;         // downward closure of the above
    std::vector<std::pair<IntVec, Int>> inequalities;
};

// Unique p in {0..B-1} with p == <f, r> (mod B).
Int facet_residue(const IntVec& f, const IntVec& r, const Int& B);

// Is the tight pattern G (bitmask over rep.facets) realizable: some v in the
// residue class has <g,v> = p_g on G, <g,v> > p_g off G, and v in intCone?
bool family_L_member(const DualRepresentation& rep, const ConeConstants& consts,
                     const IntVec& r, std::size_t G_mask);

// Build (and cache) the full certificate for one residue class.
std::shared_ptr<const PolyhedralCertificate> construct_Q(const std::vector<IntVec>& gens,
                                                         const IntVec& r);

// Evaluate the certificate; v must lie in the residue class.
bool certified_member(const PolyhedralCertificate& cert, const IntVec& v);

}  // namespace blockip
