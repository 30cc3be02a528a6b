#pragma once

#include <vector>

#include "blockip/nfold.hpp"
#include "blockip/reductions.hpp"
#include "blockip/twostage.hpp"
#include "blockip/vec.hpp"

namespace blockip::oracle {

// Per-variable inclusive bounds for exhaustive searches.
struct SearchBox {
    std::vector<std::pair<Int, Int>> range;
};

inline SearchBox uniform_box(std::size_t n, const Int& lo, const Int& hi) {
    return SearchBox{std::vector<std::pair<Int, Int>>(n, {lo, hi})};
}

// Reachable-set search over nonnegative generator combinations, restricted to
// the given box around the origin; reusable across queries for one cone.
class IntConeOracle {
  public:
    IntConeOracle(std::vector<IntVec> gens, SearchBox box, long node_cap = 200000000);
    bool contains(const IntVec& v) const;

  private:
    std::vector<IntVec> gens_;
    SearchBox box_;
    std::vector<Int> width_;
    std::vector<bool> reached_;  // dense bitmap over the box
    std::size_t offset(const std::vector<Int>& point) const;
    bool in_box(const std::vector<Int>& point) const;
};

// One-shot membership query (builds a throwaway reachable set).
bool intcone_member_bf(const std::vector<IntVec>& gens, const IntVec& v,
                       const SearchBox& box);

// All conformally-minimal nonzero kernel vectors of D inside the box.
std::vector<IntVec> graver_bf(const IntMat& D, const SearchBox& box);

// Exhaustive feasibility within the box (all variables of every brick plus
// the globals are box-bounded).
struct BfVerdict {
    bool feasible = false;
    IntVec u;
    std::vector<IntVec> v;
};

BfVerdict solve_bf(const TwoStageProgram& P, const SearchBox& global_box,
                   const SearchBox& local_box, long node_cap = 100000000);

// Exhaustive optimum within the box; feasible=false when nothing fits.
struct BfOptimum {
    bool feasible = false;
    Int value = 0;
    std::vector<IntVec> witness;
};

BfOptimum solve_bf(const NFoldProgram& P, const SearchBox& local_box,
                   long node_cap = 100000000);

BfVerdict solve_bf(const FourBlockProgram& P, const SearchBox& global_box,
                   const SearchBox& local_box, long node_cap = 100000000);

}  // namespace blockip::oracle
