#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "blockip/nfold.hpp"
#include "blockip/twostage.hpp"

namespace blockip {

// Four-block layout: globals x and per-group locals y_t with
//   Bhat x + sum_t C y_t = a,   A x + D_t y_t = b_t,   x, y_t >= 0 integer.
struct FourBlockBrick {
    IntMat D;  // locals x localRows
    IntVec b;  // localRows
};

struct FourBlockProgram {
    VarTuple globals;
    VarTuple locals;
    VarTuple linkRows;
    VarTuple localRows;
    IntMat Bhat;  // globals x linkRows
    IntMat C;     // locals x linkRows (uniform)
    IntMat A;     // globals x localRows (uniform)
    IntVec a;     // linkRows
    std::vector<FourBlockBrick> bricks;
};

struct CnfClause {
    int lit[3];  // signed 1-based variable indices
};

struct CnfFormula {
    int nvars = 0;
    std::vector<CnfClause> clauses;
};

// Prime-gadget encoding: one global variable, one brick per clause; the
// program is feasible iff the formula is satisfiable.
TwoStageProgram gen_3sat(const CnfFormula& phi);

// Bricks y_i + y_i' = 1 and a_i y_i = z_i, uniform link row sum z_i = target.
NFoldProgram gen_subset_sum(const std::vector<Int>& a, const Int& target,
                            const std::vector<Int>& costs = {});

// Rewrite all A / Bhat / C entries into {-1,0,1} by introducing copy
// variables, preserving feasibility; blocks padded square with zeros.
FourBlockProgram shrink_4block(const FourBlockProgram& P);

// Deterministic-by-seed random instances with known structure.
struct RandomTwoStage {
    TwoStageProgram program;
    std::optional<TwoStageWitness> planted;  // absent for perturbed instances
};

struct RandomNFold {
    NFoldProgram program;
    std::vector<IntVec> planted;  // feasible per-brick assignment
};

struct TwoStageSizes {
    std::size_t globals = 1, locals = 2, rows = 1, bricks = 3;
    long delta = 3;          // max |D| entry
    Int amax = 1000000000;   // max |A| entry
    bool perturb = false;    // knock one b entry off the planted instance
};

struct NFoldSizes {
    std::size_t locals = 3, linkRows = 2, localRows = 2, bricks = 5;
    long delta = 2;      // max |D| entry
    Int cmax = 1000000;  // max |C| entry
};

RandomTwoStage gen_random_twostage(std::uint64_t seed, const TwoStageSizes& sz);
RandomNFold gen_random_nfold(std::uint64_t seed, const NFoldSizes& sz);

}  // namespace blockip
