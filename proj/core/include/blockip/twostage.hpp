#pragma once

#include <optional>
#include <vector>

#include "blockip/mip.hpp"
#include "blockip/vec.hpp"

namespace blockip {

// A_i u + D_i v_i = b_i, u >= 0, v_i >= 0, all integer; u shared, v_i local.
struct TwoStageBrick {
    IntMat A;  // globals x rows
    IntMat D;  // locals x rows
    IntVec b;  // rows
};

struct TwoStageProgram {
    VarTuple globals;    // shared first-stage variables
    VarTuple locals;     // per-brick second-stage variables
    VarTuple rowNames;   // constraint rows of one brick
    std::vector<TwoStageBrick> bricks;
};

struct TwoStageWitness {
    IntVec u;
    std::vector<IntVec> v;  // per brick, over the original local tuple
};

struct TwoStageVerdict {
    SolveStatus status = SolveStatus::INFEASIBLE;
    std::optional<TwoStageWitness> witness;
};

// Duplicate local columns removed per brick; bricks grouped by canonical
// (column-sorted) D matrix.
struct NormalizedTwoStage {
    TwoStageProgram program;
    std::vector<std::vector<std::size_t>> kept_cols;  // reduced col -> original col
    std::vector<std::size_t> type_of;                 // brick -> type index
    std::vector<IntMat> types;                        // canonical matrix per type
};

NormalizedTwoStage normalize_twostage(const TwoStageProgram& P);

struct TwoStageOptions {
    Int residue_budget = 200000;  // max residues scanned
    SolveLimits mip;
};

// Residue-and-certificate engine (modulus B from the cone constants of each
// D-type; one small ILP per residue class of the global variables).
TwoStageVerdict solve_twostage_residue(const TwoStageProgram& P,
                                       const TwoStageOptions& opts = {});

// Direct engine: certified-period residue scan for a single global variable,
// flat MIP otherwise.
TwoStageVerdict solve_twostage_direct(const TwoStageProgram& P,
                                      const TwoStageOptions& opts = {});

}  // namespace blockip
