#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "blockip/mip.hpp"
#include "blockip/vec.hpp"

namespace blockip {

// sum_i C y_i = a (uniform C), D_i y_i = b_i, y_i >= 0 integer,
// minimize sum_i <c_i, y_i>.
struct NFoldBrick {
    IntMat D;   // locals x localRows
    IntVec b;   // localRows
    IntVec c;   // locals (costs)
    Int count = 1;  // multiplicity (high-multiplicity form)
};

struct NFoldProgram {
    VarTuple locals;
    VarTuple linkRows;
    VarTuple localRows;
    IntMat C;  // locals x linkRows
    IntVec a;  // linkRows
    std::vector<NFoldBrick> bricks;
};

// Does every conformally-minimal solution of Dv = b split into nonnegative
// solutions of the parts (multiplicities respected)?
bool faithful_check(const IntMat& D, const IntVec& b,
                    const std::vector<std::pair<IntVec, Int>>& parts);

// One verified split b = alpha * b0 + b' with ||b0||_inf <= xi, alpha a power
// of two, and strictly smaller ||b'||_1.
std::optional<std::tuple<IntVec, Int, IntVec>> faithful_step(const IntMat& D,
                                                             const IntVec& b,
                                                             const Int& xi);

struct FaithfulDecomposition {
    IntVec target;
    std::vector<std::pair<IntVec, Int>> parts;  // part -> multiplicity
    Int xi = 0;                                 // threshold actually used
};

// Iterate faithful_step until all parts fit in the threshold box; the
// threshold doubles from xi0 whenever a step fails.
FaithfulDecomposition faithful_decompose(const IntMat& D, const IntVec& b,
                                         const Int& xi0);

// Replace each brick's right-hand side by its faithful decomposition parts,
// merging equal (D, b, c) types into counts.
NFoldProgram expand_program(const NFoldProgram& P, const Int& xi0);

// The relaxed assignment model: integer counters zeta (base solutions per
// (D,b) type) and delta (nonnegative Graver elements per D), continuous
// distribution variables omega per cost class.
struct ModelM {
    MixedProgram prog;
    Int xi = 0;
    // bookkeeping for witness reconstruction
    struct ZetaVar {
        std::size_t var;
        std::size_t type;  // expanded type index
        IntVec base;
    };
    struct DeltaVar {
        std::size_t var;
        IntMat D;
        IntVec g;
        std::size_t best_type;  // expanded type attaining the best cost
    };
    struct OmegaVar {
        std::size_t var;
        std::size_t type;  // expanded type index (D, b, cost class)
        IntVec base;
    };
    std::vector<ZetaVar> zetas;
    std::vector<DeltaVar> deltas;
    std::vector<OmegaVar> omegas;
};

ModelM build_model(const NFoldProgram& expanded, const Int& xi);

struct NFoldOptions {
    Int xi0 = 4;
    SolveLimits mip;
};

struct NFoldResult {
    SolveStatus status = SolveStatus::INFEASIBLE;
    Rat value = 0;
    std::vector<IntVec> witness;  // per original brick occurrence
};

NFoldResult solve_nfold(const NFoldProgram& P, const NFoldOptions& opts = {});

}  // namespace blockip
