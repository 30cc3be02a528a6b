#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blockip/numeric.hpp"

namespace blockip {

enum class SolveStatus { OPTIMAL, FEASIBLE, INFEASIBLE, UNBOUNDED, RESOURCE_LIMIT };

enum class Rel { Eq, Le, Ge };

struct LinTerm {
    std::size_t var;
    Int coef;
};

struct LinConstraint {
    std::vector<LinTerm> terms;
    Rel rel = Rel::Eq;
    Int rhs = 0;
};

// Exact LP/ILP/MIP model: integer coefficients, optional bounds, minimize.
struct MixedProgram {
    std::vector<std::string> names;
    std::vector<std::optional<Int>> lo, hi;
    std::vector<Int> objective;
    std::vector<bool> integer;
    std::vector<LinConstraint> cons;

    std::size_t nvars() const { return names.size(); }
    std::size_t add_var(std::string name, std::optional<Int> lb, std::optional<Int> ub,
                        Int obj, bool integral);
    void add_constraint(std::vector<LinTerm> terms, Rel rel, Int rhs);
};

struct SolveOutcome {
    SolveStatus status = SolveStatus::INFEASIBLE;
    std::vector<Rat> assignment;  // aligned with program variables
    Rat objective = 0;
    Rat dual_objective = 0;  // standard-form dual optimum (lp_solve only)
    bool dual_checked = false;
    long nodes = 0;
};

struct SolveLimits {
    long node_budget = 200000;
};

// Exact two-phase primal simplex (Bland's rule); optimum at a basic vertex.
SolveOutcome lp_solve(const MixedProgram& p);

// Exact branch-and-bound on the integer variables, with lattice-based node
// pruning and a Cramer-type solution-size box as branching cutoff.
SolveOutcome mip_solve(const MixedProgram& p, const SolveLimits& lim = {});

// Fix the given integer variables, drop integrality, re-solve the LP; the
// vertex must be integral (total unimodularity is the caller's premise).
std::vector<Rat> tu_round(const MixedProgram& p,
                          const std::vector<std::pair<std::size_t, Int>>& fixed);

}  // namespace blockip
