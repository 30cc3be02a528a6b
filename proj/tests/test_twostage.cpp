#include <doctest.h>

#include <blockip/reductions.hpp>
#include <blockip/twostage.hpp>

using namespace blockip;

namespace {

TwoStageProgram one_brick(long a, long d, long b) {
    TwoStageProgram P;
    P.globals = make_vars("u", 1);
    P.locals = make_vars("v", 1);
    P.rowNames = make_vars("r", 1);
    TwoStageBrick br;
    br.A = mat_from_rows(P.globals, P.rowNames, {{a}});
    br.D = mat_from_rows(P.locals, P.rowNames, {{d}});
    br.b = vec_of(P.rowNames, {b});
    P.bricks.push_back(br);
    return P;
}

void check_witness(const TwoStageProgram& P, const TwoStageVerdict& V) {
    REQUIRE(V.witness.has_value());
    const TwoStageWitness& W = *V.witness;
    for (std::size_t j = 0; j < W.u.dim(); ++j) CHECK(W.u[j] >= 0);
    REQUIRE(W.v.size() == P.bricks.size());
    for (std::size_t i = 0; i < P.bricks.size(); ++i) {
        for (std::size_t j = 0; j < W.v[i].dim(); ++j) CHECK(W.v[i][j] >= 0);
        IntVec lhs = mat_apply(P.bricks[i].A, W.u) + mat_apply(P.bricks[i].D, W.v[i]);
        CHECK(lhs == P.bricks[i].b);
    }
}

}  // namespace

TEST_CASE("trivial single-brick programs, both engines") {
    for (auto solve : {solve_twostage_residue, solve_twostage_direct}) {
        auto v1 = solve(one_brick(1, 2, 3), {});
        CHECK(v1.status == SolveStatus::FEASIBLE);
        check_witness(one_brick(1, 2, 3), v1);

        auto v2 = solve(one_brick(2, 2, 1), {});
        CHECK(v2.status == SolveStatus::INFEASIBLE);

        auto v3 = solve(one_brick(1000000000, 1, 1000000000), {});
        CHECK(v3.status == SolveStatus::FEASIBLE);
        check_witness(one_brick(1000000000, 1, 1000000000), v3);
    }
}

TEST_CASE("a program with no bricks is vacuously feasible") {
    TwoStageProgram P;
    P.globals = make_vars("u", 1);
    P.locals = make_vars("v", 1);
    P.rowNames = make_vars("r", 1);
    CHECK(solve_twostage_residue(P, {}).status == SolveStatus::FEASIBLE);
    CHECK(solve_twostage_direct(P, {}).status == SolveStatus::FEASIBLE);
}

TEST_CASE("normalization dedups columns and groups brick types") {
    TwoStageProgram P;
    P.globals = make_vars("u", 1);
    P.locals = make_vars("v", 3);
    P.rowNames = make_vars("r", 1);
    TwoStageBrick b1;
    b1.A = mat_from_rows(P.globals, P.rowNames, {{1}});
    b1.D = mat_from_rows(P.locals, P.rowNames, {{2, 2, 5}});  // duplicate column
    b1.b = vec_of(P.rowNames, {4});
    TwoStageBrick b2 = b1;
    b2.D = mat_from_rows(P.locals, P.rowNames, {{5, 2, 2}});  // same type, permuted
    P.bricks = {b1, b2};
    auto N = normalize_twostage(P);
    CHECK(N.kept_cols[0].size() == 2);
    CHECK(N.kept_cols[1].size() == 2);
    CHECK(N.types.size() == 1);
    CHECK(N.type_of[0] == N.type_of[1]);
}

TEST_CASE("global variable shared across bricks") {
    // u + 2 v1 = 4 wants u even; 3u + 2 v2 = 5 wants u odd: infeasible.
    TwoStageProgram P;
    P.globals = make_vars("u", 1);
    P.locals = make_vars("v", 1);
    P.rowNames = make_vars("r", 1);
    TwoStageBrick b1;
    b1.A = mat_from_rows(P.globals, P.rowNames, {{1}});
    b1.D = mat_from_rows(P.locals, P.rowNames, {{2}});
    b1.b = vec_of(P.rowNames, {4});
    TwoStageBrick b2 = b1;
    b2.A = mat_from_rows(P.globals, P.rowNames, {{3}});
    b2.b = vec_of(P.rowNames, {5});
    P.bricks = {b1, b2};
    CHECK(solve_twostage_residue(P, {}).status == SolveStatus::INFEASIBLE);
    CHECK(solve_twostage_direct(P, {}).status == SolveStatus::INFEASIBLE);

    b2.b = vec_of(P.rowNames, {8});  // u = 2, v1 = 1, v2 = 1
    P.bricks = {b1, b2};
    auto vr = solve_twostage_residue(P, {});
    auto vd = solve_twostage_direct(P, {});
    CHECK(vr.status == SolveStatus::FEASIBLE);
    CHECK(vd.status == SolveStatus::FEASIBLE);
    check_witness(P, vr);
    check_witness(P, vd);
}

TEST_CASE("engines agree on random instances") {
    for (unsigned long long seed = 1; seed <= 8; ++seed) {
        RandomTwoStage R = gen_random_twostage(seed, {});
        auto vr = solve_twostage_residue(R.program, {});
        auto vd = solve_twostage_direct(R.program, {});
        if (vr.status == SolveStatus::RESOURCE_LIMIT ||
            vd.status == SolveStatus::RESOURCE_LIMIT)
            continue;
        CHECK(vr.status == vd.status);
        if (vr.status == SolveStatus::FEASIBLE) {
            check_witness(R.program, vr);
            check_witness(R.program, vd);
        }
    }
}
