#include <doctest.h>

#include <blockip/mip.hpp>

using namespace blockip;

TEST_CASE("integer rounding on a single inequality") {
    MixedProgram p;
    std::size_t x = p.add_var("x", Int(0), std::nullopt, Int(1), true);
    p.add_constraint({{x, 2}}, Rel::Ge, 3);
    auto out = mip_solve(p, {});
    REQUIRE(out.status == SolveStatus::OPTIMAL);
    CHECK(out.objective == 2);
    CHECK(out.assignment[x] == 2);
}

TEST_CASE("fixed variables steer the optimum") {
    MixedProgram p;
    std::size_t y1 = p.add_var("y1", Int(1), Int(1), Int(5), true);
    std::size_t y2 = p.add_var("y2", Int(0), std::nullopt, Int(1), true);
    p.add_constraint({{y1, 1}, {y2, 1}}, Rel::Eq, 2);
    auto out = mip_solve(p, {});
    REQUIRE(out.status == SolveStatus::OPTIMAL);
    CHECK(out.objective == 6);
}

TEST_CASE("unbounded improvement is reported") {
    MixedProgram p;
    std::size_t x = p.add_var("x", Int(0), std::nullopt, Int(-1), true);
    std::size_t y = p.add_var("y", Int(0), std::nullopt, Int(0), true);
    p.add_constraint({{x, 1}, {y, -1}}, Rel::Eq, 0);
    auto out = mip_solve(p, {});
    CHECK(out.status == SolveStatus::UNBOUNDED);
}

TEST_CASE("infeasible systems") {
    MixedProgram p;
    std::size_t x = p.add_var("x", Int(0), Int(10), Int(0), true);
    p.add_constraint({{x, 2}}, Rel::Eq, 5);  // parity obstruction
    CHECK(mip_solve(p, {}).status == SolveStatus::INFEASIBLE);

    MixedProgram q;
    std::size_t z = q.add_var("z", Int(0), std::nullopt, Int(0), true);
    q.add_constraint({{z, 1}}, Rel::Le, -1);
    CHECK(mip_solve(q, {}).status == SolveStatus::INFEASIBLE);
}

TEST_CASE("lp handles variables fixed by equal bounds") {
    MixedProgram p;
    std::size_t a = p.add_var("a", Int(1), Int(1), Int(0), false);
    std::size_t b = p.add_var("b", Int(0), std::nullopt, Int(1), false);
    p.add_constraint({{a, 1}, {b, -1}}, Rel::Eq, 0);
    auto out = lp_solve(p);
    REQUIRE(out.status == SolveStatus::OPTIMAL);
    CHECK(out.objective == 1);
    CHECK(out.assignment[b] == 1);
}

TEST_CASE("lp detects infeasible bounds and rows") {
    MixedProgram p;
    CHECK_THROWS_AS(p.add_var("x", Int(3), Int(2), Int(0), false), std::invalid_argument);

    MixedProgram q;
    std::size_t x = q.add_var("x", Int(0), std::nullopt, Int(0), false);
    q.add_constraint({{x, 1}}, Rel::Eq, -2);
    CHECK(lp_solve(q).status == SolveStatus::INFEASIBLE);
}

TEST_CASE("rounding a network-shaped program keeps the objective") {
    // Assignment-style constraints are totally unimodular; after fixing the
    // integer design variables the continuous part has an integral optimum.
    MixedProgram p;
    std::size_t z = p.add_var("z", Int(0), Int(5), Int(0), true);
    std::size_t w1 = p.add_var("w1", Int(0), std::nullopt, Int(2), false);
    std::size_t w2 = p.add_var("w2", Int(0), std::nullopt, Int(3), false);
    p.add_constraint({{w1, 1}, {w2, 1}, {z, -1}}, Rel::Eq, 0);
    p.add_constraint({{z, 1}}, Rel::Ge, 3);
    auto out = mip_solve(p, {});
    REQUIRE(out.status == SolveStatus::OPTIMAL);
    REQUIRE(rat_is_int(out.assignment[z]));
    auto rounded = tu_round(p, {{z, Int(out.assignment[z].get_num())}});
    Rat value = 0;
    for (std::size_t j = 0; j < p.nvars(); ++j)
        value += Rat(p.objective[j]) * rounded[j];
    CHECK(value == out.objective);
    for (const Rat& v : rounded) CHECK(rat_is_int(v));
}
