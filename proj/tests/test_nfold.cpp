#include <doctest.h>

#include <blockip/nfold.hpp>
#include <blockip/reductions.hpp>

using namespace blockip;

namespace {

IntMat row_matrix(std::vector<std::vector<Int>> rows, std::size_t ncols) {
    auto cols = make_vars("y", ncols);
    auto rws = make_vars("r", rows.size());
    return mat_from_rows(cols, rws, rows);
}

IntVec rhs(std::vector<long> v) { return vec_of(make_vars("r", v.size()), v); }

}  // namespace

TEST_CASE("faithful check on hand-sized splits") {
    IntMat D = row_matrix({{1, 1}}, 2);
    CHECK(faithful_check(D, rhs({10}), {{rhs({2}), 5}}));

    IntMat D2 = row_matrix({{2}}, 1);
    CHECK_FALSE(faithful_check(D2, rhs({4}), {{rhs({1}), 1}, {rhs({3}), 1}}));
    CHECK(faithful_check(D2, rhs({4}), {{rhs({4}), 1}}));
    CHECK(faithful_check(D2, rhs({4}), {{rhs({2}), 2}}));
}

TEST_CASE("faithful check validates its input") {
    IntMat D = row_matrix({{1, 1}}, 2);
    CHECK_THROWS_AS(faithful_check(D, rhs({10}), {{rhs({2}), 4}}),
                    std::invalid_argument);  // parts do not sum to b
    CHECK_THROWS_AS(faithful_check(D, rhs({10}), {{rhs({-2}), 1}, {rhs({12}), 1}}),
                    std::invalid_argument);  // not conformal to b
}

TEST_CASE("faithful step picks the largest verified reduction") {
    IntMat D = row_matrix({{1, 1}}, 2);
    auto s = faithful_step(D, rhs({10}), 2);
    REQUIRE(s.has_value());
    auto [b0, alpha, brest] = *s;
    CHECK(b0[0] == 2);
    CHECK(alpha == 4);
    CHECK(brest[0] == 2);

    IntMat D2 = row_matrix({{2}}, 1);
    auto s2 = faithful_step(D2, rhs({6}), 2);
    REQUIRE(s2.has_value());
    CHECK(std::get<0>(*s2)[0] == 2);
    CHECK(std::get<1>(*s2) == 2);
    CHECK(std::get<2>(*s2)[0] == 2);
}

TEST_CASE("faithful decomposition terminates with in-threshold parts") {
    IntMat D = row_matrix({{1, 1}}, 2);
    auto dec = faithful_decompose(D, rhs({10}), 2);
    REQUIRE(dec.parts.size() == 1);
    CHECK(dec.parts[0].first[0] == 2);
    CHECK(dec.parts[0].second == 5);
    CHECK(faithful_check(D, rhs({10}), dec.parts));
    for (const auto& [p, m] : dec.parts) CHECK(p.norm_inf() <= dec.xi);
}

TEST_CASE("subset sums through the uniform reduction") {
    auto f = solve_nfold(gen_subset_sum({3, 5, 7}, 8), {});
    CHECK(f.status == SolveStatus::OPTIMAL);
    CHECK(f.value == 0);
    CHECK(solve_nfold(gen_subset_sum({3, 5, 7}, 4), {}).status == SolveStatus::INFEASIBLE);
    CHECK(solve_nfold(gen_subset_sum({3, 5, 7}, 0), {}).status == SolveStatus::OPTIMAL);
}

TEST_CASE("costs flow through the assignment model") {
    // one brick: y1 + y2 = 2 locally, link row pins y1 = 1; costs (5, 1).
    NFoldProgram P;
    P.locals = make_vars("y", 2);
    P.linkRows = make_vars("s", 1);
    P.localRows = make_vars("r", 1);
    P.C = mat_from_rows(P.locals, P.linkRows, {{1, 0}});
    P.a = vec_of(P.linkRows, {1});
    NFoldBrick br;
    br.D = mat_from_rows(P.locals, P.localRows, {{1, 1}});
    br.b = vec_of(P.localRows, {2});
    br.c = vec_of(P.locals, {5, 1});
    P.bricks.push_back(br);
    auto res = solve_nfold(P, {});
    REQUIRE(res.status == SolveStatus::OPTIMAL);
    CHECK(res.value == 6);
    REQUIRE(res.witness.size() == 1);
    CHECK(res.witness[0][0] == 1);
    CHECK(res.witness[0][1] == 1);
}

TEST_CASE("unbounded and infeasible programs") {
    NFoldProgram P;
    P.locals = make_vars("y", 2);
    P.linkRows = make_vars("s", 1);
    P.localRows = make_vars("r", 1);
    P.C = mat_from_rows(P.locals, P.linkRows, {{0, 0}});
    P.a = vec_of(P.linkRows, {0});
    NFoldBrick br;
    br.D = mat_from_rows(P.locals, P.localRows, {{1, -1}});
    br.b = vec_of(P.localRows, {0});
    br.c = vec_of(P.locals, {-1, 0});
    P.bricks.push_back(br);
    CHECK(solve_nfold(P, {}).status == SolveStatus::UNBOUNDED);

    br.D = mat_from_rows(P.locals, P.localRows, {{2, 2}});
    br.b = vec_of(P.localRows, {3});
    br.c = vec_of(P.locals, {0, 0});
    P.bricks = {br};
    CHECK(solve_nfold(P, {}).status == SolveStatus::INFEASIBLE);
}

TEST_CASE("high-multiplicity bricks and witness order") {
    NFoldProgram P;
    P.locals = make_vars("y", 1);
    P.linkRows = make_vars("s", 1);
    P.localRows = make_vars("r", 1);
    P.C = mat_from_rows(P.locals, P.linkRows, {{1}});
    P.a = vec_of(P.linkRows, {6});
    NFoldBrick br;
    br.D = mat_from_rows(P.locals, P.localRows, {{1}});
    br.b = vec_of(P.localRows, {2});
    br.c = vec_of(P.locals, {1});
    br.count = 3;
    P.bricks.push_back(br);
    auto res = solve_nfold(P, {});
    REQUIRE(res.status == SolveStatus::OPTIMAL);
    CHECK(res.value == 6);
    REQUIRE(res.witness.size() == 3);
    for (const IntVec& y : res.witness) CHECK(y[0] == 2);
}

TEST_CASE("solver matches hand optimum on a two-type instance") {
    // two bricks share D = [1 1] but differ in cost; the link row counts y1.
    NFoldProgram P;
    P.locals = make_vars("y", 2);
    P.linkRows = make_vars("s", 1);
    P.localRows = make_vars("r", 1);
    P.C = mat_from_rows(P.locals, P.linkRows, {{1, 0}});
    P.a = vec_of(P.linkRows, {1});
    NFoldBrick b1;
    b1.D = mat_from_rows(P.locals, P.localRows, {{1, 1}});
    b1.b = vec_of(P.localRows, {1});
    b1.c = vec_of(P.locals, {3, 0});
    NFoldBrick b2 = b1;
    b2.c = vec_of(P.locals, {1, 4});
    P.bricks = {b1, b2};
    // optimum: brick 2 takes y1 = 1 (cost 1), brick 1 takes y2 = 1 (cost 0).
    auto res = solve_nfold(P, {});
    REQUIRE(res.status == SolveStatus::OPTIMAL);
    CHECK(res.value == 1);
    REQUIRE(res.witness.size() == 2);
    Rat total = 0;
    IntVec link(P.linkRows);
    for (std::size_t i = 0; i < 2; ++i) {
        total += Rat(inner(P.bricks[i].c, res.witness[i]));
        link = link + mat_apply(P.C, res.witness[i]);
        CHECK(mat_apply(P.bricks[i].D, res.witness[i]) == P.bricks[i].b);
    }
    CHECK(link == P.a);
    CHECK(total == res.value);
}
