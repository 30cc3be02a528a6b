#include <doctest.h>

#include <blockip/vec.hpp>

using namespace blockip;

TEST_CASE("conformal order compares sign and magnitude per coordinate") {
    auto x2 = make_vars("x", 2);
    CHECK(conformal_leq(vec_of(x2, {1, -2}), vec_of(x2, {3, -2})));
    CHECK_FALSE(conformal_leq(vec_of(x2, {3, -2}), vec_of(x2, {1, -2})));
    CHECK_FALSE(conformal_leq(vec_of(x2, {1, 2}), vec_of(x2, {3, -2})));
    CHECK(conformal_leq(vec_of(x2, {0, 0}), vec_of(x2, {3, -2})));
    CHECK(conformal_leq(vec_of(x2, {3, -2}), vec_of(x2, {3, -2})));
}

TEST_CASE("sign compatibility ignores magnitudes") {
    auto x2 = make_vars("x", 2);
    CHECK(sign_compatible(vec_of(x2, {5, -1}), vec_of(x2, {1, -7})));
    CHECK(sign_compatible(vec_of(x2, {0, -1}), vec_of(x2, {4, -7})));
    CHECK_FALSE(sign_compatible(vec_of(x2, {1, 1}), vec_of(x2, {1, -1})));
}

TEST_CASE("vector norms and arithmetic") {
    auto x3 = make_vars("x", 3);
    IntVec v = vec_of(x3, {2, -5, 1});
    CHECK(v.norm_inf() == 5);
    CHECK(v.norm_1() == 8);
    CHECK((v - v).is_zero());
    CHECK((v + v).norm_1() == 16);
}

TEST_CASE("matrix application and inner product") {
    auto cols = make_vars("y", 2);
    auto rows = make_vars("r", 2);
    IntMat M = mat_from_rows(cols, rows, {{1, 2}, {3, 4}});
    CHECK(M.at(0, 0) == 1);
    CHECK(M.at(1, 0) == 2);
    CHECK(M.at(0, 1) == 3);
    CHECK(M.norm_inf() == 4);
    IntVec u = vec_of(cols, {1, -1});
    IntVec w = mat_apply(M, u);
    CHECK(w[0] == -1);
    CHECK(w[1] == -1);
    CHECK(inner(u, vec_of(cols, {5, 3})) == 2);
    CHECK(M.column(1)[1] == 4);
}
