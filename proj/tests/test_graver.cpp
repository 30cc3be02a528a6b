#include <doctest.h>

#include <blockip/graver.hpp>

using namespace blockip;

namespace {

IntMat row_matrix(std::vector<std::vector<Int>> rows, std::size_t ncols) {
    auto cols = make_vars("v", ncols);
    auto rws = make_vars("r", rows.size());
    return mat_from_rows(cols, rws, rows);
}

bool contains(const std::vector<IntVec>& set, std::vector<long> v) {
    for (const IntVec& g : set) {
        bool same = g.dim() == v.size();
        for (std::size_t i = 0; same && i < v.size(); ++i)
            if (g[i] != v[i]) same = false;
        if (same) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("graver basis of small one-row matrices") {
    auto g1 = graver_basis(row_matrix({{1, -1}}, 2));
    REQUIRE(g1->elements.size() == 2);
    CHECK(contains(g1->elements, {1, 1}));
    CHECK(contains(g1->elements, {-1, -1}));

    auto g2 = graver_basis(row_matrix({{2, -3}}, 2));
    REQUIRE(g2->elements.size() == 2);
    CHECK(contains(g2->elements, {3, 2}));
    CHECK(contains(g2->elements, {-3, -2}));

    auto g3 = graver_basis(row_matrix({{2}}, 1));
    CHECK(g3->elements.empty());
}

TEST_CASE("graver elements are conformally minimal kernel vectors") {
    IntMat D = row_matrix({{1, 2, -3}}, 3);
    auto gb = graver_basis(D);
    for (const IntVec& g : gb->elements) {
        CHECK_FALSE(g.is_zero());
        CHECK(mat_apply(D, g).is_zero());
        for (const IntVec& h : gb->elements) {
            bool strictly_below = !(h == g) && sign_compatible(h, g) && conformal_leq(h, g);
            CHECK_FALSE(strictly_below);
        }
    }
    CHECK(contains(gb->elements, {1, 1, 1}));
    CHECK(contains(gb->elements, {3, 0, 1}));
    CHECK(contains(gb->elements, {0, 3, 2}));
}

TEST_CASE("minimal nonnegative solutions") {
    auto m1 = minimal_solutions(row_matrix({{1, 1}}, 2), vec_of(make_vars("r", 1), {2}));
    REQUIRE(m1.size() == 3);
    CHECK(contains(m1, {2, 0}));
    CHECK(contains(m1, {1, 1}));
    CHECK(contains(m1, {0, 2}));

    auto m2 = minimal_solutions(row_matrix({{2}}, 1), vec_of(make_vars("r", 1), {3}));
    CHECK(m2.empty());

    auto m3 = minimal_solutions(row_matrix({{2}}, 1), vec_of(make_vars("r", 1), {0}));
    REQUIRE(m3.size() == 1);
    CHECK(m3[0].is_zero());
}

TEST_CASE("base solutions and the enumeration bound") {
    IntMat D = row_matrix({{3, 5}}, 2);
    IntVec b = vec_of(make_vars("r", 1), {8});
    CHECK(base_bound(D, b) == 27);
    auto bases = base_solutions(D, b, base_bound(D, b));
    REQUIRE(bases.size() == 1);
    CHECK(bases[0][0] == 1);
    CHECK(bases[0][1] == 1);
}

TEST_CASE("base solutions exclude those reducible by nonnegative graver elements") {
    // kernel of [1 -1] contains the nonnegative direction (1,1)
    IntMat D = row_matrix({{1, -1}}, 2);
    IntVec b = vec_of(make_vars("r", 1), {2});
    auto bases = base_solutions(D, b, Int(100));
    REQUIRE(bases.size() == 1);
    CHECK(bases[0][0] == 2);
    CHECK(bases[0][1] == 0);
}

TEST_CASE("graver decomposition peels nonnegative elements") {
    IntMat D = row_matrix({{1, -1}}, 2);
    IntVec b = vec_of(make_vars("r", 1), {2});
    IntVec w = vec_of(make_vars("v", 2), {5, 3});
    auto dec = graver_decompose(D, b, w);
    CHECK(dec.parts.size() == 3);
    IntVec sum = dec.base;
    for (const IntVec& p : dec.parts) sum = sum + p;
    CHECK(sum == w);
    CHECK(dec.base.norm_inf() <= base_bound(D, b));
}
