#include <doctest.h>

#include <blockip/certificate.hpp>

using namespace blockip;

TEST_CASE("facet residue normalizes into 0..B-1") {
    auto x2 = make_vars("x", 2);
    CHECK(facet_residue(vec_of(x2, {2, -1}), vec_of(x2, {1, 3}), 10) == 9);
    CHECK(facet_residue(vec_of(x2, {1, 0}), vec_of(x2, {7, 0}), 5) == 2);
}

TEST_CASE("tight pattern family for a one-dimensional cone") {
    auto x1 = make_vars("x", 1);
    std::vector<IntVec> gens = {vec_of(x1, {3}), vec_of(x1, {5})};
    auto rep = weyl_dual(gens);
    auto consts = cone_constants(rep);
    IntVec r = vec_of(x1, {1});
    REQUIRE(rep.facets.size() == 1);
    CHECK(family_L_member(rep, consts, r, 0));        // empty pattern realizable
    CHECK_FALSE(family_L_member(rep, consts, r, 1));  // tight on the facet is not
}

TEST_CASE("certificate for the numerical semigroup of 3 and 5") {
    auto x1 = make_vars("x", 1);
    std::vector<IntVec> gens = {vec_of(x1, {3}), vec_of(x1, {5})};
    IntVec r = vec_of(x1, {1});
    auto cert = construct_Q(gens, r);
    CHECK(cert->B == 17400);
    REQUIRE(cert->facets.size() == 1);
    CHECK(cert->facet_residues[0] == 1);
    // 1 is not a sum of 3s and 5s, but every member of the class above B is.
    CHECK_FALSE(certified_member(*cert, vec_of(x1, {1})));
    CHECK(certified_member(*cert, vec_of(x1, {Int(cert->B + 1).get_si()})));
}

TEST_CASE("certificate agrees with direct reasoning on small members") {
    auto x1 = make_vars("x", 1);
    std::vector<IntVec> gens = {vec_of(x1, {3}), vec_of(x1, {5})};
    // class of 8 mod B: 8 = 3 + 5 is a member
    IntVec r = vec_of(x1, {8});
    auto cert = construct_Q(gens, r);
    CHECK(certified_member(*cert, vec_of(x1, {8})));
    CHECK_FALSE(certified_member(*cert, vec_of(x1, {8 - 17400})));
}

TEST_CASE("certificate rejects points off the residue class") {
    auto x1 = make_vars("x", 1);
    std::vector<IntVec> gens = {vec_of(x1, {3}), vec_of(x1, {5})};
    auto cert = construct_Q(gens, vec_of(x1, {1}));
    CHECK_THROWS_AS(certified_member(*cert, vec_of(x1, {2})), std::invalid_argument);
}

TEST_CASE("certificate with no generators accepts only zero") {
    auto x1 = make_vars("x", 1);
    auto cert = construct_Q({}, vec_of(x1, {0}));
    CHECK(cert->B == 2);
    CHECK(certified_member(*cert, vec_of(x1, {0})));
    CHECK_FALSE(certified_member(*cert, vec_of(x1, {2})));
}
