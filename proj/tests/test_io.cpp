#include <doctest.h>

#include <blockip/instance_io.hpp>
#include <blockip/reductions.hpp>

using namespace blockip;

TEST_CASE("two-stage round trip through the text format") {
    std::string text =
        "TWOSTAGE\n"
        "GLOBALS 1\n"
        "LOCALS 2\n"
        "LOCALROWS 1\n"
        "BRICK\n"
        "A\n1\n"
        "D\n2 -3\n"
        "b\n5\n"
        "ENDBRICK\n"
        "END\n";
    auto inst = parse_instance(text);
    auto* P = std::get_if<TwoStageProgram>(&inst);
    REQUIRE(P != nullptr);
    REQUIRE(P->bricks.size() == 1);
    CHECK(P->bricks[0].D.at(1, 0) == -3);
    CHECK(P->bricks[0].b[0] == 5);
    // the canonical emitter reproduces the text, so round trips are stable
    CHECK(format_instance(inst) == text);
    CHECK(format_instance(parse_instance(format_instance(inst))) == text);
}

TEST_CASE("comments, blank lines, and whitespace are ignored") {
    std::string text =
        "# comment\n"
        "TWOSTAGE\n\n"
        "  GLOBALS 1   # trailing comment\n"
        "LOCALS 1\n"
        "LOCALROWS 1\n"
        "BRICK\n"
        "A\n1\nD\n1\nb\n2\n"
        "ENDBRICK\n"
        "END\n";
    auto inst = parse_instance(text);
    CHECK(std::get<TwoStageProgram>(inst).bricks.size() == 1);
}

TEST_CASE("brick multiplicity replicates two-stage bricks") {
    std::string text =
        "TWOSTAGE\nGLOBALS 1\nLOCALS 1\nLOCALROWS 1\n"
        "BRICK x5\nA\n1\nD\n1\nb\n2\nENDBRICK\nEND\n";
    auto P = std::get<TwoStageProgram>(parse_instance(text));
    CHECK(P.bricks.size() == 5);
}

TEST_CASE("n-fold keeps brick counts symbolic and optional costs") {
    std::string text =
        "NFOLD\nLOCALS 2\nLINKROWS 1\nLOCALROWS 1\n"
        "C\n1 0\n"
        "a\n7\n"
        "BRICK x1000000000000\nD\n1 1\nb\n2\nENDBRICK\n"
        "BRICK\nD\n1 -1\nb\n0\nc\n3 4\nENDBRICK\n"
        "END\n";
    auto P = std::get<NFoldProgram>(parse_instance(text));
    REQUIRE(P.bricks.size() == 2);
    CHECK(P.bricks[0].count == Int("1000000000000"));
    CHECK(P.bricks[0].c.is_zero());
    CHECK(P.bricks[1].count == 1);
    CHECK(P.bricks[1].c[1] == 4);
    CHECK(format_instance(parse_instance(format_instance(P))) == format_instance(P));
}

TEST_CASE("four-block round trip") {
    FourBlockProgram P;
    P.globals = make_vars("x", 1);
    P.locals = make_vars("y", 2);
    P.linkRows = make_vars("s", 1);
    P.localRows = make_vars("r", 1);
    P.Bhat = mat_from_rows(P.globals, P.linkRows, {{1}});
    P.C = mat_from_rows(P.locals, P.linkRows, {{0, 1}});
    P.A = mat_from_rows(P.globals, P.localRows, {{-1}});
    P.a = vec_of(P.linkRows, {3});
    P.bricks.resize(1);
    P.bricks[0].D = mat_from_rows(P.locals, P.localRows, {{1, 2}});
    P.bricks[0].b = vec_of(P.localRows, {4});
    auto inst = parse_instance(format_instance(P));
    auto& Q = std::get<FourBlockProgram>(inst);
    CHECK(Q.A.at(0, 0) == -1);
    CHECK(Q.bricks[0].D.at(1, 0) == 2);
    CHECK(format_instance(inst) == format_instance(P));
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_instance("TWOSTAGE\nGLOBALS 1\nLOCALS x\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }

    try {
        parse_instance("BOGUS\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
    }

    // dimension mismatch inside a matrix block
    CHECK_THROWS_AS(parse_instance("TWOSTAGE\nGLOBALS 1\nLOCALS 2\nLOCALROWS 1\n"
                                   "BRICK\nA\n1\nD\n1\nb\n2\nENDBRICK\nEND\n"),
                    ParseError);
}

TEST_CASE("two-stage bricks reject objective lines") {
    std::string text =
        "TWOSTAGE\nGLOBALS 1\nLOCALS 1\nLOCALROWS 1\n"
        "BRICK\nA\n1\nD\n1\nb\n2\nc\n1\nENDBRICK\nEND\n";
    CHECK_THROWS_WITH_AS(parse_instance(text),
                         "line 12: two-stage programs take no objective line",
                         ParseError);
}

TEST_CASE("truncated files fail instead of returning partial programs") {
    CHECK_THROWS_AS(parse_instance("TWOSTAGE\nGLOBALS 1\nLOCALS 1\nLOCALROWS 1\n"
                                   "BRICK\nA\n1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance(""), ParseError);
}

TEST_CASE("format_vector emits space-separated entries") {
    auto v = vec_of(make_vars("x", 3), {1, -2, 30});
    CHECK(format_vector(v) == "1 -2 30");
}
