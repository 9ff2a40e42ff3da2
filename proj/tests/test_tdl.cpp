// Copyright (c) tdlmc contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "tdlmc/tdl/ast.hpp"

using namespace tdlmc::tdl;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Program load_corpus(const char* name) {
    return parse_program(read_file(std::string(TDLMC_SOURCE_DIR) + "/corpus/" + name));
}

}  // namespace

TEST_CASE("challenge-response corpus parses to the expected shape") {
    Program p = load_corpus("challenge_response.tdl");
    REQUIRE(p.threads.size() == 3);
    CHECK(p.constants == std::vector<std::string>{"c"});

    const ThreadDef& init = p.threads[0];
    CHECK(init.name == "Init");
    CHECK(init.locals.size() == 3);
    CHECK(init.initial == "init_A");
    REQUIRE(init.rules.size() == 4);
    CHECK(init.rules[0].kind == Rule::Kind::NewName);
    CHECK(init.rules[0].new_var == "n_A");
    CHECK(init.rules[1].kind == Rule::Kind::Send);
    CHECK(init.rules[1].channel == Expr::constant("c"));
    CHECK(init.rules[1].message == std::vector<std::string>{"n_A"});
    CHECK(init.rules[2].kind == Rule::Kind::Receive);
    CHECK(init.rules[2].channel == Expr::var("n_A"));
    CHECK(init.rules[3].kind == Rule::Kind::Internal);
    CHECK(init.rules[3].assign.size() == 2);

    const ThreadDef& resp = p.threads[1];
    CHECK(resp.locals.size() == 3);
    const ThreadDef& main = p.threads[2];
    CHECK(main.locals.size() == 1);
    REQUIRE(main.rules.size() == 3);
    CHECK(main.rules[1].kind == Rule::Kind::Spawn);
    CHECK(main.rules[1].spawn_thread == "Init");
    CHECK(main.rules[1].assign.size() == 3);

    CHECK(p.initial_pool == std::vector<std::string>{"Main"});
    CHECK(validate(p).empty());
}

TEST_CASE("print/parse round trip on the corpus") {
    for (const char* name : {"challenge_response.tdl", "challenge_response_flawed.tdl"}) {
        Program p = load_corpus(name);
        Program again = parse_program(pretty_print(p));
        CHECK(p == again);
    }
}

TEST_CASE("empty thread body is valid") {
    Program p = parse_program("thread Idle();\ninit pool: Idle;");
    REQUIRE(p.threads.size() == 1);
    CHECK(p.threads[0].rules.empty());
    CHECK(p.threads[0].initial == default_initial_location("Idle"));
    CHECK(validate(p).empty());
    CHECK(parse_program(pretty_print(p)) == p);
}

TEST_CASE("empty program parses cleanly") {
    Program p = parse_program("");
    CHECK(p.threads.empty());
    CHECK(validate(p).empty());
}

TEST_CASE("diagnostics") {
    SUBCASE("duplicate assignment target") {
        Program p = parse_program(
            "const a, b;\nthread T(local x);\n  p -go-> q [x := a, x := b]\ninit pool: T;");
        auto diags = validate(p);
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].message.find("duplicate assignment target") != std::string::npos);
    }
    SUBCASE("receive template reusing a local is flagged") {
        Program p;
        ThreadDef t;
        t.name = "T";
        t.locals = {"x"};
        t.initial = "p";
        Rule r;
        r.kind = Rule::Kind::Receive;
        r.source = "p";
        r.target = "q";
        r.channel = Expr::var("x");
        r.message = {"x"};  // not fresh
        t.rules.push_back(r);
        p.threads.push_back(t);
        auto diags = validate(p);
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].message.find("must be fresh") != std::string::npos);
    }
    SUBCASE("validate is deterministic") {
        Program p = parse_program(
            "const a;\nthread T(local x);\n  p -go-> q [x := a, x := a]\n"
            "thread U(local x2);\n  p2 -go-> q2 [x2 := a, x2 := a]\ninit pool: T;");
        auto d1 = validate(p);
        auto d2 = validate(p);
        REQUIRE(d1.size() == d2.size());
        for (size_t i = 0; i < d1.size(); ++i) CHECK(d1[i].message == d2[i].message);
    }
    SUBCASE("reused location name across threads") {
        Program p = parse_program(
            "thread T();\n  p -go-> q [true]\nthread U();\n  p -go2-> r [true]\ninit pool: T;");
        auto diags = validate(p);
        REQUIRE(!diags.empty());
        CHECK(diags[0].message.find("reused") != std::string::npos);
    }
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_program("thread T(;"), ParseError);
    CHECK_THROWS_AS(parse_program("thread T();\n p -a-> q [x := new, y := z]"), ParseError);
    CHECK_THROWS_AS(parse_program("thread T();\ninit pool: Nope;"), ParseError);
    CHECK_THROWS_AS(
        parse_program("thread T(local x);\n p -a-> q [run U with x := x]\ninit pool: T;"),
        ParseError);
    // spawn must bind every local of the child (partial binding rejected)
    CHECK_THROWS_AS(parse_program("thread T(local x);\n p -a-> q [run U with u1 := x]\n"
                                  "thread U(local u1, u2);\ninit pool: T;"),
                    ParseError);
    try {
        parse_program("thread T();\n  p -?-> q [true]");
        FAIL("expected throw");
    } catch (const ParseError& e) {
        CHECK(e.pos.line == 2);
    }
}
