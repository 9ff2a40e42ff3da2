// Copyright (c) tdlmc contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/preorder_oracle.hpp"
#include "support/random_nc.hpp"
#include "tdlmc/nc/constraint.hpp"

using namespace tdlmc;
using namespace tdlmc::nc;
using tdlmc::testing::oracle_eliminate_ok;
using tdlmc::testing::oracle_entails;
using tdlmc::testing::oracle_satisfiable;

namespace {

NCConstraint parse(const char* s) { return parse_constraint(s); }

bool equivalent(const NCConstraint& a, const NCConstraint& b) {
    return entails(a, b) && entails(b, a);
}

}  // namespace

TEST_CASE("satisfiable: basic shapes") {
    CHECK(satisfiable(parse("true")));
    CHECK_FALSE(satisfiable(parse("x > y, y > x")));
    CHECK(satisfiable(parse("x = 1, x > z")));
    CHECK(satisfiable(parse("x = 1, z > x")));
    CHECK_FALSE(satisfiable(parse("x = 1, x = 2")));
    CHECK_FALSE(satisfiable(parse("x > x")));
    CHECK_FALSE(satisfiable(parse("x = 1, x > 1")));
    CHECK(satisfiable(parse("x > 4, 5 > x")));       // dense: room between integers
    CHECK_FALSE(satisfiable(parse("x > 4, 4 > x")));
    CHECK_FALSE(satisfiable(parse("x = 5, y = 4, y > x")));
}

TEST_CASE("entails: basic shapes") {
    CHECK(entails(parse("x > y, y > z"), parse("x > z")));
    CHECK_FALSE(entails(parse("x = y"), parse("x > y")));
    CHECK(entails(parse("x > y, y > x"), parse("q = 3")));  // unsat entails anything
    CHECK(entails(parse("x = 5"), parse("x > 4")));
    CHECK(entails(parse("x = 5"), parse("x > 2")));
    CHECK_FALSE(entails(parse("x > 2"), parse("x > 3")));
    CHECK(entails(parse("x > y, y > 3"), parse("x > 3")));
    CHECK(entails(parse("x = 0, y > 0"), parse("y > x")));
    CHECK(entails(parse("y = 3, y > x"), parse("x < 3")));
    CHECK(entails(parse("y = 3, y > x"), parse("x < 5")));
    CHECK_FALSE(entails(parse("y = 3, y > x"), parse("x < 2")));
    SUBCASE("true is entailed by everything") {
        CHECK(entails(parse("a > b"), parse("true")));
        CHECK(entails(parse("true"), parse("true")));
    }
}

TEST_CASE("conjoin") {
    CHECK(conjoin(parse("x > y"), parse("y > z")) == parse("x > y, y > z"));
    CHECK(conjoin(parse("true"), parse("a = b")) == parse("a = b"));
    CHECK_FALSE(satisfiable(conjoin(parse("x = 1"), parse("x > 1"))));
}

TEST_CASE("eliminate: spec examples") {
    // After eliminating y from {y = m, n = u, a = y}: n = u and a = m survive.
    NCConstraint phi = parse("y = m, n = u, a = y");
    NCConstraint out = eliminate(phi, {VarId::intern("y")});
    CHECK_FALSE(out.mentions(VarId::intern("y")));
    CHECK(equivalent(out, parse("n = u, a = m")));

    NCConstraint proj = eliminate(parse("a > x, x > b"), {VarId::intern("x")});
    CHECK(equivalent(proj, parse("a > b")));
    CHECK(oracle_eliminate_ok(parse("a > x, x > b"), {VarId::intern("x")}, proj));

    CHECK(equivalent(eliminate(parse("a > b, b > 2"), {}), parse("a > b, b > 2")));
}

TEST_CASE("eliminate: constant upper bounds are kept") {
    // Dropping y from {y = 3, y > x} must retain x < 3.
    NCConstraint out = eliminate(parse("y = 3, y > x"), {VarId::intern("y")});
    CHECK(oracle_eliminate_ok(parse("y = 3, y > x"), {VarId::intern("y")}, out));
    CHECK(entails(out, parse("x < 3")));
}

TEST_CASE("rename") {
    std::unordered_map<VarId, VarId, std::hash<VarId>> map{
        {VarId::intern("x"), VarId::intern("a")}, {VarId::intern("y"), VarId::intern("b")}};
    CHECK(rename(parse("x > y"), map) == parse("a > b"));
    CHECK(rename(parse("x > y"), {}) == parse("x > y"));

    std::unordered_map<VarId, VarId, std::hash<VarId>> back{
        {VarId::intern("a"), VarId::intern("x")}, {VarId::intern("b"), VarId::intern("y")}};
    CHECK(rename(rename(parse("x > y, x = 3"), map), back) == parse("x > y, x = 3"));

    std::unordered_map<VarId, VarId, std::hash<VarId>> collapse{
        {VarId::intern("x"), VarId::intern("z")}, {VarId::intern("y"), VarId::intern("z")}};
    CHECK_THROWS_AS(rename(parse("x > y"), collapse), std::invalid_argument);
}

TEST_CASE("canonical form identifies equivalent constraints") {
    CHECK(canonical(parse("x = y, y = z")) == canonical(parse("x = z, z = y")));
    CHECK(canonical(parse("x > y, y > z, x > z")) == canonical(parse("x > y, y > z")));
    CHECK(canonical(parse("x = 2, y = 2")) == canonical(parse("x = y, y = 2")));
    CHECK(canonical(parse("x > y, y > x")) == canonical(parse("false")));
}

TEST_CASE("parse/print round trip") {
    for (const char* s : {"true", "x = y, x > 0, z = 3", "a > b, b < 4", "false"}) {
        NCConstraint c = parse(s);
        CHECK(parse_constraint(c.str()) == c);
    }
    CHECK_THROWS_AS(parse("x >"), std::invalid_argument);
    CHECK_THROWS_AS(parse("x ? y"), std::invalid_argument);
}

TEST_CASE("oracle agreement on random constraints") {
    testing::RandomNC gen(20260809);
    for (int i = 0; i < 400; ++i) {
        NCConstraint phi = gen.constraint();
        CAPTURE(phi.str());
        CHECK(satisfiable(phi) == oracle_satisfiable(phi));

        NCConstraint psi = gen.constraint();
        CAPTURE(psi.str());
        CHECK(entails(psi, phi) == oracle_entails(psi, phi));

        auto kill = gen.var_subset();
        NCConstraint out = eliminate(phi, kill);
        CHECK(oracle_eliminate_ok(phi, kill, out));
    }
}

TEST_CASE("entails is a preorder") {
    testing::RandomNC gen(7);
    for (int i = 0; i < 150; ++i) {
        NCConstraint a = gen.constraint(4), b = gen.constraint(4), c = gen.constraint(4);
        CHECK(entails(a, a));
        if (entails(a, b) && entails(b, c)) CHECK(entails(a, c));
    }
}

TEST_CASE("eliminate is monotone w.r.t. entailment") {
    testing::RandomNC gen(11);
    for (int i = 0; i < 150; ++i) {
        NCConstraint psi = gen.constraint(4), phi = gen.constraint(4);
        auto kill = gen.var_subset();
        if (entails(psi, phi)) CHECK(entails(eliminate(psi, kill), eliminate(phi, kill)));
    }
}

TEST_CASE("conjoin is commutative and associative up to equivalence") {
    testing::RandomNC gen(13);
    for (int i = 0; i < 100; ++i) {
        NCConstraint a = gen.constraint(3), b = gen.constraint(3), c = gen.constraint(3);
        CHECK(equivalent(conjoin(a, b), conjoin(b, a)));
        CHECK(equivalent(conjoin(conjoin(a, b), c), conjoin(a, conjoin(b, c))));
    }
}
