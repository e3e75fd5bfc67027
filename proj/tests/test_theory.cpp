#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "ua/theory.hpp"

#include <random>

using namespace ua;

TEST_CASE("parse_theory basic shapes") {
    Theory maltsev = parse_theory("fn m/3; m(x,y,y)=x; m(y,y,x)=x;");
    CHECK(maltsev.signature.functions.size() == 1);
    CHECK(maltsev.signature.functions[0].arity == 3);
    CHECK(maltsev.identities.size() == 2);

    Theory bunit = parse_theory("const 1; fn B/2; B(1,x)=x; B(x,1)=x;");
    CHECK(bunit.signature.constants.size() == 1);
    CHECK(bunit.identities.size() == 2);

    Theory empty = parse_theory("fn m/3;");
    CHECK(empty.identities.empty());
}

TEST_CASE("variable normalization: literal x is always x0") {
    Theory th = parse_theory("fn F/2; F(z,z)=x;");
    // z normalizes to x1 because x occupies x0.
    const Identity& id = th.identities[0];
    CHECK(id.lhs.args[0] == var(1));
    CHECK(id.rhs.atom == var(0));

    Theory th2 = parse_theory("fn F/2; F(u,v)=u;");
    CHECK(th2.identities[0].lhs.args[0] == var(0));
    CHECK(th2.identities[0].lhs.args[1] == var(1));
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_theory("fn m/3;\nm(x,y)=x;"), ParseError);
    try {
        parse_theory("fn m/3;\nm(x,y)=x;");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_theory("m(x,y,y)=x;"), ParseError);       // undeclared symbol
    CHECK_THROWS_AS(parse_theory("fn m/3; fn m/2;"), ParseError);   // duplicate
    CHECK_THROWS_AS(parse_theory("fn m/0;"), ParseError);           // nullary function
    CHECK_THROWS_AS(parse_theory("const c; fn F/1; F(c)=c"), ParseError); // missing ';'
}

TEST_CASE("substitute examples") {
    Theory th = corpus::maltsev();
    const Identity& ax = th.identities[0]; // m(x0,x1,x1) = x0
    std::map<int, Atom> collapse{{0, var(0)}, {1, var(0)}};
    BasicTerm t = substitute(ax.lhs, collapse);
    CHECK(t.args == std::vector<Atom>{var(0), var(0), var(0)});

    Theory bu = corpus::b_unit();
    BasicTerm b = BasicTerm::make(0, {var(0), var(1)});
    BasicTerm sub = substitute(b, {{0, cst(0)}, {1, var(1)}});
    CHECK(sub.args[0] == cst(0));
    CHECK(sub.args[1] == var(1));

    BasicTerm atom = BasicTerm::make(var(0));
    CHECK(substitute(atom, {{0, var(1)}}).atom == var(1));
}

TEST_CASE("substitute is compositional and identity-stable") {
    std::mt19937 rng(7);
    Theory th = corpus::maltsev();
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Atom> args;
        for (int i = 0; i < 3; ++i) args.push_back(var(int(rng() % 3)));
        BasicTerm t = BasicTerm::make(0, args);
        std::map<int, Atom> g, d;
        for (int v = 0; v < 3; ++v) {
            g[v] = var(int(rng() % 3));
            d[v] = var(int(rng() % 3));
        }
        // composition: (t[g])[d] == t[d ∘ g]
        std::map<int, Atom> comp;
        for (int v = 0; v < 3; ++v) comp[v] = d[g[v].index];
        CHECK(substitute(substitute(t, g), d) == substitute(t, comp));
        std::map<int, Atom> ident{{0, var(0)}, {1, var(1)}, {2, var(2)}};
        CHECK(substitute(t, ident) == t);
    }
}

TEST_CASE("replace_constant_once") {
    Theory th = parse_theory("const c, d; fn F/3;");
    BasicTerm t = BasicTerm::make(0, {cst(0), cst(0), var(0)});
    BasicTerm r0 = replace_constant_once(t, 0, 1, 0);
    CHECK(r0.args == std::vector<Atom>{cst(1), cst(0), var(0)});
    BasicTerm r1 = replace_constant_once(t, 0, 1, 1);
    CHECK(r1.args == std::vector<Atom>{cst(0), cst(1), var(0)});
    BasicTerm c = BasicTerm::make(cst(0));
    CHECK(replace_constant_once(c, 0, 1, 0).atom == cst(1));
    CHECK_THROWS_AS(replace_constant_once(t, 0, 1, 2), DomainError);
}

TEST_CASE("large_enough_X") {
    CHECK(large_enough_X(corpus::maltsev()) == 3);
    Theory bu = parse_theory("const 1; fn B/2; B(1,x)=x; B(x,1)=x;");
    CHECK(large_enough_X(bu) == 2);
    Theory empty = parse_theory("fn B/2;");
    Identity xy = parse_identity("x = y", empty.signature);
    CHECK(large_enough_X(empty, {xy}) == 2);
    // extras can only grow the requirement
    for (const Theory& th : corpus::kelly_corpus()) {
        Identity id = parse_identity("x = y", th.signature);
        CHECK(large_enough_X(th, {id}) >= large_enough_X(th));
    }
}

TEST_CASE("render/parse round trip is stable") {
    for (const Theory& th : corpus::kelly_corpus()) {
        std::string once = render_theory(th);
        Theory reparsed = parse_theory(once);
        CHECK(render_theory(reparsed) == once);
        CHECK(reparsed.identities.size() == th.identities.size());
    }
}
