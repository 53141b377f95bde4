#include "lawkit/term.hpp"

#include <doctest.h>

#include <random>

using namespace lawkit;

namespace {

Term v(int i) { return Term::variable(i); }
Term ap(const std::string& op, std::vector<Term> args = {}) {
    return Term::apply(op, std::move(args));
}

const char* kBooleSrc = R"(
theory Boole;
op 0/0;
op 1/0;
op and/2;
op or/2;
op not/1;
eq 2: or(x1,x2) = or(x2,x1);
eq 2: and(x1,x2) = and(x2,x1);
eq 3: or(x1,or(x2,x3)) = or(or(x1,x2),x3);
eq 3: and(x1,and(x2,x3)) = and(and(x1,x2),x3);
eq 2: or(x1,and(x1,x2)) = x1;
eq 2: and(x1,or(x1,x2)) = x1;
eq 3: and(x1,or(x2,x3)) = or(and(x1,x2),and(x1,x3));
eq 3: or(x1,and(x2,x3)) = and(or(x1,x2),or(x1,x3));
eq 1: or(x1,not(x1)) = 1;
eq 1: and(x1,not(x1)) = 0;
end
)";

// uniform random term over a small signature for the substitution laws
Term random_tree(std::mt19937_64& rng, int context, int depth) {
    int pick = static_cast<int>(rng() % 4);
    if (depth == 0 || pick == 0)
        return v(static_cast<int>(rng() % static_cast<unsigned>(context)) + 1);
    if (pick == 1) return ap("not", {random_tree(rng, context, depth - 1)});
    return ap(pick == 2 ? "and" : "or",
              {random_tree(rng, context, depth - 1), random_tree(rng, context, depth - 1)});
}

}  // namespace

TEST_CASE("parse: empty theory of sets") {
    Presentation p = parse_presentation("theory E; end");
    CHECK(p.name == "E");
    CHECK(p.signature.ops().empty());
    CHECK(p.equations.empty());
}

TEST_CASE("parse: Boolean algebra presentation") {
    Presentation p = parse_presentation(kBooleSrc);
    CHECK(p.signature.ops().size() == 5);
    CHECK(p.equations.size() == 10);
    CHECK(p.signature.arity_of("and") == 2);
    CHECK(p.signature.arity_of("0") == 0);
}

TEST_CASE("parse: arity mismatch is an error") {
    CHECK_THROWS_AS(parse_presentation("theory X; op and/2; eq 1: and(x1) = x1; end"),
                    ParseError);
}

TEST_CASE("parse: duplicate operation name") {
    CHECK_THROWS_AS(parse_presentation("theory X; op f/1; op f/2; end"), ParseError);
}

TEST_CASE("parse: errors carry line and column") {
    try {
        parse_presentation("theory X;\nop f/1;\neq 1: g(x1) = x1;\nend");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.col > 1);
    }
}

TEST_CASE("parse: variable outside the context") {
    CHECK_THROWS_AS(parse_presentation("theory X; op f/1; eq 1: f(x2) = x1; end"),
                    ParseError);
}

TEST_CASE("substitute basics") {
    Term t = v(1);
    CHECK(substitute(t, {ap("0")}) == ap("0"));
    // swap
    Term sw = substitute(ap("and", {v(1), v(2)}), {v(2), v(1)});
    CHECK(sw == ap("and", {v(2), v(1)}));
    // unary over binary
    Term nested = substitute(ap("not", {v(1)}), {ap("and", {v(1), v(2)})});
    CHECK(nested == ap("not", {ap("and", {v(1), v(2)})}));
    CHECK_THROWS_AS(substitute(v(3), {v(1)}), TermError);
}

TEST_CASE("substitution laws on random terms") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Term t = random_tree(rng, 3, 3);
        // identity law
        std::vector<Term> id_env{v(1), v(2), v(3)};
        CHECK(substitute(t, id_env) == t);
        // associativity: t[e1][e2] == t[map(e1, .[e2])]
        std::vector<Term> e1{random_tree(rng, 2, 2), random_tree(rng, 2, 2),
                             random_tree(rng, 2, 2)};
        std::vector<Term> e2{random_tree(rng, 2, 2), random_tree(rng, 2, 2)};
        Term lhs = substitute(substitute(t, e1), e2);
        std::vector<Term> composed;
        for (const Term& e : e1) composed.push_back(substitute(e, e2));
        CHECK(lhs == substitute(t, composed));
    }
}

TEST_CASE("size and depth conventions") {
    CHECK(term_size(v(1)) == 1);
    CHECK(term_depth(v(1)) == 0);
    Term t = ap("and", {v(1), ap("not", {v(2)})});
    CHECK(term_size(t) == 4);
    CHECK(term_depth(t) == 2);
    CHECK(term_size(ap("0")) == 1);
    CHECK(term_depth(ap("0")) == 1);
}

TEST_CASE("print then parse is the identity") {
    for (const char* src : {kBooleSrc, "theory E; end",
                            "theory G; op m/2; op i/1; op e/0;"
                            " eq 3: m(m(x1,x2),x3) = m(x1,m(x2,x3)); end"}) {
        Presentation p = parse_presentation(src);
        Presentation q = parse_presentation(print_presentation(p));
        CHECK(p.name == q.name);
        REQUIRE(p.signature.ops().size() == q.signature.ops().size());
        for (std::size_t i = 0; i < p.signature.ops().size(); ++i) {
            CHECK(p.signature.ops()[i].name == q.signature.ops()[i].name);
            CHECK(p.signature.ops()[i].arity == q.signature.ops()[i].arity);
        }
        REQUIRE(p.equations.size() == q.equations.size());
        for (std::size_t i = 0; i < p.equations.size(); ++i) {
            CHECK(p.equations[i].lhs == q.equations[i].lhs);
            CHECK(p.equations[i].rhs == q.equations[i].rhs);
            CHECK(p.equations[i].context == q.equations[i].context);
        }
    }
}

TEST_CASE("structural hash agrees with equality") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        Term a = random_tree(rng, 2, 3);
        Term b = random_tree(rng, 2, 3);
        if (a == b) CHECK(a.hash() == b.hash());
    }
    Term x = ap("and", {v(1), v(2)});
    Term y = ap("and", {v(1), v(2)});
    CHECK(x.hash() == y.hash());
    CHECK(x == y);
}
