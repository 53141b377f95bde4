#include "lawkit/finite_model.hpp"
#include "lawkit/rewrite.hpp"
#include "lawkit/theory.hpp"

#include <doctest.h>

#include <memory>

using namespace lawkit;

namespace {

Term v(int i) { return Term::variable(i); }
Term ap(const std::string& op, std::vector<Term> args = {}) {
    return Term::apply(op, std::move(args));
}

Presentation cantor2_presentation() {
    return parse_presentation(R"(
theory Cantor2;
op mu/2;
op nu1/1;
op nu2/1;
eq 2: nu1(mu(x1,x2)) = x1;
eq 2: nu2(mu(x1,x2)) = x2;
eq 1: mu(nu1(x1),nu2(x1)) = x1;
end
)");
}

}  // namespace

TEST_CASE("completion of the Cantor presentation yields the three rules") {
    CompletionResult res = complete(cantor2_presentation());
    REQUIRE(res.status == CompletionResult::Success);
    CHECK(res.system.rules.size() == 3);
    CHECK(res.system.confluence_certified);
    CHECK(verify_completion_derivations(res));
}

TEST_CASE("normalize: Cantor projections") {
    CompletionResult res = complete(cantor2_presentation());
    REQUIRE(res.status == CompletionResult::Success);
    const RewriteSystem& trs = res.system;

    Term t1 = ap("nu1", {ap("mu", {v(1), v(2)})});
    CHECK(trs.normalize(t1) == v(1));
    Term t2 = ap("mu", {ap("nu1", {v(1)}), ap("nu2", {v(1)})});
    CHECK(trs.normalize(t2) == v(1));
    // a normal form maps to itself
    Term nf = ap("mu", {v(1), v(2)});
    CHECK(trs.normalize(nf) == nf);
}

TEST_CASE("normalize is idempotent on enumerated terms") {
    CompletionResult res = complete(cantor2_presentation());
    REQUIRE(res.status == CompletionResult::Success);
    Presentation p = cantor2_presentation();
    for (const Term& t : enumerate_terms(p.signature, 2, 5)) {
        Term once = res.system.normalize(t);
        CHECK(res.system.normalize(once) == once);
    }
}

TEST_CASE("reflexive equations are discarded") {
    Presentation p = parse_presentation("theory X; op f/1; eq 1: f(x1) = f(x1); end");
    CompletionResult res = complete(p);
    REQUIRE(res.status == CompletionResult::Success);
    CHECK(res.system.rules.empty());
}

TEST_CASE("a lone commutativity equation is unorientable") {
    Presentation p =
        parse_presentation("theory X; op and/2; eq 2: and(x1,x2) = and(x2,x1); end");
    CompletionResult res = complete(p);
    CHECK(res.status == CompletionResult::Unorientable);
    CHECK(!res.message.empty());
}

TEST_CASE("local confluence: Cantor and group systems are confluent") {
    CompletionResult res = complete(cantor2_presentation());
    REQUIRE(res.status == CompletionResult::Success);
    CHECK(check_local_confluence(res.system).locally_confluent);

    ConfluenceReport groups = check_local_confluence(groups_rewrite_system());
    CHECK(groups.locally_confluent);
    CHECK(!groups.pairs.empty());
}

TEST_CASE("non-joinable critical pair is reported") {
    RewriteSystem trs;
    trs.rules = {{ap("f", {ap("g", {v(1)})}), v(1), 1}, {ap("g", {v(1)}), v(1), 1}};
    ConfluenceReport rep = check_local_confluence(trs);
    CHECK(!rep.locally_confluent);
    bool found_bad = false;
    for (const auto& cp : rep.pairs) found_bad = found_bad || !cp.joinable;
    CHECK(found_bad);
}

TEST_CASE("budget exhaustion is loud") {
    // f(x) -> f(f(x)) diverges; a handmade non-terminating system
    RewriteSystem trs;
    trs.rules = {{ap("f", {v(1)}), ap("f", {ap("f", {v(1)})}), 1}};
    trs.step_budget = 50;
    CHECK_THROWS_AS(trs.normalize(ap("f", {v(1)})), BudgetExceeded);
}

TEST_CASE("KBO orients by weight and handles the variable condition") {
    Presentation p = parse_presentation("theory X; op f/2; op g/1; end");
    KnuthBendixOrder kbo(p.signature);
    CHECK(kbo.greater(ap("g", {ap("f", {v(1), v(2)})}), v(1)));
    CHECK(!kbo.greater(v(1), ap("g", {v(1)})));
    CHECK(!kbo.greater(ap("f", {v(1), v(1)}), ap("f", {v(2), v(2)})));
    // duplicating variables on the right violates the multiset condition
    CHECK(!kbo.greater(ap("g", {v(1)}), ap("f", {v(1), v(1)})));
}

TEST_CASE("completion of monoids joins the unit equations") {
    Presentation p = parse_presentation(R"(
theory Mon;
op m/2;
op e/0;
eq 3: m(m(x1,x2),x3) = m(x1,m(x2,x3));
eq 1: m(e,x1) = x1;
eq 1: m(x1,e) = x1;
end
)");
    CompletionResult res = complete(p);
    REQUIRE(res.status == CompletionResult::Success);
    CHECK(res.system.confluence_certified);
    // m(e, m(x, e)) normalizes to x
    Term t = ap("m", {ap("e"), ap("m", {v(1), ap("e")})});
    CHECK(res.system.normalize(t) == v(1));
}

TEST_CASE("normalization is sound in every finite model") {
    // checked through eval: the normal form evaluates identically
    Presentation pres = cantor2_presentation();
    CompletionResult res = complete(pres);
    REQUIRE(res.status == CompletionResult::Success);
    TheoryPtr T = cantor_theory(2);
    std::mt19937_64 rng(3);
    // Cantor only has one-point models; the law still has to hold there
    auto p = std::make_shared<Presentation>(pres);
    std::vector<FiniteModel> models;
    for (int k = 0; k <= 3; ++k) {
        auto ms = enumerate_models(p, k);
        models.insert(models.end(), ms.begin(), ms.end());
    }
    for (int i = 0; i < 100; ++i) {
        Term t = random_term(*T, 2, 6, rng);
        Term nf = res.system.normalize(t);
        for (const FiniteModel& m : models) {
            if (m.size == 0) continue;
            std::vector<int> env(2, 0);
            for (;;) {
                CHECK(m.eval_term(t, env) == m.eval_term(nf, env));
                int pos = 1;
                while (pos >= 0 && ++env[static_cast<std::size_t>(pos)] == m.size) {
                    env[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
    }
}
