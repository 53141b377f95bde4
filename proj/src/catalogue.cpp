// Built-in theories and their decision-procedure backends.

#include "lawkit/theory.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace lawkit {

// ---- FiniteGroup -----------------------------------------------------------

int FiniteGroup::identity() const {
    for (int e = 0; e < order; ++e) {
        bool ok = true;
        for (int x = 0; x < order && ok; ++x)
            ok = mul[static_cast<std::size_t>(e)][static_cast<std::size_t>(x)] == x &&
                 mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(e)] == x;
        if (ok) return e;
    }
    throw TermError("multiplication table has no identity");
}

int FiniteGroup::inverse(int a) const {
    int e = identity();
    for (int b = 0; b < order; ++b)
        if (times(a, b) == e && times(b, a) == e) return b;
    throw TermError("element has no inverse");
}

bool FiniteGroup::abelian() const {
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            if (times(a, b) != times(b, a)) return false;
    return true;
}

void FiniteGroup::validate() const {
    if (order < 1 || static_cast<int>(mul.size()) != order)
        throw TermError("bad multiplication table size");
    for (const auto& row : mul) {
        if (static_cast<int>(row.size()) != order)
            throw TermError("bad multiplication table row");
        for (int v : row)
            if (v < 0 || v >= order) throw TermError("table entry out of range");
    }
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            for (int c = 0; c < order; ++c)
                if (times(times(a, b), c) != times(a, times(b, c)))
                    throw TermError("multiplication table is not associative");
    identity();
    for (int a = 0; a < order; ++a) inverse(a);
}

FiniteGroup FiniteGroup::trivial() {
    FiniteGroup g;
    g.order = 1;
    g.mul = {{0}};
    g.name = "1";
    return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n < 1) throw TermError("cyclic group order must be >= 1");
    FiniteGroup g;
    g.order = n;
    g.mul.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            g.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    g.name = "C" + std::to_string(n);
    return g;
}

FiniteGroup FiniteGroup::symmetric3() {
    // permutations of {0,1,2} listed as id, (01), (02), (12), (012), (021)
    auto apply = [](const std::array<int, 3>& p, const std::array<int, 3>& q) {
        return std::array<int, 3>{p[q[0]], p[q[1]], p[q[2]]};
    };
    std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                                             {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    FiniteGroup g;
    g.order = 6;
    g.mul.assign(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) {
            auto prod = apply(perms[static_cast<std::size_t>(a)],
                              perms[static_cast<std::size_t>(b)]);
            for (int c = 0; c < 6; ++c)
                if (prod == perms[static_cast<std::size_t>(c)]) {
                    g.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = c;
                    break;
                }
        }
    }
    g.name = "S3";
    return g;
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    FiniteGroup g;
    g.order = a.order * b.order;
    g.mul.assign(static_cast<std::size_t>(g.order),
                 std::vector<int>(static_cast<std::size_t>(g.order)));
    auto idx = [&](int x, int y) { return x * b.order + y; };
    for (int x1 = 0; x1 < a.order; ++x1)
        for (int y1 = 0; y1 < b.order; ++y1)
            for (int x2 = 0; x2 < a.order; ++x2)
                for (int y2 = 0; y2 < b.order; ++y2)
                    g.mul[static_cast<std::size_t>(idx(x1, y1))]
                         [static_cast<std::size_t>(idx(x2, y2))] =
                             idx(a.times(x1, x2), b.times(y1, y2));
    g.name = a.name + "x" + b.name;
    return g;
}

// ---- catalogue theories ------------------------------------------------------

TheoryPtr make_theory(Presentation pres, BackendPtr backend) {
    return std::make_shared<Theory>(std::move(pres), std::move(backend));
}

TheoryPtr sets_theory() {
    Presentation p;
    p.name = "E";
    return make_theory(std::move(p),
                       std::make_shared<GSetTupleBackend>(FiniteGroup::trivial(),
                                                          std::map<std::string, int>{}));
}

TheoryPtr boole_theory() {
    Presentation p = parse_presentation(R"(
theory Boole;
op 0/0;
op 1/0;
op and/2;
op or/2;
op not/1;
# lattice axioms
eq 2: or(x1,x2) = or(x2,x1);
eq 2: and(x1,x2) = and(x2,x1);
eq 3: or(x1,or(x2,x3)) = or(or(x1,x2),x3);
eq 3: and(x1,and(x2,x3)) = and(and(x1,x2),x3);
eq 2: or(x1,and(x1,x2)) = x1;
eq 2: and(x1,or(x1,x2)) = x1;
# distributivity
eq 3: and(x1,or(x2,x3)) = or(and(x1,x2),and(x1,x3));
eq 3: or(x1,and(x2,x3)) = and(or(x1,x2),or(x1,x3));
# complements
eq 1: or(x1,not(x1)) = 1;
eq 1: and(x1,not(x1)) = 0;
end
)");
    return make_theory(std::move(p),
                       std::make_shared<TruthTableBackend>("and", "or", "not", "0", "1"));
}

TheoryPtr cantor_theory(int arity) {
    if (arity < 2) throw TermError("cantor_theory requires arity >= 2");
    Presentation p;
    p.name = "Cantor" + std::to_string(arity);
    p.signature.add("mu", arity);
    for (int i = 1; i <= arity; ++i) p.signature.add("nu" + std::to_string(i), 1);
    std::vector<Term> vars;
    for (int i = 1; i <= arity; ++i) vars.push_back(Term::variable(i));
    Term mu_all = Term::apply("mu", vars);
    for (int i = 1; i <= arity; ++i)
        p.equations.push_back(
            {Term::apply("nu" + std::to_string(i), {mu_all}), Term::variable(i), arity});
    std::vector<Term> nus;
    for (int i = 1; i <= arity; ++i)
        nus.push_back(Term::apply("nu" + std::to_string(i), {Term::variable(1)}));
    p.equations.push_back({Term::apply("mu", nus), Term::variable(1), 1});

    CompletionResult comp = complete(p);
    if (comp.status != CompletionResult::Success || !comp.system.confluence_certified)
        throw TermError("completion of the Cantor presentation failed unexpectedly");
    return make_theory(std::move(p),
                       std::make_shared<TrsBackend>(std::move(comp.system), arity));
}

RewriteSystem groups_rewrite_system() {
    // the classic completed system for groups, over ops mul/inv/e
    auto v = [](int i) { return Term::variable(i); };
    auto mul = [](Term a, Term b) { return Term::apply("mul", {a, b}); };
    auto inv = [](Term a) { return Term::apply("inv", {a}); };
    Term e = Term::apply("e");
    RewriteSystem trs;
    trs.rules = {
        {mul(e, v(1)), v(1), 1},
        {mul(v(1), e), v(1), 1},
        {mul(inv(v(1)), v(1)), e, 1},
        {mul(v(1), inv(v(1))), e, 1},
        {inv(e), e, 0},
        {inv(inv(v(1))), v(1), 1},
        {mul(mul(v(1), v(2)), v(3)), mul(v(1), mul(v(2), v(3))), 3},
        {mul(inv(v(1)), mul(v(1), v(2))), v(2), 2},
        {mul(v(1), mul(inv(v(1)), v(2))), v(2), 2},
        {inv(mul(v(1), v(2))), mul(inv(v(2)), inv(v(1))), 2},
    };
    return trs;
}

TheoryPtr groups_theory() {
    Presentation p = parse_presentation(R"(
theory Groups;
op mul/2;
op inv/1;
op e/0;
eq 3: mul(mul(x1,x2),x3) = mul(x1,mul(x2,x3));
eq 1: mul(e,x1) = x1;
eq 1: mul(x1,e) = x1;
eq 1: mul(inv(x1),x1) = e;
eq 1: mul(x1,inv(x1)) = e;
end
)");
    return make_theory(std::move(p),
                       std::make_shared<ReducedWordBackend>("mul", "inv", "e"));
}

namespace {

Presentation linear_presentation(const std::string& name, long long modulus) {
    Presentation p = parse_presentation(R"(
theory __NAME__;
op add/2;
op neg/1;
op zero/0;
eq 3: add(add(x1,x2),x3) = add(x1,add(x2,x3));
eq 2: add(x1,x2) = add(x2,x1);
eq 1: add(zero,x1) = x1;
eq 1: add(x1,neg(x1)) = zero;
end
)");
    p.name = name;
    if (modulus > 0) {
        // k*x1 = zero
        Term sum = Term::variable(1);
        for (long long i = 1; i < modulus; ++i)
            sum = Term::apply("add", {Term::variable(1), sum});
        if (modulus == 1) sum = Term::variable(1);
        p.equations.push_back({sum, Term::apply("zero"), 1});
    }
    return p;
}

}  // namespace

TheoryPtr ab_theory() {
    return make_theory(linear_presentation("Ab", 0),
                       std::make_shared<LinearBackend>("add", "neg", "zero", 0));
}

TheoryPtr modr_theory(long long k) {
    if (k < 1) throw TermError("modr_theory requires k >= 1");
    return make_theory(linear_presentation("Mod" + std::to_string(k), k),
                       std::make_shared<LinearBackend>("add", "neg", "zero", k));
}

TheoryPtr gsets_theory(const FiniteGroup& g) {
    g.validate();
    Presentation p;
    p.name = "GSets_" + g.name;
    int e = g.identity();
    auto op_name = [&](int x) { return "g" + std::to_string(x); };
    std::map<std::string, int> ops;
    for (int x = 0; x < g.order; ++x) {
        if (x == e) continue;
        p.signature.add(op_name(x), 1);
        ops[op_name(x)] = x;
    }
    auto as_term = [&](int x, Term arg) {
        return x == e ? arg : Term::apply(op_name(x), {arg});
    };
    for (int x = 0; x < g.order; ++x) {
        if (x == e) continue;
        for (int y = 0; y < g.order; ++y) {
            if (y == e) continue;
            Term lhs = as_term(x, as_term(y, Term::variable(1)));
            Term rhs = as_term(g.times(x, y), Term::variable(1));
            p.equations.push_back({lhs, rhs, 1});
        }
    }
    return make_theory(std::move(p), std::make_shared<GSetTupleBackend>(g, std::move(ops)));
}

TheoryPtr zsets_theory() {
    Presentation p = parse_presentation(R"(
theory ZSets;
op s/1;
op t/1;
eq 1: s(t(x1)) = x1;
eq 1: t(s(x1)) = x1;
end
)");
    return make_theory(std::move(p), std::make_shared<IntShiftBackend>("s", "t"));
}

TheoryPtr theory_from_presentation(const Presentation& p, const UserTheoryOptions& opts) {
    p.validate();
    CompletionResult comp = complete(p, opts.kb_max_rules, opts.kb_max_term_size);
    RewriteSystem trs = std::move(comp.system);
    trs.step_budget = opts.trs_budget;
    if (comp.status != CompletionResult::Success) trs.confluence_certified = false;
    return make_theory(p, std::make_shared<TrsBackend>(std::move(trs)));
}

namespace {

FiniteGroup group_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TermError("cannot open group table file: " + path);
    nlohmann::json j;
    in >> j;
    FiniteGroup g;
    g.order = j.at("order").get<int>();
    g.mul = j.at("mul").get<std::vector<std::vector<int>>>();
    if (j.contains("name")) g.name = j.at("name").get<std::string>();
    g.validate();
    return g;
}

FiniteGroup group_from_spec(const std::string& spec) {
    if (spec.size() > 1 && (spec[0] == 'C' || spec[0] == 'c')) {
        bool digits = true;
        for (std::size_t i = 1; i < spec.size(); ++i)
            digits = digits && std::isdigit(static_cast<unsigned char>(spec[i]));
        if (digits) return FiniteGroup::cyclic(std::stoi(spec.substr(1)));
    }
    if (spec == "S3" || spec == "s3") return FiniteGroup::symmetric3();
    return group_from_json_file(spec);
}

}  // namespace

TheoryPtr resolve_theory(const std::string& spec) {
    if (spec == "E") return sets_theory();
    if (spec == "Boole") return boole_theory();
    if (spec == "Groups") return groups_theory();
    if (spec == "Ab") return ab_theory();
    if (spec == "ZSets") return zsets_theory();
    if (spec.rfind("Cantor:", 0) == 0) return cantor_theory(std::stoi(spec.substr(7)));
    if (spec.rfind("Mod:", 0) == 0) return modr_theory(std::stoll(spec.substr(4)));
    if (spec.rfind("GSets:", 0) == 0) return gsets_theory(group_from_spec(spec.substr(6)));
    if (spec.size() > 4 && spec.substr(spec.size() - 4) == ".thy") {
        std::ifstream in(spec);
        if (!in) throw TermError("cannot open theory file: " + spec);
        std::stringstream ss;
        ss << in.rdbuf();
        return theory_from_presentation(parse_presentation(ss.str()));
    }
    throw TermError("unknown theory: " + spec);
}

}  // namespace lawkit
