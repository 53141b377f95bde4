#include "lawkit/theory.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace lawkit {

// ---- FMor -------------------------------------------------------------------

FMor FMor::make(TheoryPtr T, int src, int dst, std::vector<Term> comps) {
    if (src < 0 || dst < 0) throw TermError("negative arity");
    if (static_cast<int>(comps.size()) != src)
        throw TermError("morphism T_" + std::to_string(src) + " -> T_" +
                        std::to_string(dst) + " needs " + std::to_string(src) +
                        " components, got " + std::to_string(comps.size()));
    FMor f;
    f.theory = std::move(T);
    f.src = src;
    f.dst = dst;
    f.components.reserve(comps.size());
    for (Term& t : comps) f.components.push_back(f.theory->normal_form(t, dst));
    return f;
}

bool FMor::operator==(const FMor& other) const {
    if (src != other.src || dst != other.dst) return false;
    for (int i = 0; i < src; ++i)
        if (components[static_cast<std::size_t>(i)] !=
            other.components[static_cast<std::size_t>(i)])
            return false;
    return true;
}

std::string FMor::str() const {
    std::string s = std::to_string(src) + ">" + std::to_string(dst) + ":";
    for (int i = 0; i < src; ++i) {
        if (i) s += ";";
        s += components[static_cast<std::size_t>(i)].str();
    }
    return s;
}

FMor identity(TheoryPtr T, int n) {
    std::vector<Term> comps;
    for (int i = 1; i <= n; ++i) comps.push_back(Term::variable(i));
    return FMor::make(std::move(T), n, n, std::move(comps));
}

bool is_identity(const FMor& f) {
    if (f.src != f.dst) return false;
    return f == identity(f.theory, f.src);
}

FMor compose(const FMor& g, const FMor& f) {
    if (f.theory != g.theory) throw TermError("compose: theories differ");
    if (f.dst != g.src)
        throw TermError("compose: arity mismatch, f: " + f.str() + " then g: " + g.str());
    std::vector<Term> comps;
    comps.reserve(static_cast<std::size_t>(f.src));
    for (const Term& c : f.components) comps.push_back(substitute(c, g.components));
    return FMor::make(f.theory, f.src, g.dst, std::move(comps));
}

namespace {

Term shift_term_vars(const Term& t, int delta) {
    if (t.is_variable()) return Term::variable(t.var_index() + delta);
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(shift_term_vars(a, delta));
    return Term::apply(t.op(), std::move(args));
}

}  // namespace

FMor coproduct(const FMor& f, const FMor& g) {
    if (f.theory != g.theory) throw TermError("coproduct: theories differ");
    std::vector<Term> comps = f.components;
    for (const Term& c : g.components) comps.push_back(shift_term_vars(c, f.dst));
    return FMor::make(f.theory, f.src + g.src, f.dst + g.dst, std::move(comps));
}

FMor injection(TheoryPtr T, int n, int m, Side side) {
    std::vector<Term> comps;
    if (side == Side::Left) {
        for (int i = 1; i <= n; ++i) comps.push_back(Term::variable(i));
        return FMor::make(std::move(T), n, n + m, std::move(comps));
    }
    for (int i = 1; i <= m; ++i) comps.push_back(Term::variable(n + i));
    return FMor::make(std::move(T), m, n + m, std::move(comps));
}

FMor symmetry(TheoryPtr T, int n, int m) {
    std::vector<Term> comps;
    for (int i = 1; i <= n; ++i) comps.push_back(Term::variable(m + i));
    for (int j = 1; j <= m; ++j) comps.push_back(Term::variable(j));
    return FMor::make(std::move(T), n + m, m + n, std::move(comps));
}

// ---- enumeration --------------------------------------------------------------

std::vector<Term> enumerate_terms(const Signature& sig, int context, int max_size) {
    std::vector<std::vector<Term>> by_size(static_cast<std::size_t>(max_size) + 1);
    if (max_size >= 1) {
        for (int i = 1; i <= context; ++i)
            by_size[1].push_back(Term::variable(i));
        for (const OpDecl& o : sig.ops())
            if (o.arity == 0) by_size[1].push_back(Term::apply(o.name));
    }
    // argument size compositions, lexicographic
    std::function<void(const OpDecl&, int, std::vector<Term>&, int,
                       std::vector<Term>&)>
        build = [&](const OpDecl& o, int remaining, std::vector<Term>& args, int slot,
                    std::vector<Term>& out) {
            if (slot == o.arity) {
                if (remaining == 0) out.push_back(Term::apply(o.name, args));
                return;
            }
            int slots_left = o.arity - slot - 1;
            for (int sz = 1; sz <= remaining - slots_left; ++sz) {
                for (const Term& t : by_size[static_cast<std::size_t>(sz)]) {
                    args.push_back(t);
                    build(o, remaining - sz, args, slot + 1, out);
                    args.pop_back();
                }
            }
        };
    for (int size = 2; size <= max_size; ++size) {
        for (const OpDecl& o : sig.ops()) {
            if (o.arity == 0 || o.arity > size - 1) continue;
            std::vector<Term> args;
            build(o, size - 1, args, 0, by_size[static_cast<std::size_t>(size)]);
        }
    }
    std::vector<Term> out;
    for (const auto& bucket : by_size)
        out.insert(out.end(), bucket.begin(), bucket.end());
    return out;
}

std::vector<Term> enumerate_elements(const Theory& T, int context, int size_bound,
                                     long long cap) {
    std::vector<Term> out;
    if (size_bound < 0) {
        auto count = T.backend()->element_count(context);
        if (!count)
            throw CapExceeded("free model on " + std::to_string(context) +
                              " generators is not finitely enumerable; use a size bound");
        if (*count > cap) throw CapExceeded("free model exceeds enumeration cap");
        return T.backend()->elements(context);
    }
    std::unordered_set<Term, TermHash> seen;
    for (const Term& t : enumerate_terms(T.signature(), context, size_bound)) {
        Term nf = T.normal_form(t, context);
        if (seen.insert(nf).second) {
            out.push_back(nf);
            if (static_cast<long long>(out.size()) > cap)
                throw CapExceeded("element enumeration cap exceeded");
        }
    }
    return out;
}

std::vector<FMor> hom_enumerate(TheoryPtr T, int m, int n, int size_bound,
                                long long cap) {
    std::vector<Term> elems = enumerate_elements(*T, n, size_bound, cap);
    // m-fold cartesian power, lexicographic
    double est = 1;
    for (int i = 0; i < m; ++i) est *= static_cast<double>(elems.size());
    if (est > static_cast<double>(cap))
        throw CapExceeded("hom-set enumeration cap exceeded");
    std::vector<FMor> out;
    if (m == 0) {
        out.push_back(FMor::make(T, 0, n, {}));
        return out;
    }
    if (elems.empty()) return out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
    for (;;) {
        std::vector<Term> comps;
        comps.reserve(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) comps.push_back(elems[idx[static_cast<std::size_t>(i)]]);
        out.push_back(FMor::make(T, m, n, std::move(comps)));
        int pos = m - 1;
        while (pos >= 0) {
            if (++idx[static_cast<std::size_t>(pos)] < elems.size()) break;
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

// ---- isomorphism search --------------------------------------------------------

IsoSearch is_iso(const FMor& f, int term_bound, long long cap) {
    const TheoryPtr& T = f.theory;
    int m = f.src, n = f.dst;
    IsoSearch result;

    bool exhaustive = false;
    std::vector<Term> pool;  // candidate inverse components: terms over ctx m
    if (auto count = T->backend()->element_count(m); count && *count <= cap) {
        pool = T->backend()->elements(m);
        exhaustive = true;
    } else {
        pool = enumerate_elements(*T, m, term_bound, cap);
    }
    result.status = exhaustive ? IsoSearch::NoInverseExhaustive
                               : IsoSearch::NoInverseWithinBound;

    // If normal forms can only be projections when the variable occurs, a
    // component of f missing some xj rules out any inverse.
    if (T->backend()->nf_projection_implies_var()) {
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (const Term& c : f.components) c.collect_vars(seen);
        for (bool b : seen)
            if (!b) return result;
    }

    // g with f o g = id factors per component: sol[j] holds candidates t with
    // t[f components] = x_j (as normal forms, so degenerate backends where
    // projections collapse still work). The joint condition g o f = id is
    // checked on combinations.
    std::vector<Term> proj_nf;
    for (int j = 1; j <= n; ++j) proj_nf.push_back(T->normal_form(Term::variable(j), n));
    std::vector<std::vector<Term>> sol(static_cast<std::size_t>(n));
    for (const Term& t : pool) {
        Term image = T->normal_form(substitute(t, f.components), n);
        for (int j = 0; j < n; ++j)
            if (image == proj_nf[static_cast<std::size_t>(j)])
                sol[static_cast<std::size_t>(j)].push_back(t);
    }
    for (const auto& s : sol)
        if (s.empty()) return result;

    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    long long combos = 0;
    for (;;) {
        if (++combos > cap) {
            result.status = IsoSearch::NoInverseWithinBound;
            return result;
        }
        std::vector<Term> comps;
        comps.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            comps.push_back(sol[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]]);
        FMor g = FMor::make(T, n, m, std::move(comps));
        if (compose(g, f) == identity(T, m)) {
            result.status = IsoSearch::FoundInverse;
            result.inverse = g;
            return result;
        }
        int pos = n - 1;
        while (pos >= 0) {
            if (++idx[static_cast<std::size_t>(pos)] <
                sol[static_cast<std::size_t>(pos)].size())
                break;
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return result;
}

// ---- theory morphisms -----------------------------------------------------------

Term TheoryMorphism::translate(const Term& t) const {
    if (t.is_variable()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(translate(a));
    auto it = assignment.find(t.op());
    if (it == assignment.end())
        throw TermError("theory morphism has no assignment for " + t.op());
    return substitute(it->second, args);
}

FMor TheoryMorphism::translate(const FMor& f) const {
    std::vector<Term> comps;
    comps.reserve(f.components.size());
    for (const Term& c : f.components) comps.push_back(translate(c));
    return FMor::make(target, f.src, f.dst, std::move(comps));
}

MorphismCheck check_theory_morphism(const TheoryMorphism& L) {
    MorphismCheck out;
    for (const OpDecl& o : L.source->signature().ops()) {
        auto it = L.assignment.find(o.name);
        if (it == L.assignment.end()) {
            out.message = "missing assignment for operation " + o.name;
            return out;
        }
        try {
            L.target->signature().check_term(it->second, o.arity);
        } catch (const TermError& e) {
            out.message = "assignment for " + o.name + " ill-formed: " + e.what();
            return out;
        }
    }
    for (const Equation& eq : L.source->presentation().equations) {
        Term l = L.translate(eq.lhs);
        Term r = L.translate(eq.rhs);
        if (!L.target->equal(l, r, eq.context)) {
            out.violated = eq;
            out.message = "translated equation fails: " + eq.lhs.str() + " = " +
                          eq.rhs.str();
            return out;
        }
    }
    out.valid = true;
    return out;
}

bool theory_morphisms_equal(const TheoryMorphism& a, const TheoryMorphism& b) {
    if (a.source != b.source || a.target != b.target)
        throw TermError("theory_morphisms_equal: different endpoints");
    for (const OpDecl& o : a.source->signature().ops()) {
        const Term& ta = a.assignment.at(o.name);
        const Term& tb = b.assignment.at(o.name);
        if (!a.target->equal(ta, tb, o.arity)) return false;
    }
    return true;
}

// ---- random sampling --------------------------------------------------------------

Term random_term(const Theory& T, int context, int max_size, std::mt19937_64& rng) {
    const Signature& sig = T.signature();
    std::vector<const OpDecl*> ops;
    for (const OpDecl& o : sig.ops()) ops.push_back(&o);
    std::vector<const OpDecl*> leaves;  // constants
    for (const OpDecl* o : ops)
        if (o->arity == 0) leaves.push_back(o);

    std::function<Term(int)> gen = [&](int budget) -> Term {
        std::vector<int> choices;  // 0..context-1 vars, then ops
        for (int i = 0; i < context; ++i) choices.push_back(i);
        for (std::size_t k = 0; k < ops.size(); ++k)
            if (ops[k]->arity == 0 || ops[k]->arity <= budget - 1)
                choices.push_back(context + static_cast<int>(k));
        if (choices.empty()) throw TermError("no terms exist in this context");
        int pick = choices[rng() % choices.size()];
        if (pick < context) return Term::variable(pick + 1);
        const OpDecl& o = *ops[static_cast<std::size_t>(pick - context)];
        if (o.arity == 0) return Term::apply(o.name);
        // split budget-1 across arguments
        std::vector<int> budgets(static_cast<std::size_t>(o.arity), 1);
        int spare = budget - 1 - o.arity;
        for (int i = 0; i < spare; ++i) ++budgets[rng() % budgets.size()];
        std::vector<Term> args;
        for (int b : budgets) args.push_back(gen(b));
        return Term::apply(o.name, std::move(args));
    };
    return gen(std::max(1, max_size));
}

FMor random_morphism(TheoryPtr T, int src, int dst, int max_size, std::mt19937_64& rng) {
    std::vector<Term> comps;
    for (int i = 0; i < src; ++i) comps.push_back(random_term(*T, dst, max_size, rng));
    return FMor::make(std::move(T), src, dst, std::move(comps));
}

}  // namespace lawkit
