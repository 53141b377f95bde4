#include "lawkit/kronecker.hpp"

#include "lawkit/finite_model.hpp"
#include "lawkit/linearize.hpp"

#include <algorithm>
#include <functional>

namespace lawkit {

namespace {

// The commutation equation for f (arity m) and g (arity n), over context m*n
// with row-major variables x_{(i-1)n+j}:
//   f(g(row 1), ..., g(row m)) = g(f(col 1), ..., f(col n))
// Degenerate arities produce the constant-compatibility equations.
Equation commutation_equation(const std::string& f, int m, const std::string& g, int n) {
    auto var = [&](int i, int j) { return Term::variable(i * n + j + 1); };
    Term lhs, rhs;
    {
        std::vector<Term> rows;
        for (int i = 0; i < m; ++i) {
            std::vector<Term> args;
            for (int j = 0; j < n; ++j) args.push_back(var(i, j));
            rows.push_back(Term::apply(g, std::move(args)));
        }
        lhs = Term::apply(f, std::move(rows));
    }
    {
        std::vector<Term> cols;
        for (int j = 0; j < n; ++j) {
            std::vector<Term> args;
            for (int i = 0; i < m; ++i) args.push_back(var(i, j));
            cols.push_back(Term::apply(f, std::move(args)));
        }
        rhs = Term::apply(g, std::move(cols));
    }
    return {lhs, rhs, m * n};
}

}  // namespace

Presentation kronecker_presentation(const Presentation& s, const Presentation& t,
                                    std::map<std::string, std::string>* rename_left,
                                    std::map<std::string, std::string>* rename_right) {
    bool collision = false;
    for (const OpDecl& o : s.signature.ops())
        if (t.signature.has(o.name)) collision = true;

    std::map<std::string, std::string> ren_l, ren_r;
    if (collision) {
        for (const OpDecl& o : s.signature.ops()) ren_l[o.name] = "L_" + o.name;
        for (const OpDecl& o : t.signature.ops()) ren_r[o.name] = "R_" + o.name;
    }
    auto left_name = [&](const std::string& n) { return rename_op(ren_l, n); };
    auto right_name = [&](const std::string& n) { return rename_op(ren_r, n); };

    Presentation p;
    p.name = s.name + "_x_" + t.name;
    for (const OpDecl& o : s.signature.ops()) p.signature.add(left_name(o.name), o.arity);
    for (const OpDecl& o : t.signature.ops()) p.signature.add(right_name(o.name), o.arity);
    for (const Equation& e : s.equations)
        p.equations.push_back({rename_ops(e.lhs, ren_l), rename_ops(e.rhs, ren_l), e.context});
    for (const Equation& e : t.equations)
        p.equations.push_back({rename_ops(e.lhs, ren_r), rename_ops(e.rhs, ren_r), e.context});
    for (const OpDecl& f : s.signature.ops())
        for (const OpDecl& g : t.signature.ops())
            p.equations.push_back(commutation_equation(left_name(f.name), f.arity,
                                                       right_name(g.name), g.arity));
    if (rename_left) *rename_left = std::move(ren_l);
    if (rename_right) *rename_right = std::move(ren_r);
    return p;
}

namespace {

TheoryMorphism embedding(TheoryPtr src, TheoryPtr combined,
                         const std::map<std::string, std::string>& ren) {
    TheoryMorphism L;
    L.source = std::move(src);
    L.target = std::move(combined);
    for (const OpDecl& o : L.source->signature().ops()) {
        std::vector<Term> vars;
        for (int i = 1; i <= o.arity; ++i) vars.push_back(Term::variable(i));
        L.assignment[o.name] = Term::apply(rename_op(ren, o.name), std::move(vars));
    }
    return L;
}

BackendPtr renamed_backend(const BackendPtr& b,
                           const std::map<std::string, std::string>& ren) {
    if (ren.empty()) return b;
    return b->renamed(ren);
}

// Backend synthesis for the combined theory. Falls back to bounded
// completion when no product backend is known.
BackendPtr synthesize_backend(const TheoryPtr& S, const TheoryPtr& T,
                              const Presentation& combined,
                              const std::map<std::string, std::string>& ren_l,
                              const std::map<std::string, std::string>& ren_r,
                              std::string& note) {
    const Backend* sb = S->backend().get();
    const Backend* tb = T->backend().get();

    if (S->signature().ops().empty()) {
        note = "left factor has no operations; reusing right backend";
        return renamed_backend(T->backend(), ren_r);
    }
    if (T->signature().ops().empty()) {
        note = "right factor has no operations; reusing left backend";
        return renamed_backend(S->backend(), ren_l);
    }

    auto* sg = dynamic_cast<const GSetTupleBackend*>(sb);
    auto* tg = dynamic_cast<const GSetTupleBackend*>(tb);
    if (sg && tg) {
        // G-sets (x) H-sets = (GxH)-sets
        FiniteGroup prod = FiniteGroup::direct_product(sg->group(), tg->group());
        std::map<std::string, int> ops;
        for (const auto& [name, g] : sg->op_elements())
            ops[rename_op(ren_l, name)] = g * tg->group().order + tg->group().identity();
        for (const auto& [name, h] : tg->op_elements())
            ops[rename_op(ren_r, name)] = sg->group().identity() * tg->group().order + h;
        note = "product of G-set backends";
        return std::make_shared<GSetTupleBackend>(std::move(prod), std::move(ops));
    }
    if (tg) {
        // expand the left backend over the right group's atoms
        std::map<std::string, int> gops;
        for (const auto& [name, h] : tg->op_elements()) gops[rename_op(ren_r, name)] = h;
        note = "left backend expanded over " + tg->group().name + "-set atoms";
        return std::make_shared<GSetExpansionBackend>(
            std::shared_ptr<Backend>(
                std::const_pointer_cast<Backend>(renamed_backend(S->backend(), ren_l))),
            tg->group(), std::move(gops));
    }
    if (sg) {
        std::map<std::string, int> gops;
        for (const auto& [name, g] : sg->op_elements()) gops[rename_op(ren_l, name)] = g;
        note = "right backend expanded over " + sg->group().name + "-set atoms";
        return std::make_shared<GSetExpansionBackend>(
            std::shared_ptr<Backend>(
                std::const_pointer_cast<Backend>(renamed_backend(T->backend(), ren_r))),
            sg->group(), std::move(gops));
    }

    auto leavitt_combo = [&](const Theory& ab, const Theory& cantor,
                             const std::map<std::string, std::string>& ren_ab,
                             const std::map<std::string, std::string>& ren_c,
                             int arity) -> BackendPtr {
        std::vector<std::string> nu;
        for (int i = 1; i <= arity; ++i)
            nu.push_back(rename_op(ren_c, "nu" + std::to_string(i)));
        (void)ab;
        (void)cantor;
        note = "Leavitt-module backend (linearized Cantor algebras)";
        return std::make_shared<LeavittMatrixBackend>(
            arity, rename_op(ren_ab, "add"), rename_op(ren_ab, "neg"),
            rename_op(ren_ab, "zero"), rename_op(ren_c, "mu"), std::move(nu));
    };
    auto* sl = dynamic_cast<const LinearBackend*>(sb);
    auto* tl = dynamic_cast<const LinearBackend*>(tb);
    auto* st = dynamic_cast<const TrsBackend*>(sb);
    auto* tt = dynamic_cast<const TrsBackend*>(tb);
    if (sl && sl->modulus() == 0 && tt && tt->cantor_arity() > 0)
        return leavitt_combo(*S, *T, ren_l, ren_r, tt->cantor_arity());
    if (tl && tl->modulus() == 0 && st && st->cantor_arity() > 0)
        return leavitt_combo(*T, *S, ren_r, ren_l, st->cantor_arity());

    if ((sl && sl->modulus() == 0) || (tl && tl->modulus() == 0)) {
        // linearization of a theory with a trivial coefficient ring
        const TheoryPtr& other = sl ? T : S;
        const auto& ren_ab = sl ? ren_l : ren_r;
        TrivialRingResult tr = detect_trivial_ring(other);
        if (tr.trivial) {
            note = "coefficient ring shown trivial; all free modules collapse";
            return std::make_shared<TrivialModuleBackend>(rename_op(ren_ab, "zero"));
        }
    }

    CompletionResult comp = complete(combined, 64, 60);
    if (comp.status == CompletionResult::Success) {
        note = "combined presentation completed (" +
               std::to_string(comp.system.rules.size()) + " rules)";
    } else {
        note = "bounded completion failed (" + comp.message +
               "); equality checks are budget-limited";
    }
    RewriteSystem trs = std::move(comp.system);
    if (comp.status != CompletionResult::Success) trs.confluence_certified = false;
    return std::make_shared<TrsBackend>(std::move(trs));
}

}  // namespace

KroneckerTheory kronecker(TheoryPtr S, TheoryPtr T) {
    KroneckerTheory kt;
    kt.left = S;
    kt.right = T;
    Presentation combined =
        kronecker_presentation(S->presentation(), T->presentation(), &kt.rename_left,
                               &kt.rename_right);
    BackendPtr backend =
        synthesize_backend(S, T, combined, kt.rename_left, kt.rename_right, kt.note);
    kt.combined = make_theory(std::move(combined), std::move(backend));
    kt.embed_left = embedding(S, kt.combined, kt.rename_left);
    kt.embed_right = embedding(T, kt.combined, kt.rename_right);

    bool lenient = !kt.combined->backend()->decides_equality();
    try {
        MorphismCheck cl = check_theory_morphism(kt.embed_left);
        MorphismCheck cr = check_theory_morphism(kt.embed_right);
        kt.embeddings_verified = cl.valid && cr.valid;
        if (!kt.embeddings_verified && !lenient)
            throw TermError("kronecker embedding failed verification: " +
                            (cl.valid ? cr.message : cl.message));
    } catch (const BudgetExceeded&) {
        kt.embeddings_verified = false;
        kt.note += "; embedding verification hit the rewrite budget";
    }
    return kt;
}

FMor times_left(int r, const FMor& f) {
    if (r < 0) throw TermError("times_left: negative multiplicity");
    std::vector<Term> comps;
    comps.reserve(static_cast<std::size_t>(r * f.src));
    for (int b = 0; b < r; ++b) {
        for (const Term& c : f.components) {
            std::function<Term(const Term&)> shift = [&](const Term& t) -> Term {
                if (t.is_variable()) return Term::variable(t.var_index() + b * f.dst);
                std::vector<Term> args;
                for (const Term& a : t.args()) args.push_back(shift(a));
                return Term::apply(t.op(), std::move(args));
            };
            comps.push_back(shift(c));
        }
    }
    return FMor::make(f.theory, r * f.src, r * f.dst, std::move(comps));
}

FMor times_right(const FMor& f, int r) {
    if (r < 0) throw TermError("times_right: negative multiplicity");
    std::vector<Term> comps;
    comps.reserve(static_cast<std::size_t>(f.src * r));
    for (int i = 0; i < f.src; ++i) {
        for (int j = 0; j < r; ++j) {
            std::function<Term(const Term&)> remap = [&](const Term& t) -> Term {
                if (t.is_variable())
                    return Term::variable((t.var_index() - 1) * r + j + 1);
                std::vector<Term> args;
                for (const Term& a : t.args()) args.push_back(remap(a));
                return Term::apply(t.op(), std::move(args));
            };
            comps.push_back(remap(f.components[static_cast<std::size_t>(i)]));
        }
    }
    return FMor::make(f.theory, f.src * r, f.dst * r, std::move(comps));
}

FMor block_transpose(TheoryPtr T, int m, int n) {
    std::vector<Term> comps(static_cast<std::size_t>(m * n), Term::variable(1));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            comps[static_cast<std::size_t>(i * n + j)] = Term::variable(j * m + i + 1);
    return FMor::make(std::move(T), m * n, n * m, std::move(comps));
}

BilinearWitness bilinear_witness(TheoryPtr S, TheoryPtr T) {
    return BilinearWitness{kronecker(std::move(S), std::move(T))};
}

BilinearWitness bilinear_witness(KroneckerTheory kt) { return BilinearWitness{std::move(kt)}; }

FMor embed_morphism(const KroneckerTheory& kt, const FMor& f, Side side) {
    const TheoryMorphism& L = side == Side::Left ? kt.embed_left : kt.embed_right;
    if (f.theory != L.source)
        throw TermError("embed_morphism: morphism does not live in the chosen factor");
    return L.translate(f);
}

FMor bilinear_on_morphisms(const BilinearWitness& W, const FMor& f, const FMor& g) {
    const KroneckerTheory& kt = W.kt;
    FMor fl = embed_morphism(kt, f, Side::Left);
    FMor gr = embed_morphism(kt, g, Side::Right);
    int m = f.src, m2 = f.dst, n = g.src, n2 = g.dst;
    FMor route1 = compose(times_right(fl, n2), times_left(m, gr));
    FMor route2 = compose(times_left(m2, gr), times_right(fl, n));
    if (route1 != route2)
        throw TermError("bilinear square violation on (" + f.str() + ", " + g.str() +
                        ")");
    return route1;
}

namespace {

FMor sample_morphism(TheoryPtr T, int arity_bound, int max_size, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        int src = static_cast<int>(rng() % static_cast<std::uint64_t>(arity_bound + 1));
        int dst = static_cast<int>(rng() % static_cast<std::uint64_t>(arity_bound)) + 1;
        try {
            return random_morphism(T, src, dst, max_size, rng);
        } catch (const TermError&) {
            continue;  // empty hom-set (no constants); resample
        }
    }
    throw TermError("could not sample a morphism in " + T->name());
}

// T_{m(n+n2)} -> T_{mn + m*n2}: row-major pairs split into two blocks.
FMor interleave_split(TheoryPtr T, int m, int n, int n2) {
    std::vector<Term> comps(static_cast<std::size_t>(m * (n + n2)), Term::variable(1));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n + n2; ++j) {
            int target = j < n ? i * n + j : m * n + i * n2 + (j - n);
            comps[static_cast<std::size_t>(i * (n + n2) + j)] =
                Term::variable(target + 1);
        }
    }
    return FMor::make(std::move(T), m * (n + n2), m * n + m * n2, std::move(comps));
}

FMor inverse_permutation(const FMor& p) {
    std::vector<Term> comps(static_cast<std::size_t>(p.dst), Term::variable(1));
    for (int i = 0; i < p.src; ++i) {
        const Term& c = p.components[static_cast<std::size_t>(i)];
        if (!c.is_variable()) throw TermError("not a permutation morphism");
        comps[static_cast<std::size_t>(c.var_index() - 1)] = Term::variable(i + 1);
    }
    return FMor::make(p.theory, p.dst, p.src, std::move(comps));
}

}  // namespace

BilinearReport check_bilinear_axioms(const BilinearWitness& W, int samples,
                                     int arity_bound, std::uint64_t seed) {
    BilinearReport rep;
    std::mt19937_64 rng(seed);
    const KroneckerTheory& kt = W.kt;
    const int max_size = 4;

    for (int s = 0; s < samples; ++s) {
        FMor f = sample_morphism(kt.left, arity_bound, max_size, rng);
        FMor g = sample_morphism(kt.right, arity_bound, max_size, rng);
        FMor f2 = sample_morphism(kt.left, arity_bound, max_size, rng);
        FMor g2 = sample_morphism(kt.right, arity_bound, max_size, rng);
        ++rep.pairs_checked;

        // (a) the commuting square defining P(f,g)
        bool square_ok = true;
        FMor pfg = FMor::make(kt.combined, 0, 0, {});
        try {
            pfg = bilinear_on_morphisms(W, f, g);
        } catch (const TermError&) {
            ++rep.square_failures;
            square_ok = false;
        }
        if (!square_ok) continue;

        // (b) distributivity: identity on objects, naturality in the left slot
        if ((f.src + f2.src) * g.src != f.src * g.src + f2.src * g.src ||
            (f.dst + f2.dst) * g.dst != f.dst * g.dst + f2.dst * g.dst) {
            ++rep.delta_failures;  // arithmetic identity; cannot fail
        } else {
            FMor lhs = bilinear_on_morphisms(W, coproduct(f, f2), g);
            FMor rhs = coproduct(pfg, bilinear_on_morphisms(W, f2, g));
            if (lhs != rhs) ++rep.delta_failures;
        }

        // (c) strong monoidality fixing the left argument: the right-slot
        // coproduct matches through the canonical interleaving permutation
        {
            FMor big = bilinear_on_morphisms(W, f, coproduct(g, g2));
            FMor small = coproduct(pfg, bilinear_on_morphisms(W, f, g2));
            FMor sigma_src = interleave_split(kt.combined, f.src, g.src, g2.src);
            FMor sigma_dst = interleave_split(kt.combined, f.dst, g.dst, g2.dst);
            FMor reshuffled =
                compose(inverse_permutation(sigma_dst), compose(small, sigma_src));
            if (big != reshuffled) ++rep.monoidality_failures;
        }
    }
    return rep;
}

CommutativityReport is_commutative_theory(TheoryPtr T, long long proof_budget,
                                          int model_size_bound) {
    CommutativityReport rep;
    const auto& ops = T->signature().ops();
    bool all_hold = true;
    bool any_unknown = false;
    for (const OpDecl& f : ops) {
        for (const OpDecl& g : ops) {
            CommutativityReport::PairEvidence ev;
            ev.op_left = f.name;
            ev.op_right = g.name;
            ev.equation = commutation_equation(f.name, f.arity, g.name, g.arity);
            try {
                ev.holds = T->equal(ev.equation.lhs, ev.equation.rhs, ev.equation.context);
            } catch (const BudgetExceeded&) {
                ev.holds = false;
                any_unknown = true;
            }
            all_hold = all_hold && ev.holds;
            rep.pairs.push_back(std::move(ev));
        }
    }
    if (all_hold) {
        rep.verdict = CommutativityVerdict::Commutative;
        return rep;
    }

    // hunt a finite model violating some commutation equation
    auto pres = std::make_shared<Presentation>(T->presentation());
    for (int k = 2; k <= model_size_bound; ++k) {
        EnumerationOptions opts;
        opts.node_budget = proof_budget * 1000;
        bool found = false;
        try {
            enumerate_models_cb(
                pres, k,
                [&](const FiniteModel& m) {
                    for (std::size_t pi = 0; pi < rep.pairs.size(); ++pi) {
                        const auto& ev = rep.pairs[pi];
                        if (ev.holds) continue;
                        int ctx = ev.equation.context;
                        std::vector<int> env(static_cast<std::size_t>(ctx), 0);
                        for (;;) {
                            if (m.eval_term(ev.equation.lhs, env) !=
                                m.eval_term(ev.equation.rhs, env)) {
                                rep.witness_model_size = k;
                                rep.witness_tables = m.tables;
                                rep.witness_assignment = env;
                                rep.witness_pair_index = static_cast<int>(pi);
                                found = true;
                                return false;
                            }
                            int pos = ctx - 1;
                            while (pos >= 0 && ++env[static_cast<std::size_t>(pos)] == k) {
                                env[static_cast<std::size_t>(pos)] = 0;
                                --pos;
                            }
                            if (pos < 0) break;
                        }
                    }
                    return true;
                },
                opts);
        } catch (const BudgetExceeded&) {
            rep.note += "model search at size " + std::to_string(k) + " hit its budget; ";
        }
        if (found) {
            rep.verdict = CommutativityVerdict::NonCommutative;
            rep.witness_kind = "finite-model";
            return rep;
        }
    }

    if (!any_unknown && T->backend()->decides_equality()) {
        // the backend separates the two sides in the free model itself
        rep.verdict = CommutativityVerdict::NonCommutative;
        rep.witness_kind = "normal-form-separation";
        rep.note += "no finite-model witness within size " +
                    std::to_string(model_size_bound) +
                    "; backend normal forms separate the sides";
        return rep;
    }
    rep.verdict = CommutativityVerdict::Inconclusive;
    return rep;
}

}  // namespace lawkit
