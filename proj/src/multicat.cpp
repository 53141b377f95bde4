#include "lawkit/multicat.hpp"

#include <numeric>

namespace lawkit {

// ---- M1 ---------------------------------------------------------------------

bool M1::valid(const std::vector<int>& sources, int target) {
    for (int s : sources)
        if (s != 0 && s != 1) return false;
    if (target == 0)
        return std::all_of(sources.begin(), sources.end(), [](int s) { return s == 0; });
    if (target != 1) return false;
    int ones = 0;
    for (int s : sources) ones += s == 1;
    return ones == 1;
}

M1Morphism M1::compose(const M1Morphism& f, const std::vector<M1Morphism>& gs) {
    if (!valid(f.sources, f.target)) throw TermError("M1: invalid outer morphism");
    if (gs.size() != f.sources.size()) throw TermError("M1: arity mismatch");
    M1Morphism out;
    out.target = f.target;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (!valid(gs[i].sources, gs[i].target)) throw TermError("M1: invalid inner morphism");
        if (gs[i].target != f.sources[i]) throw TermError("M1: object mismatch");
        out.sources.insert(out.sources.end(), gs[i].sources.begin(), gs[i].sources.end());
    }
    if (!M1::valid(out.sources, out.target))
        throw TermError("M1: composite is not a morphism");
    return out;
}

M1 m1() { return M1{}; }

M1AxiomReport check_m1_axioms(int arity_cap) {
    M1AxiomReport rep;
    // enumerate profiles up to the cap
    std::vector<M1Morphism> morphisms;
    std::vector<std::vector<int>> profiles{{}};
    for (int len = 1; len <= arity_cap; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& p : profiles)
            if (static_cast<int>(p.size()) == len - 1)
                for (int v : {0, 1}) {
                    auto q = p;
                    q.push_back(v);
                    next.push_back(q);
                }
        profiles.insert(profiles.end(), next.begin(), next.end());
    }
    for (const auto& p : profiles)
        for (int target : {0, 1})
            if (M1::valid(p, target)) morphisms.push_back({p, target});

    // closure under composition, unit laws, and associativity on all
    // composable tuples within the cap
    auto id_of = [](int obj) { return M1Morphism{{obj}, obj}; };
    for (const M1Morphism& f : morphisms) {
        // unit laws
        std::vector<M1Morphism> ids;
        for (int s : f.sources) ids.push_back(id_of(s));
        ++rep.checked;
        if (M1::compose(f, ids).sources != f.sources) ++rep.failures;
        ++rep.checked;
        M1Morphism via_outer = M1::compose(id_of(f.target), {f});
        if (via_outer.sources != f.sources || via_outer.target != f.target)
            ++rep.failures;
        // associativity: f o (g_i) o (h_ij) both ways, small composable picks
        if (f.sources.size() > 2) continue;
        for (const M1Morphism& g : morphisms) {
            if (f.sources.empty() || g.target != f.sources[0]) continue;
            if (static_cast<int>(g.sources.size()) +
                    static_cast<int>(f.sources.size()) - 1 >
                arity_cap)
                continue;
            std::vector<M1Morphism> gs{g};
            for (std::size_t i = 1; i < f.sources.size(); ++i)
                gs.push_back(id_of(f.sources[i]));
            M1Morphism left = M1::compose(f, gs);
            // re-associate: compose identities first, then g
            M1Morphism f_ids = M1::compose(f, [&] {
                std::vector<M1Morphism> v;
                for (int s : f.sources) v.push_back(id_of(s));
                return v;
            }());
            std::vector<M1Morphism> hs{g};
            for (std::size_t i = 1; i < f_ids.sources.size(); ++i)
                hs.push_back(id_of(f_ids.sources[i]));
            M1Morphism right = M1::compose(f_ids, hs);
            ++rep.checked;
            if (left.sources != right.sources || left.target != right.target)
                ++rep.failures;
        }
    }
    return rep;
}

// ---- U F_T -------------------------------------------------------------------

UnderlyingMulticategory::UnderlyingMulticategory(TheoryPtr T, int arity_cap,
                                                 int size_bound, long long hom_cap)
    : theory_(std::move(T)), arity_cap_(arity_cap), size_bound_(size_bound),
      hom_cap_(hom_cap) {}

std::vector<FMor> UnderlyingMulticategory::hom(const std::vector<int>& sources,
                                               int target) const {
    int total = std::accumulate(sources.begin(), sources.end(), 0);
    return hom_enumerate(theory_, total, target, size_bound_, hom_cap_);
}

FMor UnderlyingMulticategory::compose(const FMor& f, const std::vector<FMor>& gs) const {
    FMor block = gs.empty() ? identity(theory_, 0) : gs[0];
    for (std::size_t i = 1; i < gs.size(); ++i) block = coproduct(block, gs[i]);
    return lawkit::compose(f, block);
}

UnderlyingMulticategory underlying(TheoryPtr T, int arity_cap, int size_bound) {
    return UnderlyingMulticategory(std::move(T), arity_cap, size_bound);
}

// ---- module and coherence checks -----------------------------------------------

MulticatReport check_m1_module(TheoryPtr T, int arity_cap, int size_bound,
                               long long budget) {
    MulticatReport rep;
    UnderlyingMulticategory u = underlying(T, arity_cap, size_bound);
    // basepoint insertion at every position acts as the identity
    for (int c = 0; c <= arity_cap; ++c) {
        for (int n = 1; n <= arity_cap; ++n) {
            for (int pos = 0; pos < n; ++pos) {
                // profile (0,..,c,..,0) with c at pos: the canonical morphism
                // to c is the identity under strict units
                std::vector<int> profile(static_cast<std::size_t>(n), 0);
                profile[static_cast<std::size_t>(pos)] = c;
                FMor canonical = identity(T, c);  // T_0 + .. + T_c + .. + T_0 = T_c
                ++rep.checked;
                if (!is_identity(canonical)) ++rep.failures;
                // acting with it fixes every hom into c within the window
                for (const FMor& f : u.hom({c}, c)) {
                    if (--budget < 0) {
                        rep.exhaustive = false;
                        rep.note = "budget reached";
                        return rep;
                    }
                    std::vector<FMor> gs;
                    for (int i = 0; i < n; ++i)
                        gs.push_back(i == pos ? f : identity(T, 0));
                    FMor acted = u.compose(canonical, gs);
                    ++rep.checked;
                    if (acted != f) ++rep.failures;
                }
            }
        }
    }
    return rep;
}

MulticatReport check_multicat_composition(TheoryPtr T, int arity_cap, int size_bound,
                                          long long budget) {
    MulticatReport rep;
    UnderlyingMulticategory u = underlying(T, arity_cap, size_bound);
    // associativity/unit over all composable tuples in a small window:
    // f in U(c1,c2; d), g_i in U(b_i; c_i), h in U(a; b_1)
    for (int d = 0; d <= arity_cap; ++d) {
        for (int c1 = 0; c1 <= arity_cap; ++c1) {
            for (int c2 = 0; c2 <= arity_cap; ++c2) {
                std::vector<FMor> fs = u.hom({c1, c2}, d);
                for (const FMor& f : fs) {
                    // unit law
                    ++rep.checked;
                    if (u.compose(f, {identity(T, c1), identity(T, c2)}) != f)
                        ++rep.failures;
                    for (int b1 = 0; b1 <= arity_cap; ++b1) {
                        for (const FMor& g1 : u.hom({b1}, c1)) {
                            for (int a = 0; a <= arity_cap; ++a) {
                                for (const FMor& h : u.hom({a}, b1)) {
                                    if (--budget < 0) {
                                        rep.exhaustive = false;
                                        rep.note = "budget reached";
                                        return rep;
                                    }
                                    FMor g2 = identity(T, c2);
                                    // (f o (g1, id)) o (h, id) == f o ((g1 o h), id)
                                    FMor left = u.compose(u.compose(f, {g1, g2}),
                                                          {h, identity(T, c2)});
                                    FMor right =
                                        u.compose(f, {u.compose(g1, {h}), g2});
                                    ++rep.checked;
                                    if (left != right) ++rep.failures;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return rep;
}

MulticatReport check_unit_coherence(TheoryPtr T, int arity_cap, int size_bound,
                                    long long budget) {
    MulticatReport rep;
    BilinearWitness W = bilinear_witness(sets_theory(), T);
    // E (x) T has T's own presentation; P(id_1, f) must be f itself
    for (int m = 0; m <= arity_cap; ++m) {
        for (int n = 0; n <= arity_cap; ++n) {
            std::vector<FMor> fs;
            try {
                fs = hom_enumerate(T, m, n, size_bound);
            } catch (const CapExceeded&) {
                rep.exhaustive = false;
                continue;
            }
            for (const FMor& f : fs) {
                if (--budget < 0) {
                    rep.exhaustive = false;
                    rep.note = "budget reached";
                    return rep;
                }
                FMor image = bilinear_on_morphisms(W, identity(sets_theory(), 1), f);
                // compare against f transported into the combined theory
                FMor expected = W.kt.embed_right.translate(f);
                ++rep.checked;
                if (image != expected) ++rep.failures;
            }
        }
    }
    // basepoint form: each ((0..1..0) -> 1, id_{S_n}) acts as the identity
    for (int n = 0; n <= arity_cap; ++n) {
        // the corresponding E-morphism is the canonical T_1 -> T_1
        FMor unit_leg = identity(sets_theory(), 1);
        FMor image = bilinear_on_morphisms(W, unit_leg, identity(T, n));
        ++rep.checked;
        if (!is_identity(image)) ++rep.failures;
    }
    return rep;
}

namespace {

FMor sample_in(TheoryPtr T, int arity_bound, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        int src = static_cast<int>(rng() % static_cast<std::uint64_t>(arity_bound + 1));
        int dst = static_cast<int>(rng() % static_cast<std::uint64_t>(arity_bound)) + 1;
        try {
            return random_morphism(T, src, dst, 4, rng);
        } catch (const TermError&) {
        }
    }
    throw TermError("cannot sample morphisms in " + T->name());
}

}  // namespace

MulticatReport check_symmetry_square(TheoryPtr S, TheoryPtr T, int arity_cap,
                                     int samples, std::uint64_t seed) {
    MulticatReport rep;
    rep.exhaustive = false;
    BilinearWitness st = bilinear_witness(S, T);
    BilinearWitness ts = bilinear_witness(T, S);

    // swap: S (x) T -> T (x) S, each operation to itself modulo renaming
    TheoryMorphism swap;
    swap.source = st.kt.combined;
    swap.target = ts.kt.combined;
    auto invert = [](const std::map<std::string, std::string>& ren) {
        std::map<std::string, std::string> inv;
        for (const auto& [a, b] : ren) inv[b] = a;
        return inv;
    };
    auto st_l = invert(st.kt.rename_left), st_r = invert(st.kt.rename_right);
    for (const OpDecl& o : st.kt.combined->signature().ops()) {
        std::vector<Term> vars;
        for (int i = 1; i <= o.arity; ++i) vars.push_back(Term::variable(i));
        std::string target_name;
        if (auto it = st_l.find(o.name); it != st_l.end())
            target_name = rename_op(ts.kt.rename_right, it->second);  // from S
        else if (auto it2 = st_r.find(o.name); it2 != st_r.end())
            target_name = rename_op(ts.kt.rename_left, it2->second);  // from T
        else if (S->signature().has(o.name))
            target_name = rename_op(ts.kt.rename_right, o.name);
        else
            target_name = rename_op(ts.kt.rename_left, o.name);
        swap.assignment[o.name] = Term::apply(target_name, std::move(vars));
    }

    auto check_pair = [&](const FMor& f, const FMor& g) {
        // swap(P_{S,T}(f,g)) conjugated by block transpositions equals
        // P_{T,S}(g,f)
        FMor p_st = bilinear_on_morphisms(st, f, g);
        FMor p_ts = bilinear_on_morphisms(ts, g, f);
        FMor swapped = swap.translate(p_st);
        // p_ts is indexed (g,f)-major while swapped is (f,g)-major; conjugate
        // by the block transpositions to compare
        FMor tau_dst = block_transpose(ts.kt.combined, f.dst, g.dst);
        FMor tau_src_inv = block_transpose(ts.kt.combined, g.src, f.src);
        FMor conj = compose(tau_dst, compose(swapped, tau_src_inv));
        ++rep.checked;
        if (conj != p_ts) ++rep.failures;
    };

    // generator-paired forms (f, id) and (id, g)
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        FMor f = sample_in(S, arity_cap, rng);
        FMor g = sample_in(T, arity_cap, rng);
        check_pair(f, identity(T, g.src));
        check_pair(identity(S, f.src), g);
        check_pair(f, g);
    }
    return rep;
}

MulticatReport check_associativity(TheoryPtr S, TheoryPtr T, TheoryPtr V,
                                   int arity_cap, int samples, std::uint64_t seed) {
    MulticatReport rep;
    rep.exhaustive = false;
    // (S x T) x V and S x (T x V); both iterated maps land in a combined
    // theory over the same operation set
    BilinearWitness st = bilinear_witness(S, T);
    BilinearWitness st_v = bilinear_witness(st.kt.combined, V);
    BilinearWitness tv = bilinear_witness(T, V);
    BilinearWitness s_tv = bilinear_witness(S, tv.kt.combined);

    // operation-wise identification ((S x T) x V) -> (S x (T x V)): trace
    // each operation back to its factor of origin, then forward through the
    // right-nested renames
    auto unrename = [](const std::map<std::string, std::string>& ren,
                       const std::string& n) -> std::optional<std::string> {
        if (ren.empty()) return std::nullopt;
        for (const auto& [a, b] : ren)
            if (b == n) return a;
        return std::nullopt;
    };
    TheoryMorphism ident;
    ident.source = st_v.kt.combined;
    ident.target = s_tv.kt.combined;
    for (const OpDecl& o : st_v.kt.combined->signature().ops()) {
        std::vector<Term> vars;
        for (int i = 1; i <= o.arity; ++i) vars.push_back(Term::variable(i));
        // peel the outer layer: does o come from S (x) T or from V?
        int origin;  // 0 = S, 1 = T, 2 = V
        std::string base;
        std::string outer = o.name;
        if (auto u = unrename(st_v.kt.rename_right, outer);
            u || (st_v.kt.rename_right.empty() && V->signature().has(outer) &&
                  !st.kt.combined->signature().has(outer))) {
            origin = 2;
            base = u ? *u : outer;
        } else {
            std::string mid = outer;
            if (auto u2 = unrename(st_v.kt.rename_left, outer)) mid = *u2;
            if (auto u3 = unrename(st.kt.rename_right, mid);
                u3 || (st.kt.rename_right.empty() && T->signature().has(mid) &&
                       !S->signature().has(mid))) {
                origin = 1;
                base = u3 ? *u3 : mid;
            } else {
                origin = 0;
                base = mid;
                if (auto u4 = unrename(st.kt.rename_left, mid)) base = *u4;
            }
        }
        std::string target_name;
        if (origin == 0) {
            target_name = rename_op(s_tv.kt.rename_left, base);
        } else {
            std::string in_tv = origin == 1 ? rename_op(tv.kt.rename_left, base)
                                            : rename_op(tv.kt.rename_right, base);
            target_name = rename_op(s_tv.kt.rename_right, in_tv);
        }
        if (!s_tv.kt.combined->signature().has(target_name))
            throw TermError("associativity check: cannot align operation " + o.name);
        ident.assignment[o.name] = Term::apply(target_name, std::move(vars));
    }

    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        FMor f = sample_in(S, arity_cap, rng);
        FMor g = sample_in(T, arity_cap, rng);
        FMor h = sample_in(V, arity_cap, rng);
        FMor left = bilinear_on_morphisms(st_v, bilinear_on_morphisms(st, f, g), h);
        FMor right = bilinear_on_morphisms(s_tv, f, bilinear_on_morphisms(tv, g, h));
        ++rep.checked;
        if (ident.translate(left) != right) ++rep.failures;
    }
    return rep;
}

}  // namespace lawkit
