// Linearization and trivial-ring detection.
//
// The detection follows the constant-collision pattern: the Kronecker
// presentation of Z (x) T identifies every T-constant with the additive
// zero, so two distinct T-constants collapse. A bounded equational search
// then tries to rewrite the free generator x1 into a constant, using the
// theory's own equations, the collapse, and a small library of auxiliary
// lemmas proved first. Every step is recorded and replayable.

#include "lawkit/linearize.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace lawkit {

bool replay_derivation(const Presentation& p, const Derivation& d) {
    if (d.terms.size() != d.steps.size() + 1) return false;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const DerivationStep& st = d.steps[i];
        if (st.equation_index < 0 ||
            st.equation_index >= static_cast<int>(p.equations.size()))
            return false;
        const Equation& eq = p.equations[static_cast<std::size_t>(st.equation_index)];
        const Term& from_side = st.forward ? eq.lhs : eq.rhs;
        const Term& to_side = st.forward ? eq.rhs : eq.lhs;
        Term sub = subterm_at(d.terms[i], st.position);
        if (apply_subst(from_side, st.binding) != sub) return false;
        if (replace_at(d.terms[i], st.position, apply_subst(to_side, st.binding)) !=
            d.terms[i + 1])
            return false;
    }
    return true;
}

Linearization linearize(TheoryPtr T) {
    Linearization lin;
    lin.kt = kronecker(ab_theory(), std::move(T));
    lin.linearization = lin.kt.embed_right;
    return lin;
}

namespace {

// One rewrite move: where it happened and how the equation was instantiated.
struct Move {
    DerivationStep step;
    Term result;
};

void all_positions(const Term& t, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
    out.push_back(cur);
    if (t.is_variable()) return;
    for (std::size_t i = 0; i < t.args().size(); ++i) {
        cur.push_back(static_cast<int>(i));
        all_positions(t.args()[i], cur, out);
        cur.pop_back();
    }
}

void collect_vars_of(const Term& t, std::vector<int>& out) {
    if (t.is_variable()) {
        if (std::find(out.begin(), out.end(), t.var_index()) == out.end())
            out.push_back(t.var_index());
        return;
    }
    for (const Term& a : t.args()) collect_vars_of(a, out);
}

void subterms_of(const Term& t, std::vector<Term>& out) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    if (!t.is_variable())
        for (const Term& a : t.args()) subterms_of(a, out);
}

// Generates every one-step rewrite of t by the given equations (with
// directions), filling unbound variables from a small instantiation pool.
std::vector<Move> moves_of(const Term& t, const std::vector<Equation>& eqs,
                           const std::vector<int>& eq_indices,
                           const std::vector<Term>& extra_pool, int size_cap) {
    std::vector<Move> out;
    std::vector<Term> pool;
    subterms_of(t, pool);
    for (const Term& e : extra_pool)
        if (std::find(pool.begin(), pool.end(), e) == pool.end()) pool.push_back(e);

    std::vector<std::vector<int>> positions;
    std::vector<int> cur;
    all_positions(t, cur, positions);

    for (std::size_t ei = 0; ei < eqs.size(); ++ei) {
        const Equation& eq = eqs[ei];
        for (bool forward : {true, false}) {
            const Term& from = forward ? eq.lhs : eq.rhs;
            const Term& to = forward ? eq.rhs : eq.lhs;
            std::vector<int> from_vars, to_vars;
            collect_vars_of(from, from_vars);
            collect_vars_of(to, to_vars);
            std::vector<int> unbound;
            for (int v : to_vars)
                if (std::find(from_vars.begin(), from_vars.end(), v) == from_vars.end())
                    unbound.push_back(v);
            if (unbound.size() > 2) continue;
            for (const auto& pos : positions) {
                Term sub = subterm_at(t, pos);
                Subst binding;
                if (!match(from, sub, binding)) continue;
                // enumerate pool choices for unbound variables of the target
                std::vector<std::size_t> pick(unbound.size(), 0);
                for (;;) {
                    Subst full = binding;
                    for (std::size_t u = 0; u < unbound.size(); ++u)
                        full[unbound[u]] = pool[pick[u]];
                    Term replaced = replace_at(t, pos, apply_subst(to, full));
                    if (replaced.size() <= size_cap && replaced != t) {
                        Move mv;
                        mv.step.equation_index = eq_indices[ei];
                        mv.step.forward = forward;
                        mv.step.position = pos;
                        mv.step.binding = full;
                        mv.result = replaced;
                        out.push_back(std::move(mv));
                    }
                    if (unbound.empty()) break;
                    std::size_t u = 0;
                    while (u < unbound.size() && ++pick[u] == pool.size()) {
                        pick[u] = 0;
                        ++u;
                    }
                    if (u == unbound.size()) break;
                }
            }
        }
    }
    return out;
}

// Breadth-first equational search from `start` until `goal` returns true.
// Returns the chain of terms and steps on success.
struct SearchResult {
    bool found = false;
    std::vector<Term> terms;
    std::vector<DerivationStep> steps;
};

SearchResult bfs_search(const Term& start, const std::function<bool(const Term&)>& goal,
                        const std::vector<Equation>& eqs,
                        const std::vector<int>& eq_indices,
                        const std::vector<Term>& extra_pool, int size_cap,
                        long long budget) {
    SearchResult res;
    struct Parent {
        Term from;
        DerivationStep step;
    };
    std::unordered_map<Term, Parent, TermHash> parent;
    std::unordered_set<Term, TermHash> seen{start};
    std::deque<Term> queue{start};

    auto reconstruct = [&](Term end) {
        std::vector<Term> chain{end};
        std::vector<DerivationStep> steps;
        Term cur = end;
        while (cur != start) {
            const Parent& p = parent.at(cur);
            steps.push_back(p.step);
            chain.push_back(p.from);
            cur = p.from;
        }
        std::reverse(chain.begin(), chain.end());
        std::reverse(steps.begin(), steps.end());
        res.found = true;
        res.terms = std::move(chain);
        res.steps = std::move(steps);
    };

    if (goal(start)) {
        reconstruct(start);
        return res;
    }
    long long expanded = 0;
    while (!queue.empty()) {
        if (++expanded > budget) return res;
        Term t = queue.front();
        queue.pop_front();
        for (Move& mv : moves_of(t, eqs, eq_indices, extra_pool, size_cap)) {
            if (seen.count(mv.result)) continue;
            seen.insert(mv.result);
            parent.emplace(mv.result, Parent{t, mv.step});
            if (goal(mv.result)) {
                reconstruct(mv.result);
                return res;
            }
            queue.push_back(mv.result);
        }
    }
    return res;
}

// A proven auxiliary equation together with its derivation (in the same
// equation indexing as the main search).
struct Lemma {
    Term lhs;
    Term rhs;
    std::vector<Term> chain;
    std::vector<DerivationStep> steps;
};

// Substitutes the lemma chain into an outer context: the chain rewrites
// O[pos <- lhs sigma] into O[pos <- rhs sigma] step by step.
void inline_lemma(const Lemma& lm, bool forward, const Term& outer,
                  const std::vector<int>& pos, const Subst& sigma,
                  std::vector<Term>& terms_out, std::vector<DerivationStep>& steps_out) {
    std::vector<Term> chain = lm.chain;
    std::vector<DerivationStep> steps = lm.steps;
    if (!forward) {
        std::reverse(chain.begin(), chain.end());
        std::reverse(steps.begin(), steps.end());
        // reversing a step swaps its direction; positions/bindings stay
        for (auto& st : steps) st.forward = !st.forward;
    }
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        DerivationStep st = steps[i];
        std::vector<int> full_pos = pos;
        full_pos.insert(full_pos.end(), st.position.begin(), st.position.end());
        Subst composed;
        for (const auto& [v, t] : st.binding) composed[v] = apply_subst(t, sigma);
        st.position = std::move(full_pos);
        st.binding = std::move(composed);
        Term next = replace_at(outer, pos, apply_subst(chain[i + 1], sigma));
        steps_out.push_back(std::move(st));
        terms_out.push_back(next);
    }
}

}  // namespace

TrivialRingResult detect_trivial_ring(TheoryPtr T, long long budget) {
    TrivialRingResult out;
    TheoryPtr ab = ab_theory();
    std::map<std::string, std::string> ren_l, ren_r;
    out.combined = kronecker_presentation(ab->presentation(), T->presentation(), &ren_l,
                                          &ren_r);

    std::vector<std::string> constants = T->signature().constants();
    if (constants.size() < 2) {
        out.reason = "fewer than two constants; constant-collision pattern does not apply";
        return out;
    }

    // Work in the theory's own naming; rename into the combined presentation
    // at the end. The T-equations sit after the additive ones.
    const auto& t_eqs = T->presentation().equations;
    int t_offset = static_cast<int>(ab->presentation().equations.size());
    std::vector<Equation> eqs = t_eqs;
    std::vector<int> indices;
    for (std::size_t i = 0; i < t_eqs.size(); ++i)
        indices.push_back(t_offset + static_cast<int>(i));

    // the collapse c = d as a pseudo-equation; justified through the
    // commutation axioms zero() = c() of the combined presentation
    const std::string& c_name = constants[0];
    std::vector<Term> const_terms;
    for (const auto& c : constants) const_terms.push_back(Term::apply(c));
    for (std::size_t i = 1; i < constants.size(); ++i) {
        eqs.push_back({Term::apply(c_name), Term::apply(constants[i]), 0});
        indices.push_back(-static_cast<int>(i));  // marker, expanded below
    }

    // lemma candidates: unit-, absorption- and idempotence-shaped equations
    std::vector<std::pair<Term, Term>> candidates;
    for (const OpDecl& o : T->signature().ops()) {
        if (o.arity != 2) continue;
        Term x = Term::variable(1);
        for (const auto& c : constants) {
            Term tc = Term::apply(c);
            for (const Term& target : const_terms) {
                candidates.emplace_back(Term::apply(o.name, {tc, x}), target);
                candidates.emplace_back(Term::apply(o.name, {x, tc}), target);
            }
            candidates.emplace_back(Term::apply(o.name, {tc, x}), x);
            candidates.emplace_back(Term::apply(o.name, {x, tc}), x);
        }
        candidates.emplace_back(Term::apply(o.name, {x, x}), x);
    }

    std::vector<Lemma> lemmas;
    std::vector<Equation> lemma_eqs;   // as additional rewrite edges
    std::vector<int> lemma_indices;    // -1000 - lemma id
    auto lemma_pool = const_terms;
    lemma_pool.push_back(Term::variable(1));

    for (int round = 0; round < 2; ++round) {
        std::vector<Equation> all_eqs = eqs;
        std::vector<int> all_idx = indices;
        for (std::size_t li = 0; li < lemma_eqs.size(); ++li) {
            all_eqs.push_back(lemma_eqs[li]);
            all_idx.push_back(lemma_indices[li]);
        }
        for (const auto& [u, v] : candidates) {
            bool already = false;
            for (const Lemma& lm : lemmas)
                already = already || (lm.lhs == u && lm.rhs == v);
            if (already) continue;
            bool holds = false;
            try {
                holds = T->equal(u, v, 1);
            } catch (const BudgetExceeded&) {
                continue;
            }
            if (!holds) continue;
            int cap = std::max(u.size(), v.size()) + 5;
            SearchResult sr = bfs_search(
                u, [&](const Term& t) { return t == v; }, all_eqs, all_idx, lemma_pool,
                cap, budget / 8);
            if (sr.found) {
                Lemma lm{u, v, sr.terms, sr.steps};
                lemmas.push_back(lm);
                lemma_eqs.push_back({u, v, 1});
                lemma_indices.push_back(-1000 - static_cast<int>(lemmas.size() - 1));
            }
        }
    }

    // main search: rewrite the free generator into a constant
    std::vector<Equation> all_eqs = eqs;
    std::vector<int> all_idx = indices;
    for (std::size_t li = 0; li < lemma_eqs.size(); ++li) {
        all_eqs.push_back(lemma_eqs[li]);
        all_idx.push_back(lemma_indices[li]);
    }
    SearchResult main = bfs_search(
        Term::variable(1),
        [](const Term& t) { return !t.is_variable() && t.args().empty(); }, all_eqs,
        all_idx, lemma_pool, 9, budget);
    if (!main.found) {
        out.reason = "bounded search found no collapse derivation";
        return out;
    }

    // expand lemma and collapse steps into base steps over T's equations,
    // all still in T's naming
    std::function<void(const std::vector<Term>&, const std::vector<DerivationStep>&,
                       std::vector<Term>&, std::vector<DerivationStep>&)>
        expand = [&](const std::vector<Term>& terms,
                     const std::vector<DerivationStep>& steps, std::vector<Term>& ts,
                     std::vector<DerivationStep>& ss) {
            for (std::size_t i = 0; i < steps.size(); ++i) {
                const DerivationStep& st = steps[i];
                if (st.equation_index <= -1000) {
                    const Lemma& lm =
                        lemmas[static_cast<std::size_t>(-st.equation_index - 1000)];
                    std::vector<Term> sub_ts;
                    std::vector<DerivationStep> sub_ss;
                    inline_lemma(lm, st.forward, terms[i], st.position, st.binding,
                                 sub_ts, sub_ss);
                    std::vector<Term> inner_terms{terms[i]};
                    inner_terms.insert(inner_terms.end(), sub_ts.begin(), sub_ts.end());
                    expand(inner_terms, sub_ss, ts, ss);
                } else {
                    ss.push_back(st);
                    ts.push_back(terms[i + 1]);
                }
            }
        };
    std::vector<Term> flat_terms{main.terms.front()};
    std::vector<DerivationStep> flat_steps;
    expand(main.terms, main.steps, flat_terms, flat_steps);

    // rename into the combined presentation and expand collapse markers into
    // the two commutation steps c -> zero -> d
    auto find_collapse_eq = [&](const std::string& const_name) -> int {
        Term zero = Term::apply(rename_op(ren_l, "zero"));
        Term c = Term::apply(rename_op(ren_r, const_name));
        for (std::size_t i = 0; i < out.combined.equations.size(); ++i) {
            const Equation& e = out.combined.equations[i];
            if (e.lhs == zero && e.rhs == c) return static_cast<int>(i);
        }
        throw TermError("missing commutation equation for constant " + const_name);
    };

    Derivation d;
    d.context = 1;
    d.terms.push_back(rename_ops(flat_terms[0], ren_r));
    for (std::size_t i = 0; i < flat_steps.size(); ++i) {
        const DerivationStep& st = flat_steps[i];
        Term to = rename_ops(flat_terms[i + 1], ren_r);
        if (st.equation_index < 0) {
            // collapse c_name = constants[k]: via zero() = c() axioms
            int k = -st.equation_index;
            int eq_c = find_collapse_eq(c_name);
            int eq_d = find_collapse_eq(constants[static_cast<std::size_t>(k)]);
            Term from = d.terms.back();
            // forward: c -> d; backward: d -> c
            int first = st.forward ? eq_c : eq_d;
            int second = st.forward ? eq_d : eq_c;
            Term zero = Term::apply(rename_op(ren_l, "zero"));
            Term mid = replace_at(from, st.position, zero);
            d.steps.push_back({first, false, st.position, {}});
            d.terms.push_back(mid);
            d.steps.push_back({second, true, st.position, {}});
            d.terms.push_back(to);
        } else {
            DerivationStep ren_st = st;
            Subst b;
            for (const auto& [v, t] : st.binding) b[v] = rename_ops(t, ren_r);
            ren_st.binding = std::move(b);
            d.steps.push_back(std::move(ren_st));
            d.terms.push_back(to);
        }
    }
    // final leg: the reached constant equals the additive zero
    {
        const Term& last = d.terms.back();
        std::string cname;
        for (const auto& c : constants)
            if (Term::apply(rename_op(ren_r, c)) == last) cname = c;
        if (cname.empty()) throw TermError("collapse derivation ended off a constant");
        int eq = find_collapse_eq(cname);
        d.steps.push_back({eq, false, {}, {}});
        d.terms.push_back(Term::apply(rename_op(ren_l, "zero")));
    }

    if (!replay_derivation(out.combined, d))
        throw TermError("internal error: collapse derivation does not replay");
    out.trivial = true;
    out.derivation = std::move(d);
    return out;
}

}  // namespace lawkit
