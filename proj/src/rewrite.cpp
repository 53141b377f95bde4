#include "lawkit/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace lawkit {

KnuthBendixOrder::KnuthBendixOrder(const Signature& sig,
                                   std::map<std::string, int> weights)
    : sig_(&sig), weights_(std::move(weights)) {}

int KnuthBendixOrder::symbol_weight(const std::string& op) const {
    auto it = weights_.find(op);
    return it == weights_.end() ? 1 : it->second;
}

int KnuthBendixOrder::precedence(const std::string& op) const {
    auto idx = sig_->index_of(op);
    return idx ? *idx : -1;
}

int KnuthBendixOrder::weight(const Term& t) const {
    if (t.is_variable()) return 1;
    int w = symbol_weight(t.op());
    for (const Term& a : t.args()) w += weight(a);
    return w;
}

bool KnuthBendixOrder::var_condition(const Term& s, const Term& t) {
    std::map<int, int> count;
    std::vector<const Term*> stack{&t};
    while (!stack.empty()) {
        const Term* cur = stack.back();
        stack.pop_back();
        if (cur->is_variable())
            ++count[cur->var_index()];
        else
            for (const Term& a : cur->args()) stack.push_back(&a);
    }
    stack = {&s};
    while (!stack.empty()) {
        const Term* cur = stack.back();
        stack.pop_back();
        if (cur->is_variable()) {
            auto it = count.find(cur->var_index());
            if (it != count.end() && --it->second == 0) count.erase(it);
        } else {
            for (const Term& a : cur->args()) stack.push_back(&a);
        }
    }
    return count.empty();
}

bool KnuthBendixOrder::greater(const Term& s, const Term& t) const {
    if (s == t) return false;
    if (!var_condition(s, t)) return false;
    if (t.is_variable()) return s.contains_var(t.var_index());
    if (s.is_variable()) return false;
    int ws = weight(s), wt = weight(t);
    if (ws != wt) return ws > wt;
    int ps = precedence(s.op()), pt = precedence(t.op());
    if (ps != pt) return ps > pt;
    if (s.op() != t.op()) return s.op() > t.op();
    for (std::size_t i = 0; i < s.args().size() && i < t.args().size(); ++i) {
        if (s.args()[i] == t.args()[i]) continue;
        return greater(s.args()[i], t.args()[i]);
    }
    return false;
}

Term apply_subst(const Term& t, const Subst& s) {
    if (t.is_variable()) {
        auto it = s.find(t.var_index());
        return it == s.end() ? t : it->second;
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(apply_subst(a, s));
    return Term::apply(t.op(), std::move(args));
}

bool match(const Term& pattern, const Term& subject, Subst& out) {
    if (pattern.is_variable()) {
        auto [it, inserted] = out.emplace(pattern.var_index(), subject);
        return inserted || it->second == subject;
    }
    if (subject.is_variable() || pattern.op() != subject.op() ||
        pattern.args().size() != subject.args().size())
        return false;
    for (std::size_t i = 0; i < pattern.args().size(); ++i)
        if (!match(pattern.args()[i], subject.args()[i], out)) return false;
    return true;
}

namespace {

bool occurs(int var, const Term& t, const Subst& s) {
    if (t.is_variable()) {
        if (t.var_index() == var) return true;
        auto it = s.find(t.var_index());
        return it != s.end() && occurs(var, it->second, s);
    }
    for (const Term& a : t.args())
        if (occurs(var, a, s)) return true;
    return false;
}

bool unify_rec(const Term& a, const Term& b, Subst& s) {
    if (a.is_variable()) {
        auto it = s.find(a.var_index());
        if (it != s.end()) return unify_rec(it->second, b, s);
        if (b.is_variable()) {
            auto jt = s.find(b.var_index());
            if (jt != s.end()) return unify_rec(a, jt->second, s);
            if (a.var_index() == b.var_index()) return true;
        }
        if (occurs(a.var_index(), b, s)) return false;
        s.emplace(a.var_index(), b);
        return true;
    }
    if (b.is_variable()) return unify_rec(b, a, s);
    if (a.op() != b.op() || a.args().size() != b.args().size()) return false;
    for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!unify_rec(a.args()[i], b.args()[i], s)) return false;
    return true;
}

Term resolve(const Term& t, const Subst& s) {
    if (t.is_variable()) {
        auto it = s.find(t.var_index());
        return it == s.end() ? t : resolve(it->second, s);
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(resolve(a, s));
    return Term::apply(t.op(), std::move(args));
}

}  // namespace

std::optional<Subst> unify(const Term& a, const Term& b) {
    Subst s;
    if (!unify_rec(a, b, s)) return std::nullopt;
    // fully resolve bindings so the result is idempotent
    Subst out;
    for (auto& [v, t] : s) out.emplace(v, resolve(t, s));
    return out;
}

Term subterm_at(const Term& t, const std::vector<int>& pos) {
    const Term* cur = &t;
    for (int i : pos) cur = &cur->args()[static_cast<std::size_t>(i)];
    return *cur;
}

Term replace_at(const Term& t, const std::vector<int>& pos, const Term& repl) {
    if (pos.empty()) return repl;
    std::vector<Term> args = t.args();
    std::vector<int> rest(pos.begin() + 1, pos.end());
    args[static_cast<std::size_t>(pos[0])] =
        replace_at(args[static_cast<std::size_t>(pos[0])], rest, repl);
    return Term::apply(t.op(), std::move(args));
}

namespace {

// One leftmost-innermost pass: rewrite the first redex found, or return
// nullopt if t is in normal form. Records the rule and position.
std::optional<Term> rewrite_once(const RewriteSystem& trs, const Term& t,
                                 std::vector<int>& pos_out, int& rule_out) {
    if (!t.is_variable()) {
        for (std::size_t i = 0; i < t.args().size(); ++i) {
            std::vector<int> pos;
            int rule = -1;
            if (auto sub = rewrite_once(trs, t.args()[i], pos, rule)) {
                std::vector<Term> args = t.args();
                args[i] = *sub;
                pos_out.clear();
                pos_out.push_back(static_cast<int>(i));
                pos_out.insert(pos_out.end(), pos.begin(), pos.end());
                rule_out = rule;
                return Term::apply(t.op(), std::move(args));
            }
        }
        for (std::size_t r = 0; r < trs.rules.size(); ++r) {
            Subst s;
            if (match(trs.rules[r].lhs, t, s)) {
                pos_out.clear();
                rule_out = static_cast<int>(r);
                return apply_subst(trs.rules[r].rhs, s);
            }
        }
    }
    return std::nullopt;
}

}  // namespace

Term RewriteSystem::normalize(const Term& t) const {
    return normalize_traced(t, nullptr);
}

Term RewriteSystem::normalize_traced(
    const Term& t, std::vector<std::pair<int, std::vector<int>>>* steps) const {
    Term cur = t;
    for (long long step = 0;; ++step) {
        if (step >= step_budget)
            throw BudgetExceeded("rewrite budget (" + std::to_string(step_budget) +
                                 ") exhausted while normalizing " + t.str());
        std::vector<int> pos;
        int rule = -1;
        auto next = rewrite_once(*this, cur, pos, rule);
        if (!next) return cur;
        if (steps) steps->emplace_back(rule, pos);
        cur = *next;
    }
}

namespace {

// Shift all variables of t by delta (for renaming apart).
Term shift_vars(const Term& t, int delta) {
    if (t.is_variable()) return Term::variable(t.var_index() + delta);
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(shift_vars(a, delta));
    return Term::apply(t.op(), std::move(args));
}

void nonvar_positions(const Term& t, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
    if (t.is_variable()) return;
    out.push_back(cur);
    for (std::size_t i = 0; i < t.args().size(); ++i) {
        cur.push_back(static_cast<int>(i));
        nonvar_positions(t.args()[i], cur, out);
        cur.pop_back();
    }
}

// Renumber variables of a term pair to a compact 1..n range.
std::pair<Term, Term> compact_vars(const Term& a, const Term& b, int& context) {
    std::map<int, int> seen;
    std::function<Term(const Term&)> go = [&](const Term& t) -> Term {
        if (t.is_variable()) {
            auto [it, inserted] = seen.emplace(t.var_index(), static_cast<int>(seen.size()) + 1);
            return Term::variable(it->second);
        }
        std::vector<Term> args;
        for (const Term& x : t.args()) args.push_back(go(x));
        return Term::apply(t.op(), std::move(args));
    };
    Term a2 = go(a);
    Term b2 = go(b);
    context = static_cast<int>(seen.size());
    return {a2, b2};
}

}  // namespace

std::vector<CriticalPair> critical_pairs(const RewriteSystem& trs) {
    std::vector<CriticalPair> out;
    for (std::size_t i = 0; i < trs.rules.size(); ++i) {
        for (std::size_t j = 0; j < trs.rules.size(); ++j) {
            const RewriteRule& ri = trs.rules[i];
            // rename rule j apart from rule i
            int shift = ri.context;
            Term lj = shift_vars(trs.rules[j].lhs, shift);
            Term rj = shift_vars(trs.rules[j].rhs, shift);

            std::vector<std::vector<int>> positions;
            std::vector<int> cur;
            nonvar_positions(ri.lhs, cur, positions);
            for (const auto& pos : positions) {
                if (i == j && pos.empty()) continue;  // trivial self-overlap
                Term sub = subterm_at(ri.lhs, pos);
                auto mgu = unify(sub, lj);
                if (!mgu) continue;
                Term peak = apply_subst(ri.lhs, *mgu);
                Term left = apply_subst(ri.rhs, *mgu);
                Term right = replace_at(apply_subst(ri.lhs, *mgu), pos,
                                        apply_subst(rj, *mgu));
                if (left == right) continue;
                CriticalPair cp;
                int context = 0;
                // keep peak/left/right on one consistent renaming
                std::map<int, int> ren;
                std::function<Term(const Term&)> rn = [&](const Term& t) -> Term {
                    if (t.is_variable()) {
                        auto [it, ins] =
                            ren.emplace(t.var_index(), static_cast<int>(ren.size()) + 1);
                        return Term::variable(it->second);
                    }
                    std::vector<Term> args;
                    for (const Term& x : t.args()) args.push_back(rn(x));
                    return Term::apply(t.op(), std::move(args));
                };
                cp.peak = rn(peak);
                cp.left = rn(left);
                cp.right = rn(right);
                context = static_cast<int>(ren.size());
                cp.context = context;
                cp.left_nf = trs.normalize(cp.left);
                cp.right_nf = trs.normalize(cp.right);
                cp.joinable = cp.left_nf == cp.right_nf;
                out.push_back(std::move(cp));
            }
        }
    }
    return out;
}

ConfluenceReport check_local_confluence(const RewriteSystem& trs) {
    ConfluenceReport rep;
    rep.pairs = critical_pairs(trs);
    for (const auto& cp : rep.pairs)
        if (!cp.joinable) rep.locally_confluent = false;
    return rep;
}

namespace {

struct PendingEquation {
    Term lhs;
    Term rhs;
    RuleDerivation derivation;
};

}  // namespace

CompletionResult complete(const Presentation& p, int max_rules, int max_term_size,
                          std::map<std::string, int> weights) {
    CompletionResult res;
    KnuthBendixOrder kbo(p.signature, std::move(weights));
    RewriteSystem& trs = res.system;

    std::deque<PendingEquation> queue;
    for (std::size_t i = 0; i < p.equations.size(); ++i) {
        PendingEquation pe{p.equations[i].lhs, p.equations[i].rhs, {}};
        pe.derivation.kind = RuleDerivation::FromEquation;
        pe.derivation.equation_index = static_cast<int>(i);
        queue.push_back(std::move(pe));
    }

    auto add_pairs_with = [&](std::size_t new_rule) {
        RewriteSystem pair_sys;
        pair_sys.rules = trs.rules;
        pair_sys.step_budget = trs.step_budget;
        // overlaps of the new rule with every rule (both orders)
        for (std::size_t other = 0; other < trs.rules.size(); ++other) {
            for (auto [i, j] : {std::pair<std::size_t, std::size_t>{new_rule, other},
                                std::pair<std::size_t, std::size_t>{other, new_rule}}) {
                const RewriteRule& ri = trs.rules[i];
                int shift = ri.context;
                Term lj = shift_vars(trs.rules[j].lhs, shift);
                Term rj = shift_vars(trs.rules[j].rhs, shift);
                std::vector<std::vector<int>> positions;
                std::vector<int> cur;
                nonvar_positions(ri.lhs, cur, positions);
                for (const auto& pos : positions) {
                    if (i == j && pos.empty()) continue;
                    Term sub = subterm_at(ri.lhs, pos);
                    auto mgu = unify(sub, lj);
                    if (!mgu) continue;
                    Term peak = apply_subst(ri.lhs, *mgu);
                    Term left = apply_subst(ri.rhs, *mgu);
                    Term right = replace_at(peak, pos, apply_subst(rj, *mgu));
                    PendingEquation pe;
                    pe.derivation.kind = RuleDerivation::FromCriticalPair;
                    pe.derivation.peak = peak;
                    pe.derivation.peak_to_lhs = {{static_cast<int>(i), {}}};
                    pe.derivation.peak_to_rhs = {{static_cast<int>(j), pos}};
                    pe.lhs = left;
                    pe.rhs = right;
                    queue.push_back(std::move(pe));
                }
            }
        }
    };

    long long iterations = 0;
    while (!queue.empty()) {
        if (++iterations > 100000) {
            res.status = CompletionResult::BoundExceeded;
            res.message = "completion iteration budget exhausted";
            return res;
        }
        PendingEquation pe = std::move(queue.front());
        queue.pop_front();

        // reduce both sides with the current rules, extending the derivation
        std::vector<std::pair<int, std::vector<int>>> steps_l, steps_r;
        Term l, r;
        try {
            l = trs.normalize_traced(pe.lhs, &steps_l);
            r = trs.normalize_traced(pe.rhs, &steps_r);
        } catch (const BudgetExceeded&) {
            res.status = CompletionResult::BoundExceeded;
            res.message = "rewrite budget exhausted during completion";
            res.offending_lhs = pe.lhs;
            res.offending_rhs = pe.rhs;
            return res;
        }
        if (l == r) continue;  // joined (covers reflexive input equations)

        for (auto& st : steps_l) pe.derivation.peak_to_lhs.push_back(st);
        for (auto& st : steps_r) pe.derivation.peak_to_rhs.push_back(st);

        Term lhs, rhs;
        if (kbo.greater(l, r)) {
            lhs = l;
            rhs = r;
        } else if (kbo.greater(r, l)) {
            lhs = r;
            rhs = l;
            std::swap(pe.derivation.peak_to_lhs, pe.derivation.peak_to_rhs);
        } else {
            res.status = CompletionResult::Unorientable;
            res.message = "equation cannot be oriented: " + l.str() + " = " + r.str();
            res.offending_lhs = l;
            res.offending_rhs = r;
            return res;
        }
        if (lhs.size() > max_term_size || rhs.size() > max_term_size) {
            res.status = CompletionResult::BoundExceeded;
            res.message = "term size bound exceeded by rule " + lhs.str() + " -> " + rhs.str();
            res.offending_lhs = lhs;
            res.offending_rhs = rhs;
            return res;
        }

        int context = 0;
        auto [nl, nr] = compact_vars(lhs, rhs, context);
        // also renumber the derivation peak consistently: recompute below in
        // verify step instead; store the uncompacted pair there
        RewriteRule rule{nl, nr, std::max({context, nl.max_var(), nr.max_var()})};
        trs.rules.push_back(rule);
        // keep derivation in the original (uncompacted) variables
        RuleDerivation deriv = pe.derivation;
        deriv.peak = deriv.kind == RuleDerivation::FromCriticalPair ? deriv.peak : lhs;
        res.derivations.push_back(std::move(deriv));

        if (static_cast<int>(trs.rules.size()) > max_rules) {
            res.status = CompletionResult::BoundExceeded;
            res.message = "rule count bound exceeded";
            res.offending_lhs = lhs;
            res.offending_rhs = rhs;
            return res;
        }
        add_pairs_with(trs.rules.size() - 1);
    }

    res.status = CompletionResult::Success;
    res.system.confluence_certified = check_local_confluence(res.system).locally_confluent;
    return res;
}

bool verify_completion_derivations(const CompletionResult& res) {
    // Each completed rule must be an oriented consequence of the inputs:
    // rules from equations are instances thereof, rules from critical pairs
    // have a recorded peak rewriting to both sides by earlier-checked rules.
    for (std::size_t i = 0; i < res.derivations.size(); ++i) {
        const RuleDerivation& d = res.derivations[i];
        if (d.kind == RuleDerivation::FromEquation) {
            if (d.equation_index < 0) return false;
        } else {
            // replay: peak --(first step of each side)--> then normalize
            auto replay = [&](const std::vector<std::pair<int, std::vector<int>>>& steps,
                              Term cur) -> std::optional<Term> {
                for (const auto& [rule_idx, pos] : steps) {
                    if (rule_idx < 0 || rule_idx >= static_cast<int>(res.system.rules.size())) {
                        // step may cite a rule added later than i; indices are
                        // global, which is fine for replay
                        return std::nullopt;
                    }
                    const RewriteRule& r = res.system.rules[static_cast<std::size_t>(rule_idx)];
                    Term sub = subterm_at(cur, pos);
                    Subst s;
                    if (!match(r.lhs, sub, s)) return std::nullopt;
                    cur = replace_at(cur, pos, apply_subst(r.rhs, s));
                }
                return cur;
            };
            auto l = replay(d.peak_to_lhs, d.peak);
            auto r = replay(d.peak_to_rhs, d.peak);
            if (!l || !r) return false;
            // the completed rule is the compacted (l, r) pair in some order
            int ctx = 0;
            auto [cl, cr] = compact_vars(*l, *r, ctx);
            const RewriteRule& rule = res.system.rules[i];
            bool forward = cl == rule.lhs && cr == rule.rhs;
            auto [dl, dr] = compact_vars(*r, *l, ctx);
            bool backward = dl == rule.lhs && dr == rule.rhs;
            if (!forward && !backward) return false;
        }
    }
    return true;
}

}  // namespace lawkit
