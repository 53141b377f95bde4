#include "lawkit/backend.hpp"

#include "lawkit/linearize.hpp"

#include <algorithm>
#include <functional>

namespace lawkit {

std::vector<Term> Backend::elements(int) const {
    throw CapExceeded("backend '" + kind() + "' has no finite element enumeration");
}

std::string rename_op(const std::map<std::string, std::string>& ren,
                      const std::string& name) {
    auto it = ren.find(name);
    return it == ren.end() ? name : it->second;
}

Term rename_ops(const Term& t, const std::map<std::string, std::string>& ren) {
    if (t.is_variable()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(rename_ops(a, ren));
    return Term::apply(rename_op(ren, t.op()), std::move(args));
}

// ---- TrsBackend ----------------------------------------------------------

std::shared_ptr<Backend> TrsBackend::renamed(
    const std::map<std::string, std::string>& ren) const {
    RewriteSystem trs = trs_;
    for (RewriteRule& r : trs.rules) {
        r.lhs = rename_ops(r.lhs, ren);
        r.rhs = rename_ops(r.rhs, ren);
    }
    return std::make_shared<TrsBackend>(std::move(trs), cantor_arity_);
}

// ---- TruthTableBackend ----------------------------------------------------

std::vector<bool> TruthTableBackend::table(const Term& t, int context) const {
    if (context > 20) throw CapExceeded("truth-table context too large");
    std::size_t rows = std::size_t{1} << context;
    std::vector<bool> out(rows);
    for (std::size_t row = 0; row < rows; ++row) {
        // bit i of row = value of x_{i+1}
        std::function<bool(const Term&)> ev = [&](const Term& u) -> bool {
            if (u.is_variable()) return (row >> (u.var_index() - 1)) & 1;
            if (u.op() == and_) return ev(u.args()[0]) && ev(u.args()[1]);
            if (u.op() == or_) return ev(u.args()[0]) || ev(u.args()[1]);
            if (u.op() == not_) return !ev(u.args()[0]);
            if (u.op() == bot_) return false;
            if (u.op() == top_) return true;
            throw TermError("unknown boolean operation: " + u.op());
        };
        out[row] = ev(t);
    }
    return out;
}

Term TruthTableBackend::term_of_table(const std::vector<bool>& tab, int context) const {
    bool any = false, all = true;
    for (bool b : tab) {
        any = any || b;
        all = all && b;
    }
    if (!any) return Term::apply(bot_);
    if (all && context >= 0) {
        // constant-1 function
        if (std::all_of(tab.begin(), tab.end(), [](bool b) { return b; }))
            return Term::apply(top_);
    }
    // full DNF: one minterm per true row, or-chained right-associatively
    std::vector<Term> minterms;
    for (std::size_t row = 0; row < tab.size(); ++row) {
        if (!tab[row]) continue;
        Term m = Term::variable(1);  // placeholder
        bool have = false;
        for (int i = context - 1; i >= 0; --i) {
            Term lit = (row >> i) & 1 ? Term::variable(i + 1)
                                      : Term::apply(not_, {Term::variable(i + 1)});
            m = have ? Term::apply(and_, {lit, m}) : lit;
            have = true;
        }
        minterms.push_back(m);
    }
    Term out = minterms.back();
    for (auto it = minterms.rbegin() + 1; it != minterms.rend(); ++it)
        out = Term::apply(or_, {*it, out});
    return out;
}

Term TruthTableBackend::normal_form(const Term& t, int context) const {
    return term_of_table(table(t, context), context);
}

std::optional<long long> TruthTableBackend::element_count(int context) const {
    if (context > 5) return std::nullopt;  // 2^(2^n) beyond practical use
    return 1LL << (1LL << context);
}

std::vector<Term> TruthTableBackend::elements(int context) const {
    auto count = element_count(context);
    if (!count) throw CapExceeded("free Boolean algebra too large to enumerate");
    std::size_t rows = std::size_t{1} << context;
    std::vector<Term> out;
    out.reserve(static_cast<std::size_t>(*count));
    for (long long v = 0; v < *count; ++v) {
        std::vector<bool> tab(rows);
        for (std::size_t r = 0; r < rows; ++r) tab[r] = (v >> r) & 1;
        out.push_back(term_of_table(tab, context));
    }
    return out;
}

std::shared_ptr<Backend> TruthTableBackend::renamed(
    const std::map<std::string, std::string>& ren) const {
    return std::make_shared<TruthTableBackend>(
        rename_op(ren, and_), rename_op(ren, or_), rename_op(ren, not_),
        rename_op(ren, bot_), rename_op(ren, top_));
}

// ---- ReducedWordBackend ----------------------------------------------------

std::vector<int> ReducedWordBackend::word(const Term& t) const {
    std::vector<int> w;
    std::function<void(const Term&, bool)> go = [&](const Term& u, bool inverted) {
        if (u.is_variable()) {
            int g = inverted ? -u.var_index() : u.var_index();
            if (!w.empty() && w.back() == -g)
                w.pop_back();
            else
                w.push_back(g);
            return;
        }
        if (u.op() == unit_) return;
        if (u.op() == inv_) {
            go(u.args()[0], !inverted);
            return;
        }
        if (u.op() == mul_) {
            if (inverted) {
                go(u.args()[1], true);
                go(u.args()[0], true);
            } else {
                go(u.args()[0], false);
                go(u.args()[1], false);
            }
            return;
        }
        throw TermError("unknown group operation: " + u.op());
    };
    go(t, false);
    return w;
}

Term ReducedWordBackend::normal_form(const Term& t, int) const {
    std::vector<int> w = word(t);
    if (w.empty()) return Term::apply(unit_);
    auto atom = [&](int g) {
        return g > 0 ? Term::variable(g) : Term::apply(inv_, {Term::variable(-g)});
    };
    Term out = atom(w.back());
    for (auto it = w.rbegin() + 1; it != w.rend(); ++it)
        out = Term::apply(mul_, {atom(*it), out});
    return out;
}

std::shared_ptr<Backend> ReducedWordBackend::renamed(
    const std::map<std::string, std::string>& ren) const {
    return std::make_shared<ReducedWordBackend>(
        rename_op(ren, mul_), rename_op(ren, inv_), rename_op(ren, unit_));
}

// ---- IntShiftBackend -------------------------------------------------------

Term IntShiftBackend::normal_form(const Term& t, int) const {
    long long k = 0;
    const Term* cur = &t;
    while (!cur->is_variable()) {
        if (cur->op() == s_)
            ++k;
        else if (cur->op() == t_)
            --k;
        else
            throw TermError("unknown shift operation: " + cur->op());
        cur = &cur->args()[0];
    }
    Term out = *cur;
    for (long long i = 0; i < std::llabs(k); ++i)
        out = Term::apply(k > 0 ? s_ : t_, {out});
    return out;
}

std::shared_ptr<Backend> IntShiftBackend::renamed(
    const std::map<std::string, std::string>& ren) const {
    return std::make_shared<IntShiftBackend>(rename_op(ren, s_), rename_op(ren, t_));
}

// ---- LinearBackend ---------------------------------------------------------

long long LinearBackend::reduce(long long v) const {
    if (!modulus_) return v;
    long long r = v % modulus_;
    return r < 0 ? r + modulus_ : r;
}

std::vector<long long> LinearBackend::coefficients(const Term& t, int context) const {
    std::vector<long long> c(static_cast<std::size_t>(context), 0);
    std::function<void(const Term&, long long)> go = [&](const Term& u, long long sign) {
        if (u.is_variable()) {
            c[static_cast<std::size_t>(u.var_index() - 1)] += sign;
            return;
        }
        if (u.op() == add_) {
            go(u.args()[0], sign);
            go(u.args()[1], sign);
            return;
        }
        if (u.op() == neg_) {
            go(u.args()[0], -sign);
            return;
        }
        if (u.op() == zero_) return;
        throw TermError("unknown linear operation: " + u.op());
    };
    go(t, 1);
    for (auto& v : c) v = reduce(v);
    return c;
}

Term LinearBackend::term_of_coefficients(const std::vector<long long>& c) const {
    std::vector<Term> parts;
    for (std::size_t i = 0; i < c.size(); ++i) {
        long long v = c[i];
        if (!v) continue;
        bool negate = v < 0;
        long long n = negate ? -v : v;
        Term part = Term::variable(static_cast<int>(i) + 1);
        for (long long j = 1; j < n; ++j)
            part = Term::apply(add_, {Term::variable(static_cast<int>(i) + 1), part});
        if (negate) part = Term::apply(neg_, {part});
        parts.push_back(part);
    }
    if (parts.empty()) return Term::apply(zero_);
    Term out = parts.back();
    for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it)
        out = Term::apply(add_, {*it, out});
    return out;
}

Term LinearBackend::normal_form(const Term& t, int context) const {
    return term_of_coefficients(coefficients(t, context));
}

std::optional<long long> LinearBackend::element_count(int context) const {
    if (!modulus_) return std::nullopt;
    long long n = 1;
    for (int i = 0; i < context; ++i) {
        if (n > (1LL << 40) / std::max<long long>(modulus_, 1)) return std::nullopt;
        n *= modulus_;
    }
    return n;
}

std::vector<Term> LinearBackend::elements(int context) const {
    auto count = element_count(context);
    if (!count) throw CapExceeded("free module is infinite; use a size bound");
    std::vector<Term> out;
    std::vector<long long> c(static_cast<std::size_t>(context), 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == context) {
            out.push_back(term_of_coefficients(c));
            return;
        }
        for (long long v = 0; v < modulus_; ++v) {
            c[static_cast<std::size_t>(i)] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

std::optional<std::vector<Term>> LinearBackend::elements_coeff_bounded(int context,
                                                                       int bound) const {
    std::vector<Term> out;
    std::vector<long long> c(static_cast<std::size_t>(context), 0);
    long long lo = modulus_ ? 0 : -static_cast<long long>(bound);
    long long hi = modulus_ ? std::min<long long>(modulus_ - 1, bound) : bound;
    std::function<void(int)> rec = [&](int i) {
        if (i == context) {
            out.push_back(term_of_coefficients(c));
            return;
        }
        for (long long v = lo; v <= hi; ++v) {
            c[static_cast<std::size_t>(i)] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

std::shared_ptr<Backend> LinearBackend::renamed(
    const std::map<std::string, std::string>& ren) const {
    return std::make_shared<LinearBackend>(rename_op(ren, add_), rename_op(ren, neg_),
                                           rename_op(ren, zero_), modulus_);
}

// ---- GSetTupleBackend ------------------------------------------------------

std::pair<int, int> GSetTupleBackend::element_of(const Term& t) const {
    int g = group_.identity();
    const Term* cur = &t;
    while (!cur->is_variable()) {
        auto it = op_elem_.find(cur->op());
        if (it == op_elem_.end())
            throw TermError("unknown G-set operation: " + cur->op());
        g = group_.times(g, it->second);
        cur = &cur->args()[0];
    }
    return {g, cur->var_index()};
}

Term GSetTupleBackend::term_of_element(int g, int var) const {
    Term x = Term::variable(var);
    if (g == group_.identity()) return x;
    return Term::apply(elem_op_.at(g), {x});
}

Term GSetTupleBackend::normal_form(const Term& t, int) const {
    auto [g, v] = element_of(t);
    return term_of_element(g, v);
}

std::optional<long long> GSetTupleBackend::element_count(int context) const {
    return static_cast<long long>(group_.order) * context;
}

std::vector<Term> GSetTupleBackend::elements(int context) const {
    std::vector<Term> out;
    for (int i = 1; i <= context; ++i)
        for (int g = 0; g < group_.order; ++g) out.push_back(term_of_element(g, i));
    return out;
}

std::shared_ptr<Backend> GSetTupleBackend::renamed(
    const std::map<std::string, std::string>& ren) const {
    std::map<std::string, int> ops;
    for (const auto& [name, g] : op_elem_) ops[rename_op(ren, name)] = g;
    return std::make_shared<GSetTupleBackend>(group_, std::move(ops));
}

// ---- GSetExpansionBackend ---------------------------------------------------

Term GSetExpansionBackend::push_down(int g, const Term& t) const {
    if (t.is_variable()) return Term::variable(embed_var(g, t.var_index()));
    auto it = gop_elem_.find(t.op());
    if (it != gop_elem_.end())
        return push_down(group_.times(g, it->second), t.args()[0]);
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(push_down(g, a));
    return Term::apply(t.op(), std::move(args));
}

Term GSetExpansionBackend::pull_back(const Term& t) const {
    if (t.is_variable()) {
        int idx = t.var_index() - 1;
        int g = idx % group_.order;
        int var = idx / group_.order + 1;
        Term x = Term::variable(var);
        if (g == group_.identity()) return x;
        return Term::apply(elem_gop_.at(g), {x});
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(pull_back(a));
    return Term::apply(t.op(), std::move(args));
}

Term GSetExpansionBackend::normal_form(const Term& t, int context) const {
    Term expanded = push_down(group_.identity(), t);
    Term nf = inner_->normal_form(expanded, context * group_.order);
    return pull_back(nf);
}

std::optional<long long> GSetExpansionBackend::element_count(int context) const {
    return inner_->element_count(context * group_.order);
}

std::vector<Term> GSetExpansionBackend::elements(int context) const {
    std::vector<Term> inner = inner_->elements(context * group_.order);
    std::vector<Term> out;
    out.reserve(inner.size());
    for (const Term& t : inner) out.push_back(pull_back(t));
    return out;
}

std::optional<std::vector<Term>> GSetExpansionBackend::elements_coeff_bounded(
    int context, int bound) const {
    auto inner = inner_->elements_coeff_bounded(context * group_.order, bound);
    if (!inner) return std::nullopt;
    std::vector<Term> out;
    out.reserve(inner->size());
    for (const Term& t : *inner) out.push_back(pull_back(t));
    return out;
}

std::shared_ptr<Backend> GSetExpansionBackend::renamed(
    const std::map<std::string, std::string>& ren) const {
    std::map<std::string, int> gops;
    for (const auto& [name, g] : gop_elem_) gops[rename_op(ren, name)] = g;
    return std::make_shared<GSetExpansionBackend>(
        std::shared_ptr<Backend>(
            std::const_pointer_cast<Backend>(inner_->renamed(ren))),
        group_, std::move(gops));
}

// ---- LeavittMatrixBackend ---------------------------------------------------

std::vector<NCPoly> LeavittMatrixBackend::evaluate(const Term& t, int context) const {
    auto left_mul = [&](int gen, std::vector<NCPoly>& v) {
        NCPoly g = NCPoly::generator(gen);
        for (NCPoly& p : v) p = g * p;
    };
    std::function<std::vector<NCPoly>(const Term&)> go =
        [&](const Term& u) -> std::vector<NCPoly> {
        std::vector<NCPoly> v(static_cast<std::size_t>(context));
        if (u.is_variable()) {
            v[static_cast<std::size_t>(u.var_index() - 1)] = NCPoly::one();
            return v;
        }
        if (u.op() == zero_) return v;
        if (u.op() == add_) {
            auto a = go(u.args()[0]);
            auto b = go(u.args()[1]);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
            return v;
        }
        if (u.op() == neg_) {
            auto a = go(u.args()[0]);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = -a[i];
            return v;
        }
        if (u.op() == mu_) {
            // mu(t1..ta) = sum_i R_i t_i;  R_i has generator index i-1
            for (int i = 0; i < a_; ++i) {
                auto a = go(u.args()[static_cast<std::size_t>(i)]);
                left_mul(i, a);
                for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] + a[j];
            }
            return v;
        }
        for (int i = 0; i < a_; ++i) {
            if (u.op() == nu_[static_cast<std::size_t>(i)]) {
                // nu_i(t) = C_i t;  C_i has generator index a + i
                auto a = go(u.args()[0]);
                left_mul(a_ + i, a);
                return a;
            }
        }
        throw TermError("unknown Leavitt-module operation: " + u.op());
    };
    std::vector<NCPoly> v = go(t);
    for (NCPoly& p : v) p = leavitt_normalize(a_, p);
    return v;
}

Term LeavittMatrixBackend::term_of_vector(const std::vector<NCPoly>& v) const {
    std::vector<Term> parts;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (const auto& [word, coeff] : v[i].coeffs()) {
            Term t = Term::variable(static_cast<int>(i) + 1);
            for (auto it = word.rbegin(); it != word.rend(); ++it) {
                int gen = *it;
                if (gen < a_) {
                    // R_{gen+1} t = mu(0,..,t,..,0) with t in slot gen
                    std::vector<Term> args(static_cast<std::size_t>(a_),
                                           Term::apply(zero_));
                    args[static_cast<std::size_t>(gen)] = t;
                    t = Term::apply(mu_, std::move(args));
                } else {
                    t = Term::apply(nu_[static_cast<std::size_t>(gen - a_)], {t});
                }
            }
            long long n = coeff < 0 ? -coeff : coeff;
            Term part = t;
            for (long long j = 1; j < n; ++j) part = Term::apply(add_, {t, part});
            if (coeff < 0) part = Term::apply(neg_, {part});
            parts.push_back(part);
        }
    }
    if (parts.empty()) return Term::apply(zero_);
    Term out = parts.back();
    for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it)
        out = Term::apply(add_, {*it, out});
    return out;
}

Term LeavittMatrixBackend::normal_form(const Term& t, int context) const {
    return term_of_vector(evaluate(t, context));
}

std::shared_ptr<Backend> LeavittMatrixBackend::renamed(
    const std::map<std::string, std::string>& ren) const {
    std::vector<std::string> nu;
    for (const auto& n : nu_) nu.push_back(rename_op(ren, n));
    return std::make_shared<LeavittMatrixBackend>(
        a_, rename_op(ren, add_), rename_op(ren, neg_), rename_op(ren, zero_),
        rename_op(ren, mu_), std::move(nu));
}

}  // namespace lawkit
