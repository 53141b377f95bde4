#include "lawkit/term.hpp"

#include <algorithm>
#include <functional>

namespace lawkit {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace

Term Term::variable(int index) {
    if (index < 1) throw TermError("variable index must be >= 1");
    auto n = std::make_shared<Node>();
    n->is_var = true;
    n->var = index;
    n->hash = mix(0x517cc1b727220a95ULL, static_cast<std::size_t>(index));
    n->size = 1;
    return Term(std::move(n));
}

Term Term::apply(std::string op, std::vector<Term> args) {
    auto n = std::make_shared<Node>();
    n->is_var = false;
    n->op = std::move(op);
    n->args = std::move(args);
    std::size_t h = std::hash<std::string>{}(n->op);
    int sz = 1;
    for (const Term& a : n->args) {
        h = mix(h, a.hash());
        sz += a.size();
    }
    n->hash = h;
    n->size = sz;
    return Term(std::move(n));
}

int Term::depth() const {
    if (is_variable()) return 0;
    int d = 0;
    for (const Term& a : args()) d = std::max(d, a.depth());
    return d + 1;
}

bool Term::operator==(const Term& other) const {
    if (node_ == other.node_) return true;
    if (node_->hash != other.node_->hash) return false;
    if (node_->is_var != other.node_->is_var) return false;
    if (node_->is_var) return node_->var == other.node_->var;
    if (node_->op != other.node_->op) return false;
    if (node_->args.size() != other.node_->args.size()) return false;
    for (std::size_t i = 0; i < node_->args.size(); ++i)
        if (node_->args[i] != other.node_->args[i]) return false;
    return true;
}

int Term::compare(const Term& a, const Term& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    if (a.is_variable() != b.is_variable()) return a.is_variable() ? -1 : 1;
    if (a.is_variable()) {
        if (a.var_index() != b.var_index()) return a.var_index() < b.var_index() ? -1 : 1;
        return 0;
    }
    if (int c = a.op().compare(b.op()); c != 0) return c < 0 ? -1 : 1;
    if (a.args().size() != b.args().size())
        return a.args().size() < b.args().size() ? -1 : 1;
    for (std::size_t i = 0; i < a.args().size(); ++i)
        if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
    return 0;
}

std::string Term::str() const {
    if (is_variable()) return "x" + std::to_string(var_index());
    if (args().empty()) return op();
    std::string s = op();
    s += '(';
    for (std::size_t i = 0; i < args().size(); ++i) {
        if (i) s += ',';
        s += args()[i].str();
    }
    s += ')';
    return s;
}

int Term::max_var() const {
    if (is_variable()) return var_index();
    int m = 0;
    for (const Term& a : args()) m = std::max(m, a.max_var());
    return m;
}

void Term::collect_vars(std::vector<bool>& seen) const {
    if (is_variable()) {
        if (var_index() <= static_cast<int>(seen.size())) seen[var_index() - 1] = true;
        return;
    }
    for (const Term& a : args()) a.collect_vars(seen);
}

bool Term::contains_var(int index) const {
    if (is_variable()) return var_index() == index;
    for (const Term& a : args())
        if (a.contains_var(index)) return true;
    return false;
}

Term substitute(const Term& t, const std::vector<Term>& env) {
    if (t.is_variable()) {
        int i = t.var_index();
        if (i > static_cast<int>(env.size()))
            throw TermError("substitute: variable x" + std::to_string(i) +
                            " out of range for environment of size " +
                            std::to_string(env.size()));
        return env[i - 1];
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (const Term& a : t.args()) {
        args.push_back(substitute(a, env));
        changed = changed || args.back() != a;
    }
    if (!changed) return t;
    return Term::apply(t.op(), std::move(args));
}

int term_size(const Term& t) { return t.size(); }
int term_depth(const Term& t) { return t.depth(); }

Signature::Signature(std::vector<OpDecl> ops) {
    for (auto& o : ops) add(o.name, o.arity);
}

void Signature::add(const std::string& name, int arity) {
    if (arity < 0) throw TermError("negative arity for operation " + name);
    if (has(name)) throw TermError("duplicate operation name: " + name);
    ops_.push_back({name, arity});
}

std::optional<int> Signature::arity_of(const std::string& name) const {
    for (const auto& o : ops_)
        if (o.name == name) return o.arity;
    return std::nullopt;
}

std::optional<int> Signature::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < ops_.size(); ++i)
        if (ops_[i].name == name) return static_cast<int>(i);
    return std::nullopt;
}

std::vector<std::string> Signature::constants() const {
    std::vector<std::string> out;
    for (const auto& o : ops_)
        if (o.arity == 0) out.push_back(o.name);
    return out;
}

void Signature::check_term(const Term& t, int context) const {
    if (t.is_variable()) {
        if (t.var_index() > context)
            throw TermError("variable x" + std::to_string(t.var_index()) +
                            " exceeds context " + std::to_string(context));
        return;
    }
    auto ar = arity_of(t.op());
    if (!ar) throw TermError("unknown operation: " + t.op());
    if (*ar != static_cast<int>(t.args().size()))
        throw TermError("operation " + t.op() + " expects " + std::to_string(*ar) +
                        " arguments, got " + std::to_string(t.args().size()));
    for (const Term& a : t.args()) check_term(a, context);
}

void Presentation::validate() const {
    for (const Equation& eq : equations) {
        signature.check_term(eq.lhs, eq.context);
        signature.check_term(eq.rhs, eq.context);
    }
}

}  // namespace lawkit
