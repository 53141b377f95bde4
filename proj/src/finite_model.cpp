// Finite model enumeration: depth-first search over operation-table cells
// with equation instances checked incrementally. Instances watch the cell
// that blocked their evaluation and are rechecked when it is assigned;
// instances blocked at the root of one side with the other side evaluated
// force the cell's value. Every emitted model passes a final full check.

#include "lawkit/finite_model.hpp"

#include <algorithm>
#include <functional>
#include <thread>
#include <unordered_map>

namespace lawkit {

int FiniteModel::eval(int op_index, const std::vector<int>& args) const {
    const auto& table = tables[static_cast<std::size_t>(op_index)];
    std::size_t row = 0;
    for (int a : args) row = row * static_cast<std::size_t>(size) + static_cast<std::size_t>(a);
    return table[row];
}

int FiniteModel::eval_term(const Term& t, const std::vector<int>& env) const {
    if (t.is_variable()) return env[static_cast<std::size_t>(t.var_index() - 1)];
    auto idx = presentation->signature.index_of(t.op());
    if (!idx) throw TermError("operation not in model signature: " + t.op());
    std::vector<int> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(eval_term(a, env));
    return eval(*idx, args);
}

ModelCheck check_model(const FiniteModel& m) {
    ModelCheck out;
    const auto& eqs = m.presentation->equations;
    for (std::size_t e = 0; e < eqs.size(); ++e) {
        int ctx = eqs[e].context;
        if (m.size == 0) {
            if (ctx >= 1) continue;  // vacuous on the empty carrier
            out.valid = false;       // closed equations need constants
            out.equation_index = static_cast<int>(e);
            return out;
        }
        std::vector<int> env(static_cast<std::size_t>(ctx), 0);
        for (;;) {
            if (m.eval_term(eqs[e].lhs, env) != m.eval_term(eqs[e].rhs, env)) {
                out.valid = false;
                out.equation_index = static_cast<int>(e);
                out.assignment = env;
                return out;
            }
            int pos = ctx - 1;
            while (pos >= 0 && ++env[static_cast<std::size_t>(pos)] == m.size) {
                env[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return out;
}

FiniteModel model_from_tables(std::shared_ptr<const Presentation> pres, int size,
                              std::vector<std::vector<int>> tables) {
    FiniteModel m;
    m.presentation = std::move(pres);
    m.size = size;
    m.tables = std::move(tables);
    const auto& ops = m.presentation->signature.ops();
    if (m.tables.size() != ops.size()) throw TermError("wrong number of tables");
    for (std::size_t i = 0; i < ops.size(); ++i) {
        std::size_t rows = 1;
        for (int a = 0; a < ops[i].arity; ++a) rows *= static_cast<std::size_t>(size);
        if (m.tables[i].size() != rows) throw TermError("wrong table size for " + ops[i].name);
        for (int v : m.tables[i])
            if (v < 0 || v >= size) throw TermError("table value out of range");
    }
    ModelCheck chk = check_model(m);
    if (!chk.valid)
        throw TermError("tables violate equation " + std::to_string(chk.equation_index));
    return m;
}

namespace {

struct Instance {
    int eq;
    std::vector<int> env;
};

struct Search {
    const Presentation& pres;
    int k;
    std::vector<int> op_offset;
    std::vector<int> op_arity;
    int total_cells = 0;
    std::vector<Instance> instances;

    std::vector<int> values;                 // -1 = unassigned
    std::vector<std::vector<int>> watchers;  // per cell
    std::vector<int> pending;
    int assigned = 0;
    long long nodes = 0;
    long long node_budget = 0;

    enum class EventKind { Assign, WatchPush, WatchDrain };
    struct Event {
        EventKind kind;
        int cell;
        std::vector<int> drained;
    };
    std::vector<Event> trail;

    Search(const Presentation& p, int size) : pres(p), k(size) {
        const auto& ops = p.signature.ops();
        for (const OpDecl& o : ops) {
            op_offset.push_back(total_cells);
            op_arity.push_back(o.arity);
            long long rows = 1;
            for (int i = 0; i < o.arity; ++i) {
                rows *= k;
                if (rows > 2000000) throw CapExceeded("operation table too large");
            }
            total_cells += static_cast<int>(rows);
        }
        for (std::size_t e = 0; e < p.equations.size(); ++e) {
            int ctx = p.equations[e].context;
            long long count = 1;
            for (int i = 0; i < ctx; ++i) {
                count *= k;
                if (count > 4000000) throw CapExceeded("too many equation instances");
            }
            std::vector<int> env(static_cast<std::size_t>(ctx), 0);
            for (;;) {
                instances.push_back({static_cast<int>(e), env});
                int pos = ctx - 1;
                while (pos >= 0 && ++env[static_cast<std::size_t>(pos)] == k) {
                    env[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
        values.assign(static_cast<std::size_t>(total_cells), -1);
        watchers.assign(static_cast<std::size_t>(total_cells), {});
    }

    struct Eval {
        int value = -1;
        int blocked = -1;
        bool root_block = false;
    };

    Eval eval(const Term& t, const std::vector<int>& env) const {
        Eval out;
        if (t.is_variable()) {
            out.value = env[static_cast<std::size_t>(t.var_index() - 1)];
            return out;
        }
        int op = *pres.signature.index_of(t.op());
        std::size_t row = 0;
        for (const Term& a : t.args()) {
            Eval sub = eval(a, env);
            if (sub.blocked >= 0) {
                out.blocked = sub.blocked;
                return out;
            }
            row = row * static_cast<std::size_t>(k) + static_cast<std::size_t>(sub.value);
        }
        int cell = op_offset[static_cast<std::size_t>(op)] + static_cast<int>(row);
        int v = values[static_cast<std::size_t>(cell)];
        if (v < 0) {
            out.blocked = cell;
            out.root_block = true;  // all arguments evaluated, blocked at own cell
            return out;
        }
        out.value = v;
        return out;
    }

    enum class CheckResult { Ok, Violation, Blocked, Forced };

    CheckResult check_instance(int idx, int& cell, int& value) {
        const Instance& ins = instances[static_cast<std::size_t>(idx)];
        const Equation& eq = pres.equations[static_cast<std::size_t>(ins.eq)];
        Eval l = eval(eq.lhs, ins.env);
        Eval r = eval(eq.rhs, ins.env);
        if (l.blocked < 0 && r.blocked < 0)
            return l.value == r.value ? CheckResult::Ok : CheckResult::Violation;
        if (l.blocked >= 0 && l.root_block && r.blocked < 0) {
            cell = l.blocked;
            value = r.value;
            return CheckResult::Forced;
        }
        if (r.blocked >= 0 && r.root_block && l.blocked < 0) {
            cell = r.blocked;
            value = l.value;
            return CheckResult::Forced;
        }
        cell = l.blocked >= 0 ? l.blocked : r.blocked;
        return CheckResult::Blocked;
    }

    void assign(int cell, int v) {
        values[static_cast<std::size_t>(cell)] = v;
        ++assigned;
        trail.push_back({EventKind::Assign, cell, {}});
        auto& w = watchers[static_cast<std::size_t>(cell)];
        if (!w.empty()) {
            pending.insert(pending.end(), w.begin(), w.end());
            trail.push_back({EventKind::WatchDrain, cell, std::move(w)});
            w = {};
        }
    }

    bool propagate() {
        while (!pending.empty()) {
            int idx = pending.back();
            pending.pop_back();
            int cell = -1, value = -1;
            switch (check_instance(idx, cell, value)) {
                case CheckResult::Ok:
                    break;
                case CheckResult::Violation:
                    return false;
                case CheckResult::Blocked:
                    watchers[static_cast<std::size_t>(cell)].push_back(idx);
                    trail.push_back({EventKind::WatchPush, cell, {}});
                    break;
                case CheckResult::Forced:
                    assign(cell, value);
                    pending.push_back(idx);  // recheck once satisfied
                    break;
            }
        }
        return true;
    }

    std::size_t mark() const { return trail.size(); }

    void undo(std::size_t m) {
        while (trail.size() > m) {
            Event ev = std::move(trail.back());
            trail.pop_back();
            switch (ev.kind) {
                case EventKind::Assign:
                    values[static_cast<std::size_t>(ev.cell)] = -1;
                    --assigned;
                    break;
                case EventKind::WatchPush:
                    watchers[static_cast<std::size_t>(ev.cell)].pop_back();
                    break;
                case EventKind::WatchDrain:
                    watchers[static_cast<std::size_t>(ev.cell)] = std::move(ev.drained);
                    break;
            }
        }
        pending.clear();
    }

    int select_cell() const {
        for (int c = 0; c < total_cells; ++c)
            if (values[static_cast<std::size_t>(c)] < 0 &&
                !watchers[static_cast<std::size_t>(c)].empty())
                return c;
        for (int c = 0; c < total_cells; ++c)
            if (values[static_cast<std::size_t>(c)] < 0) return c;
        return -1;
    }

    // callback returns false to stop the whole search
    bool dfs(const std::function<bool(const std::vector<int>&)>& emit) {
        if (++nodes > node_budget)
            throw BudgetExceeded("model search node budget exhausted");
        int cell = select_cell();
        if (cell < 0) return emit(values);
        for (int v = 0; v < k; ++v) {
            std::size_t m = mark();
            assign(cell, v);
            bool ok = propagate();
            if (ok && !dfs(emit)) return false;
            undo(m);
        }
        return true;
    }

    std::vector<std::vector<int>> split_tables(const std::vector<int>& flat) const {
        std::vector<std::vector<int>> tables;
        const auto& ops = pres.signature.ops();
        for (std::size_t i = 0; i < ops.size(); ++i) {
            std::size_t rows = 1;
            for (int a = 0; a < ops[i].arity; ++a) rows *= static_cast<std::size_t>(k);
            std::size_t off = static_cast<std::size_t>(op_offset[i]);
            tables.emplace_back(flat.begin() + static_cast<long>(off),
                                flat.begin() + static_cast<long>(off + rows));
        }
        return tables;
    }
};

void run_search(std::shared_ptr<const Presentation> pres, int k,
                const std::function<bool(const FiniteModel&)>& cb,
                const EnumerationOptions& opts, long long* result_count) {
    if (k == 0) {
        // the empty structure is a model iff there are no constants
        bool has_const = !pres->signature.constants().empty();
        if (!has_const) {
            FiniteModel m;
            m.presentation = pres;
            m.size = 0;
            m.tables.assign(pres->signature.ops().size(), {});
            // equations hold vacuously except in context 0, which cannot
            // occur without constants
            if (result_count) ++*result_count;
            cb(m);
        }
        return;
    }
    Search search(*pres, k);
    search.node_budget = opts.node_budget;
    for (int i = 0; i < static_cast<int>(search.instances.size()); ++i)
        search.pending.push_back(i);
    if (!search.propagate()) return;
    long long emitted = 0;
    search.dfs([&](const std::vector<int>& flat) {
        FiniteModel m;
        m.presentation = pres;
        m.size = k;
        m.tables = search.split_tables(flat);
        if (!check_model(m).valid) return true;  // safeguard; watches are lazy
        if (++emitted > opts.result_cap) throw CapExceeded("model enumeration cap");
        if (result_count) ++*result_count;
        return cb(m);
    });
}

}  // namespace

void enumerate_models_cb(std::shared_ptr<const Presentation> pres, int k,
                         const std::function<bool(const FiniteModel&)>& cb,
                         const EnumerationOptions& opts) {
    run_search(std::move(pres), k, cb, opts, nullptr);
}

std::vector<FiniteModel> enumerate_models(std::shared_ptr<const Presentation> pres,
                                          int k, const EnumerationOptions& opts) {
    std::vector<FiniteModel> out;
    if (opts.jobs > 1 && k >= 2) {
        // split on the first cell's value; each thread searches independently
        std::vector<std::vector<FiniteModel>> parts(static_cast<std::size_t>(k));
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(k));
        std::vector<std::thread> threads;
        for (int v = 0; v < k; ++v) {
            threads.emplace_back([&, v] {
                try {
                    Search search(*pres, k);
                    search.node_budget = opts.node_budget;
                    if (search.total_cells == 0) {
                        if (v != 0) return;
                        run_search(pres, k,
                                   [&](const FiniteModel& m) {
                                       parts[static_cast<std::size_t>(v)].push_back(m);
                                       return true;
                                   },
                                   opts, nullptr);
                        return;
                    }
                    for (int i = 0; i < static_cast<int>(search.instances.size()); ++i)
                        search.pending.push_back(i);
                    if (!search.propagate()) return;
                    std::size_t m0 = search.mark();
                    if (search.values[0] >= 0) {
                        // first cell forced by propagation; only one branch runs it
                        if (search.values[0] != v) return;
                    } else {
                        search.assign(0, v);
                        if (!search.propagate()) {
                            search.undo(m0);
                            return;
                        }
                    }
                    search.dfs([&](const std::vector<int>& flat) {
                        FiniteModel m;
                        m.presentation = pres;
                        m.size = k;
                        m.tables = search.split_tables(flat);
                        if (!check_model(m).valid) return true;
                        parts[static_cast<std::size_t>(v)].push_back(std::move(m));
                        return true;
                    });
                } catch (...) {
                    errors[static_cast<std::size_t>(v)] = std::current_exception();
                }
            });
        }
        for (auto& t : threads) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
        for (auto& p : parts)
            for (auto& m : p) out.push_back(std::move(m));
    } else {
        run_search(pres, k,
                   [&](const FiniteModel& m) {
                       out.push_back(m);
                       return true;
                   },
                   opts, nullptr);
    }
    if (static_cast<long long>(out.size()) > opts.result_cap)
        throw CapExceeded("model enumeration cap");
    std::sort(out.begin(), out.end(),
              [](const FiniteModel& a, const FiniteModel& b) { return a.tables < b.tables; });
    return out;
}

long long count_models(std::shared_ptr<const Presentation> pres, int k,
                       const EnumerationOptions& opts) {
    long long count = 0;
    run_search(std::move(pres), k, [](const FiniteModel&) { return true; }, opts, &count);
    return count;
}

std::vector<FiniteModel> dedup_up_to_iso(const std::vector<FiniteModel>& models) {
    std::vector<FiniteModel> out;
    std::vector<std::vector<std::vector<int>>> canon_seen;
    for (const FiniteModel& m : models) {
        if (m.size > 8) throw CapExceeded("iso dedup supports carriers up to 8");
        std::vector<int> perm(static_cast<std::size_t>(m.size));
        for (int i = 0; i < m.size; ++i) perm[static_cast<std::size_t>(i)] = i;
        std::vector<std::vector<int>> best = m.tables;
        const auto& ops = m.presentation->signature.ops();
        do {
            std::vector<std::vector<int>> mapped(m.tables.size());
            for (std::size_t o = 0; o < ops.size(); ++o) {
                int a = ops[o].arity;
                std::size_t rows = m.tables[o].size();
                mapped[o].assign(rows, 0);
                std::vector<int> args(static_cast<std::size_t>(a), 0);
                for (std::size_t row = 0; row < rows; ++row) {
                    std::size_t r = row;
                    for (int i = a - 1; i >= 0; --i) {
                        args[static_cast<std::size_t>(i)] = static_cast<int>(r % m.size);
                        r /= static_cast<std::size_t>(m.size);
                    }
                    std::size_t prow = 0;
                    for (int i = 0; i < a; ++i)
                        prow = prow * static_cast<std::size_t>(m.size) +
                               static_cast<std::size_t>(
                                   perm[static_cast<std::size_t>(args[static_cast<std::size_t>(i)])]);
                    mapped[o][prow] =
                        perm[static_cast<std::size_t>(m.tables[o][row])];
                }
            }
            if (mapped < best) best = mapped;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (std::find(canon_seen.begin(), canon_seen.end(), best) == canon_seen.end()) {
            canon_seen.push_back(best);
            out.push_back(m);
        }
    }
    return out;
}

bool is_model_hom(const FiniteModel& m, const FiniteModel& n,
                  const std::vector<int>& map) {
    const auto& ops = m.presentation->signature.ops();
    for (std::size_t o = 0; o < ops.size(); ++o) {
        int a = ops[o].arity;
        std::vector<int> args(static_cast<std::size_t>(a), 0);
        for (;;) {
            std::vector<int> mapped(static_cast<std::size_t>(a));
            for (int i = 0; i < a; ++i)
                mapped[static_cast<std::size_t>(i)] =
                    map[static_cast<std::size_t>(args[static_cast<std::size_t>(i)])];
            if (map[static_cast<std::size_t>(m.eval(static_cast<int>(o), args))] !=
                n.eval(static_cast<int>(o), mapped))
                return false;
            int pos = a - 1;
            while (pos >= 0 && ++args[static_cast<std::size_t>(pos)] == m.size) {
                args[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return true;
}

std::vector<std::vector<int>> hom_models(const FiniteModel& m, const FiniteModel& n,
                                         long long cap) {
    // backtracking over phi with forcing phi(f(t)) = f(phi(t))
    std::vector<std::vector<int>> out;
    if (m.size == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> phi(static_cast<std::size_t>(m.size), -1);
    const auto& ops = m.presentation->signature.ops();

    // check all instances whose arguments are assigned; force where possible
    std::function<bool()> consistent = [&]() -> bool {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t o = 0; o < ops.size(); ++o) {
                int a = ops[o].arity;
                std::vector<int> args(static_cast<std::size_t>(a), 0);
                for (;;) {
                    bool all = true;
                    for (int i = 0; i < a && all; ++i)
                        all = phi[static_cast<std::size_t>(args[static_cast<std::size_t>(i)])] >= 0;
                    if (all) {
                        std::vector<int> mapped(static_cast<std::size_t>(a));
                        for (int i = 0; i < a; ++i)
                            mapped[static_cast<std::size_t>(i)] =
                                phi[static_cast<std::size_t>(args[static_cast<std::size_t>(i)])];
                        int src = m.eval(static_cast<int>(o), args);
                        int want = n.eval(static_cast<int>(o), mapped);
                        int& cur = phi[static_cast<std::size_t>(src)];
                        if (cur < 0) {
                            cur = want;
                            changed = true;
                        } else if (cur != want) {
                            return false;
                        }
                    }
                    int pos = a - 1;
                    while (pos >= 0 && ++args[static_cast<std::size_t>(pos)] == m.size) {
                        args[static_cast<std::size_t>(pos)] = 0;
                        --pos;
                    }
                    if (pos < 0) break;
                }
            }
        }
        return true;
    };

    std::function<void()> rec = [&]() {
        int next = -1;
        for (int i = 0; i < m.size; ++i)
            if (phi[static_cast<std::size_t>(i)] < 0) {
                next = i;
                break;
            }
        if (next < 0) {
            if (is_model_hom(m, n, phi)) {
                out.push_back(phi);
                if (static_cast<long long>(out.size()) > cap)
                    throw CapExceeded("hom_models cap exceeded");
            }
            return;
        }
        std::vector<int> saved = phi;
        for (int v = 0; v < n.size; ++v) {
            phi = saved;
            phi[static_cast<std::size_t>(next)] = v;
            if (consistent()) rec();
        }
        phi = saved;
    };
    if (n.size == 0) return out;  // no maps unless m empty, handled above
    if (consistent()) rec();
    std::sort(out.begin(), out.end());
    return out;
}

FiniteModel product_model(const FiniteModel& m, const FiniteModel& n) {
    if (m.presentation != n.presentation &&
        !(m.presentation && n.presentation &&
          m.presentation->signature.ops().size() == n.presentation->signature.ops().size()))
        throw TermError("product_model: different presentations");
    FiniteModel p;
    p.presentation = m.presentation;
    p.size = m.size * n.size;
    const auto& ops = m.presentation->signature.ops();
    for (std::size_t o = 0; o < ops.size(); ++o) {
        int a = ops[o].arity;
        std::size_t rows = 1;
        for (int i = 0; i < a; ++i) rows *= static_cast<std::size_t>(p.size);
        std::vector<int> table(rows);
        std::vector<int> args(static_cast<std::size_t>(a), 0);
        std::size_t row = 0;
        if (rows > 0) {
            for (;;) {
                std::vector<int> am(static_cast<std::size_t>(a)), an(static_cast<std::size_t>(a));
                for (int i = 0; i < a; ++i) {
                    am[static_cast<std::size_t>(i)] = args[static_cast<std::size_t>(i)] / n.size;
                    an[static_cast<std::size_t>(i)] = args[static_cast<std::size_t>(i)] % n.size;
                }
                table[row] = m.eval(static_cast<int>(o), am) * n.size +
                             n.eval(static_cast<int>(o), an);
                ++row;
                int pos = a - 1;
                while (pos >= 0 && ++args[static_cast<std::size_t>(pos)] == p.size) {
                    args[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
        p.tables.push_back(std::move(table));
    }
    return p;
}

namespace {

std::shared_ptr<const Presentation> abelian_presentation() {
    static const std::shared_ptr<const Presentation> pres = [] {
        auto p = std::make_shared<Presentation>(parse_presentation(R"(
theory AbStructure;
op add/2;
op neg/1;
op zero/0;
eq 3: add(add(x1,x2),x3) = add(x1,add(x2,x3));
eq 2: add(x1,x2) = add(x2,x1);
eq 1: add(zero,x1) = x1;
eq 1: add(x1,neg(x1)) = zero;
end
)"));
        return p;
    }();
    return pres;
}

}  // namespace

std::vector<AbelianObjectWitness> abelian_group_objects(
    std::shared_ptr<const Presentation> pres, int k, const EnumerationOptions& opts) {
    std::vector<AbelianObjectWitness> out;
    std::vector<FiniteModel> bases = enumerate_models(pres, k, opts);
    std::vector<FiniteModel> groups = enumerate_models(abelian_presentation(), k, opts);
    for (const FiniteModel& base : bases) {
        FiniteModel sq = product_model(base, base);
        for (const FiniteModel& grp : groups) {
            const std::vector<int>& add = grp.tables[0];
            const std::vector<int>& neg = grp.tables[1];
            int zero = grp.tables[2][0];
            // addition as a map from the product model
            std::vector<int> add_as_map(static_cast<std::size_t>(k * k));
            for (int u = 0; u < k; ++u)
                for (int v = 0; v < k; ++v)
                    add_as_map[static_cast<std::size_t>(u * k + v)] =
                        add[static_cast<std::size_t>(u * k + v)];
            if (!is_model_hom(sq, base, add_as_map)) continue;
            if (!is_model_hom(base, base, neg)) continue;
            // the zero element must be fixed by every operation
            bool zero_ok = true;
            const auto& ops = pres->signature.ops();
            for (std::size_t o = 0; o < ops.size() && zero_ok; ++o) {
                std::vector<int> args(static_cast<std::size_t>(ops[o].arity), zero);
                zero_ok = base.eval(static_cast<int>(o), args) == zero;
            }
            if (!zero_ok) continue;
            out.push_back({base, add, neg, zero});
        }
    }
    return out;
}

bool verify_abelian_witness(const AbelianObjectWitness& w) {
    FiniteModel grp;
    grp.presentation = abelian_presentation();
    grp.size = w.base.size;
    grp.tables = {w.add, w.neg, {w.zero}};
    if (!check_model(grp).valid) return false;
    FiniteModel sq = product_model(w.base, w.base);
    if (!is_model_hom(sq, w.base, w.add)) return false;
    if (!is_model_hom(w.base, w.base, w.neg)) return false;
    const auto& ops = w.base.presentation->signature.ops();
    for (std::size_t o = 0; o < ops.size(); ++o) {
        std::vector<int> args(static_cast<std::size_t>(ops[o].arity), w.zero);
        if (w.base.eval(static_cast<int>(o), args) != w.zero) return false;
    }
    return true;
}

RealizedFreeModel free_model_as_finite(TheoryPtr T, int r, long long cap) {
    auto count = T->backend()->element_count(r);
    if (!count || *count > cap)
        throw CapExceeded("free model on " + std::to_string(r) +
                          " generators is not finitely realizable here");
    std::vector<Term> elems = T->backend()->elements(r);
    std::unordered_map<Term, int, TermHash> index;
    for (std::size_t i = 0; i < elems.size(); ++i)
        index.emplace(elems[i], static_cast<int>(i));

    RealizedFreeModel out;
    out.model.presentation = std::make_shared<Presentation>(T->presentation());
    out.model.size = static_cast<int>(elems.size());
    const auto& ops = T->signature().ops();
    for (const OpDecl& o : ops) {
        std::size_t rows = 1;
        for (int i = 0; i < o.arity; ++i) rows *= elems.size();
        std::vector<int> table(rows);
        std::vector<std::size_t> idx(static_cast<std::size_t>(o.arity), 0);
        std::size_t row = 0;
        for (;;) {
            std::vector<Term> args;
            for (std::size_t i = 0; i < idx.size(); ++i) args.push_back(elems[idx[i]]);
            Term nf = T->normal_form(Term::apply(o.name, std::move(args)), r);
            auto it = index.find(nf);
            if (it == index.end())
                throw TermError("free-model realization is not closed under " + o.name);
            table[row] = it->second;
            ++row;
            int pos = o.arity - 1;
            while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == elems.size()) {
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        out.model.tables.push_back(std::move(table));
    }
    for (int i = 1; i <= r; ++i) {
        Term nf = T->normal_form(Term::variable(i), r);
        out.generators.push_back(index.at(nf));
    }
    return out;
}

}  // namespace lawkit
