#include "lawkit/report.hpp"

namespace lawkit {

Json to_json(const Term& t) { return t.str(); }

Json to_json(const FMor& f) {
    Json j;
    j["src"] = f.src;
    j["dst"] = f.dst;
    Json comps = Json::array();
    for (const Term& c : f.components) comps.push_back(c.str());
    j["components"] = comps;
    return j;
}

Json to_json(const Equation& e) {
    Json j;
    j["context"] = e.context;
    j["lhs"] = e.lhs.str();
    j["rhs"] = e.rhs.str();
    return j;
}

Json to_json(const Presentation& p) {
    Json j;
    j["name"] = p.name;
    Json ops = Json::array();
    for (const OpDecl& o : p.signature.ops())
        ops.push_back(Json{{"name", o.name}, {"arity", o.arity}});
    j["operations"] = ops;
    Json eqs = Json::array();
    for (const Equation& e : p.equations) eqs.push_back(to_json(e));
    j["equations"] = eqs;
    return j;
}

Json to_json(const FiniteModel& m) {
    Json j;
    j["size"] = m.size;
    Json tables = Json::object();
    const auto& ops = m.presentation->signature.ops();
    for (std::size_t i = 0; i < ops.size(); ++i) tables[ops[i].name] = m.tables[i];
    j["tables"] = tables;
    return j;
}

Json to_json(const K0Certificate& c) {
    Json j;
    j["theory"] = c.theory->name();
    j["status"] = c.status == K0Certificate::Certified ? "certified" : "bound-limited";
    j["group"] = c.group.str();
    j["generator"] = "[T_1]";
    if (c.group.finite) j["order"] = c.group.order;
    if (c.witness_u) j["witness_u"] = to_json(*c.witness_u);
    if (c.witness_v) j["witness_v"] = to_json(*c.witness_v);
    if (c.invariant) j["separating_invariant"] = to_json(*c.invariant);
    j["bounds"] = Json{{"term_bound", c.bounds.term_bound},
                       {"arity_bound", c.bounds.arity_bound},
                       {"model_size_cap", c.bounds.model_size_cap}};
    j["notes"] = c.notes;
    return j;
}

Json to_json(const CyclicMap& m) {
    Json j;
    j["source"] = m.source.str();
    j["target"] = m.target.str();
    j["generator_image"] = "generator";
    j["well_defined"] = m.well_defined;
    j["surjective"] = m.surjective;
    j["injective"] = m.injective;
    j["description"] = m.str();
    return j;
}

Json to_json(const AssemblyResult& r) {
    Json j;
    switch (r.cls) {
        case AssemblyResult::Isomorphism: j["class"] = "isomorphism"; break;
        case AssemblyResult::Zero: j["class"] = "zero"; break;
        case AssemblyResult::SurjectiveNotInjective:
            j["class"] = "surjective-not-injective";
            break;
        case AssemblyResult::Inconclusive: j["class"] = "inconclusive"; break;
    }
    j["map"] = to_json(r.map);
    j["k0_source"] = to_json(r.source_cert);
    j["k0_target"] = to_json(r.target_cert);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json to_json(const PushforwardResult& r) {
    Json j;
    j["inconclusive"] = r.inconclusive;
    j["map"] = to_json(r.map);
    j["k0_source"] = to_json(r.source_cert);
    j["k0_target"] = to_json(r.target_cert);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json to_json(const CompletionResult& r) {
    Json j;
    switch (r.status) {
        case CompletionResult::Success: j["status"] = "success"; break;
        case CompletionResult::Unorientable: j["status"] = "unorientable"; break;
        case CompletionResult::BoundExceeded: j["status"] = "bound-exceeded"; break;
    }
    Json rules = Json::array();
    for (const RewriteRule& rule : r.system.rules)
        rules.push_back(Json{{"lhs", rule.lhs.str()}, {"rhs", rule.rhs.str()}});
    j["rules"] = rules;
    j["confluence_certified"] = r.system.confluence_certified;
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

Json to_json(const ConfluenceReport& r) {
    Json j;
    j["locally_confluent"] = r.locally_confluent;
    Json pairs = Json::array();
    for (const CriticalPair& cp : r.pairs)
        pairs.push_back(Json{{"peak", cp.peak.str()},
                             {"left", cp.left.str()},
                             {"right", cp.right.str()},
                             {"joinable", cp.joinable}});
    j["critical_pairs"] = pairs;
    return j;
}

Json to_json(const BilinearReport& r) {
    return Json{{"pairs_checked", r.pairs_checked},
                {"square_failures", r.square_failures},
                {"delta_failures", r.delta_failures},
                {"monoidality_failures", r.monoidality_failures}};
}

Json to_json(const CommutativityReport& r) {
    Json j;
    switch (r.verdict) {
        case CommutativityVerdict::Commutative: j["verdict"] = "commutative"; break;
        case CommutativityVerdict::NonCommutative: j["verdict"] = "non-commutative"; break;
        case CommutativityVerdict::Inconclusive: j["verdict"] = "inconclusive"; break;
    }
    Json pairs = Json::array();
    for (const auto& ev : r.pairs)
        pairs.push_back(Json{{"ops", ev.op_left + "," + ev.op_right},
                             {"equation", to_json(ev.equation)},
                             {"holds", ev.holds}});
    j["pairs"] = pairs;
    if (r.verdict == CommutativityVerdict::NonCommutative) {
        j["witness_kind"] = r.witness_kind;
        if (r.witness_model_size) {
            j["witness_model_size"] = *r.witness_model_size;
            j["witness_tables"] = r.witness_tables;
            j["witness_assignment"] = r.witness_assignment;
            j["witness_pair"] = r.witness_pair_index;
        }
    }
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json to_json(const Derivation& d) {
    Json j;
    j["context"] = d.context;
    Json steps = Json::array();
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const DerivationStep& st = d.steps[i];
        Json bindings = Json::object();
        for (const auto& [v, t] : st.binding) bindings["x" + std::to_string(v)] = t.str();
        steps.push_back(Json{{"from", d.terms[i].str()},
                             {"to", d.terms[i + 1].str()},
                             {"equation", st.equation_index},
                             {"direction", st.forward ? "lr" : "rl"},
                             {"position", st.position},
                             {"binding", bindings}});
    }
    j["steps"] = steps;
    return j;
}

Json to_json(const TrivialRingResult& r) {
    Json j;
    j["trivial"] = r.trivial;
    if (!r.trivial) {
        j["reason"] = r.reason;
        return j;
    }
    j["derivation"] = to_json(r.derivation);
    j["replayed"] = true;
    return j;
}

Json to_json(const RingPresentation& r, const std::vector<std::string>& gen_names) {
    Json j;
    j["generators"] = r.generators;
    j["unital"] = r.unital;
    Json rels = Json::array();
    for (const auto& [lhs, rhs] : r.relations)
        rels.push_back(lhs.str(gen_names) + " = " + rhs.str(gen_names));
    j["relations"] = rels;
    return j;
}

Json to_json(const RankIsoProof& p) {
    Json j;
    j["arity"] = p.arity;
    j["verified"] = p.verified;
    std::vector<std::string> names = leavitt_generator_names(p.arity);
    Json rows = Json::array();
    for (const auto& row : p.cr_matrix) {
        Json r = Json::array();
        for (const NCPoly& e : row) r.push_back(e.str(names));
        rows.push_back(r);
    }
    j["cr_matrix"] = rows;
    j["rc_sum"] = p.rc_sum.str(names);
    j["message"] = p.message;
    return j;
}

Json to_json(const AutGroupResult& r) {
    Json j;
    j["order"] = r.elements.size();
    j["closed"] = r.closed;
    j["abelian"] = r.abelian;
    Json elems = Json::array();
    for (const FMor& f : r.elements) elems.push_back(to_json(f));
    j["elements"] = elems;
    j["table"] = r.table;
    j["identity"] = r.identity_index;
    j["inverses"] = r.inverses;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

}  // namespace lawkit
