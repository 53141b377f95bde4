#include "lawkit/cli.hpp"

#include "lawkit/multicat.hpp"
#include "lawkit/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace lawkit::cli {

namespace {

struct GlobalOptions {
    bool json = false;
    bool timing = false;
    std::uint64_t seed = 0;
    int jobs = 1;
    long long trs_budget = 10000;
    int kb_max_rules = 64;
    int kb_max_term_size = 40;
};

// "m>n:t1;t2;..." with terms in prefix syntax
FMor parse_morphism(const TheoryPtr& T, const std::string& text) {
    auto gt = text.find('>');
    auto colon = text.find(':');
    if (gt == std::string::npos || colon == std::string::npos || colon < gt)
        throw TermError("morphism literal must look like m>n:t1;t2;...");
    int src = std::stoi(text.substr(0, gt));
    int dst = std::stoi(text.substr(gt + 1, colon - gt - 1));
    std::vector<Term> comps;
    std::string body = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= body.size() && src > 0) {
        auto next = body.find(';', pos);
        std::string part =
            next == std::string::npos ? body.substr(pos) : body.substr(pos, next - pos);
        if (!part.empty()) {
            // reuse the DSL term parser through a one-equation presentation
            std::string src_text = print_presentation(T->presentation());
            src_text.insert(src_text.rfind("end"), "eq " + std::to_string(dst) + ": " +
                                                       part + " = " + part + ";\n");
            Presentation p = parse_presentation(src_text);
            comps.push_back(p.equations.back().lhs);
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return FMor::make(T, src, dst, std::move(comps));
}

Term parse_term_text(const TheoryPtr& T, const std::string& text, int context) {
    std::string src_text = print_presentation(T->presentation());
    src_text.insert(src_text.rfind("end"), "eq " + std::to_string(context) + ": " + text +
                                               " = " + text + ";\n");
    Presentation p = parse_presentation(src_text);
    return p.equations.back().lhs;
}

void emit(const GlobalOptions& g, const Json& report, std::ostream& out,
          const std::string& plain) {
    if (g.json)
        out << report.dump(2) << "\n";
    else
        out << plain;
}

Json envelope(const GlobalOptions& g, const std::vector<std::string>& args) {
    Json j;
    j["tool"] = "lawkit";
    j["version"] = kVersion;
    j["command"] = args;
    j["seed"] = g.seed;
    return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    GlobalOptions g;
    CLI::App app{"symbolic computation for algebraic theories and their K0"};
    app.set_help_all_flag("--help-all");
    app.add_flag("--json", g.json, "emit a JSON report");
    app.add_flag("--timing", g.timing, "include wall-clock timing in reports");
    app.add_option("--seed", g.seed, "seed for sampled checks");
    app.add_option("--jobs", g.jobs, "worker threads for enumerations");
    app.add_option("--trs-budget", g.trs_budget, "rewrite step budget");
    app.add_option("--kb-max-rules", g.kb_max_rules, "completion rule bound");
    app.add_option("--kb-max-term-size", g.kb_max_term_size, "completion term size bound");
    app.require_subcommand(1);

    // theory
    auto* cmd_theory = app.add_subcommand("theory", "show a theory presentation");
    std::string theory_spec;
    cmd_theory->add_option("theory", theory_spec)->required();

    // normalize
    auto* cmd_norm = app.add_subcommand("normalize", "normal form of a term");
    std::string norm_theory, norm_term;
    int norm_context = 1;
    cmd_norm->add_option("theory", norm_theory)->required();
    cmd_norm->add_option("term", norm_term)->required();
    cmd_norm->add_option("--context", norm_context, "number of variables");

    // hom
    auto* cmd_hom = app.add_subcommand("hom", "enumerate morphisms T_m -> T_n");
    std::string hom_theory;
    int hom_m = 1, hom_n = 1, hom_bound = -1;
    bool hom_count_only = false;
    long long hom_cap = 100000;
    cmd_hom->add_option("theory", hom_theory)->required();
    cmd_hom->add_option("m", hom_m)->required();
    cmd_hom->add_option("n", hom_n)->required();
    cmd_hom->add_option("--size-bound", hom_bound, "term size bound (-1 = whole hom-set)");
    cmd_hom->add_option("--cap", hom_cap, "enumeration cap");
    cmd_hom->add_flag("--count-only", hom_count_only);

    // compose
    auto* cmd_compose = app.add_subcommand("compose", "compose two morphisms (g after f)");
    std::string comp_theory, comp_g, comp_f;
    cmd_compose->add_option("theory", comp_theory)->required();
    cmd_compose->add_option("g", comp_g, "outer morphism m>n:t1;..")->required();
    cmd_compose->add_option("f", comp_f, "inner morphism")->required();

    // kron / check-bilinear
    auto* cmd_kron = app.add_subcommand("kron", "Kronecker product of two theories");
    std::string kron_s, kron_t;
    bool kron_check = false;
    int kron_samples = 100, kron_arity = 3;
    cmd_kron->add_option("S", kron_s)->required();
    cmd_kron->add_option("T", kron_t)->required();
    cmd_kron->add_flag("--check-bilinear", kron_check);
    cmd_kron->add_option("--samples", kron_samples);
    cmd_kron->add_option("--arity-bound", kron_arity);

    auto* cmd_bilinear = app.add_subcommand("check-bilinear", "bilinear functor axioms");
    std::string bil_s, bil_t;
    int bil_samples = 100, bil_arity = 3;
    cmd_bilinear->add_option("S", bil_s)->required();
    cmd_bilinear->add_option("T", bil_t)->required();
    cmd_bilinear->add_option("--samples", bil_samples);
    cmd_bilinear->add_option("--arity-bound", bil_arity);

    // models
    auto* cmd_models = app.add_subcommand("models", "finite models of a theory");
    std::string models_theory;
    int models_size = 2;
    bool models_count_only = false, models_up_to_iso = false;
    cmd_models->add_option("theory", models_theory)->required();
    cmd_models->add_option("--size", models_size)->required();
    cmd_models->add_flag("--count-only", models_count_only);
    cmd_models->add_flag("--up-to-iso", models_up_to_iso);

    // abelian-objects
    auto* cmd_ab = app.add_subcommand("abelian-objects", "abelian group objects");
    std::string ab_theory_spec;
    int ab_size = 2;
    cmd_ab->add_option("theory", ab_theory_spec)->required();
    cmd_ab->add_option("--size", ab_size)->required();

    // linearize
    auto* cmd_lin = app.add_subcommand("linearize", "the theory Z (x) T");
    std::string lin_theory;
    cmd_lin->add_option("theory", lin_theory)->required();

    // trivial-ring
    auto* cmd_triv = app.add_subcommand("trivial-ring", "trivial coefficient ring check");
    std::string triv_theory;
    long long triv_budget = 200000;
    cmd_triv->add_option("theory", triv_theory)->required();
    cmd_triv->add_option("--budget", triv_budget);

    // leavitt
    auto* cmd_leavitt = app.add_subcommand("leavitt", "Leavitt algebra presentation");
    int leavitt_a = 2;
    bool leavitt_verify = false;
    cmd_leavitt->add_option("arity", leavitt_a)->required();
    cmd_leavitt->add_flag("--verify-rank-iso", leavitt_verify);

    // k0
    auto* cmd_k0 = app.add_subcommand("k0", "K0 certificate of a theory");
    std::string k0_theory;
    K0Bounds k0_bounds;
    cmd_k0->add_option("theory", k0_theory)->required();
    cmd_k0->add_option("--term-bound", k0_bounds.term_bound);
    cmd_k0->add_option("--arity-bound", k0_bounds.arity_bound);
    cmd_k0->add_option("--model-cap", k0_bounds.model_size_cap);

    // assembly
    auto* cmd_assembly = app.add_subcommand("assembly", "pi0 assembly map for a theory");
    std::string assembly_theory;
    K0Bounds assembly_bounds;
    cmd_assembly->add_option("theory", assembly_theory)->required();
    cmd_assembly->add_option("--term-bound", assembly_bounds.term_bound);
    cmd_assembly->add_option("--arity-bound", assembly_bounds.arity_bound);

    // pushforward
    auto* cmd_push = app.add_subcommand("pushforward", "K0 map along a theory morphism");
    std::string push_file;
    cmd_push->add_option("morphism", push_file, "JSON file {source,target,assignment}")
        ->required();

    // aut
    auto* cmd_aut = app.add_subcommand("aut", "automorphism group of a free model");
    std::string aut_theory_spec;
    int aut_n = 1, aut_bound = -1;
    cmd_aut->add_option("theory", aut_theory_spec)->required();
    cmd_aut->add_option("n", aut_n)->required();
    cmd_aut->add_option("--bound", aut_bound, "term size bound for endomorphisms");

    // check-coherence
    auto* cmd_coh = app.add_subcommand("check-coherence", "coherence diagram checks");
    std::vector<std::string> coh_theories;
    int coh_cap = 3, coh_samples = 50;
    cmd_coh->add_option("theories", coh_theories, "two or three theory names")
        ->expected(2, 3);
    cmd_coh->add_option("--cap", coh_cap);
    cmd_coh->add_option("--samples", coh_samples);

    std::vector<std::string> argv = args;
    try {
        std::vector<const char*> cargs;
        cargs.push_back("lawkit");
        for (const auto& a : argv) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help() << "\n";
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 3;
    }

    auto started = std::chrono::steady_clock::now();
    Json report = envelope(g, args);
    int exit_code = 0;

    auto resolve = [&](const std::string& spec) -> TheoryPtr {
        UserTheoryOptions opts;
        opts.kb_max_rules = g.kb_max_rules;
        opts.kb_max_term_size = g.kb_max_term_size;
        opts.trs_budget = g.trs_budget;
        if (spec.size() > 4 && spec.substr(spec.size() - 4) == ".thy") {
            std::ifstream in(spec);
            if (!in) throw TermError("cannot open theory file: " + spec);
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            return theory_from_presentation(parse_presentation(text), opts);
        }
        return resolve_theory(spec);
    };

    try {
        if (*cmd_theory) {
            TheoryPtr T = resolve(theory_spec);
            report["presentation"] = to_json(T->presentation());
            report["backend"] = T->backend()->kind();
            if (auto* trs = dynamic_cast<const TrsBackend*>(T->backend().get())) {
                ConfluenceReport conf = check_local_confluence(trs->system());
                Json comp;
                comp["status"] = trs->system().confluence_certified ? "success"
                                                                    : "budget-limited";
                Json rules = Json::array();
                for (const RewriteRule& r : trs->system().rules)
                    rules.push_back(Json{{"lhs", r.lhs.str()}, {"rhs", r.rhs.str()}});
                comp["rules"] = rules;
                comp["critical_pairs"] = to_json(conf)["critical_pairs"];
                report["rewrite_system"] = comp;
            }
            emit(g, report, out, print_presentation(T->presentation()));
        } else if (*cmd_norm) {
            TheoryPtr T = resolve(norm_theory);
            Term t = parse_term_text(T, norm_term, norm_context);
            Term nf = T->normal_form(t, norm_context);
            report["input"] = t.str();
            report["normal_form"] = nf.str();
            emit(g, report, out, nf.str() + "\n");
        } else if (*cmd_hom) {
            TheoryPtr T = resolve(hom_theory);
            std::vector<FMor> homs = hom_enumerate(T, hom_m, hom_n, hom_bound, hom_cap);
            report["count"] = homs.size();
            if (!hom_count_only) {
                Json list = Json::array();
                for (const FMor& f : homs) list.push_back(f.str());
                report["morphisms"] = list;
            }
            emit(g, report, out, std::to_string(homs.size()) + " morphisms\n");
        } else if (*cmd_compose) {
            TheoryPtr T = resolve(comp_theory);
            FMor gm = parse_morphism(T, comp_g);
            FMor fm = parse_morphism(T, comp_f);
            FMor res = compose(gm, fm);
            report["result"] = to_json(res);
            emit(g, report, out, res.str() + "\n");
        } else if (*cmd_kron || *cmd_bilinear) {
            bool standalone = static_cast<bool>(*cmd_bilinear);
            TheoryPtr S = resolve(standalone ? bil_s : kron_s);
            TheoryPtr T = resolve(standalone ? bil_t : kron_t);
            KroneckerTheory kt = kronecker(S, T);
            report["combined"] = to_json(kt.combined->presentation());
            report["backend"] = kt.combined->backend()->kind();
            report["embeddings_verified"] = kt.embeddings_verified;
            report["note"] = kt.note;
            std::string plain = "backend: " + kt.combined->backend()->kind() + "\n";
            if (standalone || kron_check) {
                BilinearWitness W = bilinear_witness(kt);
                BilinearReport br = check_bilinear_axioms(
                    W, standalone ? bil_samples : kron_samples,
                    standalone ? bil_arity : kron_arity, g.seed);
                report["bilinear"] = to_json(br);
                plain += "pairs checked: " + std::to_string(br.pairs_checked) +
                         ", square failures: " + std::to_string(br.square_failures) +
                         ", delta failures: " + std::to_string(br.delta_failures) +
                         ", monoidality failures: " +
                         std::to_string(br.monoidality_failures) + "\n";
                if (!br.all_passed()) exit_code = 1;
            }
            emit(g, report, out, plain);
        } else if (*cmd_models) {
            TheoryPtr T = resolve(models_theory);
            auto pres = std::make_shared<Presentation>(T->presentation());
            EnumerationOptions opts;
            opts.jobs = g.jobs;
            if (models_count_only && !models_up_to_iso) {
                long long n = count_models(pres, models_size, opts);
                report["count"] = n;
                emit(g, report, out, std::to_string(n) + " models\n");
            } else {
                std::vector<FiniteModel> models = enumerate_models(pres, models_size, opts);
                if (models_up_to_iso) models = dedup_up_to_iso(models);
                report["count"] = models.size();
                if (!models_count_only) {
                    Json list = Json::array();
                    for (const FiniteModel& m : models) list.push_back(to_json(m));
                    report["models"] = list;
                }
                emit(g, report, out, std::to_string(models.size()) + " models\n");
            }
        } else if (*cmd_ab) {
            TheoryPtr T = resolve(ab_theory_spec);
            auto pres = std::make_shared<Presentation>(T->presentation());
            auto witnesses = abelian_group_objects(pres, ab_size);
            report["count"] = witnesses.size();
            Json list = Json::array();
            for (const auto& w : witnesses)
                list.push_back(Json{{"base", to_json(w.base)},
                                    {"add", w.add},
                                    {"neg", w.neg},
                                    {"zero", w.zero}});
            report["witnesses"] = list;
            emit(g, report, out,
                 std::to_string(witnesses.size()) + " abelian group objects\n");
        } else if (*cmd_lin) {
            TheoryPtr T = resolve(lin_theory);
            Linearization lin = linearize(T);
            report["combined"] = to_json(lin.kt.combined->presentation());
            report["backend"] = lin.kt.combined->backend()->kind();
            report["note"] = lin.kt.note;
            emit(g, report, out,
                 "Z (x) " + T->name() + ": backend " +
                     lin.kt.combined->backend()->kind() + "\n");
        } else if (*cmd_triv) {
            TheoryPtr T = resolve(triv_theory);
            TrivialRingResult res = detect_trivial_ring(T, triv_budget);
            if (res.trivial && !replay_derivation(res.combined, res.derivation))
                throw TermError("derivation replay failed");
            report["result"] = to_json(res);
            if (!res.trivial) exit_code = 2;
            emit(g, report, out,
                 res.trivial ? "trivial (derivation replayed, " +
                                   std::to_string(res.derivation.steps.size()) +
                                   " steps)\n"
                             : "not shown trivial: " + res.reason + "\n");
        } else if (*cmd_leavitt) {
            RingPresentation rp = leavitt_presentation(leavitt_a);
            report["presentation"] = to_json(rp, leavitt_generator_names(leavitt_a));
            std::string plain = "L_" + std::to_string(leavitt_a) + ": " +
                                std::to_string(rp.generators.size()) + " generators, " +
                                std::to_string(rp.relations.size()) + " relations\n";
            if (leavitt_verify) {
                RankIsoProof proof = verify_rank_iso(leavitt_a);
                report["rank_iso"] = to_json(proof);
                plain += proof.message + "\n";
                if (!proof.verified) exit_code = 1;
            }
            emit(g, report, out, plain);
        } else if (*cmd_k0) {
            TheoryPtr T = resolve(k0_theory);
            K0Certificate cert = k0(T, k0_bounds);
            if (cert.status == K0Certificate::Certified && !verify_certificate(cert))
                throw TermError("certificate verification failed");
            report["certificate"] = to_json(cert);
            if (cert.status != K0Certificate::Certified) exit_code = 2;
            emit(g, report, out,
                 "K0(" + T->name() + ") = " + cert.group.str() +
                     (cert.status == K0Certificate::Certified ? ""
                                                              : " (bound-limited)") +
                     "\n");
        } else if (*cmd_assembly) {
            TheoryPtr T = resolve(assembly_theory);
            AssemblyResult res = assembly_pi0(T, assembly_bounds);
            report["assembly"] = to_json(res);
            if (res.cls == AssemblyResult::Inconclusive) exit_code = 2;
            emit(g, report, out, "assembly: " + res.map.str() + "\n");
        } else if (*cmd_push) {
            std::ifstream in(push_file);
            if (!in) throw TermError("cannot open morphism file: " + push_file);
            nlohmann::json spec;
            in >> spec;
            TheoryMorphism L;
            L.source = resolve(spec.at("source").get<std::string>());
            L.target = resolve(spec.at("target").get<std::string>());
            for (auto& [op, term_text] : spec.at("assignment").items()) {
                auto arity = L.source->signature().arity_of(op);
                if (!arity) throw TermError("assignment for unknown operation " + op);
                L.assignment[op] =
                    parse_term_text(L.target, term_text.get<std::string>(), *arity);
            }
            MorphismCheck chk = check_theory_morphism(L);
            if (!chk.valid) {
                report["valid"] = false;
                report["message"] = chk.message;
                emit(g, report, out, "invalid theory morphism: " + chk.message + "\n");
                exit_code = 1;
            } else {
                PushforwardResult res = k0_pushforward(L);
                report["pushforward"] = to_json(res);
                if (res.inconclusive) exit_code = 2;
                emit(g, report, out, "pushforward: " + res.map.str() + "\n");
            }
        } else if (*cmd_aut) {
            TheoryPtr T = resolve(aut_theory_spec);
            AutGroupResult res = aut_group(T, aut_n, aut_bound);
            report["aut"] = to_json(res);
            if (!res.closed) exit_code = 2;
            emit(g, report, out,
                 "Aut(T_" + std::to_string(aut_n) + "): order " +
                     std::to_string(res.elements.size()) +
                     (res.closed ? "" : " (not closed within bound)") + "\n");
        } else if (*cmd_coh) {
            TheoryPtr S = resolve(coh_theories.at(0));
            TheoryPtr T = resolve(coh_theories.at(1));
            long long failures = 0;
            Json checks;
            MulticatReport unit = check_unit_coherence(T, coh_cap);
            checks["unit_square"] =
                Json{{"checked", unit.checked}, {"failures", unit.failures}};
            failures += unit.failures;
            MulticatReport sym = check_symmetry_square(S, T, std::min(coh_cap, 3),
                                                       coh_samples, g.seed);
            checks["symmetry_square"] =
                Json{{"checked", sym.checked}, {"failures", sym.failures}};
            failures += sym.failures;
            MulticatReport mod = check_m1_module(T, coh_cap);
            checks["m1_module"] =
                Json{{"checked", mod.checked}, {"failures", mod.failures}};
            failures += mod.failures;
            MulticatReport comp = check_multicat_composition(T, std::min(coh_cap, 3));
            checks["composition"] =
                Json{{"checked", comp.checked}, {"failures", comp.failures}};
            failures += comp.failures;
            if (coh_theories.size() == 3) {
                TheoryPtr V = resolve(coh_theories.at(2));
                MulticatReport assoc =
                    check_associativity(S, T, V, std::min(coh_cap, 3), coh_samples, g.seed);
                checks["associativity"] =
                    Json{{"checked", assoc.checked}, {"failures", assoc.failures}};
                failures += assoc.failures;
            }
            report["coherence"] = checks;
            report["failures"] = failures;
            if (failures > 0) exit_code = 1;
            emit(g, report, out,
                 failures == 0 ? "all coherence checks passed\n"
                               : std::to_string(failures) + " coherence failures\n");
        }
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 3;
    } catch (const BudgetExceeded& e) {
        err << "bound-limited: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        err << "bound-limited: " << e.what() << "\n";
        return 2;
    } catch (const TermError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }

    if (g.timing && g.json) {
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();
        err << "# timing_ms " << elapsed << "\n";
    }
    return exit_code;
}

}  // namespace lawkit::cli
