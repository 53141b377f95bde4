// K0 certificates and the pi0-level assembly machinery.
//
// The trichotomy: a finite model with at least two elements separates all
// free-model ranks, so K0 is infinite cyclic; otherwise an isomorphism
// T_1 = T_{1+d} found within bounds certifies a cyclic group of order d;
// otherwise the result is bound-limited.

#include "lawkit/kzero.hpp"

#include <algorithm>

namespace lawkit {

std::string CyclicGroupDesc::str() const {
    if (!finite) return "Z";
    if (order == 1) return "0";
    return "Z/" + std::to_string(order);
}

namespace {

// Smallest usable separating invariant: any model with >= 2 elements.
std::optional<FiniteModel> find_separating_model(const TheoryPtr& T, int size_cap,
                                                 std::vector<std::string>& notes) {
    auto pres = std::make_shared<Presentation>(T->presentation());
    for (int k = 2; k <= size_cap; ++k) {
        std::optional<FiniteModel> found;
        EnumerationOptions opts;
        opts.node_budget = 20000000;
        try {
            enumerate_models_cb(pres, k,
                                [&](const FiniteModel& m) {
                                    found = m;
                                    return false;
                                },
                                opts);
        } catch (const BudgetExceeded&) {
            notes.push_back("model search at size " + std::to_string(k) +
                            " stopped by budget");
            return std::nullopt;
        }
        if (found) return found;
    }
    return std::nullopt;
}

}  // namespace

K0Certificate k0(TheoryPtr T, const K0Bounds& bounds) {
    K0Certificate cert;
    cert.theory = T;
    cert.bounds = bounds;

    if (auto model = find_separating_model(T, bounds.model_size_cap, cert.notes)) {
        cert.status = K0Certificate::Certified;
        cert.group = {false, 0};
        cert.invariant = std::move(model);
        cert.notes.push_back("separating invariant of size " +
                             std::to_string(cert.invariant->size));
        return cert;
    }
    cert.notes.push_back("no model with 2 <= size <= " +
                         std::to_string(bounds.model_size_cap));

    // torsion: look for the least m with T_1 isomorphic to T_m
    for (int m = 2; m <= bounds.arity_bound; ++m) {
        std::vector<Term> candidates;
        try {
            candidates = enumerate_elements(*T, m, bounds.term_bound);
        } catch (const CapExceeded&) {
            cert.notes.push_back("candidate enumeration at rank " + std::to_string(m) +
                                 " exceeded the cap");
            break;
        }
        bool prune = T->backend()->nf_projection_implies_var();
        for (const Term& c : candidates) {
            if (prune) {
                std::vector<bool> seen(static_cast<std::size_t>(m), false);
                c.collect_vars(seen);
                if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
                    continue;
            }
            FMor f = FMor::make(T, 1, m, {c});
            IsoSearch search = is_iso(f, bounds.term_bound);
            if (search.status == IsoSearch::FoundInverse) {
                cert.status = K0Certificate::Certified;
                cert.group = {true, m - 1};
                cert.witness_u = f;
                cert.witness_v = search.inverse;
                cert.notes.push_back("witness at rank " + std::to_string(m) +
                                     "; lower ranks searched exhaustively within "
                                     "term bound " +
                                     std::to_string(bounds.term_bound));
                return cert;
            }
        }
        cert.notes.push_back("no isomorphism T_1 = T_" + std::to_string(m) +
                             " within term bound " + std::to_string(bounds.term_bound));
    }

    cert.status = K0Certificate::BoundLimited;
    cert.group = {false, 0};
    cert.notes.push_back("infinite cyclic within bounds; no certificate found");
    return cert;
}

bool verify_certificate(const K0Certificate& cert) {
    if (cert.status != K0Certificate::Certified) return false;
    const TheoryPtr& T = cert.theory;
    if (!cert.group.finite) {
        if (!cert.invariant || cert.invariant->size < 2) return false;
        if (!check_model(*cert.invariant).valid) return false;
        // |M|^m are pairwise distinct for |M| >= 2: the invariant separates
        // every pair of ranks up to the arity bound
        long long size = cert.invariant->size;
        long long prev = 1;
        for (int r = 1; r <= cert.bounds.arity_bound; ++r) {
            long long cur = prev * size;
            if (cur <= prev) return false;
            prev = cur;
        }
        return true;
    }
    if (!cert.witness_u || !cert.witness_v) return false;
    const FMor& u = *cert.witness_u;
    const FMor& v = *cert.witness_v;
    if (u.src != 1 || v.dst != 1 || u.dst != v.src) return false;
    if (u.dst != static_cast<int>(cert.group.order) + 1) return false;
    return compose(v, u) == identity(T, 1) && compose(u, v) == identity(T, u.dst);
}

CyclicMap cyclic_generator_map(const CyclicGroupDesc& src, const CyclicGroupDesc& dst) {
    CyclicMap map;
    map.source = src;
    map.target = dst;
    map.well_defined = !src.finite || (dst.finite && src.order % dst.order == 0);
    map.surjective = true;  // generator maps to generator
    map.injective = src == dst;
    return map;
}

std::string CyclicMap::str() const {
    std::string s = source.str() + " -> " + target.str();
    if (!well_defined) return s + " (not well-defined)";
    if (injective && surjective) return s + " (isomorphism)";
    if (target.finite && target.order == 1) return s + " (zero map)";
    return s + " (surjective, not injective)";
}

AssemblyResult assembly_pi0(TheoryPtr T, const K0Bounds& bounds) {
    AssemblyResult out;
    out.source_cert = k0(T, bounds);
    Linearization lin = linearize(T);
    out.target_cert = k0(lin.kt.combined, bounds);
    if (out.source_cert.status != K0Certificate::Certified ||
        out.target_cert.status != K0Certificate::Certified) {
        out.cls = AssemblyResult::Inconclusive;
        out.note = "a K0 certificate is bound-limited";
        return out;
    }
    // K0(Ab) = Z, so the source of the assembly map is K0(T) itself and the
    // map sends generator to generator.
    out.map = cyclic_generator_map(out.source_cert.group, out.target_cert.group);
    if (out.map.injective && out.map.surjective)
        out.cls = AssemblyResult::Isomorphism;
    else if (out.map.target.finite && out.map.target.order == 1)
        out.cls = AssemblyResult::Zero;
    else
        out.cls = AssemblyResult::SurjectiveNotInjective;
    return out;
}

PushforwardResult k0_pushforward(const TheoryMorphism& L, const K0Bounds& bounds) {
    MorphismCheck chk = check_theory_morphism(L);
    if (!chk.valid) throw TermError("k0_pushforward: invalid theory morphism: " + chk.message);
    PushforwardResult out;
    out.source_cert = k0(L.source, bounds);
    out.target_cert = k0(L.target, bounds);
    if (out.source_cert.status != K0Certificate::Certified ||
        out.target_cert.status != K0Certificate::Certified) {
        out.inconclusive = true;
        out.note = "a K0 certificate is bound-limited";
        return out;
    }
    out.map = cyclic_generator_map(out.source_cert.group, out.target_cert.group);
    if (!out.map.well_defined) {
        // would contradict functoriality; certificates disagree with the map
        out.inconclusive = true;
        out.note = "certificates are inconsistent with a generator-to-generator map";
    }
    return out;
}

K0Ring k0_ring(TheoryPtr T, const K0Bounds& bounds) {
    CommutativityReport comm = is_commutative_theory(T);
    if (comm.verdict != CommutativityVerdict::Commutative)
        throw TermError("k0_ring: theory " + T->name() + " is not verified commutative");
    K0Ring ring;
    ring.cert = k0(T, bounds);
    ring.group = ring.cert.group;
    // [T_m][T_n] = [T_mn]; with g = [T_1] this gives g*g = g, the usual
    // multiplication on Z or Z/d
    ring.description = "ring " + ring.group.str() + " with unit [T_1], [T_m]*[T_n]=[T_mn]";
    return ring;
}

AutGroupResult aut_group(TheoryPtr T, int n, int size_bound, long long cap) {
    AutGroupResult out;
    std::vector<FMor> homs;
    try {
        homs = hom_enumerate(T, n, n, size_bound, cap);
    } catch (const CapExceeded& e) {
        out.note = std::string("hom enumeration capped: ") + e.what();
        return out;
    }
    // invertible elements among the enumerated endomorphisms
    std::vector<FMor> units;
    FMor id = identity(T, n);
    for (const FMor& f : homs) {
        for (const FMor& g : homs) {
            if (compose(f, g) == id && compose(g, f) == id) {
                units.push_back(f);
                break;
            }
        }
    }
    out.elements = units;
    out.inverses.assign(units.size(), -1);
    auto find_index = [&](const FMor& f) -> int {
        for (std::size_t i = 0; i < units.size(); ++i)
            if (units[i] == f) return static_cast<int>(i);
        return -1;
    };
    out.identity_index = find_index(id);
    out.closed = out.identity_index >= 0;
    out.table.assign(units.size(), std::vector<int>(units.size(), -1));
    for (std::size_t i = 0; i < units.size(); ++i) {
        for (std::size_t j = 0; j < units.size(); ++j) {
            int idx = find_index(compose(units[i], units[j]));
            out.table[i][j] = idx;
            if (idx < 0) out.closed = false;
            if (idx == out.identity_index) {
                if (out.inverses[i] < 0) out.inverses[i] = static_cast<int>(j);
            }
        }
    }
    out.abelian = out.closed;
    for (std::size_t i = 0; i < units.size() && out.abelian; ++i)
        for (std::size_t j = 0; j < units.size() && out.abelian; ++j)
            out.abelian = out.table[i][j] == out.table[j][i];
    if (!out.closed && out.note.empty())
        out.note = "composition leaves the enumerated set; increase the bound";
    return out;
}

}  // namespace lawkit
