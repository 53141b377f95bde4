// Leavitt algebra presentations and their confluent normal form.
//
// Generator indexing: R1..Ra are 0..a-1, C1..Ca are a..2a-1. The rewrite
// rules are Ci.Rj -> delta_ij and Ra.Ca -> 1 - sum_{i<a} Ri.Ci; irreducible
// words are R-runs followed by C-runs avoiding the Ra.Ca seam.

#include "lawkit/linearize.hpp"

#include <deque>

namespace lawkit {

std::vector<std::string> leavitt_generator_names(int a) {
    std::vector<std::string> names;
    for (int i = 1; i <= a; ++i) names.push_back("R" + std::to_string(i));
    for (int i = 1; i <= a; ++i) names.push_back("C" + std::to_string(i));
    return names;
}

RingPresentation leavitt_presentation(int a) {
    if (a < 2) throw TermError("leavitt_presentation requires arity >= 2");
    RingPresentation rp;
    rp.generators = leavitt_generator_names(a);
    rp.unital = true;
    for (int i = 0; i < a; ++i) {
        for (int j = 0; j < a; ++j) {
            NCPoly lhs = NCPoly::monomial(1, {a + i, j});  // Ci.Rj
            NCPoly rhs = i == j ? NCPoly::one() : NCPoly::zero();
            rp.relations.emplace_back(lhs, rhs);
        }
    }
    NCPoly sum;
    for (int i = 0; i < a; ++i) sum = sum + NCPoly::monomial(1, {i, a + i});
    rp.relations.emplace_back(sum, NCPoly::one());
    return rp;
}

namespace {

// Rewrites one word; returns the replacement polynomial if a redex exists.
std::optional<NCPoly> rewrite_word(int a, const NCPoly::Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        int x = w[i], y = w[i + 1];
        if (x >= a && y < a) {
            // Ci.Rj -> delta
            NCPoly::Word rest;
            rest.insert(rest.end(), w.begin(), w.begin() + static_cast<long>(i));
            rest.insert(rest.end(), w.begin() + static_cast<long>(i) + 2, w.end());
            if (x - a == y) return NCPoly::monomial(1, rest);
            return NCPoly::zero();
        }
        if (x == a - 1 && y == 2 * a - 1) {
            // Ra.Ca -> 1 - sum_{i<a-1} Ri.Ci
            NCPoly repl = NCPoly::one();
            for (int k = 0; k + 1 < a; ++k)
                repl = repl - NCPoly::monomial(1, {k, a + k});
            NCPoly out;
            for (const auto& [rw, rc] : repl.coeffs()) {
                NCPoly::Word word;
                word.insert(word.end(), w.begin(), w.begin() + static_cast<long>(i));
                word.insert(word.end(), rw.begin(), rw.end());
                word.insert(word.end(), w.begin() + static_cast<long>(i) + 2, w.end());
                out.add_monomial(rc, word);
            }
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace

NCPoly leavitt_normalize(int a, const NCPoly& p) {
    NCPoly result;
    std::deque<std::pair<NCPoly::Word, long long>> todo(p.coeffs().begin(),
                                                        p.coeffs().end());
    while (!todo.empty()) {
        auto [w, c] = todo.front();
        todo.pop_front();
        auto repl = rewrite_word(a, w);
        if (!repl) {
            result.add_monomial(c, w);
            continue;
        }
        for (const auto& [rw, rc] : repl->coeffs()) todo.emplace_back(rw, rc * c);
    }
    return result;
}

RankIsoProof verify_rank_iso(int a) {
    RankIsoProof proof;
    proof.arity = a;
    if (a < 2) {
        proof.message = "arity must be >= 2";
        return proof;
    }
    bool ok = true;
    proof.cr_matrix.assign(static_cast<std::size_t>(a),
                           std::vector<NCPoly>(static_cast<std::size_t>(a)));
    for (int i = 0; i < a; ++i) {
        for (int j = 0; j < a; ++j) {
            NCPoly entry = leavitt_normalize(a, NCPoly::monomial(1, {a + i, j}));
            proof.cr_matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                entry;
            NCPoly expect = i == j ? NCPoly::one() : NCPoly::zero();
            if (entry != expect) ok = false;
        }
    }
    NCPoly sum;
    for (int i = 0; i < a; ++i) sum = sum + NCPoly::monomial(1, {i, a + i});
    proof.rc_sum = leavitt_normalize(a, sum);
    if (proof.rc_sum != NCPoly::one()) ok = false;
    proof.verified = ok;
    proof.message = ok ? "rank-1 and rank-" + std::to_string(a) +
                             " free modules are isomorphic"
                       : "normalization mismatch";
    return proof;
}

RingPresentation group_ring(const FiniteGroup& g) {
    RingPresentation rp;
    rp.unital = true;
    for (int i = 0; i < g.order; ++i) rp.generators.push_back("g" + std::to_string(i));
    int e = g.identity();
    rp.relations.emplace_back(NCPoly::generator(e), NCPoly::one());
    for (int i = 0; i < g.order; ++i)
        for (int j = 0; j < g.order; ++j)
            rp.relations.emplace_back(NCPoly::monomial(1, {i, j}),
                                      NCPoly::generator(g.times(i, j)));
    return rp;
}

}  // namespace lawkit
