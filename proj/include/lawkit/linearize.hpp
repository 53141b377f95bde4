// Linearization Z (x) T: coefficient rings of module categories, trivial-ring
// detection with replayable derivations, group rings, and Leavitt algebra
// normal forms.

#pragma once

#include "lawkit/kronecker.hpp"
#include "lawkit/ncpoly.hpp"
#include "lawkit/theory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lawkit {

// ---- Leavitt algebras ------------------------------------------------------

// Generators R1..Ra (indices 0..a-1) and C1..Ca (indices a..2a-1), relations
// Ci*Rj = delta_ij and sum_i Ri*Ci = 1: a^2 + 1 relations.
RingPresentation leavitt_presentation(int a);

// Confluent normal form under Ci.Rj -> delta_ij and Ra.Ca -> 1 - sum_{i<a} Ri.Ci.
NCPoly leavitt_normalize(int a, const NCPoly& p);

std::vector<std::string> leavitt_generator_names(int a);

struct RankIsoProof {
    int arity = 0;
    bool verified = false;
    // entry (i,j) of the a x a matrix Ci*Rj, normalized
    std::vector<std::vector<NCPoly>> cr_matrix;
    NCPoly rc_sum;  // sum Ri*Ci, normalized
    std::string message;
};

// Checks symbolically that the row R and column C^t compose to identity
// matrices over L_a: free modules of ranks 1 and a are isomorphic.
RankIsoProof verify_rank_iso(int a);

// ---- group rings -----------------------------------------------------------

// Generators are the group elements; relations are the multiplication table
// plus identification of the unit element with 1.
RingPresentation group_ring(const FiniteGroup& g);

// ---- equational derivations -------------------------------------------------

struct DerivationStep {
    int equation_index = -1;  // into the presentation the derivation is over
    bool forward = true;      // lhs->rhs or rhs->lhs
    std::vector<int> position;
    Subst binding;  // instantiation of the equation's variables
};

struct Derivation {
    std::vector<Term> terms;  // terms.size() == steps.size() + 1
    std::vector<DerivationStep> steps;
    int context = 1;
};

// Verifies every step against the presentation's equations.
bool replay_derivation(const Presentation& p, const Derivation& d);

// ---- linearization -----------------------------------------------------------

struct Linearization {
    KroneckerTheory kt;           // Z (x) T
    TheoryMorphism linearization;  // T -> Z (x) T
};

Linearization linearize(TheoryPtr T);

struct TrivialRingResult {
    bool trivial = false;
    std::string reason;       // when not shown trivial
    Derivation derivation;    // x1 = 0 over the combined presentation
    Presentation combined;    // the presentation the derivation replays against
};

// Attempts to derive that the free Z (x) T module on one generator collapses:
// x1 equals the zero constant. Heuristic search guided by constant collision;
// "not shown trivial" is a valid outcome.
TrivialRingResult detect_trivial_ring(TheoryPtr T, long long budget = 200000);

}  // namespace lawkit
