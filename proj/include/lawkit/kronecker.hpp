// Kronecker products of theories, the bilinear functor on free-model
// categories, its axiom checks, and commutativity detection.

#pragma once

#include "lawkit/theory.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace lawkit {

struct KroneckerTheory {
    TheoryPtr left;
    TheoryPtr right;
    TheoryPtr combined;
    TheoryMorphism embed_left;
    TheoryMorphism embed_right;
    // operation renames applied to resolve collisions (identity when none)
    std::map<std::string, std::string> rename_left;
    std::map<std::string, std::string> rename_right;
    bool embeddings_verified = false;
    std::string note;  // backend choice, budget limitations
};

// Combined presentation only (no backend): both signatures plus one
// commutation equation per pair of operations, constants included.
Presentation kronecker_presentation(const Presentation& s, const Presentation& t,
                                    std::map<std::string, std::string>* rename_left,
                                    std::map<std::string, std::string>* rename_right);

KroneckerTheory kronecker(TheoryPtr S, TheoryPtr T);

// r-fold block coproduct of f (the morphism r x f), and its transpose-
// conjugate f x r.
FMor times_left(int r, const FMor& f);
FMor times_right(const FMor& f, int r);

// The permutation T_{mn} -> T_{nm} sending block index (i,j) to (j,i).
FMor block_transpose(TheoryPtr T, int m, int n);

struct BilinearWitness {
    KroneckerTheory kt;
    long long object_map(long long m, long long n) const { return m * n; }
};

BilinearWitness bilinear_witness(TheoryPtr S, TheoryPtr T);
BilinearWitness bilinear_witness(KroneckerTheory kt);

// Image of a factor morphism in the combined theory.
FMor embed_morphism(const KroneckerTheory& kt, const FMor& f, Side side);

// P(f,g): computes both composites of the commuting square and asserts
// their equality before returning. A mismatch indicates a backend defect.
FMor bilinear_on_morphisms(const BilinearWitness& W, const FMor& f, const FMor& g);

struct BilinearReport {
    long long pairs_checked = 0;
    long long square_failures = 0;
    long long delta_failures = 0;
    long long monoidality_failures = 0;
    bool all_passed() const {
        return !square_failures && !delta_failures && !monoidality_failures;
    }
};

BilinearReport check_bilinear_axioms(const BilinearWitness& W, int samples,
                                     int arity_bound, std::uint64_t seed);

enum class CommutativityVerdict { Commutative, NonCommutative, Inconclusive };

struct CommutativityReport {
    CommutativityVerdict verdict = CommutativityVerdict::Inconclusive;
    // per operation pair: the commutation equation and its status
    struct PairEvidence {
        std::string op_left, op_right;
        Equation equation;
        bool holds = false;
    };
    std::vector<PairEvidence> pairs;
    // non-commutative witnesses
    std::string witness_kind;  // "finite-model" or "normal-form-separation"
    std::optional<int> witness_model_size;
    std::vector<std::vector<int>> witness_tables;
    std::vector<int> witness_assignment;
    int witness_pair_index = -1;
    std::string note;
};

CommutativityReport is_commutative_theory(TheoryPtr T, long long proof_budget = 20000,
                                          int model_size_bound = 6);

}  // namespace lawkit
