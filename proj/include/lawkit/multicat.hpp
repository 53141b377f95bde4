// The finite-arity multicategory layer: the based multicategory M1, the
// underlying multicategory of a free-model category, its M1-module structure,
// and the coherence diagrams behind lax monoidality, checked on bounded
// windows.

#pragma once

#include "lawkit/kronecker.hpp"
#include "lawkit/theory.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lawkit {

// The two-object based multicategory: hom(0...0; 0) and hom(0..1..0; 1) are
// points, everything else is empty. A morphism is determined by its profile.
struct M1Morphism {
    std::vector<int> sources;
    int target = 0;
};

struct M1 {
    static bool valid(const std::vector<int>& sources, int target);
    static long long hom_count(const std::vector<int>& sources, int target) {
        return valid(sources, target) ? 1 : 0;
    }
    // composition by profile substitution; inputs must be valid morphisms
    static M1Morphism compose(const M1Morphism& f, const std::vector<M1Morphism>& gs);
};

M1 m1();

struct M1AxiomReport {
    long long checked = 0;
    long long failures = 0;
};

// Exhaustive based-multicategory axioms for M1 up to the arity cap.
M1AxiomReport check_m1_axioms(int arity_cap);

// U F_T with objects 0..arity_cap; n-ary homs U(c1..cn; d) are the morphism
// sets F_T(T_{c1+...+cn}, T_d), enumerated within the size bound.
class UnderlyingMulticategory {
public:
    UnderlyingMulticategory(TheoryPtr T, int arity_cap, int size_bound,
                            long long hom_cap = 100000);

    TheoryPtr theory() const { return theory_; }
    int arity_cap() const { return arity_cap_; }
    int size_bound() const { return size_bound_; }

    std::vector<FMor> hom(const std::vector<int>& sources, int target) const;
    FMor compose(const FMor& f, const std::vector<FMor>& gs) const;
    int basepoint() const { return 0; }

private:
    TheoryPtr theory_;
    int arity_cap_;
    int size_bound_;
    long long hom_cap_;
};

UnderlyingMulticategory underlying(TheoryPtr T, int arity_cap, int size_bound = 3);

struct MulticatReport {
    long long checked = 0;
    long long failures = 0;
    bool exhaustive = true;  // false when windows were sampled
    std::string note;
};

// Action laws of the canonical M1-module structure on U F_T: basepoint
// insertions act as identities; action associativity on composites.
MulticatReport check_m1_module(TheoryPtr T, int arity_cap, int size_bound = 2,
                               long long budget = 200000);

// Composition of U F_T is associative and unital on tuples within the caps.
MulticatReport check_multicat_composition(TheoryPtr T, int arity_cap,
                                          int size_bound = 2,
                                          long long budget = 200000);

// Left-unit square: both bilinear maps of M1 x U F_T agree on the two
// canonical morphism forms, and P(id_1, f) = f under E (x) T = T.
MulticatReport check_unit_coherence(TheoryPtr T, int arity_cap, int size_bound = 2,
                                    long long budget = 200000);

// The symmetry square for a pair of theories, on (f, id)/(id, g) forms plus
// samples.
MulticatReport check_symmetry_square(TheoryPtr S, TheoryPtr T, int arity_cap,
                                     int samples, std::uint64_t seed);

// Associativity: the two iterated bilinear maps into S (x) T (x) V agree.
MulticatReport check_associativity(TheoryPtr S, TheoryPtr T, TheoryPtr V,
                                   int arity_cap, int samples, std::uint64_t seed);

}  // namespace lawkit
