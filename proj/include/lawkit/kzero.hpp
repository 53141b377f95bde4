// K0 of a theory with machine-checkable certificates, the pi0-level assembly
// map, pushforwards along theory morphisms, the K0 ring of a commutative
// theory, and automorphism groups of free models.

#pragma once

#include "lawkit/finite_model.hpp"
#include "lawkit/kronecker.hpp"
#include "lawkit/linearize.hpp"
#include "lawkit/theory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lawkit {

struct CyclicGroupDesc {
    bool finite = false;
    long long order = 0;  // >= 1 when finite; order 1 is the trivial group
    std::string str() const;
    bool operator==(const CyclicGroupDesc& o) const {
        return finite == o.finite && (!finite || order == o.order);
    }
};

struct K0Bounds {
    int term_bound = 6;
    int arity_bound = 6;
    int model_size_cap = 4;
};

struct K0Certificate {
    TheoryPtr theory;
    enum Status { Certified, BoundLimited } status = BoundLimited;
    CyclicGroupDesc group;
    // torsion witness: iso pair T_1 -> T_{1+d} -> T_1 (when finite order d)
    std::optional<FMor> witness_u;
    std::optional<FMor> witness_v;
    // separating invariant: a finite model with >= 2 elements (when infinite)
    std::optional<FiniteModel> invariant;
    K0Bounds bounds;
    std::vector<std::string> notes;
};

K0Certificate k0(TheoryPtr T, const K0Bounds& bounds = {});

// Witness compositions normalize to identities; separating invariants have
// |M| >= 2 and pass check_model.
bool verify_certificate(const K0Certificate& cert);

struct CyclicMap {
    CyclicGroupDesc source;
    CyclicGroupDesc target;
    // generator maps to generator; well-defined iff target order divides
    // source order when the source is finite
    bool well_defined = true;
    bool surjective = true;
    bool injective = false;
    std::string str() const;
};

CyclicMap cyclic_generator_map(const CyclicGroupDesc& src, const CyclicGroupDesc& dst);

struct AssemblyResult {
    K0Certificate source_cert;  // K0(T)
    K0Certificate target_cert;  // K0(Z (x) T)
    CyclicMap map;
    enum Class { Isomorphism, Zero, SurjectiveNotInjective, Inconclusive } cls =
        Inconclusive;
    std::string note;
};

AssemblyResult assembly_pi0(TheoryPtr T, const K0Bounds& bounds = {});

struct PushforwardResult {
    K0Certificate source_cert;
    K0Certificate target_cert;
    CyclicMap map;
    bool inconclusive = false;
    std::string note;
};

PushforwardResult k0_pushforward(const TheoryMorphism& L, const K0Bounds& bounds = {});

struct K0Ring {
    CyclicGroupDesc group;
    // [T_m]*[T_n] = [T_mn]; on the chosen generator g = [T_1], g*g = g, so
    // the ring is Z or Z/d with the usual multiplication.
    std::string description;
    K0Certificate cert;
};

// Refused (throws TermError) for theories not verified commutative.
K0Ring k0_ring(TheoryPtr T, const K0Bounds& bounds = {});

struct AutGroupResult {
    std::vector<FMor> elements;             // invertible endomorphisms found
    std::vector<std::vector<int>> table;    // composition table
    int identity_index = -1;
    std::vector<int> inverses;
    bool closed = false;                    // closure within the search bound
    bool abelian = false;
    std::string note;
};

AutGroupResult aut_group(TheoryPtr T, int n, int size_bound = -1,
                         long long cap = 100000);

}  // namespace lawkit
