// The category of finitely generated free models of a theory: objects are
// arities, morphisms are tuples of normal-form terms, composition is
// substitution.

#pragma once

#include "lawkit/backend.hpp"
#include "lawkit/term.hpp"

#include <memory>
#include <optional>
#include <random>
#include <vector>

namespace lawkit {

class Theory;
using TheoryPtr = std::shared_ptr<const Theory>;

class Theory {
public:
    Theory(Presentation pres, BackendPtr backend)
        : presentation_(std::move(pres)), backend_(std::move(backend)) {
        presentation_.validate();
    }

    const Presentation& presentation() const { return presentation_; }
    const Signature& signature() const { return presentation_.signature; }
    const std::string& name() const { return presentation_.name; }
    const BackendPtr& backend() const { return backend_; }

    Term normal_form(const Term& t, int context) const {
        signature().check_term(t, context);
        return backend_->normal_form(t, context);
    }
    bool equal(const Term& a, const Term& b, int context) const {
        return normal_form(a, context) == normal_form(b, context);
    }

private:
    Presentation presentation_;
    BackendPtr backend_;
};

TheoryPtr make_theory(Presentation pres, BackendPtr backend);

// A morphism T_src -> T_dst: src normal-form terms over context dst.
struct FMor {
    TheoryPtr theory;
    int src = 0;
    int dst = 0;
    std::vector<Term> components;

    // Validates arities and normalizes every component.
    static FMor make(TheoryPtr T, int src, int dst, std::vector<Term> comps);

    bool operator==(const FMor& other) const;
    bool operator!=(const FMor& other) const { return !(*this == other); }
    std::string str() const;
};

FMor identity(TheoryPtr T, int n);
// g after f; f.dst must equal g.src.
FMor compose(const FMor& g, const FMor& f);
FMor coproduct(const FMor& f, const FMor& g);
enum class Side { Left, Right };
FMor injection(TheoryPtr T, int n, int m, Side side);
// The block swap T_{n+m} -> T_{m+n}: first block of n moves past m.
FMor symmetry(TheoryPtr T, int n, int m);
bool is_identity(const FMor& f);

// All terms over the signature with size <= max_size, by increasing size,
// lexicographic within a size (variables first, operations in declaration
// order).
std::vector<Term> enumerate_terms(const Signature& sig, int context, int max_size);

// Distinct elements of the free model on `context` generators:
//  - size_bound >= 0: normal forms of terms of size <= size_bound;
//  - size_bound < 0: the whole free model (finite backends only).
std::vector<Term> enumerate_elements(const Theory& T, int context, int size_bound,
                                     long long cap = 100000);

std::vector<FMor> hom_enumerate(TheoryPtr T, int m, int n, int size_bound,
                                long long cap = 100000);

struct IsoSearch {
    enum Status {
        FoundInverse,
        NoInverseExhaustive,   // complete search of a finite hom-set
        NoInverseWithinBound,  // bounded search exhausted without a witness
    } status = NoInverseWithinBound;
    std::optional<FMor> inverse;
};

IsoSearch is_iso(const FMor& f, int term_bound = 6, long long cap = 200000);

struct TheoryMorphism {
    TheoryPtr source;
    TheoryPtr target;
    // each source operation of arity k maps to a target term over context k
    std::map<std::string, Term> assignment;

    Term translate(const Term& t) const;
    FMor translate(const FMor& f) const;
};

struct MorphismCheck {
    bool valid = false;
    std::optional<Equation> violated;  // a source equation whose translation fails
    std::string message;
};

MorphismCheck check_theory_morphism(const TheoryMorphism& L);
bool theory_morphisms_equal(const TheoryMorphism& a, const TheoryMorphism& b);

// Seeded random terms and morphisms for property checks.
Term random_term(const Theory& T, int context, int max_size, std::mt19937_64& rng);
FMor random_morphism(TheoryPtr T, int src, int dst, int max_size, std::mt19937_64& rng);

// ---- catalogue ----------------------------------------------------------

TheoryPtr sets_theory();
TheoryPtr boole_theory();
TheoryPtr cantor_theory(int arity);
TheoryPtr groups_theory();
TheoryPtr ab_theory();
TheoryPtr modr_theory(long long k);
TheoryPtr gsets_theory(const FiniteGroup& g);
TheoryPtr zsets_theory();

// The standard completed rewrite system for groups (for diagnostics).
RewriteSystem groups_rewrite_system();

// Builds a theory from a user presentation by bounded completion; the result
// is budget-limited when completion fails.
struct UserTheoryOptions {
    int kb_max_rules = 64;
    int kb_max_term_size = 40;
    long long trs_budget = 10000;
};
TheoryPtr theory_from_presentation(const Presentation& p,
                                   const UserTheoryOptions& opts = {});

// Resolves a CLI theory spec: catalogue name, "Cantor:a", "Mod:k",
// "GSets:C<k>|S3|<file.json>", or a path to a .thy file.
TheoryPtr resolve_theory(const std::string& spec);

}  // namespace lawkit
