// Word-problem backends: each decides equality of terms in free models by
// computing canonical normal forms. Backends are immutable and pure.

#pragma once

#include "lawkit/group.hpp"
#include "lawkit/ncpoly.hpp"
#include "lawkit/rewrite.hpp"
#include "lawkit/term.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lawkit {

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Backend {
public:
    virtual ~Backend() = default;
    virtual std::string kind() const = 0;

    // Canonical representative of t's class in the free model on `context`
    // generators. May throw BudgetExceeded.
    virtual Term normal_form(const Term& t, int context) const = 0;

    // Whether distinct normal forms certify genuine inequality.
    virtual bool decides_equality() const { return true; }

    // Size of the free model on `context` generators, when finite.
    virtual std::optional<long long> element_count(int /*context*/) const {
        return std::nullopt;
    }
    // All elements of the free model, in a fixed deterministic order.
    virtual std::vector<Term> elements(int context) const;

    // Elements with all integer coefficients bounded (linear backends only).
    virtual std::optional<std::vector<Term>> elements_coeff_bounded(int /*context*/,
                                                                    int /*bound*/) const {
        return std::nullopt;
    }

    // Whether normal_form(t) = xi implies xi occurs in t. Holds for every
    // backend except degenerate ones where all elements coincide.
    virtual bool nf_projection_implies_var() const { return true; }

    // Same backend over renamed operations.
    virtual std::shared_ptr<Backend> renamed(
        const std::map<std::string, std::string>& ren) const = 0;
};

using BackendPtr = std::shared_ptr<const Backend>;

std::string rename_op(const std::map<std::string, std::string>& ren,
                      const std::string& name);
Term rename_ops(const Term& t, const std::map<std::string, std::string>& ren);

// Decides equality with a rewrite system; exact when the system is
// confluence-certified, budget-limited positive-only otherwise.
class TrsBackend : public Backend {
public:
    explicit TrsBackend(RewriteSystem trs, int cantor_arity = 0)
        : trs_(std::move(trs)), cantor_arity_(cantor_arity) {}
    std::string kind() const override { return "trs"; }
    Term normal_form(const Term& t, int) const override { return trs_.normalize(t); }
    bool decides_equality() const override { return trs_.confluence_certified; }
    std::shared_ptr<Backend> renamed(
        const std::map<std::string, std::string>& ren) const override;

    const RewriteSystem& system() const { return trs_; }
    int cantor_arity() const { return cantor_arity_; }

private:
    RewriteSystem trs_;
    int cantor_arity_ = 0;  // nonzero for the Cantor catalogue systems
};

// Boolean terms as functions {0,1}^n -> {0,1}; canonical form is the full
// disjunctive normal form (or a constant).
class TruthTableBackend : public Backend {
public:
    TruthTableBackend(std::string and_op, std::string or_op, std::string not_op,
                      std::string bot, std::string top)
        : and_(std::move(and_op)),
          or_(std::move(or_op)),
          not_(std::move(not_op)),
          bot_(std::move(bot)),
          top_(std::move(top)) {}
    std::string kind() const override { return "truth-table"; }
    Term normal_form(const Term& t, int context) const override;
    std::optional<long long> element_count(int context) const override;
    std::vector<Term> elements(int context) const override;
    std::shared_ptr<Backend> renamed(
        const std::map<std::string, std::string>& ren) const override;

    std::vector<bool> table(const Term& t, int context) const;
    Term term_of_table(const std::vector<bool>& tab, int context) const;

private:
    std::string and_, or_, not_, bot_, top_;
};

// Free groups: terms reduce to reduced words.
class ReducedWordBackend : public Backend {
public:
    ReducedWordBackend(std::string mul, std::string inv, std::string unit)
        : mul_(std::move(mul)), inv_(std::move(inv)), unit_(std::move(unit)) {}
    std::string kind() const override { return "reduced-word"; }
    Term normal_form(const Term& t, int context) const override;
    std::shared_ptr<Backend> renamed(
        const std::map<std::string, std::string>& ren) const override;

    // signed generator indices; +i is xi, -i its inverse
    std::vector<int> word(const Term& t) const;

private:
    std::string mul_, inv_, unit_;
};

// Sets with a permutation (Z-sets): elements are s^k(xi) with k an integer.
class IntShiftBackend : public Backend {
public:
    IntShiftBackend(std::string shift, std::string unshift)
        : s_(std::move(shift)), t_(std::move(unshift)) {}
    std::string kind() const override { return "int-shift"; }
    Term normal_form(const Term& t, int context) const override;
    std::shared_ptr<Backend> renamed(
        const std::map<std::string, std::string>& ren) const override;

private:
    std::string s_, t_;
};

// Abelian groups (modulus 0) and Z/k-modules (modulus k): elements of the
// free model are integer coefficient vectors.
class LinearBackend : public Backend {
public:
    LinearBackend(std::string add, std::string neg, std::string zero, long long modulus)
        : add_(std::move(add)), neg_(std::move(neg)), zero_(std::move(zero)),
          modulus_(modulus) {}
    std::string kind() const override { return modulus_ ? "matrix-modk" : "matrix-z"; }
    Term normal_form(const Term& t, int context) const override;
    std::optional<long long> element_count(int context) const override;
    std::vector<Term> elements(int context) const override;
    std::optional<std::vector<Term>> elements_coeff_bounded(int context,
                                                            int bound) const override;
    bool nf_projection_implies_var() const override { return modulus_ != 1; }
    std::shared_ptr<Backend> renamed(
        const std::map<std::string, std::string>& ren) const override;

    long long modulus() const { return modulus_; }
    std::vector<long long> coefficients(const Term& t, int context) const;
    Term term_of_coefficients(const std::vector<long long>& c) const;

private:
    long long reduce(long long v) const;
    std::string add_, neg_, zero_;
    long long modulus_ = 0;
};

// G-sets for a finite group: elements of the free model on n generators are
// pairs (group element, generator index).
class GSetTupleBackend : public Backend {
public:
    GSetTupleBackend(FiniteGroup group, std::map<std::string, int> op_to_element)
        : group_(std::move(group)), op_elem_(std::move(op_to_element)) {
        for (const auto& [name, g] : op_elem_) elem_op_[g] = name;
    }
    std::string kind() const override { return "gset-tuple"; }
    Term normal_form(const Term& t, int context) const override;
    std::optional<long long> element_count(int context) const override;
    std::vector<Term> elements(int context) const override;
    std::shared_ptr<Backend> renamed(
        const std::map<std::string, std::string>& ren) const override;

    const FiniteGroup& group() const { return group_; }
    const std::map<std::string, int>& op_elements() const { return op_elem_; }
    std::pair<int, int> element_of(const Term& t) const;  // (group elt, var)
    Term term_of_element(int g, int var) const;

private:
    FiniteGroup group_;
    std::map<std::string, int> op_elem_;
    std::map<int, std::string> elem_op_;
};

// Kronecker product with a G-sets factor: group operations are pushed to the
// leaves, turning a term over n generators into an inner-theory term over
// n*|G| generators.
class GSetExpansionBackend : public Backend {
public:
    GSetExpansionBackend(BackendPtr inner, FiniteGroup group,
                         std::map<std::string, int> gop_to_element)
        : inner_(std::move(inner)), group_(std::move(group)),
          gop_elem_(std::move(gop_to_element)) {
        for (const auto& [name, g] : gop_elem_) elem_gop_[g] = name;
    }
    std::string kind() const override { return "gset-expansion"; }
    Term normal_form(const Term& t, int context) const override;
    std::optional<long long> element_count(int context) const override;
    std::vector<Term> elements(int context) const override;
    std::optional<std::vector<Term>> elements_coeff_bounded(int context,
                                                            int bound) const override;
    bool decides_equality() const override { return inner_->decides_equality(); }
    bool nf_projection_implies_var() const override {
        return inner_->nf_projection_implies_var();
    }
    std::shared_ptr<Backend> renamed(
        const std::map<std::string, std::string>& ren) const override;

    // variable embedding: atom (g, i) <-> x_{(i-1)|G| + g + 1}
    int embed_var(int g, int var) const { return (var - 1) * group_.order + g + 1; }

private:
    Term push_down(int g, const Term& t) const;
    Term pull_back(const Term& t) const;

    BackendPtr inner_;
    FiniteGroup group_;
    std::map<std::string, int> gop_elem_;
    std::map<int, std::string> elem_gop_;
};

// Modules over the Leavitt algebra L_a: the linearization of Cantor
// algebras. Terms evaluate to vectors of noncommutative polynomials.
class LeavittMatrixBackend : public Backend {
public:
    LeavittMatrixBackend(int arity, std::string add, std::string neg, std::string zero,
                         std::string mu, std::vector<std::string> nu)
        : a_(arity), add_(std::move(add)), neg_(std::move(neg)), zero_(std::move(zero)),
          mu_(std::move(mu)), nu_(std::move(nu)) {}
    std::string kind() const override { return "leavitt-matrix"; }
    Term normal_form(const Term& t, int context) const override;
    std::shared_ptr<Backend> renamed(
        const std::map<std::string, std::string>& ren) const override;

    std::vector<NCPoly> evaluate(const Term& t, int context) const;
    Term term_of_vector(const std::vector<NCPoly>& v) const;

private:
    int a_;
    std::string add_, neg_, zero_, mu_;
    std::vector<std::string> nu_;
};

// Modules over a ring proven trivial: every term equals zero.
class TrivialModuleBackend : public Backend {
public:
    explicit TrivialModuleBackend(std::string zero) : zero_(std::move(zero)) {}
    std::string kind() const override { return "trivial-module"; }
    Term normal_form(const Term&, int) const override { return Term::apply(zero_); }
    std::optional<long long> element_count(int) const override { return 1; }
    std::vector<Term> elements(int) const override { return {Term::apply(zero_)}; }
    bool nf_projection_implies_var() const override { return false; }
    std::shared_ptr<Backend> renamed(
        const std::map<std::string, std::string>& ren) const override {
        return std::make_shared<TrivialModuleBackend>(rename_op(ren, zero_));
    }

private:
    std::string zero_;
};

}  // namespace lawkit
