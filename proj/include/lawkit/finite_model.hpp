// Finite models of a presentation: enumeration by backtracking search with
// equation propagation, model homomorphisms, products, and abelian group
// objects.

#pragma once

#include "lawkit/theory.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace lawkit {

struct FiniteModel {
    std::shared_ptr<const Presentation> presentation;
    int size = 0;
    // tables[op] is dense, row-major: index = sum args[i] * k^(arity-1-i)
    std::vector<std::vector<int>> tables;

    int eval(int op_index, const std::vector<int>& args) const;
    int eval_term(const Term& t, const std::vector<int>& env) const;
    bool operator==(const FiniteModel& other) const {
        return size == other.size && tables == other.tables;
    }
};

struct ModelCheck {
    bool valid = true;
    int equation_index = -1;
    std::vector<int> assignment;
};

ModelCheck check_model(const FiniteModel& m);

FiniteModel model_from_tables(std::shared_ptr<const Presentation> pres, int size,
                              std::vector<std::vector<int>> tables);

struct EnumerationOptions {
    long long result_cap = 1000000;
    long long node_budget = 200000000;
    int jobs = 1;
};

// All model structures on {0..k-1} (not up to isomorphism), sorted by table
// contents. Throws CapExceeded / BudgetExceeded.
std::vector<FiniteModel> enumerate_models(std::shared_ptr<const Presentation> pres,
                                          int k, const EnumerationOptions& opts = {});
long long count_models(std::shared_ptr<const Presentation> pres, int k,
                       const EnumerationOptions& opts = {});
// Visits models one at a time; return false from the callback to stop.
void enumerate_models_cb(std::shared_ptr<const Presentation> pres, int k,
                         const std::function<bool(const FiniteModel&)>& cb,
                         const EnumerationOptions& opts = {});

std::vector<FiniteModel> dedup_up_to_iso(const std::vector<FiniteModel>& models);

// Maps commuting with all operation tables.
std::vector<std::vector<int>> hom_models(const FiniteModel& m, const FiniteModel& n,
                                         long long cap = 1000000);
bool is_model_hom(const FiniteModel& m, const FiniteModel& n,
                  const std::vector<int>& map);

FiniteModel product_model(const FiniteModel& m, const FiniteModel& n);

struct AbelianObjectWitness {
    FiniteModel base;
    std::vector<int> add;  // k*k row-major
    std::vector<int> neg;
    int zero = 0;
};

// Exhaustive over all models of size k and all abelian group structures on
// the carrier, filtered by the homomorphism conditions.
std::vector<AbelianObjectWitness> abelian_group_objects(
    std::shared_ptr<const Presentation> pres, int k,
    const EnumerationOptions& opts = {});

bool verify_abelian_witness(const AbelianObjectWitness& w);

// The free model on r generators realized as a finite model (finite
// backends only); generators come first in the carrier order used here.
struct RealizedFreeModel {
    FiniteModel model;
    std::vector<int> generators;  // carrier indices of x1..xr
};
RealizedFreeModel free_model_as_finite(TheoryPtr T, int r, long long cap = 100000);

}  // namespace lawkit
