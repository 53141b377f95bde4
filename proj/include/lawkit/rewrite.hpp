// Term rewriting: normalization by leftmost-innermost reduction, a
// Knuth-Bendix order for orienting equations, bounded completion, and
// critical-pair based confluence diagnostics.

#pragma once

#include "lawkit/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lawkit {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RewriteRule {
    Term lhs;
    Term rhs;
    int context = 0;  // variables of both sides lie in 1..context
};

// Knuth-Bendix order. Weights default to 1 per symbol (variables included);
// precedence is the declaration index in the signature, later declarations
// being greater. A unary weight-0 symbol must be the greatest symbol.
class KnuthBendixOrder {
public:
    explicit KnuthBendixOrder(const Signature& sig,
                              std::map<std::string, int> weights = {});

    // true iff s > t in the order
    bool greater(const Term& s, const Term& t) const;

private:
    int weight(const Term& t) const;
    int symbol_weight(const std::string& op) const;
    int precedence(const std::string& op) const;
    // multiset var condition: every variable occurs in s at least as often
    static bool var_condition(const Term& s, const Term& t);

    const Signature* sig_;
    std::map<std::string, int> weights_;
};

struct RewriteSystem {
    std::vector<RewriteRule> rules;
    long long step_budget = 10000;
    bool confluence_certified = false;

    // Leftmost-innermost normal form. Throws BudgetExceeded when the step
    // budget runs out; never returns a wrong answer silently.
    Term normalize(const Term& t) const;
    // Like normalize but records (rule index, position) steps.
    Term normalize_traced(const Term& t,
                          std::vector<std::pair<int, std::vector<int>>>* steps) const;
};

// Substitutions are maps from variable index to term.
using Subst = std::map<int, Term>;

Term apply_subst(const Term& t, const Subst& s);
bool match(const Term& pattern, const Term& subject, Subst& out);
std::optional<Subst> unify(const Term& a, const Term& b);

Term subterm_at(const Term& t, const std::vector<int>& pos);
Term replace_at(const Term& t, const std::vector<int>& pos, const Term& repl);

struct CriticalPair {
    Term peak;   // the overlapped term both sides rewrite from
    Term left;
    Term right;
    int context = 0;
    bool joinable = false;
    Term left_nf;
    Term right_nf;
};

// All critical pairs of the system (including self-overlaps), with join
// status computed by normalization.
std::vector<CriticalPair> critical_pairs(const RewriteSystem& trs);

struct ConfluenceReport {
    std::vector<CriticalPair> pairs;
    bool locally_confluent = true;
};

ConfluenceReport check_local_confluence(const RewriteSystem& trs);

// Provenance of a completed rule: a peak term rewriting to both sides by
// already-justified rules, grounding out in the input equations.
struct RuleDerivation {
    enum Kind { FromEquation, FromCriticalPair } kind = FromEquation;
    int equation_index = -1;  // when FromEquation
    Term peak;                // when FromCriticalPair
    std::vector<std::pair<int, std::vector<int>>> peak_to_lhs;
    std::vector<std::pair<int, std::vector<int>>> peak_to_rhs;
};

struct CompletionResult {
    enum Status { Success, Unorientable, BoundExceeded } status = Success;
    RewriteSystem system;
    std::vector<RuleDerivation> derivations;  // parallel to system.rules
    // diagnostic for failures: the offending equation or pair
    std::string message;
    Term offending_lhs;
    Term offending_rhs;
};

CompletionResult complete(const Presentation& p, int max_rules = 64,
                          int max_term_size = 40,
                          std::map<std::string, int> weights = {});

// Checks that every recorded derivation replays: each step rewrites the
// previous term by the cited rule at the cited position.
bool verify_completion_derivations(const CompletionResult& res);

}  // namespace lawkit
