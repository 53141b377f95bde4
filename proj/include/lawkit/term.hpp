// Terms, signatures, equations and presentations: the syntactic layer
// everything else is built on. Terms are immutable and structurally hashed.

#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lawkit {

struct TermError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A term is either a variable x1, x2, ... (1-based) or an operation applied
// to arguments. Nodes are shared and never mutated after construction.
class Term {
public:
    Term() : Term(variable(1)) {}  // default to x1; aggregates overwrite it

    static Term variable(int index);
    static Term apply(std::string op, std::vector<Term> args = {});

    bool is_variable() const { return node_->is_var; }
    int var_index() const { return node_->var; }
    const std::string& op() const { return node_->op; }
    const std::vector<Term>& args() const { return node_->args; }

    std::size_t hash() const { return node_->hash; }
    int size() const { return node_->size; }  // node count; constants count 1
    int depth() const;                        // variables 0, constants 1

    bool operator==(const Term& other) const;
    bool operator!=(const Term& other) const { return !(*this == other); }

    // Total order: by size, then structure (variables first, then by
    // operation name). Used only for deterministic containers and output.
    static int compare(const Term& a, const Term& b);
    bool operator<(const Term& other) const { return compare(*this, other) < 0; }

    std::string str() const;

    // Largest variable index occurring in the term, 0 if none.
    int max_var() const;
    void collect_vars(std::vector<bool>& seen) const;
    bool contains_var(int index) const;

private:
    struct Node {
        bool is_var;
        int var = 0;
        std::string op;
        std::vector<Term> args;
        std::size_t hash = 0;
        int size = 1;
    };
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Replaces xi by env[i-1]. Every variable of t must be covered.
Term substitute(const Term& t, const std::vector<Term>& env);

int term_size(const Term& t);
int term_depth(const Term& t);

struct OpDecl {
    std::string name;
    int arity = 0;
};

class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<OpDecl> ops);

    void add(const std::string& name, int arity);
    const std::vector<OpDecl>& ops() const { return ops_; }
    std::optional<int> arity_of(const std::string& name) const;
    // Declaration index; used as KBO precedence and enumeration order.
    std::optional<int> index_of(const std::string& name) const;
    bool has(const std::string& name) const { return arity_of(name).has_value(); }
    std::vector<std::string> constants() const;

    // Throws if an application's arity is wrong or a variable exceeds the
    // context.
    void check_term(const Term& t, int context) const;

private:
    std::vector<OpDecl> ops_;
};

struct Equation {
    Term lhs;
    Term rhs;
    int context = 0;
};

struct Presentation {
    std::string name;
    Signature signature;
    std::vector<Equation> equations;

    void validate() const;  // throws TermError on ill-formed equations
};

// Line-oriented DSL:
//   theory NAME;
//   op NAME/ARITY;
//   eq CONTEXT: TERM = TERM;
//   end
// '#' starts a comment. Terms are prefix: f(t1,...,tk); constants may be
// written bare or as f().
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int col);
    int line;
    int col;
};

Presentation parse_presentation(const std::string& text);
std::string print_presentation(const Presentation& p);

}  // namespace lawkit
