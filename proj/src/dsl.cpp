// Parser and printer for the theory presentation DSL.

#include "lawkit/term.hpp"

#include <cctype>
#include <sstream>

namespace lawkit {

ParseError::ParseError(const std::string& msg, int line, int col)
    : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                         std::to_string(col) + ": " + msg),
      line(line),
      col(col) {}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    char take() {
        char c = text[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }

    void skip_ws() {
        while (!done()) {
            char c = peek();
            if (c == '#') {
                while (!done() && peek() != '\n') take();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                take();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line, col);
    }

    void expect(char c) {
        skip_ws();
        if (done() || peek() != c) fail(std::string("expected '") + c + "'");
        take();
    }

    bool try_take(char c) {
        skip_ws();
        if (!done() && peek() == c) {
            take();
            return true;
        }
        return false;
    }

    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string identifier() {
        skip_ws();
        if (done() || !ident_char(peek())) fail("expected identifier");
        std::string s;
        while (!done() && ident_char(peek())) s += take();
        return s;
    }

    int integer() {
        std::string s = identifier();
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected integer");
        return std::stoi(s);
    }
};

bool is_variable_name(const std::string& s, int& index) {
    if (s.size() < 2 || s[0] != 'x') return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    index = std::stoi(s.substr(1));
    return true;
}

Term parse_term(Cursor& cur, const Signature& sig, int context) {
    int line = cur.line, col = cur.col;
    cur.skip_ws();
    line = cur.line;
    col = cur.col;
    std::string name = cur.identifier();
    int var_index = 0;
    if (is_variable_name(name, var_index)) {
        if (var_index < 1 || var_index > context)
            throw ParseError("variable " + name + " out of context 1..x" +
                                 std::to_string(context),
                             line, col);
        return Term::variable(var_index);
    }
    auto arity = sig.arity_of(name);
    if (!arity) throw ParseError("unknown operation: " + name, line, col);
    std::vector<Term> args;
    if (cur.try_take('(')) {
        if (!cur.try_take(')')) {
            do {
                args.push_back(parse_term(cur, sig, context));
            } while (cur.try_take(','));
            cur.expect(')');
        }
    }
    if (static_cast<int>(args.size()) != *arity)
        throw ParseError("operation " + name + " expects " + std::to_string(*arity) +
                             " arguments, got " + std::to_string(args.size()),
                         line, col);
    return Term::apply(name, std::move(args));
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
    Cursor cur{text};
    Presentation p;

    cur.skip_ws();
    {
        int line = cur.line, col = cur.col;
        if (cur.identifier() != "theory")
            throw ParseError("expected 'theory'", line, col);
    }
    p.name = cur.identifier();
    cur.expect(';');

    for (;;) {
        cur.skip_ws();
        int line = cur.line, col = cur.col;
        if (cur.done()) throw ParseError("unexpected end of input; missing 'end'", line, col);
        std::string kw = cur.identifier();
        if (kw == "end") break;
        if (kw == "op") {
            std::string name = cur.identifier();
            int dummy = 0;
            if (is_variable_name(name, dummy))
                throw ParseError("operation name " + name + " is reserved for variables",
                                 line, col);
            cur.expect('/');
            int arity = cur.integer();
            if (p.signature.has(name))
                throw ParseError("duplicate operation name: " + name, line, col);
            p.signature.add(name, arity);
            cur.expect(';');
        } else if (kw == "eq") {
            int context = cur.integer();
            cur.expect(':');
            Term lhs = parse_term(cur, p.signature, context);
            cur.expect('=');
            Term rhs = parse_term(cur, p.signature, context);
            cur.expect(';');
            p.equations.push_back({lhs, rhs, context});
        } else {
            throw ParseError("expected 'op', 'eq' or 'end', got '" + kw + "'", line, col);
        }
    }
    return p;
}

std::string print_presentation(const Presentation& p) {
    std::ostringstream os;
    os << "theory " << p.name << ";\n";
    for (const OpDecl& o : p.signature.ops())
        os << "op " << o.name << "/" << o.arity << ";\n";
    for (const Equation& e : p.equations)
        os << "eq " << e.context << ": " << e.lhs.str() << " = " << e.rhs.str() << ";\n";
    os << "end\n";
    return os.str();
}

}  // namespace lawkit
