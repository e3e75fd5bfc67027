#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ua {

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + msg),
          line(line_), column(col_) {}
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FunctionSymbol {
    std::string name;
    int arity; // >= 1; nullary symbols are modeled as constants
};

// Function symbols plus constant symbols; the declaration order of the
// constants is the well-order used by the proof calculus.
struct Signature {
    std::vector<FunctionSymbol> functions;
    std::vector<std::string> constants;

    int function_id(const std::string& name) const;
    int constant_id(const std::string& name) const;
    bool has_symbol(const std::string& name) const;
    int max_arity() const;
    void validate() const; // unique names, positive arities
};

// A variable x0, x1, ... or a constant symbol of the ambient signature.
struct Atom {
    enum Kind { Var, Const };
    Kind kind = Var;
    int index = 0; // variable index, or constant id

    bool operator==(const Atom& o) const { return kind == o.kind && index == o.index; }
    bool operator<(const Atom& o) const {
        if (kind != o.kind) return kind < o.kind; // variables sort before constants
        return index < o.index;
    }
};

inline Atom var(int i) { return Atom{Atom::Var, i}; }
inline Atom cst(int c) { return Atom{Atom::Const, c}; }

// A basic term: an atom, or one function symbol applied to atoms.
struct BasicTerm {
    bool is_app = false;
    Atom atom;             // when !is_app
    int symbol = -1;       // function id when is_app
    std::vector<Atom> args;

    static BasicTerm make(Atom a) {
        BasicTerm t;
        t.atom = a;
        return t;
    }
    static BasicTerm make(int symbol, std::vector<Atom> args) {
        BasicTerm t;
        t.is_app = true;
        t.symbol = symbol;
        t.args = std::move(args);
        return t;
    }

    bool operator==(const BasicTerm& o) const {
        if (is_app != o.is_app) return false;
        if (!is_app) return atom == o.atom;
        return symbol == o.symbol && args == o.args;
    }

    // Distinct variable indices, ascending.
    std::vector<int> variables() const;
    int max_var() const; // -1 when none
};

struct Identity {
    BasicTerm lhs, rhs;
};

struct Theory {
    Signature signature;
    std::vector<Identity> identities;
};

// Theory file grammar: ';'-terminated statements
//   "const" name ("," name)* | "fn" name "/" arity | term "=" term
// Variable names normalize to x0,x1,... in first-occurrence order per
// identity; the literal identifier "x" always becomes x0. '#' starts a
// comment running to end of line.
Theory parse_theory(const std::string& text);

std::string render_atom(const Atom& a, const Signature& sig);
std::string render_term(const BasicTerm& t, const Signature& sig);
std::string render_identity(const Identity& id, const Signature& sig);
std::string render_theory(const Theory& th);

// Parses "s = t" against an existing signature (same normalization rules).
Identity parse_identity(const std::string& text, const Signature& sig);

// Replaces each variable occurrence per gamma; constants are unchanged.
// gamma must be defined on every variable of t.
BasicTerm substitute(const BasicTerm& t, const std::map<int, Atom>& gamma);

// Replaces the occurrence-th occurrence (left to right, 0-based) of the
// constant c with d.
BasicTerm replace_constant_once(const BasicTerm& t, int c, int d, int occurrence);

int count_distinct_vars(const Identity& id);

// |X| = max(2, max signature arity, max distinct variables in any identity
// of Sigma and extra).
int large_enough_X(const Theory& th, const std::vector<Identity>& extra = {});

} // namespace ua
