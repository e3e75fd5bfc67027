#include "ua/theory.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ua {

int Signature::function_id(const std::string& name) const {
    for (std::size_t i = 0; i < functions.size(); ++i)
        if (functions[i].name == name) return int(i);
    return -1;
}

int Signature::constant_id(const std::string& name) const {
    for (std::size_t i = 0; i < constants.size(); ++i)
        if (constants[i] == name) return int(i);
    return -1;
}

bool Signature::has_symbol(const std::string& name) const {
    return function_id(name) >= 0 || constant_id(name) >= 0;
}

int Signature::max_arity() const {
    int m = 0;
    for (const auto& f : functions) m = std::max(m, f.arity);
    return m;
}

void Signature::validate() const {
    std::set<std::string> seen;
    for (const auto& f : functions) {
        if (f.arity < 1) throw DomainError("function symbol '" + f.name + "' has nonpositive arity");
        if (!seen.insert(f.name).second) throw DomainError("duplicate symbol '" + f.name + "'");
    }
    for (const auto& c : constants)
        if (!seen.insert(c).second) throw DomainError("duplicate symbol '" + c + "'");
}

std::vector<int> BasicTerm::variables() const {
    std::vector<int> vs;
    auto add = [&](const Atom& a) {
        if (a.kind == Atom::Var) vs.push_back(a.index);
    };
    if (!is_app) add(atom);
    else for (const auto& a : args) add(a);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

int BasicTerm::max_var() const {
    int m = -1;
    auto upd = [&](const Atom& a) {
        if (a.kind == Atom::Var) m = std::max(m, a.index);
    };
    if (!is_app) upd(atom);
    else for (const auto& a : args) upd(a);
    return m;
}

namespace {

struct Token {
    enum Kind { Ident, LParen, RParen, Comma, Semi, Eq, Slash, End } kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        skip_ws();
        int line = line_, col = col_;
        if (pos_ >= s_.size()) return {Token::End, "", line, col};
        char c = s_[pos_];
        switch (c) {
            case '(': advance(); return {Token::LParen, "(", line, col};
            case ')': advance(); return {Token::RParen, ")", line, col};
            case ',': advance(); return {Token::Comma, ",", line, col};
            case ';': advance(); return {Token::Semi, ";", line, col};
            case '=': advance(); return {Token::Eq, "=", line, col};
            case '/': advance(); return {Token::Slash, "/", line, col};
            default: break;
        }
        if (is_ident_char(c)) {
            std::string t;
            while (pos_ < s_.size() && is_ident_char(s_[pos_])) {
                t += s_[pos_];
                advance();
            }
            return {Token::Ident, t, line, col};
        }
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }

private:
    static bool is_ident_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
               (c >= '0' && c <= '9') || c == '_' || c == '\'';
    }
    void skip_ws() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }
    void advance() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

// Raw (pre-normalization) term: name or name(args).
struct RawTerm {
    std::string head;
    bool is_app = false;
    std::vector<std::string> args;
    int line = 1, col = 1;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) { bump(); }

    Theory run() {
        Theory th;
        std::vector<std::pair<RawTerm, RawTerm>> raw_ids;
        while (tok_.kind != Token::End) {
            if (tok_.kind == Token::Ident && tok_.text == "const") {
                bump();
                do {
                    Token name = expect(Token::Ident, "constant name");
                    declare(th, name);
                    th.signature.constants.push_back(name.text);
                    if (tok_.kind == Token::Comma) bump();
                    else break;
                } while (true);
                expect(Token::Semi, "';'");
            } else if (tok_.kind == Token::Ident && tok_.text == "fn") {
                bump();
                Token name = expect(Token::Ident, "function name");
                expect(Token::Slash, "'/'");
                Token ar = expect(Token::Ident, "arity");
                int arity = parse_arity(ar);
                declare(th, name);
                th.signature.functions.push_back({name.text, arity});
            expect(Token::Semi, "';'");
            } else {
                RawTerm lhs = parse_raw_term();
                expect(Token::Eq, "'='");
                RawTerm rhs = parse_raw_term();
                expect(Token::Semi, "';'");
                raw_ids.emplace_back(std::move(lhs), std::move(rhs));
            }
        }
        th.signature.validate();
        for (auto& [l, r] : raw_ids)
            th.identities.push_back(normalize(th.signature, l, r));
        return th;
    }

    static Identity identity_over(const Signature& sig, const std::string& text) {
        Parser p(text);
        RawTerm lhs = p.parse_raw_term();
        p.expect(Token::Eq, "'='");
        RawTerm rhs = p.parse_raw_term();
        if (p.tok_.kind == Token::Semi) p.bump();
        if (p.tok_.kind != Token::End)
            throw ParseError(p.tok_.line, p.tok_.col, "trailing input after identity");
        return normalize(sig, lhs, rhs);
    }

private:
    void bump() { tok_ = lex_.next(); }

    Token expect(Token::Kind k, const std::string& what) {
        if (tok_.kind != k)
            throw ParseError(tok_.line, tok_.col, "expected " + what);
        Token t = tok_;
        bump();
        return t;
    }

    static int parse_arity(const Token& t) {
        for (char c : t.text)
            if (c < '0' || c > '9')
                throw ParseError(t.line, t.col, "arity must be a positive integer");
        int v = std::stoi(t.text);
        if (v < 1) throw ParseError(t.line, t.col, "arity must be >= 1");
        return v;
    }

    void declare(const Theory& th, const Token& name) {
        if (th.signature.has_symbol(name.text))
            throw ParseError(name.line, name.col, "symbol '" + name.text + "' already declared");
        if (name.text == "const" || name.text == "fn")
            throw ParseError(name.line, name.col, "reserved word '" + name.text + "'");
    }

    RawTerm parse_raw_term() {
        Token head = expect(Token::Ident, "term");
        RawTerm t;
        t.head = head.text;
        t.line = head.line;
        t.col = head.col;
        if (tok_.kind == Token::LParen) {
            t.is_app = true;
            bump();
            do {
                Token a = expect(Token::Ident, "argument");
                t.args.push_back(a.text);
                if (tok_.kind == Token::Comma) bump();
                else break;
            } while (true);
            expect(Token::RParen, "')'");
        }
        return t;
    }

    // Variable normalization: the literal "x" is always x0; other variable
    // names take x0,x1,... (or x1,x2,... when "x" occurs) in first-occurrence
    // order across the whole identity.
    static Identity normalize(const Signature& sig, const RawTerm& l, const RawTerm& r) {
        std::vector<std::string> names;
        bool has_x = false;
        auto scan = [&](const RawTerm& t) {
            auto consider = [&](const std::string& n) {
                if (sig.constant_id(n) >= 0) return;
                if (n == "x") {
                    has_x = true;
                    return;
                }
                if (std::find(names.begin(), names.end(), n) == names.end())
                    names.push_back(n);
            };
            if (t.is_app) {
                for (const auto& a : t.args) consider(a);
            } else {
                consider(t.head);
            }
        };
        scan(l);
        scan(r);
        std::map<std::string, int> vmap;
        int next = 0;
        if (has_x) vmap["x"] = next++;
        for (const auto& n : names) vmap[n] = next++;

        auto conv_atom = [&](const std::string& n) {
            int c = sig.constant_id(n);
            if (c >= 0) return cst(c);
            return var(vmap.at(n));
        };
        auto conv = [&](const RawTerm& t) {
            if (!t.is_app) {
                if (sig.function_id(t.head) >= 0)
                    throw ParseError(t.line, t.col,
                                     "function symbol '" + t.head + "' used without arguments");
                return BasicTerm::make(conv_atom(t.head));
            }
            int f = sig.function_id(t.head);
            if (f < 0)
                throw ParseError(t.line, t.col, "undeclared function symbol '" + t.head + "'");
            int arity = sig.functions[f].arity;
            if (int(t.args.size()) != arity)
                throw ParseError(t.line, t.col,
                                 "arity mismatch: '" + t.head + "' expects " +
                                     std::to_string(arity) + " arguments, got " +
                                     std::to_string(t.args.size()));
            std::vector<Atom> args;
            args.reserve(t.args.size());
            for (const auto& a : t.args) args.push_back(conv_atom(a));
            return BasicTerm::make(f, std::move(args));
        };
        return Identity{conv(l), conv(r)};
    }

    Lexer lex_;
    Token tok_{Token::End, "", 1, 1};

    friend Theory ua::parse_theory(const std::string&);
};

} // namespace

Theory parse_theory(const std::string& text) {
    Parser p(text);
    return p.run();
}

Identity parse_identity(const std::string& text, const Signature& sig) {
    return Parser::identity_over(sig, text);
}

std::string render_atom(const Atom& a, const Signature& sig) {
    if (a.kind == Atom::Var) return "x" + std::to_string(a.index);
    return sig.constants[a.index];
}

std::string render_term(const BasicTerm& t, const Signature& sig) {
    if (!t.is_app) return render_atom(t.atom, sig);
    std::string s = sig.functions[t.symbol].name + "(";
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) s += ",";
        s += render_atom(t.args[i], sig);
    }
    return s + ")";
}

std::string render_identity(const Identity& id, const Signature& sig) {
    return render_term(id.lhs, sig) + " = " + render_term(id.rhs, sig);
}

std::string render_theory(const Theory& th) {
    std::ostringstream out;
    if (!th.signature.constants.empty()) {
        out << "const ";
        for (std::size_t i = 0; i < th.signature.constants.size(); ++i) {
            if (i) out << ", ";
            out << th.signature.constants[i];
        }
        out << ";\n";
    }
    for (const auto& f : th.signature.functions)
        out << "fn " << f.name << "/" << f.arity << ";\n";
    for (const auto& id : th.identities)
        out << render_identity(id, th.signature) << ";\n";
    return out.str();
}

BasicTerm substitute(const BasicTerm& t, const std::map<int, Atom>& gamma) {
    auto conv = [&](const Atom& a) {
        if (a.kind == Atom::Const) return a;
        auto it = gamma.find(a.index);
        if (it == gamma.end())
            throw DomainError("substitution undefined on x" + std::to_string(a.index));
        return it->second;
    };
    if (!t.is_app) return BasicTerm::make(conv(t.atom));
    std::vector<Atom> args;
    args.reserve(t.args.size());
    for (const auto& a : t.args) args.push_back(conv(a));
    return BasicTerm::make(t.symbol, std::move(args));
}

BasicTerm replace_constant_once(const BasicTerm& t, int c, int d, int occurrence) {
    int seen = 0;
    auto conv = [&](const Atom& a) {
        if (a.kind == Atom::Const && a.index == c && seen++ == occurrence) return cst(d);
        return a;
    };
    BasicTerm out;
    if (!t.is_app) {
        out = BasicTerm::make(conv(t.atom));
    } else {
        std::vector<Atom> args;
        args.reserve(t.args.size());
        for (const auto& a : t.args) args.push_back(conv(a));
        out = BasicTerm::make(t.symbol, std::move(args));
    }
    if (occurrence >= seen)
        throw DomainError("constant occurrence index out of range");
    return out;
}

int count_distinct_vars(const Identity& id) {
    std::vector<int> vs = id.lhs.variables();
    std::vector<int> ws = id.rhs.variables();
    vs.insert(vs.end(), ws.begin(), ws.end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return int(vs.size());
}

int large_enough_X(const Theory& th, const std::vector<Identity>& extra) {
    int n = 2;
    n = std::max(n, th.signature.max_arity());
    for (const auto& id : th.identities) n = std::max(n, count_distinct_vars(id));
    for (const auto& id : extra) n = std::max(n, count_distinct_vars(id));
    return n;
}

} // namespace ua
