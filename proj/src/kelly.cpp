#include "ua/kelly.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace ua {

TermUniverse::TermUniverse(const Signature& sig, int x_count)
    : sig_(sig), x_count_(x_count) {
    atoms_ = x_count + int(sig.constants.size());
    int off = atoms_;
    for (const auto& f : sig.functions) {
        app_offset_.push_back(off);
        long long block = 1;
        for (int i = 0; i < f.arity; ++i) {
            block *= atoms_;
            if (block > (1ll << 31))
                throw DomainError("term universe too large");
        }
        off += int(block);
    }
    size_ = off;
}

int TermUniverse::index_of(const BasicTerm& t) const {
    if (!t.is_app) return atom_index(t.atom);
    int code = 0;
    for (const Atom& a : t.args) code = code * atoms_ + atom_index(a);
    return app_offset_[t.symbol] + code;
}

BasicTerm TermUniverse::term_at(int i) const {
    if (i < atoms_) return BasicTerm::make(atom_at(i));
    int f = int(app_offset_.size()) - 1;
    while (app_offset_[f] > i) --f;
    int code = i - app_offset_[f];
    int arity = sig_.functions[f].arity;
    std::vector<Atom> args(arity);
    for (int j = arity - 1; j >= 0; --j) {
        args[j] = atom_at(code % atoms_);
        code /= atoms_;
    }
    return BasicTerm::make(f, std::move(args));
}

ClosureRelation::ClosureRelation(TermUniverse tu, std::vector<int> rep)
    : tu_(std::move(tu)), rep_(std::move(rep)) {
    members_.resize(rep_.size());
    for (int i = 0; i < int(rep_.size()); ++i) members_[rep_[i]].push_back(i);
}

bool ClosureRelation::proves(const BasicTerm& s, const BasicTerm& t) const {
    return same(tu_.index_of(s), tu_.index_of(t));
}

const std::vector<int>& ClosureRelation::class_of_rep(int rep) const {
    return members_[rep];
}

std::vector<int> ClosureRelation::representatives() const {
    std::vector<int> out;
    for (int i = 0; i < int(rep_.size()); ++i)
        if (rep_[i] == i) out.push_back(i);
    return out;
}

std::string ClosureRelation::dump() const {
    std::ostringstream out;
    for (int r : representatives()) {
        bool first = true;
        for (int i : members_[r]) {
            if (!first) out << ' ';
            out << render_term(tu_.term_at(i), tu_.signature());
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    // Keeps the least index as representative. Returns false if already merged.
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

// All maps vars -> X ∪ C enumerated as an odometer over atom indices.
void for_each_substitution(const TermUniverse& tu, const std::vector<int>& vars,
                           const std::function<void(const std::map<int, Atom>&)>& fn) {
    int k = int(vars.size());
    std::vector<int> digits(k, 0);
    std::map<int, Atom> gamma;
    while (true) {
        for (int i = 0; i < k; ++i) gamma[vars[i]] = tu.atom_at(digits[i]);
        fn(gamma);
        int i = 0;
        while (i < k && ++digits[i] == tu.atom_count()) digits[i++] = 0;
        if (i == k || k == 0) break;
    }
}

// Occurrence count of constant c in t.
int const_occurrences(const BasicTerm& t, int c) {
    int n = 0;
    auto see = [&](const Atom& a) {
        if (a.kind == Atom::Const && a.index == c) ++n;
    };
    if (!t.is_app) see(t.atom);
    else for (const auto& a : t.args) see(a);
    return n;
}

} // namespace

ClosureRelation weak_closure(const Theory& th, int x_count) {
    if (x_count < large_enough_X(th))
        throw DomainError("x_count too small for this theory");
    TermUniverse tu(th.signature, x_count);
    UnionFind uf(tu.size());
    std::deque<std::pair<int, int>> pending;

    auto merge = [&](int a, int b) {
        if (uf.unite(a, b)) pending.emplace_back(a, b);
    };
    for (const auto& id : th.identities)
        merge(tu.index_of(id.lhs), tu.index_of(id.rhs));

    int n_const = int(th.signature.constants.size());
    // Ordered constant pairs already expanded under rule (v).
    std::set<std::pair<int, int>> vdone;

    while (true) {
        while (!pending.empty()) {
            auto [ia, ib] = pending.front();
            pending.pop_front();
            BasicTerm s = tu.term_at(ia), t = tu.term_at(ib);
            // Rule (iv): substitutions restricted to the occurring variables
            // determine s[gamma] and t[gamma] for every gamma: X -> X ∪ C.
            std::vector<int> vars = s.variables();
            for (int v : t.variables()) vars.push_back(v);
            std::sort(vars.begin(), vars.end());
            vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
            for_each_substitution(tu, vars, [&](const std::map<int, Atom>& gamma) {
                merge(tu.index_of(substitute(s, gamma)), tu.index_of(substitute(t, gamma)));
            });
        }
        // Rule (v): single-occurrence replacement for each provably-equal
        // constant pair, in both directions, over every term.
        bool new_pair = false;
        for (int c = 0; c < n_const && !new_pair; ++c) {
            for (int d = 0; d < n_const && !new_pair; ++d) {
                if (c == d) continue;
                int ic = tu.atom_index(cst(c)), id = tu.atom_index(cst(d));
                if (uf.find(ic) != uf.find(id)) continue;
                if (!vdone.insert({c, d}).second) continue;
                new_pair = true;
                for (int i = 0; i < tu.size(); ++i) {
                    BasicTerm t = tu.term_at(i);
                    int occ = const_occurrences(t, c);
                    for (int o = 0; o < occ; ++o)
                        merge(i, tu.index_of(replace_constant_once(t, c, d, o)));
                }
            }
        }
        if (!new_pair && pending.empty()) break;
    }

    std::vector<int> rep(tu.size());
    for (int i = 0; i < tu.size(); ++i) rep[i] = uf.find(i);
    return ClosureRelation(std::move(tu), std::move(rep));
}

bool proves(const Theory& th, const Identity& phi) {
    auto check_term = [&](const BasicTerm& t) {
        if (t.is_app) {
            if (t.symbol < 0 || t.symbol >= int(th.signature.functions.size()))
                throw DomainError("identity uses a symbol outside the signature");
            if (int(t.args.size()) != th.signature.functions[t.symbol].arity)
                throw DomainError("identity arity mismatch");
        }
        for (const auto& a : t.is_app ? t.args : std::vector<Atom>{t.atom})
            if (a.kind == Atom::Const &&
                (a.index < 0 || a.index >= int(th.signature.constants.size())))
                throw DomainError("identity uses a constant outside the signature");
    };
    check_term(phi.lhs);
    check_term(phi.rhs);
    ClosureRelation cl = weak_closure(th, large_enough_X(th, {phi}));
    return cl.proves(phi.lhs, phi.rhs);
}

bool consistent(const Theory& th) {
    ClosureRelation cl = weak_closure(th, large_enough_X(th));
    const TermUniverse& tu = cl.universe();
    for (int i = 0; i < tu.x_count(); ++i)
        for (int j = i + 1; j < tu.x_count(); ++j)
            if (cl.same(tu.atom_index(var(i)), tu.atom_index(var(j)))) return false;
    return true;
}

} // namespace ua
