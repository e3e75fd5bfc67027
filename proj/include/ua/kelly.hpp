#pragma once

#include "ua/theory.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ua {

// Every basic term over X ∪ C for a fixed variable count: atoms first
// (variables x0..x_{k-1}, then constants in declaration order), then the
// applications of each function symbol with arguments in lexicographic
// order over atom indices. Term indices are computed arithmetically.
class TermUniverse {
public:
    TermUniverse(const Signature& sig, int x_count);

    int size() const { return size_; }
    int x_count() const { return x_count_; }
    int atom_count() const { return atoms_; }
    const Signature& signature() const { return sig_; }

    int atom_index(const Atom& a) const {
        return a.kind == Atom::Var ? a.index : x_count_ + a.index;
    }
    Atom atom_at(int i) const {
        return i < x_count_ ? var(i) : cst(i - x_count_);
    }

    int index_of(const BasicTerm& t) const;
    BasicTerm term_at(int i) const;

private:
    Signature sig_; // owned copy; the universe outlives the parsed theory
    int x_count_;
    int atoms_;
    int size_;
    std::vector<int> app_offset_; // per function symbol
};

// The weak closure as a frozen partition of the term universe.
// Representatives are the least term index in each class.
class ClosureRelation {
public:
    ClosureRelation(TermUniverse tu, std::vector<int> rep);

    const TermUniverse& universe() const { return tu_; }
    int rep_of(int term_index) const { return rep_[term_index]; }
    bool same(int a, int b) const { return rep_[a] == rep_[b]; }
    bool proves(const BasicTerm& s, const BasicTerm& t) const;

    // Class members, ascending, keyed by representative.
    const std::vector<int>& class_of_rep(int rep) const;
    std::vector<int> representatives() const;

    // One class per line, terms space-separated, classes ordered by
    // representative index.
    std::string dump() const;

private:
    TermUniverse tu_;
    std::vector<int> rep_;
    std::vector<std::vector<int>> members_; // indexed by rep, empty otherwise
};

// Least partition containing Sigma's identities, closed under Kelly's
// rules (ii)-(v); rule (i) is the reflexive base.
ClosureRelation weak_closure(const Theory& th, int x_count);

// Sigma |- phi with x_count sized for Sigma and phi.
bool proves(const Theory& th, const Identity& phi);

// No two distinct variables provably equal.
bool consistent(const Theory& th);

} // namespace ua
