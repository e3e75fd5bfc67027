#pragma once

#include "ua/bitset.hpp"
#include "ua/theory.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ua {

struct UndefinedEvaluation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation table over universe indices. Stored flat in row-major argument
// order; -1 marks undefined entries of a partial operation. Nullary
// operations have a single entry.
struct Operation {
    std::string name;
    int arity = 0;
    std::vector<std::int32_t> table;

    bool total() const {
        for (auto v : table)
            if (v < 0) return false;
        return true;
    }
    std::size_t defined_count() const {
        std::size_t n = 0;
        for (auto v : table)
            if (v >= 0) ++n;
        return n;
    }
};

struct FiniteAlgebra {
    std::vector<std::string> universe;
    std::vector<Operation> ops;

    int size() const { return int(universe.size()); }
    int element(const std::string& label) const;
    const Operation* op(const std::string& name) const;
    bool total() const {
        for (const auto& o : ops)
            if (!o.total()) return false;
        return true;
    }
    void validate() const;
};

// Dense radix-|A| encoding of a tuple in A^n; coordinate 1 is the most
// significant digit.
struct Power {
    int base;
    int n;

    Power(int base_, int n_) : base(base_), n(n_) {}
    std::uint64_t count() const {
        std::uint64_t c = 1;
        for (int i = 0; i < n; ++i) c *= base;
        return c;
    }
    int digit(std::uint64_t code, int coord) const { // coord 0-based from the left
        for (int i = n - 1; i > coord; --i) code /= base;
        return int(code % base);
    }
    std::uint64_t encode(const std::vector<int>& digits) const;
    std::vector<int> decode(std::uint64_t code) const;
};

std::optional<int> apply(const FiniteAlgebra& alg, const Operation& op,
                         const std::vector<int>& args);

// Coordinatewise application; defined iff defined in every coordinate.
std::optional<std::uint64_t> power_apply(const Operation& op, const Power& pw,
                                         const std::vector<std::uint64_t>& args);

// Subuniverse of A^n generated by `generators`, including all nullary
// operation values as constant tuples. Resumable so searches can extend a
// partial closure by one generator at a time.
class ClosureState {
public:
    static constexpr std::uint64_t kDefaultGuard = std::uint64_t(1) << 24;

    ClosureState(const FiniteAlgebra& alg, int n, std::uint64_t guard = kDefaultGuard);
    ClosureState(const ClosureState&) = default;
    ClosureState& operator=(const ClosureState&) = default;

    void add(std::uint64_t code);
    void run(); // saturate
    bool contains(std::uint64_t code) const { return set_.test(code); }
    const Bitset& bits() const { return set_; }
    std::size_t count() const { return set_.count(); }
    bool full() const { return set_.full(); }
    const std::vector<std::uint64_t>& elements() const { return list_; }

private:
    void seed_constants();
    void expand_total(const Operation& op, std::size_t t_pos);
    void expand_partial(int group, std::size_t t_pos);

    struct DomainGroup {
        // Partial operations sharing a defined-argument row set.
        std::vector<std::vector<int>> rows;    // defined arg tuples in A^arity
        std::vector<const Operation*> members; // value at rows[r] is member tables
        int arity;
    };

    const FiniteAlgebra* alg_;
    Power pw_;
    Bitset set_;
    std::vector<std::uint64_t> list_;
    std::vector<std::uint8_t> digits_; // stride-n digit cache parallel to list_
    std::size_t cursor_ = 0;
    std::vector<const Operation*> total_ops_;
    std::vector<DomainGroup> groups_;
};

Bitset closure(const FiniteAlgebra& alg, int n,
               const std::vector<std::uint64_t>& generators);

// Whether the tuple `target` is produced by one operation application whose
// arguments all avoid `target`. Since A^n \ {target} misses only the target,
// this decides target ∈ ⟨A^n \ {target}⟩.
bool producible_without(const FiniteAlgebra& alg, int n, std::uint64_t target);

// Totalization by an absorbing element plus the equality meet.
FiniteAlgebra one_point_completion(const FiniteAlgebra& alg, const std::string& new_label);

// Term over an algebra's operations used to interpret a theory symbol.
struct InterpTerm {
    enum Kind { Var, Elem, App } kind = Var;
    int var = 0;                     // 1-based place of the interpreted symbol
    int elem = 0;                    // universe index
    std::string op;                  // operation name when App
    std::vector<InterpTerm> args;

    static InterpTerm mkvar(int place) { return InterpTerm{Var, place, 0, "", {}}; }
    static InterpTerm mkelem(int e) { return InterpTerm{Elem, 0, e, "", {}}; }
    static InterpTerm mkapp(std::string op, std::vector<InterpTerm> args) {
        InterpTerm t;
        t.kind = App;
        t.op = std::move(op);
        t.args = std::move(args);
        return t;
    }
};

struct Interpretation {
    std::map<std::string, InterpTerm> functions; // theory symbol -> term
    std::map<std::string, int> constants;        // constant symbol -> element

    // Interprets every theory symbol by the identically-named operation.
    static Interpretation identity_for(const FiniteAlgebra& alg, const Theory& th);
};

// Evaluates an interpretation term; throws UndefinedEvaluation when a
// partial application is hit.
int eval_interp(const FiniteAlgebra& alg, const InterpTerm& t, const std::vector<int>& args);

// Every identity of the theory holds under every valuation (exhaustive).
bool check_models(const FiniteAlgebra& alg, const Theory& th, const Interpretation& interp);

// JSON algebra file format; see README.
FiniteAlgebra algebra_from_json(const std::string& text);
std::string algebra_to_json(const FiniteAlgebra& alg);

std::uint64_t checked_power(int base, int n, std::uint64_t guard);

} // namespace ua
