#pragma once

#include "ua/algebra.hpp"
#include "ua/kelly.hpp"
#include "ua/theory.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ua {

// Row entries of a cube matrix: the distinguished variable x, the collapsed
// auxiliary variable z, or a constant symbol (by id). Ordered x < z < constants
// in declaration order.
struct CubeEntry {
    enum Kind { X, Z, C } kind = X;
    int constant = -1;

    bool operator==(const CubeEntry& o) const {
        return kind == o.kind && (kind != C || constant == o.constant);
    }
    bool operator<(const CubeEntry& o) const {
        if (kind != o.kind) return kind < o.kind;
        return kind == C && constant < o.constant;
    }
};

using CubeRow = std::vector<CubeEntry>;

std::string render_cube_entry(const CubeEntry& e, const Signature& sig);
std::string render_cube_row(const CubeRow& r, const Signature& sig);

struct CubeWitness {
    std::string symbol;
    int m = 0;                  // arity
    int k = 0;                  // rows
    int p = 0;                  // distinct constants appearing
    std::vector<CubeRow> rows;

    std::set<int> constants() const; // distinct constant ids in the matrix
};

struct CubeDecision {
    bool exists = false;
    bool degenerate = false; // inconsistent theory: every identity holds
    std::optional<CubeWitness> witness;
    std::optional<int> min_k;
};

// All rows r over {x, z} ∪ constant-class representatives with
// Sigma |- F(r) ≈ x. The closure is computed once and shared.
std::vector<CubeRow> provable_rows(const Theory& th, const std::string& symbol);

// Exact minimum-cover search over provable rows of each symbol; reports the
// least k and a canonical witness.
CubeDecision decide_pointed_cube(const Theory& th);

// Binding of witness symbols to one operation and constant elements of a
// concrete algebra.
struct OpBinding {
    std::string op;                        // operation interpreting the symbol
    std::map<std::string, int> constants;  // constant symbol name -> element
};

// Every row identity holds for every element and every value of z.
bool verify_witness(const CubeWitness& witness, const Signature& sig,
                    const FiniteAlgebra& alg, const OpBinding& binding);

// Witness JSON: {"symbol":..., "k":..., "m":..., "p":..., "rows":["x z c", ...]}.
std::string witness_to_json(const CubeWitness& w, const Signature& sig);
CubeWitness witness_from_json(const std::string& text, const Signature& sig);

} // namespace ua
