#pragma once

#include "ua/algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ua {

struct GuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleInfeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GrowthOptions {
    std::uint64_t guard = std::uint64_t(1) << 24;       // |A|^n cap for d_exact
    std::uint64_t oracle_cap = std::uint64_t(1) << 12;  // hard |A|^n cap for oracle_d
    std::uint64_t oracle_budget = 30'000'000;           // closure extensions in the sweep
};

// Tuples that belong to every generating set of A^n: e with
// e ∉ ⟨A^n \ {e}⟩, decided by one-step producibility.
std::vector<std::uint64_t> essential_elements(const FiniteAlgebra& alg, int n,
                                              std::uint64_t guard = GrowthOptions{}.guard);

struct DExactResult {
    int value = 0;
    std::vector<std::uint64_t> witness; // sorted codes; closure(witness) = A^n
};

// Exact minimum generating set size: branch and bound seeded with the
// essential elements, log lower bound, candidates outside the running
// closure in ascending code order. The witness is the lexicographically
// least optimum.
DExactResult d_exact(const FiniteAlgebra& alg, int n,
                     const GrowthOptions& opts = GrowthOptions{});

// Independent exact oracle; see README for the search scheme. Throws
// OracleInfeasible if the exhaustive sweep would exceed the budget.
int oracle_d(const FiniteAlgebra& alg, int n,
             const GrowthOptions& opts = GrowthOptions{});

struct HValue {
    int value = 0;
    bool saturated = false; // every n up to the horizon is g-generated
};

// Largest n <= horizon with d(n) <= g.
HValue h_value(const FiniteAlgebra& alg, int g, int horizon,
               const GrowthOptions& opts = GrowthOptions{});

struct GrowthEntry {
    int n;
    int d;
    std::vector<std::uint64_t> witness;
    double elapsed_seconds = 0.0;
};

struct GrowthTable {
    std::string algebra_id;
    std::vector<GrowthEntry> entries;
    bool guard_hit = false;
};

GrowthTable growth_table(const FiniteAlgebra& alg, const std::string& id, int n_lo, int n_hi,
                         const GrowthOptions& opts = GrowthOptions{});

// Theorem-backed sanity report: log/exponential bounds per entry, d(0) in
// {0,1}, d(2) > 0 for |A| > 1, monotonicity. Returns human-readable
// violations (empty means all hold).
std::vector<std::string> check_bounds(const GrowthTable& table, const FiniteAlgebra& alg);

// Smallest t with base^t >= n (ceil of log_base(n)), n >= 1.
int ceil_log(int base, std::uint64_t n);

} // namespace ua
