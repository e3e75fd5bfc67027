#pragma once

#include "ua/algebra.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ua {

// One argument place per nonnullary operation, 1-based.
struct Selector {
    std::map<std::string, int> places;
};

// Enumeration over all selectors: operation declaration order, places
// ascending (odometer).
std::vector<Selector> all_selectors(const FiniteAlgebra& alg);

// Least phi-ideal containing the seed: closed under every operation whose
// selected argument lies inside.
std::set<int> ideal_closure(const FiniteAlgebra& alg, const Selector& phi,
                            const std::set<int>& seed);

struct IdealCertificate {
    Selector selector;
    std::vector<std::set<int>> principal; // per element
    std::set<int> ideal_i, ideal_j;        // proper, union = A
};

// First selector (in enumeration order) whose principal ideals are all
// proper; the two-ideal cover is assembled from them.
std::optional<IdealCertificate> certify_exponential(const FiniteAlgebra& alg);

struct LowerBoundReport {
    bool d_at_least_2n = false;
    bool products_irreducible = false;
    std::uint64_t d_value = 0;
};

// Checks d(n) >= 2^n via the oracle and that every product of complements is
// phi-irreducible in A^n (and meets the supplied generating set, if any).
LowerBoundReport verify_lower_bound(const FiniteAlgebra& alg, const IdealCertificate& cert,
                                    int n,
                                    const std::vector<std::uint64_t>* generating_set = nullptr);

} // namespace ua
