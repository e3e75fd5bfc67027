#pragma once

#include "ua/algebra.hpp"
#include "ua/kelly.hpp"
#include "ua/theory.hpp"

#include <string>
#include <vector>

namespace ua {

// The completeness-proof model on T_0/≡.
struct ModelM {
    FiniteAlgebra algebra;
    ClosureRelation closure;            // over large_enough_X(theory)
    std::vector<int> class_of_term;     // term index -> universe index
    int zero_element = -1;              // index of the class of the added 0
    std::vector<int> canonical_vars;    // variable index -> universe index
    std::vector<int> canonical_consts;  // constant id -> universe index

    // Evaluates a basic term under the canonical valuation x -> [x], c -> [c].
    int eval_canonical(const BasicTerm& t) const;
    // Evaluates under an arbitrary valuation of the variables.
    int eval(const BasicTerm& t, const std::vector<int>& valuation) const;
};

ModelM model_M(const Theory& th);

// The finite model on [Y] ∪ [C] ∪ {[0]}.
struct ModelV {
    FiniteAlgebra algebra;
    int y_count = 0;
    std::vector<int> y_elements;      // first y_count universe indices
    std::vector<int> const_elements;  // constant id -> universe index
    int zero_element = -1;

    int eval(const BasicTerm& t, const Theory& th, const std::vector<int>& valuation) const;
};

ModelV model_V(const Theory& th, int y_count);

struct SigmaMerge {
    FiniteAlgebra algebra;
    Interpretation interp;
    int base_size = 0;                 // |A|: the first base_size elements are A
    std::vector<std::string> z_labels; // one per constant class, then "0" last
};

// The merge A_Sigma: p+1 one-point completions of A expanded with the model
// V's operations transported along [Y] -> A, [c_i] -> z_i, [0] -> 0.
SigmaMerge sigma_merge(const FiniteAlgebra& alg, const Theory& th);

// Finite truncation of the prescribed-d construction: a partial algebra
// whose d-function matches the given values D(0..k).
FiniteAlgebra prescribed_d(const std::vector<int>& values);

struct ExampleNu {
    FiniteAlgebra partial;
    FiniteAlgebra total; // one-point completion expanded by the constant 1
};

// The partial near-unanimity algebra on {a_1..a_q, 1} with k-ary F.
ExampleNu example_nu(int q, int k);

// Order filter of the Boolean cube 2^width as an implication algebra.
// Bit-vectors are validated to form a nonempty, upward-closed, ->-closed set.
FiniteAlgebra implication_algebra(const std::vector<unsigned>& filter, int width);

} // namespace ua
