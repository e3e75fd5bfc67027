#pragma once

#include "ua/algebra.hpp"
#include "ua/theory.hpp"

#include <string>
#include <vector>

namespace corpus {

// Theories used across the test suites. Each returns freshly parsed text so
// tests cannot interfere through shared state.
ua::Theory maltsev();          // m(x,y,y)=x; m(y,y,x)=x
ua::Theory majority();         // 3-ary near-unanimity rows
ua::Theory minority();
ua::Theory pixley();
ua::Theory b_unit();           // const 1; B(1,x)=x; B(x,1)=x
ua::Theory left_unit();        // const 1; B(1,x)=x
ua::Theory example46_pair();   // const c,d; one symbol: B(c,x)=x; B(d,x)=d
ua::Theory example46_full();   // both B_cd and B_dc
ua::Theory commutative_idem(); // B(x,y)=B(y,x); B(x,x)=x
ua::Theory half_maltsev();     // m(x,y,y)=x
ua::Theory empty_binary();     // fn B/2, no identities
ua::Theory const_absorb();     // const c; F(c,x)=c

std::vector<ua::Theory> kelly_corpus(); // >= 10 small consistent theories

// Algebras.
ua::FiniteAlgebra bare_set(int n);            // no operations, labels e0..e{n-1}
ua::FiniteAlgebra z2_plus();                  // {0,1} with xor
ua::FiniteAlgebra z2_plus_const();            // xor plus nullary 0 named "e"
ua::FiniteAlgebra z4_plus();
ua::FiniteAlgebra semilattice2();             // meet on {0,1}
ua::FiniteAlgebra z2_maltsev();               // {0,1} with m(x,y,z)=x-y+z
ua::FiniteAlgebra meet3_maltsev_candidate();  // 2-element semilattice as ternary x^y^z
ua::FiniteAlgebra implication(const std::vector<unsigned>& filter, int width);
ua::FiniteAlgebra imp_2();   // two-element implication algebra
ua::FiniteAlgebra imp_a2();  // the "vee" filter {01,10,11}
ua::FiniteAlgebra imp_a3();  // full square
ua::FiniteAlgebra imp_a4();  // 5-element filter of 2^3 without least element
ua::FiniteAlgebra left_zero();               // {a,b}, xy = x

// Coordinatewise k-th power materialized as an algebra on |A|^k elements.
ua::FiniteAlgebra power_algebra(const ua::FiniteAlgebra& alg, int k);

// Expansion by a nullary operation per element.
ua::FiniteAlgebra expand_all_constants(const ua::FiniteAlgebra& alg);

// Seeded random partial algebra: |A| in [2,3], 1-2 operations of arity 1-2,
// each table entry defined with probability ~1/2.
ua::FiniteAlgebra random_partial(unsigned seed);

} // namespace corpus
