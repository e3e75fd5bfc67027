#pragma once

#include "ua/algebra.hpp"
#include "ua/cube.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ua {

// Cube matrix with every non-x variable replaced by a chosen constant, so
// every column contains a constant; lambda maps each column to the least
// row holding one.
struct CubeMatrixR {
    std::string symbol;
    int k = 0;
    int m = 0;
    std::vector<CubeRow> rows; // entries are X or C only
    std::vector<int> lambda;   // per column, 0-based row index
    std::vector<int> constants_present; // distinct constant ids
};

// Derives R from a witness. When the witness has no constants, a fallback
// constant id must be supplied (the caller expands the algebra by it).
CubeMatrixR derive_R(const CubeWitness& witness, std::optional<int> fallback_constant = {});

// Splits an ordered index set into k consecutive nonempty intervals, sizes
// |U_1| >= ... >= |U_k| >= |U_1| - 1.
std::vector<std::vector<int>> partition_pi(const std::vector<int>& U, int k);

struct TemplateNode {
    std::vector<int> address; // string over [m], 1-based entries
    std::vector<int> label;   // subset of [n], 1-based coordinates
    int parent = -1;
    std::vector<int> children;   // node indices; empty at leaves
    std::vector<int> processed;  // union of labels root..here (V_sigma)
    int unprocessed = 0;         // u_sigma
};

struct ProcessingTemplate {
    int n = 0;
    CubeMatrixR matrix;
    std::vector<TemplateNode> nodes; // nodes[0] is the root
    std::vector<int> leaves;
    int max_depth = 0;
};

ProcessingTemplate build_template(int n, const CubeMatrixR& matrix);

struct FactorNode {
    int template_node = 0;
    std::uint64_t tuple = 0;
    std::vector<int> children; // indices into FactorTree::nodes
};

struct FactorTree {
    std::vector<FactorNode> nodes; // nodes[0] is the root
};

// Factors a through the template via the cube identities; every internal
// node recombines exactly to its parent under the bound operation.
FactorTree process_tuple(std::uint64_t a, const ProcessingTemplate& tmpl, const Signature& sig,
                         const FiniteAlgebra& alg, const OpBinding& binding);

// The leaf types: per coordinate either a constant id (processed) or -1.
struct FactorType {
    std::vector<int> assignment; // length n; constant id or -1 (unprocessed)
    int cells = 0;               // distinct constant cells + unprocessed singletons
};

std::vector<FactorType> leaf_types(const ProcessingTemplate& tmpl);

// Polynomial-size generating set of A^n obtained by embedding base
// generators of A^{p+k-1} into the subalgebra of each leaf type.
std::vector<std::uint64_t> polynomial_generators(const FiniteAlgebra& alg,
                                                 const CubeWitness& witness, const Signature& sig,
                                                 const OpBinding& binding, int n,
                                                 const std::vector<std::uint64_t>& base_gens,
                                                 std::optional<int> fallback_constant = {});

// Corollary-style 1-pointed generating set: base generators of A^k embedded
// into the subalgebras constant off each (k-1)-subset of coordinates.
std::vector<std::uint64_t> one_pointed_generators(const FiniteAlgebra& alg, int c_elem, int k,
                                                  int n,
                                                  const std::vector<std::uint64_t>& base_gens);

// ceil(((k-1)/k)*u) <= ((2k-1)/(2k))*u, checked in exact integer arithmetic.
bool ceil_lemma_check(std::int64_t u, std::int64_t k);

// Upper bound m^(log_w(n/k)+1) * g with w = 2k/(2k-1).
double template_size_bound(int m, int k, int n, std::size_t g);

} // namespace ua
