#include "ua/processing.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ua {

CubeMatrixR derive_R(const CubeWitness& witness, std::optional<int> fallback_constant) {
    CubeMatrixR r;
    r.symbol = witness.symbol;
    r.k = witness.k;
    r.m = witness.m;

    std::set<int> consts = witness.constants();
    int c;
    if (!consts.empty()) {
        c = *consts.begin(); // least in declaration order
    } else if (fallback_constant) {
        c = *fallback_constant;
    } else {
        throw DomainError(
            "witness has no constants (p = 0); expand the algebra by a constant first");
    }

    for (const auto& row : witness.rows) {
        CubeRow nr;
        for (const auto& e : row) {
            if (e.kind == CubeEntry::X) nr.push_back(e);
            else if (e.kind == CubeEntry::C) nr.push_back(e);
            else nr.push_back(CubeEntry{CubeEntry::C, c});
        }
        r.rows.push_back(std::move(nr));
    }
    for (int j = 0; j < r.m; ++j) {
        int lam = -1;
        for (int i = 0; i < r.k && lam < 0; ++i)
            if (r.rows[i][j].kind == CubeEntry::C) lam = i;
        if (lam < 0)
            throw DomainError("cube matrix column " + std::to_string(j + 1) +
                              " contains no constant");
        r.lambda.push_back(lam);
    }
    std::set<int> present;
    for (const auto& row : r.rows)
        for (const auto& e : row)
            if (e.kind == CubeEntry::C) present.insert(e.constant);
    r.constants_present.assign(present.begin(), present.end());
    return r;
}

std::vector<std::vector<int>> partition_pi(const std::vector<int>& U, int k) {
    int r = int(U.size());
    if (r < k) throw DomainError("partition_pi needs |U| >= k");
    int q = r / k, rem = r % k;
    std::vector<std::vector<int>> cells;
    int pos = 0;
    for (int i = 0; i < k; ++i) {
        int len = q + (i < rem ? 1 : 0);
        cells.emplace_back(U.begin() + pos, U.begin() + pos + len);
        pos += len;
    }
    return cells;
}

namespace {

std::vector<int> remaining_coords(int n, const std::vector<int>& processed) {
    std::set<int> done(processed.begin(), processed.end());
    std::vector<int> out;
    for (int i = 1; i <= n; ++i)
        if (!done.count(i)) out.push_back(i);
    return out;
}

// Constant id -> algebra element through the name-keyed binding.
std::map<int, int> resolve_constants(const CubeMatrixR& matrix, const Signature& sig,
                                     const OpBinding& binding) {
    std::map<int, int> cmap;
    for (int c : matrix.constants_present) {
        auto it = binding.constants.find(sig.constants[c]);
        if (it == binding.constants.end())
            throw DomainError("binding missing constant '" + sig.constants[c] + "'");
        cmap[c] = it->second;
    }
    return cmap;
}

} // namespace

ProcessingTemplate build_template(int n, const CubeMatrixR& matrix) {
    if (n < 1) throw DomainError("build_template needs n >= 1");
    ProcessingTemplate t;
    t.n = n;
    t.matrix = matrix;

    TemplateNode root;
    root.unprocessed = n;
    t.nodes.push_back(root);

    for (std::size_t cur = 0; cur < t.nodes.size(); ++cur) {
        if (t.nodes[cur].unprocessed < matrix.k) {
            t.leaves.push_back(int(cur));
            continue;
        }
        auto cells = partition_pi(remaining_coords(n, t.nodes[cur].processed), matrix.k);
        for (int i = 1; i <= matrix.m; ++i) {
            TemplateNode child;
            child.parent = int(cur);
            child.address = t.nodes[cur].address;
            child.address.push_back(i);
            child.label = cells[matrix.lambda[i - 1]];
            child.processed = t.nodes[cur].processed;
            child.processed.insert(child.processed.end(), child.label.begin(),
                                   child.label.end());
            std::sort(child.processed.begin(), child.processed.end());
            child.unprocessed = t.nodes[cur].unprocessed - int(child.label.size());
            t.nodes[cur].children.push_back(int(t.nodes.size()));
            t.max_depth = std::max(t.max_depth, int(child.address.size()));
            t.nodes.push_back(std::move(child));
        }
    }
    return t;
}

FactorTree process_tuple(std::uint64_t a, const ProcessingTemplate& tmpl, const Signature& sig,
                         const FiniteAlgebra& alg, const OpBinding& binding) {
    const CubeMatrixR& R = tmpl.matrix;
    const Operation* op = alg.op(binding.op);
    if (!op) throw DomainError("binding names unknown operation '" + binding.op + "'");
    if (op->arity != R.m) throw DomainError("binding arity mismatch");
    std::map<int, int> cmap = resolve_constants(R, sig, binding);
    Power pw(alg.size(), tmpl.n);

    FactorTree tree;
    tree.nodes.push_back({0, a, {}});

    // Depth-first over tree indices; nodes are appended as discovered.
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int tree_idx = stack.back();
        stack.pop_back();
        const TemplateNode& tn = tmpl.nodes[tree.nodes[tree_idx].template_node];
        if (tn.children.empty()) continue;
        std::vector<int> t_dig = pw.decode(tree.nodes[tree_idx].tuple);

        // V and U_1 use the first cube identity, U_j the j-th.
        std::vector<int> row_of(tmpl.n + 1, 0);
        auto cells = partition_pi(remaining_coords(tmpl.n, tn.processed), R.k);
        for (int j = 0; j < R.k; ++j)
            for (int coord : cells[j]) row_of[coord] = j;

        std::vector<std::uint64_t> child_tuples;
        std::vector<std::vector<int>> child_digits;
        for (int i = 1; i <= R.m; ++i) {
            std::vector<int> digits(tmpl.n);
            for (int coord = 1; coord <= tmpl.n; ++coord) {
                const CubeEntry& e = R.rows[row_of[coord]][i - 1];
                digits[coord - 1] =
                    e.kind == CubeEntry::X ? t_dig[coord - 1] : cmap.at(e.constant);
            }
            child_tuples.push_back(pw.encode(digits));
            child_digits.push_back(std::move(digits));
        }
        for (int coord = 0; coord < tmpl.n; ++coord) {
            std::vector<int> args;
            args.reserve(R.m);
            for (int i = 0; i < R.m; ++i) args.push_back(child_digits[i][coord]);
            auto v = apply(alg, *op, args);
            if (!v || *v != t_dig[coord])
                throw DomainError("cube identities do not hold in the bound algebra");
        }
        for (int i = 0; i < R.m; ++i) {
            int child_idx = int(tree.nodes.size());
            tree.nodes.push_back({tn.children[i], child_tuples[i], {}});
            tree.nodes[tree_idx].children.push_back(child_idx);
            stack.push_back(child_idx);
        }
    }
    return tree;
}

std::vector<FactorType> leaf_types(const ProcessingTemplate& tmpl) {
    const CubeMatrixR& R = tmpl.matrix;
    std::set<std::vector<int>> seen;
    std::vector<FactorType> out;
    for (int leaf : tmpl.leaves) {
        // Walk the path root -> leaf replaying the symbolic assignment.
        std::vector<int> path;
        for (int cur = leaf; cur > 0; cur = tmpl.nodes[cur].parent) path.push_back(cur);
        std::reverse(path.begin(), path.end());

        std::vector<int> assignment(tmpl.n, -1); // constant id or -1
        for (int node : path) {
            int parent = tmpl.nodes[node].parent;
            int i = tmpl.nodes[node].address.back(); // which child, 1-based
            const TemplateNode& pn = tmpl.nodes[parent];
            auto cells = partition_pi(remaining_coords(tmpl.n, pn.processed), R.k);
            std::vector<int> row_of(tmpl.n + 1, 0);
            for (int j = 0; j < R.k; ++j)
                for (int coord : cells[j]) row_of[coord] = j;
            for (int coord = 1; coord <= tmpl.n; ++coord) {
                const CubeEntry& e = R.rows[row_of[coord]][i - 1];
                if (e.kind == CubeEntry::C) assignment[coord - 1] = e.constant;
            }
        }
        if (!seen.insert(assignment).second) continue;
        FactorType ft;
        ft.assignment = assignment;
        std::set<int> consts;
        int unproc = 0;
        for (int a : assignment) {
            if (a < 0) ++unproc;
            else consts.insert(a);
        }
        ft.cells = int(consts.size()) + unproc;
        out.push_back(std::move(ft));
    }
    return out;
}

std::vector<std::uint64_t> polynomial_generators(const FiniteAlgebra& alg,
                                                 const CubeWitness& witness, const Signature& sig,
                                                 const OpBinding& binding, int n,
                                                 const std::vector<std::uint64_t>& base_gens,
                                                 std::optional<int> fallback_constant) {
    CubeMatrixR R = derive_R(witness, fallback_constant);
    int p = int(R.constants_present.size());
    int width = p + R.k - 1;

    if (!closure(alg, width, base_gens).full())
        throw DomainError("base generators do not generate A^(p+k-1)");

    ProcessingTemplate tmpl = build_template(n, R);
    std::map<int, int> cmap = resolve_constants(R, sig, binding);
    Power pw(alg.size(), n);
    Power bp(alg.size(), width);

    std::set<std::uint64_t> out;
    for (const FactorType& type : leaf_types(tmpl)) {
        // Cells in first-coordinate order: constants first come wherever they
        // first appear; unprocessed coordinates are singleton cells.
        std::vector<int> cell_of(n, -1);
        std::map<int, int> const_cell;
        int cells = 0;
        for (int i = 0; i < n; ++i) {
            int a = type.assignment[i];
            if (a < 0) {
                cell_of[i] = cells++;
            } else if (const_cell.count(a)) {
                cell_of[i] = const_cell[a];
            } else {
                const_cell[a] = cells;
                cell_of[i] = cells++;
            }
        }
        if (cells > width)
            throw DomainError("internal error: leaf type has more than p+k-1 cells");
        for (std::uint64_t g : base_gens) {
            std::vector<int> gd = bp.decode(g); // project onto the first `cells` coords
            std::vector<int> digits(n);
            for (int i = 0; i < n; ++i) digits[i] = gd[cell_of[i]];
            out.insert(pw.encode(digits));
        }
    }
    (void)cmap;
    return std::vector<std::uint64_t>(out.begin(), out.end());
}

std::vector<std::uint64_t> one_pointed_generators(const FiniteAlgebra& alg, int c_elem, int k,
                                                  int n,
                                                  const std::vector<std::uint64_t>& base_gens) {
    if (k < 2) throw DomainError("one_pointed_generators needs k >= 2");
    if (c_elem < 0 || c_elem >= alg.size()) throw DomainError("constant element out of range");
    if (!closure(alg, k, base_gens).full())
        throw DomainError("base generators do not generate A^k");

    Power pw(alg.size(), n);
    Power bp(alg.size(), k);
    int s = std::min(k - 1, n);

    std::set<std::uint64_t> out;
    std::vector<int> subset(s);
    for (int i = 0; i < s; ++i) subset[i] = i;
    while (true) {
        for (std::uint64_t g : base_gens) {
            std::vector<int> gd = bp.decode(g);
            std::vector<int> digits(n, 0);
            for (int i = 0; i < n; ++i) digits[i] = gd[k - 1]; // shared off-U value
            for (int i = 0; i < s; ++i) digits[subset[i]] = gd[i];
            out.insert(pw.encode(digits));
        }
        // next (k-1)-subset of [n]
        int i = s - 1;
        while (i >= 0 && subset[i] == n - s + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < s; ++j) subset[j] = subset[j - 1] + 1;
    }
    return std::vector<std::uint64_t>(out.begin(), out.end());
}

bool ceil_lemma_check(std::int64_t u, std::int64_t k) {
    if (!(u >= k && k >= 1)) throw DomainError("ceil_lemma_check needs u >= k >= 1");
    std::int64_t lhs = 2 * k * (((k - 1) * u + k - 1) / k); // 2k * ceil((k-1)u/k)
    std::int64_t rhs = (2 * k - 1) * u;
    return lhs <= rhs;
}

double template_size_bound(int m, int k, int n, std::size_t g) {
    double w = double(2 * k) / double(2 * k - 1);
    double r = std::log(double(n) / double(k)) / std::log(w);
    if (r < 0) r = 0;
    return std::pow(double(m), r + 1) * double(g);
}

} // namespace ua
