#include "ua/constructions.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ua {

namespace {

struct ClassInfo {
    int variable = -1;       // the unique variable in the class, if any
    int least_constant = -1; // least constant id in the class, if any
    std::vector<std::uint32_t> var_masks; // distinct variable sets of members
};

std::vector<int> sorted_reps(const ClosureRelation& cl) {
    return cl.representatives();
}

std::vector<ClassInfo> analyze_classes(const ClosureRelation& cl,
                                       const std::vector<int>& reps,
                                       const std::map<int, int>& rep_pos) {
    const TermUniverse& tu = cl.universe();
    std::vector<ClassInfo> info(reps.size());
    for (std::size_t ci = 0; ci < reps.size(); ++ci) {
        std::set<std::uint32_t> masks;
        for (int t : cl.class_of_rep(reps[ci])) {
            BasicTerm term = tu.term_at(t);
            std::uint32_t mask = 0;
            for (int v : term.variables()) mask |= std::uint32_t(1) << v;
            masks.insert(mask);
            if (!term.is_app) {
                if (term.atom.kind == Atom::Var) {
                    info[ci].variable = term.atom.index;
                } else if (info[ci].least_constant < 0 ||
                           term.atom.index < info[ci].least_constant) {
                    info[ci].least_constant = term.atom.index;
                }
            }
        }
        info[ci].var_masks.assign(masks.begin(), masks.end());
    }
    (void)rep_pos;
    return info;
}

std::string fresh_label(std::string candidate, const std::vector<std::string>& taken) {
    auto used = [&](const std::string& s) {
        return std::find(taken.begin(), taken.end(), s) != taken.end();
    };
    while (used(candidate)) candidate += "_";
    return candidate;
}

} // namespace

int ModelM::eval_canonical(const BasicTerm& t) const {
    std::vector<int> valuation(canonical_vars);
    return eval(t, valuation);
}

int ModelM::eval(const BasicTerm& t, const std::vector<int>& valuation) const {
    auto atom_val = [&](const Atom& a) {
        if (a.kind == Atom::Var) return valuation[a.index];
        return canonical_consts[a.index];
    };
    if (!t.is_app) return atom_val(t.atom);
    const Operation* op = algebra.op(closure.universe().signature().functions[t.symbol].name);
    std::vector<int> args;
    args.reserve(t.args.size());
    for (const auto& a : t.args) args.push_back(atom_val(a));
    return *apply(algebra, *op, args);
}

ModelM model_M(const Theory& th) {
    if (!consistent(th)) throw DomainError("model_M requires a consistent theory");
    int x_count = large_enough_X(th);
    ClosureRelation cl = weak_closure(th, x_count);
    const TermUniverse& tu = cl.universe();

    std::vector<int> reps = sorted_reps(cl);
    std::map<int, int> rep_pos;
    for (std::size_t i = 0; i < reps.size(); ++i) rep_pos[reps[i]] = int(i);
    std::vector<ClassInfo> info = analyze_classes(cl, reps, rep_pos);

    ModelM m{FiniteAlgebra{}, cl, {}, -1, {}, {}};
    for (int r : reps)
        m.algebra.universe.push_back(render_term(tu.term_at(r), th.signature));
    m.algebra.universe.push_back(fresh_label("0", m.algebra.universe));
    m.zero_element = int(reps.size());

    m.class_of_term.resize(tu.size());
    for (int t = 0; t < tu.size(); ++t) m.class_of_term[t] = rep_pos.at(cl.rep_of(t));
    m.canonical_vars.resize(x_count);
    for (int v = 0; v < x_count; ++v)
        m.canonical_vars[v] = m.class_of_term[tu.atom_index(var(v))];
    m.canonical_consts.resize(th.signature.constants.size());
    for (int c = 0; c < int(th.signature.constants.size()); ++c)
        m.canonical_consts[c] = m.class_of_term[tu.atom_index(cst(c))];

    int mu = m.algebra.size();

    // The interpretation of F at a tuple of classes, computed through a
    // deterministic injection iota; fresh variables are handed out in
    // ascending (or, for the cross-check, descending) order.
    auto value_at = [&](int f, const std::vector<int>& args, bool fresh_desc) {
        int arity = th.signature.functions[f].arity;
        std::vector<int> classes; // distinct, in first-occurrence order
        for (int a : args)
            if (std::find(classes.begin(), classes.end(), a) == classes.end())
                classes.push_back(a);
        std::uint32_t fixed_mask = 0;
        for (int c : classes)
            if (c != m.zero_element && info[c].variable >= 0)
                fixed_mask |= std::uint32_t(1) << info[c].variable;
        std::vector<int> fresh_pool;
        for (int v = 0; v < x_count; ++v)
            if (!(fixed_mask >> v & 1)) fresh_pool.push_back(v);
        if (fresh_desc) std::reverse(fresh_pool.begin(), fresh_pool.end());
        std::size_t next_fresh = 0;
        std::map<int, Atom> iota;
        for (int c : classes) {
            if (c != m.zero_element && info[c].least_constant >= 0)
                iota[c] = cst(info[c].least_constant);
            else if (c != m.zero_element && info[c].variable >= 0)
                iota[c] = var(info[c].variable);
            else
                iota[c] = var(fresh_pool.at(next_fresh++));
        }
        std::vector<Atom> term_args;
        term_args.reserve(arity);
        for (int a : args) term_args.push_back(iota.at(a));
        BasicTerm ft = BasicTerm::make(f, term_args);
        int fclass = rep_pos.at(cl.rep_of(tu.index_of(ft)));
        // Case 1: some member's variables all fixed.
        for (std::uint32_t mask : info[fclass].var_masks)
            if ((mask & ~fixed_mask) == 0) return fclass;
        // Case 2: the class contains a variable occurring in the term.
        if (info[fclass].variable >= 0) {
            Atom x = var(info[fclass].variable);
            for (int i = 0; i < arity; ++i)
                if (term_args[i] == x) return args[i];
            throw DomainError("internal error: case 2 variable not among arguments");
        }
        return m.zero_element;
    };

    for (int f = 0; f < int(th.signature.functions.size()); ++f) {
        const auto& fs = th.signature.functions[f];
        Operation op{fs.name, fs.arity, {}};
        std::uint64_t rows = 1;
        for (int i = 0; i < fs.arity; ++i) rows *= mu;
        op.table.resize(rows);
        Power rp(mu, fs.arity);
        for (std::uint64_t rc = 0; rc < rows; ++rc) {
            std::vector<int> args = rp.decode(rc);
            int v = value_at(f, args, false);
            if (v != value_at(f, args, true))
                throw DomainError("internal error: F^M not well-defined");
            op.table[rc] = v;
        }
        m.algebra.ops.push_back(std::move(op));
    }
    for (int c = 0; c < int(th.signature.constants.size()); ++c)
        m.algebra.ops.push_back({th.signature.constants[c], 0, {m.canonical_consts[c]}});

    if (!check_models(m.algebra, th, Interpretation::identity_for(m.algebra, th)))
        throw DomainError("internal error: model M fails its theory");
    return m;
}

int ModelV::eval(const BasicTerm& t, const Theory& th, const std::vector<int>& valuation) const {
    auto atom_val = [&](const Atom& a) {
        if (a.kind == Atom::Var) return valuation[a.index];
        return const_elements[a.index];
    };
    if (!t.is_app) return atom_val(t.atom);
    const Operation* op = algebra.op(th.signature.functions[t.symbol].name);
    std::vector<int> args;
    args.reserve(t.args.size());
    for (const auto& a : t.args) args.push_back(atom_val(a));
    return *apply(algebra, *op, args);
}

ModelV model_V(const Theory& th, int y_count) {
    if (y_count < 1) throw DomainError("model_V needs y_count >= 1");
    if (!consistent(th)) throw DomainError("model_V requires a consistent theory");
    int x_count = std::max(large_enough_X(th), y_count + 1);
    ClosureRelation cl = weak_closure(th, x_count);
    const TermUniverse& tu = cl.universe();
    int z_var = y_count; // the designated variable for [0]

    ModelV v;
    v.y_count = y_count;

    // Universe: [y_0..y_{q-1}], the constant classes in declaration order of
    // their least member, then [0].
    std::vector<int> const_class_rep; // closure reps, deduped
    std::vector<int> const_class_least;
    v.const_elements.assign(th.signature.constants.size(), -1);
    for (int c = 0; c < int(th.signature.constants.size()); ++c) {
        int r = cl.rep_of(tu.atom_index(cst(c)));
        auto it = std::find(const_class_rep.begin(), const_class_rep.end(), r);
        if (it == const_class_rep.end()) {
            const_class_rep.push_back(r);
            const_class_least.push_back(c);
        }
    }
    for (int i = 0; i < y_count; ++i) {
        v.y_elements.push_back(i);
        v.algebra.universe.push_back(
            fresh_label("y" + std::to_string(i), v.algebra.universe));
    }
    for (std::size_t j = 0; j < const_class_rep.size(); ++j)
        v.algebra.universe.push_back(
            fresh_label(th.signature.constants[const_class_least[j]], v.algebra.universe));
    for (int c = 0; c < int(th.signature.constants.size()); ++c) {
        int r = cl.rep_of(tu.atom_index(cst(c)));
        for (std::size_t j = 0; j < const_class_rep.size(); ++j)
            if (const_class_rep[j] == r) v.const_elements[c] = y_count + int(j);
    }
    v.zero_element = y_count + int(const_class_rep.size());
    v.algebra.universe.push_back(fresh_label("0", v.algebra.universe));

    int vu = v.algebra.size();
    auto iota = [&](int elem) -> Atom {
        if (elem < y_count) return var(elem);
        if (elem == v.zero_element) return var(z_var);
        return cst(const_class_least[elem - y_count]);
    };

    for (const auto& fs : th.signature.functions) {
        int f = th.signature.function_id(fs.name);
        Operation op{fs.name, fs.arity, {}};
        std::uint64_t rows = 1;
        for (int i = 0; i < fs.arity; ++i) rows *= vu;
        op.table.resize(rows);
        Power rp(vu, fs.arity);
        for (std::uint64_t rc = 0; rc < rows; ++rc) {
            std::vector<int> args = rp.decode(rc);
            std::vector<Atom> term_args;
            term_args.reserve(args.size());
            for (int a : args) term_args.push_back(iota(a));
            BasicTerm ft = BasicTerm::make(f, term_args);
            int fc_rep = cl.rep_of(tu.index_of(ft));
            int value = v.zero_element;
            // Sigma |- f ≈ t for some t in Y ∪ C?
            for (int t : cl.class_of_rep(fc_rep)) {
                BasicTerm member = tu.term_at(t);
                if (member.is_app) continue;
                if (member.atom.kind == Atom::Var && member.atom.index < y_count) {
                    value = member.atom.index;
                    break;
                }
                if (member.atom.kind == Atom::Const) {
                    value = v.const_elements[member.atom.index];
                    break;
                }
            }
            op.table[rc] = value;
        }
        v.algebra.ops.push_back(std::move(op));
    }
    for (int c = 0; c < int(th.signature.constants.size()); ++c)
        v.algebra.ops.push_back({th.signature.constants[c], 0, {v.const_elements[c]}});

    if (!check_models(v.algebra, th, Interpretation::identity_for(v.algebra, th)))
        throw DomainError("internal error: model V fails its theory");
    return v;
}

SigmaMerge sigma_merge(const FiniteAlgebra& alg, const Theory& th) {
    if (alg.size() < 1) throw DomainError("sigma_merge needs a nonempty algebra");
    if (!consistent(th)) throw DomainError("sigma_merge requires a consistent theory");
    for (const auto& fs : th.signature.functions)
        if (alg.op(fs.name))
            throw DomainError("algebra language not disjoint from the theory: '" + fs.name + "'");
    for (const auto& c : th.signature.constants)
        if (alg.op(c))
            throw DomainError("algebra language not disjoint from the theory: '" + c + "'");

    ModelV v = model_V(th, alg.size());
    int p = v.zero_element - v.y_count; // number of constant classes

    SigmaMerge out;
    out.base_size = alg.size();
    FiniteAlgebra completed = alg;
    for (int j = 0; j < p; ++j) {
        std::string label = fresh_label("z" + std::to_string(j + 1), completed.universe);
        out.z_labels.push_back(label);
        completed = one_point_completion(completed, label);
    }
    std::string zero_label = fresh_label("0", completed.universe);
    out.z_labels.push_back(zero_label);
    completed = one_point_completion(completed, zero_label);

    // phi: V -> completed universe. [y_i] -> element i, the j-th constant
    // class -> z_j, [0] -> 0.
    std::vector<int> phi(v.algebra.size());
    for (int i = 0; i < v.y_count; ++i) phi[i] = i;
    for (int j = 0; j < p; ++j) phi[v.y_count + j] = alg.size() + j;
    phi[v.zero_element] = alg.size() + p;
    std::vector<int> phi_inv(completed.size());
    for (int i = 0; i < int(phi.size()); ++i) phi_inv[phi[i]] = i;

    for (const auto& fs : th.signature.functions) {
        const Operation* fv = v.algebra.op(fs.name);
        Operation op{fs.name, fs.arity, {}};
        std::uint64_t rows = 1;
        for (int i = 0; i < fs.arity; ++i) rows *= completed.size();
        op.table.resize(rows);
        Power rp(completed.size(), fs.arity);
        std::vector<int> vargs(fs.arity);
        for (std::uint64_t rc = 0; rc < rows; ++rc) {
            std::vector<int> args = rp.decode(rc);
            for (int i = 0; i < fs.arity; ++i) vargs[i] = phi_inv[args[i]];
            op.table[rc] = phi[*apply(v.algebra, *fv, vargs)];
        }
        completed.ops.push_back(std::move(op));
    }
    for (int c = 0; c < int(th.signature.constants.size()); ++c)
        completed.ops.push_back({th.signature.constants[c], 0, {phi[v.const_elements[c]]}});

    out.algebra = std::move(completed);
    out.interp = Interpretation::identity_for(out.algebra, th);
    if (!check_models(out.algebra, th, out.interp))
        throw DomainError("internal error: sigma merge fails its theory");
    return out;
}

FiniteAlgebra prescribed_d(const std::vector<int>& values) {
    if (values.empty()) throw DomainError("prescribed_d: empty value list");
    int k = int(values.size()) - 1;
    if (values[0] != 0 && values[0] != 1)
        throw DomainError("prescribed_d: D(0) must be 0 or 1");
    for (int i = 0; i + 1 <= k; ++i)
        if (values[i] > values[i + 1]) throw DomainError("prescribed_d: D must be increasing");
    for (int vv : values)
        if (vv < 0) throw DomainError("prescribed_d: negative value");
    if (k >= 2 && values[2] <= 0) throw DomainError("prescribed_d: D(2) must be positive");

    FiniteAlgebra a;
    a.universe.push_back("y");
    // matrix[n][i][j] = universe index of the i,j entry of M^(n)
    std::vector<std::vector<std::vector<int>>> matrix(k + 1);
    for (int n = 1; n <= k; ++n) {
        if (values[n] < 1) continue;
        matrix[n].assign(n, std::vector<int>(values[n]));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < values[n]; ++j) {
                matrix[n][i][j] = a.size();
                a.universe.push_back("z" + std::to_string(n) + "_" + std::to_string(i + 1) +
                                     "_" + std::to_string(j + 1));
            }
    }

    if (values[0] == 0) a.ops.push_back({"cy", 0, {0}});
    if (k >= 1 && values[1] == 0)
        for (int e = 0; e < a.size(); ++e)
            a.ops.push_back({"c_" + a.universe[e], 0, {e}});

    int sz = a.size();
    for (int n = 1; n <= k; ++n) {
        if (values[n] < 1) continue;
        int arity = values[n];
        std::uint64_t rows = 1;
        for (int i = 0; i < arity; ++i) rows *= sz;
        std::uint64_t nb = 1;
        for (int i = 0; i < n; ++i) nb *= sz;
        Power bp(sz, n);
        Power rp(sz, arity);
        for (std::uint64_t bc = 0; bc < nb; ++bc) {
            std::vector<int> b = bp.decode(bc);
            Operation op{"F" + std::to_string(n) + "_" + std::to_string(bc), arity, {}};
            op.table.assign(rows, -1);
            for (int i = 0; i < n; ++i)
                op.table[rp.encode(matrix[n][i])] = b[i];
            a.ops.push_back(std::move(op));
        }
    }
    return a;
}

ExampleNu example_nu(int q, int k) {
    if (q < 1 || k < 2) throw DomainError("example_nu needs q >= 1 and k >= 2");
    ExampleNu out;
    for (int i = 1; i <= q; ++i) out.partial.universe.push_back("a" + std::to_string(i));
    out.partial.universe.push_back("1");
    int one = q;
    int sz = q + 1;
    Operation f{"F", k, {}};
    std::uint64_t rows = 1;
    for (int i = 0; i < k; ++i) rows *= sz;
    f.table.assign(rows, -1);
    Power rp(sz, k);
    for (int x = 0; x < sz; ++x) {
        for (int i = 0; i < k; ++i) {
            std::vector<int> args(k, x);
            args[i] = one;
            f.table[rp.encode(args)] = x;
        }
    }
    out.partial.ops.push_back(std::move(f));

    out.total = one_point_completion(out.partial, "0");
    out.total.ops.push_back({"one", 0, {one}});
    return out;
}

FiniteAlgebra implication_algebra(const std::vector<unsigned>& filter, int width) {
    if (filter.empty()) throw DomainError("implication_algebra: empty filter");
    if (width < 1 || width > 20) throw DomainError("implication_algebra: bad width");
    unsigned mask = (1u << width) - 1;
    std::set<unsigned> elems;
    for (unsigned e : filter) {
        if (e > mask) throw DomainError("implication_algebra: vector exceeds the cube");
        elems.insert(e);
    }
    for (unsigned e : elems)
        for (int b = 0; b < width; ++b)
            if (!elems.count(e | (1u << b)))
                throw DomainError("implication_algebra: not an order filter");
    for (unsigned x : elems)
        for (unsigned y : elems)
            if (!elems.count((~x & mask) | y))
                throw DomainError("implication_algebra: not closed under implication");

    FiniteAlgebra a;
    std::vector<unsigned> order(elems.begin(), elems.end());
    for (unsigned e : order) {
        std::string label;
        for (int b = width - 1; b >= 0; --b) label += (e >> b & 1) ? '1' : '0';
        a.universe.push_back(label);
    }
    Operation imp{"imp", 2, {}};
    imp.table.resize(order.size() * order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = 0; j < order.size(); ++j) {
            unsigned v = (~order[i] & mask) | order[j];
            imp.table[i * order.size() + j] =
                int(std::find(order.begin(), order.end(), v) - order.begin());
        }
    a.ops.push_back(std::move(imp));
    return a;
}

} // namespace ua
