#include "ua/algebra.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace ua {

int FiniteAlgebra::element(const std::string& label) const {
    for (std::size_t i = 0; i < universe.size(); ++i)
        if (universe[i] == label) return int(i);
    return -1;
}

const Operation* FiniteAlgebra::op(const std::string& name) const {
    for (const auto& o : ops)
        if (o.name == name) return &o;
    return nullptr;
}

void FiniteAlgebra::validate() const {
    if (universe.empty()) throw DomainError("empty universe");
    std::set<std::string> labels(universe.begin(), universe.end());
    if (labels.size() != universe.size()) throw DomainError("duplicate universe labels");
    std::set<std::string> names;
    for (const auto& o : ops) {
        if (!names.insert(o.name).second)
            throw DomainError("duplicate operation name '" + o.name + "'");
        if (o.arity < 0) throw DomainError("negative arity");
        std::uint64_t want = 1;
        for (int i = 0; i < o.arity; ++i) want *= universe.size();
        if (o.table.size() != want)
            throw DomainError("operation '" + o.name + "' has wrong table size");
        for (auto v : o.table)
            if (v < -1 || v >= int(universe.size()))
                throw DomainError("operation '" + o.name + "' has out-of-range value");
    }
}

std::uint64_t Power::encode(const std::vector<int>& digits) const {
    std::uint64_t code = 0;
    for (int d : digits) code = code * base + std::uint64_t(d);
    return code;
}

std::vector<int> Power::decode(std::uint64_t code) const {
    std::vector<int> digits(n);
    for (int i = n - 1; i >= 0; --i) {
        digits[i] = int(code % base);
        code /= base;
    }
    return digits;
}

std::optional<int> apply(const FiniteAlgebra& alg, const Operation& op,
                         const std::vector<int>& args) {
    if (int(args.size()) != op.arity) throw DomainError("arity mismatch in apply");
    std::size_t idx = 0;
    for (int a : args) {
        if (a < 0 || a >= alg.size()) throw DomainError("argument out of range in apply");
        idx = idx * alg.size() + std::size_t(a);
    }
    std::int32_t v = op.table[idx];
    if (v < 0) return std::nullopt;
    return int(v);
}

std::optional<std::uint64_t> power_apply(const Operation& op, const Power& pw,
                                         const std::vector<std::uint64_t>& args) {
    if (int(args.size()) != op.arity) throw DomainError("arity mismatch in power_apply");
    std::vector<int> digits(pw.n);
    std::vector<std::vector<int>> arg_digits;
    arg_digits.reserve(args.size());
    for (auto a : args) arg_digits.push_back(pw.decode(a));
    for (int i = 0; i < pw.n; ++i) {
        std::size_t row = 0;
        for (int j = 0; j < op.arity; ++j) row = row * pw.base + std::size_t(arg_digits[j][i]);
        std::int32_t v = op.table[row];
        if (v < 0) return std::nullopt;
        digits[i] = v;
    }
    if (op.arity == 0) {
        for (int i = 0; i < pw.n; ++i) digits[i] = op.table[0];
    }
    return pw.encode(digits);
}

ClosureState::ClosureState(const FiniteAlgebra& alg, int n, std::uint64_t guard)
    : alg_(&alg), pw_(alg.size(), n), set_(checked_power(alg.size(), n, guard)) {
    if (alg.size() > 255) throw DomainError("universe too large for power computations");
    std::map<std::pair<int, std::vector<int>>, int> group_index;
    for (const auto& op : alg.ops) {
        if (op.arity == 0) continue;
        if (op.total()) {
            total_ops_.push_back(&op);
            continue;
        }
        std::vector<int> row_codes;
        for (std::size_t i = 0; i < op.table.size(); ++i)
            if (op.table[i] >= 0) row_codes.push_back(int(i));
        if (row_codes.empty()) continue;
        auto key = std::make_pair(op.arity, row_codes);
        auto it = group_index.find(key);
        if (it == group_index.end()) {
            DomainGroup g;
            g.arity = op.arity;
            Power rp(alg.size(), op.arity);
            for (int rc : row_codes) g.rows.push_back(rp.decode(std::uint64_t(rc)));
            it = group_index.emplace(key, int(groups_.size())).first;
            groups_.push_back(std::move(g));
        }
        groups_[it->second].members.push_back(&op);
    }
    seed_constants();
}

void ClosureState::seed_constants() {
    for (const auto& op : alg_->ops) {
        if (op.arity != 0) continue;
        std::vector<int> digits(pw_.n, op.table[0]);
        add(pw_.encode(digits));
    }
}

void ClosureState::add(std::uint64_t code) {
    if (set_.set(code)) {
        list_.push_back(code);
        for (int d : pw_.decode(code)) digits_.push_back(std::uint8_t(d));
    }
}

void ClosureState::expand_total(const Operation& op, std::size_t t_pos) {
    int w = op.arity;
    int base = pw_.base;
    int n = pw_.n;
    std::size_t limit = list_.size(); // later additions are processed on their own turn
    std::vector<std::uint8_t> tdig(digits_.begin() + t_pos * n,
                                   digits_.begin() + (t_pos + 1) * n);
    std::vector<const std::uint8_t*> ad(w);
    std::vector<int> result(n);

    // Enumerate argument tuples whose first occurrence of the new element is
    // at position p; the others range over the current prefix.
    for (int p = 0; p < w; ++p) {
        std::vector<int> other;
        for (int q = 0; q < w; ++q)
            if (q != p) other.push_back(q);
        std::vector<std::size_t> cur(other.size(), 0);
        while (true) {
            bool ok = true;
            for (std::size_t k = 0; k < other.size(); ++k) {
                if (other[k] < p && cur[k] == t_pos) { ok = false; break; }
                ad[other[k]] = &digits_[cur[k] * n];
            }
            if (ok) {
                ad[p] = tdig.data();
                bool def = true;
                for (int i = 0; i < n && def; ++i) {
                    std::size_t row = 0;
                    for (int q = 0; q < w; ++q) row = row * base + ad[q][i];
                    std::int32_t v = op.table[row];
                    if (v < 0) def = false;
                    else result[i] = v;
                }
                if (def) {
                    std::uint64_t code = 0;
                    for (int i = 0; i < n; ++i) code = code * base + std::uint64_t(result[i]);
                    add(code);
                }
            }
            std::size_t k = 0;
            while (k < cur.size() && ++cur[k] == limit) cur[k++] = 0;
            if (k == cur.size()) break;
        }
    }
}

void ClosureState::expand_partial(int gi, std::size_t t_pos) {
    const DomainGroup& g = groups_[gi];
    int w = g.arity;
    int nrows = int(g.rows.size());
    std::vector<int> tdig(pw_.n);
    for (int i = 0; i < pw_.n; ++i) tdig[i] = digits_[t_pos * pw_.n + i];

    // For each way t can appear as the l-th argument: the row pattern is
    // constrained per coordinate to rows whose l-th entry matches t.
    for (int l = 0; l < w; ++l) {
        std::vector<std::vector<int>> choices(pw_.n);
        bool feasible = true;
        std::uint64_t product = 1;
        for (int i = 0; i < pw_.n && feasible; ++i) {
            for (int r = 0; r < nrows; ++r)
                if (g.rows[r][l] == tdig[i]) choices[i].push_back(r);
            if (choices[i].empty()) feasible = false;
            product *= choices[i].size();
            if (product > (1ull << 24))
                throw DomainError("partial-operation pattern space too large");
        }
        if (!feasible) continue;
        std::vector<int> pick(pw_.n, 0);
        std::vector<int> arg_digits(pw_.n);
        while (true) {
            bool args_ok = true;
            for (int l2 = 0; l2 < w && args_ok; ++l2) {
                if (l2 == l) continue;
                for (int i = 0; i < pw_.n; ++i)
                    arg_digits[i] = g.rows[choices[i][pick[i]]][l2];
                if (!set_.test(pw_.encode(arg_digits))) args_ok = false;
            }
            if (args_ok) {
                for (const Operation* m : g.members) {
                    std::vector<int> res(pw_.n);
                    for (int i = 0; i < pw_.n; ++i) {
                        const std::vector<int>& row = g.rows[choices[i][pick[i]]];
                        std::size_t rc = 0;
                        for (int q = 0; q < w; ++q) rc = rc * pw_.base + std::size_t(row[q]);
                        res[i] = m->table[rc];
                    }
                    add(pw_.encode(res));
                }
            }
            int i = 0;
            while (i < pw_.n && ++pick[i] == int(choices[i].size())) pick[i++] = 0;
            if (i == pw_.n || pw_.n == 0) break;
        }
    }
}

void ClosureState::run() {
    while (cursor_ < list_.size()) {
        if (set_.full()) return;
        std::size_t pos = cursor_++;
        for (const Operation* op : total_ops_) expand_total(*op, pos);
        for (int gi = 0; gi < int(groups_.size()); ++gi) expand_partial(gi, pos);
    }
}

Bitset closure(const FiniteAlgebra& alg, int n,
               const std::vector<std::uint64_t>& generators) {
    ClosureState cs(alg, n);
    for (auto g : generators) cs.add(g);
    cs.run();
    return cs.bits();
}

bool producible_without(const FiniteAlgebra& alg, int n, std::uint64_t target) {
    Power pw(alg.size(), n);
    std::vector<int> e = pw.decode(target);
    for (const auto& op : alg.ops) {
        if (op.arity == 0) {
            bool match = true;
            for (int i = 0; i < n; ++i)
                if (e[i] != op.table[0]) { match = false; break; }
            if (match) return true;
            continue;
        }
        int w = op.arity;
        Power rp(alg.size(), w);
        // Rows usable at coordinate i: defined rows whose value is e[i].
        std::vector<std::vector<std::vector<int>>> rows_for(n);
        bool feasible = true;
        for (int i = 0; i < n && feasible; ++i) {
            for (std::size_t rc = 0; rc < op.table.size(); ++rc)
                if (op.table[rc] == e[i]) rows_for[i].push_back(rp.decode(rc));
            if (rows_for[i].empty()) feasible = false;
        }
        if (!feasible) continue;
        if (n == 0) continue; // a w-ary application would use the target itself
        // State: set of argument columns still coordinatewise equal to the
        // target; a production is valid iff some choice empties the set.
        std::vector<char> reach(std::size_t(1) << w, 0);
        reach[(std::size_t(1) << w) - 1] = 1;
        for (int i = 0; i < n; ++i) {
            std::vector<char> next(std::size_t(1) << w, 0);
            for (std::size_t m = 0; m < reach.size(); ++m) {
                if (!reach[m]) continue;
                for (const auto& row : rows_for[i]) {
                    std::size_t m2 = 0;
                    for (int l = 0; l < w; ++l)
                        if ((m >> l & 1) && row[l] == e[i]) m2 |= std::size_t(1) << l;
                    next[m2] = 1;
                }
            }
            reach.swap(next);
        }
        if (reach[0]) return true;
    }
    return false;
}

FiniteAlgebra one_point_completion(const FiniteAlgebra& alg, const std::string& new_label) {
    if (alg.element(new_label) >= 0)
        throw DomainError("completion label '" + new_label + "' already in universe");
    FiniteAlgebra out;
    out.universe = alg.universe;
    out.universe.push_back(new_label);
    int zero = alg.size();
    int nb = out.size();
    for (const auto& op : alg.ops) {
        Operation t;
        t.name = op.name;
        t.arity = op.arity;
        if (op.arity == 0) {
            t.table = op.table;
        } else {
            std::uint64_t sz = 1;
            for (int i = 0; i < op.arity; ++i) sz *= nb;
            t.table.assign(sz, zero);
            Power np(nb, op.arity);
            for (std::uint64_t code = 0; code < sz; ++code) {
                std::vector<int> args = np.decode(code);
                bool inside = true;
                for (int a : args)
                    if (a >= alg.size()) { inside = false; break; }
                if (!inside) continue;
                std::size_t old_idx = 0;
                for (int a : args) old_idx = old_idx * alg.size() + std::size_t(a);
                std::int32_t v = op.table[old_idx];
                t.table[code] = v >= 0 ? v : zero;
            }
        }
        out.ops.push_back(std::move(t));
    }
    std::string meet_name = "meet_" + new_label;
    while (out.op(meet_name)) meet_name += "_";
    Operation meet;
    meet.name = meet_name;
    meet.arity = 2;
    meet.table.assign(std::size_t(nb) * nb, zero);
    for (int a = 0; a < nb; ++a) meet.table[std::size_t(a) * nb + a] = a;
    out.ops.push_back(std::move(meet));
    return out;
}

Interpretation Interpretation::identity_for(const FiniteAlgebra& alg, const Theory& th) {
    Interpretation interp;
    for (const auto& f : th.signature.functions) {
        const Operation* op = alg.op(f.name);
        if (!op || op->arity != f.arity)
            throw DomainError("algebra has no operation matching symbol '" + f.name + "'");
        std::vector<InterpTerm> args;
        for (int i = 1; i <= f.arity; ++i) args.push_back(InterpTerm::mkvar(i));
        interp.functions.emplace(f.name, InterpTerm::mkapp(f.name, std::move(args)));
    }
    for (const auto& c : th.signature.constants) {
        const Operation* op = alg.op(c);
        if (op && op->arity == 0) {
            interp.constants.emplace(c, op->table[0]);
        } else {
            int e = alg.element(c);
            if (e < 0) throw DomainError("algebra has no interpretation for constant '" + c + "'");
            interp.constants.emplace(c, e);
        }
    }
    return interp;
}

int eval_interp(const FiniteAlgebra& alg, const InterpTerm& t, const std::vector<int>& args) {
    switch (t.kind) {
        case InterpTerm::Var:
            if (t.var < 1 || t.var > int(args.size()))
                throw DomainError("interpretation variable out of range");
            return args[t.var - 1];
        case InterpTerm::Elem:
            return t.elem;
        case InterpTerm::App: {
            const Operation* op = alg.op(t.op);
            if (!op) throw DomainError("interpretation uses unknown operation '" + t.op + "'");
            if (int(t.args.size()) != op->arity)
                throw DomainError("interpretation arity mismatch for '" + t.op + "'");
            std::vector<int> vals;
            vals.reserve(t.args.size());
            for (const auto& a : t.args) vals.push_back(eval_interp(alg, a, args));
            std::size_t idx = 0;
            for (int v : vals) idx = idx * alg.size() + std::size_t(v);
            std::int32_t r = op->table[idx];
            if (r < 0)
                throw UndefinedEvaluation("partial operation '" + t.op + "' undefined during evaluation");
            return r;
        }
    }
    throw DomainError("corrupt interpretation term");
}

namespace {

int eval_identity_side(const FiniteAlgebra& alg, const Theory& th, const Interpretation& interp,
                       const BasicTerm& t, const std::vector<int>& valuation) {
    auto atom_val = [&](const Atom& a) {
        if (a.kind == Atom::Var) return valuation[a.index];
        return interp.constants.at(th.signature.constants[a.index]);
    };
    if (!t.is_app) return atom_val(t.atom);
    std::vector<int> args;
    args.reserve(t.args.size());
    for (const auto& a : t.args) args.push_back(atom_val(a));
    return eval_interp(alg, interp.functions.at(th.signature.functions[t.symbol].name), args);
}

} // namespace

bool check_models(const FiniteAlgebra& alg, const Theory& th, const Interpretation& interp) {
    for (const auto& id : th.identities) {
        int k = std::max(id.lhs.max_var(), id.rhs.max_var()) + 1;
        std::vector<int> valuation(std::max(k, 1), 0);
        std::uint64_t total = 1;
        for (int i = 0; i < k; ++i) total *= alg.size();
        for (std::uint64_t v = 0; v < total; ++v) {
            std::uint64_t code = v;
            for (int i = k - 1; i >= 0; --i) {
                valuation[i] = int(code % alg.size());
                code /= alg.size();
            }
            if (eval_identity_side(alg, th, interp, id.lhs, valuation) !=
                eval_identity_side(alg, th, interp, id.rhs, valuation))
                return false;
        }
    }
    return true;
}

FiniteAlgebra algebra_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    FiniteAlgebra alg;
    if (!j.contains("universe") || !j["universe"].is_array())
        throw DomainError("algebra file: missing universe array");
    for (const auto& u : j["universe"]) alg.universe.push_back(u.get<std::string>());
    int n = alg.size();
    if (j.contains("operations")) {
        for (auto it = j["operations"].begin(); it != j["operations"].end(); ++it) {
            Operation op;
            op.name = it.key();
            const auto& spec = it.value();
            op.arity = spec.at("arity").get<int>();
            if (op.arity < 0) throw DomainError("algebra file: negative arity");
            std::uint64_t sz = 1;
            for (int i = 0; i < op.arity; ++i) sz *= n;
            const auto& table = spec.at("table");
            if (!table.empty() && table[0].is_array()) {
                op.table.assign(sz, -1);
                Power rp(n, op.arity);
                for (const auto& row : table) {
                    if (int(row.size()) != op.arity + 1)
                        throw DomainError("algebra file: bad row length in '" + op.name + "'");
                    std::vector<int> args;
                    for (int i = 0; i < op.arity; ++i) args.push_back(row[i].get<int>());
                    int value = row[op.arity].get<int>();
                    for (int a : args)
                        if (a < 0 || a >= n) throw DomainError("algebra file: index out of range");
                    if (value < 0 || value >= n)
                        throw DomainError("algebra file: value out of range");
                    std::uint64_t idx = rp.encode(args);
                    if (op.table[idx] != -1)
                        throw DomainError("algebra file: duplicate table entry in '" + op.name + "'");
                    op.table[idx] = value;
                }
            } else {
                if (table.size() != sz)
                    throw DomainError("algebra file: flat table for '" + op.name +
                                      "' must have " + std::to_string(sz) + " entries");
                for (const auto& v : table) {
                    int value = v.get<int>();
                    if (value < 0 || value >= n)
                        throw DomainError("algebra file: value out of range");
                    op.table.push_back(value);
                }
            }
            alg.ops.push_back(std::move(op));
        }
    }
    alg.validate();
    return alg;
}

std::string algebra_to_json(const FiniteAlgebra& alg) {
    nlohmann::json j;
    j["universe"] = alg.universe;
    nlohmann::json ops = nlohmann::json::object();
    for (const auto& op : alg.ops) {
        nlohmann::json spec;
        spec["arity"] = op.arity;
        spec["total"] = op.total();
        if (op.total()) {
            spec["table"] = op.table;
        } else {
            nlohmann::json rows = nlohmann::json::array();
            Power rp(alg.size(), op.arity);
            for (std::size_t i = 0; i < op.table.size(); ++i) {
                if (op.table[i] < 0) continue;
                nlohmann::json row = nlohmann::json::array();
                for (int a : rp.decode(i)) row.push_back(a);
                row.push_back(op.table[i]);
                rows.push_back(row);
            }
            spec["table"] = rows;
        }
        ops[op.name] = spec;
    }
    j["operations"] = ops;
    return j.dump(2) + "\n";
}

std::uint64_t checked_power(int base, int n, std::uint64_t guard) {
    std::uint64_t c = 1;
    for (int i = 0; i < n; ++i) {
        if (c > guard / std::uint64_t(base))
            throw DomainError("guard exceeded: |A|^n too large");
        c *= base;
    }
    if (c > guard) throw DomainError("guard exceeded: |A|^n too large");
    return c;
}

} // namespace ua
