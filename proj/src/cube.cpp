#include "ua/cube.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace ua {

std::string render_cube_entry(const CubeEntry& e, const Signature& sig) {
    switch (e.kind) {
        case CubeEntry::X: return "x";
        case CubeEntry::Z: return "z";
        case CubeEntry::C: return sig.constants[e.constant];
    }
    return "?";
}

std::string render_cube_row(const CubeRow& r, const Signature& sig) {
    std::string out;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) out += " ";
        out += render_cube_entry(r[i], sig);
    }
    return out;
}

std::set<int> CubeWitness::constants() const {
    std::set<int> out;
    for (const auto& r : rows)
        for (const auto& e : r)
            if (e.kind == CubeEntry::C) out.insert(e.constant);
    return out;
}

namespace {

// Constant-class representatives: the least constant of each provability
// class, in declaration order.
std::vector<int> constant_reps(const ClosureRelation& cl) {
    const TermUniverse& tu = cl.universe();
    const Signature& sig = tu.signature();
    std::vector<int> reps;
    std::vector<char> seen_class(tu.size(), 0);
    for (int c = 0; c < int(sig.constants.size()); ++c) {
        int r = cl.rep_of(tu.atom_index(cst(c)));
        if (!seen_class[r]) {
            seen_class[r] = 1;
            reps.push_back(c);
        }
    }
    return reps;
}

Atom entry_atom(const CubeEntry& e) {
    switch (e.kind) {
        case CubeEntry::X: return var(0);
        case CubeEntry::Z: return var(1);
        case CubeEntry::C: return cst(e.constant);
    }
    return var(0);
}

std::vector<CubeRow> provable_rows_with(const ClosureRelation& cl, const Theory& th,
                                        const std::string& symbol) {
    int f = th.signature.function_id(symbol);
    if (f < 0) throw DomainError("unknown function symbol '" + symbol + "'");
    int m = th.signature.functions[f].arity;

    std::vector<CubeEntry> alphabet;
    alphabet.push_back({CubeEntry::X, -1});
    alphabet.push_back({CubeEntry::Z, -1});
    for (int c : constant_reps(cl)) alphabet.push_back({CubeEntry::C, c});

    const TermUniverse& tu = cl.universe();
    int x_class = cl.rep_of(tu.atom_index(var(0)));

    std::vector<CubeRow> rows;
    std::vector<int> pick(m, 0);
    while (true) {
        CubeRow row;
        std::vector<Atom> args;
        for (int j = 0; j < m; ++j) {
            row.push_back(alphabet[pick[j]]);
            args.push_back(entry_atom(alphabet[pick[j]]));
        }
        BasicTerm t = BasicTerm::make(f, std::move(args));
        if (cl.rep_of(tu.index_of(t)) == x_class) rows.push_back(row);
        int j = 0;
        while (j < m && ++pick[j] == int(alphabet.size())) pick[j++] = 0;
        if (j == m) break;
    }
    return rows;
}

} // namespace

std::vector<CubeRow> provable_rows(const Theory& th, const std::string& symbol) {
    ClosureRelation cl = weak_closure(th, large_enough_X(th));
    return provable_rows_with(cl, th, symbol);
}

namespace {

bool row_covers(const CubeRow& r, int col) { return r[col].kind != CubeEntry::X; }

// First minimum cover in (size, lex) order over the candidate rows, which
// must be sorted ascending. Exact search; m and the row count are small.
std::optional<std::vector<CubeRow>> min_cover(const std::vector<CubeRow>& rows, int m,
                                              int max_k) {
    for (int k = 1; k <= max_k; ++k) {
        std::vector<int> pick;
        std::vector<CubeRow> out;
        // DFS over ascending row indices.
        struct Rec {
            const std::vector<CubeRow>& rows;
            int m, k;
            std::vector<int>& pick;
            bool covered_all(const std::vector<int>& chosen) const {
                for (int c = 0; c < m; ++c) {
                    bool cov = false;
                    for (int r : chosen)
                        if (row_covers(rows[r], c)) { cov = true; break; }
                    if (!cov) return false;
                }
                return true;
            }
            bool dfs(int start) {
                if (int(pick.size()) == k) return covered_all(pick);
                for (int r = start; r < int(rows.size()); ++r) {
                    pick.push_back(r);
                    if (dfs(r + 1)) return true;
                    pick.pop_back();
                }
                return false;
            }
        } rec{rows, m, k, pick};
        if (rec.dfs(0)) {
            for (int r : pick) out.push_back(rows[r]);
            return out;
        }
    }
    return std::nullopt;
}

} // namespace

CubeDecision decide_pointed_cube(const Theory& th) {
    CubeDecision dec;
    if (!consistent(th)) {
        // Every identity is entailed: any symbol gives a one-row witness.
        dec.exists = true;
        dec.degenerate = true;
        for (const auto& f : th.signature.functions) {
            CubeWitness w;
            w.symbol = f.name;
            w.m = f.arity;
            w.k = 1;
            w.p = 0;
            w.rows.push_back(CubeRow(f.arity, CubeEntry{CubeEntry::Z, -1}));
            dec.witness = std::move(w);
            dec.min_k = 1;
            break;
        }
        return dec;
    }

    ClosureRelation cl = weak_closure(th, large_enough_X(th));
    std::optional<CubeWitness> best;
    for (const auto& f : th.signature.functions) {
        if (f.arity < 2) continue; // a one-column cover would force inconsistency
        std::vector<CubeRow> rows = provable_rows_with(cl, th, f.name);
        // All-x rows cover nothing.
        rows.erase(std::remove_if(rows.begin(), rows.end(),
                                  [](const CubeRow& r) {
                                      return std::all_of(r.begin(), r.end(), [](const CubeEntry& e) {
                                          return e.kind == CubeEntry::X;
                                      });
                                  }),
                   rows.end());
        std::sort(rows.begin(), rows.end());
        int cap = best ? best->k : f.arity; // one row per column always suffices
        auto cover = min_cover(rows, f.arity, cap);
        if (!cover) continue;
        CubeWitness w;
        w.symbol = f.name;
        w.m = f.arity;
        w.k = int(cover->size());
        w.rows = *cover;
        w.p = int(w.constants().size());
        // Tie-breaks: smaller k, then smaller m, then declaration order (the
        // iteration order), then row order (min_cover returns the lex-least).
        if (!best || w.k < best->k || (w.k == best->k && w.m < best->m)) best = std::move(w);
    }
    if (best) {
        dec.exists = true;
        dec.min_k = best->k;
        dec.witness = std::move(best);
    }
    return dec;
}

bool verify_witness(const CubeWitness& witness, const Signature& sig,
                    const FiniteAlgebra& alg, const OpBinding& binding) {
    const Operation* op = alg.op(binding.op);
    if (!op) throw DomainError("binding names unknown operation '" + binding.op + "'");
    if (op->arity != witness.m) throw DomainError("binding arity mismatch");
    std::vector<int> const_elem(sig.constants.size(), -1);
    for (int c : witness.constants()) {
        auto it = binding.constants.find(sig.constants[c]);
        if (it == binding.constants.end())
            throw DomainError("binding missing constant '" + sig.constants[c] + "'");
        const_elem[c] = it->second;
    }
    for (const auto& row : witness.rows) {
        bool has_z = std::any_of(row.begin(), row.end(),
                                 [](const CubeEntry& e) { return e.kind == CubeEntry::Z; });
        for (int a = 0; a < alg.size(); ++a) {
            for (int z = 0; z < (has_z ? alg.size() : 1); ++z) {
                std::vector<int> args;
                for (const auto& e : row) {
                    switch (e.kind) {
                        case CubeEntry::X: args.push_back(a); break;
                        case CubeEntry::Z: args.push_back(z); break;
                        case CubeEntry::C: args.push_back(const_elem[e.constant]); break;
                    }
                }
                auto v = apply(alg, *op, args);
                if (!v || *v != a) return false;
            }
        }
    }
    return true;
}

std::string witness_to_json(const CubeWitness& w, const Signature& sig) {
    nlohmann::json j;
    j["symbol"] = w.symbol;
    j["k"] = w.k;
    j["m"] = w.m;
    j["p"] = w.p;
    std::vector<std::string> rows;
    for (const auto& r : w.rows) rows.push_back(render_cube_row(r, sig));
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

CubeWitness witness_from_json(const std::string& text, const Signature& sig) {
    nlohmann::json j = nlohmann::json::parse(text);
    CubeWitness w;
    w.symbol = j.at("symbol").get<std::string>();
    int f = sig.function_id(w.symbol);
    if (f < 0) throw DomainError("witness symbol '" + w.symbol + "' not in signature");
    w.m = sig.functions[f].arity;
    for (const auto& row_text : j.at("rows")) {
        std::istringstream in(row_text.get<std::string>());
        CubeRow row;
        std::string tok;
        while (in >> tok) {
            if (tok == "x") row.push_back({CubeEntry::X, -1});
            else if (tok == "z") row.push_back({CubeEntry::Z, -1});
            else {
                int c = sig.constant_id(tok);
                if (c < 0) throw DomainError("witness entry '" + tok + "' is not x, z, or a constant");
                row.push_back({CubeEntry::C, c});
            }
        }
        if (int(row.size()) != w.m) throw DomainError("witness row length != arity");
        w.rows.push_back(std::move(row));
    }
    w.k = int(w.rows.size());
    w.p = int(w.constants().size());
    if (j.contains("k") && j["k"].get<int>() != w.k) throw DomainError("witness k mismatch");
    return w;
}

} // namespace ua
