#include "ua/growth.hpp"

#include <algorithm>
#include <chrono>

namespace ua {

int ceil_log(int base, std::uint64_t n) {
    int t = 0;
    std::uint64_t p = 1;
    while (p < n) {
        p *= std::uint64_t(base);
        ++t;
    }
    return t;
}

std::vector<std::uint64_t> essential_elements(const FiniteAlgebra& alg, int n,
                                              std::uint64_t guard) {
    std::uint64_t count = checked_power(alg.size(), n, guard);
    std::vector<std::uint64_t> out;
    for (std::uint64_t e = 0; e < count; ++e)
        if (!producible_without(alg, n, e)) out.push_back(e);
    return out;
}

namespace {

struct BnB {
    const FiniteAlgebra& alg;
    int n;
    std::uint64_t count;
    std::uint64_t guard;
    int best;                       // incumbent size
    std::vector<std::uint64_t> seed; // essentials (in every generating set)
    int floor_bound;                 // max(|seed|, ceil_log) when n > 0

    BnB(const FiniteAlgebra& a, int n_, std::uint64_t guard_) : alg(a), n(n_), guard(guard_) {
        count = checked_power(alg.size(), n, guard);
    }

    // First pass: find the optimum size.
    void search(ClosureState& cs, std::uint64_t next_candidate, int used) {
        if (cs.full()) {
            best = std::min(best, used);
            return;
        }
        if (used + 1 >= best) return; // needs at least one more generator
        for (std::uint64_t c = next_candidate; c < count; ++c) {
            if (cs.contains(c)) continue;
            ClosureState child = cs;
            child.add(c);
            child.run();
            search(child, c + 1, used + 1);
            if (best == floor_bound) return; // cannot improve further
        }
    }

    // Second pass: lexicographically least generating set of the given size.
    bool find_witness(ClosureState& cs, std::uint64_t next_candidate, int used, int target,
                      std::vector<std::uint64_t>& acc) {
        if (cs.full()) return used == target;
        if (used == target) return false;
        for (std::uint64_t c = next_candidate; c < count; ++c) {
            if (cs.contains(c)) continue;
            ClosureState child = cs;
            child.add(c);
            child.run();
            acc.push_back(c);
            if (find_witness(child, c + 1, used + 1, target, acc)) return true;
            acc.pop_back();
        }
        return false;
    }
};

} // namespace

DExactResult d_exact(const FiniteAlgebra& alg, int n, const GrowthOptions& opts) {
    BnB bnb(alg, n, opts.guard);
    bnb.seed = essential_elements(alg, n, opts.guard);

    ClosureState base(alg, n, opts.guard);
    for (auto e : bnb.seed) base.add(e);
    base.run();

    bnb.floor_bound = int(bnb.seed.size());
    if (n > 0 && alg.size() > 1)
        bnb.floor_bound = std::max(bnb.floor_bound, ceil_log(alg.size(), std::uint64_t(n)));

    DExactResult res;
    if (base.full()) {
        res.value = int(bnb.seed.size());
        res.witness = bnb.seed;
        return res;
    }
    // Everything outside the seed closure is a candidate; the incumbent
    // starts at "add every missing element".
    bnb.best = int(bnb.seed.size() + (bnb.count - base.count()));
    bnb.search(base, 0, int(bnb.seed.size()));
    res.value = bnb.best;

    // Recover the canonical witness: seed plus the lex-least completion of
    // the optimal size. The seed is contained in every generating set, so
    // the lex-least optimum extends it.
    std::vector<std::uint64_t> extra;
    if (!bnb.find_witness(base, 0, int(bnb.seed.size()), res.value, extra))
        throw DomainError("internal error: optimal witness not reproducible");
    res.witness = bnb.seed;
    res.witness.insert(res.witness.end(), extra.begin(), extra.end());
    std::sort(res.witness.begin(), res.witness.end());
    return res;
}

namespace {

// Greedy descending-code removal from the full power; lands on an
// irredundant generating set (an upper bound for d).
std::vector<std::uint64_t> greedy_shrink(const FiniteAlgebra& alg, int n, std::uint64_t count) {
    std::vector<char> kept(count, 1);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t e = count - 1 - i;
        std::vector<std::uint64_t> gens;
        for (std::uint64_t c = 0; c < count; ++c)
            if (kept[c] && c != e) gens.push_back(c);
        Bitset cl = closure(alg, n, gens);
        if (cl.full()) kept[e] = 0;
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t c = 0; c < count; ++c)
        if (kept[c]) out.push_back(c);
    return out;
}

} // namespace

int oracle_d(const FiniteAlgebra& alg, int n, const GrowthOptions& opts) {
    std::uint64_t count;
    try {
        count = checked_power(alg.size(), n, opts.oracle_cap);
    } catch (const DomainError&) {
        throw GuardExceeded("oracle_d cap exceeded");
    }

    // Elements that no application can produce from the rest belong to every
    // generating set.
    std::vector<std::uint64_t> required;
    for (std::uint64_t e = 0; e < count; ++e)
        if (!producible_without(alg, n, e)) required.push_back(e);

    {
        Bitset cl = closure(alg, n, required);
        if (cl.full()) return int(required.size());
    }

    std::vector<std::uint64_t> upper = greedy_shrink(alg, n, count);
    std::vector<char> is_required(count, 0);
    for (auto e : required) is_required[e] = 1;
    std::vector<std::uint64_t> rest;
    for (std::uint64_t c = 0; c < count; ++c)
        if (!is_required[c]) rest.push_back(c);

    // Increasing-size sweep over subsets containing the required elements;
    // first hit is the exact minimum, and exhausting all sizes below the
    // greedy bound proves the bound tight.
    std::uint64_t budget = opts.oracle_budget;
    ClosureState base(alg, n, opts.guard);
    for (auto e : required) base.add(e);
    base.run();

    struct Sweep {
        const std::vector<std::uint64_t>& rest;
        std::uint64_t& budget;
        bool dfs(const ClosureState& cs, std::size_t start, int remaining) {
            if (remaining == 0) return cs.full();
            for (std::size_t i = start; i + remaining <= rest.size(); ++i) {
                if (budget == 0) throw OracleInfeasible("oracle_d sweep budget exhausted");
                --budget;
                ClosureState child = cs;
                child.add(rest[i]);
                child.run();
                if (dfs(child, i + 1, remaining - 1)) return true;
            }
            return false;
        }
    };
    Sweep sweep{rest, budget};

    for (int extra = 1; int(required.size()) + extra < int(upper.size()); ++extra)
        if (sweep.dfs(base, 0, extra)) return int(required.size()) + extra;
    return int(upper.size());
}

HValue h_value(const FiniteAlgebra& alg, int g, int horizon, const GrowthOptions& opts) {
    HValue out;
    out.value = -1;
    for (int n = 0; n <= horizon; ++n) {
        DExactResult r = d_exact(alg, n, opts);
        if (r.value <= g) {
            out.value = n;
        } else {
            return out; // d is monotone: later n only grow
        }
    }
    out.saturated = true;
    out.value = horizon;
    return out;
}

GrowthTable growth_table(const FiniteAlgebra& alg, const std::string& id, int n_lo, int n_hi,
                         const GrowthOptions& opts) {
    GrowthTable table;
    table.algebra_id = id;
    for (int n = n_lo; n <= n_hi; ++n) {
        auto t0 = std::chrono::steady_clock::now();
        GrowthEntry entry;
        entry.n = n;
        try {
            DExactResult r = d_exact(alg, n, opts);
            entry.d = r.value;
            entry.witness = std::move(r.witness);
        } catch (const DomainError&) {
            table.guard_hit = true;
            break;
        }
        entry.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        table.entries.push_back(std::move(entry));
    }
    return table;
}

std::vector<std::string> check_bounds(const GrowthTable& table, const FiniteAlgebra& alg) {
    std::vector<std::string> violations;
    int prev_d = -1, prev_n = -1;
    for (const auto& e : table.entries) {
        if (prev_n >= 0 && e.n > prev_n && e.d < prev_d)
            violations.push_back("d not monotone at n=" + std::to_string(e.n));
        prev_d = e.d;
        prev_n = e.n;
        if (e.n == 0 && e.d != 0 && e.d != 1)
            violations.push_back("d(0) not in {0,1}");
        if (e.n == 2 && alg.size() > 1 && e.d <= 0)
            violations.push_back("d(2) = 0 for a nontrivial algebra");
        if (e.n > 0 && alg.size() > 1) {
            int lo = ceil_log(alg.size(), std::uint64_t(e.n));
            if (e.d < lo)
                violations.push_back("log lower bound violated at n=" + std::to_string(e.n));
            std::uint64_t hi = 1;
            bool overflow = false;
            for (int i = 0; i < e.n; ++i) {
                if (hi > (std::uint64_t(1) << 62) / alg.size()) { overflow = true; break; }
                hi *= alg.size();
            }
            if (!overflow && std::uint64_t(e.d) > hi)
                violations.push_back("exponential upper bound violated at n=" + std::to_string(e.n));
        }
        // every witness must regenerate the power
        Bitset cl = closure(alg, e.n, e.witness);
        if (!cl.full())
            violations.push_back("witness fails to generate at n=" + std::to_string(e.n));
    }
    return violations;
}

} // namespace ua
