#include "ua/ideals.hpp"

#include "ua/growth.hpp"

#include <algorithm>

namespace ua {

std::vector<Selector> all_selectors(const FiniteAlgebra& alg) {
    std::vector<const Operation*> fns;
    for (const auto& op : alg.ops)
        if (op.arity > 0) fns.push_back(&op);
    std::vector<Selector> out;
    if (fns.empty()) return out;
    std::vector<int> pick(fns.size(), 1);
    while (true) {
        Selector s;
        for (std::size_t i = 0; i < fns.size(); ++i) s.places[fns[i]->name] = pick[i];
        out.push_back(std::move(s));
        std::size_t i = 0;
        while (i < fns.size() && ++pick[i] > fns[i]->arity) pick[i++] = 1;
        if (i == fns.size()) break;
    }
    return out;
}

std::set<int> ideal_closure(const FiniteAlgebra& alg, const Selector& phi,
                            const std::set<int>& seed) {
    if (!alg.total()) throw DomainError("ideal_closure requires a total algebra");
    std::set<int> ideal = seed;
    std::vector<int> work(seed.begin(), seed.end());
    while (!work.empty()) {
        int a = work.back();
        work.pop_back();
        for (const auto& op : alg.ops) {
            if (op.arity == 0) continue;
            int place = phi.places.at(op.name) - 1;
            // All argument tuples with a in the selected place.
            std::uint64_t others = 1;
            for (int i = 0; i < op.arity - 1; ++i) others *= alg.size();
            std::vector<int> args(op.arity);
            for (std::uint64_t rest = 0; rest < others; ++rest) {
                std::uint64_t code = rest;
                for (int i = op.arity - 1; i >= 0; --i) {
                    if (i == place) continue;
                    args[i] = int(code % alg.size());
                    code /= alg.size();
                }
                args[place] = a;
                int v = *apply(alg, op, args);
                if (ideal.insert(v).second) work.push_back(v);
            }
        }
    }
    return ideal;
}

std::optional<IdealCertificate> certify_exponential(const FiniteAlgebra& alg) {
    if (alg.size() < 2) throw DomainError("certify_exponential needs |A| >= 2");
    if (!alg.total()) throw DomainError("certify_exponential requires a total algebra");
    for (const Selector& phi : all_selectors(alg)) {
        std::vector<std::set<int>> principal;
        bool all_proper = true;
        for (int a = 0; a < alg.size() && all_proper; ++a) {
            principal.push_back(ideal_closure(alg, phi, {a}));
            if (int(principal.back().size()) == alg.size()) all_proper = false;
        }
        if (!all_proper) continue;

        // Reduce the finitely many proper ideals to two: repeatedly drop the
        // head while the tail still covers A.
        std::vector<std::set<int>> list = principal;
        std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) {
            if (x.size() != y.size()) return x.size() > y.size();
            return x < y;
        });
        list.erase(std::unique(list.begin(), list.end()), list.end());
        IdealCertificate cert;
        cert.selector = phi;
        cert.principal = principal;
        while (true) {
            if (list.size() == 1) throw DomainError("internal error: proper ideal covers A");
            std::set<int> tail_union;
            for (std::size_t i = 1; i < list.size(); ++i)
                tail_union.insert(list[i].begin(), list[i].end());
            if (int(tail_union.size()) < alg.size()) {
                cert.ideal_i = list[0];
                cert.ideal_j = tail_union;
                break;
            }
            list.erase(list.begin());
        }
        // Properness and coverage are the theorem's requirements; check.
        std::set<int> cover = cert.ideal_i;
        cover.insert(cert.ideal_j.begin(), cert.ideal_j.end());
        if (int(cover.size()) != alg.size() || int(cert.ideal_i.size()) == alg.size() ||
            int(cert.ideal_j.size()) == alg.size())
            throw DomainError("internal error: bad two-ideal cover");
        return cert;
    }
    return std::nullopt;
}

namespace {

// U ⊆ A^n is phi-irreducible iff f(args) ∈ U implies the selected argument
// is in U, for every operation and argument tuple over A^n.
bool product_irreducible(const FiniteAlgebra& alg, const Selector& phi, int n,
                         const std::vector<const std::set<int>*>& factors) {
    Power pw(alg.size(), n);
    auto in_product = [&](std::uint64_t code) {
        std::vector<int> d = pw.decode(code);
        for (int i = 0; i < n; ++i)
            if (!factors[i]->count(d[i])) return false;
        return true;
    };
    std::uint64_t count = pw.count();
    for (const auto& op : alg.ops) {
        if (op.arity == 0) {
            std::vector<int> digits(n, op.table[0]);
            if (in_product(pw.encode(digits))) return false; // no selected argument
            continue;
        }
        int place = phi.places.at(op.name) - 1;
        std::uint64_t rows = 1;
        for (int i = 0; i < op.arity; ++i) rows *= count;
        Power rp(int(count), op.arity);
        std::vector<std::uint64_t> args(op.arity);
        for (std::uint64_t rc = 0; rc < rows; ++rc) {
            std::vector<int> idx = rp.decode(rc);
            for (int i = 0; i < op.arity; ++i) args[i] = std::uint64_t(idx[i]);
            auto v = power_apply(op, pw, args);
            if (v && in_product(*v) && !in_product(args[place])) return false;
        }
    }
    return true;
}

} // namespace

LowerBoundReport verify_lower_bound(const FiniteAlgebra& alg, const IdealCertificate& cert,
                                    int n, const std::vector<std::uint64_t>* generating_set) {
    LowerBoundReport report;
    GrowthOptions opts;
    report.d_value = std::uint64_t(oracle_d(alg, n, opts));
    report.d_at_least_2n = report.d_value >= (std::uint64_t(1) << n);

    std::set<int> comp_i, comp_j;
    for (int a = 0; a < alg.size(); ++a) {
        if (!cert.ideal_i.count(a)) comp_i.insert(a);
        if (!cert.ideal_j.count(a)) comp_j.insert(a);
    }
    Power pw(alg.size(), n);
    report.products_irreducible = true;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        std::vector<const std::set<int>*> factors;
        for (int i = 0; i < n; ++i)
            factors.push_back((mask >> i & 1) ? &comp_j : &comp_i);
        if (!product_irreducible(alg, cert.selector, n, factors)) {
            report.products_irreducible = false;
            break;
        }
        if (generating_set) {
            bool met = false;
            for (std::uint64_t g : *generating_set) {
                std::vector<int> d = pw.decode(g);
                bool inside = true;
                for (int i = 0; i < n; ++i)
                    if (!factors[i]->count(d[i])) { inside = false; break; }
                if (inside) { met = true; break; }
            }
            if (!met) {
                report.products_irreducible = false;
                break;
            }
        }
    }
    return report;
}

} // namespace ua
