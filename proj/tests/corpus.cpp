#include "corpus.hpp"

#include <random>

namespace corpus {

using namespace ua;

Theory maltsev() {
    return parse_theory("fn m/3; m(x,y,y)=x; m(y,y,x)=x;");
}

Theory majority() {
    return parse_theory("fn M/3; M(y,x,x)=x; M(x,y,x)=x; M(x,x,y)=x;");
}

Theory minority() {
    return parse_theory("fn f/3; f(x,x,y)=y; f(x,y,x)=y; f(y,x,x)=y;");
}

Theory pixley() {
    return parse_theory("fn p/3; p(x,y,y)=x; p(x,y,x)=x; p(y,y,x)=x;");
}

Theory b_unit() {
    return parse_theory("const 1; fn B/2; B(1,x)=x; B(x,1)=x;");
}

Theory left_unit() {
    return parse_theory("const 1; fn B/2; B(1,x)=x;");
}

Theory example46_pair() {
    return parse_theory("const c, d; fn B/2; B(c,x)=x; B(d,x)=d;");
}

Theory example46_full() {
    return parse_theory(
        "const c, d; fn Bcd/2; fn Bdc/2;"
        "Bcd(c,x)=x; Bcd(d,x)=d; Bdc(d,x)=x; Bdc(c,x)=c;");
}

Theory commutative_idem() {
    return parse_theory("fn B/2; B(x,y)=B(y,x); B(x,x)=x;");
}

Theory half_maltsev() {
    return parse_theory("fn m/3; m(x,y,y)=x;");
}

Theory empty_binary() {
    return parse_theory("fn B/2;");
}

Theory const_absorb() {
    return parse_theory("const c; fn F/2; F(c,x)=c;");
}

std::vector<Theory> kelly_corpus() {
    return {maltsev(),      majority(),      minority(),        pixley(),
            b_unit(),       left_unit(),     example46_pair(),  example46_full(),
            commutative_idem(), half_maltsev(), empty_binary(), const_absorb()};
}

FiniteAlgebra bare_set(int n) {
    FiniteAlgebra a;
    for (int i = 0; i < n; ++i) a.universe.push_back("e" + std::to_string(i));
    return a;
}

FiniteAlgebra z2_plus() {
    FiniteAlgebra a;
    a.universe = {"0", "1"};
    a.ops.push_back({"add", 2, {0, 1, 1, 0}});
    return a;
}

FiniteAlgebra z2_plus_const() {
    FiniteAlgebra a = z2_plus();
    a.ops.push_back({"e", 0, {0}});
    return a;
}

FiniteAlgebra z4_plus() {
    FiniteAlgebra a;
    for (int i = 0; i < 4; ++i) a.universe.push_back(std::to_string(i));
    Operation add{"add", 2, {}};
    add.table.resize(16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) add.table[i * 4 + j] = (i + j) % 4;
    a.ops.push_back(std::move(add));
    return a;
}

FiniteAlgebra semilattice2() {
    FiniteAlgebra a;
    a.universe = {"0", "1"};
    a.ops.push_back({"meet", 2, {0, 0, 0, 1}});
    return a;
}

FiniteAlgebra z2_maltsev() {
    FiniteAlgebra a;
    a.universe = {"0", "1"};
    Operation m{"m", 3, {}};
    m.table.resize(8);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) m.table[(x * 2 + y) * 2 + z] = (x + y + z) % 2;
    a.ops.push_back(std::move(m));
    return a;
}

FiniteAlgebra meet3_maltsev_candidate() {
    FiniteAlgebra a;
    a.universe = {"0", "1"};
    Operation m{"m", 3, {}};
    m.table.resize(8);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) m.table[(x * 2 + y) * 2 + z] = x & y & z;
    a.ops.push_back(std::move(m));
    return a;
}

FiniteAlgebra implication(const std::vector<unsigned>& filter, int width) {
    FiniteAlgebra a;
    std::vector<unsigned> elems = filter;
    unsigned mask = (1u << width) - 1;
    for (unsigned e : elems) {
        std::string label;
        for (int b = width - 1; b >= 0; --b) label += (e >> b & 1) ? '1' : '0';
        a.universe.push_back(label);
    }
    Operation imp{"imp", 2, {}};
    imp.table.assign(elems.size() * elems.size(), -1);
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = 0; j < elems.size(); ++j) {
            unsigned v = (~elems[i] & mask) | elems[j];
            int idx = -1;
            for (std::size_t k = 0; k < elems.size(); ++k)
                if (elems[k] == v) idx = int(k);
            if (idx < 0) throw DomainError("filter not closed under implication");
            imp.table[i * elems.size() + j] = idx;
        }
    }
    a.ops.push_back(std::move(imp));
    return a;
}

FiniteAlgebra imp_2() { return implication({2u, 3u}, 2); }        // {10,11}
FiniteAlgebra imp_a2() { return implication({1u, 2u, 3u}, 2); }   // {01,10,11}
FiniteAlgebra imp_a3() { return implication({0u, 1u, 2u, 3u}, 2); }
FiniteAlgebra imp_a4() { return implication({3u, 4u, 5u, 6u, 7u}, 3); }

FiniteAlgebra left_zero() {
    FiniteAlgebra a;
    a.universe = {"a", "b"};
    a.ops.push_back({"mul", 2, {0, 0, 1, 1}});
    return a;
}

FiniteAlgebra power_algebra(const FiniteAlgebra& alg, int k) {
    FiniteAlgebra out;
    Power pw(alg.size(), k);
    std::uint64_t count = pw.count();
    for (std::uint64_t c = 0; c < count; ++c) {
        std::string label;
        for (int d : pw.decode(c)) {
            if (!label.empty()) label += ",";
            label += alg.universe[d];
        }
        out.universe.push_back("(" + label + ")");
    }
    for (const auto& op : alg.ops) {
        Operation t{op.name, op.arity, {}};
        std::uint64_t rows = 1;
        for (int i = 0; i < op.arity; ++i) rows *= count;
        t.table.resize(rows);
        Power rp(int(count), op.arity);
        std::vector<std::uint64_t> args(op.arity);
        for (std::uint64_t rc = 0; rc < rows; ++rc) {
            std::vector<int> idx = rp.decode(rc);
            for (int i = 0; i < op.arity; ++i) args[i] = std::uint64_t(idx[i]);
            auto v = power_apply(op, pw, args);
            t.table[rc] = v ? std::int32_t(*v) : -1;
        }
        out.ops.push_back(std::move(t));
    }
    return out;
}

FiniteAlgebra expand_all_constants(const FiniteAlgebra& alg) {
    FiniteAlgebra out = alg;
    for (int i = 0; i < alg.size(); ++i)
        out.ops.push_back({"k_" + alg.universe[i], 0, {i}});
    return out;
}

FiniteAlgebra random_partial(unsigned seed) {
    std::mt19937 rng(seed);
    auto pick = [&](int lo, int hi) { return lo + int(rng() % unsigned(hi - lo + 1)); };
    FiniteAlgebra a;
    int n = pick(2, 3);
    for (int i = 0; i < n; ++i) a.universe.push_back("e" + std::to_string(i));
    int nops = pick(1, 2);
    for (int o = 0; o < nops; ++o) {
        Operation op{"f" + std::to_string(o), pick(1, 2), {}};
        std::uint64_t rows = 1;
        for (int i = 0; i < op.arity; ++i) rows *= n;
        for (std::uint64_t r = 0; r < rows; ++r)
            op.table.push_back(rng() % 2 ? std::int32_t(rng() % unsigned(n)) : -1);
        a.ops.push_back(std::move(op));
    }
    return a;
}

} // namespace corpus
