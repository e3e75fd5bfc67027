// Command-line front end: growth tables, Kelly provability, cube decisions,
// the algebra constructions, template synthesis, and ideal certificates.

#include "ua/constructions.hpp"
#include "ua/cube.hpp"
#include "ua/growth.hpp"
#include "ua/ideals.hpp"
#include "ua/kelly.hpp"
#include "ua/processing.hpp"
#include "ua/theory.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ua::DomainError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ua::DomainError("cannot write '" + path + "'");
    out << content;
}

std::string fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Report {
    json j;
    bool timings = false;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Report(const std::string& subcommand) {
        j["schema"] = 1;
        j["subcommand"] = subcommand;
        j["inputs"] = json::object();
        j["flags"] = json::object();
        j["results"] = json::object();
    }
    void input(const std::string& path, const std::string& content) {
        j["inputs"][path] = fnv1a(content);
    }
    void emit_json(std::ostream& out) {
        if (timings)
            j["elapsed_ms"] =
                std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
        out << j.dump(2) << "\n";
    }
};

std::vector<std::string> tuple_labels(const ua::FiniteAlgebra& alg, int n, std::uint64_t code) {
    ua::Power pw(alg.size(), n);
    std::vector<std::string> out;
    for (int d : pw.decode(code)) out.push_back(alg.universe[d]);
    return out;
}

std::string tuple_string(const ua::FiniteAlgebra& alg, int n, std::uint64_t code) {
    std::string s = "(";
    bool first = true;
    for (const auto& l : tuple_labels(alg, n, code)) {
        if (!first) s += ",";
        s += l;
        first = false;
    }
    return s + ")";
}

std::pair<int, int> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        int v = std::stoi(text);
        return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

ua::GrowthOptions options_with_guard(std::uint64_t guard) {
    ua::GrowthOptions opts;
    if (guard) opts.guard = guard;
    return opts;
}

// Resolves a generating-set JSON file: {"n": W, "tuples": [[labels...], ...]}.
std::vector<std::uint64_t> gens_from_json(const ua::FiniteAlgebra& alg, int width,
                                          const std::string& text) {
    json j = json::parse(text);
    if (j.at("n").get<int>() != width)
        throw ua::DomainError("generating-set width mismatch");
    ua::Power pw(alg.size(), width);
    std::vector<std::uint64_t> out;
    for (const auto& row : j.at("tuples")) {
        std::vector<int> digits;
        for (const auto& l : row) {
            int e = alg.element(l.get<std::string>());
            if (e < 0) throw ua::DomainError("unknown element label in generating set");
            digits.push_back(e);
        }
        if (int(digits.size()) != width)
            throw ua::DomainError("generating-set tuple width mismatch");
        out.push_back(pw.encode(digits));
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"growth rates of finite algebras: d-functions, Kelly provability, "
                 "pointed cube terms, and the associated constructions"};
    app.require_subcommand(1);

    bool timings = false;
    app.add_flag("--timings", timings, "include elapsed time in reports");

    // ---- kelly ----------------------------------------------------------
    auto* kelly = app.add_subcommand("kelly", "basic-identity provability");
    kelly->require_subcommand(1);
    std::string kelly_theory, kelly_query;
    bool kelly_dump = false;

    auto* kprove = kelly->add_subcommand("prove", "decide Sigma |- identity");
    kprove->add_option("--theory", kelly_theory)->required();
    kprove->add_option("--query", kelly_query)->required();

    auto* kcons = kelly->add_subcommand("consistent", "decide consistency");
    kcons->add_option("--theory", kelly_theory)->required();

    auto* kclosure = kelly->add_subcommand("closure", "compute the weak closure");
    kclosure->add_option("--theory", kelly_theory)->required();
    kclosure->add_flag("--dump", kelly_dump, "print classes, one per line");

    // ---- cube -----------------------------------------------------------
    auto* cube = app.add_subcommand("cube", "pointed cube term decision");
    cube->require_subcommand(1);
    std::string cube_theory;
    bool cube_json = false;
    auto* cdecide = cube->add_subcommand("decide", "decide the pointed cube term property");
    cdecide->add_option("--theory", cube_theory)->required();
    cdecide->add_flag("--json", cube_json);

    // ---- growth ---------------------------------------------------------
    auto* growth = app.add_subcommand("growth", "exact d and h computation");
    growth->require_subcommand(1);
    std::string growth_algebra, growth_range;
    bool growth_oracle = false, growth_json = false;
    std::uint64_t growth_guard = 0;
    int growth_g = 0, growth_horizon = 0;

    auto* gtable = growth->add_subcommand("table", "d_A(n) over a range of n");
    gtable->add_option("--algebra", growth_algebra)->required();
    gtable->add_option("--n", growth_range)->required();
    gtable->add_flag("--oracle", growth_oracle, "cross-check with the exhaustive oracle");
    gtable->add_option("--guard", growth_guard, "override the |A|^n guard");
    gtable->add_flag("--json", growth_json);

    auto* gh = growth->add_subcommand("h", "largest n with d(n) <= g");
    gh->add_option("--algebra", growth_algebra)->required();
    gh->add_option("--g", growth_g)->required();
    gh->add_option("--horizon", growth_horizon)->required();
    gh->add_option("--guard", growth_guard);

    // ---- construct ------------------------------------------------------
    auto* construct = app.add_subcommand("construct", "build the named algebras");
    construct->require_subcommand(1);
    std::string con_theory, con_algebra, con_out, con_values, con_filter;
    int con_y = 1, con_q = 1, con_k = 2;
    bool con_verify = false, con_total = false;

    auto* cmv = construct->add_subcommand("model-v", "finite model of a consistent theory");
    cmv->add_option("--theory", con_theory)->required();
    cmv->add_option("--y", con_y, "size of the variable block")->required();
    cmv->add_option("-o,--out", con_out);
    cmv->add_flag("--verify", con_verify);

    auto* csm = construct->add_subcommand("sigma-merge", "merge an algebra with model V");
    csm->add_option("--theory", con_theory)->required();
    csm->add_option("--algebra", con_algebra)->required();
    csm->add_option("-o,--out", con_out);
    csm->add_flag("--verify", con_verify);

    auto* cpd = construct->add_subcommand("prescribed-d", "partial algebra with given d values");
    cpd->add_option("--values", con_values, "comma-separated D(0),...,D(k)")->required();
    cpd->add_option("-o,--out", con_out);
    cpd->add_flag("--verify", con_verify, "oracle-check d(n) = D(n)");

    auto* cnu = construct->add_subcommand("example-nu", "partial near-unanimity example");
    cnu->add_option("--q", con_q)->required();
    cnu->add_option("--k", con_k)->required();
    cnu->add_flag("--total", con_total, "emit the completed algebra with constant 1");
    cnu->add_option("-o,--out", con_out);
    cnu->add_flag("--verify", con_verify);

    auto* cim = construct->add_subcommand("implication", "order filter as implication algebra");
    cim->add_option("--filter", con_filter, "comma-separated bit vectors, e.g. 01,10,11")
        ->required();
    cim->add_option("-o,--out", con_out);
    cim->add_flag("--verify", con_verify);

    // ---- template -------------------------------------------------------
    auto* tmpl = app.add_subcommand("template", "processing-template generators");
    tmpl->require_subcommand(1);
    std::string t_algebra, t_witness, t_theory, t_basegens, t_op;
    std::vector<std::string> t_consts;
    int t_n = 2;
    bool t_verify = false, t_json = false, t_one_pointed = false;

    auto* tgen = tmpl->add_subcommand("generate", "emit a generating set for A^n");
    tgen->add_option("--algebra", t_algebra)->required();
    tgen->add_option("--witness", t_witness)->required();
    tgen->add_option("--theory", t_theory, "theory file providing the signature")->required();
    tgen->add_option("--n", t_n)->required();
    tgen->add_option("--base-gens", t_basegens, "JSON generating set of A^(p+k-1)");
    tgen->add_option("--op", t_op, "operation interpreting the witness symbol");
    tgen->add_option("--const", t_consts, "constant binding NAME=LABEL (repeatable)");
    tgen->add_flag("--one-pointed", t_one_pointed,
                   "use the binomial(n,k-1) one-pointed construction");
    tgen->add_flag("--verify", t_verify, "check the output generates A^n");
    tgen->add_flag("--json", t_json);

    // ---- ideals ---------------------------------------------------------
    auto* ideals = app.add_subcommand("ideals", "phi-ideal exponential certificates");
    ideals->require_subcommand(1);
    std::string i_algebra;
    int i_verify_n = 0;
    auto* icert = ideals->add_subcommand("certify", "search for a two-ideal cover");
    icert->add_option("--algebra", i_algebra)->required();
    icert->add_option("--verify-n", i_verify_n, "brute-force d >= 2^n check up to this n");

    CLI11_PARSE(app, argc, argv);

    // ---------------------------------------------------------------- kelly
    if (kprove->parsed() || kcons->parsed() || kclosure->parsed()) {
        std::string text = read_file(kelly_theory);
        ua::Theory th = ua::parse_theory(text);
        if (kprove->parsed()) {
            ua::Identity phi = ua::parse_identity(kelly_query, th.signature);
            bool result = ua::proves(th, phi);
            std::cout << (result ? "true" : "false") << "\n";
        } else if (kcons->parsed()) {
            std::cout << (ua::consistent(th) ? "true" : "false") << "\n";
        } else {
            ua::ClosureRelation cl = ua::weak_closure(th, ua::large_enough_X(th));
            if (kelly_dump) std::cout << cl.dump();
            else
                std::cout << cl.representatives().size() << " classes over "
                          << cl.universe().size() << " terms\n";
        }
        return 0;
    }

    // ----------------------------------------------------------------- cube
    if (cdecide->parsed()) {
        std::string text = read_file(cube_theory);
        ua::Theory th = ua::parse_theory(text);
        ua::CubeDecision dec = ua::decide_pointed_cube(th);
        if (cube_json) {
            Report rep("cube decide");
            rep.timings = timings;
            rep.input(cube_theory, text);
            rep.j["results"]["exists"] = dec.exists;
            rep.j["results"]["degenerate"] = dec.degenerate;
            if (dec.witness) {
                rep.j["results"]["k"] = dec.witness->k;
                rep.j["results"]["m"] = dec.witness->m;
                rep.j["results"]["p"] = dec.witness->p;
                rep.j["results"]["symbol"] = dec.witness->symbol;
                std::vector<std::string> rows;
                for (const auto& r : dec.witness->rows)
                    rows.push_back(ua::render_cube_row(r, th.signature));
                rep.j["results"]["rows"] = rows;
            }
            rep.emit_json(std::cout);
        } else if (!dec.exists) {
            std::cout << "no pointed cube term\n";
        } else if (dec.degenerate) {
            std::cout << "degenerate: theory is inconsistent, every identity holds\n";
        } else {
            const auto& w = *dec.witness;
            std::cout << "pointed cube term: symbol=" << w.symbol << " k=" << w.k
                      << " m=" << w.m << " p=" << w.p << "\n";
            for (const auto& r : w.rows)
                std::cout << "  " << ua::render_cube_row(r, th.signature) << "\n";
        }
        return 0;
    }

    // --------------------------------------------------------------- growth
    if (gtable->parsed()) {
        std::string text = read_file(growth_algebra);
        ua::FiniteAlgebra alg = ua::algebra_from_json(text);
        auto [lo, hi] = parse_range(growth_range);
        ua::GrowthOptions opts = options_with_guard(growth_guard);
        ua::GrowthTable table = ua::growth_table(alg, growth_algebra, lo, hi, opts);
        auto violations = ua::check_bounds(table, alg);
        if (!violations.empty()) {
            for (const auto& v : violations) std::cerr << "bound violation: " << v << "\n";
            return 1;
        }
        if (growth_json) {
            Report rep("growth table");
            rep.timings = timings;
            rep.input(growth_algebra, text);
            rep.j["flags"]["oracle"] = growth_oracle;
            json entries = json::array();
            for (const auto& e : table.entries) {
                json je;
                je["n"] = e.n;
                je["d"] = e.d;
                json w = json::array();
                for (auto code : e.witness) w.push_back(tuple_labels(alg, e.n, code));
                je["witness"] = w;
                if (growth_oracle) je["oracle"] = ua::oracle_d(alg, e.n, opts);
                entries.push_back(je);
            }
            rep.j["results"]["entries"] = entries;
            rep.j["results"]["guard_hit"] = table.guard_hit;
            rep.emit_json(std::cout);
        } else {
            std::cout << "n   d" << (growth_oracle ? "   oracle" : "") << "   witness\n";
            for (const auto& e : table.entries) {
                std::cout << e.n << "   " << e.d;
                if (growth_oracle) std::cout << "   " << ua::oracle_d(alg, e.n, opts);
                std::cout << "   ";
                for (auto code : e.witness) std::cout << tuple_string(alg, e.n, code) << " ";
                std::cout << "\n";
            }
            if (table.guard_hit) std::cout << "(guard hit: range truncated)\n";
        }
        return 0;
    }
    if (gh->parsed()) {
        std::string text = read_file(growth_algebra);
        ua::FiniteAlgebra alg = ua::algebra_from_json(text);
        ua::GrowthOptions opts = options_with_guard(growth_guard);
        ua::HValue h = ua::h_value(alg, growth_g, growth_horizon, opts);
        if (h.saturated) std::cout << ">= " << growth_horizon << "\n";
        else if (h.value < 0) std::cout << "none\n";
        else std::cout << h.value << "\n";
        return 0;
    }

    // ------------------------------------------------------------ construct
    auto emit_algebra = [&](const ua::FiniteAlgebra& alg) {
        std::string out = ua::algebra_to_json(alg);
        if (con_out.empty()) std::cout << out;
        else write_file(con_out, out);
    };
    if (cmv->parsed()) {
        ua::Theory th = ua::parse_theory(read_file(con_theory));
        ua::ModelV v = ua::model_V(th, con_y);
        if (con_verify) {
            bool ok = ua::check_models(v.algebra, th, ua::Interpretation::identity_for(v.algebra, th));
            std::cerr << "model-v satisfies theory: " << (ok ? "yes" : "NO") << "\n";
            if (!ok) return 1;
        }
        emit_algebra(v.algebra);
        return 0;
    }
    if (csm->parsed()) {
        ua::Theory th = ua::parse_theory(read_file(con_theory));
        ua::FiniteAlgebra alg = ua::algebra_from_json(read_file(con_algebra));
        ua::SigmaMerge merge = ua::sigma_merge(alg, th);
        if (con_verify) {
            bool ok = ua::check_models(merge.algebra, th, merge.interp);
            std::cerr << "sigma-merge realizes theory: " << (ok ? "yes" : "NO") << "\n";
            if (!ok) return 1;
        }
        emit_algebra(merge.algebra);
        return 0;
    }
    if (cpd->parsed()) {
        std::vector<int> values;
        std::istringstream ss(con_values);
        std::string tok;
        while (std::getline(ss, tok, ',')) values.push_back(std::stoi(tok));
        ua::FiniteAlgebra alg = ua::prescribed_d(values);
        if (con_verify) {
            ua::GrowthOptions opts;
            for (std::size_t n = 0; n < values.size(); ++n) {
                int d = ua::oracle_d(alg, int(n), opts);
                std::cerr << "d(" << n << ") = " << d << " expected " << values[n]
                          << (d == values[n] ? "" : "  MISMATCH") << "\n";
                if (d != values[n]) return 1;
            }
        }
        emit_algebra(alg);
        return 0;
    }
    if (cnu->parsed()) {
        ua::ExampleNu nu = ua::example_nu(con_q, con_k);
        const ua::FiniteAlgebra& alg = con_total ? nu.total : nu.partial;
        if (con_verify) {
            ua::GrowthOptions opts;
            for (int n = 1; n <= 3; ++n) {
                long long expect = 0, binom = 1, qq = 1;
                for (int i = 0; i <= con_k - 1; ++i) {
                    expect += qq * binom;
                    qq *= con_q;
                    binom = binom * (n - i) / (i + 1);
                    if (n - i <= 0) binom = 0;
                }
                if (con_total) expect -= 1;
                int d = ua::oracle_d(alg, n, opts);
                std::cerr << "d(" << n << ") = " << d << " expected " << expect
                          << (d == expect ? "" : "  MISMATCH") << "\n";
                if (d != expect) return 1;
            }
        }
        emit_algebra(alg);
        return 0;
    }
    if (cim->parsed()) {
        std::vector<unsigned> filter;
        int width = 0;
        std::istringstream ss(con_filter);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            width = int(tok.size());
            unsigned v = 0;
            for (char c : tok) v = v * 2 + unsigned(c == '1');
            filter.push_back(v);
        }
        ua::FiniteAlgebra alg = ua::implication_algebra(filter, width);
        if (con_verify) std::cerr << "filter valid: yes\n";
        emit_algebra(alg);
        return 0;
    }

    // ------------------------------------------------------------- template
    if (tgen->parsed()) {
        std::string alg_text = read_file(t_algebra);
        std::string wit_text = read_file(t_witness);
        std::string th_text = read_file(t_theory);
        ua::FiniteAlgebra alg = ua::algebra_from_json(alg_text);
        ua::Theory th = ua::parse_theory(th_text);
        ua::CubeWitness wit = ua::witness_from_json(wit_text, th.signature);

        ua::OpBinding binding;
        binding.op = t_op.empty() ? wit.symbol : t_op;
        for (int c : wit.constants()) {
            const std::string& name = th.signature.constants[c];
            const ua::Operation* nullary = alg.op(name);
            if (nullary && nullary->arity == 0) binding.constants[name] = nullary->table[0];
            else if (alg.element(name) >= 0) binding.constants[name] = alg.element(name);
        }
        for (const auto& spec : t_consts) {
            auto eq = spec.find('=');
            if (eq == std::string::npos) throw ua::DomainError("bad --const, use NAME=LABEL");
            std::string name = spec.substr(0, eq), label = spec.substr(eq + 1);
            int e = alg.element(label);
            if (e < 0) throw ua::DomainError("unknown element '" + label + "'");
            binding.constants[name] = e;
        }

        int p = wit.p;
        int width = t_one_pointed ? wit.k : p + wit.k - 1;
        std::vector<std::uint64_t> base;
        if (!t_basegens.empty()) {
            base = gens_from_json(alg, width, read_file(t_basegens));
        } else {
            base = ua::d_exact(alg, width).witness;
        }

        std::vector<std::uint64_t> gens;
        if (t_one_pointed) {
            if (wit.p != 1 || wit.constants().size() != 1)
                throw ua::DomainError("--one-pointed needs a 1-pointed witness");
            int c_elem = binding.constants.at(th.signature.constants[*wit.constants().begin()]);
            gens = ua::one_pointed_generators(alg, c_elem, wit.k, t_n, base);
        } else {
            gens = ua::polynomial_generators(alg, wit, th.signature, binding, t_n, base);
        }

        bool generates = false;
        if (t_verify) generates = ua::closure(alg, t_n, gens).full();

        double bound = t_one_pointed
                           ? [&] {
                                 double b = double(base.size());
                                 for (int i = 0; i < wit.k - 1; ++i)
                                     b = b * double(t_n - i) / double(i + 1);
                                 return b;
                             }()
                           : ua::template_size_bound(wit.m, wit.k, t_n, base.size());

        if (t_json) {
            Report rep("template generate");
            rep.timings = timings;
            rep.input(t_algebra, alg_text);
            rep.input(t_witness, wit_text);
            rep.input(t_theory, th_text);
            rep.j["results"]["size"] = gens.size();
            rep.j["results"]["bound"] = bound;
            if (t_verify) rep.j["results"]["generates"] = generates;
            json tuples = json::array();
            for (auto g : gens) tuples.push_back(tuple_labels(alg, t_n, g));
            rep.j["results"]["tuples"] = tuples;
            rep.emit_json(std::cout);
        } else {
            std::cout << "generators: " << gens.size() << " (bound " << bound << ")\n";
            for (auto g : gens) std::cout << "  " << tuple_string(alg, t_n, g) << "\n";
            if (t_verify)
                std::cout << "generates A^" << t_n << ": " << (generates ? "yes" : "NO") << "\n";
        }
        return t_verify && !generates ? 1 : 0;
    }

    // --------------------------------------------------------------- ideals
    if (icert->parsed()) {
        std::string text = read_file(i_algebra);
        ua::FiniteAlgebra alg = ua::algebra_from_json(text);
        auto cert = ua::certify_exponential(alg);
        if (!cert) {
            std::cout << "no certificate\n";
            return 0;
        }
        std::cout << "certificate: selector {";
        bool first = true;
        for (const auto& [op, place] : cert->selector.places) {
            if (!first) std::cout << ", ";
            std::cout << op << " -> " << place;
            first = false;
        }
        std::cout << "}\n";
        auto print_set = [&](const char* name, const std::set<int>& s) {
            std::cout << name << " = {";
            bool f = true;
            for (int e : s) {
                if (!f) std::cout << ", ";
                std::cout << alg.universe[e];
                f = false;
            }
            std::cout << "}\n";
        };
        print_set("I", cert->ideal_i);
        print_set("J", cert->ideal_j);
        for (int n = 1; n <= i_verify_n; ++n) {
            ua::LowerBoundReport r = ua::verify_lower_bound(alg, *cert, n);
            std::cout << "n=" << n << ": d = " << r.d_value << " >= 2^" << n << ": "
                      << (r.d_at_least_2n ? "yes" : "NO")
                      << "; products irreducible: " << (r.products_irreducible ? "yes" : "NO")
                      << "\n";
            if (!r.d_at_least_2n || !r.products_irreducible) return 1;
        }
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ua::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
