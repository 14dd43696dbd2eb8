// torelli: command-line front end for enumeration, evaluation and the verification suites

#include "torelli/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace torelli;

namespace {

struct Global {
    std::string format = "text";
    uint64_t seed = 1;
    long bound = 8;
    std::string x;
};

// a JSON literal, or the name of a file holding one
json load(const std::string& arg)
{
    auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot read " + arg);
    return json::parse(in);
}

HClass x_for(const Global& g, const HMultiset& A)
{
    if (!g.x.empty()) return hclass_from_json(load(g.x));
    HClass x{};
    for (auto& a : A) x = x + a;  // default: every weight 1
    return x;
}

bool text(const Global& g) { return g.format == "text"; }

void emit(const Global& g, const json& j, const std::string& txt)
{
    if (text(g)) std::cout << txt;
    else std::cout << j.dump(2) << "\n";
}

std::string trace_text(const DerivationReport& r)
{
    std::string s = std::string(r.ok ? "PASS " : "FAIL ") + r.name + "\n";
    for (auto& f : r.failures) s += "  FAIL " + f + "\n";
    for (auto& t : r.trace) s += "  " + t + "\n";
    return s;
}

// ---- enumerate ----

int cmd_enumerate(const Global& g, const std::string& what, const std::string& Aarg)
{
    auto A = canon(multiset_from_json(load(Aarg)));
    auto x = x_for(g, A);
    json items = json::array();
    std::string txt;
    if (what == "supersets") {
        for (auto& s : supersets_in_H(A, x)) {
            items.push_back({{"family", s.family}, {"multiset", to_json(s.m)}, {"dimension", cell_dimension(s.m)}});
            txt += std::to_string(s.family) + "\t" + to_string(s.m) + "\n";
        }
    } else {
        for (auto& D : h2prime_containing(A, x)) {
            auto cc = classify(D);
            items.push_back({{"multiset", to_json(D)}, {"principal", to_json(*cc.principal)}});
            txt += to_string(D) + "\tprincipal " + to_string(*cc.principal) + "\n";
        }
    }
    txt += std::to_string(items.size()) + " items\n";
    emit(g, {{"A", to_json(A)}, {"x", to_json(x)}, {"count", items.size()}, {"items", items}}, txt);
    return 0;
}

// ---- eval ----

int cmd_eval_sigma(const Global& g, const std::string& word, const std::string& Aarg)
{
    auto w = word_from_json(load(word));
    BPrime s = sigma_word(w);
    json j{{"sigma", to_hex(s)}, {"degree", degree(s)}, {"in_C", s.is_zero()}};
    std::string txt = "sigma = " + to_hex(s) + " (degree " + std::to_string(degree(s)) + ")" +
                      (s.is_zero() ? ", in C" : "") + "\n";
    if (!Aarg.empty()) {
        auto A = canon(multiset_from_json(load(Aarg)));
        auto r = rho_vector(family_of(A), w);
        j["rho"] = r;
        txt += "rho = " + rho_str(r) + "\n";
    }
    emit(g, j, txt);
    return 0;
}

int cmd_eval_psi(const Global& g, const std::string& file)
{
    auto d = decomposition_from_json(load(file));
    int v = psi_M(d);
    json items = json::array();
    for (auto& it : d) items.push_back(psi_item(it));
    emit(g, {{"psi", v}, {"items", items}}, "psi = " + std::to_string(v) + "\n");
    return 0;
}

int cmd_eval_nu(const Global& g, const std::string& word, const std::string& gamma)
{
    auto w = word_from_json(load(word));
    auto c = curve_from_json(load(gamma));
    long v = nu_on_word(w, c);
    emit(g, {{"gamma", to_json(c)}, {"nu", v}}, "nu_" + (c.id.empty() ? to_string(c.cls) : c.id) + " = " + std::to_string(v) + "\n");
    return 0;
}

// ---- verify ----

int cmd_verify(const Global& g, const std::string& name, const std::string& instances, int tables)
{
    if (!instances.empty()) {
        // user-supplied generator instances against random admissible sign tables
        if (name != "d1-identities") throw std::invalid_argument("--instances applies to d1-identities only");
        auto jin = load(instances);
        HClass dx = g.x.empty() ? HClass{} : hclass_from_json(load(g.x));
        std::mt19937_64 rng(g.seed);
        json out = json::array();
        std::string txt;
        bool ok = true;
        for (auto& ji : jin) {
            auto I = instance_from_json(ji, dx);
            for (int t = 0; t < tables; ++t) {
                auto s = random_sign_table(I, rng);
                auto rep = check_d1_identities(I, s, t % 2 ? -1 : 1);
                ok = ok && rep.ok();
                if (!rep.ok() || t == 0) {
                    out.push_back({{"instance", I.label}, {"table", t}, {"report", to_json(rep)}});
                    txt += std::string(rep.ok() ? "ok   " : "FAIL ") + I.label + " table " + std::to_string(t) + " (" +
                           std::to_string(rep.lines.size()) + " lines)\n";
                    for (auto& l : rep.lines)
                        if (!l.ok) txt += "  " + l.identity + " on " + to_string(l.C) + ": " + l.lhs + " vs " + l.rhs + " " + l.note + "\n";
                }
            }
        }
        txt += ok ? "PASS d1-identities\n" : "FAIL d1-identities\n";
        emit(g, {{"suite", "d1-identities"}, {"ok", ok}, {"results", out}}, txt);
        return ok ? 0 : 1;
    }
    std::vector<std::string> names;
    if (name == "all")
        for (auto& e : suites()) names.push_back(e.name);
    else
        names.push_back(name);
    json arr = json::array();
    std::string txt;
    bool ok = true;
    for (auto& n : names) {
        auto r = run_suite(n, g.seed);
        ok = ok && r.ok();
        arr.push_back(to_json(r));
        txt += to_text(r, true);
    }
    txt += ok ? "all passed\n" : "some checks failed\n";
    emit(g, {{"seed", g.seed}, {"ok", ok}, {"suites", arr}}, txt);
    return ok ? 0 : 1;
}

// ---- descent ----

int cmd_descent(const Global& g, const std::string& which, const std::string& A0arg, const std::string& farg,
                const std::string& system, long box, const std::vector<std::string>& case2)
{
    if (which == "kernel") {
        HClass x = g.x.empty() ? basis_a(1) + basis_a(2) + basis_a(3) : hclass_from_json(load(g.x));
        auto K = bounded_kernel_check(system, g.bound, x, box);
        std::ostringstream t;
        t << (K.kernel_dim == 0 ? "PASS" : "FAIL") << " kernel " << K.system << " bound " << K.bound << " box " << K.box
          << "\n  variables " << K.variables << ", equations " << K.equations << ", rank " << K.rank
          << ", kernel " << K.kernel_dim << " (values in a space of dimension " << K.value_dim << ")"
          << "\n  honest subsystem: " << K.honest_equations << " equations (" << K.dropped
          << " dropped), kernel " << K.honest_kernel_dim << ", covered " << K.covered << ", kernel on covered "
          << K.covered_kernel_dim << "\n";
        emit(g, to_json(K), t.str());
        return K.kernel_dim == 0 ? 0 : 1;
    }
    std::mt19937_64 rng(g.seed);
    DerivationReport r;
    json extra = json::object();
    if (which == "case2") {
        if (case2.size() != 3) throw std::invalid_argument("case2 needs --a1, --a2 and --c");
        HClass a1 = hclass_from_json(load(case2[0])), a2 = hclass_from_json(load(case2[1])),
               c = hclass_from_json(load(case2[2]));
        HClass x = g.x.empty() ? a1 + a2 : hclass_from_json(load(g.x));
        FLinearForm f = farg.empty() ? random_form(x, rng) : form_from_json(load(farg), x);
        extra["f"] = to_json(f);
        r = lambda_case2_step(a1, a2, c, x, f);
    } else {
        auto A0 = canon(multiset_from_json(load(A0arg)));
        auto x = x_for(g, A0);
        if (which == "sigma") {
            r = verify_sigma_descent(A0, x);
        } else {
            FLinearForm f = farg.empty() ? random_form(x, rng) : form_from_json(load(farg), x);
            extra["f"] = to_json(f);
            r = verify_lambda_descent_case1(A0, x, f);
        }
    }
    json j = to_json(r);
    for (auto& [k, v] : extra.items()) j[k] = v;
    emit(g, j, trace_text(r));
    return r.ok ? 0 : 1;
}

// ---- report ----

int cmd_report(const Global& g)
{
    json j{{"seed", g.seed},
           {"constants",
            {{"dim_B3prime", dim_Bk(3)}, {"dim_Bprime", dim_Bk(6)}, {"omega0", omega0().size()}}}};
    std::ostringstream t;
    t << "dim B'_3 = " << dim_Bk(3) << ", dim B' = " << dim_Bk(6) << ", |Omega_0| = " << omega0().size() << "\n";
    json arr = json::array();
    bool ok = true;
    for (auto& e : suites()) {
        auto r = run_suite(e.name, g.seed);
        ok = ok && r.ok();
        arr.push_back(to_json(r));
        t << to_text(r, false);
    }
    j["suites"] = arr;
    j["ok"] = ok;
    t << (ok ? "all passed\n" : "some checks failed\n");
    emit(g, j, t.str());
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact computations for the genus-3 Torelli spectral sequence"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--format", g.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", g.seed, "seed for every random choice");
    app.add_option("--bound", g.bound, "weight bound for the kernel check");
    app.add_option("--x", g.x, "the class x (JSON or file)");

    std::string what, A, word, gamma, dec, suite, instances, A0, f, system = "lambda";
    std::string a1, a2, c;
    long box = 1;
    int tables = 20;

    auto* en = app.add_subcommand("enumerate", "supersets or H2' sets over A");
    en->add_option("what", what)->required()->check(CLI::IsMember({"supersets", "h2prime"}));
    en->add_option("--A", A, "three classes (JSON or file)")->required();

    auto* ev = app.add_subcommand("eval", "evaluate sigma, psi or nu");
    ev->add_option("what", what)->required()->check(CLI::IsMember({"sigma", "psi", "nu"}));
    ev->add_option("--word", word, "generator word (JSON or file)");
    ev->add_option("--decomposition", dec, "commutator/square decomposition (JSON or file)");
    ev->add_option("--gamma", gamma, "curve {id, class} or a class");
    ev->add_option("--A", A, "multiset whose four forms give rho (eval sigma)");

    auto* ve = app.add_subcommand("verify", "run a verification suite, or all of them");
    ve->add_option("suite", suite)->required();
    ve->add_option("--instances", instances, "generator instances for d1-identities (JSON or file)");
    ve->add_option("--tables", tables, "sign tables per instance with --instances");

    auto* de = app.add_subcommand("descent", "replay the descent arguments");
    de->add_option("which", what)->required()->check(CLI::IsMember({"sigma", "lambda", "case2", "kernel"}));
    de->add_option("--A0", A0, "three classes (JSON or file)");
    de->add_option("--f", f, "the linear form (JSON or file); random from --seed when absent");
    de->add_option("--system", system, "sigma or lambda (kernel)")->check(CLI::IsMember({"sigma", "lambda"}));
    de->add_option("--box", box, "coordinate box for the kernel check");
    de->add_option("--a1", a1);
    de->add_option("--a2", a2);
    de->add_option("--c", c);

    app.add_subcommand("report", "constants and every suite in full");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (en->parsed()) return cmd_enumerate(g, what, A);
        if (ev->parsed()) {
            if (what == "sigma") {
                if (word.empty()) throw std::invalid_argument("eval sigma needs --word");
                return cmd_eval_sigma(g, word, A);
            }
            if (what == "psi") {
                if (dec.empty()) throw std::invalid_argument("eval psi needs --decomposition");
                return cmd_eval_psi(g, dec);
            }
            if (word.empty() || gamma.empty()) throw std::invalid_argument("eval nu needs --word and --gamma");
            return cmd_eval_nu(g, word, gamma);
        }
        if (ve->parsed()) {
            bool known = suite == "all";
            for (auto& e : suites()) known = known || e.name == suite;
            if (!known) throw std::invalid_argument("unknown suite: " + suite);
            return cmd_verify(g, suite, instances, tables);
        }
        if (de->parsed()) {
            if ((what == "sigma" || what == "lambda") && A0.empty()) throw std::invalid_argument("descent needs --A0");
            std::vector<std::string> c2;
            if (what == "case2") c2 = {a1, a2, c};
            if (what == "case2" && (a1.empty() || a2.empty() || c.empty()))
                throw std::invalid_argument("case2 needs --a1, --a2 and --c");
            return cmd_descent(g, what, A0, f, system, box, c2);
        }
        return cmd_report(g);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: bad JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
