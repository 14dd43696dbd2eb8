#pragma once
// Weight descent for the sigma- and lambda-systems on H2' sets

#include "cyclecomplex.hpp"
#include "quadbool.hpp"

#include <boost/multiprecision/integer.hpp>
#include <functional>
#include <map>
#include <mutex>

namespace torelli {

// ---------------- exact reals in Z r1 + ... + Z r5 (+ Q) ----------------

// r = (1, sqrt2, sqrt3, sqrt5, sqrt7)
inline const std::array<long, 5>& reference_radicands()
{
    static const std::array<long, 5> p{1, 2, 3, 5, 7};
    return p;
}

struct AlgebraicReal {
    std::array<Int, 5> c{};
    Rat offset = 0;

    bool is_zero() const
    {
        if (offset + Rat(c[0]) != 0) return false;
        for (int j = 1; j < 5; ++j) if (c[j] != 0) return false;
        return true;
    }
    AlgebraicReal operator+(const AlgebraicReal& o) const
    {
        AlgebraicReal r;
        for (int j = 0; j < 5; ++j) r.c[j] = c[j] + o.c[j];
        r.offset = offset + o.offset;
        return r;
    }
    AlgebraicReal operator-() const
    {
        AlgebraicReal r;
        for (int j = 0; j < 5; ++j) r.c[j] = -c[j];
        r.offset = -offset;
        return r;
    }
    AlgebraicReal operator-(const AlgebraicReal& o) const { return *this + (-o); }
    friend AlgebraicReal operator*(const Int& k, const AlgebraicReal& v)
    {
        AlgebraicReal r;
        for (int j = 0; j < 5; ++j) r.c[j] = k * v.c[j];
        r.offset = Rat(k) * v.offset;
        return r;
    }
};

inline std::string to_string(const AlgebraicReal& v)
{
    static const char* nm[5] = {"", "sqrt2", "sqrt3", "sqrt5", "sqrt7"};
    std::ostringstream os;
    Rat q = v.offset + Rat(v.c[0]);
    bool any = false;
    if (q != 0) { os << q; any = true; }
    for (int j = 1; j < 5; ++j) {
        if (v.c[j] == 0) continue;
        if (any) os << (v.c[j] > 0 ? "+" : "-");
        else if (v.c[j] < 0) os << "-";
        Int a = abs(v.c[j]);
        if (a != 1) os << a << "*";
        os << nm[j];
        any = true;
    }
    return any ? os.str() : "0";
}

// sign by interval refinement; nonzero values always separate from 0 eventually
inline int sign(const AlgebraicReal& v)
{
    if (v.is_zero()) return 0;
    for (unsigned k = 8;; k *= 2) {
        Int scale = Int(1) << k;
        Rat lo = v.offset + Rat(v.c[0]), hi = lo;
        for (int j = 1; j < 5; ++j) {
            if (v.c[j] == 0) continue;
            Int s = boost::multiprecision::sqrt(Int(reference_radicands()[j]) * scale * scale);
            Rat l(s, scale), h(s + 1, scale);
            if (v.c[j] > 0) { lo += Rat(v.c[j]) * l; hi += Rat(v.c[j]) * h; }
            else { lo += Rat(v.c[j]) * h; hi += Rat(v.c[j]) * l; }
        }
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        if (k > (1u << 20)) throw std::logic_error("sign refinement did not terminate");
    }
}

inline int compare(const AlgebraicReal& a, const AlgebraicReal& b) { return sign(a - b); }
inline AlgebraicReal abs_value(const AlgebraicReal& v) { return sign(v) < 0 ? -v : v; }

// ---------------- f : H -> R ----------------

struct FLinearForm {
    std::array<ZVec, 5> fj;  // each of length 6

    AlgebraicReal operator()(const HClass& u) const
    {
        AlgebraicReal r;
        for (int j = 0; j < 5; ++j)
            for (int i = 0; i < 6; ++i) r.c[j] += fj[j][i] * u[i];
        return r;
    }
    FLinearForm negated() const
    {
        FLinearForm g = *this;
        for (auto& v : g.fj) for (auto& e : v) e = -e;
        return g;
    }
};

inline void validate(const FLinearForm& f, const HClass& x)
{
    for (auto& v : f.fj)
        if (v.size() != 6) throw std::invalid_argument("functional must have 6 coefficients");
    if (!f(x).is_zero()) throw std::invalid_argument("f(x) != 0");
    ZMat m(5, 6);
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 6; ++i) m(j, i) = f.fj[j][i];
    if (rank(m) != 5) throw std::invalid_argument("image of f does not have rank 5");
}

// random integer combinations of a basis of the functionals vanishing on x
template <class Rng>
FLinearForm random_form(const HClass& x, Rng& rng)
{
    auto B = kernel_basis(coord_matrix({x}));  // v with v.x = 0 (dot product)
    std::uniform_int_distribution<int> d(-3, 3);
    while (true) {
        FLinearForm f;
        for (int j = 0; j < 5; ++j) {
            f.fj[j] = ZVec(6);
            for (auto& b : B) {
                int k = d(rng);
                for (int i = 0; i < 6; ++i) f.fj[j][i] += k * b[i];
            }
        }
        try {
            validate(f, x);
            return f;
        } catch (const std::invalid_argument&) {
        }
    }
}

// F = (F1, F2) and the lexicographic order
struct FPair {
    AlgebraicReal F1, F2;
};

inline AlgebraicReal F1(const HMultiset& A, const FLinearForm& f)
{
    AlgebraicReal best;
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A.size(); ++j) {
            auto d = abs_value(f(A[i]) - f(A[j]));
            if (compare(d, best) > 0) best = d;
        }
    return best;
}
inline AlgebraicReal F2(const HMultiset& A, const FLinearForm& f)
{
    AlgebraicReal s;
    for (auto& a : A) s = s + abs_value(f(a));
    return s;
}
inline FPair Fvalue(const HMultiset& A, const FLinearForm& f) { return {F1(A, f), F2(A, f)}; }

inline bool lex_succ(const FPair& a, const FPair& b)
{
    int c = compare(a.F1, b.F1);
    return c > 0 || (c == 0 && compare(a.F2, b.F2) > 0);
}

// ---------------- membership in H2' and equations ----------------

inline bool in_H2prime(const HMultiset& D0, const HClass& x)
{
    static std::mutex mu;
    static std::map<std::pair<HMultiset, HClass>, bool> cache;
    HMultiset D = canon(D0);
    {
        std::lock_guard<std::mutex> lk(mu);
        if (auto it = cache.find({D, x}); it != cache.end()) return it->second;
    }
    bool ok = false;
    if (D.size() == 5 && !has_duplicates(D) && rank_of(D) == 3) {
        try {
            ok = classify(D).tag == Taxon::H2prime && is_in_M_relative(D, D, x) && certify(D, x) != Certificate::None;
        } catch (const std::invalid_argument&) {
            ok = false;
        }
    }
    std::lock_guard<std::mutex> lk(mu);
    cache[{D, x}] = ok;
    return ok;
}

// all H2' sets C + {e}, for a four-element C
inline std::vector<HMultiset> h2prime_over(const HMultiset& C, const HClass& x)
{
    std::set<HMultiset> out;
    for (size_t i = 0; i < C.size(); ++i)
        for (size_t j = i + 1; j < C.size(); ++j)
            for (int s : {1, -1})
                for (int t : {1, -1}) {
                    HClass e = Int(s) * C[i] + Int(t) * C[j];
                    if (is_zero(e)) continue;
                    auto D = with(C, e);
                    if (in_H2prime(D, x)) out.insert(D);
                }
    return {out.begin(), out.end()};
}

// sum(groups[0]) = sum(groups[1]) = ...; an empty group stands for 0
struct Equation {
    std::string family;
    HMultiset C;
    std::vector<std::vector<HMultiset>> groups;
};

inline std::string describe(const Equation& e, const std::function<std::string(const HMultiset&)>& name)
{
    std::string s = e.family + " on " + to_string(e.C) + ": ";
    for (size_t g = 0; g < e.groups.size(); ++g) {
        if (g) s += " = ";
        if (e.groups[g].empty()) s += "0";
        for (size_t k = 0; k < e.groups[g].size(); ++k) s += (k ? " + " : "") + name(e.groups[g][k]);
    }
    return s;
}

inline const CellClass& require_H1(const HMultiset& C, const HClass& x)
{
    static thread_local CellClass cc;
    cc = classify(C);
    if ((cc.tag != Taxon::H1_type1 && cc.tag != Taxon::H1_type2) || certify(C, x) == Certificate::None)
        throw std::invalid_argument("uncharacterized C: " + to_string(C));
    return cc;
}

inline std::vector<HMultiset> keep_H2prime(std::vector<HMultiset> v, const HClass& x)
{
    std::vector<HMultiset> r;
    for (auto& d : v) {
        auto D = canon(d);
        if (in_H2prime(D, x)) r.push_back(D);
    }
    return r;
}

inline std::vector<Equation> sigma_equations_for(const HMultiset& C0, const HClass& x)
{
    auto C = canon(C0);
    auto cc = require_H1(C, x);
    std::vector<Equation> out;
    if (cc.tag == Taxon::H1_type1) {
        out.push_back({"ses1", C, {h2prime_over(C, x), {}}});
        return out;
    }
    const HClass d = *cc.special;
    for (auto& c : C) {
        if (c == d) continue;
        out.push_back({"ses2", C, {keep_H2prime({with(C, c + d), with(C, c - d), with(C, d - c)}, x), {}}});
    }
    return out;
}

inline std::vector<Equation> lambda_equations_for(const HMultiset& C0, const HClass& x)
{
    auto C = canon(C0);
    auto cc = require_H1(C, x);
    std::vector<Equation> out;
    if (cc.tag == Taxon::H1_type1) {
        auto L = type_one_labels(cc);
        auto &c1 = L[1], &c2 = L[2], &c3 = L[3];
        if (cc.three_one) {
            out.push_back({"3:1", C,
                           {keep_H2prime({with(C, c1 + c2)}, x), keep_H2prime({with(C, c2 + c3)}, x),
                            keep_H2prime({with(C, c3 + c1)}, x)}});
        } else {
            out.push_back({"2:2", C,
                           {keep_H2prime({with(C, c1 + c2)}, x),
                            keep_H2prime({with(C, c1 - c3), with(C, c3 - c1)}, x),
                            keep_H2prime({with(C, c2 - c3), with(C, c3 - c2)}, x)}});
        }
        return out;
    }
    const HClass d = *cc.special;
    Equation e{"type-2", C, {}};
    for (auto& c : C)
        if (c != d) e.groups.push_back(keep_H2prime({with(C, c + d), with(C, c - d), with(C, d - c)}, x));
    out.push_back(e);
    return out;
}

// ---------------- GF(2) solving of a small system with known zeros ----------------

struct SmallSystem {
    std::vector<HMultiset> unknowns;
    std::map<HMultiset, size_t> index;
    gf2::BitMatrix rows{0};

    void add_unknown(const HMultiset& D)
    {
        if (index.count(D)) return;
        index[D] = unknowns.size();
        unknowns.push_back(D);
    }
};

// Build rows over the unknowns (terms judged zero are dropped) and return the solution-space basis.
inline std::vector<std::vector<uint64_t>> solve_with_zeros(const std::vector<Equation>& eqs,
                                                           const std::function<bool(const HMultiset&)>& is_zero_var,
                                                           SmallSystem& S)
{
    for (auto& e : eqs)
        for (auto& g : e.groups)
            for (auto& D : g)
                if (!is_zero_var(D)) S.add_unknown(D);
    S.rows = gf2::BitMatrix(S.unknowns.size());
    for (auto& e : eqs)
        for (size_t g = 0; g + 1 < e.groups.size(); ++g) {
            auto r = S.rows.zero_row();
            for (size_t h : {g, g + 1})
                for (auto& D : e.groups[h])
                    if (!is_zero_var(D)) gf2::BitMatrix::flip(r, S.index[D]);
            S.rows.add_row(r);
        }
    return S.rows.kernel();
}

// ---------------- reports ----------------

struct DerivationReport {
    std::string name;
    bool ok = true;
    std::vector<std::string> trace;
    std::vector<std::string> failures;

    void note(std::string s) { trace.push_back(std::move(s)); }
    void require(bool cond, const std::string& what)
    {
        if (cond) return;
        ok = false;
        failures.push_back(what);
    }
};

inline bool contains_any(const HMultiset& D, const std::vector<HMultiset>& sets)
{
    for (auto& a : sets)
        if (submultiset(a, D)) return true;
    return false;
}

inline bool same_family(std::vector<HMultiset> a, std::vector<HMultiset> b)
{
    for (auto& m : a) m = canon(m);
    for (auto& m : b) m = canon(m);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

// ---------------- sigma descent ----------------

inline std::vector<HMultiset> sigma_auxiliaries(const std::array<HClass, 3>& a)
{
    std::vector<HMultiset> out;
    std::set<HMultiset> seen;
    std::array<int, 3> p{0, 1, 2};
    do {
        auto &ai = a[p[0]], &aj = a[p[1]], &ak = a[p[2]];
        for (auto s : {canon({ai - aj, aj, ak}), canon({ai - aj - ak, aj, ak})})
            if (seen.insert(s).second) out.push_back(s);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

struct SigmaNamed {
    std::vector<std::pair<std::string, HMultiset>> D;
};

inline SigmaNamed sigma_named_sets(const std::array<HClass, 3>& a)
{
    SigmaNamed n;
    HMultiset A0{a[0], a[1], a[2]};
    for (int k = 0; k < 3; ++k) {
        int i = (k + 1) % 3, j = (k + 2) % 3;
        if (i > j) std::swap(i, j);
        auto K = std::to_string(k + 1);
        n.D.push_back({"D" + K, unite(A0, {a[i] + a[k], a[j] + a[k]})});
        n.D.push_back({"D" + K + "+", unite(A0, {a[i] + a[j], a[i] + a[j] + a[k]})});
        n.D.push_back({"D" + K + "-", unite(A0, {a[i] + a[j], a[i] + a[j] - a[k]})});
    }
    return n;
}

inline DerivationReport verify_sigma_descent(const HMultiset& A0in, const HClass& x)
{
    if (A0in.size() != 3) throw std::invalid_argument("A0 must have three elements");
    if (!is_in_H0prime(A0in, x)) throw std::invalid_argument("A0 is not in H0'");
    DerivationReport R{"sigma-descent"};
    auto A0 = canon(A0in);
    std::array<HClass, 3> a{A0[0], A0[1], A0[2]};
    Int n0 = n_weight(A0, x);
    R.note("A0 = " + to_string(A0) + ", n(A0) = " + n0.str());

    auto aux = sigma_auxiliaries(a);
    R.require(aux.size() == 9, "expected 9 auxiliary sets");
    for (auto& A : aux) {
        bool in = is_in_H0prime(A, x);
        R.require(in, "auxiliary not in H0': " + to_string(A));
        if (!in) continue;
        Int n = n_weight(A, x);
        R.require(n > n0, "auxiliary weight not larger: " + to_string(A));
        R.note("auxiliary " + to_string(A) + " in H0', n = " + n.str() + " > " + n0.str());
    }

    auto all = h2prime_containing(A0, x);
    std::vector<HMultiset> survivors;
    for (auto& D : all)
        if (!contains_any(D, aux)) survivors.push_back(D);
    auto named = sigma_named_sets(a);
    std::vector<HMultiset> expect;
    for (auto& [nm, D] : named.D) expect.push_back(D);
    R.note(std::to_string(all.size()) + " H2' sets contain A0; " + std::to_string(survivors.size()) +
           " avoid every auxiliary");
    R.require(same_family(survivors, expect), "surviving sets differ from D_k, D_k^+, D_k^-");

    auto name = [&](const HMultiset& D) -> std::string {
        for (auto& [nm, E] : named.D)
            if (E == D) return nm;
        return contains_any(D, aux) ? "0(aux)" : to_string(D);
    };
    std::vector<Equation> eqs;
    for (int k = 0; k < 3; ++k) {
        int i = (k + 1) % 3, j = (k + 2) % 3;
        auto C1 = with(A0, a[i] + a[k]);
        auto cc = classify(C1);
        const HClass d = *cc.special;
        eqs.push_back({"ses2", C1, {keep_H2prime({with(C1, a[k] + d), with(C1, a[k] - d), with(C1, d - a[k])}, x), {}}});
        auto C2 = with(A0, a[i] + a[j] - a[k]);
        for (auto& e : sigma_equations_for(C2, x)) eqs.push_back(e);
        auto C3 = with(A0, a[i] + a[j]);
        auto c3 = classify(C3);
        HClass c = a[i] + a[j], d3 = *c3.special;
        eqs.push_back({"ses2", C3, {keep_H2prime({with(C3, c + d3), with(C3, c - d3), with(C3, d3 - c)}, x), {}}});
    }
    for (auto& e : eqs) R.note(describe(e, name));

    SmallSystem S;
    auto kernel = solve_with_zeros(eqs, [&](const HMultiset& D) { return contains_any(D, aux); }, S);
    for (auto& [nm, D] : named.D) {
        auto it = S.index.find(D);
        bool forced = true;
        if (it != S.index.end())
            for (auto& v : kernel) forced = forced && !gf2::BitMatrix::get(v, it->second);
        else
            forced = contains_any(D, aux);
        R.require(forced, "s_" + nm + " is not forced to vanish");
        if (forced) R.note("s_" + nm + " = 0");
    }
    return R;
}

// ---------------- lambda descent, case 1 ----------------

struct NormalizedA0 {
    std::array<HClass, 3> a;
    std::array<Int, 3> n;
    FLinearForm f;
    bool flipped = false;
};

inline NormalizedA0 normalize_case1(const HMultiset& A0, const HClass& x, const FLinearForm& f0)
{
    if (!is_in_H0prime(A0, x)) throw std::invalid_argument("A0 is not in H0'");
    validate(f0, x);
    auto coef = *coefficients(A0, x);
    FLinearForm f = f0;
    int pos = 0;
    for (auto& a : A0) {
        int s = sign(f(a));
        if (s == 0) throw std::invalid_argument("degenerate f: vanishes on an element of A0");
        pos += s > 0;
    }
    NormalizedA0 N;
    if (pos == 1) { f = f.negated(); N.flipped = true; }
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return compare(f(A0[i]), f(A0[j])) > 0; });
    for (int k = 0; k < 3; ++k) {
        N.a[k] = A0[idx[k]];
        N.n[k] = numerator(coef[idx[k]]);
    }
    if (!(sign(f(N.a[1])) > 0 && sign(f(N.a[2])) < 0)) throw std::invalid_argument("normalization impossible");
    N.f = f;
    return N;
}

struct TableRow {
    std::string name;
    HMultiset A;
    AlgebraicReal F1, claimed;
    bool in_H0 = false, matches = false, succ = false;
    std::string branch;
};

inline std::vector<TableRow> table_one(const NormalizedA0& N, const HClass& x)
{
    auto& [a1, a2, a3] = N.a;
    auto& n = N.n;
    auto& f = N.f;
    AlgebraicReal r1 = abs_value(f(a1)), r2 = abs_value(f(a2)), r3 = abs_value(f(a3));
    auto pick = [&](const Int& p, const Int& q, HMultiset big, HClass ifp, HClass ifq, std::string& br) {
        if (p > q) { br = "n>"; big.push_back(ifp); }
        else if (p < q) { br = "n<"; big.push_back(ifq); }
        else br = "n=";
        return canon(big);
    };
    std::vector<TableRow> rows(8);
    rows[0].A = pick(n[0], n[1], {a1 + a2, a3}, a1, a2, rows[0].branch);
    rows[0].claimed = r1 + r2 + r3;
    rows[1].A = canon({a1 - a3, a2, a3});
    rows[1].claimed = r1 + Int(2) * r3;
    rows[2].A = canon({a3 - a1, a1, a2});
    rows[2].claimed = Int(2) * r1 + r3;
    rows[3].A = canon({a2 - a3, a1, a3});
    rows[3].claimed = compare(r1 + r3, r2 + Int(2) * r3) >= 0 ? r1 + r3 : r2 + Int(2) * r3;
    rows[4].A = canon({a3 - a2, a1, a2});
    rows[4].claimed = r1 + r2 + r3;
    rows[5].A = pick(n[0], n[1], {a1 + a2 - a3, a3}, a1, a2, rows[5].branch);
    rows[5].claimed = r1 + r2 + Int(2) * r3;
    rows[6].A = canon({a3 - a1 - a2, a1, a2});
    rows[6].claimed = Int(2) * r1 + r2 + r3;
    rows[7].A = pick(n[1], n[2], {a2 + a3 - a1, a1}, a2, a3, rows[7].branch);
    rows[7].claimed = Int(2) * r1 - r2 + r3;

    HMultiset A0 = canon({a1, a2, a3});
    FPair F0 = Fvalue(A0, f);
    for (int j = 0; j < 8; ++j) {
        auto& t = rows[j];
        t.name = "A" + std::to_string(j + 1);
        t.in_H0 = is_in_H0(t.A, x);
        t.F1 = F1(t.A, f);
        t.matches = compare(t.F1, t.claimed) == 0;
        t.succ = lex_succ(Fvalue(t.A, f), F0);
        if (j == 3) t.branch = compare(r1, r2 + r3) >= 0 ? "r1>=r2+r3" : "r1<r2+r3";
    }
    return rows;
}

inline std::vector<std::pair<std::string, HMultiset>> lambda_named_sets(const std::array<HClass, 3>& a)
{
    auto& [a1, a2, a3] = a;
    HMultiset A0{a1, a2, a3};
    std::vector<std::pair<HClass, HClass>> e{
        {a1 - a2, a1 + a3},      {a1 - a2, a2 + a3},      {a2 - a1, a1 + a3},      {a2 - a1, a2 + a3},
        {a1 + a3, a2 + a3},      {a1 - a2, a1 - a2 + a3}, {a2 - a1, a1 - a2 + a3}, {a1 - a2, a1 - a2 - a3},
        {a2 - a1, a2 - a1 - a3}, {a1 + a3, a1 + a2 + a3}, {a1 + a3, a1 - a2 + a3}, {a1 + a3, a2 - a1 - a3},
        {a2 + a3, a1 + a2 + a3}, {a2 + a3, a1 - a2 - a3}};
    std::vector<std::pair<std::string, HMultiset>> out;
    for (size_t j = 0; j < e.size(); ++j)
        out.push_back({"D" + std::to_string(j + 1), unite(A0, {e[j].first, e[j].second})});
    return out;
}

// H0 subsets (two or three elements) of D whose F exceeds F(A0)
inline std::optional<HMultiset> heavier_H0_subset(const HMultiset& D, const HClass& x, const FLinearForm& f,
                                                  const FPair& F0)
{
    for (size_t i = 0; i < D.size(); ++i)
        for (size_t j = i + 1; j < D.size(); ++j) {
            HMultiset B{D[i], D[j]};
            if (is_in_H0(B, x) && lex_succ(Fvalue(B, f), F0)) return B;
            for (size_t k = j + 1; k < D.size(); ++k) {
                HMultiset T{D[i], D[j], D[k]};
                if (is_in_H0(T, x) && lex_succ(Fvalue(T, f), F0)) return T;
            }
        }
    return std::nullopt;
}

inline DerivationReport verify_lambda_descent_case1(const HMultiset& A0in, const HClass& x, const FLinearForm& f0)
{
    auto N = normalize_case1(canon(A0in), x, f0);
    auto& [a1, a2, a3] = N.a;
    auto& f = N.f;
    DerivationReport R{"lambda-descent-case1"};
    HMultiset A0 = canon({a1, a2, a3});
    FPair F0 = Fvalue(A0, f);
    R.note("normalized: a1 = " + to_string(a1) + ", a2 = " + to_string(a2) + ", a3 = " + to_string(a3) +
           (N.flipped ? " (f reversed)" : ""));
    R.note("F(A0) = (" + to_string(F0.F1) + ", " + to_string(F0.F2) + ")");

    auto rows = table_one(N, x);
    std::vector<HMultiset> As;
    for (auto& t : rows) {
        As.push_back(t.A);
        R.require(t.in_H0, t.name + " not in H0");
        R.require(t.matches, t.name + ": F1 = " + to_string(t.F1) + " differs from table value " + to_string(t.claimed));
        R.require(t.succ, t.name + ": F does not exceed F(A0)");
        R.note(t.name + " " + to_string(t.A) + (t.branch.empty() ? "" : " [" + t.branch + "]") +
               " F1 = " + to_string(t.F1) + (t.succ ? " > F(A0)" : " !"));
    }
    // A4 split: equal first coordinates exactly when r1 >= r2 + r3
    {
        AlgebraicReal r1 = abs_value(f(a1)), r2 = abs_value(f(a2)), r3 = abs_value(f(a3));
        bool tie = compare(r1, r2 + r3) >= 0;
        bool eqF1 = compare(rows[3].F1, F0.F1) == 0;
        R.require(tie == eqF1, "A4 branch: F1(A4) = F1(A0) should hold iff r1 >= r2 + r3");
        if (tie) {
            AlgebraicReal want = r1 + r2 + Int(2) * r3;
            R.require(compare(F2(rows[3].A, f), want) == 0, "A4: F2 differs from r1 + r2 + 2 r3");
            R.require(compare(F2(rows[3].A, f), F0.F2) > 0, "A4: F2 not larger");
            R.note("A4 branch r1 >= r2 + r3: F1 ties, F2 = r1 + r2 + 2r3 > F2(A0)");
        }
    }

    auto all = h2prime_containing(A0, x);
    std::vector<HMultiset> survivors;
    for (auto& D : all)
        if (!contains_any(D, As)) survivors.push_back(D);
    auto named = lambda_named_sets(N.a);
    std::vector<HMultiset> expect;
    for (auto& [nm, D] : named) expect.push_back(D);
    R.note(std::to_string(survivors.size()) + " H2' sets contain A0 and none of A1..A8");
    R.require(same_family(survivors, expect), "surviving sets differ from D1..D14");

    HMultiset Cp = canon({a1, a2 - a1, a3, a2 + a3});
    HMultiset Dp = with(Cp, a2 + a3 - a1);
    std::map<HMultiset, std::optional<HMultiset>> zero_memo;
    auto zero_witness = [&](const HMultiset& D) -> std::optional<HMultiset> {
        if (auto it = zero_memo.find(D); it != zero_memo.end()) return it->second;
        std::optional<HMultiset> w;
        for (auto& A : As)
            if (submultiset(A, D)) { w = A; break; }
        if (!w) w = heavier_H0_subset(D, x, f, F0);
        zero_memo[D] = w;
        return w;
    };
    auto name = [&](const HMultiset& D) -> std::string {
        for (auto& [nm, E] : named)
            if (E == D) return nm;
        if (D == Dp) return "D'";
        if (auto w = zero_witness(D)) return "0[" + to_string(*w) + "]";
        return to_string(D);
    };

    std::vector<Equation> eqs;
    for (auto C : {with(A0, a1 + a2 + a3), with(A0, a1 - a2 - a3), with(A0, a2 - a1 - a3), with(A0, a1 - a2 + a3),
                   with(A0, a1 + a3), with(A0, a2 + a3), with(A0, a1 - a2), Cp})
        for (auto& e : lambda_equations_for(C, x)) eqs.push_back(e);
    for (auto& e : eqs) R.note(describe(e, name));
    {
        auto w = zero_witness(Dp);
        R.require(w.has_value(), "D' is not shown to vanish");
        if (w) R.note("D' vanishes: contains " + to_string(*w) + (N.n[1] <= N.n[2] ? " (A8 branch)" : " (A' branch)"));
    }

    SmallSystem S;
    auto kernel = solve_with_zeros(eqs, [&](const HMultiset& D) { return zero_witness(D).has_value(); }, S);
    for (auto& [nm, D] : named) {
        auto it = S.index.find(D);
        bool forced = true;
        if (it != S.index.end())
            for (auto& v : kernel) forced = forced && !gf2::BitMatrix::get(v, it->second);
        R.require(forced, "lambda_" + nm + " is not forced to vanish");
    }
    if (R.ok) R.note("lambda_1 .. lambda_14 all forced to 0");
    return R;
}

// ---------------- lambda descent, case 2: the single step ----------------

inline DerivationReport lambda_case2_step(const HClass& a1, const HClass& a2, const HClass& c, const HClass& x,
                                          const FLinearForm& f0)
{
    DerivationReport R{"lambda-case2-step"};
    R.note("only the single step (c in Upsilon => c + a1 or c + a2 in Upsilon) is mechanized; "
           "the finiteness argument over all of Upsilon is not");
    HMultiset A0 = canon({a1, a2});
    if (!is_in_H0(A0, x)) throw std::invalid_argument("{a1, a2} is not in H0");
    if (!is_isotropic_direct_summand({a1, a2, c})) throw std::invalid_argument("{a1, a2, c} is not a Lagrangian basis");
    validate(f0, x);
    // normalize so that f(a1) = n2 r with r > 0; then 0 < f(c) < n2 r reads 0 < f(c) < f(a1)
    FLinearForm f = sign(f0(a1)) > 0 ? f0 : f0.negated();
    FPair F0 = Fvalue(A0, f);
    HClass cp = a1 - c;
    AlgebraicReal fc = f(c);
    bool inside = sign(fc) > 0 && compare(fc, f(a1)) < 0;
    HMultiset A1 = canon({a2, c, cp});
    R.require(is_in_H0prime(A1, x), "A1 = {a2, c, a1 - c} not in H0'");
    FPair FA1 = Fvalue(A1, f);
    if (!inside) {
        R.require(lex_succ(FA1, F0), "f(c) outside (0, f(a1)) but F(A1) does not exceed F(A0)");
        R.note("f(c) outside (0, f(a1)): F(A1) > F(A0), so A1 is not in Xi and the hypothesis is vacuous");
        return R;
    }
    R.note("0 < f(c) < f(a1): A1 may lie in Xi");
    std::vector<std::pair<std::string, HMultiset>> Aj{{"A2", canon({a1 - a2, a2})},
                                                      {"A3", canon({a1, a2 - a1})},
                                                      {"A4", canon({a1, c, a2 - c})},
                                                      {"A5", canon({a1, cp, a2 - cp})}};
    std::vector<HMultiset> As;
    for (auto& [nm, A] : Aj) {
        As.push_back(A);
        R.require(is_in_H0(A, x), nm + " not in H0");
        R.require(lex_succ(Fvalue(A, f), F0), nm + ": F does not exceed F(A0)");
        R.note(nm + " " + to_string(A) + " F1 = " + to_string(F1(A, f)) + " > F1(A0) = " + to_string(F0.F1));
    }
    HMultiset C1 = canon({a1, a2, c, cp});
    R.require(classify(C1).tag == Taxon::H1_type2, "C1 is not of type 2");
    std::vector<std::pair<std::string, HMultiset>> Ds{{"D0", with(C1, a1 + a2)},
                                                      {"D1", with(C1, a2 + c)},
                                                      {"D2", with(C1, a2 + cp)},
                                                      {"D3", with(C1, c - a2)},
                                                      {"D4", with(C1, cp - a2)}};
    std::vector<HMultiset> over, expect;
    for (auto& D : h2prime_over(C1, x))
        if (!contains_any(D, As)) over.push_back(D);
    for (auto& [nm, D] : Ds) expect.push_back(D);
    R.require(same_family(over, expect), "the five sets over C1 differ from D0..D4");

    auto zero = [&](const HMultiset& D) {
        if (contains_any(D, As)) return true;
        return heavier_H0_subset(D, x, f, F0).has_value();
    };
    HMultiset Cq = canon({a1, a2, cp, a2 + c});
    HMultiset E1 = with(Cq, -c), E2 = with(Cq, cp - a2), E3 = with(Cq, a2 - cp);
    std::vector<Equation> eqs;
    for (auto C : {canon({a2, c, cp - a2, a1}), canon({a2, cp, c - a2, a1}), C1, Cq})
        for (auto& e : lambda_equations_for(C, x)) eqs.push_back(e);
    auto name = [&](const HMultiset& D) -> std::string {
        for (auto& [nm, E] : Ds)
            if (E == D) return nm;
        if (D == E1) return "E(-c)";
        if (D == E2) return "E(c'-a2)";
        if (D == E3) return "E(a2-c')";
        return zero(D) ? "0" : to_string(D);
    };
    for (auto& e : eqs) R.note(describe(e, name));
    R.require(zero(E3), "the set with a2 - c' is not shown to vanish");

    // enumerate all solutions; those with some lambda_{D_i} = 1 must give E(-c) or E(c'-a2) = 1
    SmallSystem S;
    auto kernel = solve_with_zeros(eqs, zero, S);
    if (kernel.size() > 20) throw std::logic_error("solution space too large to enumerate");
    auto val = [&](const std::vector<uint64_t>& v, const HMultiset& D) {
        auto it = S.index.find(D);
        return it != S.index.end() && gf2::BitMatrix::get(v, it->second);
    };
    bool implication = true, d012 = true, d34 = true;
    for (uint64_t m = 0; m < (uint64_t(1) << kernel.size()); ++m) {
        auto v = S.rows.zero_row();
        for (size_t k = 0; k < kernel.size(); ++k)
            if ((m >> k) & 1)
                for (size_t w = 0; w < v.size(); ++w) v[w] ^= kernel[k][w];
        bool some = false;
        for (auto& [nm, D] : Ds) some = some || val(v, D);
        if (!some) continue;
        d34 = d34 && !val(v, Ds[3].second) && !val(v, Ds[4].second);
        d012 = d012 && val(v, Ds[0].second) && val(v, Ds[1].second) && val(v, Ds[2].second);
        implication = implication && (val(v, E1) || val(v, E2));
    }
    R.require(d34, "lambda_D3 or lambda_D4 not forced to 0");
    R.require(d012, "lambda_D0 = lambda_D1 = lambda_D2 = 1 not forced");
    R.require(implication, "neither E(-c) nor E(c'-a2) forced to 1");
    HClass cn = c + a2;
    bool w1 = submultiset(canon({a1, a2, cn, a2 - cn}), E1);
    bool w2 = submultiset(canon({a1, a2, cn, a1 - cn}), E2);
    R.require(w1 && w2, "witness sets do not contain C1 or C2 for c + a2");
    if (R.ok) R.note("disjunct supported: c + a2 in Upsilon (via E(-c) containing C2, or E(c'-a2) containing C1)");
    return R;
}

// ---------------- bounded global solve ----------------

struct KernelReport {
    std::string system;
    long bound = 0, box = 0;
    // finite solutions: every equation meeting a variable, sets outside the bound read as 0
    size_t variables = 0, equations = 0, rank = 0, kernel_dim = 0;
    // honest subsystem: only equations all of whose sets are variables
    size_t honest_equations = 0, dropped = 0, honest_kernel_dim = 0;  // rows; honest + dropped = equations
    size_t covered = 0, covered_kernel_dim = 0;  // honest kernel projected onto covered variables
    size_t skipped_faces = 0;                    // H1 faces with no certificate of membership
    size_t value_dim = 1;                        // 35 for sigma: the system runs once per coordinate of B'_3
};

// Lagrangian L = span(a1, a2, a3); A in H0' with coordinates in [-box, box] and n(A) <= bound
inline std::vector<HMultiset> h0prime_in_box(const HClass& x, long bound, long box)
{
    std::vector<std::array<long, 3>> vs;
    for (long i = -box; i <= box; ++i)
        for (long j = -box; j <= box; ++j)
            for (long k = -box; k <= box; ++k)
                if (i || j || k) vs.push_back({i, j, k});
    std::array<long, 3> X{};
    for (int i = 0; i < 3; ++i) X[i] = x[i].convert_to<long>();
    for (int i = 3; i < 6; ++i)
        if (x[i] != 0) throw std::invalid_argument("x must lie in span(a1, a2, a3)");
    auto H = [](const std::array<long, 3>& v) { return hclass(v[0], v[1], v[2]); };
    std::vector<HMultiset> out;
    for (size_t p = 0; p < vs.size(); ++p)
        for (size_t q = p + 1; q < vs.size(); ++q)
            for (size_t s = q + 1; s < vs.size(); ++s) {
                auto &u = vs[p], &v = vs[q], &w = vs[s];
                long det = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
                           u[2] * (v[0] * w[1] - v[1] * w[0]);
                if (det != 1 && det != -1) continue;
                // Cramer: coefficients of X in (u, v, w)
                auto d3 = [](const std::array<long, 3>& a, const std::array<long, 3>& b, const std::array<long, 3>& c) {
                    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                           a[2] * (b[0] * c[1] - b[1] * c[0]);
                };
                long n1 = d3(X, v, w) * det, n2 = d3(u, X, w) * det, n3 = d3(u, v, X) * det;
                if (n1 <= 0 || n2 <= 0 || n3 <= 0 || n1 + n2 + n3 > bound) continue;
                out.push_back(canon({H(u), H(v), H(w)}));
            }
    return out;
}

inline bool in_box(const HMultiset& D, long box)
{
    for (auto& d : D)
        for (auto& c : d)
            if (abs(c) > box) return false;
    return true;
}

// Variables: H2' sets D in the box whose H0' triples all have n <= bound.
// kernel_dim counts finite solutions supported on the variables (every equation kept, outside sets = 0).
// The honest subsystem keeps only equations all of whose sets are variables; a variable is covered when
// every equation met at its faces is honest.
inline KernelReport bounded_kernel_check(const std::string& system, long bound, const HClass& x, long box = 1)
{
    if (system != "sigma" && system != "lambda") throw std::invalid_argument("system must be sigma or lambda");
    KernelReport K{system, bound, box};
    K.value_dim = system == "sigma" ? dim_Bk(3) : 1;
    std::set<HMultiset> U;
    std::set<HMultiset> tried;
    for (auto& A : h0prime_in_box(x, bound, box))
        for (auto& D : h2prime_containing(A, x)) {
            if (!tried.insert(D).second || !in_box(D, box)) continue;
            Int w = 0;
            for (auto& T : h0prime_triples(D, x)) w = std::max(w, n_weight(T, x));
            if (w <= bound) U.insert(D);
        }
    std::vector<HMultiset> vars(U.begin(), U.end());
    std::map<HMultiset, size_t> idx;
    for (size_t i = 0; i < vars.size(); ++i) idx[vars[i]] = i;
    K.variables = vars.size();

    gf2::BitMatrix M(vars.size()), Hm(vars.size());
    std::map<HMultiset, bool> face_honest;  // per face C: all its equations honest
    std::vector<char> covered(vars.size(), 1);
    for (size_t i = 0; i < vars.size(); ++i)
        for (auto& F : label_faces(vars[i], x)) {
            const HMultiset& C = F.m;
            auto it = face_honest.find(C);
            if (it == face_honest.end()) {
                bool ok = true;
                auto cc = classify(C);
                if (cc.tag == Taxon::H1_type1 || cc.tag == Taxon::H1_type2) {
                    if (certify(C, x) == Certificate::None) {
                        ++K.skipped_faces;
                        ok = false;
                    } else {
                        auto eqs = system == "sigma" ? sigma_equations_for(C, x) : lambda_equations_for(C, x);
                        for (auto& e : eqs) {
                            bool honest = true;
                            for (auto& g : e.groups)
                                for (auto& E : g) honest = honest && idx.count(E);
                            if (!honest) ok = false;
                            for (size_t g = 0; g + 1 < e.groups.size(); ++g) {
                                auto r = M.zero_row();
                                bool any = false;
                                for (size_t h : {g, g + 1})
                                    for (auto& E : e.groups[h])
                                        if (auto j = idx.find(E); j != idx.end()) {
                                            gf2::BitMatrix::flip(r, j->second);
                                            any = true;
                                        }
                                if (!any) continue;
                                M.add_row(r);
                                if (honest) Hm.add_row(r);
                                else ++K.dropped;
                            }
                        }
                    }
                }
                it = face_honest.emplace(C, ok).first;
            }
            if (!it->second) covered[i] = 0;
        }
    K.equations = M.rows.size();
    K.rank = M.rank();
    K.kernel_dim = K.variables - K.rank;
    K.honest_equations = Hm.rows.size();
    auto ker = Hm.kernel();
    K.honest_kernel_dim = ker.size();
    std::vector<size_t> cov;
    for (size_t i = 0; i < vars.size(); ++i)
        if (covered[i]) cov.push_back(i);
    K.covered = cov.size();
    gf2::BitMatrix P(cov.size());
    for (auto& v : ker) {
        auto r = P.zero_row();
        for (size_t j = 0; j < cov.size(); ++j)
            if (gf2::BitMatrix::get(v, cov[j])) gf2::BitMatrix::flip(r, j);
        P.add_row(r);
    }
    K.covered_kernel_dim = P.rank();
    return K;
}

}  // namespace torelli
