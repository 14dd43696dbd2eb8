#pragma once
// Word models of the type-1 and five-curve stabilizers; xi, rho, psi, nu, mu

#include "bcj.hpp"

#include <map>
#include <utility>

namespace torelli {

// ---------- free group F(u,v): letters +-1 = u^{+-1}, +-2 = v^{+-1} ----------

using FWord = std::vector<int>;

inline FWord freduce(const FWord& w)
{
    FWord r;
    for (int l : w) {
        if (!r.empty() && r.back() == -l) r.pop_back();
        else r.push_back(l);
    }
    return r;
}
inline FWord fmul(const FWord& a, const FWord& b)
{
    FWord r = a;
    r.insert(r.end(), b.begin(), b.end());
    return freduce(r);
}
inline FWord finv(const FWord& a)
{
    FWord r(a.rbegin(), a.rend());
    for (int& l : r) l = -l;
    return r;
}
inline FWord fpow(const FWord& a, long e)
{
    FWord r;
    FWord base = e < 0 ? finv(a) : a;
    for (long i = 0; i < (e < 0 ? -e : e); ++i) r = fmul(r, base);
    return r;
}
inline FWord fcomm(const FWord& g, const FWord& h) { return fmul(fmul(finv(g), finv(h)), fmul(g, h)); }

// exponent sums and the XY-coefficient of the Magnus expansion
struct Magnus {
    long eu = 0, ev = 0, c = 0;
};
inline Magnus magnus(const FWord& w)
{
    Magnus m;
    for (int l : w) {
        // c(pq) = c(p) + c(q) + e_u(p) e_v(q); single letters have c = 0
        long qu = (l == 1) - (l == -1), qv = (l == 2) - (l == -2);
        m.c += m.eu * qv;
        m.eu += qu;
        m.ev += qv;
    }
    return m;
}

// element of F2 x F2
struct Pair {
    FWord w1, w2;
    bool operator==(const Pair&) const = default;
};
inline Pair pmul(const Pair& a, const Pair& b) { return {fmul(a.w1, b.w1), fmul(a.w2, b.w2)}; }
inline Pair pinv(const Pair& a) { return {finv(a.w1), finv(a.w2)}; }
inline Pair ppow(const Pair& a, long e) { return {fpow(a.w1, e), fpow(a.w2, e)}; }
inline Pair pcomm(const Pair& g, const Pair& h) { return pmul(pmul(pinv(g), pinv(h)), pmul(g, h)); }
inline Pair pconj(const Pair& g, const Pair& h) { return pmul(pmul(pinv(h), g), h); }  // g^h

// ---------- type-1 stabilizer words ----------

// Alphabet UV: gens 1..4 = u1, v1, u2, v2.  Alphabet Z: gens 1..4 = z1, z2, z3, z4.
struct Letter {
    int gen = 1;
    long exp = 1;
};
struct TypeOneWord {
    enum Alphabet { UV, Z } alphabet = Z;
    std::vector<Letter> letters;
};

inline Pair letter_image(TypeOneWord::Alphabet al, int gen)
{
    static const FWord u{1}, v{2}, ui{-1}, vi{-2};
    if (al == TypeOneWord::UV) {
        switch (gen) {
        case 1: return {u, {}};
        case 2: return {v, {}};
        case 3: return {{}, u};
        case 4: return {{}, v};
        }
    } else {
        switch (gen) {
        case 1: return {u, ui};
        case 2: return {v, vi};
        case 3: return {fcomm(u, v), {}};
        case 4: return {{}, fcomm(u, v)};
        }
    }
    throw std::invalid_argument("bad generator index");
}

inline Pair to_pair(const TypeOneWord& w)
{
    Pair p;
    for (auto& l : w.letters) p = pmul(p, ppow(letter_image(w.alphabet, l.gen), l.exp));
    return p;
}

// f: u_i -> (1,0), v_i -> (0,1)
inline std::pair<long, long> f_image(const Pair& p)
{
    auto a = magnus(p.w1), b = magnus(p.w2);
    return {a.eu + b.eu, a.ev + b.ev};
}
inline bool in_ker_f(const Pair& p) { return f_image(p) == std::pair<long, long>{0, 0}; }

inline std::pair<long, long> xi(const Pair& p)
{
    auto a = magnus(p.w1);
    return {a.eu, a.ev};
}
inline std::pair<long, long> xi(const TypeOneWord& w) { return xi(to_pair(w)); }

using Rho4 = std::array<int, 4>;

inline int mod2i(long v) { return int(((v % 2) + 2) % 2); }

inline Rho4 rho_add(Rho4 a, const Rho4& b, long times = 1)
{
    for (int i = 0; i < 4; ++i) a[i] = mod2i(a[i] + times * b[i]);
    return a;
}

// rho through the Magnus coefficient on an element of ker f
inline Rho4 rho_magnus(const Pair& p)
{
    if (!in_ker_f(p)) throw std::invalid_argument("word is not in ker f");
    auto a = magnus(p.w1), b = magnus(p.w2);
    int r0 = mod2i(a.c + b.c);
    int x1 = mod2i(a.eu), x2 = mod2i(a.ev);
    return {r0, r0 ^ x2, r0 ^ x1, r0 ^ x1 ^ x2};
}

// generator table: rho(z1) = (0,0,1,1), rho(z2) = (0,1,0,1), rho(z3) = rho(z4) = (1,1,1,1)
inline const std::array<Rho4, 4>& z_rho_table()
{
    static const std::array<Rho4, 4> t{Rho4{0, 0, 1, 1}, Rho4{0, 1, 0, 1}, Rho4{1, 1, 1, 1}, Rho4{1, 1, 1, 1}};
    return t;
}

inline Rho4 rho_IM(const TypeOneWord& w)
{
    if (!in_ker_f(to_pair(w))) throw std::invalid_argument("word is not in ker f");
    if (w.alphabet == TypeOneWord::UV) return rho_magnus(to_pair(w));
    Rho4 r{};
    for (auto& l : w.letters) r = rho_add(r, z_rho_table().at(l.gen - 1), l.exp);
    return r;
}

inline bool liftrho_check(const TypeOneWord& w)
{
    auto r = rho_IM(w);
    auto x = xi(w);
    return ((r[0] ^ r[1]) == mod2i(x.second)) && ((r[0] ^ r[2]) == mod2i(x.first));
}

// ---------- psi_M on commutator/square decompositions ----------

struct CSItem {
    enum Kind { Comm, Sq } kind = Comm;
    TypeOneWord h1, h2;  // h2 unused for Sq
    std::optional<TypeOneWord> conj;
};
using CommSqDecomposition = std::vector<CSItem>;

inline int comm_value(const Rho4& r1, const Rho4& r2)
{
    int s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) s ^= r1[i] & r2[j];
    return s;
}
inline int sq_value(const Rho4& r)
{
    int s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) s ^= r[i] & r[j];
    return s;
}

inline Pair item_element(const CSItem& it)
{
    Pair a = to_pair(it.h1);
    Pair e = it.kind == CSItem::Comm ? pcomm(a, to_pair(it.h2)) : pmul(a, a);
    if (it.conj) e = pconj(e, to_pair(*it.conj));
    return e;
}

inline Pair product(const CommSqDecomposition& d)
{
    Pair p;
    for (auto& it : d) p = pmul(p, item_element(it));
    return p;
}

inline int psi_item(const CSItem& it)
{
    // conjugation does not change the value
    if (it.kind == CSItem::Comm) return comm_value(rho_IM(it.h1), rho_IM(it.h2));
    return sq_value(rho_IM(it.h1));
}

inline int psi_M(const CommSqDecomposition& d)
{
    for (auto& it : d) {
        if (!in_ker_f(to_pair(it.h1)) || (it.kind == CSItem::Comm && !in_ker_f(to_pair(it.h2))))
            throw std::invalid_argument("word is not in ker f");
        if (it.conj && !in_ker_f(to_pair(*it.conj))) throw std::invalid_argument("conjugator is not in ker f");
    }
    auto r = rho_magnus(product(d));
    if (r != Rho4{0, 0, 0, 0}) throw std::invalid_argument("product not in C_M");
    int s = 0;
    for (auto& it : d) s ^= psi_item(it);
    return s;
}

inline TypeOneWord zword(std::vector<Letter> ls) { return {TypeOneWord::Z, std::move(ls)}; }

// Collect a z-word into z1^a z2^b z3^c times commutator items; in C_M all of a,b,c are even
// and the prefix becomes three squares.
inline CommSqDecomposition canonical_decomposition(const TypeOneWord& w)
{
    if (w.alphabet != TypeOneWord::Z) throw std::invalid_argument("canonical decomposition needs a z-word");
    long a = 0, b = 0, c = 0;
    CommSqDecomposition items;
    auto zp = [](int g, long e) { return zword({{g, e}}); };
    for (auto& L : w.letters) {
        long step = L.exp > 0 ? 1 : -1;
        for (long t = 0; t != L.exp; t += step) {
            TypeOneWord l = zp(L.gen, step);
            // existing items get conjugated by l
            for (auto& it : items) {
                if (it.conj) it.conj->letters.push_back({L.gen, step});
                else it.conj = l;
            }
            CommSqDecomposition fresh;
            if (L.gen == 3) {
                c += step;
            } else if (L.gen == 2) {
                if (c) fresh.push_back({CSItem::Comm, zp(3, c), l, std::nullopt});
                b += step;
            } else if (L.gen == 1) {
                if (b) fresh.push_back({CSItem::Comm, zp(2, b), l, zp(3, c)});
                if (c) fresh.push_back({CSItem::Comm, zp(3, c), l, std::nullopt});
                a += step;
            } else {
                throw std::invalid_argument("canonical decomposition supports z1, z2, z3");
            }
            items.insert(items.begin(), fresh.begin(), fresh.end());
        }
    }
    if (a % 2 || b % 2 || c % 2) throw std::invalid_argument("word not in C_M");
    CommSqDecomposition out;
    if (a) out.push_back({CSItem::Sq, zp(1, a / 2), {}, std::nullopt});
    if (b) out.push_back({CSItem::Sq, zp(2, b / 2), {}, std::nullopt});
    if (c) out.push_back({CSItem::Sq, zp(3, c / 2), {}, std::nullopt});
    out.insert(out.end(), items.begin(), items.end());
    if (!(product(out) == to_pair(w))) throw std::logic_error("collection does not reproduce the word");
    return out;
}

// ---------- five-curve stabilizer: words in w_k ----------

struct FiveLetter {
    long k = 0;
    long exp = 1;
};
using FiveCurveWord = std::vector<FiveLetter>;

// homological model: w_k = T_{g1_k, g2} with c = a2+a3 and side (a1, b1 + k(a1+a3))
inline SymbolicGenerator w_generator(const SymplecticFrame& f, long k, long e = 1)
{
    auto& a = f.a;
    auto& b = f.b;
    auto g = bp_twist(a[1] + a[2], {{a[0], b[0] + Int(k) * (a[0] + a[2])}}, "g1_" + std::to_string(k), "g2", e);
    g.name = "w" + std::to_string(k);
    g.alpha = a[1] + a[2];
    return g;
}

inline GeneratorWord five_to_generators(const SymplecticFrame& f, const FiveCurveWord& w)
{
    GeneratorWord g;
    for (auto& l : w) g.push_back(w_generator(f, l.k, l.exp));
    return g;
}

inline std::pair<long, long> five_counts(const FiveCurveWord& w)
{
    long e = 0, K = 0;
    for (auto& l : w) { e += l.exp; K += l.k * l.exp; }
    return {e, K};
}

// sigma(w_k) = sigma(z1) + k sigma(z3), and sigma(z1), sigma(z3) are independent
inline bool in_CK(const FiveCurveWord& w)
{
    auto [e, K] = five_counts(w);
    return e % 2 == 0 && K % 2 == 0;
}

inline long nu_gamma2(const FiveCurveWord& w) { return five_counts(w).first; }

inline int psi_on_CK(const FiveCurveWord& w)
{
    if (!in_CK(w)) throw std::invalid_argument("word not in C_K");
    long nu = nu_gamma2(w);
    if (nu % 2) throw std::logic_error("odd nu on C_K");
    return mod2i(nu / 2);
}

inline long nu_Wk_table(long k, long m) { return k == m ? 1 : 0; }
inline long nu_Wk(long k, const FiveCurveWord& w)
{
    long s = 0;
    for (auto& l : w) s += nu_Wk_table(k, l.k) * l.exp;
    return s;
}

inline FiveCurveWord five_inverse(FiveCurveWord w)
{
    std::reverse(w.begin(), w.end());
    for (auto& l : w) l.exp = -l.exp;
    return w;
}
inline FiveCurveWord five_concat(FiveCurveWord a, const FiveCurveWord& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}
inline FiveCurveWord five_comm(const FiveCurveWord& g, const FiveCurveWord& h)
{
    return five_concat(five_concat(five_inverse(g), five_inverse(h)), five_concat(g, h));
}

// ---------- nu, mu, nu_W on generators ----------

// functionals v -> u.v for each u
inline ZMat perp_matrix(const std::vector<HClass>& us)
{
    ZMat m(us.size(), 6);
    for (size_t r = 0; r < us.size(); ++r)
        for (int i = 0; i < 3; ++i) {
            m(r, i) = -us[r][i + 3];
            m(r, i + 3) = us[r][i];
        }
    return m;
}
inline std::vector<HClass> perp(const std::vector<HClass>& us)
{
    std::vector<HClass> out;
    for (auto& v : kernel_basis(perp_matrix(us))) out.push_back(from_zvec(v));
    return out;
}
inline std::vector<HClass> span_intersection(const std::vector<HClass>& U, const std::vector<HClass>& V)
{
    // x = sum s_i u_i = sum t_j v_j
    if (U.empty() || V.empty()) return {};
    ZMat m(6, U.size() + V.size());
    for (int r = 0; r < 6; ++r) {
        for (size_t i = 0; i < U.size(); ++i) m(r, i) = U[i][r];
        for (size_t j = 0; j < V.size(); ++j) m(r, U.size() + j) = -V[j][r];
    }
    std::vector<ZVec> vs;
    for (auto& k : kernel_basis(m)) {
        ZVec x(6);
        for (size_t i = 0; i < U.size(); ++i)
            for (int r = 0; r < 6; ++r) x[r] += k[i] * U[i][r];
        vs.push_back(x);
    }
    std::vector<HClass> out;
    for (auto& v : lattice_basis(vs, 6)) out.push_back(from_zvec(v));
    return out;
}
inline bool in_span(const std::vector<HClass>& U, const HClass& v)
{
    auto Z = [&](std::vector<HClass> s) {
        std::vector<ZVec> z;
        for (auto& h : s) z.push_back(to_zvec(h));
        return z;
    };
    auto b1 = lattice_basis(Z(U), 6);
    auto U2 = U;
    U2.push_back(v);
    return b1 == lattice_basis(Z(U2), 6);
}
inline bool orthogonal_to_all(const std::vector<HClass>& U, const HClass& v)
{
    for (auto& u : U) if (intersection(u, v) != 0) return false;
    return true;
}

inline std::vector<HClass> side_classes(const SymbolicGenerator& g)
{
    std::vector<HClass> s;
    for (auto& p : g.int_side) { s.push_back(p.a); s.push_back(p.b); }
    return s;
}

// genus of the side of a separating twist containing gamma
inline int sep_side_genus(const SymbolicGenerator& g, const Curve& gamma)
{
    int g_side = int(g.side.size());
    std::optional<int> from_tags, from_hom;
    bool t_in = std::find(g.side_curves.begin(), g.side_curves.end(), gamma.id) != g.side_curves.end();
    bool t_out = std::find(g.other_curves.begin(), g.other_curves.end(), gamma.id) != g.other_curves.end();
    if (t_in && t_out) throw std::invalid_argument("inconsistent side tags for " + gamma.id);
    if (t_in) from_tags = g_side;
    if (t_out) from_tags = 3 - g_side;
    if (!g.int_side.empty()) {
        auto S = side_classes(g);
        bool inside = in_span(S, gamma.cls), outside = orthogonal_to_all(S, gamma.cls);
        if (inside == outside) throw std::invalid_argument("inconsistent: class meets both sides of the separating curve");
        from_hom = inside ? g_side : 3 - g_side;
    }
    if (from_tags && from_hom && *from_tags != *from_hom)
        throw std::invalid_argument("side tags disagree with homology for " + gamma.id);
    if (from_hom) return *from_hom;
    if (from_tags) return *from_tags;
    throw std::invalid_argument("missing side tag for " + gamma.id);
}

inline long nu_on_generator(const SymbolicGenerator& g, const Curve& gamma)
{
    switch (g.kind) {
    case GenKind::SepTwist: return sep_side_genus(g, gamma) == 2 ? g.exponent : 0;
    case GenKind::BPTwist:
        if (g.first.empty() || g.second.empty()) throw std::invalid_argument("missing bounding pair tags");
        if (gamma.id == g.first) return -g.exponent;
        if (gamma.id == g.second) return g.exponent;
        return 0;
    default: throw std::invalid_argument("nu is undefined on the involution");
    }
}
inline long nu_on_word(const GeneratorWord& w, const Curve& gamma)
{
    long s = 0;
    for (auto& g : w) s += nu_on_generator(g, gamma);
    return s;
}

inline long mu_on_word(const GeneratorWord& w, const Curve& g1, const Curve& g2)
{
    long s = nu_on_word(w, g1) + nu_on_word(w, g2);
    if (s % 2) throw std::logic_error("nu_gamma + nu_gamma' is odd");
    return s / 2;
}
inline long mu_on_generator(const SymbolicGenerator& g, const Curve& g1, const Curve& g2)
{
    return mu_on_word({g}, g1, g2);
}

// orthogonal splitting of gamma-perp / gamma into two rank-2 pieces, by spanning sets
struct SplittingW {
    std::vector<HClass> U, V;
    std::optional<long> k;
};

inline std::vector<ZVec> mod_gamma(const std::vector<HClass>& S, const HClass& gamma)
{
    std::vector<ZVec> z{to_zvec(gamma)};
    for (auto& h : S) z.push_back(to_zvec(h));
    return lattice_basis(z, 6);
}

inline bool same_splitting(const SplittingW& x, const SplittingW& y, const HClass& gamma)
{
    auto xu = mod_gamma(x.U, gamma), xv = mod_gamma(x.V, gamma);
    auto yu = mod_gamma(y.U, gamma), yv = mod_gamma(y.V, gamma);
    return (xu == yu && xv == yv) || (xu == yv && xv == yu);
}

inline SplittingW bp_splitting(const SymbolicGenerator& g)
{
    if (!g.c || g.int_side.empty()) throw std::invalid_argument("splitting needs integral data");
    auto U = side_classes(g);
    U.push_back(*g.c);
    auto cp = perp({*g.c});
    auto V = span_intersection(perp(side_classes(g)), cp);
    return {U, V, std::nullopt};
}

inline SplittingW W_k(const SymplecticFrame& f, long k)
{
    auto s = bp_splitting(w_generator(f, k));
    s.k = k;
    return s;
}

inline long nu_W(const SymbolicGenerator& g, const Curve& gamma, const SplittingW& W)
{
    if (g.kind == GenKind::SepTwist) {
        if (sep_side_genus(g, gamma) != 2) return 0;
        if (g.int_side.empty()) throw std::invalid_argument("splitting needs integral data");
        auto S = side_classes(g);
        std::vector<HClass> one, two;
        if (g.side.size() == 1) { one = S; two = perp(S); }
        else { one = perp(S); two = S; }
        SplittingW s{one, span_intersection(two, perp({gamma.cls})), std::nullopt};
        return same_splitting(s, W, gamma.cls) ? g.exponent : 0;
    }
    long v = nu_on_generator(g, gamma);
    if (v == 0) return 0;
    return same_splitting(bp_splitting(g), W, gamma.cls) ? v : 0;
}

// ---------- type-2 stabilizer generators ----------

// components: alpha0 ~ a1+a2, alpha1 ~ a1, alpha2 ~ a2 (non-special), alpha3 ~ a3 (special)
inline std::array<Curve, 4> type_two_components(const SymplecticFrame& f)
{
    return {Curve{"alpha0", f.a[0] + f.a[1]}, Curve{"alpha1", f.a[0]}, Curve{"alpha2", f.a[1]}, Curve{"alpha3", f.a[2]}};
}

// T_{alpha', alpha_i} with genus-1 side (a3, b3 + m1 a1 + m2 a2)
inline SymbolicGenerator type_two_generator(const SymplecticFrame& f, int i, long m1, long m2, long e = 1)
{
    auto comps = type_two_components(f);
    auto g = bp_twist(comps[i].cls, {{f.a[2], f.b[2] + Int(m1) * f.a[0] + Int(m2) * f.a[1]}},
                      comps[i].id + "'", comps[i].id, e);
    g.alpha = comps[i].cls;
    return g;
}

}  // namespace torelli
