#pragma once
// Sp-quadratic forms on (Z/2)^6, Arf invariant, and the Boolean algebras B and B' = B/(Arf)

#include "homlattice.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <vector>

namespace torelli {

// A form is fixed by its values on the six basis vectors.
struct SpQuadraticForm {
    Mod2Class v = 0;

    int operator()(Mod2Class x) const
    {
        return gf2::parity(x & v) ^ gf2::parity((x & 7u) & (x >> 3));
    }
    bool operator==(const SpQuadraticForm&) const = default;
};

inline int arf(SpQuadraticForm w) { return gf2::parity((w.v & 7u) & (w.v >> 3)); }

// Arf computed in an arbitrary symplectic basis
inline int arf_in(SpQuadraticForm w, const SymplecticBasisZ2& B)
{
    int s = 0;
    for (int i = 0; i < 3; ++i) s ^= w(B.a[i]) & w(B.b[i]);
    return s;
}

// Omega_0: the 36 forms with Arf 0, sorted by basis-value vector
inline const std::vector<SpQuadraticForm>& omega0()
{
    static const std::vector<SpQuadraticForm> pts = [] {
        std::vector<SpQuadraticForm> r;
        for (unsigned v = 0; v < 64; ++v)
            if (!arf({Mod2Class(v)})) r.push_back({Mod2Class(v)});
        return r;
    }();
    return pts;
}

// ---- B' as functions on Omega_0 (36-bit tables) ----

struct BPrime {
    uint64_t bits = 0;

    static constexpr uint64_t mask = (uint64_t(1) << 36) - 1;
    static BPrime one() { return {mask}; }
    static BPrime zero() { return {0}; }

    BPrime operator+(BPrime o) const { return {bits ^ o.bits}; }
    BPrime operator*(BPrime o) const { return {bits & o.bits}; }
    BPrime& operator+=(BPrime o) { bits ^= o.bits; return *this; }
    bool operator==(const BPrime&) const = default;
    bool is_zero() const { return bits == 0; }
    int at(size_t k) const { return int((bits >> k) & 1); }
    int at(SpQuadraticForm w) const
    {
        auto& p = omega0();
        auto it = std::lower_bound(p.begin(), p.end(), w, [](auto a, auto b) { return a.v < b.v; });
        if (it == p.end() || it->v != w.v) throw std::invalid_argument("form has Arf 1");
        return at(size_t(it - p.begin()));
    }
};

inline std::string to_hex(BPrime e)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%09llx", static_cast<unsigned long long>(e.bits));
    return buf;
}
inline BPrime bprime_from_hex(const std::string& s)
{
    size_t pos = 0;
    unsigned long long v = std::stoull(s, &pos, 16);
    if (pos != s.size() || v > BPrime::mask) throw std::invalid_argument("bad B' hex value");
    return {v};
}

// x-bar: the function omega -> omega(x)
inline BPrime affine_generator(Mod2Class x)
{
    BPrime r;
    auto& p = omega0();
    for (size_t k = 0; k < p.size(); ++k)
        if (p[k](x)) r.bits |= uint64_t(1) << k;
    return r;
}

// filtration spans B'_k, k = 0..6: monomials of degree <= k in the basis generators
inline const std::array<gf2::Basis64, 7>& bprime_filtration()
{
    static const std::array<gf2::Basis64, 7> F = [] {
        std::array<gf2::Basis64, 7> f;
        std::array<BPrime, 6> e;
        for (int i = 0; i < 6; ++i) e[i] = affine_generator(Mod2Class(1u << i));
        for (int k = 0; k <= 6; ++k)
            for (unsigned s = 0; s < 64; ++s) {
                if (std::popcount(s) > k) continue;
                BPrime m = BPrime::one();
                for (int i = 0; i < 6; ++i) if ((s >> i) & 1) m = m * e[i];
                f[k].insert(m.bits);
            }
        return f;
    }();
    return F;
}

inline bool in_Bk(BPrime e, int k)
{
    if (k < 0) return e.is_zero();
    return bprime_filtration()[std::min(k, 6)].contains(e.bits);
}

// least k with e in B'_k; the zero element gets -1
inline int degree(BPrime e)
{
    if (e.is_zero()) return -1;
    for (int k = 0; k <= 6; ++k)
        if (in_Bk(e, k)) return k;
    throw std::logic_error("element outside B'");
}

inline size_t dim_Bk(int k) { return bprime_filtration()[std::min(k, 6)].dim(); }

// ---- B: functions on all 64 forms, for the projection B -> B' ----

struct BFull {
    uint64_t bits = 0;
};

inline BFull affine_generator_full(Mod2Class x)
{
    BFull r;
    for (unsigned v = 0; v < 64; ++v)
        if (SpQuadraticForm{Mod2Class(v)}(x)) r.bits |= uint64_t(1) << v;
    return r;
}

inline BPrime project(BFull f)
{
    BPrime r;
    auto& p = omega0();
    for (size_t k = 0; k < p.size(); ++k)
        if ((f.bits >> p[k].v) & 1) r.bits |= uint64_t(1) << k;
    return r;
}

inline size_t dim_B_full(int k)
{
    gf2::Basis64 b;
    std::array<BFull, 6> e;
    for (int i = 0; i < 6; ++i) e[i] = affine_generator_full(Mod2Class(1u << i));
    for (unsigned s = 0; s < 64; ++s) {
        if (std::popcount(s) > k) continue;
        uint64_t m = ~uint64_t(0);
        for (int i = 0; i < 6; ++i) if ((s >> i) & 1) m &= e[i].bits;
        b.insert(m);
    }
    return b.dim();
}

// ---- the four forms attached to a mod-2 isotropic triple ----

struct FormFamily {
    std::array<SpQuadraticForm, 4> w;
    SymplecticBasisZ2 basis;
};

// values of the form with prescribed values on a symplectic basis, in the standard basis
inline SpQuadraticForm form_from_basis_values(const SymplecticBasisZ2& B, std::array<int, 3> on_a,
                                              std::array<int, 3> on_b)
{
    SpQuadraticForm w;
    for (int k = 0; k < 6; ++k) {
        Mod2Class e = Mod2Class(1u << k);
        int val = 0;
        for (int j = 0; j < 3; ++j) {
            int alpha = dot2(e, B.b[j]);  // coefficient of a'_j
            int beta = dot2(B.a[j], e);   // coefficient of b'_j
            val ^= (alpha & on_a[j]) ^ (beta & on_b[j]) ^ (alpha & beta);
        }
        if (val) w.v |= e;
    }
    return w;
}

// omega_i(a_j) = 1; omega_i(b_j) = 0 iff i = 0 or i = j
inline FormFamily four_forms(const std::array<Mod2Class, 3>& A)
{
    FormFamily f;
    f.basis = complete_symplectic_mod2(A);
    for (int i = 0; i < 4; ++i) {
        std::array<int, 3> ob{};
        for (int j = 0; j < 3; ++j) ob[j] = (i == 0 || i == j + 1) ? 0 : 1;
        f.w[i] = form_from_basis_values(f.basis, {1, 1, 1}, ob);
    }
    return f;
}

// exhaustive filter: all Arf-0 forms with value 1 on every a_i
inline std::vector<SpQuadraticForm> filter_forms(const std::array<Mod2Class, 3>& A)
{
    std::vector<SpQuadraticForm> r;
    for (unsigned v = 0; v < 64; ++v) {
        SpQuadraticForm w{Mod2Class(v)};
        if (arf(w) == 0 && w(A[0]) && w(A[1]) && w(A[2])) r.push_back(w);
    }
    return r;
}

}  // namespace torelli
