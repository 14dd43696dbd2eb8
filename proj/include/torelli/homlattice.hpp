#pragma once
// H = Z^6 with the symplectic form, basis order (a1,a2,a3,b1,b2,b3), and its mod-2 reduction

#include "gf2.hpp"
#include "zmat.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>

namespace torelli {

using HClass = std::array<Int, 6>;

inline HClass hclass(long a1, long a2, long a3, long b1 = 0, long b2 = 0, long b3 = 0)
{
    return {Int(a1), Int(a2), Int(a3), Int(b1), Int(b2), Int(b3)};
}
inline HClass basis_a(int i) { HClass h{}; h[i - 1] = 1; return h; }
inline HClass basis_b(int i) { HClass h{}; h[i + 2] = 1; return h; }

inline HClass operator+(const HClass& u, const HClass& v) { HClass r; for (int i = 0; i < 6; ++i) r[i] = u[i] + v[i]; return r; }
inline HClass operator-(const HClass& u, const HClass& v) { HClass r; for (int i = 0; i < 6; ++i) r[i] = u[i] - v[i]; return r; }
inline HClass operator-(const HClass& u) { HClass r; for (int i = 0; i < 6; ++i) r[i] = -u[i]; return r; }
inline HClass operator*(const Int& k, const HClass& u) { HClass r; for (int i = 0; i < 6; ++i) r[i] = k * u[i]; return r; }

inline bool is_zero(const HClass& u)
{
    for (auto& c : u) if (c != 0) return false;
    return true;
}

inline ZVec to_zvec(const HClass& u) { return ZVec(u.begin(), u.end()); }
inline HClass from_zvec(const ZVec& v) { HClass h; for (int i = 0; i < 6; ++i) h[i] = v[i]; return h; }

inline std::string to_string(const HClass& u)
{
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < 6; ++i) os << (i ? "," : "") << u[i];
    os << ']';
    return os.str();
}

inline Int intersection(const HClass& u, const HClass& v)
{
    Int s = 0;
    for (int i = 0; i < 3; ++i) s += u[i] * v[i + 3] - u[i + 3] * v[i];
    return s;
}

inline Int content(const HClass& u)
{
    Int g = 0;
    for (auto& c : u) g = gcd(g, abs(c));
    return g;
}

inline bool is_primitive(const HClass& u)
{
    if (is_zero(u)) throw std::invalid_argument("zero class");
    return content(u) == 1;
}

inline ZMat coord_matrix(const std::vector<HClass>& s)
{
    ZMat m(s.size(), 6);
    for (size_t i = 0; i < s.size(); ++i)
        for (int j = 0; j < 6; ++j) m(i, j) = s[i][j];
    return m;
}

inline bool is_isotropic_direct_summand(const std::vector<HClass>& s)
{
    if (s.empty() || s.size() > 3) throw std::invalid_argument("expected 1 to 3 classes (genus 3)");
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            if (intersection(s[i], s[j]) != 0) return false;
    auto d = elementary_divisors(coord_matrix(s));
    if (d.size() != s.size()) return false;
    for (auto& e : d) if (e != 1) return false;
    return true;
}

// ---- mod 2 ----

using Mod2Class = uint8_t;  // bit i = coordinate i in basis order

inline Mod2Class mod2(const HClass& u)
{
    Mod2Class r = 0;
    for (int i = 0; i < 6; ++i)
        if (u[i] % 2 != 0) r |= Mod2Class(1u << i);
    return r;
}
inline Mod2Class m2a(int i) { return Mod2Class(1u << (i - 1)); }
inline Mod2Class m2b(int i) { return Mod2Class(1u << (i + 2)); }

inline int dot2(Mod2Class x, Mod2Class y)
{
    return gf2::parity((x & 7u) & (y >> 3)) ^ gf2::parity((x >> 3) & (y & 7u));
}

inline std::string to_bits(Mod2Class x)
{
    std::string s(6, '0');
    for (int i = 0; i < 6; ++i) if ((x >> i) & 1) s[i] = '1';
    return s;
}
inline Mod2Class from_bits(const std::string& s)
{
    if (s.size() != 6) throw std::invalid_argument("mod-2 class must have 6 bits");
    Mod2Class r = 0;
    for (int i = 0; i < 6; ++i) {
        if (s[i] == '1') r |= Mod2Class(1u << i);
        else if (s[i] != '0') throw std::invalid_argument("bad bit string");
    }
    return r;
}

struct SymplecticBasisZ2 {
    std::array<Mod2Class, 3> a, b;
    bool valid() const
    {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (dot2(a[i], a[j]) || dot2(b[i], b[j])) return false;
                if (dot2(a[i], b[j]) != (i == j)) return false;
            }
        return true;
    }
};

inline bool independent2(const std::vector<Mod2Class>& v)
{
    gf2::Basis64 b;
    for (auto x : v) if (!b.insert(x)) return false;
    return true;
}

// Lexicographically least completion: b1, then b2, then b3, each the least 6-bit value
// meeting its Gram constraints. A greedy pick never dead-ends since partial symplectic
// systems always extend.
inline SymplecticBasisZ2 complete_symplectic_mod2(const std::array<Mod2Class, 3>& A)
{
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            if (dot2(A[i], A[j])) throw std::invalid_argument("classes are not pairwise orthogonal");
    if (!independent2({A[0], A[1], A[2]})) throw std::invalid_argument("classes are dependent");
    SymplecticBasisZ2 r;
    r.a = A;
    for (int k = 0; k < 3; ++k) {
        bool found = false;
        for (unsigned v = 1; v < 64 && !found; ++v) {
            bool ok = true;
            for (int i = 0; i < 3 && ok; ++i) ok = dot2(A[i], Mod2Class(v)) == (i == k);
            for (int j = 0; j < k && ok; ++j) ok = dot2(r.b[j], Mod2Class(v)) == 0;
            if (ok) { r.b[k] = Mod2Class(v); found = true; }
        }
        if (!found) throw std::logic_error("no completion");
    }
    return r;
}

// ---- random symplectic data, for tests and verification suites ----

// image of x under the symplectic transvection along v
inline HClass transvect(const HClass& x, const HClass& v, const Int& k = 1)
{
    return x + (k * intersection(x, v)) * v;
}

struct SymplecticFrame {
    std::array<HClass, 3> a, b;
};

inline SymplecticFrame standard_frame()
{
    SymplecticFrame f;
    for (int i = 0; i < 3; ++i) { f.a[i] = basis_a(i + 1); f.b[i] = basis_b(i + 1); }
    return f;
}

// product of `steps` random transvections applied to the standard frame
template <class Rng>
SymplecticFrame random_frame(Rng& rng, int steps = 4)
{
    SymplecticFrame f = standard_frame();
    std::uniform_int_distribution<int> coef(-1, 1), sgn(0, 1);
    for (int s = 0; s < steps; ++s) {
        HClass v;
        do {
            for (auto& c : v) c = coef(rng);
        } while (is_zero(v));
        Int k = sgn(rng) ? 1 : -1;
        for (int i = 0; i < 3; ++i) {
            f.a[i] = transvect(f.a[i], v, k);
            f.b[i] = transvect(f.b[i], v, k);
        }
    }
    return f;
}

}  // namespace torelli
