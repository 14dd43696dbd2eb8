#pragma once
// Birman-Craggs-Johnson evaluation on homologically specified twist generators

#include "quadbool.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torelli {

enum class GenKind { SepTwist, BPTwist, Involution };

inline const char* kind_name(GenKind k)
{
    switch (k) {
    case GenKind::SepTwist: return "sep";
    case GenKind::BPTwist: return "bp";
    default: return "involution";
    }
}

struct SidePair {
    Mod2Class a = 0, b = 0;
};
struct IntPair {
    HClass a{}, b{};
};

// A curve is only a name plus its integral class.
struct Curve {
    std::string id;
    HClass cls{};
};

// A twist generator, carrying exactly the splitting data its sigma-formula consumes.
//  SepTwist: `side` is a symplectic basis of one side of the separating curve.
//  BPTwist:  T_first * T_second^{-1}; c is the common class, `side` a complementary
//            genus-1 symplectic system inside c-perp.
//  Involution: hyperelliptic involution, `ref` its reference basis.
struct SymbolicGenerator {
    GenKind kind = GenKind::SepTwist;
    long exponent = 1;
    std::vector<SidePair> side;
    std::vector<IntPair> int_side;  // optional integral lift of `side`
    Mod2Class c2 = 0;
    std::optional<HClass> c;
    std::string first, second;
    // side membership facts for separating twists (curve ids), used when no integral data
    std::vector<std::string> side_curves, other_curves;
    std::optional<HClass> alpha;  // multicurve component the twist is attached to
    SymplecticBasisZ2 ref{{m2a(1), m2a(2), m2a(3)}, {m2b(1), m2b(2), m2b(3)}};
    std::string name;
};

using GeneratorWord = std::vector<SymbolicGenerator>;

inline void validate(const SymbolicGenerator& g)
{
    if (g.kind == GenKind::Involution) {
        if (!g.ref.valid()) throw std::invalid_argument("involution reference basis is not symplectic");
        return;
    }
    if (g.side.empty() || g.side.size() > 2) throw std::invalid_argument("malformed side data");
    for (size_t i = 0; i < g.side.size(); ++i)
        for (size_t j = 0; j < g.side.size(); ++j) {
            if (dot2(g.side[i].a, g.side[j].a) || dot2(g.side[i].b, g.side[j].b))
                throw std::invalid_argument("malformed side data: not isotropic");
            if (dot2(g.side[i].a, g.side[j].b) != (i == j))
                throw std::invalid_argument("malformed side data: not symplectic");
        }
    if (g.kind == GenKind::BPTwist) {
        if (g.c2 == 0) throw std::invalid_argument("bounding pair class is zero mod 2");
        for (auto& p : g.side)
            if (dot2(p.a, g.c2) || dot2(p.b, g.c2))
                throw std::invalid_argument("malformed side data: side not orthogonal to c");
        if (g.c && mod2(*g.c) != g.c2) throw std::invalid_argument("integral c disagrees with c mod 2");
    }
    if (!g.int_side.empty()) {
        if (g.int_side.size() != g.side.size()) throw std::invalid_argument("integral side size mismatch");
        for (size_t i = 0; i < g.side.size(); ++i)
            if (mod2(g.int_side[i].a) != g.side[i].a || mod2(g.int_side[i].b) != g.side[i].b)
                throw std::invalid_argument("integral side disagrees with mod-2 side");
    }
}

inline BPrime side_sum(const std::vector<SidePair>& side)
{
    BPrime s;
    for (auto& p : side) s += affine_generator(p.a) * affine_generator(p.b);
    return s;
}

inline BPrime sigma(const SymbolicGenerator& g)
{
    validate(g);
    if (g.kind == GenKind::Involution) throw std::invalid_argument("involution is not in the Torelli group");
    if (g.exponent % 2 == 0) return {};
    BPrime s = side_sum(g.side);
    if (g.kind == GenKind::BPTwist) s = (affine_generator(g.c2) + BPrime::one()) * s;
    return s;
}

inline BPrime sigma_hat(const SymbolicGenerator& g)
{
    if (g.kind != GenKind::Involution) return sigma(g);
    validate(g);
    if (g.exponent % 2 == 0) return {};
    auto& r = g.ref;
    return affine_generator(r.a[0]) * affine_generator(r.b[0]) * (affine_generator(r.a[1]) + BPrime::one()) *
           affine_generator(r.b[1]);
}

inline BPrime sigma_word(const GeneratorWord& w)
{
    BPrime s;
    for (auto& g : w) s += sigma(g);
    return s;
}

inline int rho(SpQuadraticForm om, const GeneratorWord& w) { return sigma_word(w).at(om); }
inline bool in_C(const GeneratorWord& w) { return sigma_word(w).is_zero(); }

inline std::array<int, 4> rho_vector(const FormFamily& F, const GeneratorWord& w)
{
    BPrime s = sigma_word(w);
    return {s.at(F.w[0]), s.at(F.w[1]), s.at(F.w[2]), s.at(F.w[3])};
}

inline GeneratorWord inverse(GeneratorWord w)
{
    std::reverse(w.begin(), w.end());
    for (auto& g : w) g.exponent = -g.exponent;
    return w;
}

// ---- named generators ----

inline SymbolicGenerator sep_twist(std::vector<IntPair> side, long e = 1)
{
    SymbolicGenerator g;
    g.kind = GenKind::SepTwist;
    g.exponent = e;
    for (auto& p : side) g.side.push_back({mod2(p.a), mod2(p.b)});
    g.int_side = std::move(side);
    return g;
}

inline SymbolicGenerator bp_twist(const HClass& c, std::vector<IntPair> side, std::string first,
                                  std::string second, long e = 1)
{
    SymbolicGenerator g;
    g.kind = GenKind::BPTwist;
    g.exponent = e;
    g.c = c;
    g.c2 = mod2(c);
    for (auto& p : side) g.side.push_back({mod2(p.a), mod2(p.b)});
    g.int_side = std::move(side);
    g.first = std::move(first);
    g.second = std::move(second);
    return g;
}

inline SymbolicGenerator involution(const SymplecticBasisZ2& ref)
{
    SymbolicGenerator g;
    g.kind = GenKind::Involution;
    g.ref = ref;
    return g;
}

// generators of the type-1 stabilizer in a symplectic frame
struct TypeOneGens {
    SymbolicGenerator z1, z2, z1z3;
};

inline TypeOneGens type_one_generators(const SymplecticFrame& f)
{
    auto& a = f.a;
    auto& b = f.b;
    TypeOneGens t;
    t.z1 = bp_twist(a[1] + a[2], {{a[0], b[0]}}, "g1", "g2");
    t.z1.name = "z1";
    t.z2 = bp_twist(a[0] + a[2], {{a[1], b[1]}}, "e1", "e2");
    t.z2.name = "z2";
    t.z1z3 = bp_twist(a[1] + a[2], {{a[0], b[0] + a[2]}}, "g1'", "g2");
    t.z1z3.name = "z1z3";
    return t;
}

// z3 as the word z1^{-1} (z1 z3)
inline GeneratorWord z3_word(const TypeOneGens& t)
{
    auto z1i = t.z1;
    z1i.exponent = -1;
    return {z1i, t.z1z3};
}

// Lantern: a separating twist with genus-1 side (p,q), next to non-special components
// alpha_0..2 of a type-2 multicurve, becomes T_{a0',a0} T_{a1',a1} T_{a2',a2}.
inline GeneratorWord lantern_expand(const SymbolicGenerator& g, const std::array<Curve, 3>& alphas)
{
    if (g.kind != GenKind::SepTwist || g.side.size() != 1)
        throw std::invalid_argument("lantern rewrite needs a separating twist given by its genus-1 side");
    GeneratorWord out;
    for (int i = 0; i < 3; ++i) {
        SymbolicGenerator b;
        b.kind = GenKind::BPTwist;
        b.exponent = g.exponent;
        b.c = alphas[i].cls;
        b.c2 = mod2(alphas[i].cls);
        b.side = g.side;
        b.int_side = g.int_side;
        b.first = alphas[i].id + "'";
        b.second = alphas[i].id;
        b.alpha = alphas[i].cls;
        b.name = "lantern" + std::to_string(i);
        out.push_back(b);
    }
    return out;
}

}  // namespace torelli
