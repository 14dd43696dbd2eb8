#pragma once
// E^1-level chains over cells of the complex of cycles: d^1, the sigma/nu/mu homomorphisms,
// and the theta pairings

#include "cyclecomplex.hpp"
#include "stabrep.hpp"

#include <map>
#include <mutex>
#include <random>

namespace torelli {

// A term [h]_M. `curves` names the components of M, aligned with the sorted `cell`.
struct LabeledTerm {
    HMultiset cell;
    std::vector<Curve> curves;
    std::optional<int> orbit;  // +1 / -1, only for H1_type2 and H2prime cells
    int orientation = 1;
    GeneratorWord payload;
    long coefficient = 1;
};
using E1Chain = std::vector<LabeledTerm>;

inline std::string ids_key(const std::vector<Curve>& cs)
{
    std::string s;
    for (auto& c : cs) s += c.id + "|";
    return s;
}

inline bool two_orbit(Taxon t) { return t == Taxon::H1_type2 || t == Taxon::H2prime; }

inline void check_term(const LabeledTerm& t)
{
    if (t.curves.size() != t.cell.size()) throw std::invalid_argument("term curves do not match its cell");
    if (!std::is_sorted(t.cell.begin(), t.cell.end())) throw std::invalid_argument("term cell is not canonical");
    for (size_t i = 0; i < t.cell.size(); ++i)
        if (t.curves[i].cls != t.cell[i]) throw std::invalid_argument("curve class disagrees with cell");
    auto cc = classify(t.cell);
    if (two_orbit(cc.tag) != t.orbit.has_value()) throw std::invalid_argument("orbit sign present iff the cell has two orbits");
}

// ---------------- geometric incidence ----------------

// Orientation of P_M is the canonical relation basis of [M]. The facet w_j = 0 gets
// sign det(v, basis_M) in basis_K coordinates, v an outward relation (v_j < 0).
inline int geometric_incidence(const HMultiset& K, size_t j)
{
    static std::mutex mu;
    static std::map<std::pair<HMultiset, size_t>, int> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        if (auto it = cache.find({K, j}); it != cache.end()) return it->second;
    }
    auto kerK = relation_lattice(K);
    HMultiset M = K;
    M.erase(M.begin() + long(j));
    auto kerM = M.empty() ? std::vector<ZVec>{} : relation_lattice(M);
    if (kerM.size() + 1 != kerK.size()) throw std::invalid_argument("not a facet");
    ZVec v;
    for (auto& b : kerK)
        if (b[j] != 0) { v = b; break; }
    if (v.empty()) throw std::logic_error("no outward relation");
    if (v[j] > 0) for (auto& e : v) e = -e;
    std::vector<std::vector<Rat>> rows{coords_in(kerK, v)};
    for (auto& m : kerM) {
        ZVec e(K.size());
        for (size_t i = 0, k = 0; i < K.size(); ++i)
            if (i != j) e[i] = m[k++];
        rows.push_back(coords_in(kerK, e));
    }
    Rat d = det(rows);
    if (d == 0) throw std::logic_error("degenerate incidence");
    int s = d > 0 ? 1 : -1;
    std::lock_guard<std::mutex> lk(mu);
    cache[{K, j}] = s;
    return s;
}

inline const std::vector<LabelFace>& cached_label_faces(const HMultiset& D, const HClass& x)
{
    static std::mutex mu;
    static std::map<std::pair<HMultiset, HClass>, std::vector<LabelFace>> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        if (auto it = cache.find({D, x}); it != cache.end()) return it->second;
    }
    auto f = label_faces(D, x);
    std::lock_guard<std::mutex> lk(mu);
    return cache.emplace(std::make_pair(D, x), std::move(f)).first->second;
}

inline const CellClass& cached_classify(const HMultiset& C)
{
    static std::mutex mu;
    static std::map<HMultiset, CellClass> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        if (auto it = cache.find(C); it != cache.end()) return it->second;
    }
    auto cc = classify(C);
    std::lock_guard<std::mutex> lk(mu);
    return cache.emplace(C, std::move(cc)).first->second;
}

// index of the second copy of the doubled class in a sorted multiset, if any
inline std::optional<std::pair<size_t, size_t>> doubled_positions(const HMultiset& m)
{
    for (size_t i = 0; i + 1 < m.size(); ++i)
        if (m[i] == m[i + 1]) return std::make_pair(i, i + 1);
    return std::nullopt;
}

// ---------------- sign tables ----------------

// [K:M] keyed by curve ids, eps_{D,C} keyed by multisets. Missing entries fall back to the
// geometric incidence and eps = +1.
struct SignTable {
    std::map<std::pair<std::string, std::string>, int> incidence;
    std::map<std::pair<HMultiset, HMultiset>, int> eps;

    int inc(const LabeledTerm& K, size_t j, const std::vector<Curve>& Mcurves) const
    {
        auto it = incidence.find({ids_key(K.curves), ids_key(Mcurves)});
        if (it != incidence.end()) return it->second;
        return geometric_incidence(K.cell, j);
    }
    int epsilon(const HMultiset& D, const HMultiset& C) const
    {
        auto it = eps.find({D, C});
        return it == eps.end() ? 1 : it->second;
    }
};

inline void set_incidence(SignTable& s, const std::vector<Curve>& K, const std::vector<Curve>& M, int v)
{
    s.incidence[{ids_key(K), ids_key(M)}] = v;
}

// ---------------- d^1 ----------------

inline E1Chain d1(const E1Chain& y, const SignTable& signs, const HClass& x)
{
    E1Chain out;
    for (auto& t : y) {
        check_term(t);
        auto& K = t.cell;
        auto dup = doubled_positions(K);
        for (auto& f : cached_label_faces(K, x)) {
            LabeledTerm s;
            s.cell = f.m;
            s.curves = t.curves;
            s.curves.erase(s.curves.begin() + long(f.removed));
            s.payload = t.payload;
            auto& fc = cached_classify(s.cell);
            if (two_orbit(fc.tag)) {
                if (dup && (f.removed == dup->first || f.removed == dup->second)) {
                    // M+ keeps the first copy of the bounding pair
                    s.orbit = f.removed == dup->second ? 1 : -1;
                } else if (t.orbit) {
                    s.orbit = *t.orbit * signs.epsilon(K, s.cell);
                } else {
                    s.orbit = 1;
                }
            }
            s.coefficient = t.coefficient * t.orientation * signs.inc(t, f.removed, s.curves);
            out.push_back(std::move(s));
        }
    }
    return out;
}

// collect equal terms (same multicurve, same orbit, same payload names); drop zeros
inline E1Chain simplify(const E1Chain& y)
{
    std::map<std::string, LabeledTerm> acc;
    std::vector<std::string> order;
    for (auto& t : y) {
        std::string key = ids_key(t.curves) + "#" + (t.orbit ? std::to_string(*t.orbit) : "");
        for (auto& g : t.payload) key += g.name + ":" + std::to_string(g.exponent) + ",";
        auto it = acc.find(key);
        long c = t.coefficient * t.orientation;
        if (it == acc.end()) {
            LabeledTerm n = t;
            n.coefficient = c;
            n.orientation = 1;
            acc.emplace(key, n);
            order.push_back(key);
        } else {
            it->second.coefficient += c;
        }
    }
    E1Chain out;
    for (auto& k : order)
        if (acc[k].coefficient != 0) out.push_back(acc[k]);
    return out;
}

// ---------------- homomorphisms ----------------

inline const Curve& component_of(const LabeledTerm& t, const HClass& c)
{
    for (auto& g : t.curves)
        if (g.cls == c) return g;
    throw std::invalid_argument("no component in class " + to_string(c));
}

inline std::array<Curve, 3> nonspecial_components(const LabeledTerm& t, const CellClass& cc)
{
    std::array<Curve, 3> r;
    size_t k = 0;
    for (auto& g : t.curves)
        if (g.cls != *cc.special) r.at(k++) = g;
    return r;
}

// sigma_{M,gamma}: letters tagged with gamma's class, separating twists lantern-expanded
inline BPrime sigma_M_gamma(const LabeledTerm& t, const HClass& c)
{
    auto& cc = cached_classify(t.cell);
    if (cc.tag != Taxon::H1_type2) throw std::invalid_argument("sigma_{M,gamma} needs a type-2 cell");
    if (cc.special && *cc.special == c) throw std::invalid_argument("c is the special element");
    BPrime s;
    for (auto& g : t.payload) {
        if (g.kind == GenKind::SepTwist) {
            for (auto& b : lantern_expand(g, nonspecial_components(t, cc)))
                if (*b.alpha == c) s += sigma(b);
        } else if (g.kind == GenKind::BPTwist) {
            if (!g.alpha) throw std::invalid_argument("missing alpha tag on " + g.name);
            if (*g.alpha == c) s += sigma(g);
        } else {
            throw std::invalid_argument("involution is not in the Torelli group");
        }
    }
    return s;
}

inline BPrime sigma_C(const E1Chain& y, const HMultiset& C0)
{
    auto C = canon(C0);
    BPrime s;
    for (auto& t : y)
        if (t.cell == C && (t.coefficient * t.orientation) % 2 != 0) s += sigma_word(t.payload);
    return s;
}

inline BPrime sigma_Cc(const E1Chain& y, const HMultiset& C0, const HClass& c)
{
    auto C = canon(C0);
    auto& cc = cached_classify(C);
    if (cc.tag != Taxon::H1_type2 || *cc.special == c || std::find(C.begin(), C.end(), c) == C.end())
        throw std::invalid_argument("sigma_{C,c} needs a type-2 C and a non-special c in C");
    BPrime s;
    for (auto& t : y)
        if (t.cell == C && (t.coefficient * t.orientation) % 2 != 0) s += sigma_M_gamma(t, c);
    return s;
}

// nu_{C,c} on H1 type-2 (c non-special) or on H2' (c the principal element)
inline long nu_Cc(const E1Chain& y, const HMultiset& C0, const HClass& c)
{
    auto C = canon(C0);
    auto& cc = cached_classify(C);
    bool ok = (cc.tag == Taxon::H1_type2 && *cc.special != c && std::find(C.begin(), C.end(), c) != C.end()) ||
              (cc.tag == Taxon::H2prime && *cc.principal == c);
    if (!ok) throw std::invalid_argument("nu_{C,c}: taxonomy mismatch");
    long s = 0;
    for (auto& t : y)
        if (t.cell == C) s += *t.orbit * t.coefficient * t.orientation * nu_on_word(t.payload, component_of(t, c));
    return s;
}

inline long nu_C(const E1Chain& y, const HMultiset& C)
{
    auto& cc = cached_classify(canon(C));
    if (cc.tag != Taxon::H2prime) throw std::invalid_argument("nu_C needs an H2' cell");
    return nu_Cc(y, C, *cc.principal);
}

inline long nu_plus(const E1Chain& y, const HMultiset& C0, const HClass& c)
{
    auto C = canon(C0);
    nu_Cc({}, C, c);  // taxonomy check
    long s = 0;
    for (auto& t : y)
        if (t.cell == C && *t.orbit == 1) s += t.coefficient * t.orientation * nu_on_word(t.payload, component_of(t, c));
    return s;
}

// nu^+_{C,A}: c is the element of C outside A
inline long nu_plus_A(const E1Chain& y, const HMultiset& C, const HMultiset& A)
{
    auto c = canon(C), a = canon(A);
    HMultiset rest;
    std::set_difference(c.begin(), c.end(), a.begin(), a.end(), std::back_inserter(rest));
    if (rest.size() != 1 || !submultiset(a, c)) throw std::invalid_argument("A is not a 3-subset of C");
    return nu_plus(y, C, rest[0]);
}

inline long mu_C(const E1Chain& y, const HMultiset& C0)
{
    auto C = canon(C0);
    auto dup = doubled_positions(C);
    if (!dup) throw std::invalid_argument("mu_C needs an element of multiplicity 2");
    long s = 0;
    for (auto& t : y)
        if (t.cell == C)
            s += t.coefficient * t.orientation * mu_on_word(t.payload, t.curves[dup->first], t.curves[dup->second]);
    return s;
}

// ---------------- theta ----------------

inline FormFamily family_of(const HMultiset& A)
{
    if (A.size() != 3) throw std::invalid_argument("A must have three classes");
    return four_forms({mod2(A[0]), mod2(A[1]), mod2(A[2])});
}

inline int theta_pairing(const HMultiset& A, const GeneratorWord& h1, const GeneratorWord& h2)
{
    auto F = family_of(A);
    auto r1 = rho_vector(F, h1), r2 = rho_vector(F, h2);
    int s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) s ^= r1[i] & r2[j];
    return s;
}

struct BarTerm {
    HMultiset cell;
    GeneratorWord h1, h2;
};

inline int Theta_A(const HMultiset& A, const BarTerm& b, const std::array<int, 4>& numbering = {0, 1, 2, 3})
{
    if (canon(b.cell) != canon(A)) return 0;
    auto F = family_of(A);
    auto r1 = rho_vector(F, b.h1), r2 = rho_vector(F, b.h2);
    int s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) s ^= r1[numbering[i]] & r2[numbering[j]];
    return s;
}

// the configuration: separating curves cutting off the tori around a1 and a2
inline std::pair<SymbolicGenerator, SymbolicGenerator> separating_pair(const SymplecticFrame& f)
{
    auto d1 = sep_twist({{f.a[0], f.b[0]}});
    d1.name = "delta1";
    auto d2 = sep_twist({{f.a[1], f.b[1]}});
    d2.name = "delta2";
    return {d1, d2};
}

// ---------------- identity checks on one generator ----------------

struct IdentityInstance {
    HMultiset D;               // sorted
    std::vector<Curve> curves;  // aligned with D
    GeneratorWord h;
    HClass x;
    std::string label;
};

struct IdentityLine {
    std::string identity;
    HMultiset C;
    std::optional<HClass> c;
    std::string lhs, rhs;
    bool ok = true;
    std::string note;
};

struct IdentityReport {
    std::vector<IdentityLine> lines;
    bool ok() const
    {
        return std::all_of(lines.begin(), lines.end(), [](auto& l) { return l.ok; });
    }
};

// admissible: on a bounding-pair cell, the two faces with the same multiset have opposite incidences
inline std::optional<std::string> admissibility_violation(const IdentityInstance& I, const SignTable& s)
{
    auto dup = doubled_positions(I.D);
    if (!dup) return std::nullopt;
    LabeledTerm K{I.D, I.curves, std::nullopt, 1, I.h, 1};
    auto minus = [&](size_t j) {
        auto c = I.curves;
        c.erase(c.begin() + long(j));
        return c;
    };
    int p = s.inc(K, dup->second, minus(dup->second)), q = s.inc(K, dup->first, minus(dup->first));
    if (p == q) return std::string("sign table violates [K:M+] = -[K:M-]");
    return std::nullopt;
}

inline bool has_sep(const GeneratorWord& h)
{
    return std::any_of(h.begin(), h.end(), [](auto& g) { return g.kind == GenKind::SepTwist; });
}

inline IdentityReport check_d1_identities(const IdentityInstance& I, const SignTable& signs, int orbit_K = 1)
{
    for (auto& g : I.h) {
        if (g.kind == GenKind::Involution) throw std::invalid_argument("involution is not in the Torelli group");
        if (g.kind == GenKind::BPTwist && (g.first.empty() || g.second.empty() || !g.alpha))
            throw std::invalid_argument("missing tags on " + g.name);
    }
    auto& dc = cached_classify(I.D);
    bool h2p = dc.tag == Taxon::H2prime;
    if (!h2p && dc.tag != Taxon::BoundingPair) throw std::invalid_argument("instance cell is not in H2");
    LabeledTerm K{I.D, I.curves, h2p ? std::optional<int>(orbit_K) : std::nullopt, 1, I.h, 1};
    E1Chain y{K};
    auto dy = d1(y, signs, I.x);
    auto viol = admissibility_violation(I, signs);
    auto dup = doubled_positions(I.D);

    IdentityReport rep;
    std::set<HMultiset> seen;
    for (auto& f : cached_label_faces(I.D, I.x)) {
        if (!seen.insert(f.m).second) continue;
        auto& fc = cached_classify(f.m);
        if (fc.tag != Taxon::H1_type1 && fc.tag != Taxon::H1_type2) continue;
        {
            IdentityLine L{"sigma_C", f.m, std::nullopt};
            BPrime lhs = sigma_C(dy, f.m), rhs = h2p ? sigma_word(I.h) : BPrime{};
            L.lhs = to_hex(lhs);
            L.rhs = to_hex(rhs);
            L.ok = lhs == rhs;
            rep.lines.push_back(L);
        }
        if (fc.tag != Taxon::H1_type2) continue;
        // a separating twist sitting on an H2' cell is only checked against sigma_C
        if (h2p && has_sep(I.h)) continue;
        for (auto& c : f.m) {
            if (c == *fc.special) continue;
            bool principal = h2p && *dc.principal == c;
            IdentityLine S{"sigma_Cc", f.m, c};
            BPrime sl = sigma_Cc(dy, f.m, c), sr = principal ? sigma_word(I.h) : BPrime{};
            S.lhs = to_hex(sl);
            S.rhs = to_hex(sr);
            S.ok = sl == sr;
            rep.lines.push_back(S);

            IdentityLine N{"nu_Cc", f.m, c};
            long nl = nu_Cc(dy, f.m, c), nr = 0;
            if (principal) {
                size_t j = 0;
                for (auto& g : cached_label_faces(I.D, I.x))
                    if (g.m == f.m) j = g.removed;
                auto Mc = I.curves;
                Mc.erase(Mc.begin() + long(j));
                nr = signs.epsilon(I.D, f.m) * signs.inc(K, j, Mc) * nu_C(y, I.D);
            } else if (!h2p && dup) {
                auto Mc = I.curves;
                Mc.erase(Mc.begin() + long(dup->second));
                long DC = signs.inc(K, dup->second, Mc);
                nr = 2 * DC * mu_C(y, I.D);
                N.note = "reduces to nu_{gamma+} + nu_{gamma-} = 2 mu";
            }
            N.lhs = std::to_string(nl);
            N.rhs = std::to_string(nr);
            N.ok = nl == nr;
            if (!N.ok && viol) N.note = *viol;
            rep.lines.push_back(N);
        }
    }
    return rep;
}

// random sign table meeting the bounding-pair constraint (or violating it, for negative tests)
template <class Rng>
SignTable random_sign_table(const IdentityInstance& I, Rng& rng, bool admissible = true)
{
    SignTable s;
    std::uniform_int_distribution<int> bit(0, 1);
    auto pm = [&] { return bit(rng) ? 1 : -1; };
    auto dup = doubled_positions(I.D);
    std::optional<int> first;
    for (auto& f : cached_label_faces(I.D, I.x)) {
        auto Mc = I.curves;
        Mc.erase(Mc.begin() + long(f.removed));
        int v = pm();
        if (dup && (f.removed == dup->first || f.removed == dup->second)) {
            if (first) v = admissible ? -*first : *first;
            else first = v;
        }
        set_incidence(s, I.curves, Mc, v);
        s.eps[{I.D, f.m}] = pm();
    }
    return s;
}

// ---------------- instances over a superset lattice ----------------

// least mod-2 symplectic pair (u, v) orthogonal to all of `orth`, with u.extra = 1 if extra given
inline std::optional<SidePair> find_side(const std::vector<Mod2Class>& orth, std::optional<Mod2Class> fixed_a = {})
{
    for (unsigned u = 1; u < 64; ++u) {
        Mod2Class a = fixed_a ? *fixed_a : Mod2Class(u);
        if (fixed_a && u > 1) break;
        bool ok = true;
        if (!fixed_a)
            for (auto o : orth) ok = ok && !dot2(a, o);
        if (!ok) continue;
        for (unsigned v = 1; v < 64; ++v) {
            bool good = dot2(a, Mod2Class(v)) == 1;
            for (auto o : orth) good = good && !dot2(Mod2Class(v), o);
            if (good) return SidePair{a, Mod2Class(v)};
        }
    }
    return std::nullopt;
}

inline std::vector<Curve> name_components(const HMultiset& D)
{
    std::vector<Curve> cs;
    for (size_t i = 0; i < D.size(); ++i) cs.push_back({"k" + std::to_string(i), D[i]});
    return cs;
}

// generator instances attached to a 2-cell: BP twist payloads and a separating twist
inline std::vector<IdentityInstance> instances_for_cell(const HMultiset& D0, const HClass& x)
{
    HMultiset D = canon(D0);
    auto& dc = cached_classify(D);
    auto curves = name_components(D);
    std::vector<IdentityInstance> out;
    if (dc.tag == Taxon::H2prime) {
        auto p = *dc.principal;
        auto side = find_side({mod2(p)});
        SymbolicGenerator g;
        g.kind = GenKind::BPTwist;
        g.c = p;
        g.c2 = mod2(p);
        g.side = {*side};
        g.first = "ext";
        g.second = component_of({D, curves}, p).id;
        g.alpha = p;
        g.name = "T_ext_principal";
        out.push_back({D, curves, {g}, x, "bp"});
        // a separating curve disjoint from D: its genus-1 side holds the components of one class s,
        // and every other class is orthogonal to that side
        for (auto& s : D) {
            std::vector<HClass> others;
            for (auto& d : D) if (d != s) others.push_back(d);
            if (rank_of(others) + 1 != rank_of(D)) continue;  // s enters a relation
            std::vector<Mod2Class> o2;
            for (auto& d : others) o2.push_back(mod2(d));
            auto sp = find_side(o2, mod2(s));
            if (!sp) continue;
            SymbolicGenerator t;
            t.kind = GenKind::SepTwist;
            t.side = {*sp};
            t.name = "T_delta";
            for (auto& k : curves) (k.cls == s ? t.side_curves : t.other_curves).push_back(k.id);
            out.push_back({D, curves, {t}, x, "sep"});
            break;
        }
    } else if (dc.tag == Taxon::BoundingPair) {
        auto dup = *doubled_positions(D);
        auto c = D[dup.first];
        auto side = find_side({mod2(c)});
        SymbolicGenerator g;
        g.kind = GenKind::BPTwist;
        g.c = c;
        g.c2 = mod2(c);
        g.side = {*side};
        g.first = curves[dup.first].id;
        g.second = curves[dup.second].id;
        g.alpha = c;
        g.name = "T_bp";
        out.push_back({D, curves, {g}, x, "bp"});
        // separating twist whose genus-1 side holds only the special element of the faces
        HMultiset C = D;
        C.erase(C.begin() + long(dup.second));
        auto& fc = cached_classify(C);
        if (fc.tag == Taxon::H1_type2) {
            auto s = *fc.special;
            std::vector<Mod2Class> others;
            for (auto& d : D) if (d != s) others.push_back(mod2(d));
            Mod2Class s2 = mod2(s);
            std::optional<SidePair> sp;
            for (unsigned v = 1; v < 64 && !sp; ++v) {
                bool good = dot2(s2, Mod2Class(v)) == 1;
                for (auto o : others) good = good && !dot2(Mod2Class(v), o);
                if (good) sp = SidePair{s2, Mod2Class(v)};
            }
            if (sp) {
                SymbolicGenerator t;
                t.kind = GenKind::SepTwist;
                t.side = {*sp};
                t.name = "T_delta";
                for (auto& k : curves) (k.cls == s ? t.side_curves : t.other_curves).push_back(k.id);
                out.push_back({D, curves, {t}, x, "sep"});
            }
        }
    }
    return out;
}

// all 2-cells (by multiset) inside the superset lattice over A
inline std::vector<HMultiset> two_cells_over(const HMultiset& A, const HClass& x)
{
    std::set<HMultiset> found;
    for (auto& s : supersets_in_H(A, x)) {
        auto& S = s.m;
        size_t n = S.size();
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (std::popcount(mask) != 5) continue;
            HMultiset D;
            for (size_t i = 0; i < n; ++i) if ((mask >> i) & 1) D.push_back(S[i]);
            D = canon(D);
            if (found.count(D) || cell_dimension(D) != 2) continue;
            if (!is_in_M_relative(D, S, x)) continue;
            found.insert(D);
        }
    }
    return {found.begin(), found.end()};
}

// d1 d1 [h]_K for a 2-cell K; empty result means the identity holds
inline E1Chain d1_squared(const HMultiset& D0, const HClass& x)
{
    HMultiset D = canon(D0);
    auto& dc = cached_classify(D);
    SymbolicGenerator g = sep_twist({{basis_a(1), basis_b(1)}});
    g.name = "h";
    LabeledTerm K{D, name_components(D), two_orbit(dc.tag) ? std::optional<int>(1) : std::nullopt, 1, {g}, 1};
    SignTable geo;
    auto first = d1({K}, geo, x);
    // orbit bookkeeping does not enter the boundary of 1-cells; compare multicurves only
    for (auto& t : first) t.orbit.reset();
    E1Chain second;
    for (auto& t : first) {
        LabeledTerm u = t;
        auto& fc = cached_classify(u.cell);
        if (two_orbit(fc.tag)) u.orbit = 1;
        for (auto& s : d1({u}, geo, x)) second.push_back(s);
    }
    return simplify(second);
}

}  // namespace torelli
