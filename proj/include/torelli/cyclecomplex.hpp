#pragma once
// Cells of the complex of cycles, seen through the multisets of their homology classes

#include "homlattice.hpp"

#include <map>
#include <mutex>
#include <set>

namespace torelli {

using HMultiset = std::vector<HClass>;  // kept sorted

inline HMultiset canon(HMultiset m)
{
    std::sort(m.begin(), m.end());
    return m;
}

inline std::string to_string(const HMultiset& m)
{
    std::string s = "[";
    for (size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + to_string(m[i]);
    return s + "]";
}

inline size_t rank_of(const HMultiset& m)
{
    if (m.empty()) return 0;
    return rank(coord_matrix(m));
}

// integer relations r with sum r_i m_i = 0
inline std::vector<ZVec> relation_lattice(const HMultiset& m)
{
    return kernel_basis(coord_matrix(m).transpose());
}

inline long cell_dimension(const HMultiset& m) { return long(m.size()) - long(rank_of(m)); }

inline bool has_duplicates(const HMultiset& m)
{
    auto c = canon(m);
    return std::adjacent_find(c.begin(), c.end()) != c.end();
}

inline bool submultiset(const HMultiset& C, const HMultiset& D)
{
    auto c = canon(C), d = canon(D);
    return std::includes(d.begin(), d.end(), c.begin(), c.end());
}

inline HMultiset with(HMultiset m, const HClass& e)
{
    m.push_back(e);
    return canon(m);
}

inline HMultiset unite(const HMultiset& a, const HMultiset& b)
{
    HMultiset r = a;
    r.insert(r.end(), b.begin(), b.end());
    return canon(r);
}

inline void require_primitive(const HClass& x)
{
    if (!is_primitive(x)) throw std::invalid_argument("x is not primitive");
}

// coefficients of x in the independent family B, if x lies in its rational span
inline std::optional<std::vector<Rat>> coefficients(const HMultiset& B, const HClass& x)
{
    std::vector<ZVec> cols;
    for (auto& b : B) cols.push_back(to_zvec(b));
    return solve_independent(cols, to_zvec(x));
}

inline bool is_in_H0(const HMultiset& A, const HClass& x)
{
    require_primitive(x);
    if (A.empty() || A.size() > 3 || has_duplicates(A)) return false;
    if (!is_isotropic_direct_summand(A)) return false;
    auto n = coefficients(A, x);
    if (!n) return false;
    for (auto& c : *n)
        if (c <= 0 || denominator(c) != 1) return false;
    return true;
}

inline bool is_in_H0prime(const HMultiset& A, const HClass& x) { return A.size() == 3 && is_in_H0(A, x); }

inline Int n_weight(const HMultiset& A, const HClass& x)
{
    if (!is_in_H0prime(A, x)) throw std::invalid_argument("not a three-element set in H0");
    Int s = 0;
    auto n = *coefficients(A, x);
    for (auto& c : n) s += numerator(c);
    return s;
}

// ---------------- the 102 maximal multisets over A ----------------

struct Superset {
    HMultiset m;
    int family;  // 1..14
};

inline const std::array<int, 14>& superset_family_counts()
{
    static const std::array<int, 14> c{3, 12, 6, 12, 3, 6, 6, 3, 6, 12, 6, 3, 12, 12};
    return c;
}

inline std::vector<Superset> build_supersets(const std::array<HClass, 3>& a)
{
    std::vector<Superset> out;
    std::set<HMultiset> seen;
    const HClass s3 = a[0] + a[1] + a[2];
    std::array<int, 3> p{0, 1, 2};
    std::vector<std::array<int, 3>> perms;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const Int sg[2] = {1, -1};

    for (int fam = 1; fam <= 14; ++fam) {
        std::vector<HMultiset> cand;
        for (auto& q : perms) {
            const HClass &ai = a[q[0]], &aj = a[q[1]], &ak = a[q[2]];
            HMultiset base{a[0], a[1], a[2]};
            auto add = [&](std::vector<HClass> extra) {
                HMultiset m = base;
                m.insert(m.end(), extra.begin(), extra.end());
                cand.push_back(canon(m));
            };
            auto add12 = [&](std::vector<HClass> extra) {
                HMultiset m{ai, ai, aj, ak};
                m.insert(m.end(), extra.begin(), extra.end());
                cand.push_back(canon(m));
            };
            for (auto& e1 : sg)
                for (auto& e2 : sg) {
                    bool first = e2 == 1;  // families with a single sign use only e1
                    switch (fam) {
                    case 1: if (e1 == 1 && first) add({ai + aj, aj + ak, s3}); break;
                    case 2: if (first) add({ai + aj, ak - aj, e1 * (ai + aj - ak)}); break;
                    case 3: if (e1 == 1 && first) add({ai + aj, aj - ak, ai + aj - ak}); break;
                    case 4: add({e1 * (ai - ak), e2 * (aj - ak), ai + aj - ak}); break;
                    case 5: if (e1 == 1 && first) add({ak - ai, ak - aj, ak - ai - aj}); break;
                    case 6: if (e1 == 1 && first) add({ai + aj, aj + ak, ai - ak}); break;
                    case 7: if (e1 == 1 && first) add({ai - aj, aj - ak, ai - ak}); break;
                    case 8: if (e1 == 1 && first) add({ai + aj, ai + aj, s3}); break;
                    case 9: if (first) add({ai + aj, ai + aj, e1 * (ai + aj - ak)}); break;
                    case 10: if (first) add({ai - aj, ai - aj, e1 * (aj + ak - ai)}); break;
                    case 11: if (e1 == 1 && first) add({ai - aj, ai - aj, ai - aj + ak}); break;
                    case 12: if (e1 == 1 && first) add12({ai + aj, ai + ak}); break;
                    case 13: if (first) add12({ai + aj, e1 * (ai - ak)}); break;
                    case 14: add12({e1 * (ai - aj), e2 * (ai - ak)}); break;
                    }
                }
        }
        std::set<HMultiset> fam_seen;
        int count = 0;
        for (auto& m : cand) {
            if (!fam_seen.insert(m).second) continue;
            ++count;
            if (seen.insert(m).second) out.push_back({m, fam});
        }
        if (count != superset_family_counts()[fam - 1])
            throw std::logic_error("family " + std::to_string(fam) + " produced " + std::to_string(count));
    }
    if (out.size() != 102) throw std::logic_error("superset lattice does not have 102 members");
    return out;
}

inline std::array<HClass, 3> as_triple(const HMultiset& A)
{
    if (A.size() != 3) throw std::invalid_argument("expected three classes");
    return {A[0], A[1], A[2]};
}

inline const std::vector<Superset>& supersets_in_H(const HMultiset& A, const HClass& x)
{
    static std::mutex mu;
    static std::map<std::pair<HMultiset, HClass>, std::vector<Superset>> cache;
    auto key = std::make_pair(canon(A), x);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    if (!is_in_H0prime(A, x)) throw std::invalid_argument("A is not in H0'");
    auto v = build_supersets(as_triple(key.first));
    std::lock_guard<std::mutex> lk(mu);
    return cache.emplace(key, std::move(v)).first->second;
}

// ---------------- membership in M relative to a realizable D ----------------

inline bool no_one_sided_relation(const HMultiset& C)
{
    // enumerate sub-multisets: each distinct element taken 0..mult times
    std::vector<std::pair<HClass, int>> el;
    for (auto& c : canon(C)) {
        if (!el.empty() && el.back().first == c) ++el.back().second;
        else el.push_back({c, 1});
    }
    std::vector<int> take(el.size(), 0);
    while (true) {
        size_t i = 0;
        while (i < el.size() && take[i] == el[i].second) take[i++] = 0;
        if (i == el.size()) break;
        ++take[i];
        HClass s{};
        for (size_t j = 0; j < el.size(); ++j)
            if (take[j]) s = s + Int(take[j]) * el[j].first;
        if (is_zero(s)) return false;
    }
    return true;
}

// each element lies in the support of a basic cycle for x inside C
// x = sum c_i B_i with all c_i > 0, B independent; fixed-width Cramer when entries are small
inline std::optional<bool> positive_combination_small(const HMultiset& B, const HClass& x)
{
    const long lim = 1L << 12;
    size_t k = B.size();
    if (k == 0 || k > 3) return std::nullopt;
    for (auto& b : B)
        for (auto& c : b)
            if (abs(c) >= lim) return std::nullopt;
    for (auto& c : x)
        if (abs(c) >= lim) return std::nullopt;
    auto at = [&](size_t i, int r) { return B[i][r].convert_to<long long>(); };
    auto X = [&](int r) { return x[r].convert_to<long long>(); };
    // k x k minor on rows rs, with column `rep` replaced by x when rep < k
    auto minor = [&](const std::array<int, 3>& rs, size_t rep) {
        auto e = [&](size_t row, size_t col) { return col == rep ? X(rs[row]) : at(col, rs[row]); };
        if (k == 1) return e(0, 0);
        if (k == 2) return e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
        return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
               e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
    };
    std::array<int, 3> rs{};
    long long det = 0;
    for (int r0 = 0; r0 < 6 && !det; ++r0)
        for (int r1 = (k > 1 ? r0 + 1 : 6); (k > 1 ? r1 < 6 : r1 == 6) && !det; ++r1)
            for (int r2 = (k > 2 ? r1 + 1 : 6); (k > 2 ? r2 < 6 : r2 == 6) && !det; ++r2) {
                rs = {r0, r1, r2};
                det = minor(rs, 3);
            }
    if (!det) return false;  // dependent
    std::array<long long, 3> num{};
    for (size_t i = 0; i < k; ++i) {
        num[i] = minor(rs, i);
        if (num[i] == 0 || (num[i] > 0) != (det > 0)) return false;
    }
    for (int r = 0; r < 6; ++r) {
        long long s = 0;
        for (size_t i = 0; i < k; ++i) s += num[i] * at(i, r);
        if (s != det * X(r)) return false;
    }
    return true;
}

inline bool every_element_in_basic_cycle(const HMultiset& C, const HClass& x)
{
    HMultiset d = canon(C);
    d.erase(std::unique(d.begin(), d.end()), d.end());
    size_t n = d.size();
    size_t r = rank_of(d);
    std::vector<char> covered(n, 0);
    for (unsigned s = 1; s < (1u << n); ++s) {
        if (size_t(std::popcount(s)) > r) continue;
        bool fresh = false;
        for (size_t i = 0; i < n; ++i) fresh = fresh || (((s >> i) & 1) && !covered[i]);
        if (!fresh) continue;
        HMultiset B;
        for (size_t i = 0; i < n; ++i) if ((s >> i) & 1) B.push_back(d[i]);
        bool pos;
        if (auto q = positive_combination_small(B, x)) {
            pos = *q;
        } else {
            if (rank_of(B) != B.size()) continue;
            auto c = coefficients(B, x);
            if (!c) continue;
            pos = true;
            for (auto& v : *c) pos = pos && v > 0;
        }
        if (!pos) continue;
        for (size_t i = 0; i < n; ++i) if ((s >> i) & 1) covered[i] = 1;
    }
    return std::all_of(covered.begin(), covered.end(), [](char c) { return c; });
}

inline bool is_in_M_relative(const HMultiset& C, const HMultiset& D, const HClass& x)
{
    if (!submultiset(C, D)) throw std::invalid_argument("C is not contained in D");
    if (C.empty()) return false;
    return no_one_sided_relation(C) && every_element_in_basic_cycle(C, x);
}

// {x, c1, x-c1, c2, x-c2} with {x, c1, c2} a Lagrangian basis
inline bool is_x_family(const HMultiset& D, const HClass& x)
{
    if (D.size() != 5 || has_duplicates(D)) return false;
    if (std::find(D.begin(), D.end(), x) == D.end()) return false;
    HMultiset rest;
    for (auto& d : D) if (d != x) rest.push_back(d);
    std::vector<HClass> cs;
    std::vector<char> used(4, 0);
    for (int i = 0; i < 4; ++i) {
        if (used[i]) continue;
        bool paired = false;
        for (int j = i + 1; j < 4 && !paired; ++j)
            if (!used[j] && rest[i] + rest[j] == x) { used[i] = used[j] = 1; cs.push_back(rest[i]); paired = true; }
        if (!paired) return false;
    }
    return is_isotropic_direct_summand({x, cs[0], cs[1]});
}

// three-element subsets of C lying in H0'
inline std::vector<HMultiset> h0prime_triples(const HMultiset& C, const HClass& x)
{
    HMultiset d = canon(C);
    d.erase(std::unique(d.begin(), d.end()), d.end());
    std::vector<HMultiset> out;
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = i + 1; j < d.size(); ++j)
            for (size_t k = j + 1; k < d.size(); ++k) {
                HMultiset A{d[i], d[j], d[k]};
                if (is_in_H0prime(A, x)) out.push_back(A);
            }
    return out;
}

inline bool in_some_superset(const HMultiset& C, const HMultiset& A, const HClass& x)
{
    for (auto& s : supersets_in_H(A, x))
        if (submultiset(C, s.m)) return true;
    return false;
}

// certified membership in H: via an H0' triple and its 102 supersets, or the x-family
enum class Certificate { Superset, XFamily, None };

inline Certificate certify(const HMultiset& C, const HClass& x)
{
    auto T = h0prime_triples(C, x);
    for (auto& A : T)
        if (in_some_superset(C, A, x)) return Certificate::Superset;
    if (!T.empty()) return Certificate::None;
    if (is_x_family(C, x)) return Certificate::XFamily;
    if (C.size() == 4 && std::find(C.begin(), C.end(), x) == C.end() && is_x_family(with(C, x), x))
        return Certificate::XFamily;
    return Certificate::None;
}

// ---------------- taxonomy ----------------

enum class Taxon { H0, H0prime, H1_type1, H1_type2, H2prime, BoundingPair, Other };

inline const char* taxon_name(Taxon t, long dim = -1)
{
    switch (t) {
    case Taxon::H0: return "H0";
    case Taxon::H0prime: return "H0prime";
    case Taxon::H1_type1: return "H1_type1";
    case Taxon::H1_type2: return "H1_type2";
    case Taxon::H2prime: return "H2prime";
    case Taxon::BoundingPair: return dim == 2 ? "H2_boundingpair" : "boundingpair";
    default: return "other";
    }
}

struct CellClass {
    HMultiset m;
    Taxon tag = Taxon::Other;
    std::optional<HClass> special;    // H1_type2
    std::optional<HClass> principal;  // H2prime
    std::optional<HClass> doubled;    // bounding pair class
    bool three_one = false;           // H1_type1: c0 = c1 + c2 + c3 (else c0 + c3 = c1 + c2)
    std::vector<Int> relation;        // H1: primitive relation, in the order of m
    long dim = 0;
};

[[noreturn]] inline void outside_taxonomy(const HMultiset& C)
{
    throw std::invalid_argument("outside characterized taxonomy: " + to_string(C));
}

inline CellClass classify(const HMultiset& C0)
{
    CellClass cc;
    cc.m = canon(C0);
    const auto& C = cc.m;
    size_t rk = rank_of(C);
    cc.dim = long(C.size()) - long(rk);
    if (auto it = std::adjacent_find(C.begin(), C.end()); it != C.end()) {
        // a doubled element: the two copies form a bounding pair
        for (auto j = it + 2; j < C.end(); ++j)
            if (*j == *it) outside_taxonomy(C);
        auto rest = std::adjacent_find(it + 2, C.end());
        if (rest != C.end()) outside_taxonomy(C);
        cc.tag = Taxon::BoundingPair;
        cc.doubled = *it;
        return cc;
    }
    if (rk == C.size()) {
        cc.tag = C.size() == 3 ? Taxon::H0prime : Taxon::H0;
        return cc;
    }
    if (rk != 3) outside_taxonomy(C);
    auto rel = relation_lattice(C);
    if (C.size() == 4) {
        auto& r = rel.at(0);
        int zeros = 0, pos = 0;
        for (auto& v : r) {
            if (abs(v) > 1) outside_taxonomy(C);
            if (v == 0) ++zeros;
            if (v > 0) ++pos;
        }
        cc.relation.assign(r.begin(), r.end());
        if (zeros == 0) {
            cc.tag = Taxon::H1_type1;
            cc.three_one = pos != 2;
        } else if (zeros == 1) {
            cc.tag = Taxon::H1_type2;
            for (size_t i = 0; i < 4; ++i) if (r[i] == 0) cc.special = C[i];
        } else {
            outside_taxonomy(C);
        }
        return cc;
    }
    if (C.size() == 5) {
        // weight-3 vectors with entries +-1 in the rank-2 relation lattice
        std::set<std::vector<int>> supports;
        for (int s = -2; s <= 2; ++s)
            for (int t = -2; t <= 2; ++t) {
                if (!s && !t) continue;
                std::vector<int> sup;
                bool unit = true;
                for (size_t i = 0; i < 5; ++i) {
                    Int v = s * rel[0][i] + t * rel[1][i];
                    if (v != 0) { sup.push_back(int(i)); unit = unit && abs(v) == 1; }
                }
                if (unit && sup.size() == 3) supports.insert(sup);
            }
        if (supports.size() != 2) outside_taxonomy(C);
        auto& A = *supports.begin();
        auto& B = *std::next(supports.begin());
        std::vector<int> common;
        std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(common));
        if (common.size() != 1) outside_taxonomy(C);
        cc.tag = Taxon::H2prime;
        cc.principal = C[common[0]];
        return cc;
    }
    outside_taxonomy(C);
}

// For a 4-element type-1 set: c0 and the others, arranged so that the relation reads
// c0 = c1 + c2 + c3 (three_one) or c0 + c3 = c1 + c2.
inline std::array<HClass, 4> type_one_labels(const CellClass& cc)
{
    if (cc.tag != Taxon::H1_type1) throw std::invalid_argument("not a type-1 set");
    auto r = cc.relation;
    int pos = 0;
    for (auto& v : r) if (v > 0) ++pos;
    if (pos > 2 || (pos == 2 && r[0] < 0)) for (auto& v : r) v = -v;  // normalize signs
    pos = 0;
    for (auto& v : r) if (v > 0) ++pos;
    std::vector<HClass> P, N;
    for (size_t i = 0; i < 4; ++i) (r[i] > 0 ? P : N).push_back(cc.m[i]);
    if (cc.three_one) {  // one positive: P0 = N0 + N1 + N2 after flipping sign of relation
        return {P[0], N[0], N[1], N[2]};
    }
    return {P[0], N[0], N[1], P[1]};
}

// ---------------- faces ----------------

struct LabelFace {
    size_t removed;  // index into the sorted D
    HMultiset m;
};

inline std::vector<LabelFace> label_faces(const HMultiset& D0, const HClass& x)
{
    HMultiset D = canon(D0);
    long dim = cell_dimension(D);
    std::vector<LabelFace> out;
    for (size_t j = 0; j < D.size(); ++j) {
        HMultiset f = D;
        f.erase(f.begin() + long(j));
        if (f.empty() || cell_dimension(f) != dim - 1) continue;
        if (!is_in_M_relative(f, D, x)) continue;
        out.push_back({j, f});
    }
    return out;
}

inline std::vector<CellClass> faces(const HMultiset& D, const HClass& x)
{
    if (certify(D, x) == Certificate::None) throw std::invalid_argument("uncertified cell: " + to_string(D));
    std::set<HMultiset> seen;
    std::vector<CellClass> out;
    for (auto& f : label_faces(D, x))
        if (seen.insert(f.m).second) out.push_back(classify(f.m));
    return out;
}

// all H2' sets containing A (or a set C containing some H0' triple) inside the superset lattice
inline std::vector<HMultiset> h2prime_containing(const HMultiset& C0, const HClass& x)
{
    static std::mutex mu;
    static std::map<std::pair<HMultiset, HClass>, std::vector<HMultiset>> cache;
    HMultiset C = canon(C0);
    auto key = std::make_pair(C, x);
    {
        std::lock_guard<std::mutex> lk(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto T = h0prime_triples(C, x);
    if (T.empty()) throw std::invalid_argument("input contains no H0' triple");
    std::set<HMultiset> found;
    for (auto& s : supersets_in_H(T.front(), x)) {
        if (!submultiset(C, s.m)) continue;
        HMultiset d = s.m;
        d.erase(std::unique(d.begin(), d.end()), d.end());
        if (d.size() < 5) continue;
        for (size_t skip = 0; skip < d.size(); ++skip) {
            HMultiset e;
            for (size_t i = 0; i < d.size(); ++i) if (i != skip || d.size() == 5) e.push_back(d[i]);
            if (e.size() != 5 || !submultiset(C, e)) continue;
            if (rank_of(e) != 3) continue;
            try {
                if (classify(e).tag == Taxon::H2prime) found.insert(canon(e));
            } catch (const std::invalid_argument&) {
            }
        }
    }
    std::vector<HMultiset> out(found.begin(), found.end());
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(key, out);
    return out;
}

}  // namespace torelli
