#pragma once
// JSON schemas for the library's data (see README for the layouts)

#include "chainlab.hpp"
#include "descent.hpp"

#include <json.hpp>

namespace torelli {

using json = nlohmann::ordered_json;

// ---- integers: numbers when they fit, decimal strings otherwise ----

inline json int_to_json(const Int& v)
{
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return v.convert_to<long long>();
    return v.str();
}

inline Int int_from_json(const json& j)
{
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("expected an integer, got " + j.dump());
}

inline json to_json(const HClass& h)
{
    json a = json::array();
    for (auto& c : h) a.push_back(int_to_json(c));
    return a;
}

inline HClass hclass_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 6) throw std::invalid_argument("a homology class is an array of 6 integers");
    HClass h;
    for (int i = 0; i < 6; ++i) h[i] = int_from_json(j[i]);
    return h;
}

inline json to_json(const HMultiset& m)
{
    json a = json::array();
    for (auto& h : m) a.push_back(to_json(h));
    return a;
}

inline HMultiset multiset_from_json(const json& j)
{
    if (!j.is_array()) throw std::invalid_argument("a multiset is an array of classes");
    HMultiset m;
    for (auto& e : j) m.push_back(hclass_from_json(e));
    return m;
}

inline Mod2Class mod2_from_json(const json& j)
{
    if (j.is_string()) return from_bits(j.get<std::string>());
    return mod2(hclass_from_json(j));  // an integral class also names its reduction
}

inline json to_json(const SymplecticBasisZ2& B)
{
    json a = json::array(), b = json::array();
    for (int i = 0; i < 3; ++i) { a.push_back(to_bits(B.a[i])); b.push_back(to_bits(B.b[i])); }
    return {{"a", a}, {"b", b}};
}

inline SymplecticBasisZ2 basis2_from_json(const json& j)
{
    SymplecticBasisZ2 B;
    for (int i = 0; i < 3; ++i) {
        B.a[i] = mod2_from_json(j.at("a").at(i));
        B.b[i] = mod2_from_json(j.at("b").at(i));
    }
    return B;
}

inline json to_json(const FormFamily& F)
{
    json w = json::array();
    for (auto& f : F.w) w.push_back(to_bits(f.v));
    return {{"forms", w}, {"basis", to_json(F.basis)}};
}

// ---- curves and generators ----

inline json to_json(const Curve& c) { return {{"id", c.id}, {"class", to_json(c.cls)}}; }

inline Curve curve_from_json(const json& j)
{
    if (j.is_array()) return {"", hclass_from_json(j)};
    return {j.value("id", std::string()), hclass_from_json(j.at("class"))};
}

inline json to_json(const SymbolicGenerator& g)
{
    json j{{"kind", kind_name(g.kind)}, {"exponent", g.exponent}};
    if (!g.name.empty()) j["name"] = g.name;
    if (g.kind == GenKind::Involution) {
        j["ref"] = to_json(g.ref);
        return j;
    }
    json side = json::array();
    for (auto& p : g.side) side.push_back({{"a", to_bits(p.a)}, {"b", to_bits(p.b)}});
    j["side"] = side;
    if (!g.int_side.empty()) {
        json is = json::array();
        for (auto& p : g.int_side) is.push_back({{"a", to_json(p.a)}, {"b", to_json(p.b)}});
        j["int_side"] = is;
    }
    if (g.kind == GenKind::BPTwist) {
        if (g.c) j["c"] = to_json(*g.c);
        else j["c"] = to_bits(g.c2);
        j["first"] = g.first;
        j["second"] = g.second;
    }
    if (!g.side_curves.empty()) j["side_curves"] = g.side_curves;
    if (!g.other_curves.empty()) j["other_curves"] = g.other_curves;
    if (g.alpha) j["alpha"] = to_json(*g.alpha);
    return j;
}

inline SymbolicGenerator generator_from_json(const json& j)
{
    SymbolicGenerator g;
    auto kind = j.at("kind").get<std::string>();
    if (kind == "sep") g.kind = GenKind::SepTwist;
    else if (kind == "bp") g.kind = GenKind::BPTwist;
    else if (kind == "involution") g.kind = GenKind::Involution;
    else throw std::invalid_argument("unknown generator kind: " + kind);
    g.exponent = j.value("exponent", 1L);
    g.name = j.value("name", std::string());
    if (g.kind == GenKind::Involution) {
        if (j.contains("ref")) g.ref = basis2_from_json(j["ref"]);
        validate(g);
        return g;
    }
    if (j.contains("int_side")) {
        for (auto& p : j["int_side"]) g.int_side.push_back({hclass_from_json(p.at("a")), hclass_from_json(p.at("b"))});
        for (auto& p : g.int_side) g.side.push_back({mod2(p.a), mod2(p.b)});
    }
    if (j.contains("side")) {
        std::vector<SidePair> s;
        for (auto& p : j["side"]) s.push_back({mod2_from_json(p.at("a")), mod2_from_json(p.at("b"))});
        if (g.int_side.empty()) g.side = s;
        else if (s.size() != g.side.size()) throw std::invalid_argument("side and int_side disagree");
        else
            for (size_t i = 0; i < s.size(); ++i)
                if (s[i].a != g.side[i].a || s[i].b != g.side[i].b)
                    throw std::invalid_argument("integral side disagrees with mod-2 side");
    }
    if (g.kind == GenKind::BPTwist) {
        auto& c = j.at("c");
        if (c.is_string()) g.c2 = from_bits(c.get<std::string>());
        else { g.c = hclass_from_json(c); g.c2 = mod2(*g.c); }
        g.first = j.value("first", std::string());
        g.second = j.value("second", std::string());
    }
    if (j.contains("side_curves")) g.side_curves = j["side_curves"].get<std::vector<std::string>>();
    if (j.contains("other_curves")) g.other_curves = j["other_curves"].get<std::vector<std::string>>();
    if (j.contains("alpha")) g.alpha = hclass_from_json(j["alpha"]);
    validate(g);
    return g;
}

inline json to_json(const GeneratorWord& w)
{
    json a = json::array();
    for (auto& g : w) a.push_back(to_json(g));
    return a;
}

inline GeneratorWord word_from_json(const json& j)
{
    if (!j.is_array()) throw std::invalid_argument("a generator word is an array of generators");
    GeneratorWord w;
    for (auto& g : j) w.push_back(generator_from_json(g));
    return w;
}

// ---- stabilizer words ----

inline TypeOneWord type_one_from_json(const json& j)
{
    TypeOneWord w;
    auto al = j.value("alphabet", std::string("z"));
    if (al == "z") w.alphabet = TypeOneWord::Z;
    else if (al == "uv") w.alphabet = TypeOneWord::UV;
    else throw std::invalid_argument("alphabet must be z or uv");
    for (auto& l : j.at("letters")) {
        Letter L{l.at("gen").get<int>(), l.value("exp", 1L)};
        if (L.gen < 1 || L.gen > 4) throw std::invalid_argument("letter index must be 1..4");
        w.letters.push_back(L);
    }
    return w;
}

inline json to_json(const TypeOneWord& w)
{
    json ls = json::array();
    for (auto& l : w.letters) ls.push_back({{"gen", l.gen}, {"exp", l.exp}});
    return {{"alphabet", w.alphabet == TypeOneWord::Z ? "z" : "uv"}, {"letters", ls}};
}

inline CommSqDecomposition decomposition_from_json(const json& j)
{
    if (!j.is_array()) throw std::invalid_argument("a decomposition is an array of items");
    CommSqDecomposition d;
    for (auto& it : j) {
        CSItem c;
        auto k = it.at("kind").get<std::string>();
        if (k == "comm") {
            c.kind = CSItem::Comm;
            c.h2 = type_one_from_json(it.at("h2"));
        } else if (k == "sq") {
            c.kind = CSItem::Sq;
        } else {
            throw std::invalid_argument("item kind must be comm or sq");
        }
        c.h1 = type_one_from_json(it.at("h1"));
        if (it.contains("conj")) c.conj = type_one_from_json(it["conj"]);
        d.push_back(c);
    }
    return d;
}

inline json to_json(const CommSqDecomposition& d)
{
    json a = json::array();
    for (auto& c : d) {
        json it{{"kind", c.kind == CSItem::Comm ? "comm" : "sq"}, {"h1", to_json(c.h1)}};
        if (c.kind == CSItem::Comm) it["h2"] = to_json(c.h2);
        if (c.conj) it["conj"] = to_json(*c.conj);
        a.push_back(it);
    }
    return a;
}

inline FiveCurveWord five_from_json(const json& j)
{
    FiveCurveWord w;
    for (auto& l : j) w.push_back({l.at("k").get<long>(), l.value("exp", 1L)});
    return w;
}

inline json to_json(const FiveCurveWord& w)
{
    json a = json::array();
    for (auto& l : w) a.push_back({{"k", l.k}, {"exp", l.exp}});
    return a;
}

// ---- linear forms ----

inline json to_json(const FLinearForm& f)
{
    json a = json::array();
    for (auto& v : f.fj) {
        json r = json::array();
        for (auto& c : v) r.push_back(int_to_json(c));
        a.push_back(r);
    }
    return {{"functionals", a}};
}

inline FLinearForm form_from_json(const json& j, const HClass& x)
{
    auto& a = j.is_array() ? j : j.at("functionals");
    if (a.size() != 5) throw std::invalid_argument("f needs 5 functionals");
    FLinearForm f;
    for (int k = 0; k < 5; ++k) {
        if (a[k].size() != 6) throw std::invalid_argument("functional must have 6 coefficients");
        f.fj[k] = ZVec(6);
        for (int i = 0; i < 6; ++i) f.fj[k][i] = int_from_json(a[k][i]);
    }
    validate(f, x);
    return f;
}

// ---- chains and instances ----

inline json to_json(const LabeledTerm& t)
{
    json cs = json::array();
    for (auto& c : t.curves) cs.push_back(to_json(c));
    json j{{"cell", to_json(t.cell)}, {"curves", cs}};
    if (t.orbit) j["orbit"] = *t.orbit;
    j["orientation"] = t.orientation;
    j["payload"] = to_json(t.payload);
    j["coefficient"] = t.coefficient;
    return j;
}

inline json to_json(const E1Chain& y)
{
    json a = json::array();
    for (auto& t : y) a.push_back(to_json(t));
    return a;
}

inline std::vector<Curve> curves_from_json(const json& j)
{
    std::vector<Curve> cs;
    for (auto& c : j) cs.push_back(curve_from_json(c));
    return cs;
}

inline LabeledTerm term_from_json(const json& j)
{
    LabeledTerm t;
    t.curves = curves_from_json(j.at("curves"));
    t.cell = j.contains("cell") ? multiset_from_json(j["cell"]) : HMultiset{};
    if (!j.contains("cell"))
        for (auto& c : t.curves) t.cell.push_back(c.cls);
    if (j.contains("orbit")) t.orbit = j["orbit"].get<int>();
    t.orientation = j.value("orientation", 1);
    if (j.contains("payload")) t.payload = word_from_json(j["payload"]);
    t.coefficient = j.value("coefficient", 1L);
    check_term(t);
    return t;
}

inline E1Chain chain_from_json(const json& j)
{
    E1Chain y;
    for (auto& t : j) y.push_back(term_from_json(t));
    return y;
}

// {"D": [...], "curves": [...] (optional), "h": word, "x": class, "label": ...}
inline IdentityInstance instance_from_json(const json& j, const HClass& default_x)
{
    IdentityInstance I;
    HMultiset D = multiset_from_json(j.at("D"));
    std::vector<Curve> cs = j.contains("curves") ? curves_from_json(j["curves"]) : name_components(canon(D));
    if (cs.size() != D.size()) throw std::invalid_argument("curves do not match D");
    std::vector<size_t> ord(cs.size());
    for (size_t i = 0; i < ord.size(); ++i) ord[i] = i;
    std::stable_sort(ord.begin(), ord.end(), [&](size_t a, size_t b) { return cs[a].cls < cs[b].cls; });
    for (auto i : ord) { I.D.push_back(cs[i].cls); I.curves.push_back(cs[i]); }
    if (canon(D) != I.D) throw std::invalid_argument("curve classes disagree with D");
    I.h = word_from_json(j.at("h"));
    I.x = j.contains("x") ? hclass_from_json(j["x"]) : default_x;
    I.label = j.value("label", std::string());
    return I;
}

inline json to_json(const IdentityInstance& I)
{
    json cs = json::array();
    for (auto& c : I.curves) cs.push_back(to_json(c));
    return {{"D", to_json(I.D)}, {"curves", cs}, {"h", to_json(I.h)}, {"x", to_json(I.x)}, {"label", I.label}};
}

inline json to_json(const IdentityReport& r)
{
    json ls = json::array();
    for (auto& l : r.lines) {
        json j{{"identity", l.identity}, {"C", to_json(l.C)}};
        if (l.c) j["c"] = to_json(*l.c);
        j["lhs"] = l.lhs;
        j["rhs"] = l.rhs;
        j["ok"] = l.ok;
        if (!l.note.empty()) j["note"] = l.note;
        ls.push_back(j);
    }
    return {{"ok", r.ok()}, {"lines", ls}};
}

// ---- reports ----

inline json to_json(const DerivationReport& r)
{
    return {{"name", r.name}, {"ok", r.ok}, {"failures", r.failures}, {"trace", r.trace}};
}

inline json to_json(const KernelReport& k)
{
    return {{"system", k.system},
            {"bound", k.bound},
            {"box", k.box},
            {"variables", k.variables},
            {"equations", k.equations},
            {"rank", k.rank},
            {"kernel_dim", k.kernel_dim},
            {"value_dim", k.value_dim},
            {"honest_equations", k.honest_equations},
            {"dropped_equations", k.dropped},
            {"honest_kernel_dim", k.honest_kernel_dim},
            {"covered", k.covered},
            {"covered_kernel_dim", k.covered_kernel_dim},
            {"skipped_faces", k.skipped_faces}};
}

}  // namespace torelli
