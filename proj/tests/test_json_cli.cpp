#include "torelli/json_io.hpp"
#include "torelli/suites.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sys/wait.h>

using namespace torelli;

namespace {

struct Run {
    int code;
    std::string out;
};

Run cli(const std::string& args)
{
    std::string cmd = std::string(TORELLI_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) throw std::runtime_error("popen failed");
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string tmpfile_with(const std::string& name, const json& j)
{
    std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << j.dump();
    return path;
}

const char* STD_A = "'[[1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,1,0,0,0]]'";

}  // namespace

TEST(Json, ClassesKeepLargeIntegersExact)
{
    HClass h = hclass(1, -2, 3, 0, 0, 0);
    h[5] = Int("123456789012345678901234567890");
    auto j = to_json(h);
    EXPECT_TRUE(j[5].is_string());
    EXPECT_EQ(hclass_from_json(j), h);
    EXPECT_THROW(hclass_from_json(json::array({1, 2, 3})), std::invalid_argument);
}

TEST(Json, GeneratorsRoundTrip)
{
    auto s = sep_twist({{basis_a(1), basis_b(1)}});
    s.exponent = -2;
    auto b = bp_twist(basis_a(2), {{basis_a(1), basis_b(1)}}, "p", "q", 3);
    b.alpha = basis_a(2);
    auto i = involution({{m2a(1), m2a(2), m2a(3)}, {m2b(1), m2b(2), m2b(3)}});
    for (auto& g : {s, b, i}) {
        auto back = generator_from_json(to_json(g));
        EXPECT_EQ(to_json(back), to_json(g));
        if (g.kind != GenKind::Involution) EXPECT_EQ(sigma(back), sigma(g));
    }
    EXPECT_THROW(generator_from_json(json{{"kind", "twist"}}), std::invalid_argument);
    json bad = to_json(s);
    bad["side"][0]["b"] = "100000";  // a1 . a1 = 0
    EXPECT_THROW(generator_from_json(bad), std::invalid_argument);
}

TEST(Json, WordsAndDecompositionsRoundTrip)
{
    auto t = type_one_generators(standard_frame());
    GeneratorWord w{t.z1, t.z2, t.z1z3};
    EXPECT_EQ(to_json(word_from_json(to_json(w))), to_json(w));

    TypeOneWord z = zword({{1, 2}, {3, -1}});
    EXPECT_EQ(to_json(type_one_from_json(to_json(z))), to_json(z));

    auto d = canonical_decomposition(zword({{1, -1}, {2, -1}, {1, 1}, {2, 1}}));
    auto d2 = decomposition_from_json(to_json(d));
    EXPECT_EQ(psi_M(d2), psi_M(d));
    EXPECT_EQ(to_json(d2), to_json(d));

    FiveCurveWord f{{0, 1}, {3, -2}};
    EXPECT_EQ(to_json(five_from_json(to_json(f))), to_json(f));
}

TEST(Json, FormsValidateAgainstX)
{
    HClass x = basis_a(1) + basis_a(2) + basis_a(3);
    std::mt19937_64 rng(2);
    auto f = random_form(x, rng);
    auto g = form_from_json(to_json(f), x);
    EXPECT_EQ(to_json(g), to_json(f));
    EXPECT_THROW(form_from_json(to_json(f), basis_a(1)), std::invalid_argument);
}

TEST(Json, SuiteOutputIsDeterministic)
{
    auto a = to_json(run_suite("theta-pairing", 7)).dump();
    auto b = to_json(run_suite("theta-pairing", 7)).dump();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.find("seconds"), std::string::npos);
}

TEST(Cli, EnumerateSupersets)
{
    auto r = cli(std::string("--format json enumerate supersets --A ") + STD_A);
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["count"], 102);
    EXPECT_EQ(j["items"].size(), 102u);
    EXPECT_EQ(j["x"], json::parse("[1,1,1,0,0,0]"));
}

TEST(Cli, VerifySuitesPassAndAreByteIdentical)
{
    auto a = cli("verify boolalg-dims --format json --seed 3");
    auto b = cli("--format json --seed 3 verify boolalg-dims");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_TRUE(json::parse(a.out)["ok"].get<bool>());
    EXPECT_EQ(cli("verify theta-pairing").code, 0);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(cli("verify no-such-suite").code, 2);
    EXPECT_EQ(cli("--bogus verify all").code, 2);
    EXPECT_EQ(cli("enumerate supersets --A '[[1,0]'").code, 2);                       // bad JSON
    EXPECT_EQ(cli("enumerate supersets --A '[[2,0,0,0,0,0],[0,1,0,0,0,0]]'").code, 2);  // not three classes in H0'
    EXPECT_EQ(cli("descent sigma").code, 2);
    EXPECT_EQ(cli("--help").code, 0);
}

TEST(Cli, EvalPsiAndSigma)
{
    auto d = canonical_decomposition(zword({{1, 2}}));
    auto path = tmpfile_with("dec.json", to_json(d));
    auto r = cli("--format json eval psi --decomposition " + path);
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["psi"], 1);

    auto s = sep_twist({{basis_a(1), basis_b(1)}});
    auto wpath = tmpfile_with("word.json", to_json(GeneratorWord{s, s}));
    r = cli("--format json eval sigma --word " + wpath);
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(json::parse(r.out)["in_C"].get<bool>());
}

TEST(Cli, DescentKernelAndCaseTwo)
{
    auto r = cli("--format json --bound 6 descent kernel --system lambda");
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["kernel_dim"], 0);
    r = cli("--format json descent case2 --a1 '[1,0,0,0,0,0]' --a2 '[0,1,0,0,0,0]' --c '[0,0,1,0,0,0]'");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(json::parse(r.out)["ok"].get<bool>());
}

TEST(Cli, UserSuppliedInstances)
{
    HMultiset A{basis_a(1), basis_a(2), basis_a(3)};
    HClass x = basis_a(1) + basis_a(2) + basis_a(3);
    json arr = json::array();
    for (auto& D : two_cells_over(A, x))
        for (auto& I : instances_for_cell(D, x)) {
            auto back = instance_from_json(to_json(I), x);
            EXPECT_EQ(to_json(back), to_json(I));
            if (arr.size() < 6) arr.push_back(to_json(I));
        }
    auto path = tmpfile_with("inst.json", arr);
    auto r = cli("--format json verify d1-identities --instances " + path + " --tables 5");
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(json::parse(r.out)["ok"].get<bool>());
    EXPECT_EQ(cli("verify lattice --instances " + path).code, 2);
}
