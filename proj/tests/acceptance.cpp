#include "torelli/suites.hpp"

#include <cstdio>

// one line per criterion, in registry order
int main(int argc, char** argv)
{
    uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 1;
    int n = 0, failed = 0;
    for (auto& e : torelli::suites()) {
        auto r = torelli::run_suite(e.name, seed);
        ++n;
        std::string detail;
        for (auto& c : r.checks)
            if (!c.ok) { detail = c.name + ": " + c.detail; break; }
        if (detail.empty()) detail = std::to_string(r.checks.size()) + " checks";
        std::printf("criterion %d: %s %s (%.1f s) - %s\n", n, r.ok() ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                    detail.c_str());
        failed += !r.ok();
    }
    std::printf("%d of %d criteria passed\n", n - failed, n);
    return failed ? 1 : 0;
}
