// Runs every acceptance criterion and prints one PASS/FAIL line per criterion,
// followed by the failing checks and notes of that criterion.
#include "kappa/suite.hpp"

#include <chrono>
#include <cstdio>
#include <exception>

using namespace kappa;

int main() {
    SuiteOptions opt;
    int failed = 0;
    for (auto& c : acceptance_suite()) {
        auto t0 = std::chrono::steady_clock::now();
        Report r;
        std::string error;
        try {
            r = c.run(opt);
        } catch (const std::exception& e) {
            error = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = error.empty() && r.ok();
        failed += !ok;
        std::printf("%s criterion %d: %s (%zu checks, %zu failed, %.1f s)\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(),
                    r.checks.size(), r.failures(), secs);
        if (!error.empty()) std::printf("    error: %s\n", error.c_str());
        for (auto& x : r.checks)
            if (!x.ok) std::printf("    failed: %s %s\n", x.name.c_str(), x.detail.c_str());
        for (auto& n : r.notes) std::printf("    note: %s\n", n.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, acceptance_suite().size());
    return failed ? 1 : 0;
}
