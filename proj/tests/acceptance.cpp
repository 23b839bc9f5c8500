// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

#include <cstdio>

#include "ramificant/acceptance.hpp"

int main() {
    int failures = 0;
    for (const auto& r : ramificant::acceptance::run_all()) {
        std::printf("[%s] %2d %-40s %8.3fs (limit %5.0fs)  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.seconds, r.time_limit, r.detail.c_str());
        if (!r.passed) ++failures;
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
