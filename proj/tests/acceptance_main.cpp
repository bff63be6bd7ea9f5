#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <vector>

namespace {

struct Entry {
    int number;
    const char* title;
    acceptance::Result (*run)();
    double budget_seconds; // 0 = untimed
};

const Entry kEntries[] = {
    {1, "power-iteration operator norm matches dense decomposition", acceptance::criterion1,
     10.0},
    {2, "Fourier identities and dual pushforward consistency", acceptance::criterion2, 30.0},
    {3, "L4 averaging inequality suite", acceptance::criterion3, 60.0},
    {4, "origin mass bound and Fourier nonconstancy disjunction", acceptance::criterion4, 60.0},
    {5, "smoothing construction and norm decay pipeline", acceptance::criterion5, 300.0},
    {6, "product growth certificates and triple-product inequality", acceptance::criterion6,
     300.0},
    {7, "trace identity and eigenvalue multiplicities", acceptance::criterion7, 0.0},
    {8, "mixing distance against the spectral bound", acceptance::criterion8, 30.0},
    {9, "gap-ratio scan over small primes", acceptance::criterion9, 1800.0},
    {10, "same-seed runs produce byte-identical files", acceptance::criterion10, 0.0},
};

} // namespace

int main(int argc, char** argv) {
    // Optional arguments select a subset of criteria by number.
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const Entry& e : kEntries) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), e.number) == wanted.end())
            continue;
        auto start = std::chrono::steady_clock::now();
        acceptance::Result r;
        try {
            r = e.run();
        } catch (const std::exception& ex) {
            r.pass = false;
            r.note(std::string("unhandled exception: ") + ex.what());
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (e.budget_seconds > 0 && secs > e.budget_seconds) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "exceeded %.0f s budget", e.budget_seconds);
            r.pass = false;
            r.note(buf);
        }
        if (!r.pass) ++failures;
        std::printf("[%s] %2d %s (%.2f s)%s%s\n", r.pass ? "PASS" : "FAIL", e.number, e.title,
                    secs, r.detail.empty() ? "" : " -- ", r.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
