// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: runs every registered claim at its frozen expected
// values and prints one PASS/FAIL line per criterion. Expected values come
// from the published search results; where the exhaustive engine disagrees,
// the criterion fails loudly with the evidence in hand — the brute force is
// the authority, never the printed number.
//
// Usage: acceptance [claim-id]   (no argument runs the full list)
//        acceptance --list

#include "dpc/claims.hpp"

#include <omp.h>

#include <cstdio>
#include <cstring>
#include <string>

int main(int argc, char** argv) {
    using namespace dpc::claims;

    if (argc > 1 && std::strcmp(argv[1], "--list") == 0) {
        for (const Claim& c : registry()) std::printf("%s\n", c.id.c_str());
        return 0;
    }

    std::string only = argc > 1 ? argv[1] : "";
    const int workers = omp_get_max_threads();
    int index = 0, failures = 0, ran = 0;
    double total = 0;
    for (const Claim& c : registry()) {
        ++index;
        if (!only.empty() && c.id != only) continue;
        ++ran;
        Outcome o;
        try {
            o = c.run(workers);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        total += o.seconds;
        if (!o.pass) ++failures;
        std::printf("[%s] %2d. %-24s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", index,
                    c.id.c_str(), o.detail.c_str(), o.seconds);
        std::fflush(stdout);
    }
    if (ran == 0) {
        std::fprintf(stderr, "unknown claim id: %s\n", only.c_str());
        return 2;
    }
    if (only.empty())
        std::printf("%d/%d criteria passed (%.1f s total)\n", ran - failures, ran, total);
    return failures == 0 ? 0 : 1;
}
