// SPDX-License-Identifier: Apache-2.0
//
// Throughput comparison of the census engines: the table-driven kernel at
// several worker counts against the straight-line reference counter.

#include "dpc/census.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

using namespace dpc;

namespace {

double run_kernel(const census::SearchSpace& space, int workers, long long* scanned) {
    census::RunOptions opt;
    opt.mode = census::Mode::projective;
    opt.early_exit = 1;
    opt.workers = workers;
    auto t0 = std::chrono::steady_clock::now();
    census::CensusReport r = census::run_census(space, opt);
    *scanned = r.scanned;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    int max_workers = omp_get_max_threads();
    if (argc > 1) max_workers = std::stoi(argv[1]);

    const gf::Field& f4 = gf::field(4);
    census::SearchSpace space =
        census::SearchSpace::over(fam::reduced_family(fam::builtin_family("DP1_CHAR2"), f4), f4);
    // pin down to 4^9 surfaces so a bench run stays in seconds
    int pinned = 0;
    for (size_t i = 0; i < space.pins.size() && pinned < 7; ++i, ++pinned) space.pins[i] = 1;

    std::printf("space: %s, %lld surfaces, projective early-exit 1\n",
                space.family.id.c_str(), space.total());

    long long scanned = 0;
    double serial = run_kernel(space, 1, &scanned);
    std::printf("%-22s %10.3f s  %12.0f surfaces/s\n", "kernel, 1 worker", serial,
                scanned / serial);
    for (int w = 2; w <= max_workers; w *= 2) {
        double t = run_kernel(space, w, &scanned);
        std::printf("kernel, %-2d workers     %10.3f s  %12.0f surfaces/s  (x%.2f)\n", w, t,
                    scanned / t, serial / t);
    }

    // the reference engine re-evaluates every monomial per point; give it a
    // smaller slice and scale
    census::SearchSpace small = space;
    for (size_t i = 0; i < small.pins.size(); ++i)
        if (!small.pins[i] && small.total() > 4096) small.pins[i] = 1;
    auto t0 = std::chrono::steady_clock::now();
    census::CensusReport ref = census::run_census_reference(small, census::Mode::projective, 1);
    double tref = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%-22s %10.3f s  %12.0f surfaces/s  (on %lld surfaces)\n", "reference, serial",
                tref, ref.scanned / tref, ref.scanned);
    return 0;
}
