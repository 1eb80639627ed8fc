// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dpc/families.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace dpc::picard {

/// A divisor class d*L - sum m_i E_i in the Picard lattice of a blowup of
/// r points, with the intersection form diag(1, -1, ..., -1).
struct PicClass {
    int d = 0;
    std::vector<int> m;

    bool operator==(const PicClass& o) const { return d == o.d && m == o.m; }
    bool operator<(const PicClass& o) const { return std::tie(d, m) < std::tie(o.d, o.m); }
};

int pair_form(const PicClass& a, const PicClass& b); // d d' - sum m_i m_i'
int anticanonical_degree(const PicClass& c);         // 3d - sum m_i

/// All exceptional classes for r blown-up points: pair(C,C) = -1 and
/// anticanonical degree 1 with d in [0,7], m_i >= -1. Counts match
/// {0,1,3,6,10,16,27,56,240} for r = 0..8.
std::vector<PicClass> exceptional_classes(int r);

/// N = q^2 + q Tr F* + 1.
long long weil_count(long long q, long long trace);

/// Smallest trace of a Weyl-group element acting on the Picard lattice of a
/// del Pezzo surface of the given degree: -7 for d=1, -6 for d=2 (the -1
/// element of W(E8), W(E7)) and -2 for d=3 (from the W(E6) class table).
int min_trace_on_pic(int degree);

/// All prime powers q admitting an integer trace T with
/// min_trace_on_pic(degree) <= T <= 10 - degree and q^2 + qT + 1 = N.
std::vector<int> candidate_fields(int degree, long long target_points);

/// The blowup row map from the E7 class table into the E8 one.
int urabe_f(int i); // 1 <= i <= 60

struct UrabeRow {
    int row = 0;
    std::string carter;
    int trace = 0;
    int index = 0;
    std::vector<std::pair<int, int>> orbits; // (orbit size, multiplicity)
    std::string h1;

    long long orbit_total() const; // sum size * multiplicity
};

/// CSV with header `row,carter,trace,index,orbits,h1`; orbits encoded as
/// `2^4*2^8*2^16`. Parse errors carry the 1-based line number.
std::vector<UrabeRow> parse_table(std::istream& in, const std::string& name = "table");
std::vector<UrabeRow> parse_table_file(const std::string& path);

/// Row numbers whose trace satisfies q^2 + q T + 1 = target.
std::vector<int> filter_rows(const std::vector<UrabeRow>& rows, long long q, long long target);

/// Fiber of the anticanonical pencil of a degree-1 surface above (m : n).
/// fiber_points counts surface points with (x,y) proportional to (m,n),
/// excluding the x = y = 0 base locus, which every fiber closure meets;
/// curve_points adds the base classes back and is the count the Hasse bound
/// applies to. The flag is evaluated in exact integer arithmetic.
struct FiberReport {
    std::pair<int, int> base;
    long long fiber_points = 0;
    long long curve_points = 0;
    bool smooth = false;
    bool hasse_ok = false;
};

long long base_locus_points(const fam::Surface& s);
FiberReport fiber_count(const fam::Surface& s, int m, int n);
std::vector<FiberReport> all_fibers(const fam::Surface& s); // the q+1 fibers

long long isqrt(long long n);
long long min_fiber_points(long long q); // q + 1 - floor(2 sqrt q)

} // namespace dpc::picard
