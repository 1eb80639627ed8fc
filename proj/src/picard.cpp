// SPDX-License-Identifier: Apache-2.0
#include "dpc/picard.hpp"

#include "dpc/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace dpc::picard {

int pair_form(const PicClass& a, const PicClass& b) {
    if (a.m.size() != b.m.size()) throw std::invalid_argument("rank mismatch");
    int v = a.d * b.d;
    for (size_t i = 0; i < a.m.size(); ++i) v -= a.m[i] * b.m[i];
    return v;
}

int anticanonical_degree(const PicClass& c) {
    int v = 3 * c.d;
    for (int mi : c.m) v -= mi;
    return v;
}

std::vector<PicClass> exceptional_classes(int r) {
    if (r < 0 || r > 8) throw std::invalid_argument("r must be in 0..8");
    std::vector<PicClass> out;
    // d <= 7 by Cauchy-Schwarz: (3d-1)^2 <= r (d^2+1)
    for (int d = 0; d <= 7; ++d) {
        // need sum m_i = 3d - 1 and sum m_i^2 = d^2 + 1 with m_i in [-1, d]
        const int want_sum = 3 * d - 1;
        const int want_sq = d * d + 1;
        std::vector<int> m(r, 0);
        std::function<void(int, int, int)> rec = [&](int pos, int sum, int sq) {
            if (sq > want_sq) return;
            int rest = r - pos;
            if (sum + rest * d < want_sum || sum - rest > want_sum) return;
            if (pos == r) {
                if (sum == want_sum && sq == want_sq) out.push_back({d, m});
                return;
            }
            for (int v = -1; v <= d; ++v) {
                m[pos] = v;
                rec(pos + 1, sum + v, sq + v * v);
            }
        };
        rec(0, 0, 0);
    }
    std::sort(out.begin(), out.end());
    return out;
}

long long weil_count(long long q, long long trace) { return q * q + q * trace + 1; }

int min_trace_on_pic(int degree) {
    switch (degree) {
        case 1: return -7;
        case 2: return -6;
        case 3: return -2;
        default: throw std::invalid_argument("unsupported degree");
    }
}

std::vector<int> candidate_fields(int degree, long long target_points) {
    if (target_points < 0) throw std::invalid_argument("target must be nonnegative");
    const int min_t = min_trace_on_pic(degree);
    const int max_t = 10 - degree;
    std::vector<int> out;
    for (long long q = 2;; ++q) {
        // for q beyond this bound even the smallest trace overshoots
        if (q * q + min_t * q + 1 > target_points && q > -min_t) break;
        int p = 0, rr = 0;
        if (!gf::is_prime_power(static_cast<int>(q), &p, &rr)) continue;
        long long num = target_points - 1 - q * q;
        if (num % q != 0) continue;
        long long t = num / q;
        if (t >= min_t && t <= max_t) out.push_back(static_cast<int>(q));
    }
    return out;
}

int urabe_f(int i) {
    if (i < 1 || i > 60) throw std::invalid_argument("row out of range");
    if (i == 1) return 98;
    if (i <= 24) return i + 36;
    if (i <= 33) return i + 41;
    switch (i) {
        case 34: return 76;
        case 35: return 79;
        case 36: return 80;
        case 37: return 109;
        case 38: return 87;
        case 39: return 88;
        case 40: return 95;
        case 41: return 101;
        case 42: return 103;
        case 43: return 104;
        case 44: return 107;
        case 45: return 110;
        default: break;
    }
    if (i <= 52) return i + 45;
    if (i <= 56) return i + 46;
    if (i <= 59) return i + 48;
    return 111; // i == 60
}

long long UrabeRow::orbit_total() const {
    long long t = 0;
    for (const auto& [size, mult] : orbits) t += static_cast<long long>(size) * mult;
    return t;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

int parse_int(const std::string& s, const std::string& where) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(where + ": bad integer '" + s + "'");
    }
}

} // namespace

std::vector<UrabeRow> parse_table(std::istream& in, const std::string& name) {
    std::vector<UrabeRow> rows;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = name + ":" + std::to_string(lineno);
        auto fields = split(line, ',');
        if (!header_seen) {
            if (fields.size() != 6 || fields[0] != "row")
                throw std::runtime_error(where + ": expected header row,carter,trace,index,orbits,h1");
            header_seen = true;
            continue;
        }
        if (fields.size() != 6) throw std::runtime_error(where + ": expected 6 fields");
        UrabeRow r;
        r.row = parse_int(fields[0], where);
        r.carter = fields[1];
        r.trace = parse_int(fields[2], where);
        r.index = parse_int(fields[3], where);
        if (!fields[4].empty()) {
            for (const std::string& part : split(fields[4], '*')) {
                auto caret = part.find('^');
                if (caret == std::string::npos) {
                    r.orbits.emplace_back(parse_int(part, where), 1);
                } else {
                    r.orbits.emplace_back(parse_int(part.substr(0, caret), where),
                                          parse_int(part.substr(caret + 1), where));
                }
            }
        }
        r.h1 = fields[5];
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<UrabeRow> parse_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open table " + path);
    return parse_table(in, path);
}

std::vector<int> filter_rows(const std::vector<UrabeRow>& rows, long long q, long long target) {
    std::vector<int> out;
    for (const auto& r : rows)
        if (weil_count(q, r.trace) == target) out.push_back(r.row);
    return out;
}

namespace {
void check_dp1_ambient(const fam::Surface& s) {
    const auto& w = s.family.ambient.weights;
    if (w.size() != 4 || w[0] != 1 || w[1] != 1)
        throw std::invalid_argument("fiber analysis needs a 4-variable ambient with two weight-1 coordinates");
}
} // namespace

long long base_locus_points(const fam::Surface& s) {
    check_dp1_ambient(s);
    fam::Surface at0 = fam::restrict_vars(s, {0, 0, std::nullopt, std::nullopt});
    return fam::count_points(at0, fam::Mode::projective);
}

FiberReport fiber_count(const fam::Surface& s, int m, int n) {
    check_dp1_ambient(s);
    const gf::Field& f = s.gf();
    if (m == 0 && n == 0) throw std::invalid_argument("base point must be nonzero");
    FiberReport rep;
    rep.base = {m, n};

    long long count = 0;
    for (int z = 0; z < f.size(); ++z)
        for (int w = 0; w < f.size(); ++w)
            if (fam::evaluate(s, {m, n, z, w}) == 0) ++count;
    rep.fiber_points = count;
    rep.curve_points = count + base_locus_points(s);

    fam::Surface curve = fam::restrict_to_line(s, 0, 1, m, n);
    rep.smooth = smooth::is_smooth_up_to(curve, 2).smooth;

    const long long q = f.size();
    const long long dev = rep.curve_points - q - 1;
    rep.hasse_ok = dev * dev <= 4 * q;
    return rep;
}

std::vector<FiberReport> all_fibers(const fam::Surface& s) {
    check_dp1_ambient(s);
    std::vector<FiberReport> out;
    for (int t = 0; t < s.gf().size(); ++t) out.push_back(fiber_count(s, 1, t));
    out.push_back(fiber_count(s, 0, 1));
    return out;
}

long long isqrt(long long n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative");
    long long r = static_cast<long long>(std::max(0.0, std::sqrt(static_cast<double>(n)) - 2));
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

long long min_fiber_points(long long q) {
    if (q < 2) throw std::invalid_argument("q must be at least 2");
    return q + 1 - isqrt(4 * q);
}

} // namespace dpc::picard
