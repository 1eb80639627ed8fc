// SPDX-License-Identifier: Apache-2.0
#include "dpc/smooth.hpp"

#include <algorithm>
#include <cstring>
#include <set>
#include <stdexcept>

namespace dpc::smooth {

namespace {

constexpr int kMaxVars = 6;
constexpr int kMaxTerms = 64;

struct FlatTerm {
    uint16_t coeff;
    uint8_t e[kMaxVars];
};

// Grid scanner over all nonzero tuples. Terms are specialized one variable
// at a time into preallocated per-level buffers; the last variable is
// evaluated densely by Horner. Visits zeros in lexicographic order.
struct GridScan {
    const gf::Field& f;
    int nvars;
    int q;
    int max_deg;
    std::vector<uint16_t> pow_tab; // pow_tab[a * (max_deg+1) + e] = a^e
    std::vector<std::vector<FlatTerm>> level;
    std::vector<int> level_size;

    GridScan(const gf::Field& fld, int nv, const std::vector<fam::Term>& terms)
        : f(fld), nvars(nv), q(fld.size()) {
        if (nv < 1 || nv > kMaxVars) throw std::invalid_argument("unsupported variable count");
        max_deg = 0;
        for (const auto& t : terms)
            for (int e : t.m.exps) max_deg = std::max(max_deg, e);
        pow_tab.assign(static_cast<size_t>(q) * (max_deg + 1), 0);
        for (int a = 0; a < q; ++a)
            for (int e = 0; e <= max_deg; ++e)
                pow_tab[static_cast<size_t>(a) * (max_deg + 1) + e] =
                    static_cast<uint16_t>(f.pow(a, e));
        level.assign(nvars, {});
        level_size.assign(nvars, 0);
        for (auto& l : level) l.resize(kMaxTerms);
        if (static_cast<int>(terms.size()) > kMaxTerms)
            throw std::invalid_argument("too many terms for grid scan");
        for (const auto& t : terms) {
            if (t.c == 0) continue;
            FlatTerm ft{};
            ft.coeff = static_cast<uint16_t>(t.c);
            for (int i = 0; i < nvars; ++i) ft.e[i] = static_cast<uint8_t>(t.m.exps[i]);
            level[0][level_size[0]++] = ft;
        }
    }

    int power(int a, int e) const { return pow_tab[static_cast<size_t>(a) * (max_deg + 1) + e]; }

    // fold variable `depth` := a, writing terms over the remaining variables
    void specialize(int depth, int a) {
        const auto& src = level[depth];
        auto& dst = level[depth + 1];
        int n = 0;
        const int rem = nvars - depth - 1;
        for (int i = 0; i < level_size[depth]; ++i) {
            const FlatTerm& t = src[i];
            int c = f.mul(t.coeff, power(a, t.e[0]));
            if (c == 0) continue;
            int hit = -1;
            for (int j = 0; j < n; ++j)
                if (std::memcmp(dst[j].e, t.e + 1, rem) == 0) {
                    hit = j;
                    break;
                }
            if (hit >= 0) {
                dst[hit].coeff = static_cast<uint16_t>(f.add(dst[hit].coeff, c));
            } else {
                FlatTerm nt{};
                nt.coeff = static_cast<uint16_t>(c);
                std::memcpy(nt.e, t.e + 1, rem);
                dst[n++] = nt;
            }
        }
        // drop cancelled terms
        int k = 0;
        for (int j = 0; j < n; ++j)
            if (dst[j].coeff != 0) dst[k++] = dst[j];
        level_size[depth + 1] = k;
    }

    template <typename Fn>
    bool walk(int depth, wps::Tuple& prefix, bool zero_prefix, Fn&& fn) {
        if (depth == nvars - 1) {
            int dense[16] = {0};
            int deg = 0;
            for (int i = 0; i < level_size[depth]; ++i) {
                const FlatTerm& t = level[depth][i];
                dense[t.e[0]] = f.add(dense[t.e[0]], t.coeff);
                deg = std::max(deg, static_cast<int>(t.e[0]));
            }
            for (int a = zero_prefix ? 1 : 0; a < q; ++a) {
                int v = 0;
                for (int d = deg; d >= 0; --d) v = f.add(f.mul(v, a), dense[d]);
                if (v == 0) {
                    prefix.push_back(a);
                    bool go = fn(prefix);
                    prefix.pop_back();
                    if (!go) return false;
                }
            }
            return true;
        }
        for (int a = 0; a < q; ++a) {
            specialize(depth, a);
            prefix.push_back(a);
            bool go = walk(depth + 1, prefix, zero_prefix && a == 0, fn);
            prefix.pop_back();
            if (!go) return false;
        }
        return true;
    }

    template <typename Fn>
    void run(Fn&& fn) {
        wps::Tuple prefix;
        prefix.reserve(nvars);
        walk(0, prefix, true, fn);
    }
};

int eval_terms(const gf::Field& f, const std::vector<fam::Term>& terms, const wps::Tuple& t) {
    int v = 0;
    for (const auto& term : terms)
        v = f.add(v, f.mul(term.c, fam::evaluate_monomial(f, term.m, t)));
    return v;
}

} // namespace

std::vector<wps::Tuple> singular_tuples(const fam::Surface& s, int k) {
    if (k < 1) throw std::invalid_argument("extension degree must be positive");
    const gf::Field& base = s.gf();
    long long qk = 1;
    for (int i = 0; i < k; ++i) {
        qk *= base.size();
        if (qk > kMaxExtensionSize) throw std::invalid_argument("extension too large");
    }
    const int nvars = s.family.nvars();

    const gf::Field* ext = &base;
    std::vector<int> phi;
    if (k > 1) {
        ext = &gf::extension_of(base, k);
        phi = gf::embedding(base, *ext);
    }
    auto lift = [&](std::vector<fam::Term> terms) {
        if (k > 1)
            for (auto& t : terms) t.c = phi[t.c];
        return terms;
    };

    std::vector<fam::Term> surface = lift(fam::surface_terms(s));
    std::vector<std::vector<fam::Term>> partials;
    for (int v = 0; v < nvars; ++v)
        partials.push_back(lift(fam::surface_terms(fam::partial_derivative(s, v))));

    std::set<wps::Tuple> classes;
    GridScan scan(*ext, nvars, surface);
    scan.run([&](const wps::Tuple& t) {
        for (const auto& dp : partials)
            if (eval_terms(*ext, dp, t) != 0) return true;
        classes.insert(wps::canonicalize(*ext, s.family.ambient, t));
        return true;
    });
    return {classes.begin(), classes.end()};
}

SmoothnessVerdict is_smooth_up_to(const fam::Surface& s, int max_ext) {
    if (max_ext < 1) throw std::invalid_argument("extension bound must be positive");
    SmoothnessVerdict v;
    for (int k = 1; k <= max_ext; ++k) {
        v.checked_degrees.push_back(k);
        auto witnesses = singular_tuples(s, k);
        if (!witnesses.empty()) {
            v.smooth = false;
            v.witness = witnesses.front();
            v.witness_degree = k;
            return v;
        }
    }
    v.smooth = true;
    v.checked_up_to = max_ext;
    return v;
}

} // namespace dpc::smooth
