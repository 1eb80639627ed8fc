// SPDX-License-Identifier: Apache-2.0
#include "dpc/wps.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dpc::wps {

WeightSystem::WeightSystem(std::vector<int> w) : weights(std::move(w)) {
    if (weights.size() < 2) throw std::invalid_argument("need at least two weights");
    int g = 0;
    for (int wi : weights) {
        if (wi < 1) throw std::invalid_argument("weights must be positive");
        g = std::gcd(g, wi);
    }
    if (g != 1) throw std::invalid_argument("weight gcd must be 1");
}

WeightSystem WeightSystem::raw(std::vector<int> w) {
    for (int wi : w)
        if (wi < 1) throw std::invalid_argument("weights must be positive");
    WeightSystem ws;
    ws.weights = std::move(w);
    return ws;
}

std::string WeightSystem::literal() const {
    std::string s = "(";
    for (size_t i = 0; i < weights.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(weights[i]);
    }
    return s + ")";
}

bool is_zero_tuple(const Tuple& t) {
    return std::all_of(t.begin(), t.end(), [](int c) { return c == 0; });
}

namespace {
void check_tuple(const gf::Field& f, const WeightSystem& ws, const Tuple& t) {
    if (static_cast<int>(t.size()) != ws.size())
        throw std::invalid_argument("tuple length does not match weight system");
    for (int c : t)
        if (c < 0 || c >= f.size()) throw std::invalid_argument("coordinate out of range");
}
} // namespace

Tuple scale(const gf::Field& f, const WeightSystem& ws, const Tuple& t, int lambda) {
    check_tuple(f, ws, t);
    if (lambda == 0) throw std::invalid_argument("scaling by zero");
    Tuple out(t.size());
    for (size_t i = 0; i < t.size(); ++i)
        out[i] = f.mul(t[i], f.pow(lambda, ws.weights[i]));
    return out;
}

bool equivalent(const gf::Field& f, const WeightSystem& ws, const Tuple& u, const Tuple& v) {
    check_tuple(f, ws, u);
    check_tuple(f, ws, v);
    std::vector<int> support;
    for (int i = 0; i < ws.size(); ++i) {
        if ((u[i] == 0) != (v[i] == 0)) return false;
        if (u[i] != 0) support.push_back(i);
    }
    // ratios on the support; compatibility r_i^{w_j} == r_j^{w_i} is exactly
    // solvability of lambda^{w_i} = r_i over the algebraic closure
    std::vector<int> ratio(ws.size(), 1);
    for (int i : support) ratio[i] = f.mul(v[i], f.inv(u[i]));
    for (size_t a = 0; a < support.size(); ++a)
        for (size_t b = a + 1; b < support.size(); ++b) {
            int i = support[a], j = support[b];
            if (f.pow(ratio[i], ws.weights[j]) != f.pow(ratio[j], ws.weights[i])) return false;
        }
    return true;
}

Tuple canonicalize(const gf::Field& f, const WeightSystem& ws, const Tuple& t) {
    check_tuple(f, ws, t);
    if (is_zero_tuple(t)) throw std::invalid_argument("zero tuple is not a point");
    // The class of t is { v : v_i = mu^{w_i/d} t_i on the support }, where d
    // is the gcd of the support weights and mu runs over F_q^*: any
    // compatible ratio vector equals (lambda^{w_i}) for a closure scalar
    // lambda, and mu = lambda^d already lies in F_q.
    int d = 0;
    for (int i = 0; i < ws.size(); ++i)
        if (t[i] != 0) d = std::gcd(d, ws.weights[i]);
    Tuple best = t;
    for (int mu = 1; mu < f.size(); ++mu) {
        Tuple cand(t.size());
        for (int i = 0; i < ws.size(); ++i)
            cand[i] = f.mul(t[i], f.pow(mu, ws.weights[i] / d));
        if (std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end()))
            best = cand;
    }
    return best;
}

std::vector<Tuple> enumerate_tuples(const gf::Field& f, int n) {
    std::vector<Tuple> out;
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= f.size();
    out.reserve(total - 1);
    // big-endian digit decoding makes enumeration order lexicographic
    for (long long code = 1; code < total; ++code) {
        Tuple t(n);
        long long c = code;
        for (int i = n - 1; i >= 0; --i) {
            t[i] = static_cast<int>(c % f.size());
            c /= f.size();
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Tuple> enumerate_points(const gf::Field& f, const WeightSystem& ws) {
    std::vector<Tuple> out;
    for (const Tuple& t : enumerate_tuples(f, ws.size()))
        if (canonicalize(f, ws, t) == t) out.push_back(t);
    return out;
}

std::string tuple_literal(const gf::Field& f, const Tuple& t) {
    std::string s = "[";
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += f.element_literal(t[i]);
    }
    return s + "]";
}

Tuple parse_tuple(const gf::Field& f, const std::string& s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw std::invalid_argument("bad tuple literal: " + s);
    Tuple out;
    std::string cur;
    for (size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i] == ',') {
            out.push_back(f.parse_element(cur));
            cur.clear();
        } else if (s[i] != ' ') {
            cur += s[i];
        }
    }
    out.push_back(f.parse_element(cur));
    return out;
}

} // namespace dpc::wps
