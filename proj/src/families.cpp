// SPDX-License-Identifier: Apache-2.0
#include "dpc/families.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <stdexcept>

namespace dpc::fam {

int Monomial::total_degree() const {
    int d = 0;
    for (int e : exps) d += e;
    return d;
}

int Monomial::weighted_degree(const wps::WeightSystem& ws) const {
    int d = 0;
    for (size_t i = 0; i < exps.size(); ++i) d += exps[i] * ws.weights[i];
    return d;
}

std::string Monomial::key() const {
    std::string s;
    for (size_t i = 0; i < exps.size(); ++i) {
        if (i) s += ".";
        s += std::to_string(exps[i]);
    }
    return s;
}

Monomial Monomial::parse(const std::string& key, int nvars) {
    Monomial m;
    std::string cur;
    for (char ch : key + ".") {
        if (ch == '.') {
            if (cur.empty()) throw std::invalid_argument("bad monomial key: " + key);
            m.exps.push_back(std::stoi(cur));
            if (m.exps.back() < 0) throw std::invalid_argument("bad monomial key: " + key);
            cur.clear();
        } else if (ch >= '0' && ch <= '9') {
            cur += ch;
        } else {
            throw std::invalid_argument("bad monomial key: " + key);
        }
    }
    if (static_cast<int>(m.exps.size()) != nvars)
        throw std::invalid_argument("monomial key has wrong arity: " + key);
    return m;
}

bool Monomial::operator<(const Monomial& o) const {
    int d = total_degree(), od = o.total_degree();
    if (d != od) return d < od;
    return exps < o.exps;
}

int FamilySpec::slot_index(const Monomial& m) const {
    for (size_t i = 0; i < slots.size(); ++i)
        if (slots[i] == m) return static_cast<int>(i);
    return -1;
}

namespace {

// all exponent vectors over `head` variables summing to deg, each extended
// by the fixed tail
void append_forms(std::vector<Monomial>& out, int head, int deg, const std::vector<int>& tail) {
    std::vector<int> e(head, 0);
    // iterate compositions of deg into `head` parts
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == head - 1) {
            e[pos] = left;
            Monomial m;
            m.exps = e;
            m.exps.insert(m.exps.end(), tail.begin(), tail.end());
            out.push_back(std::move(m));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            e[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, deg);
}

FamilySpec finish(FamilySpec f) {
    std::sort(f.slots.begin(), f.slots.end());
    for (const auto& [m, c] : f.fixed)
        if (m.weighted_degree(f.ambient) != f.degree)
            throw std::logic_error("fixed term degree mismatch in " + f.id);
    for (const auto& m : f.slots)
        if (m.weighted_degree(f.ambient) != f.degree)
            throw std::logic_error("slot degree mismatch in " + f.id);
    return f;
}

std::map<std::string, FamilySpec> build_builtins() {
    std::map<std::string, FamilySpec> out;

    // degree-1 del Pezzo ambient P(1,1,2,3), variables x, y, z, w
    wps::WeightSystem dp1({1, 1, 2, 3});
    Monomial w2{{0, 0, 0, 2}}, z3{{0, 0, 3, 0}};

    {
        FamilySpec f;
        f.id = "DP1_CHAR2";
        f.ambient = dp1;
        f.degree = 6;
        f.fixed = {{w2, 1}, {z3, 1}};
        append_forms(f.slots, 2, 1, {1, 1}); // wz * L(x,y)
        append_forms(f.slots, 2, 3, {0, 1}); // w * G_3(x,y)
        append_forms(f.slots, 2, 4, {1, 0}); // z * G_4(x,y)
        append_forms(f.slots, 2, 6, {0, 0}); // G_6(x,y)
        FamilySpec done = finish(std::move(f));
        out[done.id] = std::move(done);
    }
    {
        FamilySpec f;
        f.id = "DP1_CHAR3";
        f.ambient = dp1;
        f.degree = 6;
        f.fixed = {{w2, 1}, {z3, 1}};
        append_forms(f.slots, 2, 2, {2, 0}); // z^2 * G_2(x,y)
        append_forms(f.slots, 2, 4, {1, 0});
        append_forms(f.slots, 2, 6, {0, 0});
        FamilySpec done = finish(std::move(f));
        out[done.id] = std::move(done);
    }
    {
        FamilySpec f;
        f.id = "DP1_CLASSIC";
        f.ambient = dp1;
        f.degree = 6;
        f.fixed = {{w2, 1}, {z3, 1}};
        append_forms(f.slots, 2, 4, {1, 0});
        append_forms(f.slots, 2, 6, {0, 0});
        FamilySpec done = finish(std::move(f));
        out[done.id] = std::move(done);
    }

    // degree-2 del Pezzo ambient P(1,1,1,2), variables x, y, z, w
    wps::WeightSystem dp2({1, 1, 1, 2});
    Monomial w2d{{0, 0, 0, 2}};
    {
        FamilySpec f;
        f.id = "DP2_CHAR2";
        f.ambient = dp2;
        f.degree = 4;
        f.fixed = {{w2d, 1}};
        append_forms(f.slots, 3, 2, {1}); // w * F_2(x,y,z)
        append_forms(f.slots, 3, 4, {0}); // F_4(x,y,z)
        FamilySpec done = finish(std::move(f));
        out[done.id] = std::move(done);
    }
    {
        FamilySpec f;
        f.id = "DP2_CLASSIC";
        f.ambient = dp2;
        f.degree = 4;
        f.fixed = {{w2d, 1}};
        append_forms(f.slots, 3, 4, {0});
        FamilySpec done = finish(std::move(f));
        out[done.id] = std::move(done);
    }
    {
        FamilySpec f;
        f.id = "CUBIC_P3";
        f.ambient = wps::WeightSystem({1, 1, 1, 1});
        f.degree = 3;
        append_forms(f.slots, 4, 3, {});
        FamilySpec done = finish(std::move(f));
        out[done.id] = std::move(done);
    }
    return out;
}

const std::map<std::string, FamilySpec>& builtins() {
    static const std::map<std::string, FamilySpec> b = build_builtins();
    return b;
}

} // namespace

const FamilySpec& builtin_family(const std::string& id) {
    auto it = builtins().find(id);
    if (it == builtins().end()) throw std::invalid_argument("unknown family: " + id);
    return it->second;
}

const std::vector<std::string>& builtin_family_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [id, f] : builtins()) v.push_back(id);
        return v;
    }();
    return ids;
}

Surface make_surface(const FamilySpec& fm, const gf::Field& f, std::vector<int> coeffs) {
    if (coeffs.size() != fm.slots.size())
        throw std::invalid_argument("coefficient count does not match family slots");
    for (int c : coeffs)
        if (c < 0 || c >= f.size()) throw std::invalid_argument("coefficient out of range");
    return Surface{fm, &f, std::move(coeffs)};
}

int evaluate_monomial(const gf::Field& f, const Monomial& m, const wps::Tuple& t) {
    int v = 1;
    for (size_t i = 0; i < m.exps.size(); ++i)
        if (m.exps[i] > 0) v = f.mul(v, f.pow(t[i], m.exps[i]));
    return v;
}

int evaluate(const Surface& s, const wps::Tuple& t) {
    const gf::Field& f = s.gf();
    if (static_cast<int>(t.size()) != s.family.nvars())
        throw std::invalid_argument("tuple arity does not match family");
    int v = 0;
    for (const auto& [m, c] : s.family.fixed)
        v = f.add(v, f.mul(f.from_int(c), evaluate_monomial(f, m, t)));
    for (size_t i = 0; i < s.coeffs.size(); ++i)
        if (s.coeffs[i] != 0)
            v = f.add(v, f.mul(s.coeffs[i], evaluate_monomial(f, s.family.slots[i], t)));
    return v;
}

int reduce_exponent(int e, int q) {
    if (e == 0) return 0;
    return (e - 1) % (q - 1) + 1;
}

namespace {
Monomial reduce_monomial(const Monomial& m, int q) {
    Monomial out;
    out.exps.reserve(m.exps.size());
    for (int e : m.exps) out.exps.push_back(reduce_exponent(e, q));
    return out;
}

bool all_same_weighted_degree(const FamilySpec& f, int* degree_out) {
    int deg = -1;
    auto check = [&](const Monomial& m) {
        int d = m.weighted_degree(f.ambient);
        if (deg == -1) deg = d;
        return d == deg;
    };
    for (const auto& [m, c] : f.fixed)
        if (!check(m)) return false;
    for (const auto& m : f.slots)
        if (!check(m)) return false;
    *degree_out = deg;
    return true;
}
} // namespace

FamilySpec reduced_family(const FamilySpec& f, const gf::Field& field) {
    const int q = field.size();
    bool changed = false;
    FamilySpec out;
    out.ambient = f.ambient;
    std::map<Monomial, int> fixed; // summed small-int coefficients
    for (const auto& [m, c] : f.fixed) {
        Monomial r = reduce_monomial(m, q);
        changed |= !(r == m);
        fixed[r] += c;
    }
    std::set<Monomial> slots;
    for (const auto& m : f.slots) {
        Monomial r = reduce_monomial(m, q);
        changed |= !(r == m);
        slots.insert(r);
    }
    if (!changed) return f;
    out.id = f.id + "@" + field.literal();
    out.parent = f.id;
    for (const auto& [m, c] : fixed) out.fixed.emplace_back(m, c);
    out.slots.assign(slots.begin(), slots.end());
    std::sort(out.slots.begin(), out.slots.end());
    int deg = 0;
    out.homogeneous = all_same_weighted_degree(out, &deg);
    out.degree = out.homogeneous ? deg : 0;
    return out;
}

Surface reduce_exponents(const Surface& s) {
    const gf::Field& f = s.gf();
    FamilySpec rf = reduced_family(s.family, f);
    std::vector<int> coeffs(rf.slots.size(), 0);
    for (size_t i = 0; i < s.coeffs.size(); ++i) {
        int idx = rf.slot_index(reduce_monomial(s.family.slots[i], f.size()));
        coeffs[idx] = f.add(coeffs[idx], s.coeffs[i]);
    }
    return Surface{std::move(rf), &f, std::move(coeffs)};
}

std::vector<Term> surface_terms(const Surface& s) {
    const gf::Field& f = s.gf();
    std::map<Monomial, int> acc;
    for (const auto& [m, c] : s.family.fixed) {
        int v = f.from_int(c);
        if (v != 0) {
            int& slot = acc[m];
            slot = f.add(slot, v);
        }
    }
    for (size_t i = 0; i < s.coeffs.size(); ++i)
        if (s.coeffs[i] != 0) {
            int& slot = acc[s.family.slots[i]];
            slot = f.add(slot, s.coeffs[i]);
        }
    std::vector<Term> out;
    for (const auto& [m, c] : acc)
        if (c != 0) out.push_back({m, c});
    return out;
}

namespace {

// Build a derived surface from an explicit term list.
Surface from_terms(std::string id, wps::WeightSystem ambient, const gf::Field& f,
                   const std::map<Monomial, int>& terms) {
    FamilySpec fm;
    fm.id = std::move(id);
    fm.ambient = std::move(ambient);
    std::vector<int> coeffs;
    for (const auto& [m, c] : terms)
        if (c != 0) {
            fm.slots.push_back(m);
            coeffs.push_back(c);
        }
    int deg = 0;
    fm.homogeneous = all_same_weighted_degree(fm, &deg);
    fm.degree = fm.homogeneous ? deg : 0;
    return Surface{std::move(fm), &f, std::move(coeffs)};
}

} // namespace

Surface restrict_vars(const Surface& s, const std::vector<std::optional<int>>& subst) {
    const gf::Field& f = s.gf();
    if (static_cast<int>(subst.size()) != s.family.nvars())
        throw std::invalid_argument("substitution arity does not match family");
    bool identity = true;
    for (const auto& v : subst) identity &= !v.has_value();
    if (identity) return s;

    std::vector<int> kept;
    for (int i = 0; i < s.family.nvars(); ++i)
        if (!subst[i]) kept.push_back(i);
    if (kept.empty()) throw std::invalid_argument("substitution keeps no variables");

    std::map<Monomial, int> terms;
    std::string desc = s.family.id + "|";
    for (int i = 0; i < s.family.nvars(); ++i)
        desc += subst[i] ? f.element_literal(*subst[i]) : std::string("*");
    for (const Term& t : surface_terms(s)) {
        int c = t.c;
        Monomial m;
        for (int i = 0; i < s.family.nvars(); ++i) {
            if (subst[i]) {
                if (*subst[i] < 0 || *subst[i] >= f.size())
                    throw std::invalid_argument("substituted value out of range");
                c = f.mul(c, f.pow(*subst[i], t.m.exps[i]));
            } else {
                m.exps.push_back(t.m.exps[i]);
            }
        }
        if (c != 0) {
            int& slot = terms[m];
            slot = f.add(slot, c);
        }
    }
    std::vector<int> weights;
    for (int i : kept) weights.push_back(s.family.ambient.weights[i]);
    return from_terms(std::move(desc), wps::WeightSystem::raw(std::move(weights)), f, terms);
}

Surface restrict_to_line(const Surface& s, int i, int j, int m, int n) {
    const gf::Field& f = s.gf();
    if (i == j || i < 0 || j < 0 || i >= s.family.nvars() || j >= s.family.nvars())
        throw std::invalid_argument("bad line variables");
    if (s.family.ambient.weights[i] != 1 || s.family.ambient.weights[j] != 1)
        throw std::invalid_argument("line variables must have weight 1");
    if (m == 0 && n == 0) throw std::invalid_argument("line point must be nonzero");

    std::map<Monomial, int> terms;
    for (const Term& t : surface_terms(s)) {
        int c = f.mul(t.c, f.mul(f.pow(m, t.m.exps[i]), f.pow(n, t.m.exps[j])));
        if (c == 0) continue;
        Monomial mono;
        mono.exps.push_back(t.m.exps[i] + t.m.exps[j]); // fresh weight-1 parameter
        for (int v = 0; v < s.family.nvars(); ++v)
            if (v != i && v != j) mono.exps.push_back(t.m.exps[v]);
        int& slot = terms[mono];
        slot = f.add(slot, c);
    }
    std::vector<int> weights{1};
    for (int v = 0; v < s.family.nvars(); ++v)
        if (v != i && v != j) weights.push_back(s.family.ambient.weights[v]);
    std::string id = s.family.id + "|line(" + f.element_literal(m) + ":" + f.element_literal(n) + ")";
    return from_terms(std::move(id), wps::WeightSystem::raw(std::move(weights)), f, terms);
}

Surface partial_derivative(const Surface& s, int var) {
    const gf::Field& f = s.gf();
    if (var < 0 || var >= s.family.nvars()) throw std::invalid_argument("bad variable index");
    std::map<Monomial, int> terms;
    for (const Term& t : surface_terms(s)) {
        int e = t.m.exps[var];
        int ec = f.from_int(e);
        if (e == 0 || ec == 0) continue;
        Monomial m = t.m;
        m.exps[var] -= 1;
        int& slot = terms[m];
        slot = f.add(slot, f.mul(t.c, ec));
    }
    return from_terms(s.family.id + "|d" + std::to_string(var), s.family.ambient, f, terms);
}

namespace {

struct RawTerm {
    std::vector<int> exps;
    int c;
};

// specialize the first remaining variable to `value`
std::vector<RawTerm> specialize(const gf::Field& f, const std::vector<RawTerm>& terms, int value) {
    std::vector<RawTerm> out;
    for (const RawTerm& t : terms) {
        int c = f.mul(t.c, f.pow(value, t.exps[0]));
        if (c == 0) continue;
        std::vector<int> rest(t.exps.begin() + 1, t.exps.end());
        bool merged = false;
        for (RawTerm& o : out)
            if (o.exps == rest) {
                o.c = f.add(o.c, c);
                merged = true;
                break;
            }
        if (!merged) out.push_back({std::move(rest), c});
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const RawTerm& t) { return t.c == 0; }),
              out.end());
    return out;
}

bool scan_zeros(const gf::Field& f, const std::vector<RawTerm>& terms, wps::Tuple& prefix,
                bool zero_prefix, int remaining, const std::function<bool(const wps::Tuple&)>& fn) {
    if (remaining == 1) {
        int deg = 0;
        for (const RawTerm& t : terms) deg = std::max(deg, t.exps[0]);
        std::vector<int> dense(deg + 1, 0);
        for (const RawTerm& t : terms) dense[t.exps[0]] = f.add(dense[t.exps[0]], t.c);
        for (int a = 0; a < f.size(); ++a) {
            if (a == 0 && zero_prefix) continue; // the origin is not a point
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
    for (int a = 0; a < f.size(); ++a) {
        prefix.push_back(a);
        bool go = scan_zeros(f, specialize(f, terms, a), prefix, zero_prefix && a == 0,
                             remaining - 1, fn);
        prefix.pop_back();
        if (!go) return false;
    }
    return true;
}

} // namespace

void for_each_zero(const gf::Field& f, int nvars, const std::vector<Term>& terms,
                   const std::function<bool(const wps::Tuple&)>& fn) {
    std::vector<RawTerm> raw;
    raw.reserve(terms.size());
    for (const Term& t : terms) {
        if (static_cast<int>(t.m.exps.size()) != nvars)
            throw std::invalid_argument("term arity mismatch");
        if (t.c != 0) raw.push_back({t.m.exps, t.c});
    }
    wps::Tuple prefix;
    prefix.reserve(nvars);
    if (nvars < 1) throw std::invalid_argument("need at least one variable");
    scan_zeros(f, raw, prefix, true, nvars, fn);
}

long long count_points(const Surface& s, Mode mode, std::optional<long long> early_exit) {
    const gf::Field& f = s.gf();
    const int n = s.family.nvars();
    const long long bound = early_exit ? *early_exit : LLONG_MAX;
    auto terms = surface_terms(s);
    if (mode == Mode::affine) {
        long long cnt = 0;
        for_each_zero(f, n, terms, [&](const wps::Tuple&) { return ++cnt <= bound; });
        return cnt;
    }
    std::set<wps::Tuple> classes;
    for_each_zero(f, n, terms, [&](const wps::Tuple& t) {
        classes.insert(wps::canonicalize(f, s.family.ambient, t));
        return static_cast<long long>(classes.size()) <= bound;
    });
    return static_cast<long long>(classes.size());
}

Surface random_surface(const FamilySpec& fm, const gf::Field& f, SplitMix64& rng) {
    std::vector<int> coeffs(fm.slots.size());
    for (int& c : coeffs) c = rng.below(f.size());
    return Surface{fm, &f, std::move(coeffs)};
}

} // namespace dpc::fam
