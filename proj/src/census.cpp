// SPDX-License-Identifier: Apache-2.0
#include "dpc/census.hpp"

#include "dpc/smooth.hpp"

#include "json.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

namespace dpc::census {

using json = nlohmann::json;

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

SearchSpace SearchSpace::over(const fam::FamilySpec& fm, const gf::Field& f) {
    SearchSpace s;
    s.family = fm;
    s.field = &f;
    s.pins.assign(fm.slots.size(), std::nullopt);
    return s;
}

int SearchSpace::unpinned() const {
    int n = 0;
    for (const auto& p : pins) n += !p.has_value();
    return n;
}

long long SearchSpace::total() const {
    long long t = 1;
    for (const auto& p : pins)
        if (!p) {
            if (t > (1LL << 62) / field->size()) throw std::runtime_error("search space overflow");
            t *= field->size();
        }
    return t;
}

std::vector<int> SearchSpace::coeffs_at(long long index) const {
    std::vector<int> out(pins.size());
    for (size_t i = 0; i < pins.size(); ++i) {
        if (pins[i]) {
            out[i] = *pins[i];
        } else {
            out[i] = static_cast<int>(index % field->size());
            index /= field->size();
        }
    }
    return out;
}

std::string SearchSpace::descriptor(Mode mode, std::optional<long long> early_exit) const {
    std::string d = "family=" + family.id + ";field=" + field->literal() + ";pins=";
    for (size_t i = 0; i < pins.size(); ++i)
        if (pins[i]) d += family.slot_key(static_cast<int>(i)) + "=" + field->element_literal(*pins[i]) + ",";
    d += ";mode=";
    d += (mode == Mode::projective ? "projective" : "affine");
    d += ";early_exit=" + (early_exit ? std::to_string(*early_exit) : std::string("none"));
    return d;
}

namespace {

// Monomial value tables: one row per counted point, one column per unpinned
// slot. Fixed terms and pinned slots are folded into the per-row base value.
struct Kernel {
    const gf::Field* f = nullptr;
    int q = 0;
    const uint16_t* addt = nullptr;
    const uint16_t* mult = nullptr;
    int nrows = 0;
    int nfree = 0;
    std::vector<uint16_t> base;
    std::vector<uint16_t> val; // row-major
    std::vector<wps::Tuple> rows;
    std::vector<int> free_slots;
};

Kernel build_kernel(const SearchSpace& space, Mode mode) {
    Kernel k;
    k.f = space.field;
    k.q = space.field->size();
    if (!space.field->add_table())
        throw std::invalid_argument("census requires a table-backed field");
    k.addt = space.field->add_table();
    k.mult = space.field->mul_table();
    const gf::Field& f = *space.field;
    const fam::FamilySpec& fm = space.family;

    k.rows = (mode == Mode::projective) ? wps::enumerate_points(f, fm.ambient)
                                        : wps::enumerate_tuples(f, fm.nvars());
    k.nrows = static_cast<int>(k.rows.size());
    for (size_t i = 0; i < fm.slots.size(); ++i)
        if (!space.pins[i]) k.free_slots.push_back(static_cast<int>(i));
    k.nfree = static_cast<int>(k.free_slots.size());

    k.base.resize(k.nrows);
    k.val.resize(static_cast<size_t>(k.nrows) * k.nfree);
    for (int r = 0; r < k.nrows; ++r) {
        int b = 0;
        for (const auto& [m, c] : fm.fixed)
            b = f.add(b, f.mul(f.from_int(c), fam::evaluate_monomial(f, m, k.rows[r])));
        for (size_t i = 0; i < fm.slots.size(); ++i)
            if (space.pins[i])
                b = f.add(b, f.mul(*space.pins[i], fam::evaluate_monomial(f, fm.slots[i], k.rows[r])));
        k.base[r] = static_cast<uint16_t>(b);
        for (int j = 0; j < k.nfree; ++j)
            k.val[static_cast<size_t>(r) * k.nfree + j] = static_cast<uint16_t>(
                fam::evaluate_monomial(f, fm.slots[k.free_slots[j]], k.rows[r]));
    }
    return k;
}

inline long long count_surface(const Kernel& k, const uint16_t* digits, long long bound) {
    long long cnt = 0;
    const uint16_t* vp = k.val.data();
    const int q = k.q;
    for (int r = 0; r < k.nrows; ++r, vp += k.nfree) {
        uint16_t v = k.base[r];
        for (int j = 0; j < k.nfree; ++j)
            v = k.addt[v * q + k.mult[digits[j] * q + vp[j]]];
        if (v == 0 && ++cnt > bound) return bound + 1;
    }
    return cnt;
}

// Aggregation shared by the kernel engine, the reference engine and merges.
struct Accumulator {
    std::map<long long, long long> histogram;
    long long min_count = -1;
    std::set<std::vector<int>> extremal;
    long long extremal_cap = 64;
    std::vector<std::vector<int>> collected;
    bool collected_overflow = false;
    std::optional<long long> collect_count;
    long long collect_cap = 4096;
    long long scanned = 0;

    void record(long long count, const SearchSpace& space, long long index) {
        ++histogram[count];
        ++scanned;
        if (min_count < 0 || count < min_count) {
            min_count = count;
            extremal.clear();
        }
        if (count == min_count && static_cast<long long>(extremal.size()) <= extremal_cap) {
            extremal.insert(space.coeffs_at(index));
            while (static_cast<long long>(extremal.size()) > extremal_cap)
                extremal.erase(std::prev(extremal.end()));
        }
        if (collect_count && count == *collect_count) {
            if (static_cast<long long>(collected.size()) < collect_cap)
                collected.push_back(space.coeffs_at(index));
            else
                collected_overflow = true;
        }
    }

    void absorb(const Accumulator& o) {
        for (const auto& [c, n] : o.histogram) histogram[c] += n;
        scanned += o.scanned;
        if (o.min_count >= 0 && (min_count < 0 || o.min_count < min_count)) {
            min_count = o.min_count;
            extremal.clear();
        }
        if (o.min_count == min_count)
            for (const auto& v : o.extremal) {
                extremal.insert(v);
                while (static_cast<long long>(extremal.size()) > extremal_cap)
                    extremal.erase(std::prev(extremal.end()));
            }
        for (const auto& v : o.collected) {
            if (static_cast<long long>(collected.size()) < collect_cap)
                collected.push_back(v);
            else
                collected_overflow = true;
        }
        collected_overflow |= o.collected_overflow;
    }
};

CensusReport finalize(const Accumulator& acc, const SearchSpace& space, const RunOptions& opt,
                      long long lo, long long hi, double wall) {
    CensusReport r;
    r.descriptor = space.descriptor(opt.mode, opt.early_exit);
    r.mode = opt.mode;
    r.early_exit = opt.early_exit;
    r.range_lo = lo;
    r.range_hi = hi;
    r.histogram = acc.histogram;
    r.min_count = acc.min_count;
    r.max_count = acc.histogram.empty() ? -1 : acc.histogram.rbegin()->first;
    r.extremal.assign(acc.extremal.begin(), acc.extremal.end());
    r.extremal_cap = acc.extremal_cap;
    r.scanned = acc.scanned;
    r.wall_seconds = wall;
    r.collect_count = acc.collect_count;
    r.collected = acc.collected;
    r.collected_overflow = acc.collected_overflow;
    return r;
}

json histogram_to_json(const std::map<long long, long long>& h) {
    json out = json::object();
    for (const auto& [c, n] : h) out[std::to_string(c)] = n;
    return out;
}

std::map<long long, long long> histogram_from_json(const json& j) {
    std::map<long long, long long> out;
    for (auto it = j.begin(); it != j.end(); ++it)
        out[std::stoll(it.key())] = it.value().get<long long>();
    return out;
}

void write_checkpoint(const std::string& path, const SearchSpace& space, const RunOptions& opt,
                      const Accumulator& acc, long long next, long long lo, long long hi) {
    json j;
    j["version"] = 1;
    j["descriptor"] = space.descriptor(opt.mode, opt.early_exit);
    j["hash"] = fnv1a(j["descriptor"].get<std::string>());
    j["range"] = {lo, hi};
    j["next"] = next;
    j["scanned"] = acc.scanned;
    j["min_count"] = acc.min_count;
    j["histogram"] = histogram_to_json(acc.histogram);
    j["extremal"] = acc.extremal;
    j["collected"] = acc.collected;
    j["collected_overflow"] = acc.collected_overflow;
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
        out << j.dump();
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move checkpoint into place: " + path);
}

bool load_checkpoint(const std::string& path, const SearchSpace& space, const RunOptions& opt,
                     Accumulator& acc, long long& next, long long lo, long long hi) {
    std::ifstream in(path);
    if (!in) return false;
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("corrupt checkpoint " + path + ": " + e.what());
    }
    try {
        std::string desc = space.descriptor(opt.mode, opt.early_exit);
        if (j.at("descriptor").get<std::string>() != desc ||
            j.at("hash").get<uint64_t>() != fnv1a(desc))
            throw std::runtime_error("checkpoint does not match this search space");
        if (j.at("range")[0].get<long long>() != lo || j.at("range")[1].get<long long>() != hi)
            throw std::runtime_error("checkpoint covers a different index range");
        next = j.at("next").get<long long>();
        acc.scanned = j.at("scanned").get<long long>();
        acc.min_count = j.at("min_count").get<long long>();
        acc.histogram = histogram_from_json(j.at("histogram"));
        acc.extremal.clear();
        for (const auto& v : j.at("extremal")) acc.extremal.insert(v.get<std::vector<int>>());
        acc.collected.clear();
        for (const auto& v : j.at("collected")) acc.collected.push_back(v.get<std::vector<int>>());
        acc.collected_overflow = j.at("collected_overflow").get<bool>();
    } catch (const json::exception& e) {
        throw std::runtime_error("corrupt checkpoint " + path + ": " + e.what());
    }
    return true;
}

} // namespace

CensusReport run_census(const SearchSpace& space, const RunOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    const long long total = space.total();
    if (total > opt.budget)
        throw std::runtime_error("search space size " + std::to_string(total) +
                                 " exceeds budget " + std::to_string(opt.budget));
    const long long lo = opt.index_lo;
    const long long hi = opt.index_hi < 0 ? total : opt.index_hi;
    if (lo < 0 || hi > total || lo > hi) throw std::invalid_argument("bad index range");
    const int workers = std::max(1, opt.workers);

    Kernel kernel = build_kernel(space, opt.mode);
    const long long bound = opt.early_exit ? *opt.early_exit : static_cast<long long>(kernel.nrows);

    Accumulator acc;
    acc.extremal_cap = opt.extremal_cap;
    acc.collect_count = opt.collect_count;
    acc.collect_cap = opt.collect_cap;
    long long next = lo;
    if (!opt.checkpoint_path.empty())
        load_checkpoint(opt.checkpoint_path, space, opt, acc, next, lo, hi);

    int blocks_done = 0;
    while (next < hi && (opt.max_blocks < 0 || blocks_done < opt.max_blocks)) {
        const long long block_end = std::min(hi, next + opt.block_size * workers);
        const long long block_len = block_end - next;
        const long long chunk = (block_len + workers - 1) / workers;
        std::vector<Accumulator> parts(workers);

#pragma omp parallel for num_threads(workers) schedule(static, 1)
        for (int w = 0; w < workers; ++w) {
            Accumulator& part = parts[w];
            part.extremal_cap = opt.extremal_cap;
            part.collect_count = opt.collect_count;
            part.collect_cap = opt.collect_cap;
            const long long clo = next + w * chunk;
            const long long chi = std::min(block_end, clo + chunk);
            if (clo >= chi) continue;
            std::vector<uint16_t> digits(std::max(1, kernel.nfree), 0);
            long long rest = clo;
            for (int j = 0; j < kernel.nfree; ++j) {
                digits[j] = static_cast<uint16_t>(rest % kernel.q);
                rest /= kernel.q;
            }
            for (long long idx = clo; idx < chi; ++idx) {
                part.record(count_surface(kernel, digits.data(), bound), space, idx);
                int j = 0;
                while (j < kernel.nfree && ++digits[j] == kernel.q) digits[j++] = 0;
            }
        }
        for (const Accumulator& part : parts) acc.absorb(part);
        next = block_end;
        ++blocks_done;
        if (!opt.checkpoint_path.empty())
            write_checkpoint(opt.checkpoint_path, space, opt, acc, next, lo, hi);
    }
    if (next < hi) throw std::runtime_error("census stopped early at index " + std::to_string(next));

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return finalize(acc, space, opt, lo, hi, wall);
}

CensusReport run_census_reference(const SearchSpace& space, Mode mode,
                                  std::optional<long long> early_exit) {
    auto t0 = std::chrono::steady_clock::now();
    RunOptions opt;
    opt.mode = mode;
    opt.early_exit = early_exit;
    Accumulator acc;
    const long long total = space.total();
    for (long long idx = 0; idx < total; ++idx) {
        fam::Surface s = fam::make_surface(space.family, *space.field, space.coeffs_at(idx));
        acc.record(fam::count_points(s, mode, early_exit), space, idx);
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return finalize(acc, space, opt, 0, total, wall);
}

CensusReport merge_reports(const CensusReport& a, const CensusReport& b) {
    if (a.descriptor != b.descriptor || a.mode != b.mode || a.early_exit != b.early_exit)
        throw std::invalid_argument("cannot merge reports over different spaces");
    if (std::max(a.range_lo, b.range_lo) < std::min(a.range_hi, b.range_hi))
        throw std::invalid_argument("cannot merge overlapping index ranges");
    const CensusReport& first = a.range_lo <= b.range_lo ? a : b;
    const CensusReport& second = a.range_lo <= b.range_lo ? b : a;

    CensusReport out = first;
    out.range_lo = std::min(a.range_lo, b.range_lo);
    out.range_hi = std::max(a.range_hi, b.range_hi);
    for (const auto& [c, n] : second.histogram) out.histogram[c] += n;
    out.scanned = a.scanned + b.scanned;
    out.wall_seconds = a.wall_seconds + b.wall_seconds;
    if (second.min_count >= 0 && (out.min_count < 0 || second.min_count < out.min_count)) {
        out.min_count = second.min_count;
        out.extremal = second.extremal;
    } else if (second.min_count == out.min_count) {
        std::set<std::vector<int>> merged(out.extremal.begin(), out.extremal.end());
        merged.insert(second.extremal.begin(), second.extremal.end());
        out.extremal.assign(merged.begin(), merged.end());
        if (static_cast<long long>(out.extremal.size()) > out.extremal_cap)
            out.extremal.resize(out.extremal_cap);
    }
    out.max_count = out.histogram.empty() ? -1 : out.histogram.rbegin()->first;
    for (const auto& v : second.collected) {
        if (static_cast<long long>(out.collected.size()) < 4096)
            out.collected.push_back(v);
        else
            out.collected_overflow = true;
    }
    out.collected_overflow |= second.collected_overflow;
    return out;
}

Phase1Result phase1_survivors(const SearchSpace& space, const LocusFilter& filter) {
    const gf::Field& f = *space.field;
    const fam::FamilySpec& fm = space.family;
    const int nvars = fm.nvars();
    if (static_cast<int>(filter.substitution.size()) != nvars)
        throw std::invalid_argument("filter substitution arity mismatch");

    std::vector<int> kept;
    for (int i = 0; i < nvars; ++i)
        if (!filter.substitution[i]) kept.push_back(i);
    if (filter.ranges.size() != kept.size())
        throw std::invalid_argument("filter needs one range per kept variable");
    bool subst_all_zero = true;
    for (int i = 0; i < nvars; ++i)
        if (filter.substitution[i] && *filter.substitution[i] != 0) subst_all_zero = false;

    // multiplier of each slot after substitution
    auto multiplier = [&](const fam::Monomial& m) {
        int c = 1;
        for (int i = 0; i < nvars; ++i)
            if (filter.substitution[i]) c = f.mul(c, f.pow(*filter.substitution[i], m.exps[i]));
        return c;
    };

    Phase1Result res;
    (void)subst_all_zero;
    std::vector<int> live_mult;
    for (size_t i = 0; i < fm.slots.size(); ++i) {
        if (space.pins[i]) continue;
        int c = multiplier(fm.slots[i]);
        if (c != 0) {
            res.filter_slots.push_back(static_cast<int>(i));
            live_mult.push_back(c);
        }
    }

    // locus grid: all kept-variable assignments within the stated ranges,
    // excluding assignments that name the ambient origin or an excluded tuple
    long long grid = 1;
    for (size_t i = 0; i < kept.size(); ++i) {
        grid *= (filter.ranges[i] == VarRange::nonzero) ? f.size() - 1 : f.size();
        if (grid > 1000000) throw std::invalid_argument("locus grid too large");
    }
    std::vector<wps::Tuple> points;    // ambient tuples on the locus
    std::vector<int> base_val;         // fixed + pinned value at each point
    std::vector<std::vector<int>> slot_val; // per point, per live slot
    std::vector<int> assign(kept.size(), 0);
    std::function<void(size_t)> emit = [&](size_t d) {
        if (d == kept.size()) {
            wps::Tuple amb(nvars);
            for (int i = 0; i < nvars; ++i)
                amb[i] = filter.substitution[i] ? *filter.substitution[i] : 0;
            for (size_t i = 0; i < kept.size(); ++i) amb[kept[i]] = assign[i];
            if (wps::is_zero_tuple(amb)) return;
            for (const auto& ex : filter.excluded)
                if (ex == amb) return;
            int b = 0;
            for (const auto& [m, c] : fm.fixed)
                b = f.add(b, f.mul(f.from_int(c), fam::evaluate_monomial(f, m, amb)));
            for (size_t i = 0; i < fm.slots.size(); ++i)
                if (space.pins[i])
                    b = f.add(b, f.mul(*space.pins[i], fam::evaluate_monomial(f, fm.slots[i], amb)));
            std::vector<int> sv(res.filter_slots.size());
            for (size_t j = 0; j < res.filter_slots.size(); ++j)
                sv[j] = fam::evaluate_monomial(f, fm.slots[res.filter_slots[j]], amb);
            points.push_back(std::move(amb));
            base_val.push_back(b);
            slot_val.push_back(std::move(sv));
            return;
        }
        int start = (filter.ranges[d] == VarRange::nonzero) ? 1 : 0;
        for (int v = start; v < f.size(); ++v) {
            assign[d] = v;
            emit(d + 1);
        }
    };
    emit(0);
    res.locus_points = static_cast<long long>(points.size());

    // exhaust assignments over the live slots, mixed-radix little-endian
    long long count = 1;
    for (size_t i = 0; i < res.filter_slots.size(); ++i) count *= f.size();
    res.assignments = count;
    std::vector<int> a(res.filter_slots.size(), 0);
    for (long long idx = 0; idx < count; ++idx) {
        bool has_solution = false;
        for (size_t p = 0; p < points.size() && !has_solution; ++p) {
            int v = base_val[p];
            for (size_t j = 0; j < a.size(); ++j)
                if (a[j] != 0) v = f.add(v, f.mul(f.mul(a[j], live_mult[j]), slot_val[p][j]));
            has_solution = (v == 0);
        }
        if (!has_solution) res.survivors.push_back(a);
        int j = 0;
        while (j < static_cast<int>(a.size()) && ++a[j] == f.size()) a[j++] = 0;
    }
    return res;
}

TwoPhaseReport two_phase_census(const SearchSpace& space, const LocusFilter& filter,
                                const RunOptions& opt) {
    TwoPhaseReport out;
    out.phase1 = phase1_survivors(space, filter);
    out.non_survivors = out.phase1.assignments -
                        static_cast<long long>(out.phase1.survivors.size());

    Accumulator acc;
    acc.extremal_cap = opt.extremal_cap;
    acc.collect_count = opt.collect_count;
    acc.collect_cap = opt.collect_cap;
    double wall = 0;
    long long covered = 0;
    for (size_t s = 0; s < out.phase1.survivors.size(); ++s) {
        SearchSpace sub = space;
        for (size_t j = 0; j < out.phase1.filter_slots.size(); ++j)
            sub.pins[out.phase1.filter_slots[j]] = out.phase1.survivors[s][j];
        RunOptions sub_opt = opt;
        if (!opt.checkpoint_path.empty())
            sub_opt.checkpoint_path = opt.checkpoint_path + ".s" + std::to_string(s);
        CensusReport r = run_census(sub, sub_opt);
        wall += r.wall_seconds;
        covered += r.scanned;
        Accumulator part;
        part.extremal_cap = opt.extremal_cap;
        part.collect_count = opt.collect_count;
        part.collect_cap = opt.collect_cap;
        part.histogram = r.histogram;
        part.min_count = r.min_count;
        part.scanned = r.scanned;
        for (const auto& v : r.extremal) part.extremal.insert(v);
        part.collected = r.collected;
        part.collected_overflow = r.collected_overflow;
        acc.absorb(part);
    }
    out.census = finalize(acc, space, opt, 0, covered, wall);
    out.census.descriptor = space.descriptor(opt.mode, opt.early_exit) + ";two-phase";
    return out;
}

CensusReport random_sample_census(const fam::FamilySpec& fm, const gf::Field& f,
                                  long long samples, uint64_t seed,
                                  std::optional<int> smooth_to, Mode mode, int workers) {
    auto t0 = std::chrono::steady_clock::now();
    SearchSpace space = SearchSpace::over(fm, f);
    Accumulator acc;
    acc.extremal_cap = 0; // coefficient indices are meaningless for samples
    long long skipped = 0;

    const long long block = std::max<long long>(64, 4 * std::max(1, workers));
    struct Draw {
        long long count = -1;
        bool skipped = false;
    };
    for (long long start = 0; start < samples; start += block) {
        const long long end = std::min(samples, start + block);
        std::vector<Draw> draws(end - start);
#pragma omp parallel for num_threads(std::max(1, workers)) schedule(dynamic)
        for (long long i = start; i < end; ++i) {
            fam::SplitMix64 rng((seed ^ static_cast<uint64_t>(i)) * 0x9e3779b97f4a7c15ull + i);
            fam::Surface s = fam::random_surface(fm, f, rng);
            Draw& d = draws[i - start];
            if (smooth_to && !smooth::is_smooth_up_to(s, *smooth_to).smooth) {
                d.skipped = true;
                continue;
            }
            d.count = fam::count_points(s, mode);
        }
        for (long long i = start; i < end; ++i) {
            const Draw& d = draws[i - start];
            if (d.skipped)
                ++skipped;
            else
                acc.record(d.count, space, 0);
        }
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    RunOptions ropt;
    ropt.mode = mode;
    CensusReport r = finalize(acc, space, ropt, 0, samples, wall);
    r.descriptor = "sample;family=" + fm.id + ";field=" + f.literal() +
                   ";mode=" + (mode == Mode::projective ? std::string("projective") : std::string("affine")) +
                   ";seed=" + std::to_string(seed) + ";samples=" + std::to_string(samples) +
                   ";smooth_to=" + (smooth_to ? std::to_string(*smooth_to) : std::string("none"));
    r.sample_skipped = skipped;
    return r;
}

} // namespace dpc::census
