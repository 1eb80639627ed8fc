// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dpc/families.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dpc::census {

using fam::Mode;

/// A coefficient space to exhaust: one value per unpinned slot, iterated as
/// a mixed-radix little-endian counter in family slot order (the first
/// unpinned slot varies fastest).
struct SearchSpace {
    fam::FamilySpec family;
    const gf::Field* field = nullptr;
    std::vector<std::optional<int>> pins; // per slot

    static SearchSpace over(const fam::FamilySpec& fm, const gf::Field& f);

    int unpinned() const;
    long long total() const;
    std::vector<int> coeffs_at(long long index) const; // full vector, pins included
    std::string descriptor(Mode mode, std::optional<long long> early_exit) const;
};

struct CensusReport {
    std::string descriptor;
    Mode mode = Mode::affine;
    std::optional<long long> early_exit;
    long long range_lo = 0, range_hi = 0;

    /// count -> number of surfaces; with early exit B, every count above B
    /// is folded into the single key B + 1.
    std::map<long long, long long> histogram;
    long long min_count = -1;
    long long max_count = -1;
    std::vector<std::vector<int>> extremal; // lex-least min achievers, capped
    long long extremal_cap = 64;
    long long scanned = 0;
    double wall_seconds = 0.0;

    std::optional<long long> collect_count;
    std::vector<std::vector<int>> collected; // surfaces with exactly collect_count points
    bool collected_overflow = false;

    long long sample_skipped = 0; // draws rejected by the smooth filter (sampled censuses)
};

struct RunOptions {
    Mode mode = Mode::affine;
    std::optional<long long> early_exit;
    int workers = 1;
    std::string checkpoint_path;
    long long block_size = 1 << 20; // indices per worker between checkpoints
    int max_blocks = -1;            // stop after this many blocks (testing); -1 runs out
    std::optional<long long> collect_count;
    long long collect_cap = 4096;
    long long extremal_cap = 64;
    long long budget = 1LL << 40;
    long long index_lo = 0; // sub-range [index_lo, index_hi); -1 means total
    long long index_hi = -1;
};

/// The table-driven engine. Monomial values are precomputed per point; a
/// surface's value at a point is the dot product with its coefficient
/// vector, scanned with early exit. The index range is statically split
/// into `workers` chunks per block and partial reports are merged in chunk
/// order, so the result is independent of scheduling and worker count.
CensusReport run_census(const SearchSpace& space, const RunOptions& opt);

/// Straight-line reference engine: per-surface count_points, no tables, no
/// parallelism. Kept for cross-checking the optimized kernel.
CensusReport run_census_reference(const SearchSpace& space, Mode mode,
                                  std::optional<long long> early_exit = std::nullopt);

/// Pointwise histogram sum over disjoint index ranges of the same space.
CensusReport merge_reports(const CensusReport& a, const CensusReport& b);

enum class VarRange { full, nonzero };

/// The locus prefilter: substitute some variables, range the kept ones, and
/// keep only coefficient assignments whose restricted equation has no
/// solution there.
struct LocusFilter {
    std::vector<std::optional<int>> substitution; // per ambient variable
    std::vector<VarRange> ranges;                 // per kept variable, kept order
    std::vector<wps::Tuple> excluded;             // ambient tuples to ignore
};

struct Phase1Result {
    std::vector<int> filter_slots;           // unpinned slots surviving the substitution
    std::vector<std::vector<int>> survivors; // one value per filter slot
    long long assignments = 0;
    long long locus_points = 0;
};

Phase1Result phase1_survivors(const SearchSpace& space, const LocusFilter& filter);

struct TwoPhaseReport {
    Phase1Result phase1;
    CensusReport census; // aggregated over all survivor extensions
    long long non_survivors = 0;
};

/// Full census restricted to phase-1 survivors. Every non-survivor
/// assignment has, by construction, a solution on the locus beyond the
/// excluded set, so the aggregate histogram covers survivors only.
TwoPhaseReport two_phase_census(const SearchSpace& space, const LocusFilter& filter,
                                const RunOptions& opt);

/// Histogram over `samples` seeded draws, optionally keeping only surfaces
/// that pass is_smooth_up_to(smooth_to). Identical seeds give identical
/// reports; draws are processed in blocks so workers cannot reorder them.
CensusReport random_sample_census(const fam::FamilySpec& fm, const gf::Field& f,
                                  long long samples, uint64_t seed,
                                  std::optional<int> smooth_to, Mode mode, int workers);

uint64_t fnv1a(const std::string& s);

} // namespace dpc::census
